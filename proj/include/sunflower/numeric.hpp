/*
 * Copyright (C) 2026 The sunflower-spread Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUNFLOWER_NUMERIC_HPP
#define SUNFLOWER_NUMERIC_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace sunflower {

/// base^exp, or nothing on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > UINT64_MAX / base) return std::nullopt;
    acc *= base;
  }
  return acc;
}

/// Neumaier compensated summation.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

private:
  double sum_ = 0;
  double comp_ = 0;
};

/// Row n of Pascal's triangle in doubles (exact for n <= 56).
inline std::vector<double> binomial_row(std::size_t n) {
  std::vector<double> row(n + 1, 0.0);
  row[0] = 1;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j > 0; --j) row[j] += row[j - 1];
  return row;
}

/// Pr(Bin(n, p) = i) for i = 0..n.
inline std::vector<double> binomial_pmf(std::size_t n, double p) {
  const auto c = binomial_row(n);
  std::vector<double> pmf(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    pmf[i] = c[i] * std::pow(p, static_cast<double>(i)) * std::pow(1.0 - p, static_cast<double>(n - i));
  return pmf;
}

/// Pr(lo <= Bin(n, p) <= hi), summed with compensation.
inline double binomial_range(std::size_t n, double p, std::size_t lo, std::size_t hi) {
  const auto pmf = binomial_pmf(n, p);
  CompensatedSum s;
  for (std::size_t i = lo; i <= hi && i <= n; ++i) s.add(pmf[i]);
  return s.value();
}

}  // namespace sunflower

#endif  // SUNFLOWER_NUMERIC_HPP
