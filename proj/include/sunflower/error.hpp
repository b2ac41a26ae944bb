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

#ifndef SUNFLOWER_ERROR_HPP
#define SUNFLOWER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sunflower {

/// Precondition or parameter-range violation.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size or enumeration cap would be exceeded.
class CapacityExceeded : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Malformed input file.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace sunflower

#endif  // SUNFLOWER_ERROR_HPP
