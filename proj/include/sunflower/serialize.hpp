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

#ifndef SUNFLOWER_SERIALIZE_HPP
#define SUNFLOWER_SERIALIZE_HPP

// JSON reports and CSV rows. Every top-level document carries
// "schema_version".

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>

#include <json.hpp>

#include "sunflower/exact_sun.hpp"
#include "sunflower/extraction.hpp"
#include "sunflower/family_io.hpp"
#include "sunflower/probability.hpp"
#include "sunflower/spread.hpp"

namespace sunflower {

using nlohmann::json;

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  double back = 0;
  for (int prec = 1; prec <= 17; ++prec) {
    std::ostringstream t;
    t << std::setprecision(prec) << x;
    std::istringstream(t.str()) >> back;
    if (back == x) return t.str();
  }
  return os.str();
}

template <std::size_t W>
json sunflower_to_json(const Sunflower<W>& sf) {
  json petals = json::array();
  for (const auto& p : sf.petals) petals.push_back(p.elements());
  return {{"core", sf.core.elements()}, {"petals", petals}};
}

template <std::size_t W>
json spread_report_to_json(const SpreadReport<W>& rep, std::size_t k) {
  json j{{"schema_version", kSchemaVersion}, {"r", rep.r}, {"k", k}};
  if (rep.certified()) {
    j["verdict"] = "certified";
  } else {
    j["verdict"] = "violation";
    j["t"] = rep.violation->t.elements();
    j["count"] = rep.violation->count;
    j["threshold"] = std::pow(rep.r, static_cast<double>(k - rep.violation->t.count()));
  }
  return j;
}

inline json hit_estimate_to_json(const HitEstimate& e) {
  json j{{"schema_version", kSchemaVersion},
         {"method", to_string(e.method)},
         {"p_hat", e.p_hat},
         {"trials", e.trials},
         {"half_width_3sigma", e.half_width_3sigma}};
  if (e.method == HitMethod::MonteCarlo) j["hits"] = e.hits;
  if (e.clopper_pearson) j["clopper_pearson"] = {e.clopper_pearson->first, e.clopper_pearson->second};
  return j;
}

inline constexpr const char* kHitCsvHeader = "schema_version,family_id,delta,method,p_hat,ci,trials,seed";

inline std::string hit_estimate_csv_row(const std::string& family_id, double delta, const HitEstimate& e,
                                        std::uint64_t seed) {
  std::ostringstream os;
  os << kSchemaVersion << ',' << family_id << ',' << format_double(delta) << ',' << to_string(e.method) << ','
     << format_double(e.p_hat) << ',' << format_double(e.half_width_3sigma) << ',' << e.trials << ','
     << (e.method == HitMethod::MonteCarlo ? std::to_string(seed) : std::string()) << '\n';
  return os.str();
}

inline json partition_stats_to_json(const PartitionStats& s) {
  json at_least = json::object();
  for (const auto& [p, f] : s.frac_trials_with_at_least) at_least[std::to_string(p)] = f;
  return {{"schema_version", kSchemaVersion},
          {"classes", s.classes},
          {"trials", s.trials},
          {"mean_hit_classes", s.mean_hit_classes},
          {"stddev_hit_classes", s.stddev_hit_classes},
          {"sigma_of_mean", s.sigma_of_mean()},
          {"frac_trials_with_at_least", at_least}};
}

template <std::size_t W>
json trace_to_json(const ExtractionTrace<W>& trace) {
  json steps = json::array();
  for (const auto& step : trace.path) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, BaseStep>) {
            steps.push_back({{"kind", "base"}, {"k", 1}, {"family_size", s.family_size}, {"found", s.found}});
          } else if constexpr (std::is_same_v<T, LinkStep<W>>) {
            steps.push_back({{"kind", "link"}, {"k", s.k}, {"family_size", s.family_size}, {"r", s.r},
                             {"t", s.t.elements()}, {"count", s.count}});
          } else if constexpr (std::is_same_v<T, SpreadStep>) {
            steps.push_back({{"kind", "spread"}, {"k", s.k}, {"family_size", s.family_size}, {"r", s.r},
                             {"trials_used", s.trials_used}, {"found", s.found}});
          } else if constexpr (std::is_same_v<T, FallbackStep>) {
            steps.push_back({{"kind", "fallback"}, {"k", s.k}, {"family_size", s.family_size},
                             {"nodes", s.nodes}, {"capped", s.capped}, {"found", s.found}});
          } else {
            steps.push_back({{"kind", "too_few"}, {"k", s.k}, {"family_size", s.family_size}});
          }
        },
        step);
  }
  const auto& p = trace.params;
  json params{{"p", p.p},
              {"C", p.C},
              {"max_partition_trials", p.partition_trials()},
              {"seed", p.seed},
              {"fallback_bruteforce_cap", p.fallback_bruteforce_cap},
              {"fallback", p.fallback}};
  if (p.r_override) params["r_override"] = *p.r_override;
  json j{{"schema_version", kSchemaVersion}, {"params", params}, {"steps", steps},
         {"success", trace.success()}};
  j["sunflower"] = trace.result ? sunflower_to_json(*trace.result) : json(nullptr);
  return j;
}

inline json lemma2_report_to_json(const Lemma2Report& r) {
  return {{"schema_version", kSchemaVersion},
          {"check", "lemma2"},
          {"classes", r.classes},
          {"trials", r.trials},
          {"measured_mean", r.measured_mean},
          {"exact_per_class", r.exact_per_class},
          {"expected_mean", r.expected_mean},
          {"sigma_of_mean", r.sigma_of_mean},
          {"deviation", r.deviation},
          {"passed", r.passed}};
}

inline json lemma3_chain_to_json(std::size_t k, std::size_t r, double delta, double eps,
                                 bool in_regime, const Lemma3Chain& c) {
  return {{"schema_version", kSchemaVersion},
          {"check", "lemma3"},
          {"k", k}, {"r", r}, {"delta", delta}, {"eps", eps},
          {"r_bound", lemma3_r_bound(k, delta, eps)},
          {"in_regime", in_regime},
          {"values", {c.exact, c.exp_bound, c.exp_weaker, c.sqrt_bound, c.target}},
          {"links", {c.link1, c.link2, c.link3, c.link4}},
          {"passed", in_regime && c.holds()}};
}

inline json appendix_report_to_json(const AppendixReport& r) {
  return {{"schema_version", kSchemaVersion},
          {"check", "appendix"},
          {"ground_size", r.ground_size},
          {"delta", r.params.delta},
          {"gamma", r.params.gamma},
          {"m", r.params.m},
          {"lhs", r.lhs},
          {"hit_given_m", r.hit_given_m},
          {"size_at_least_m", r.size_at_least_m},
          {"rhs", r.rhs},
          {"hit_given_size", r.hit_given_size},
          {"monotone", r.monotone},
          {"inequality", r.inequality},
          {"passed", r.passed()}};
}

inline json chernoff_report_to_json(const ChernoffReport& r) {
  json j{{"schema_version", kSchemaVersion},
         {"check", "chernoff"},
         {"n", r.n}, {"delta", r.delta}, {"m", r.m},
         {"below_m", r.below_m}, {"tail", r.tail}, {"bound", r.bound},
         {"r", r.r}, {"r_bound", r.r_bound},
         {"tail_ok", r.tail_ok}, {"below_m_ok", r.below_m_ok},
         {"r_monotone_ok", r.r_monotone_ok},
         {"eps_applicable", r.eps_applicable}, {"eps_ok", r.eps_ok},
         {"passed", r.passed()}};
  if (r.eps) j["eps"] = *r.eps;
  return j;
}

inline json sun_value_to_json(const SunValue& v) {
  json j{{"schema_version", kSchemaVersion},
         {"p", v.p}, {"k", v.k},
         {"exact", v.exact}, {"lower", v.lower}, {"upper", v.upper},
         {"max_sunflower_free", v.search.size},
         {"exhaustive", v.search.exhaustive},
         {"timed_out", v.search.timed_out},
         {"cap_hit", v.search.cap_hit},
         {"nodes", v.search.nodes},
         {"witness", family_to_json(v.search.witness)}};
  j["value"] = v.exact ? json(v.lower) : json(nullptr);
  return j;
}

inline constexpr const char* kSunCsvHeader = "schema_version,p,k,value_or_bracket,exhaustive,nodes,seconds";

inline std::string sun_value_csv_row(const SunValue& v) {
  std::ostringstream os;
  os << kSchemaVersion << ',' << v.p << ',' << v.k << ',';
  if (v.exact)
    os << v.lower;
  else
    os << '[' << v.lower << ';' << v.upper << ']';
  os << ',' << (v.search.exhaustive ? "true" : "false") << ',' << v.search.nodes << ','
     << format_double(v.search.seconds) << '\n';
  return os.str();
}

}  // namespace sunflower

#endif  // SUNFLOWER_SERIALIZE_HPP
