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

// sunflower: command-line front end.
//
// Exit codes: 0 success / verification passed, 1 verification failed or
// nothing found, 2 usage or input error, 3 size cap exceeded.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sunflower/sunflower.hpp"

namespace {

using namespace sunflower;

constexpr std::uint64_t kDefaultSeed = 20200701;
constexpr const char* kOutDirEnv = "SUNFLOWER_OUT_DIR";

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t trials = 100000;
  unsigned threads = 1;
  std::string out;
  std::string format = "auto";
  bool verbose = false;
};

class Output {
public:
  explicit Output(const GlobalOptions& g) {
    if (g.out.empty()) return;
    std::filesystem::path path(g.out);
    if (path.is_relative()) {
      if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) path = std::filesystem::path(dir) / path;
    }
    file_.open(path);
    if (!file_) throw FormatError("cannot write " + path.string());
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

void emit_json(const GlobalOptions& g, const json& j) {
  Output out(g);
  out.stream() << j.dump(2) << '\n';
}

std::string resolve_format(const GlobalOptions& g, const std::string& fallback) {
  return g.format == "auto" ? fallback : g.format;
}

/// Calls fn.template operator()<W>() with the word count fitting `ground`.
template <typename Fn>
int with_words(std::size_t ground, Fn&& fn) {
  switch (words_for(ground)) {
    case 1: return fn.template operator()<1>();
    case 4: return fn.template operator()<4>();
    default: return fn.template operator()<16>();
  }
}

// ---------------------------------------------------------------------------

struct ConstructOptions {
  std::string kind;
  std::size_t k = 2;
  std::size_t r = 2;
  std::size_t p = 3;
};

int cmd_construct(const GlobalOptions& g, const ConstructOptions& o) {
  const std::size_t r = o.kind == "erdos-rado" ? o.p - 1 : o.r;
  if (o.kind == "erdos-rado") require(o.p >= 2, "p must be at least 2");
  const auto part = make_block_partition(o.k, r);
  return with_words(part.ground_size(), [&]<std::size_t W>() {
    auto [family, blocks] = block_product_family<W>(o.k, r);
    auto j = family_to_json(family);
    j["construction"] = {{"kind", o.kind}, {"k", o.k}, {"r", r}, {"block_size", blocks.r}};
    emit_json(g, j);
    return 0;
  });
}

struct FamilySource {
  std::string path;
  std::size_t block_k = 0;
  std::size_t block_r = 0;

  [[nodiscard]] bool implicit_block() const { return path.empty(); }
};

void add_family_source(CLI::App* cmd, FamilySource& src, bool allow_implicit) {
  auto* file = cmd->add_option("family", src.path, "family JSON file");
  if (allow_implicit) {
    auto* bk = cmd->add_option("--block-k", src.block_k, "use the implicit block-product family with k blocks");
    auto* br = cmd->add_option("--block-r", src.block_r, "block size of the implicit block-product family");
    bk->needs(br);
    br->needs(bk);
    file->excludes(bk);
    file->excludes(br);
  } else {
    file->required();
  }
}

/// Loads the family file and calls fn(family).
template <typename Fn>
int with_family(const std::string& path, Fn&& fn) {
  const FamilyDocument doc = read_family_file(path);
  return with_words(doc.ground_set_size, [&]<std::size_t W>() { return fn(to_family<W>(doc)); });
}

int cmd_check_spread(const GlobalOptions& g, const std::string& path, double r, bool max_ratio) {
  return with_family(path, [&](const auto& family) {
    const auto rep = spread_witness(family, r, max_ratio ? ViolationChoice::MaxRatio : ViolationChoice::First);
    auto j = spread_report_to_json(rep, family.k());
    j["spreadness"] = spreadness(family);
    j["family_size"] = family.size();
    emit_json(g, j);
    return rep.certified() ? 0 : 1;
  });
}

int cmd_find_sunflower(const GlobalOptions& g, const std::string& path, ExtractionParams params) {
  params.seed = g.seed;
  return with_family(path, [&](const auto& family) {
    const auto trace = extract_sunflower(family, params);
    emit_json(g, trace_to_json(trace));
    return trace.success() ? 0 : 1;
  });
}

struct HitOptions {
  FamilySource src;
  double delta = 0.5;
  std::string method = "auto";
  bool clopper_pearson = false;
  std::string family_id;
};

int emit_hit(const GlobalOptions& g, const HitOptions& o, const HitEstimate& est) {
  const std::string fmt = resolve_format(g, "json");
  if (fmt == "csv") {
    Output out(g);
    const std::string id = !o.family_id.empty() ? o.family_id
                           : o.src.implicit_block()
                               ? "block-product-k" + std::to_string(o.src.block_k) + "-r" + std::to_string(o.src.block_r)
                               : std::filesystem::path(o.src.path).stem().string();
    out.stream() << kHitCsvHeader << '\n' << hit_estimate_csv_row(id, o.delta, est, g.seed);
  } else {
    auto j = hit_estimate_to_json(est);
    j["delta"] = o.delta;
    if (est.method == HitMethod::MonteCarlo) j["seed"] = g.seed;
    emit_json(g, j);
  }
  return 0;
}

int cmd_estimate_hit(const GlobalOptions& g, const HitOptions& o) {
  const McOptions mc{g.threads, o.clopper_pearson};
  if (o.src.implicit_block()) {
    const auto part = make_block_partition(o.src.block_k, o.src.block_r);
    return with_words(part.ground_size(), [&]<std::size_t W>() {
      const BlockProductView<W> view(o.src.block_k, o.src.block_r);
      if (o.method == "mc") return emit_hit(g, o, mc_hit_probability(view, o.delta, g.trials, g.seed, mc));
      // exact for the transversal family: every block must be met
      HitEstimate est;
      est.p_hat = exact_block_hit_probability(o.src.block_k, o.src.block_r, o.delta);
      est.method = HitMethod::ExactEnumeration;
      return emit_hit(g, o, est);
    });
  }
  return with_family(o.src.path, [&](const auto& family) {
    if (o.method == "mc") return emit_hit(g, o, mc_hit_probability(family, o.delta, g.trials, g.seed, mc));
    const ExactPath path = o.method == "enumeration"           ? ExactPath::Enumeration
                           : o.method == "inclusion-exclusion" ? ExactPath::InclusionExclusion
                                                               : ExactPath::Auto;
    return emit_hit(g, o, exact_hit_probability(family, o.delta, path));
  });
}

int cmd_partition(const GlobalOptions& g, const FamilySource& src, std::size_t t) {
  auto emit = [&](const PartitionStats& s) {
    auto j = partition_stats_to_json(s);
    j["seed"] = g.seed;
    emit_json(g, j);
    return 0;
  };
  if (src.implicit_block()) {
    const auto part = make_block_partition(src.block_k, src.block_r);
    return with_words(part.ground_size(), [&]<std::size_t W>() {
      return emit(partition_experiment(BlockProductView<W>(src.block_k, src.block_r), t, g.trials, g.seed, g.threads));
    });
  }
  return with_family(src.path, [&](const auto& family) {
    return emit(partition_experiment(family, t, g.trials, g.seed, g.threads));
  });
}

// --- verify ----------------------------------------------------------------

std::string num(double x) { return format_double(x); }

int finish_verify(const GlobalOptions& g, const json& j, const std::string& text, bool passed) {
  if (resolve_format(g, "text") == "json") {
    emit_json(g, j);
  } else {
    Output out(g);
    out.stream() << text << (passed ? "PASS" : "FAIL") << '\n';
  }
  return passed ? 0 : 1;
}

int cmd_verify_lemma2(const GlobalOptions& g, const std::string& path, std::size_t t) {
  return with_family(path, [&](const auto& family) {
    const auto rep = lemma2_identity_check(family, t, g.trials, g.seed, g.threads);
    std::ostringstream os;
    os << "E[#classes containing a member] = t * Pr(S ⊆ X_{1/t} for some S)\n"
       << "  measured mean      = " << num(rep.measured_mean) << "  (" << rep.trials << " trials, seed " << g.seed << ")\n"
       << "  t * exact          = " << rep.classes << " * " << num(rep.exact_per_class) << " = " << num(rep.expected_mean) << '\n'
       << "  |deviation|        = " << num(rep.deviation) << " <= 3 sigma = " << num(3 * rep.sigma_of_mean) << '\n';
    auto j = lemma2_report_to_json(rep);
    j["seed"] = g.seed;
    return finish_verify(g, j, os.str(), rep.passed);
  });
}

int cmd_verify_lemma3(const GlobalOptions& g, std::size_t k, std::size_t r, double delta, double eps) {
  const bool in_regime = lemma3_regime_check(k, r, delta, eps);
  const auto c = lemma3_chain(k, r, delta, eps);
  std::ostringstream os;
  os << "regime: r = " << r << " <= 0.25/delta * ln(k/eps) = " << num(lemma3_r_bound(k, delta, eps))
     << (in_regime ? "  yes\n" : "  no\n")
     << "(1-(1-d)^r)^k = " << num(c.exact) << (c.link1 ? " <= " : " !<= ")
     << "e^{-(1-d)^r k} = " << num(c.exp_bound) << (c.link2 ? " < " : " !< ")
     << "e^{-e^{-2dr} k} = " << num(c.exp_weaker) << (c.link3 ? " <= " : " !<= ")
     << "e^{-sqrt(eps k)} = " << num(c.sqrt_bound) << (c.link4 ? " < " : " !< ")
     << "1-eps = " << num(c.target) << '\n';
  return finish_verify(g, lemma3_chain_to_json(k, r, delta, eps, in_regime, c), os.str(), in_regime && c.holds());
}

int cmd_verify_appendix(const GlobalOptions& g, const std::string& path, double delta) {
  return with_family(path, [&](const auto& family) {
    const auto rep = verify_appendix_decomposition(family, delta);
    std::ostringstream os;
    os << "Pr(hit | X_delta) >= Pr(hit | X_m) * Pr(|X_delta| >= m),  m = ceil(delta/2 * |X|) = " << rep.params.m << '\n'
       << "  " << num(rep.lhs) << (rep.inequality ? " >= " : " < ") << num(rep.hit_given_m) << " * "
       << num(rep.size_at_least_m) << " = " << num(rep.rhs) << '\n'
       << "  Pr(hit | X_i) non-decreasing in i: " << (rep.monotone ? "yes" : "no") << '\n';
    return finish_verify(g, appendix_report_to_json(rep), os.str(), rep.passed());
  });
}

int cmd_verify_chernoff(const GlobalOptions& g, std::size_t n, double delta, double r, std::optional<double> eps) {
  const auto rep = verify_chernoff_tail(n, delta, r, eps);
  std::ostringstream os;
  os << "Pr(|X_delta| < m) <= Pr(|X_delta| <= n delta/2) <= e^{-n delta/8},  n = " << n << ", m = " << rep.m << '\n'
     << "  " << num(rep.below_m) << (rep.below_m_ok ? " <= " : " > ") << num(rep.tail)
     << (rep.tail_ok ? " <= " : " > ") << num(rep.bound) << '\n';
  if (r <= static_cast<double>(n))
    os << "  e^{-n delta/8} = " << num(rep.bound) << (rep.r_monotone_ok ? " <= " : " > ")
       << "e^{-r delta/8} = " << num(rep.r_bound) << '\n';
  if (eps && rep.eps_applicable)
    os << "  r >= 16/delta ln(1/eps): e^{-r delta/8} = " << num(rep.r_bound) << (rep.eps_ok ? " <= " : " > ")
       << "eps^2 = " << num(*eps * *eps) << '\n';
  return finish_verify(g, chernoff_report_to_json(rep), os.str(), rep.passed());
}

int cmd_exact_sun(const GlobalOptions& g, const SunQuery& q) {
  const auto v = sun_value(q);
  if (resolve_format(g, "json") == "csv") {
    Output out(g);
    out.stream() << kSunCsvHeader << '\n' << sun_value_csv_row(v);
  } else {
    emit_json(g, sun_value_to_json(v));
  }
  return v.exact ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sunflower and spread-family toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Monte Carlo trials")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")
      ->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, std::string("output file (relative paths resolve under $") + kOutDirEnv + ")");
  app.add_option("--format", g.format, "json | csv | text")
      ->check(CLI::IsMember({"auto", "json", "csv", "text"}))->capture_default_str();
  app.add_flag("-v,--verbose", g.verbose, "diagnostics on stderr");

  int rc = 0;

  // construct
  ConstructOptions co;
  auto* construct = app.add_subcommand("construct", "write an extremal family as JSON");
  construct->add_option("kind", co.kind, "block-product | erdos-rado")
      ->required()->check(CLI::IsMember({"block-product", "erdos-rado"}));
  construct->add_option("--k", co.k, "set size / number of blocks")->capture_default_str();
  construct->add_option("--r", co.r, "block size (block-product)")->capture_default_str();
  construct->add_option("--p", co.p, "petals (erdos-rado: r = p - 1)")->capture_default_str();
  construct->callback([&] { rc = cmd_construct(g, co); });

  // check-spread
  std::string spread_path;
  double spread_r = 1;
  bool max_ratio = false;
  auto* check_spread = app.add_subcommand("check-spread", "certify r-spreadness or report a violating set");
  check_spread->add_option("family", spread_path)->required();
  check_spread->add_option("--r", spread_r, "spread parameter")->required();
  check_spread->add_flag("--max-ratio", max_ratio, "report the violation with the largest count / r^{k-|T|}");
  check_spread->callback([&] { rc = cmd_check_spread(g, spread_path, spread_r, max_ratio); });

  // find-sunflower
  std::string find_path;
  ExtractionParams xp;
  double r_override = 0;
  bool no_fallback = false;
  auto* find = app.add_subcommand("find-sunflower", "recursive sunflower extraction");
  find->add_option("family", find_path)->required();
  find->add_option("--p", xp.p, "petals")->capture_default_str();
  find->add_option("--C", xp.C, "constant in r(p,k) = C p ln k")->capture_default_str();
  find->add_option("--partition-trials", xp.max_partition_trials, "partition trials per spread step (default 64p)");
  find->add_option("--fallback-cap", xp.fallback_bruteforce_cap, "node cap of the exhaustive fallback")->capture_default_str();
  find->add_flag("--no-fallback", no_fallback, "disable the exhaustive fallback");
  auto* ro = find->add_option("--r-override", r_override, "use this r at every level instead of r(p,k)");
  find->callback([&] {
    xp.fallback = !no_fallback;
    if (ro->count() > 0) xp.r_override = r_override;
    rc = cmd_find_sunflower(g, find_path, xp);
  });

  // estimate-hit
  HitOptions ho;
  auto* hit = app.add_subcommand("estimate-hit", "Pr(some member ⊆ X_delta)");
  add_family_source(hit, ho.src, true);
  hit->add_option("--delta", ho.delta, "inclusion probability")->required();
  hit->add_option("--method", ho.method, "auto | enumeration | inclusion-exclusion | mc")
      ->check(CLI::IsMember({"auto", "exact", "enumeration", "inclusion-exclusion", "mc"}))->capture_default_str();
  hit->add_flag("--clopper-pearson", ho.clopper_pearson, "add an exact 3-sigma-level binomial interval (mc)");
  hit->add_option("--family-id", ho.family_id, "identifier for CSV rows");
  hit->callback([&] {
    if (ho.method == "exact") ho.method = "auto";
    if (ho.src.implicit_block() && ho.src.block_k == 0) throw CLI::ValidationError("estimate-hit", "need a family file or --block-k/--block-r");
    rc = cmd_estimate_hit(g, ho);
  });

  // partition
  FamilySource psrc;
  std::size_t classes = 4;
  auto* partition = app.add_subcommand("partition", "random partition experiment");
  add_family_source(partition, psrc, true);
  partition->add_option("--t", classes, "number of classes")->capture_default_str();
  partition->callback([&] {
    if (psrc.implicit_block() && psrc.block_k == 0) throw CLI::ValidationError("partition", "need a family file or --block-k/--block-r");
    rc = cmd_partition(g, psrc, classes);
  });

  // verify
  auto* verify = app.add_subcommand("verify", "numeric checks; exit code 0 iff PASS");
  verify->require_subcommand(1);
  std::string v_path;
  std::size_t v_t = 4, v_k = 2, v_n = 16;
  std::size_t v_r = 1;
  double v_delta = 0.5, v_eps = 0.5, v_rr = 0;
  auto* lemma2 = verify->add_subcommand("lemma2", "partition mean = t * exact hit probability at 1/t");
  lemma2->add_option("family", v_path)->required();
  lemma2->add_option("--t", v_t, "classes")->capture_default_str();
  lemma2->callback([&] { rc = cmd_verify_lemma2(g, v_path, v_t); });

  auto* lemma3 = verify->add_subcommand("lemma3", "block-product tightness chain");
  lemma3->add_option("--k", v_k)->required();
  lemma3->add_option("--r", v_r)->required();
  lemma3->add_option("--delta", v_delta)->required();
  lemma3->add_option("--eps", v_eps)->required();
  lemma3->callback([&] { rc = cmd_verify_lemma3(g, v_k, v_r, v_delta, v_eps); });

  auto* appendix = verify->add_subcommand("appendix", "X_delta versus uniform X_m coupling");
  appendix->add_option("family", v_path)->required();
  appendix->add_option("--delta", v_delta)->required();
  appendix->callback([&] { rc = cmd_verify_appendix(g, v_path, v_delta); });

  auto* chernoff = verify->add_subcommand("chernoff", "exact binomial tail against e^{-n delta/8}");
  chernoff->add_option("--n", v_n)->required();
  chernoff->add_option("--delta", v_delta)->required();
  auto* chern_r = chernoff->add_option("--r", v_rr, "spread parameter (default n)");
  auto* chern_eps = chernoff->add_option("--eps", v_eps);
  chernoff->callback([&] {
    const double r = chern_r->count() > 0 ? v_rr : static_cast<double>(v_n);
    rc = cmd_verify_chernoff(g, v_n, v_delta, r, chern_eps->count() > 0 ? std::optional<double>(v_eps) : std::nullopt);
  });

  // exact-sun
  SunQuery sq;
  double budget = 0;
  auto* exact = app.add_subcommand("exact-sun", "exact Sun(p,k) by exhaustive search");
  exact->add_option("--p", sq.p)->required();
  exact->add_option("--k", sq.k)->required();
  auto* budget_opt = exact->add_option("--budget", budget, "time budget in seconds");
  exact->add_option("--ground-cap", sq.ground_cap, "largest ground set the search may use")->capture_default_str();
  exact->callback([&] {
    if (budget_opt->count() > 0) sq.time_budget = budget;
    rc = cmd_exact_sun(g, sq);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CapacityExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
