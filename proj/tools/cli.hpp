#pragma once

// Command-line front end. run() is kept in a header so the tests can drive
// it in-process with captured streams.
//
// Exit codes: 0 success, 1 violations found, 2 input error.

#include "surflat/census.hpp"
#include "surflat/classify.hpp"
#include "surflat/config_io.hpp"
#include "surflat/exact_linalg.hpp"
#include "surflat/surface_arith.hpp"
#include "surflat/zariski.hpp"

#include "CLI11.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace surflat::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += xs[i];
  }
  return s;
}

inline std::string divisor_text(const Configuration& cfg, const QDivisor& d) {
  std::vector<std::string> parts;
  for (const auto& c : cfg.curves()) {
    auto v = d.coeff(c.label);
    if (!v.is_zero()) parts.push_back(c.label + "=" + v.str());
  }
  return parts.empty() ? "0" : join(parts);
}

inline ordered_json labels_json(const std::vector<std::string>& labels) {
  ordered_json a = ordered_json::array();
  for (const auto& l : labels) a.push_back(l);
  return a;
}

inline Rational parse_rational(const std::string& s, const char* flag) {
  try {
    return Rational::parse(s);
  } catch (const std::exception& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

inline void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

// ---- decompose ----------------------------------------------------------

inline int decompose(const std::string& path, const std::string& format, std::ostream& out) {
  auto file = load_configuration_file(path);
  const auto& cfg = file.configuration;
  const QDivisor d = file.divisor ? *file.divisor : QDivisor::reduced(cfg);
  auto z = zariski_decompose(cfg, d);
  const Rational p_sq = self_square(cfg, z.positive);
  if (format == "json") {
    ordered_json j;
    j["divisor"] = divisor_to_json(cfg, d);
    j["positive"] = divisor_to_json(cfg, z.positive);
    j["negative"] = divisor_to_json(cfg, z.negative);
    j["positive_square"] = rational_to_json(p_sq);
    j["negative_support"] = labels_json(z.negative_support);
    j["iterations"] = z.iterations;
    j["big_and_nef"] = p_sq.sign() > 0;
    j["configuration"] = configuration_to_json(cfg, z.positive);
    emit(out, j);
    return kOk;
  }
  out << "divisor: " << divisor_text(cfg, d) << '\n';
  out << "P: " << divisor_text(cfg, z.positive) << '\n';
  out << "N: " << divisor_text(cfg, z.negative) << '\n';
  out << "P^2: " << p_sq << '\n';
  out << "negative support: " << (z.negative_support.empty() ? "(empty)" : join(z.negative_support)) << '\n';
  out << "iterations: " << z.iterations << '\n';
  return kOk;
}

// ---- classify -----------------------------------------------------------

inline int classify(const std::string& path, const std::string& format, std::ostream& out) {
  auto cfg = load_configuration_file(path).configuration;
  const bool tree = is_rational_tree(cfg);
  auto def = definiteness(cfg);
  auto elliptic = detect_elliptic_subfiber(cfg);
  std::optional<ConfigClass> dynkin, star;
  std::optional<std::vector<std::string>> nd_subset;
  std::string nd_note;
  if (tree) {
    dynkin = classify_dynkin(cfg);
    star = classify_star_fiber(cfg);
    if (minus_two_curves_support_i0_star(cfg)) {
      nd_note = "skipped: (-2)-curves support I_0*";
    } else {
      nd_subset = find_negative_definite_subgraph(cfg);
      if (!nd_subset) nd_note = "none";
    }
  }
  if (format == "json") {
    ordered_json j;
    j["components"] = cfg.size();
    j["rational_tree"] = tree;
    j["definiteness"] = to_string(def.kind);
    j["kernel"] = ordered_json::array();
    for (const auto& k : def.kernel) j["kernel"].push_back(divisor_to_json(cfg, k));
    if (tree) {
      j["dynkin"] = dynkin->name();
      if (dynkin->kind != ClassKind::none) j["dynkin_order"] = labels_json(dynkin->witnesses);
      j["star"] = star->name();
      if (star->kind != ClassKind::none) {
        j["star_order"] = labels_json(star->witnesses);
        j["star_multiplicities"] = divisor_to_json(cfg, star->multiplicities);
      }
      if (nd_subset)
        j["negative_definite_subset"] = labels_json(*nd_subset);
      else
        j["negative_definite_subset"] = nd_note;
    }
    if (elliptic) {
      ordered_json e;
      e["type"] = elliptic->type;
      e["labels"] = labels_json(elliptic->labels);
      e["multiplicities"] = divisor_to_json(cfg, elliptic->multiplicities);
      j["elliptic_subfiber"] = std::move(e);
    } else {
      j["elliptic_subfiber"] = nullptr;
    }
    emit(out, j);
    return kOk;
  }
  out << "components: " << cfg.size() << '\n';
  out << "rational tree: " << (tree ? "yes" : "no") << '\n';
  out << "definiteness: " << to_string(def.kind) << '\n';
  for (const auto& k : def.kernel) out << "kernel: " << divisor_text(cfg, k) << '\n';
  if (tree) {
    out << "dynkin: " << dynkin->name();
    if (dynkin->kind != ClassKind::none) out << " [" << join(dynkin->witnesses) << "]";
    out << '\n';
    out << "star: " << star->name();
    if (star->kind != ClassKind::none)
      out << " [" << join(star->witnesses) << "] multiplicities " << divisor_text(cfg, star->multiplicities);
    out << '\n';
    out << "negative definite subset: " << (nd_subset ? join(*nd_subset) : nd_note) << '\n';
  }
  if (elliptic)
    out << "elliptic subfiber: " << elliptic->type << " [" << join(elliptic->labels) << "] multiplicities "
        << divisor_text(cfg, elliptic->multiplicities) << '\n';
  else
    out << "elliptic subfiber: none\n";
  return kOk;
}

// ---- check --------------------------------------------------------------

struct SuiteResult {
  std::string suite;
  std::string status;  // ok, violation, skipped
  std::vector<std::string> lines;
};

inline ordered_json verdict_json(const Configuration& cfg, const TrichotomyVerdict& v) {
  ordered_json j;
  j["verdict"] = to_string(v.kind);
  j["positive_square"] = rational_to_json(v.positive_square);
  if (!v.chain.empty()) {
    j["chain"] = labels_json(v.chain);
    j["chain_pairing"] = rational_to_json(v.chain_pairing);
  }
  if (v.star) {
    j["star_type"] = v.star->type;
    j["star_labels"] = labels_json(v.star->labels);
    j["star_multiplicities"] = divisor_to_json(cfg, v.star->divisor);
    j["star_adjoint"] = rational_to_json(v.star->adjoint);
  }
  if (v.elliptic) {
    j["elliptic_type"] = v.elliptic->type;
    j["elliptic_labels"] = labels_json(v.elliptic->labels);
  }
  return j;
}

inline std::vector<std::string> verdict_lines(const Configuration& cfg, const TrichotomyVerdict& v) {
  std::vector<std::string> l{std::string("verdict: ") + to_string(v.kind)};
  l.push_back("P^2: " + v.positive_square.str());
  if (!v.chain.empty()) l.push_back("chain: " + join(v.chain) + " (pairing " + v.chain_pairing.str() + ")");
  if (v.star)
    l.push_back("star: " + v.star->type + " [" + join(v.star->labels) + "] multiplicities " +
                divisor_text(cfg, v.star->divisor) + " adjoint " + v.star->adjoint.str());
  if (v.elliptic) l.push_back("elliptic subfiber: " + v.elliptic->type + " [" + join(v.elliptic->labels) + "]");
  return l;
}

// Pendant chains of a tree, each with its unique outside neighbour:
// every initial segment of a leg (a path from a leaf through degree-2
// curves), and every pair of legs joined at a degree-3 curve.
inline std::vector<std::pair<std::vector<std::size_t>, std::size_t>> pendant_chains(const Configuration& cfg) {
  const std::size_t n = cfg.size();
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> out;
  auto leg_from = [&](std::size_t leaf) {
    std::vector<std::size_t> leg{leaf};
    std::size_t prev = n;
    for (;;) {
      std::size_t cur = leg.back(), next = n;
      for (auto w : cfg.neighbors(cur))
        if (w != prev) next = w;
      if (next == n || cfg.degree(next) != 2) return std::make_pair(leg, next);
      prev = cur;
      leg.push_back(next);
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (cfg.degree(v) != 1) continue;
    auto [leg, stop] = leg_from(v);
    std::vector<std::size_t> walk = leg;
    if (stop != n) walk.push_back(stop);
    for (std::size_t k = 0; k + 1 < walk.size(); ++k)
      out.push_back({std::vector<std::size_t>(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(k) + 1), walk[k + 1]});
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (cfg.degree(v) != 3) continue;
    std::vector<std::vector<std::size_t>> legs;
    std::vector<std::size_t> others;
    for (auto w : cfg.neighbors(v)) {
      // A leg hanging off v: follow w away from v through degree-2 curves to a leaf.
      std::vector<std::size_t> path{w};
      std::size_t prev = v;
      bool is_leg = true;
      while (cfg.degree(path.back()) != 1) {
        if (cfg.degree(path.back()) != 2) {
          is_leg = false;
          break;
        }
        std::size_t next = n;
        for (auto u : cfg.neighbors(path.back()))
          if (u != prev) next = u;
        prev = path.back();
        path.push_back(next);
      }
      if (is_leg)
        legs.push_back(path);
      else
        others.push_back(w);
    }
    if (legs.size() != 2 || others.size() != 1) continue;
    std::vector<std::size_t> chain(legs[0].rbegin(), legs[0].rend());
    chain.push_back(v);
    chain.insert(chain.end(), legs[1].begin(), legs[1].end());
    out.push_back({chain, others[0]});
  }
  return out;
}

inline SuiteResult check_trichotomy(const Configuration& cfg, ordered_json& j) {
  SuiteResult r{"trichotomy", "ok", {}};
  auto v = trichotomy_classify(cfg);
  j = verdict_json(cfg, v);
  r.lines = verdict_lines(cfg, v);
  if (v.kind == VerdictKind::violation) r.status = "violation";
  return r;
}

inline SuiteResult check_det_sign(const Configuration& cfg, ordered_json& j) {
  SuiteResult r{"det-sign", "ok", {}};
  if (!is_rational_tree(cfg) || !has_integral_weights(cfg))
    throw ConfigError("det-sign: needs a rational tree with integral weights");
  std::string reason;
  auto outcome = surflat::detail::det_sign_check(cfg, &reason);
  using O = surflat::detail::DetSignOutcome;
  const auto det = determinant(integer_gram(cfg));
  j["determinant"] = det;
  switch (outcome) {
    case O::checked_ok: r.lines.push_back("sign of det " + std::to_string(det) + " agrees"); break;
    case O::violation:
      r.status = "violation";
      r.lines.push_back(reason);
      break;
    case O::skipped_definite:
      r.status = "skipped";
      r.lines.push_back("negative definite");
      break;
    case O::skipped_no_complement:
      r.status = "skipped";
      r.lines.push_back("no curve leaves a negative definite remainder");
      break;
    case O::skipped_semidefinite:
      r.status = "skipped";
      r.lines.push_back("negative semidefinite");
      break;
  }
  j["detail"] = r.lines.front();
  return r;
}

inline SuiteResult check_chain_forcing(const Configuration& cfg, ordered_json& j) {
  SuiteResult r{"chain-forcing", "ok", {}};
  if (!is_rational_tree(cfg)) throw ConfigError("chain-forcing: needs a rational tree");
  auto z = zariski_decompose(cfg, QDivisor::reduced(cfg));
  j = ordered_json::array();
  for (const auto& [chain_idx, att] : pendant_chains(cfg)) {
    std::vector<std::string> chain;
    for (auto i : chain_idx) chain.push_back(cfg.curve(i).label);
    const std::string attachment = cfg.curve(att).label;
    auto f = chain_forcing(cfg, chain, attachment);
    ordered_json e;
    e["chain"] = labels_json(chain);
    e["attachment"] = attachment;
    e["verdict"] = f.verdict == ChainVerdict::forced_into_N ? "forced_into_N" : "no_conclusion";
    std::string line = "[" + join(chain) + "] at " + attachment + ": " + e["verdict"].get<std::string>();
    if (f.verdict == ChainVerdict::forced_into_N) {
      // Certificate: p_i <= b_i p_att < 1 and every chain curve lies in N.
      const Rational p_att = z.positive.coeff(attachment);
      bool ok = true;
      for (const auto& l : chain) {
        const Rational bound = f.bounds.coeff(l) * p_att;
        if (z.positive.coeff(l) > bound || !(bound < 1) || z.negative.coeff(l).sign() <= 0) ok = false;
      }
      e["bounds"] = divisor_to_json(cfg, f.bounds);
      e["confirmed"] = ok;
      if (!ok) {
        r.status = "violation";
        line += " (NOT confirmed by the decomposition)";
      }
    }
    j.push_back(std::move(e));
    r.lines.push_back(std::move(line));
  }
  if (r.lines.empty()) r.lines.push_back("no pendant chains");
  return r;
}

inline int check(const std::string& path, const std::string& suite, const std::string& format, std::ostream& out) {
  auto cfg = load_configuration_file(path).configuration;
  using Fn = std::function<SuiteResult(const Configuration&, ordered_json&)>;
  std::vector<std::pair<std::string, Fn>> suites;
  if (suite == "trichotomy" || suite == "all") suites.push_back({"trichotomy", check_trichotomy});
  if (suite == "det-sign" || suite == "all") suites.push_back({"det-sign", check_det_sign});
  if (suite == "chain-forcing" || suite == "all") suites.push_back({"chain-forcing", check_chain_forcing});
  ordered_json report = ordered_json::object();
  std::vector<SuiteResult> results;
  bool violation = false;
  for (const auto& [name, fn] : suites) {
    ordered_json j;
    SuiteResult r;
    try {
      r = fn(cfg, j);
    } catch (const ConfigError& e) {
      if (suite != "all") throw;
      r = {name, "skipped", {e.what()}};
      j = nullptr;
    }
    violation = violation || r.status == "violation";
    ordered_json entry;
    entry["status"] = r.status;
    entry["result"] = j;
    report[name] = std::move(entry);
    results.push_back(std::move(r));
  }
  if (format == "json") {
    emit(out, report);
  } else {
    for (const auto& r : results) {
      out << r.suite << ": " << r.status << '\n';
      for (const auto& l : r.lines) out << "  " << l << '\n';
    }
  }
  return violation ? kViolation : kOk;
}

// ---- census -------------------------------------------------------------

inline ordered_json entry_json(const CensusEntry& e) {
  ordered_json j;
  j["encoding"] = e.encoding;
  j["configuration"] = configuration_to_json(e.configuration);
  j["verdict"] = verdict_json(e.configuration, e.verdict);
  return j;
}

inline ordered_json params_json(const CensusParams& p) {
  ordered_json j;
  j["max_components"] = p.max_components;
  j["weights"] = p.weights();
  return j;
}

inline int census(const CensusParams& params, const std::string& suite, const std::string& format, std::ostream& out) {
  const bool json = format == "json";
  if (suite == "trichotomy") {
    auto rep = run_census(params);
    if (json) {
      ordered_json j;
      j["params"] = params_json(params);
      j["total"] = rep.total;
      j["counts"] = ordered_json::object();
      for (std::size_t k = 0; k < kVerdictKinds; ++k) j["counts"][to_string(static_cast<VerdictKind>(k))] = rep.counts[k];
      j["counts_by_components"] = ordered_json::object();
      for (const auto& [n, counts] : rep.counts_by_size) {
        ordered_json c;
        for (std::size_t k = 0; k < kVerdictKinds; ++k) c[to_string(static_cast<VerdictKind>(k))] = counts[k];
        j["counts_by_components"][std::to_string(n)] = std::move(c);
      }
      j["violations"] = ordered_json::array();
      for (const auto& e : rep.violations) j["violations"].push_back(entry_json(e));
      j["case_B1"] = ordered_json::array();
      for (const auto& e : rep.b1_hits) j["case_B1"].push_back(entry_json(e));
      j["excluded"] = "trees with 10 or more components are outside the census";
      emit(out, j);
    } else {
      out << "weighted trees: " << rep.total << " (components <= " << params.max_components << ", weights";
      for (int w : rep.weights) out << ' ' << w;
      out << ")\n";
      for (std::size_t k = 0; k < kVerdictKinds; ++k)
        out << "  " << to_string(static_cast<VerdictKind>(k)) << ": " << rep.counts[k] << '\n';
      for (const auto& [n, counts] : rep.counts_by_size) {
        out << "  n=" << n << ':';
        for (std::size_t k = 0; k < kVerdictKinds; ++k) out << ' ' << counts[k];
        out << '\n';
      }
      for (const auto& e : rep.b1_hits) out << "case_B1: " << e.encoding << '\n';
      for (const auto& e : rep.violations) out << "VIOLATION: " << e.encoding << '\n';
      out << "violations: " << rep.violations.size() << '\n';
    }
    return rep.trichotomy_holds() ? kOk : kViolation;
  }
  if (suite == "subgraph") {
    auto rep = verify_subgraph_lemma(params);
    if (json) {
      ordered_json j;
      j["params"] = params_json(params);
      j["total"] = rep.total;
      j["checked"] = rep.checked;
      j["skipped_i0_star"] = rep.skipped;
      j["failures"] = ordered_json::array();
      for (const auto& f : rep.failures) j["failures"].push_back(f.encoding);
      emit(out, j);
    } else {
      out << "weighted trees: " << rep.total << ", checked " << rep.checked << ", skipped (I_0*) " << rep.skipped << '\n';
      for (const auto& f : rep.failures) out << "FAILURE: " << f.encoding << '\n';
      out << "failures: " << rep.failures.size() << '\n';
    }
    return rep.failures.empty() ? kOk : kViolation;
  }
  auto rep = verify_det_sign(params);
  if (json) {
    ordered_json j;
    j["params"] = params_json(params);
    j["total"] = rep.total;
    j["checked"] = rep.checked;
    j["skipped_negative_definite"] = rep.skipped_definite;
    j["skipped_no_definite_complement"] = rep.skipped_no_definite_complement;
    j["skipped_semidefinite"] = rep.skipped_no_positive_square;
    j["violations"] = ordered_json::array();
    for (const auto& f : rep.violations) {
      ordered_json v;
      v["encoding"] = f.encoding;
      v["reason"] = f.reason;
      j["violations"].push_back(std::move(v));
    }
    emit(out, j);
  } else {
    out << "weighted trees: " << rep.total << ", checked " << rep.checked << '\n';
    out << "  skipped negative definite: " << rep.skipped_definite << '\n';
    out << "  skipped without definite complement: " << rep.skipped_no_definite_complement << '\n';
    out << "  skipped semidefinite: " << rep.skipped_no_positive_square << '\n';
    for (const auto& f : rep.violations) out << "VIOLATION: " << f.encoding << ": " << f.reason << '\n';
    out << "violations: " << rep.violations.size() << '\n';
  }
  return rep.violations.empty() ? kOk : kViolation;
}

}  // namespace detail

/// Parses argv and dispatches to one verb.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact intersection-lattice computations on configurations of curves"};
  app.name("surflat");
  app.require_subcommand(1, 1);
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  std::string path;
  auto* dec = app.add_subcommand("decompose", "Zariski decomposition of the file's divisor (reduced divisor if none)");
  dec->add_option("file", path, "configuration file")->required();
  add_format(dec);

  auto* cls = app.add_subcommand("classify", "Dynkin, star-fibre and elliptic sub-fibre findings");
  cls->add_option("file", path, "configuration file")->required();
  add_format(cls);

  std::string suite = "all";
  auto* chk = app.add_subcommand("check", "Run a lemma suite on one configuration");
  chk->add_option("file", path, "configuration file")->required();
  chk->add_option("--suite", suite, "trichotomy, det-sign, chain-forcing or all")
      ->check(CLI::IsMember({"trichotomy", "det-sign", "chain-forcing", "all"}));
  add_format(chk);

  CensusParams params;
  std::vector<int> weights;
  std::string census_suite = "trichotomy";
  auto* cen = app.add_subcommand("census", "Exhaustive census of weighted rational trees");
  cen->add_option("--max-components", params.max_components, "largest tree size");
  cen->add_option("--min-weight", params.min_weight, "weights range over -2 down to this value");
  cen->add_option("--weights", weights, "explicit weight list, e.g. -2,-3")->delimiter(',');
  cen->add_option("--jobs", params.jobs, "worker threads (does not affect output)");
  cen->add_option("--suite", census_suite, "trichotomy, subgraph or det-sign")
      ->check(CLI::IsMember({"trichotomy", "subgraph", "det-sign"}));
  add_format(cen);

  auto* ari = app.add_subcommand("arith", "Scalar surface formulas");
  ari->require_subcommand(1, 1);
  std::string chi = "1", m_sq, m_dot_k, c_dot_m, c_dot_kc, kdd, k_sq;
  std::optional<int> q;
  std::optional<long> k_filter;
  int range = 100;
  long degree = 1;
  std::vector<std::string> horizontal, fibers;
  auto* rr = ari->add_subcommand("rr", "chi(O(M)) = chi + (M^2 - M.K)/2");
  rr->add_option("--m-sq", m_sq)->required();
  rr->add_option("--m-dot-k", m_dot_k)->required();
  rr->add_option("--chi", chi);
  auto* cr = ari->add_subcommand("chi-restriction", "chi(O_C(M)) = C.M - C.(K+C)/2");
  cr->add_option("--c-dot-m", c_dot_m)->required();
  cr->add_option("--c-dot-k-plus-c", c_dot_kc)->required();
  auto* pic = ari->add_subcommand("picard", "b_2 = 12 chi - K^2 - 2 + 4q");
  pic->add_option("--chi", chi);
  pic->add_option("--q", q)->required();
  pic->add_option("--k-sq", k_sq)->required();
  auto* mul = ari->add_subcommand("multiplicity", "coprime multiple-fibre pairs");
  mul->add_option("--k", k_filter);
  mul->add_option("--range", range)->check(CLI::Range(2, 10000));
  auto* h0 = ari->add_subcommand("remark-h0", "(K+D).D/2 + chi");
  h0->add_option("--k-plus-d-dot-d", kdd)->required();
  h0->add_option("--chi", chi);
  auto* hir = ari->add_subcommand("hirzebruch", "nef inequalities for K + L on F_d");
  hir->add_option("--d", degree)->required();
  hir->add_option("--horizontal", horizontal, "c:C.F:C.C1, negative section first")->required();
  hir->add_option("--fibers", fibers, "fibre coefficients")->delimiter(',');
  for (auto* sub : {rr, cr, pic, mul, h0, hir}) add_format(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << (e.get_name() == "CallForVersion" ? e.what() : app.help("", CLI::AppFormatMode::All));
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*dec) return detail::decompose(path, format, out);
    if (*cls) return detail::classify(path, format, out);
    if (*chk) return detail::check(path, suite, format, out);
    if (*cen) {
      if (!weights.empty()) params.weight_set = weights;
      try {
        params.validate();
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      return detail::census(params, census_suite, format, out);
    }
    // arith
    SurfaceContext ctx;
    ctx.chi = detail::parse_rational(chi, "--chi");
    ordered_json j;
    std::string text;
    if (*rr) {
      auto v = riemann_roch_chi(detail::parse_rational(m_sq, "--m-sq"), detail::parse_rational(m_dot_k, "--m-dot-k"), ctx);
      j["chi"] = rational_to_json(v);
      text = "chi(O(M)) = " + v.str();
    } else if (*cr) {
      auto v = chi_restriction(detail::parse_rational(c_dot_m, "--c-dot-m"),
                               detail::parse_rational(c_dot_kc, "--c-dot-k-plus-c"));
      j["chi"] = rational_to_json(v);
      text = "chi(O_C(M)) = " + v.str();
    } else if (*pic) {
      ctx.q = q;
      ctx.k_sq = detail::parse_rational(k_sq, "--k-sq");
      ctx.validate();
      auto v = noether_picard_bound(ctx);
      j["b2"] = v;
      text = "rho <= b_2 = " + std::to_string(v);
    } else if (*mul) {
      auto s = solve_multiplicity(k_filter, range);
      j["range"] = s.range;
      j["solutions"] = ordered_json::array();
      std::ostringstream t;
      t << "solutions in [2," << s.range << "]^2: " << s.solutions.size();
      for (const auto& x : s.solutions) {
        ordered_json e;
        e["m1"] = x.m1;
        e["m2"] = x.m2;
        e["k"] = x.k;
        j["solutions"].push_back(std::move(e));
        t << "\n  (" << x.m1 << ", " << x.m2 << ") k = " << x.k;
      }
      text = t.str();
    } else if (*h0) {
      auto v = remark_h0(detail::parse_rational(kdd, "--k-plus-d-dot-d"), ctx);
      j["value"] = rational_to_json(v);
      text = "(K+D).D/2 + chi = " + v.str();
    } else {
      std::vector<HorizontalComponent> hs;
      for (const auto& h : horizontal) {
        auto a = h.find(':'), b = h.rfind(':');
        if (a == std::string::npos || a == b) throw InputError("--horizontal: expected c:C.F:C.C1, got '" + h + "'");
        try {
          hs.push_back({detail::parse_rational(h.substr(0, a), "--horizontal"), std::stol(h.substr(a + 1, b - a - 1)),
                        std::stol(h.substr(b + 1))});
        } catch (const std::logic_error&) {
          throw InputError("--horizontal: malformed '" + h + "'");
        }
      }
      std::vector<Rational> fs;
      for (const auto& f : fibers) fs.push_back(detail::parse_rational(f, "--fibers"));
      auto r = hirzebruch_check(degree, hs, fs);
      j["case"] = to_string(r.shape);
      j["k_plus_l_dot_f"] = rational_to_json(r.k_plus_l_dot_f);
      j["k_plus_l_dot_c1"] = rational_to_json(r.k_plus_l_dot_c1);
      j["nef_inequalities"] = r.nef_inequalities();
      j["roundup"] = {rational_to_json(r.roundup_c1), rational_to_json(r.roundup_f)};
      j["dominates_minus_k"] = r.dominates_minus_k;
      j["contradiction"] = r.contradiction;
      std::ostringstream t;
      t << "case " << to_string(r.shape) << "\n(K+L).F = " << r.k_plus_l_dot_f << "\n(K+L).C1 = " << r.k_plus_l_dot_c1
        << "\nnef inequalities: " << (r.nef_inequalities() ? "hold" : "fail") << "\nround-up = " << r.roundup_c1
        << " C1 + " << r.roundup_f << " F\nround-up >= -K: " << (r.dominates_minus_k ? "yes" : "no");
      text = t.str();
    }
    if (format == "json")
      detail::emit(out, j);
    else
      out << text << '\n';
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const HypothesisViolation& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace surflat::cli
