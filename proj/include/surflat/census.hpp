#pragma once

// Exhaustive census of weighted rational trees: every tree is run through
// the trichotomy pipeline (elliptic sub-fibre exclusion, Zariski positive
// part, chain search, star-fibre search), and the negative definite
// subgraph and determinant-sign statements are re-checked tree by tree.

#include "surflat/classify.hpp"
#include "surflat/config.hpp"
#include "surflat/config_io.hpp"
#include "surflat/exact_linalg.hpp"
#include "surflat/tree_enum.hpp"
#include "surflat/zariski.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace surflat {

struct CensusParams {
  int max_components = 9;
  int min_weight = -5;
  std::optional<std::vector<int>> weight_set;
  int jobs = 1;

  [[nodiscard]] std::vector<int> weights() const {
    std::vector<int> w;
    if (weight_set) {
      w = *weight_set;
    } else {
      for (int x = -2; x >= min_weight; --x) w.push_back(x);
    }
    std::sort(w.begin(), w.end(), std::greater<>());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
  }

  void validate() const {
    if (max_components < 1) throw std::invalid_argument("census: max_components must be >= 1");
    if (max_components > 12) throw std::invalid_argument("census: max_components must be <= 12");
    if (min_weight > -2) throw std::invalid_argument("census: min_weight must be <= -2");
    if (weight_set) {
      if (weight_set->empty()) throw std::invalid_argument("census: empty weight set");
      for (int w : *weight_set)
        if (w > -2) throw std::invalid_argument("census: weights must be <= -2");
    }
    if (jobs < 1) throw std::invalid_argument("census: jobs must be >= 1");
  }
};

enum class VerdictKind { not_nef_big, case_A, case_B, case_B1, excluded_elliptic_subfiber, violation };
inline constexpr std::size_t kVerdictKinds = 6;

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::not_nef_big: return "not_nef_big";
    case VerdictKind::case_A: return "case_A";
    case VerdictKind::case_B: return "case_B";
    case VerdictKind::case_B1: return "case_B1";
    case VerdictKind::excluded_elliptic_subfiber: return "excluded_elliptic_subfiber";
    case VerdictKind::violation: return "violation";
  }
  return "?";
}

struct StarWitness {
  std::string type;
  std::vector<std::string> labels;  // canonical order
  QDivisor divisor;                 // multiplicity divisor C
  Rational adjoint;                 // C.(K + C)
};

struct TrichotomyVerdict {
  VerdictKind kind = VerdictKind::violation;
  Rational positive_square;  // P^2 of the reduced divisor (0 when P = 0)
  std::vector<std::string> chain;
  Rational chain_pairing;  // L_red . C for the chain witness
  std::optional<StarWitness> star;
  std::optional<EllipticSubfiber> elliptic;
};

struct TrichotomyOptions {
  bool elliptic_witness = true;
};

namespace detail {

inline bool is_b1_configuration(const Configuration& cfg) {
  if (cfg.size() != 9) return false;
  auto branch = nodes_with_degree_at_least(cfg, 3);
  if (branch.size() != 1 || cfg.degree(branch[0]) != 3) return false;
  auto br = path_branches(cfg, branch[0]);
  if (!br || (*br)[0].size() != 4 || (*br)[1].size() != 3 || (*br)[2].size() != 1) return false;
  const std::size_t special = (*br)[1].back();
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg.curve(i).self_int != (i == special ? -3 : -2)) return false;
  return true;
}

// Connected components of the subgraph induced on curves of weight -2.
inline std::vector<std::vector<std::size_t>> minus_two_components(const Configuration& cfg) {
  const std::size_t n = cfg.size();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || cfg.curve(s).self_int != -2) continue;
    std::vector<std::size_t> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto w : cfg.neighbors(v))
        if (!seen[w] && cfg.curve(w).self_int == -2) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline Rational adjoint_of_multiplicity_divisor(const Configuration& cfg, const QDivisor& c) {
  return intersect(cfg, c, c) + k_dot(cfg, c);
}

}  // namespace detail

/// Runs the trichotomy pipeline on a rational tree with all weights <= -2.
inline TrichotomyVerdict trichotomy_classify(const Configuration& cfg, const TrichotomyOptions& opts = {}) {
  if (!is_rational_tree(cfg)) throw ConfigError("trichotomy_classify: configuration is not a rational tree");
  for (const auto& c : cfg.curves())
    if (!c.self_int.is_integer() || c.self_int > -2)
      throw ConfigError("trichotomy_classify: every weight must be an integer <= -2");
  const std::size_t n = cfg.size();
  TrichotomyVerdict v;

  // (1) A (-2)-tree is negative definite iff it is of ADE type; otherwise it
  // contains an extended Dynkin subtree, i.e. supports an elliptic fibre.
  for (const auto& comp : detail::minus_two_components(cfg)) {
    auto sub = cfg.sub(comp);
    if (is_negative_definite(integer_gram(sub))) continue;
    v.kind = VerdictKind::excluded_elliptic_subfiber;
    if (opts.elliptic_witness) v.elliptic = detect_elliptic_subfiber(sub);
    return v;
  }

  // (2) Positive part of the reduced divisor.
  const auto gram = integer_gram(cfg);
  if (is_negative_definite(gram)) {
    v.kind = VerdictKind::not_nef_big;
    return v;
  }
  auto m = gram.map<Rational>([](std::int64_t x) { return Rational(x); });
  auto core = detail::zariski_core(m, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) {
    Rational dot;
    for (std::size_t j = 0; j < n; ++j)
      if (gram(i, j) != 0) dot += core.p[j] * Rational(gram(i, j));
    v.positive_square += core.p[i] * dot;
  }
  if (v.positive_square.sign() <= 0) {
    v.kind = VerdictKind::not_nef_big;
    return v;
  }

  // (3) Linear chains C with L_red.C >= 2; in a tree these are the paths,
  // and L_red.C = sum over C of (C_i^2 + deg C_i).
  std::vector<std::int64_t> contrib(n);
  for (std::size_t i = 0; i < n; ++i) contrib[i] = gram(i, i) + static_cast<std::int64_t>(cfg.degree(i));
  std::optional<std::vector<std::size_t>> best;
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<std::size_t> par(n, n);
    std::vector<std::size_t> order{u};
    par[u] = u;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (auto w : cfg.neighbors(order[h]))
        if (par[w] == n) {
          par[w] = order[h];
          order.push_back(w);
        }
    for (std::size_t t = u; t < n; ++t) {
      std::vector<std::size_t> path{t};
      while (path.back() != u) path.push_back(par[path.back()]);
      std::int64_t val = 0;
      for (auto x : path) val += contrib[x];
      if (val < 2) continue;
      std::reverse(path.begin(), path.end());
      if (!best || path.size() < best->size()) best = path;
    }
  }
  if (best) {
    v.kind = VerdictKind::case_A;
    for (auto x : *best) {
      v.chain.push_back(cfg.curve(x).label);
      v.chain_pairing += contrib[x];
    }
    return v;
  }

  // (4) Star-fibre divisors of type I_n*', III*', IV*' whose components of
  // multiplicity >= 2 are (-2)-curves.
  std::vector<std::vector<std::size_t>> subsets;
  for_each_connected_subset(cfg, std::vector<char>(n, 1), n, [&](const auto& s) {
    if (s.size() >= 5) subsets.push_back(s);
  });
  std::sort(subsets.begin(), subsets.end(),
            [](const auto& a, const auto& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  for (const auto& s : subsets) {
    auto sub = cfg.sub(s);
    auto cls = classify_star_fiber(sub);
    if (cls.kind != ClassKind::star_fiber || cls.star == StarType::II_star) continue;
    bool heavy_ok = true;
    for (const auto& [label, mult] : cls.multiplicities.coeffs())
      if (mult >= 2 && sub.curve(sub.index_of(label)).self_int != -2) heavy_ok = false;
    if (!heavy_ok) continue;
    StarWitness w;
    w.type = cls.name();
    w.labels = cls.witnesses;
    w.divisor = cls.multiplicities;
    w.adjoint = detail::adjoint_of_multiplicity_divisor(cfg, w.divisor);
    v.star = std::move(w);
    v.kind = cls.star == StarType::III_star && detail::is_b1_configuration(cfg) ? VerdictKind::case_B1
                                                                                 : VerdictKind::case_B;
    return v;
  }
  v.kind = VerdictKind::violation;
  return v;
}

struct CensusEntry {
  std::string encoding;
  Configuration configuration;
  TrichotomyVerdict verdict;
};

struct CensusReport {
  CensusParams params;
  std::vector<int> weights;
  std::size_t total = 0;
  std::array<std::size_t, kVerdictKinds> counts{};
  std::map<int, std::array<std::size_t, kVerdictKinds>> counts_by_size;
  std::vector<CensusEntry> violations;
  std::vector<CensusEntry> b1_hits;
  /// Every nef-and-big tree landed in case A, B or B1.
  [[nodiscard]] bool trichotomy_holds() const { return violations.empty(); }
  [[nodiscard]] std::size_t count(VerdictKind k) const { return counts[static_cast<std::size_t>(k)]; }
};

namespace detail {

// Work units are (size, shape) pairs, processed independently and merged
// in unit order, so the report does not depend on the number of workers.
template <class UnitResult, class Process>
std::vector<UnitResult> run_units(const CensusParams& params, Process&& process) {
  TreeEnumerator shapes_enum(params.weights());
  struct Unit {
    std::size_t n;
    TreeShape shape;
  };
  std::vector<Unit> units;
  for (int n = 1; n <= params.max_components; ++n)
    for (auto& s : shapes_enum.shapes(static_cast<std::size_t>(n))) units.push_back({static_cast<std::size_t>(n), s});
  std::vector<UnitResult> results(units.size());
  const std::size_t jobs = std::min<std::size_t>(static_cast<std::size_t>(params.jobs), std::max<std::size_t>(1, units.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    TreeEnumerator local(params.weights());
    local.shapes(static_cast<std::size_t>(params.max_components));  // same rooted ids as `shapes_enum`
    for (;;) {
      const std::size_t u = next.fetch_add(1);
      if (u >= units.size()) return;
      local.for_each_weighting(units[u].shape, [&](const std::vector<int>& w) {
        process(results[u], make_tree_configuration(units[u].shape, w));
      });
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace detail

inline CensusReport run_census(const CensusParams& params) {
  params.validate();
  struct UnitResult {
    std::size_t total = 0;
    std::array<std::size_t, kVerdictKinds> counts{};
    int n = 0;
    std::vector<CensusEntry> violations, b1;
  };
  auto results = detail::run_units<UnitResult>(params, [](UnitResult& r, Configuration cfg) {
    auto verdict = trichotomy_classify(cfg, TrichotomyOptions{false});
    r.n = static_cast<int>(cfg.size());
    ++r.total;
    ++r.counts[static_cast<std::size_t>(verdict.kind)];
    if (verdict.kind == VerdictKind::violation || verdict.kind == VerdictKind::case_B1) {
      CensusEntry e{canonical_encoding(cfg), std::move(cfg), std::move(verdict)};
      (e.verdict.kind == VerdictKind::violation ? r.violations : r.b1).push_back(std::move(e));
    }
  });
  CensusReport rep;
  rep.params = params;
  rep.weights = params.weights();
  for (auto& r : results) {
    rep.total += r.total;
    auto& by = rep.counts_by_size[r.n];
    for (std::size_t k = 0; k < kVerdictKinds; ++k) {
      rep.counts[k] += r.counts[k];
      by[k] += r.counts[k];
    }
    for (auto& e : r.violations) rep.violations.push_back(std::move(e));
    for (auto& e : r.b1) rep.b1_hits.push_back(std::move(e));
  }
  return rep;
}

struct LemmaFailure {
  std::string encoding;
  Configuration configuration;
  std::string reason;
};

struct SubgraphLemmaReport {
  CensusParams params;
  std::size_t total = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // (-2)-curves support I_0*
  std::vector<LemmaFailure> failures;
};

/// For every tree whose (-2)-curves do not support I_0*, a negative
/// definite subset of min(9, n - 1) curves must exist.
inline SubgraphLemmaReport verify_subgraph_lemma(const CensusParams& params) {
  params.validate();
  if (params.max_components > 10) throw std::invalid_argument("verify_subgraph_lemma: max_components must be <= 10");
  struct UnitResult {
    std::size_t total = 0, checked = 0, skipped = 0;
    std::vector<LemmaFailure> failures;
  };
  auto results = detail::run_units<UnitResult>(params, [](UnitResult& r, Configuration cfg) {
    ++r.total;
    if (minus_two_curves_support_i0_star(cfg)) {
      ++r.skipped;
      return;
    }
    ++r.checked;
    if (!find_negative_definite_subgraph(cfg))
      r.failures.push_back({canonical_encoding(cfg), std::move(cfg), "no negative definite subset of the required size"});
  });
  SubgraphLemmaReport rep;
  rep.params = params;
  for (auto& r : results) {
    rep.total += r.total;
    rep.checked += r.checked;
    rep.skipped += r.skipped;
    for (auto& f : r.failures) rep.failures.push_back(std::move(f));
  }
  return rep;
}

struct DetSignReport {
  CensusParams params;
  std::size_t total = 0;
  std::size_t checked = 0;
  std::size_t skipped_definite = 0;             // whole form negative definite
  std::size_t skipped_no_definite_complement = 0;  // no curve leaves a definite remainder
  std::size_t skipped_no_positive_square = 0;   // semidefinite
  std::vector<LemmaFailure> violations;
};

namespace detail {

enum class DetSignOutcome { checked_ok, violation, skipped_definite, skipped_no_complement, skipped_semidefinite };

// Determinant by fraction-free elimination; positivity of some square
// from the symmetric-pivot classification. The two routes share no code.
inline DetSignOutcome det_sign_check(const Configuration& cfg, std::string* reason = nullptr) {
  const std::size_t total = cfg.size();
  if (!has_integral_weights(cfg)) throw ConfigError("det-sign check needs integral weights");
  auto g = integer_gram(cfg);
  if (is_negative_definite(g)) return DetSignOutcome::skipped_definite;
  bool complement = false;
  for (std::size_t v = 0; v < total && !complement; ++v) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < total; ++i)
      if (i != v) rest.push_back(i);
    complement = is_negative_definite(g.principal(rest));
  }
  if (!complement) return DetSignOutcome::skipped_no_complement;
  if (definiteness(cfg).kind != DefinitenessKind::indefinite_or_other) return DetSignOutcome::skipped_semidefinite;
  const std::int64_t det = determinant(g);
  const std::size_t n = total - 1;
  const bool ok = n % 2 == 0 ? det > 0 : det < 0;
  if (!ok && reason) *reason = "determinant " + std::to_string(det) + " has the wrong sign for n = " + std::to_string(n);
  return ok ? DetSignOutcome::checked_ok : DetSignOutcome::violation;
}

}  // namespace detail

/// Determinant sign (-1)^n for trees on n + 1 curves where removing some
/// curve leaves a negative definite matrix and some divisor has positive
/// square.
inline DetSignReport verify_det_sign(const CensusParams& params) {
  params.validate();
  struct UnitResult {
    std::size_t total = 0, checked = 0, s_def = 0, s_comp = 0, s_semi = 0;
    std::vector<LemmaFailure> violations;
  };
  auto results = detail::run_units<UnitResult>(params, [](UnitResult& r, Configuration cfg) {
    ++r.total;
    std::string reason;
    switch (detail::det_sign_check(cfg, &reason)) {
      case detail::DetSignOutcome::checked_ok: ++r.checked; break;
      case detail::DetSignOutcome::violation:
        ++r.checked;
        r.violations.push_back({canonical_encoding(cfg), std::move(cfg), reason});
        break;
      case detail::DetSignOutcome::skipped_definite: ++r.s_def; break;
      case detail::DetSignOutcome::skipped_no_complement: ++r.s_comp; break;
      case detail::DetSignOutcome::skipped_semidefinite: ++r.s_semi; break;
    }
  });
  DetSignReport rep;
  rep.params = params;
  for (auto& r : results) {
    rep.total += r.total;
    rep.checked += r.checked;
    rep.skipped_definite += r.s_def;
    rep.skipped_no_definite_complement += r.s_comp;
    rep.skipped_no_positive_square += r.s_semi;
    for (auto& f : r.violations) rep.violations.push_back(std::move(f));
  }
  return rep;
}

}  // namespace surflat
