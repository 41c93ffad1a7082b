#pragma once

// Recognition of Dynkin-shaped trees (A', D', E'), the tree-shaped Kodaira
// star fibres (I_n*, II*, III*, IV*) and their primed variants, and the
// searches for elliptic sub-fibres and negative definite subgraphs.

#include "surflat/config.hpp"
#include "surflat/exact_linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace surflat {

enum class ClassKind { A_prime, D_prime, E_prime, star_fiber, none };
enum class StarType { I_n_star, II_star, III_star, IV_star };

struct ConfigClass {
  ClassKind kind = ClassKind::none;
  int rank = 0;  // n in A_n', D_n', E_n'
  StarType star = StarType::I_n_star;
  int star_index = 0;  // n in I_n*
  bool primed = false;
  QDivisor multiplicities;
  /// Curves of the configuration in canonical order.
  std::vector<std::string> witnesses;

  [[nodiscard]] std::string name() const {
    switch (kind) {
      case ClassKind::A_prime: return "A_" + std::to_string(rank) + "'";
      case ClassKind::D_prime: return "D_" + std::to_string(rank) + "'";
      case ClassKind::E_prime: return "E_" + std::to_string(rank) + "'";
      case ClassKind::star_fiber: {
        std::string base;
        switch (star) {
          case StarType::I_n_star: base = "I_" + std::to_string(star_index) + "*"; break;
          case StarType::II_star: base = "II*"; break;
          case StarType::III_star: base = "III*"; break;
          case StarType::IV_star: base = "IV*"; break;
        }
        return primed ? base + "'" : base;
      }
      case ClassKind::none: return "none";
    }
    return "none";
  }
};

namespace detail {

// Branches hanging off `center`, each listed outward from the center, or
// nullopt if some branch is not a path. Sorted by decreasing length, ties
// by first index.
inline std::optional<std::vector<std::vector<std::size_t>>> path_branches(const Configuration& cfg,
                                                                          std::size_t center) {
  std::vector<std::vector<std::size_t>> out;
  for (auto start : cfg.neighbors(center)) {
    std::vector<std::size_t> br{start};
    std::size_t prev = center, cur = start;
    for (;;) {
      if (cfg.degree(cur) > 2) return std::nullopt;
      std::optional<std::size_t> next;
      for (auto w : cfg.neighbors(cur))
        if (w != prev) next = w;
      if (!next) break;
      prev = cur;
      cur = *next;
      br.push_back(cur);
    }
    out.push_back(std::move(br));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

inline std::vector<std::size_t> nodes_with_degree_at_least(const Configuration& cfg, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg.degree(i) >= d) out.push_back(i);
  return out;
}

inline std::vector<std::size_t> path_order(const Configuration& cfg) {
  std::size_t start = 0;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (cfg.degree(i) <= 1) {
      start = i;
      break;
    }
  std::vector<std::size_t> out{start};
  std::size_t prev = cfg.size();
  while (out.size() < cfg.size()) {
    const std::size_t cur = out.back();
    for (auto w : cfg.neighbors(cur))
      if (w != prev) {
        out.push_back(w);
        break;
      }
    prev = cur;
  }
  return out;
}

// Longest branch tip-to-center, center, then the other branches outward.
inline std::vector<std::size_t> star_order(std::size_t center, const std::vector<std::vector<std::size_t>>& br) {
  std::vector<std::size_t> out(br[0].rbegin(), br[0].rend());
  out.push_back(center);
  for (std::size_t b = 1; b < br.size(); ++b) out.insert(out.end(), br[b].begin(), br[b].end());
  return out;
}

inline std::vector<std::string> labels_of(const Configuration& cfg, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(cfg.curve(i).label);
  return out;
}

inline void require_rational_tree(const Configuration& cfg, const char* what) {
  if (!is_rational_tree(cfg)) throw ConfigError(std::string(what) + ": configuration is not a rational tree");
}

}  // namespace detail

/// Dynkin shape of the unweighted dual graph; the weights are not
/// consulted.
inline ConfigClass classify_dynkin(const Configuration& cfg) {
  detail::require_rational_tree(cfg, "classify_dynkin");
  ConfigClass out;
  const int n = static_cast<int>(cfg.size());
  auto branch_nodes = detail::nodes_with_degree_at_least(cfg, 3);
  if (branch_nodes.empty()) {
    out.kind = ClassKind::A_prime;
    out.rank = n;
    out.witnesses = detail::labels_of(cfg, detail::path_order(cfg));
    return out;
  }
  if (branch_nodes.size() != 1 || cfg.degree(branch_nodes[0]) != 3) return out;
  auto br = detail::path_branches(cfg, branch_nodes[0]);
  if (!br) return out;
  const std::size_t c = (*br)[0].size(), b = (*br)[1].size(), a = (*br)[2].size();
  if (a == 1 && b == 1) {
    out.kind = ClassKind::D_prime;
  } else if (a == 1 && b == 2 && c >= 2 && c <= 4) {
    out.kind = ClassKind::E_prime;
  } else {
    return out;
  }
  out.rank = n;
  out.witnesses = detail::labels_of(cfg, detail::star_order(branch_nodes[0], *br));
  return out;
}

/// Extended-Dynkin (Kodaira star) shape, with the fibre multiplicities
/// taken from the radical of the all-(-2) version of the shape.
inline ConfigClass classify_star_fiber(const Configuration& cfg) {
  detail::require_rational_tree(cfg, "classify_star_fiber");
  ConfigClass out;
  const std::size_t n = cfg.size();
  auto deg3 = detail::nodes_with_degree_at_least(cfg, 3);
  std::vector<std::size_t> order;
  if (deg3.size() == 1 && cfg.degree(deg3[0]) == 4 && n == 5) {
    auto br = detail::path_branches(cfg, deg3[0]);
    out.star = StarType::I_n_star;
    out.star_index = 0;
    order = detail::star_order(deg3[0], *br);
  } else if (deg3.size() == 1 && cfg.degree(deg3[0]) == 3) {
    auto br = detail::path_branches(cfg, deg3[0]);
    if (!br) return out;
    const std::size_t c = (*br)[0].size(), b = (*br)[1].size(), a = (*br)[2].size();
    if (a == 2 && b == 2 && c == 2) {
      out.star = StarType::IV_star;
    } else if (a == 1 && b == 3 && c == 3) {
      out.star = StarType::III_star;
    } else if (a == 1 && b == 2 && c == 5) {
      out.star = StarType::II_star;
    } else {
      return out;
    }
    order = detail::star_order(deg3[0], *br);
  } else if (deg3.size() == 2 && cfg.degree(deg3[0]) == 3 && cfg.degree(deg3[1]) == 3) {
    auto leaves_of = [&](std::size_t v) {
      std::vector<std::size_t> l;
      for (auto w : cfg.neighbors(v))
        if (cfg.degree(w) == 1) l.push_back(w);
      return l;
    };
    auto lu = leaves_of(deg3[0]), lv = leaves_of(deg3[1]);
    if (lu.size() != 2 || lv.size() != 2) return out;
    // Walk the spine from deg3[0] to deg3[1].
    std::vector<std::size_t> spine{deg3[0]};
    std::size_t prev = n;
    while (spine.back() != deg3[1]) {
      std::size_t cur = spine.back(), next = n;
      for (auto w : cfg.neighbors(cur))
        if (w != prev && cfg.degree(w) != 1) next = w;
      if (next == n) return out;
      prev = cur;
      spine.push_back(next);
    }
    out.star = StarType::I_n_star;
    out.star_index = static_cast<int>(spine.size()) - 1;
    order = lu;
    order.insert(order.end(), spine.begin(), spine.end());
    order.insert(order.end(), lv.begin(), lv.end());
  } else {
    return out;
  }

  // Radical of the same shape with every weight -2, in canonical order.
  auto shape = gram_matrix(cfg);
  for (std::size_t i = 0; i < n; ++i) shape.entries(i, i) = -2;
  auto def = definiteness(shape);
  if (def.kind != DefinitenessKind::negative_semidefinite_degenerate || def.kernel.size() != 1)
    throw std::logic_error("classify_star_fiber: extended Dynkin shape without a one-dimensional radical");
  out.kind = ClassKind::star_fiber;
  out.multiplicities = def.kernel[0];
  out.primed = std::any_of(cfg.curves().begin(), cfg.curves().end(), [](const Curve& c) { return c.self_int != -2; });
  out.witnesses = detail::labels_of(cfg, order);
  return out;
}

/// Visits every connected induced subset of `allowed` vertices exactly
/// once (extension-set enumeration). Subsets are passed as sorted index
/// lists.
inline void for_each_connected_subset(const Configuration& cfg, const std::vector<char>& allowed,
                                      std::size_t max_size,
                                      const std::function<void(const std::vector<std::size_t>&)>& visit) {
  const std::size_t n = cfg.size();
  std::vector<std::size_t> sub;
  std::vector<char> in_sub(n, 0);
  std::function<void(std::size_t, std::vector<std::size_t>)> extend = [&](std::size_t root,
                                                                          std::vector<std::size_t> ext) {
    auto sorted = sub;
    std::sort(sorted.begin(), sorted.end());
    visit(sorted);
    if (sub.size() >= max_size) return;
    while (!ext.empty()) {
      std::size_t w = ext.back();
      ext.pop_back();
      std::vector<std::size_t> next_ext = ext;
      for (auto u : cfg.neighbors(w)) {
        if (u <= root || !allowed[u] || in_sub[u]) continue;
        if (std::find(next_ext.begin(), next_ext.end(), u) != next_ext.end()) continue;
        bool near_sub = false;
        for (auto s : sub)
          if (cfg.multiplicity(s, u)) near_sub = true;
        if (!near_sub) next_ext.push_back(u);
      }
      sub.push_back(w);
      in_sub[w] = 1;
      extend(root, next_ext);
      in_sub[w] = 0;
      sub.pop_back();
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (!allowed[v]) continue;
    std::vector<std::size_t> ext;
    for (auto u : cfg.neighbors(v))
      if (u > v && allowed[u]) ext.push_back(u);
    sub = {v};
    in_sub[v] = 1;
    extend(v, ext);
    in_sub[v] = 0;
  }
}

struct EllipticSubfiber {
  std::vector<std::string> labels;
  std::string type;
  QDivisor multiplicities;
};

/// Searches connected sets of (-2)-curves (C^2 = -2, K.C = 0) for one whose
/// intersection form is negative semidefinite with a positive integral
/// radical vector. Smallest sets first, then lexicographic in curve order.
inline std::optional<EllipticSubfiber> detect_elliptic_subfiber(const Configuration& cfg) {
  std::vector<char> allowed(cfg.size(), 0);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const auto& c = cfg.curve(i);
    allowed[i] = c.self_int == -2 && c.k_dot().is_zero();
  }
  std::vector<std::vector<std::size_t>> subsets;
  for_each_connected_subset(cfg, allowed, cfg.size(), [&](const auto& s) { subsets.push_back(s); });
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& s : subsets) {
    auto sub = cfg.sub(s);
    if (is_negative_definite(sub)) continue;
    auto def = definiteness(sub);
    if (def.kind != DefinitenessKind::negative_semidefinite_degenerate || def.kernel.size() != 1) continue;
    const auto& k = def.kernel[0];
    if (k.coeffs().size() != s.size()) continue;
    bool integral_positive = std::all_of(k.coeffs().begin(), k.coeffs().end(), [](const auto& kv) {
      return kv.second.sign() > 0 && kv.second.is_integer();
    });
    if (!integral_positive) continue;
    EllipticSubfiber out;
    out.labels = detail::labels_of(cfg, s);
    out.multiplicities = k;
    if (is_rational_tree(sub)) {
      out.type = classify_star_fiber(sub).name();
    } else if (sub.edges().size() == sub.size() &&
               std::all_of(sub.edges().begin(), sub.edges().end(), [](const Edge& e) { return e.multiplicity == 1; })) {
      out.type = "I_" + std::to_string(sub.size());
    } else {
      out.type = "other";
    }
    return out;
  }
  return std::nullopt;
}

/// True if some (-2)-curve meets at least four other (-2)-curves, i.e. the
/// (-2)-curves of a tree support a divisor of type I_0*.
inline bool minus_two_curves_support_i0_star(const Configuration& cfg) {
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (cfg.curve(i).self_int != -2) continue;
    int count = 0;
    for (auto w : cfg.neighbors(i))
      if (cfg.curve(w).self_int == -2) ++count;
    if (count >= 4) return true;
  }
  return false;
}

/// A subset of min(9, #cfg - 1) curves with negative definite intersection
/// matrix. Tries single-node removals (highest degree first) and falls back
/// to all subsets of that size in lexicographic order.
inline std::optional<std::vector<std::string>> find_negative_definite_subgraph(const Configuration& cfg) {
  detail::require_rational_tree(cfg, "find_negative_definite_subgraph");
  if (minus_two_curves_support_i0_star(cfg))
    throw HypothesisViolation("find_negative_definite_subgraph: (-2)-curves support a divisor of type I_0*");
  const std::size_t n = cfg.size();
  const std::size_t r = std::min<std::size_t>(9, n - 1);
  auto check = [&](const std::vector<std::size_t>& idx) {
    return idx.empty() || is_negative_definite(cfg.sub(idx));
  };
  if (r + 1 == n) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return cfg.degree(a) > cfg.degree(b); });
    for (auto drop : order) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n; ++i)
        if (i != drop) idx.push_back(i);
      if (check(idx)) return detail::labels_of(cfg, idx);
    }
    return std::nullopt;
  }
  std::vector<std::size_t> comb(r);
  for (std::size_t i = 0; i < r; ++i) comb[i] = i;
  for (;;) {
    if (check(comb)) return detail::labels_of(cfg, comb);
    std::size_t i = r;
    while (i > 0 && comb[i - 1] == n - r + i - 1) --i;
    if (i == 0) return std::nullopt;
    ++comb[i - 1];
    for (std::size_t j = i; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
}

}  // namespace surflat
