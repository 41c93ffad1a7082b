#pragma once

// Enumeration of weighted trees up to isomorphism.
//
// Unlabelled trees are rooted at their centroid: a unique centroid gives a
// rooted tree whose branches all have fewer than n/2 vertices, two
// adjacent centroids give an unordered pair of rooted halves of size n/2.
// Rooted shapes carry AHU codes, and weightings of a rooted shape are
// generated as multisets over identical child shapes, so every weighted
// tree appears exactly once.

#include "surflat/config.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace surflat {

/// One unlabelled tree, laid out in preorder (parent[0] == npos).
struct TreeShape {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t n = 0;
  std::vector<std::size_t> parent;
  std::string code;
  bool bicentroid = false;
  std::size_t root_a = 0;  // rooted shape ids
  std::size_t root_b = 0;
};

class TreeEnumerator {
 public:
  explicit TreeEnumerator(std::vector<int> weights) : weights_(std::move(weights)) {
    std::sort(weights_.begin(), weights_.end(), std::greater<>());
    weights_.erase(std::unique(weights_.begin(), weights_.end()), weights_.end());
  }

  [[nodiscard]] const std::vector<int>& weights() const { return weights_; }

  /// All unlabelled trees on n vertices in canonical order.
  std::vector<TreeShape> shapes(std::size_t n) {
    build_rooted(n);
    std::vector<TreeShape> out;
    for (auto id : by_size_[n]) {
      bool centroid = std::all_of(rooted_[id].children.begin(), rooted_[id].children.end(),
                                  [&](std::size_t c) { return 2 * rooted_[c].size < n; });
      if (!centroid) continue;
      TreeShape s;
      s.n = n;
      s.root_a = s.root_b = id;
      s.code = "U" + rooted_[id].code;
      layout(id, TreeShape::npos, s.parent);
      out.push_back(std::move(s));
    }
    if (n % 2 == 0 && n > 0) {
      const auto& half = by_size_[n / 2];
      for (std::size_t a = 0; a < half.size(); ++a)
        for (std::size_t b = a; b < half.size(); ++b) {
          TreeShape s;
          s.n = n;
          s.bicentroid = true;
          s.root_a = half[a];
          s.root_b = half[b];
          s.code = "B" + rooted_[half[a]].code + rooted_[half[b]].code;
          layout(half[a], TreeShape::npos, s.parent);
          layout(half[b], 0, s.parent);
          out.push_back(std::move(s));
        }
    }
    return out;
  }

  /// Calls `visit` with the preorder weight vector of every weighting of
  /// `shape`, one per isomorphism class of weighted trees.
  template <class Visit>
  void for_each_weighting(const TreeShape& shape, Visit&& visit) {
    if (!shape.bicentroid) {
      for (const auto& w : weightings(shape.root_a)) visit(w);
      return;
    }
    const auto& wa = weightings(shape.root_a);
    const auto& wb = weightings(shape.root_b);
    std::vector<int> v;
    for (std::size_t i = 0; i < wa.size(); ++i)
      for (std::size_t j = shape.root_a == shape.root_b ? i : 0; j < wb.size(); ++j) {
        v = wa[i];
        v.insert(v.end(), wb[j].begin(), wb[j].end());
        visit(v);
      }
  }

 private:
  struct Rooted {
    std::string code;
    std::size_t size = 1;
    std::vector<std::size_t> children;  // nondecreasing ids
  };

  void build_rooted(std::size_t n) {
    if (by_size_.empty()) {
      by_size_.resize(2);
      rooted_.push_back({"()", 1, {}});
      by_size_[1].push_back(0);
    }
    while (by_size_.size() <= n) {
      const std::size_t k = by_size_.size();
      std::vector<Rooted> fresh;
      std::vector<std::size_t> kids;
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t min_id) {
        if (remaining == 0) {
          std::vector<std::string> codes;
          for (auto c : kids) codes.push_back(rooted_[c].code);
          std::sort(codes.begin(), codes.end());
          std::string code = "(";
          for (const auto& c : codes) code += c;
          code += ")";
          fresh.push_back({code, k, kids});
          return;
        }
        for (std::size_t id = min_id; id < rooted_.size(); ++id) {
          if (rooted_[id].size > remaining) continue;
          kids.push_back(id);
          rec(remaining - rooted_[id].size, id);
          kids.pop_back();
        }
      };
      rec(k - 1, 0);
      std::sort(fresh.begin(), fresh.end(), [](const Rooted& a, const Rooted& b) { return a.code < b.code; });
      by_size_.emplace_back();
      for (auto& r : fresh) {
        // Order children by canonical code so the layout is canonical too.
        std::sort(r.children.begin(), r.children.end(),
                  [&](std::size_t a, std::size_t b) { return rooted_[a].code < rooted_[b].code; });
        by_size_[k].push_back(rooted_.size());
        rooted_.push_back(std::move(r));
      }
    }
  }

  void layout(std::size_t id, std::size_t parent, std::vector<std::size_t>& out) const {
    const std::size_t me = out.size();
    out.push_back(parent);
    for (auto c : rooted_[id].children) layout(c, me, out);
  }

  // Preorder weight vectors for rooted shape `id`.
  const std::vector<std::vector<int>>& weightings(std::size_t id) {
    auto it = memo_.find(id);
    if (it != memo_.end()) return it->second;
    const auto& kids = rooted_[id].children;
    // Group identical children (equal ids are adjacent after sorting by code).
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // (shape id, count)
    for (auto c : kids) {
      if (!groups.empty() && groups.back().first == c)
        ++groups.back().second;
      else
        groups.push_back({c, 1});
    }
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> partial;
    std::function<void(std::size_t)> rec_group;
    std::vector<int> current;
    rec_group = [&](std::size_t g) {
      if (g == groups.size()) {
        out.push_back(current);
        return;
      }
      const auto& options = weightings(groups[g].first);
      const std::size_t count = groups[g].second;
      std::vector<std::size_t> pick(count, 0);
      // Nondecreasing selections of `count` options.
      std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t slot, std::size_t min_opt) {
        if (slot == count) {
          const std::size_t mark = current.size();
          for (auto o : pick) current.insert(current.end(), options[o].begin(), options[o].end());
          rec_group(g + 1);
          current.resize(mark);
          return;
        }
        for (std::size_t o = min_opt; o < options.size(); ++o) {
          pick[slot] = o;
          choose(slot + 1, o);
        }
      };
      choose(0, 0);
    };
    for (int w : weights_) {
      current = {w};
      rec_group(0);
    }
    return memo_.emplace(id, std::move(out)).first->second;
  }

  std::vector<int> weights_;
  std::vector<Rooted> rooted_;
  std::vector<std::vector<std::size_t>> by_size_;
  std::map<std::size_t, std::vector<std::vector<int>>> memo_;
};

/// Tree configuration with curves C0..C{n-1} (genus 0) in preorder.
inline Configuration make_tree_configuration(const TreeShape& shape, const std::vector<int>& weights) {
  std::vector<Curve> curves;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < shape.n; ++i) {
    curves.push_back(Curve::rational("C" + std::to_string(i), weights.at(i)));
    if (shape.parent[i] != TreeShape::npos)
      edges.push_back({"C" + std::to_string(shape.parent[i]), "C" + std::to_string(i), 1});
  }
  return Configuration(std::move(curves), std::move(edges));
}

/// Centroid-rooted AHU code with weights: equal for two weighted trees iff
/// they are isomorphic. Requires a tree.
inline std::string canonical_encoding(const Configuration& cfg) {
  const std::size_t n = cfg.size();
  if (n == 0) return "";
  std::vector<std::size_t> sub(n, 1), order, par(n, n);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto w : cfg.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        par[w] = v;
        stack.push_back(w);
      }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (par[*it] != n) sub[par[*it]] += sub[*it];
  std::vector<std::size_t> centroids;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t biggest = n - sub[v];
    for (auto w : cfg.neighbors(v))
      if (w != par[v]) biggest = std::max(biggest, sub[w]);
    if (2 * biggest <= n) centroids.push_back(v);
  }
  std::function<std::string(std::size_t, std::size_t)> code = [&](std::size_t v, std::size_t from) {
    std::vector<std::string> kids;
    for (auto w : cfg.neighbors(v))
      if (w != from) kids.push_back(code(w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + cfg.curve(v).self_int.str();
    for (const auto& k : kids) s += k;
    return s + ")";
  };
  if (centroids.size() == 1) return "U" + code(centroids[0], n);
  auto a = code(centroids[0], centroids[1]);
  auto b = code(centroids[1], centroids[0]);
  if (b < a) std::swap(a, b);
  return "B" + a + b;
}

}  // namespace surflat
