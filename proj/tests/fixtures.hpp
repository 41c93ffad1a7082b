#pragma once

#include "surflat/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using surflat::Configuration;
using surflat::Curve;
using surflat::Edge;

inline std::string lbl(const char* prefix, int i) { return prefix + std::to_string(i); }

/// Curves prefix0..prefix{n-1}, genus 0, with the given weights and edges.
inline Configuration graph(const char* prefix, const std::vector<long>& weights,
                           const std::vector<std::pair<int, int>>& edges) {
  std::vector<Curve> cs;
  for (std::size_t i = 0; i < weights.size(); ++i)
    cs.push_back(Curve::rational(lbl(prefix, static_cast<int>(i)), weights[i]));
  std::vector<Edge> es;
  for (auto [a, b] : edges) es.push_back({lbl(prefix, a), lbl(prefix, b), 1});
  return Configuration(std::move(cs), std::move(es));
}

inline Configuration chain(int m, long weight = -2, const char* prefix = "C") {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < m; ++i) e.push_back({i, i + 1});
  return graph(prefix, std::vector<long>(static_cast<std::size_t>(m), weight), e);
}

/// D0 meets D1, D5, D8; chains D1..D4 and D5..D7; D7^2 = -3.
inline Configuration nine_curve_tree() {
  return graph("D", {-2, -2, -2, -2, -2, -2, -2, -3, -2},
               {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {5, 6}, {6, 7}, {0, 8}});
}

/// C0 meets C1, C2, C3; chains C2-C4-C6 and C3-C5-C7-C8; C6^2 = -x6,
/// C8^2 = -x8, the rest -2.
inline Configuration b1_family(long x6 = 3, long x8 = 2) {
  return graph("C", {-2, -2, -2, -2, -2, -2, -x6, -2, -x8},
               {{0, 1}, {0, 2}, {0, 3}, {2, 4}, {4, 6}, {3, 5}, {5, 7}, {7, 8}});
}

/// C0 with legs C1 and C2-C4 and a five-chain through C3, which meets
/// C0; C3^2 = -x3. `middle` puts C3 in the middle of the five-chain,
/// otherwise second from an end.
inline Configuration comb_family(long x3, bool middle) {
  std::vector<long> w(9, -2);
  w[3] = -x3;
  if (middle) return graph("C", w, {{0, 1}, {0, 2}, {2, 4}, {0, 3}, {5, 6}, {6, 3}, {3, 7}, {7, 8}});
  return graph("C", w, {{0, 1}, {0, 2}, {2, 4}, {0, 3}, {5, 3}, {3, 6}, {6, 7}, {7, 8}});
}

/// Tree with branches of the given lengths at center 0, all weights -2.
/// Branch b is listed outward from the center.
inline Configuration star(const std::vector<int>& branches, long weight = -2) {
  std::vector<std::pair<int, int>> e;
  int next = 1;
  for (int len : branches) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      e.push_back({prev, next});
      prev = next++;
    }
  }
  return graph("C", std::vector<long>(static_cast<std::size_t>(next), weight), e);
}

/// Extended D_{n+4}: two forks joined by a spine of n + 1 curves.
inline Configuration i_n_star(int n) {
  // Spine 0..n, leaves n+1, n+2 on 0 and n+3, n+4 on n.
  std::vector<std::pair<int, int>> e{{0, n + 1}, {0, n + 2}, {n, n + 3}, {n, n + 4}};
  for (int i = 0; i < n; ++i) e.push_back({i, i + 1});
  return graph("C", std::vector<long>(static_cast<std::size_t>(n + 5), -2), e);
}

inline Configuration cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return graph("C", std::vector<long>(static_cast<std::size_t>(n), -2), e);
}

}  // namespace fixtures
