#include "surflat/tree_enum.hpp"
#include "surflat/zariski.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace surflat;

namespace {

template <class Visit>
void for_each_tree(std::size_t max_n, const std::vector<int>& weights, Visit&& visit) {
  TreeEnumerator e(weights);
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const auto& shape : e.shapes(n))
      e.for_each_weighting(shape, [&](const std::vector<int>& w) { visit(make_tree_configuration(shape, w)); });
}

// Checks the defining properties of a decomposition directly.
void expect_zariski_invariants(const Configuration& cfg, const QDivisor& d, const ZariskiDecomposition& z) {
  EXPECT_EQ(z.positive + z.negative, d);
  for (const auto& [l, c] : z.negative.coeffs()) EXPECT_GT(c, 0) << l;
  for (const auto& [l, c] : z.positive.coeffs()) EXPECT_GT(c, 0) << l;
  EXPECT_TRUE(is_nef(cfg, z.positive));
  for (const auto& l : z.negative_support) EXPECT_TRUE(intersect(cfg, z.positive, QDivisor{{l, 1}}).is_zero());
  EXPECT_TRUE(intersect(cfg, z.positive, z.negative).is_zero());
  std::vector<std::size_t> s;
  for (const auto& l : z.negative_support) s.push_back(cfg.index_of(l));
  if (!s.empty()) EXPECT_TRUE(is_negative_definite(gram_matrix(cfg).entries.principal(s)));
  std::vector<std::string> n_support;
  for (const auto& c : cfg.curves())
    if (!z.negative.coeff(c.label).is_zero()) n_support.push_back(c.label);
  EXPECT_EQ(n_support, z.negative_support);
}

void expect_matches_oracle(const Configuration& cfg, const QDivisor& d) {
  auto z = zariski_decompose(cfg, d);
  const auto g = gram_matrix(cfg).entries;
  const std::size_t n = cfg.size();
  oracle::QMatrix q(n, std::vector<oracle::Q>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = g(i, j).to_big();
  std::vector<oracle::Q> dv;
  for (const auto& c : cfg.curves()) dv.push_back(d.coeff(c.label).to_big());
  auto o = oracle::zariski_by_subsets(q, dv);
  ASSERT_EQ(o.valid_subsets, 1) << canonical_encoding(cfg);
  for (std::size_t i = 0; i < n; ++i) {
    ASSERT_EQ(z.positive.coeff(cfg.curve(i).label), Rational(o.p[i])) << canonical_encoding(cfg) << " curve " << i;
    const bool in_s = std::find(z.negative_support.begin(), z.negative_support.end(), cfg.curve(i).label) !=
                      z.negative_support.end();
    ASSERT_EQ(in_s, o.in_negative[i] != 0);
  }
}

}  // namespace

TEST(Zariski, NineCurveTree) {
  auto cfg = fixtures::nine_curve_tree();
  auto z = zariski_decompose(cfg, QDivisor::reduced(cfg));
  const std::vector<Rational> expected{1,
                                       Rational(4, 5),
                                       Rational(3, 5),
                                       Rational(2, 5),
                                       Rational(1, 5),
                                       Rational(5, 7),
                                       Rational(3, 7),
                                       Rational(1, 7),
                                       Rational(1, 2)};
  EXPECT_EQ(z.positive.to_vector(cfg), expected);
  EXPECT_EQ(self_square(cfg, z.positive), Rational(1, 70));
  EXPECT_EQ(intersect(cfg, z.positive, QDivisor{{"D0", 1}}), Rational(1, 70));
  EXPECT_TRUE(is_big_nef(cfg, z.positive));
  EXPECT_EQ(z.negative_support, (std::vector<std::string>{"D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8"}));
  expect_zariski_invariants(cfg, QDivisor::reduced(cfg), z);
}

TEST(Zariski, Trivial) {
  auto chain = fixtures::chain(3);
  auto z = zariski_decompose(chain, QDivisor::reduced(chain));
  EXPECT_TRUE(z.positive.empty());
  EXPECT_EQ(z.negative, QDivisor::reduced(chain));
  Configuration pos({Curve::with_k("H", 2, 0)}, {});
  auto zh = zariski_decompose(pos, QDivisor{{"H", 3}});
  EXPECT_EQ(zh.positive, (QDivisor{{"H", 3}}));
  EXPECT_EQ(zh.iterations, 0);
  EXPECT_THROW(zariski_decompose(chain, QDivisor{{"C0", -1}}), ConfigError);
}

TEST(Zariski, PartialSupport) {
  // The divisor ignores C2; only C0, C1 take part.
  auto cfg = fixtures::graph("C", {1, -2, -5}, {{0, 1}, {1, 2}});
  QDivisor d{{"C0", 1}, {"C1", 1}};
  auto z = zariski_decompose(cfg, d);
  expect_zariski_invariants(cfg, d, z);
  EXPECT_EQ(z.positive, (QDivisor{{"C0", 1}, {"C1", Rational(1, 2)}}));
}

// All weighted trees with at most six curves and weights -2, -3, -4 against
// the subset oracle, for the reduced divisor.
TEST(ZariskiOracle, ReducedDivisorOnSmallTrees) {
  int count = 0;
  for_each_tree(6, {-2, -3, -4}, [&](const Configuration& cfg) {
    ++count;
    expect_matches_oracle(cfg, QDivisor::reduced(cfg));
  });
  EXPECT_GT(count, 1000);
}

// Random effective divisors on trees with some positive weights, so the
// positive part is often nonzero and partially supported.
TEST(ZariskiOracle, RandomDivisors) {
  std::mt19937 rng(11);
  TreeEnumerator e({2, 1, 0, -1, -2, -3});
  int nonzero = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    auto shapes = e.shapes(n);
    for (int iter = 0; iter < 150; ++iter) {
      const auto& shape = shapes[rng() % shapes.size()];
      std::vector<int> w(n);
      for (auto& x : w) x = -3 + static_cast<int>(rng() % 6);
      auto cfg = make_tree_configuration(shape, w);
      QDivisor d;
      for (const auto& c : cfg.curves())
        if (rng() % 5 != 0) d.set(c.label, Rational(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3)));
      if (d.empty()) continue;
      expect_matches_oracle(cfg, d);
      auto z = zariski_decompose(cfg, d);
      expect_zariski_invariants(cfg, d, z);
      nonzero += !z.positive.empty();
    }
  }
  EXPECT_GT(nonzero, 50);
}

TEST(ChainForcing, EndContact) {
  for (int m = 1; m <= 6; ++m) {
    // Chain C1..Cm hanging off C0 at Cm; C0 has a positive square.
    std::vector<long> w(static_cast<std::size_t>(m) + 1, -2);
    w[0] = 4;
    std::vector<std::pair<int, int>> e{{0, m}};
    for (int i = 1; i < m; ++i) e.push_back({i, i + 1});
    auto cfg = fixtures::graph("C", w, e);
    std::vector<std::string> chain;
    for (int i = 1; i <= m; ++i) chain.push_back("C" + std::to_string(i));
    auto f = chain_forcing(cfg, chain, "C0");
    EXPECT_EQ(f.verdict, ChainVerdict::forced_into_N);
    EXPECT_TRUE(f.end_contact);
    for (int i = 1; i <= m; ++i) EXPECT_EQ(f.bounds.coeff(chain[static_cast<std::size_t>(i) - 1]), Rational(i, m + 1));
    auto z = zariski_decompose(cfg, QDivisor::reduced(cfg));
    for (const auto& l : chain) EXPECT_GT(z.negative.coeff(l), 0);
    // Reversed order: contact at the first element counts as an end too.
    std::vector<std::string> rev(chain.rbegin(), chain.rend());
    EXPECT_EQ(chain_forcing(cfg, rev, "C0").verdict, ChainVerdict::forced_into_N);
  }
}

TEST(ChainForcing, InteriorContact) {
  // Chain C1-C2-C3-C4, contact C3 meets C0.
  auto make = [](long w3) {
    return fixtures::graph("C", {4, -2, -2, w3, -2}, {{1, 2}, {2, 3}, {3, 4}, {0, 3}});
  };
  const std::vector<std::string> chain{"C1", "C2", "C3", "C4"};
  auto heavy = chain_forcing(make(-3), chain, "C0");
  EXPECT_EQ(heavy.verdict, ChainVerdict::forced_into_N);
  EXPECT_FALSE(heavy.end_contact);
  EXPECT_EQ(heavy.contact, "C3");
  EXPECT_EQ(heavy.bounds, (QDivisor{{"C1", Rational(2, 11)}, {"C2", Rational(4, 11)}, {"C3", Rational(6, 11)},
                                    {"C4", Rational(3, 11)}}));
  EXPECT_EQ(chain_forcing(make(-5), chain, "C0").verdict, ChainVerdict::forced_into_N);
  auto light = chain_forcing(make(-2), chain, "C0");
  EXPECT_EQ(light.verdict, ChainVerdict::no_conclusion);
  EXPECT_TRUE(light.bounds.empty());
}

TEST(ChainForcing, Errors) {
  auto cfg = fixtures::graph("C", {4, -2, -2, -2}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_THROW(chain_forcing(cfg, {"C1", "C2", "C3"}, "C0"), ConfigError);  // meets the rest twice
  auto tree = fixtures::graph("C", {4, -2, -2, -2}, {{0, 1}, {1, 2}, {1, 3}});
  EXPECT_THROW(chain_forcing(tree, {"C2", "C3"}, "C1"), ConfigError);  // not a chain
  EXPECT_THROW(chain_forcing(tree, {"C2", "C1"}, "C3"), ConfigError);  // wrong attachment
  EXPECT_THROW(chain_forcing(tree, {}, "C0"), ConfigError);
  EXPECT_THROW(chain_forcing(tree, {"C2", "C2"}, "C1"), ConfigError);
}

// On every tree of at most seven curves, each leg segment that the
// criterion forces lies in the negative part of the reduced divisor.
TEST(ChainForcingProperty, ForcedLegsLieInNegativePart) {
  int forced = 0;
  for_each_tree(7, {1, -2, -3}, [&](const Configuration& cfg) {
    auto z = zariski_decompose(cfg, QDivisor::reduced(cfg));
    for (std::size_t leaf = 0; leaf < cfg.size(); ++leaf) {
      if (cfg.degree(leaf) != 1) continue;
      std::vector<std::size_t> walk{leaf};
      std::size_t prev = cfg.size();
      while (true) {
        std::size_t next = cfg.size();
        for (auto w : cfg.neighbors(walk.back()))
          if (w != prev) next = w;
        if (next == cfg.size()) break;
        prev = walk.back();
        walk.push_back(next);
        if (cfg.degree(next) != 2) break;
      }
      for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
        std::vector<std::string> chain;
        for (std::size_t i = 0; i <= k; ++i) chain.push_back(cfg.curve(walk[i]).label);
        auto f = chain_forcing(cfg, chain, cfg.curve(walk[k + 1]).label);
        if (f.verdict != ChainVerdict::forced_into_N) continue;
        ++forced;
        const Rational p_att = z.positive.coeff(cfg.curve(walk[k + 1]).label);
        for (const auto& l : chain) {
          ASSERT_GT(z.negative.coeff(l), 0) << canonical_encoding(cfg) << " " << l;
          ASSERT_LE(z.positive.coeff(l), f.bounds.coeff(l) * p_att);
        }
      }
    }
  });
  EXPECT_GT(forced, 1000);
}

TEST(CoefficientBounds, IdentityRelaxationGivesExactCoefficients) {
  auto cfg = fixtures::nine_curve_tree();
  auto d = QDivisor::reduced(cfg);
  auto z = zariski_decompose(cfg, d);
  std::map<std::string, Rational> same;
  for (int i = 5; i <= 7; ++i) same["D" + std::to_string(i)] = cfg.curve(static_cast<std::size_t>(i)).self_int;
  auto b = coefficient_upper_bounds(cfg, d, same);
  for (const auto& [l, v] : b) EXPECT_EQ(v, z.positive.coeff(l));
  // Raising D7 to -2 gives the chain bounds 3/4, 1/2, 1/4.
  auto relaxed = coefficient_upper_bounds(cfg, d, {{"D5", -2}, {"D6", -2}, {"D7", -2}});
  EXPECT_EQ(relaxed.at("D5"), Rational(3, 4));
  EXPECT_EQ(relaxed.at("D6"), Rational(1, 2));
  EXPECT_EQ(relaxed.at("D7"), Rational(1, 4));
  EXPECT_THROW(coefficient_upper_bounds(cfg, d, {{"D7", -1}}), HypothesisViolation);
  EXPECT_THROW(coefficient_upper_bounds(cfg, d, {{"D6", -3}}), HypothesisViolation);
}

// b_i >= p_i whenever the relaxed block sits inside the negative part.
TEST(CoefficientBoundsProperty, BoundsDominate) {
  int checked = 0;
  for_each_tree(6, {2, -2, -3, -4}, [&](const Configuration& cfg) {
    auto d = QDivisor::reduced(cfg);
    auto z = zariski_decompose(cfg, d);
    if (z.positive.empty() || z.negative_support.empty()) return;
    std::map<std::string, Rational> w;
    for (const auto& l : z.negative_support) w[l] = -2;
    std::vector<std::size_t> block;
    for (const auto& l : z.negative_support) block.push_back(cfg.index_of(l));
    auto g = gram_matrix(cfg).entries.principal(block);
    for (std::size_t a = 0; a < block.size(); ++a) g(a, a) = -2;
    if (!is_negative_definite(g)) return;
    auto b = coefficient_upper_bounds(cfg, d, w);
    for (const auto& [l, v] : b) ASSERT_GE(v, z.positive.coeff(l)) << canonical_encoding(cfg) << " " << l;
    ++checked;
  });
  EXPECT_GT(checked, 100);
}
