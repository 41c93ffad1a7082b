#include "surflat/census.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace surflat;

namespace {

CensusParams params(int max_components, std::vector<int> weights, int jobs = 1) {
  CensusParams p;
  p.max_components = max_components;
  p.weight_set = std::move(weights);
  p.jobs = jobs;
  return p;
}

template <class Visit>
void for_each_tree(std::size_t max_n, const std::vector<int>& weights, Visit&& visit) {
  TreeEnumerator e(weights);
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const auto& shape : e.shapes(n))
      e.for_each_weighting(shape, [&](const std::vector<int>& w) { visit(make_tree_configuration(shape, w)); });
}

QDivisor sum_of(const std::vector<std::string>& labels) {
  QDivisor d;
  for (const auto& l : labels) d.set(l, 1);
  return d;
}

bool is_path(const Configuration& cfg, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
    auto n = cfg.neighbors(cfg.index_of(labels[i]));
    if (std::find(n.begin(), n.end(), cfg.index_of(labels[i + 1])) == n.end()) return false;
  }
  return std::set<std::string>(labels.begin(), labels.end()).size() == labels.size();
}

}  // namespace

TEST(Params, Validation) {
  EXPECT_NO_THROW(CensusParams{}.validate());
  EXPECT_EQ(CensusParams{}.weights(), (std::vector<int>{-2, -3, -4, -5}));
  EXPECT_EQ(params(3, {-3, -2, -3}).weights(), (std::vector<int>{-2, -3}));
  EXPECT_THROW(params(0, {-2}).validate(), std::invalid_argument);
  EXPECT_THROW(params(13, {-2}).validate(), std::invalid_argument);
  EXPECT_THROW(params(3, {-1}).validate(), std::invalid_argument);
  EXPECT_THROW(params(3, {}).validate(), std::invalid_argument);
  EXPECT_THROW(params(3, {-2}, 0).validate(), std::invalid_argument);
  CensusParams p;
  p.min_weight = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Trichotomy, B1Tree) {
  auto v = trichotomy_classify(fixtures::b1_family());
  EXPECT_EQ(v.kind, VerdictKind::case_B1);
  EXPECT_EQ(v.positive_square, Rational(1, 70));
  ASSERT_TRUE(v.star);
  EXPECT_EQ(v.star->type, "III*'");
  EXPECT_EQ(v.star->adjoint, 0);
  EXPECT_EQ(v.star->labels.size(), 8u);
  EXPECT_TRUE(surflat::detail::is_b1_configuration(fixtures::b1_family()));
  EXPECT_FALSE(surflat::detail::is_b1_configuration(fixtures::b1_family(2, 3)));
  EXPECT_EQ(trichotomy_classify(fixtures::nine_curve_tree()).kind, VerdictKind::case_B1);
}

TEST(Trichotomy, CaseA) {
  auto cfg = fixtures::graph("C", {-2, -2, -2, -2, -3, -3}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  auto v = trichotomy_classify(cfg);
  EXPECT_EQ(v.kind, VerdictKind::case_A);
  EXPECT_EQ(v.positive_square, Rational(1, 6));
  EXPECT_EQ(v.chain, (std::vector<std::string>{"C0"}));
  EXPECT_EQ(v.chain_pairing, 3);
}

TEST(Trichotomy, CaseBWithPrimedStar) {
  auto cfg = fixtures::graph("C", {-2, -2, -2, -2, -2, -2, -2, -3},
                             {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {0, 6}, {6, 7}});
  auto v = trichotomy_classify(cfg);
  EXPECT_EQ(v.kind, VerdictKind::case_B);
  EXPECT_EQ(v.positive_square, Rational(1, 60));
  ASSERT_TRUE(v.star);
  EXPECT_EQ(v.star->type, "IV*'");
  EXPECT_EQ(v.star->adjoint, 0);
}

TEST(Trichotomy, OtherVerdicts) {
  EXPECT_EQ(trichotomy_classify(fixtures::chain(4)).kind, VerdictKind::not_nef_big);
  auto ii = trichotomy_classify(fixtures::star({5, 2, 1}));
  EXPECT_EQ(ii.kind, VerdictKind::excluded_elliptic_subfiber);
  ASSERT_TRUE(ii.elliptic);
  EXPECT_EQ(ii.elliptic->type, "II*");
  EXPECT_FALSE(trichotomy_classify(fixtures::star({5, 2, 1}), TrichotomyOptions{false}).elliptic);
  EXPECT_THROW(trichotomy_classify(fixtures::cycle(4)), ConfigError);
}

// Witnesses recomputed from scratch, and P^2 against the subset oracle on
// the smaller trees.
TEST(TrichotomyProperty, WitnessesAreSound) {
  std::array<int, kVerdictKinds> seen{};
  for_each_tree(8, {-2, -3}, [&](const Configuration& cfg) {
    auto v = trichotomy_classify(cfg);
    ++seen[static_cast<std::size_t>(v.kind)];
    const auto red = QDivisor::reduced(cfg);
    switch (v.kind) {
      case VerdictKind::case_A: {
        ASSERT_TRUE(is_path(cfg, v.chain));
        const Rational pairing = intersect(cfg, red, sum_of(v.chain));
        ASSERT_EQ(pairing, v.chain_pairing);
        ASSERT_GE(pairing, 2);
        break;
      }
      case VerdictKind::case_B:
      case VerdictKind::case_B1: {
        ASSERT_TRUE(v.star);
        std::vector<std::size_t> idx;
        for (const auto& l : v.star->labels) idx.push_back(cfg.index_of(l));
        std::sort(idx.begin(), idx.end());
        ASSERT_EQ(classify_star_fiber(cfg.sub(idx)).kind, ClassKind::star_fiber);
        const auto& c = v.star->divisor;
        ASSERT_EQ(intersect(cfg, c, c) + k_dot(cfg, c), 0);
        for (const auto& [l, m] : c.coeffs()) {
          if (m >= 2) {
            ASSERT_EQ(cfg.curve(cfg.index_of(l)).self_int, -2);
          }
        }
        break;
      }
      case VerdictKind::excluded_elliptic_subfiber:
        ASSERT_TRUE(v.elliptic);
        break;
      case VerdictKind::not_nef_big:
        ASSERT_LE(v.positive_square, 0);
        break;
      case VerdictKind::violation:
        FAIL() << canonical_encoding(cfg);
    }
    if (cfg.size() > 6 || v.kind == VerdictKind::excluded_elliptic_subfiber) return;
    const auto g = gram_matrix(cfg).entries;
    const std::size_t n = cfg.size();
    oracle::QMatrix q(n, std::vector<oracle::Q>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q[i][j] = g(i, j).to_big();
    auto o = oracle::zariski_by_subsets(q, std::vector<oracle::Q>(n, 1));
    oracle::Q p_sq = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p_sq += o.p[i] * q[i][j] * o.p[j];
    ASSERT_EQ(v.positive_square, Rational(p_sq)) << canonical_encoding(cfg);
  });
  for (auto k : {VerdictKind::not_nef_big, VerdictKind::case_A, VerdictKind::case_B,
                 VerdictKind::excluded_elliptic_subfiber})
    EXPECT_GT(seen[static_cast<std::size_t>(k)], 0) << to_string(k);
}

TEST(Census, SmallRunCounts) {
  auto rep = run_census(params(5, {-2, -3, -4}));
  std::size_t expected = 0;
  for (int n = 1; n <= 5; ++n) expected += oracle::weighted_tree_classes(n, {-2, -3, -4}).size();
  EXPECT_EQ(rep.total, expected);
  std::size_t sum = 0;
  for (auto c : rep.counts) sum += c;
  EXPECT_EQ(sum, rep.total);
  std::size_t by_size = 0;
  for (const auto& [n, row] : rep.counts_by_size)
    for (auto c : row) by_size += c;
  EXPECT_EQ(by_size, rep.total);
  EXPECT_TRUE(rep.trichotomy_holds());
  EXPECT_EQ(rep.count(VerdictKind::violation), 0u);
}

TEST(Census, DeterministicAcrossJobs) {
  auto a = run_census(params(9, {-2, -3}, 1));
  auto b = run_census(params(9, {-2, -3}, 2));
  auto c = run_census(params(9, {-2, -3}, 3));
  for (const auto* r : {&b, &c}) {
    EXPECT_EQ(a.total, r->total);
    EXPECT_EQ(a.counts, r->counts);
    EXPECT_EQ(a.counts_by_size, r->counts_by_size);
    ASSERT_EQ(a.b1_hits.size(), r->b1_hits.size());
    for (std::size_t i = 0; i < a.b1_hits.size(); ++i) EXPECT_EQ(a.b1_hits[i].encoding, r->b1_hits[i].encoding);
  }
  EXPECT_FALSE(a.b1_hits.empty());
  EXPECT_TRUE(a.trichotomy_holds());
}

TEST(Census, NineCurveB1Hits) {
  auto rep = run_census(params(9, {-2, -3}));
  EXPECT_TRUE(rep.trichotomy_holds());
  ASSERT_FALSE(rep.b1_hits.empty());
  bool found = false;
  const auto target = canonical_encoding(fixtures::b1_family());
  for (const auto& e : rep.b1_hits) {
    EXPECT_EQ(e.verdict.kind, VerdictKind::case_B1);
    EXPECT_TRUE(surflat::detail::is_b1_configuration(e.configuration));
    found = found || e.encoding == target;
  }
  EXPECT_TRUE(found);
}

TEST(NegativeDefiniteSubgraph, SmallRun) {
  auto rep = verify_subgraph_lemma(params(8, {-2, -3}));
  EXPECT_TRUE(rep.failures.empty());
  EXPECT_EQ(rep.checked + rep.skipped, rep.total);
  EXPECT_GT(rep.skipped, 0u);
  EXPECT_THROW(verify_subgraph_lemma(params(11, {-2})), std::invalid_argument);
}

TEST(DetSign, Examples) {
  using surflat::detail::det_sign_check;
  using surflat::detail::DetSignOutcome;
  EXPECT_EQ(det_sign_check(fixtures::b1_family(2, 2)), DetSignOutcome::checked_ok);
  EXPECT_EQ(det_sign_check(fixtures::chain(4)), DetSignOutcome::skipped_definite);
  EXPECT_EQ(det_sign_check(fixtures::i_n_star(1)), DetSignOutcome::skipped_semidefinite);
  // Two disjoint I_0* configurations joined through a (-2)-curve: removing
  // any single curve leaves an elliptic configuration.
  auto twin = fixtures::graph("C", std::vector<long>(11, -2),
                              {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 7}, {6, 8}, {6, 9}, {6, 10}});
  EXPECT_EQ(det_sign_check(twin), DetSignOutcome::skipped_no_complement);
}

TEST(DetSign, SmallRun) {
  auto rep = verify_det_sign(params(8, {-2, -3}));
  EXPECT_TRUE(rep.violations.empty());
  EXPECT_GT(rep.checked, 0u);
  EXPECT_EQ(rep.checked + rep.skipped_definite + rep.skipped_no_definite_complement + rep.skipped_no_positive_square,
            rep.total);
}
