#pragma once

// Scalar formulas: Riemann-Roch and Noether bookkeeping, Euler
// characteristics of restrictions, multiple-fibre arithmetic for elliptic
// fibrations, and the nef inequalities on Hirzebruch surfaces.
//
// Everything here works on intersection numbers supplied by the caller.

#include "surflat/rational.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surflat {

struct SurfaceContext {
  Rational chi = 1;  // chi(O_X)
  std::optional<int> q;
  std::optional<int> pg;
  std::optional<Rational> k_sq;
  std::optional<int> kappa;

  /// chi = 1 - q + p_g whenever both q and p_g are known.
  void validate() const {
    if (q && pg && chi != Rational(1 - *q + *pg))
      throw std::invalid_argument("surface context: chi(O) must equal 1 - q + p_g");
    if (q && *q < 0) throw std::invalid_argument("surface context: negative irregularity");
    if (pg && *pg < 0) throw std::invalid_argument("surface context: negative geometric genus");
  }
};

/// chi(O_X(M)) = chi(O_X) + (M^2 - M.K)/2.
inline Rational riemann_roch_chi(const Rational& m_sq, const Rational& m_dot_k, const SurfaceContext& ctx) {
  return ctx.chi + (m_sq - m_dot_k) / 2;
}

/// chi(O_C(M|C)) = C.M - C.(K + C)/2.
inline Rational chi_restriction(const Rational& c_dot_m, const Rational& c_dot_k_plus_c) {
  return c_dot_m - c_dot_k_plus_c / 2;
}

/// b_2 = c_2 - 2 + 4q with c_2 = 12 chi - K^2 (Noether), an upper bound for
/// the Picard number.
inline long noether_picard_bound(const SurfaceContext& ctx) {
  if (!ctx.q || !ctx.k_sq) throw std::invalid_argument("noether_picard_bound: needs q and K^2");
  Rational b2 = Rational(12) * ctx.chi - *ctx.k_sq - 2 + Rational(4 * *ctx.q);
  if (!b2.is_integer()) throw std::invalid_argument("noether_picard_bound: non-integral b_2 " + b2.str());
  return static_cast<long>(b2.to_int64());
}

/// (1/2)(K + D).D + chi(O_X).
inline Rational remark_h0(const Rational& k_plus_d_dot_d, const SurfaceContext& ctx) {
  return k_plus_d_dot_d / 2 + ctx.chi;
}

/// Coefficient of a fibre in K for an elliptic fibration over P^1 with
/// multiple fibres of the given multiplicities and chi(O) = 1:
/// -1 + sum (1 - 1/m_i).
inline Rational canonical_fiber_coefficient(const std::vector<int>& multiplicities) {
  Rational c = -1;
  for (int m : multiplicities) {
    if (m < 1) throw std::invalid_argument("canonical_fiber_coefficient: multiplicity must be positive");
    c += Rational(1) - Rational(1, m);
  }
  return c;
}

/// Coprime multiplicities, as forced on two multiple fibres of a simply
/// connected elliptic surface.
inline bool multiplicity_pair_admissible(int m1, int m2) { return m1 >= 2 && m2 >= 2 && std::gcd(m1, m2) == 1; }

struct MultiplicitySolution {
  int m1;
  int m2;
  long k;
  friend bool operator==(const MultiplicitySolution&, const MultiplicitySolution&) = default;
};

struct MultiplicitySearch {
  int range = 100;
  std::vector<MultiplicitySolution> solutions;
  [[nodiscard]] bool unique() const { return solutions.size() == 1; }
};

/// All coprime 2 <= m1 < m2 <= range and integers k with
/// m1 m2 = k (m1 m2 - m1 - m2) and m1 m2 | k. If `k_filter` is given only
/// that k is accepted.
inline MultiplicitySearch solve_multiplicity(std::optional<long> k_filter = std::nullopt, int range = 100) {
  MultiplicitySearch out;
  out.range = range;
  for (int m1 = 2; m1 <= range; ++m1)
    for (int m2 = m1 + 1; m2 <= range; ++m2) {
      if (!multiplicity_pair_admissible(m1, m2)) continue;
      const long prod = long(m1) * m2;
      const long defect = prod - m1 - m2;
      if (defect <= 0 || prod % defect != 0) continue;
      const long k = prod / defect;
      if (k % prod != 0) continue;
      if (k_filter && *k_filter != k) continue;
      out.solutions.push_back({m1, m2, k});
    }
  return out;
}

/// A horizontal component of a divisor on F_d: its coefficient and its
/// intersections with a fibre F and with the negative section C_1.
struct HorizontalComponent {
  Rational c;
  long dot_f = 0;
  long dot_c1 = 0;
};

enum class HirzebruchCase { i, ii, iii, not_a_tree };

inline const char* to_string(HirzebruchCase c) {
  switch (c) {
    case HirzebruchCase::i: return "i";
    case HirzebruchCase::ii: return "ii";
    case HirzebruchCase::iii: return "iii";
    case HirzebruchCase::not_a_tree: return "not_a_tree";
  }
  return "?";
}

struct HirzebruchReport {
  HirzebruchCase shape = HirzebruchCase::i;
  Rational k_plus_l_dot_f;   // (K + L).F
  Rational k_plus_l_dot_c1;  // (K + L).C_1
  bool fibre_inequality = false;    // sum c_i (C_i.F) >= 2
  bool section_inequality = false;  // sum f_j >= 2 + (c_1 - 1) d - sum_{i>=2} c_i (C_i.C_1)
  bool nef_inequalities() const { return fibre_inequality && section_inequality; }
  /// Class of the round-up in the basis {C_1, F}.
  Rational roundup_c1;
  Rational roundup_f;
  /// Round-up minus -K = 2 C_1 + (d + 2) F is effective.
  bool dominates_minus_k = false;
  /// The nef inequalities cannot hold for this data.
  bool contradiction = false;
};

/// Evaluates the nef conditions on K + L for L = sum c_i C_i + sum f_j F_j
/// on F_d, where horizontal[0] is the negative section C_1 (C_1.F = 1,
/// C_1^2 = -d). Effectivity of a class a C_1 + b F is a >= 0 and b >= 0.
inline HirzebruchReport hirzebruch_check(long d, const std::vector<HorizontalComponent>& horizontal,
                                         const std::vector<Rational>& fibers) {
  if (d < 1) throw std::invalid_argument("hirzebruch_check: degree must be >= 1");
  if (horizontal.empty()) throw std::invalid_argument("hirzebruch_check: the negative section must be listed first");
  if (horizontal[0].dot_f != 1 || horizontal[0].dot_c1 != -d)
    throw std::invalid_argument("hirzebruch_check: first component must be C_1 with C_1.F = 1, C_1^2 = -d");
  for (const auto& h : horizontal) {
    if (h.dot_f <= 0) throw std::invalid_argument("hirzebruch_check: horizontal component with C.F <= 0");
    if (h.c.sign() <= 0) throw std::invalid_argument("hirzebruch_check: coefficients must be positive");
  }
  for (std::size_t i = 1; i < horizontal.size(); ++i)
    if (horizontal[i].dot_c1 < 0) throw std::invalid_argument("hirzebruch_check: C_i.C_1 < 0 for i >= 2");
  for (const auto& f : fibers)
    if (f.sign() <= 0) throw std::invalid_argument("hirzebruch_check: fibre coefficients must be positive");

  HirzebruchReport r;
  const std::size_t k = horizontal.size();
  if (k == 1)
    r.shape = HirzebruchCase::i;
  else if (fibers.size() == 1)
    r.shape = HirzebruchCase::ii;
  else if (fibers.empty())
    r.shape = HirzebruchCase::iii;
  else
    r.shape = HirzebruchCase::not_a_tree;

  Rational sum_cf, sum_cc1, sum_f;
  for (const auto& h : horizontal) sum_cf += h.c * Rational(h.dot_f);
  for (std::size_t i = 1; i < k; ++i) sum_cc1 += horizontal[i].c * Rational(horizontal[i].dot_c1);
  for (const auto& f : fibers) sum_f += f;
  const Rational c1 = horizontal[0].c;
  r.k_plus_l_dot_f = Rational(-2) + sum_cf;
  r.k_plus_l_dot_c1 = Rational(d - 2) - Rational(d) * c1 + sum_cc1 + sum_f;
  r.fibre_inequality = sum_cf >= 2;
  r.section_inequality = sum_f >= Rational(2) + (c1 - 1) * Rational(d) - sum_cc1;
  r.contradiction = !r.nef_inequalities();

  // C_i ~ a C_1 + b F with a = C_i.F and b = C_i.C_1 + d a.
  for (const auto& h : horizontal) {
    const Rational up = h.c.ceil();
    r.roundup_c1 += up * Rational(h.dot_f);
    r.roundup_f += up * Rational(h.dot_c1 + d * h.dot_f);
  }
  for (const auto& f : fibers) r.roundup_f += f.ceil();
  r.dominates_minus_k = r.roundup_c1 >= 2 && r.roundup_f >= Rational(d + 2);
  return r;
}

}  // namespace surflat
