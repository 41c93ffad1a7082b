#pragma once

// Fraction-exact linear algebra on intersection matrices: determinants,
// linear solves, definiteness with radical extraction, and the
// determinant-sign weight relaxation bound.

#include "surflat/config.hpp"
#include "surflat/matrix.hpp"
#include "surflat/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surflat {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class T>
struct Wide {
  using type = T;
  static T narrow(const type& v) { return v; }
};

template <>
struct Wide<std::int64_t> {
  using type = __int128;
  static std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("integer determinant overflow");
    return static_cast<std::int64_t>(v);
  }
};

}  // namespace detail

/// Bareiss fraction-free elimination with row pivoting. Every intermediate
/// entry is a minor of the input, so integer inputs stay integral.
template <class T>
T determinant(Matrix<T> a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  using W = typename detail::Wide<T>::type;
  const std::size_t n = a.rows();
  if (n == 0) return T(1);
  T prev = T(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == T(0)) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == T(0)) ++p;
      if (p == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        W v = W(a(k, k)) * W(a(i, j)) - W(a(i, k)) * W(a(k, j));
        a(i, j) = detail::Wide<T>::narrow(v / W(prev));
      }
      a(i, k) = T(0);
    }
    prev = a(k, k);
  }
  T det = a(n - 1, n - 1);
  return negate ? T(-det) : det;
}

inline Rational determinant(const GramMatrix& m) { return determinant(m.entries); }

/// Signs of the leading principal minors of -M, all positive, i.e. M is
/// negative definite (Sylvester). Fraction-free, no pivoting: the k-th
/// pivot of the elimination is the k-th leading minor.
template <class T>
bool is_negative_definite(const Matrix<T>& m) {
  using W = typename detail::Wide<T>::type;
  const std::size_t n = m.rows();
  Matrix<T> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = T(-m(i, j));
  T prev = T(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(a(k, k) > T(0))) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        W v = W(a(k, k)) * W(a(i, j)) - W(a(i, k)) * W(a(k, j));
        a(i, j) = detail::Wide<T>::narrow(v / W(prev));
      }
    }
    prev = a(k, k);
  }
  return true;
}

inline bool is_negative_definite(const Configuration& cfg) {
  if (has_integral_weights(cfg)) return is_negative_definite(integer_gram(cfg));
  return is_negative_definite(gram_matrix(cfg).entries);
}

/// Solves A x = rhs exactly by Gauss-Jordan elimination.
inline std::vector<Rational> solve_dense(Matrix<Rational> a, std::vector<Rational> rhs) {
  const std::size_t n = a.rows();
  if (!a.is_square() || rhs.size() != n) throw std::invalid_argument("solve: dimension mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) throw SingularMatrixError("solve: singular system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(rhs[k], rhs[p]);
    }
    const Rational inv = Rational(1) / a(k, k);
    for (std::size_t j = k; j < n; ++j) a(k, j) *= inv;
    rhs[k] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const Rational f = a(i, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  return rhs;
}

/// Solves the principal system on `subset` of `m`: sum_{i in S} x_i m(i,j) = rhs_j for j in S.
inline std::vector<Rational> solve(const Matrix<Rational>& m, std::span<const std::size_t> subset,
                                   std::span<const Rational> rhs) {
  if (rhs.size() != subset.size()) throw std::invalid_argument("solve: rhs size mismatch");
  return solve_dense(m.principal(subset), std::vector<Rational>(rhs.begin(), rhs.end()));
}

inline std::vector<Rational> solve(const GramMatrix& m, std::span<const std::size_t> subset,
                                   std::span<const Rational> rhs) {
  return solve(m.entries, subset, rhs);
}

enum class DefinitenessKind { negative_definite, negative_semidefinite_degenerate, indefinite_or_other };

inline const char* to_string(DefinitenessKind k) {
  switch (k) {
    case DefinitenessKind::negative_definite: return "negative_definite";
    case DefinitenessKind::negative_semidefinite_degenerate: return "negative_semidefinite_degenerate";
    case DefinitenessKind::indefinite_or_other: return "indefinite_or_other";
  }
  return "?";
}

struct Definiteness {
  DefinitenessKind kind = DefinitenessKind::indefinite_or_other;
  std::vector<QDivisor> kernel;
};

namespace detail {

// Scales so the smallest nonzero absolute entry is 1; same-sign vectors
// come out positive, mixed-sign ones start positive.
inline void normalize_kernel_vector(std::vector<Rational>& v) {
  bool any_pos = false, any_neg = false;
  Rational min_abs;
  Rational first;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (first.is_zero()) first = x;
    (x.sign() > 0 ? any_pos : any_neg) = true;
    Rational a = x.abs();
    if (min_abs.is_zero() || a < min_abs) min_abs = a;
  }
  if (min_abs.is_zero()) return;
  bool flip = (any_neg && !any_pos) || (any_pos && any_neg && first.sign() < 0);
  Rational scale = (flip ? Rational(-1) : Rational(1)) / min_abs;
  for (auto& x : v) x *= scale;
}

struct Ldl {
  DefinitenessKind kind;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> zero_block;
};

// Symmetric elimination with diagonal pivots. A negative pivot is
// eliminated; a positive one, or a zero diagonal with a nonzero row,
// witnesses a positive direction. When only an all-zero block remains it
// spans the radical modulo the eliminated part.
inline Ldl symmetric_eliminate(Matrix<Rational> a) {
  const std::size_t n = a.rows();
  std::vector<char> active(n, 1);
  Ldl out{DefinitenessKind::negative_definite, {}, {}};
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && !a(i, i).is_zero()) {
        if (a(i, i).sign() > 0) return {DefinitenessKind::indefinite_or_other, {}, {}};
        if (!piv) piv = i;
      }
    if (!piv) break;
    const std::size_t p = *piv;
    active[p] = 0;
    out.pivots.push_back(p);
    const Rational inv = Rational(1) / a(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || a(i, p).is_zero()) continue;
      const Rational f = a(i, p) * inv;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j]) a(i, j) -= f * a(p, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (active[j] && !a(i, j).is_zero()) return {DefinitenessKind::indefinite_or_other, {}, {}};
    out.zero_block.push_back(i);
  }
  if (!out.zero_block.empty()) out.kind = DefinitenessKind::negative_semidefinite_degenerate;
  return out;
}

}  // namespace detail

/// Classifies the form and, in the degenerate case, returns a basis of the
/// radical with each vector scaled so its smallest nonzero entry is 1.
inline Definiteness definiteness(const GramMatrix& m) {
  if (!m.entries.is_symmetric()) throw std::invalid_argument("definiteness: matrix not symmetric");
  auto ldl = detail::symmetric_eliminate(m.entries);
  Definiteness out{ldl.kind, {}};
  if (ldl.kind != DefinitenessKind::negative_semidefinite_degenerate) return out;
  const std::size_t n = m.size();
  for (std::size_t z : ldl.zero_block) {
    std::vector<Rational> v(n);
    v[z] = 1;
    if (!ldl.pivots.empty()) {
      std::vector<Rational> rhs;
      for (std::size_t p : ldl.pivots) rhs.push_back(-m.entries(p, z));
      auto x = solve(m.entries, ldl.pivots, rhs);
      for (std::size_t a = 0; a < ldl.pivots.size(); ++a) v[ldl.pivots[a]] = x[a];
    }
    detail::normalize_kernel_vector(v);
    QDivisor d;
    for (std::size_t i = 0; i < n; ++i) d.set(m.labels[i], v[i]);
    out.kernel.push_back(std::move(d));
  }
  return out;
}

inline Definiteness definiteness(const Configuration& cfg) { return definiteness(gram_matrix(cfg)); }

/// Outcome of the largest-weight search for one node.
struct RelaxationBound {
  enum class Kind { bounded, unbounded, none };
  Kind kind = Kind::none;
  long m = 0;  // valid when bounded
};

/// For the tree `cfg` with apex node D_0 (default: first curve) and node
/// `k`, finds the largest positive integer m such that, with G_k^2 = -m and
/// every other weight -2, the matrix omitting D_0 is negative definite and
/// the full determinant has sign (-1)^n, n = #cfg - 1.
///
/// The determinant is affine in m, so the sign condition holds on a
/// half-line; definiteness of the reduced matrix is monotone in m.
inline RelaxationBound weight_relaxation_bound(const Configuration& cfg, const std::string& k,
                                               const std::optional<std::string>& apex = std::nullopt) {
  const std::size_t n1 = cfg.size();
  if (n1 < 2) throw std::invalid_argument("weight_relaxation_bound: needs at least two curves");
  const std::size_t kk = cfg.index_of(k);
  const std::size_t a0 = apex ? cfg.index_of(*apex) : 0;
  auto relaxed = [&](std::int64_t m) {
    auto g = Matrix<std::int64_t>::square(n1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n1; ++j) g(i, j) = i == j ? (i == kk ? -m : -2) : cfg.multiplicity(i, j);
    return g;
  };
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n1; ++i)
    if (i != a0) rest.push_back(i);
  auto reduced_definite = [&](std::int64_t m) { return is_negative_definite(relaxed(m).principal(rest)); };
  if (!reduced_definite(2))
    throw HypothesisViolation("weight_relaxation_bound: matrix without the apex is not negative definite");

  const int want = (n1 - 1) % 2 == 0 ? 1 : -1;
  const std::int64_t d0 = determinant(relaxed(0));
  const std::int64_t slope = determinant(relaxed(1)) - d0;  // det(m) = d0 + slope * m
  auto sign_ok = [&](std::int64_t m) {
    auto v = static_cast<__int128>(d0) + static_cast<__int128>(slope) * m;
    return (v > 0 ? 1 : v < 0 ? -1 : 0) == want;
  };
  // Smallest m >= 1 at which the reduced matrix is definite.
  std::int64_t m_min = 1;
  if (!reduced_definite(1)) m_min = 2;

  if (slope * want > 0 || (slope == 0 && sign_ok(0))) return {RelaxationBound::Kind::unbounded, 0};
  if (slope == 0) return {RelaxationBound::Kind::none, 0};
  // want * (d0 + slope m) > 0 with want*slope < 0: m < d0 / (-slope) in the
  // oriented sense.
  const std::int64_t num = want * d0;
  const std::int64_t den = -want * slope;  // > 0
  std::int64_t m_max = num >= 0 ? (num - 1) / den : -((-num + den - 1) / den) - 1;
  while (!sign_ok(m_max)) --m_max;
  while (sign_ok(m_max + 1)) ++m_max;
  if (m_max < m_min) return {RelaxationBound::Kind::none, 0};
  return {RelaxationBound::Kind::bounded, static_cast<long>(m_max)};
}

}  // namespace surflat
