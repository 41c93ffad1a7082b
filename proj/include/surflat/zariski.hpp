#pragma once

// Zariski decomposition D = P + N of an effective Q-divisor supported on a
// configuration, plus the nef/big predicates and the chain-forcing and
// coefficient-bound arguments built on it.

#include "surflat/config.hpp"
#include "surflat/exact_linalg.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surflat {

struct ZariskiDecomposition {
  QDivisor positive;  // P
  QDivisor negative;  // N
  std::vector<std::string> negative_support;  // in curve order
  int iterations = 0;
};

namespace detail {

struct ZariskiCore {
  std::vector<Rational> p;
  std::vector<char> in_negative;
  int iterations = 0;
};

// Grows the negative set S from the empty set: at every round the
// coefficients on S are re-solved from P.C_j = 0 (j in S) with the others
// pinned to d, and every component with P.C < 0 joins S.
inline ZariskiCore zariski_core(const Matrix<Rational>& m, const std::vector<Rational>& d) {
  const std::size_t n = d.size();
  ZariskiCore out{d, std::vector<char>(n, 0), 0};
  for (;;) {
    bool grew = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (out.in_negative[j]) continue;
      Rational dot;
      for (std::size_t i = 0; i < n; ++i)
        if (!m(i, j).is_zero() && !out.p[i].is_zero()) dot += out.p[i] * m(i, j);
      if (dot.sign() < 0) {
        out.in_negative[j] = 1;
        grew = true;
      }
    }
    if (!grew) return out;
    ++out.iterations;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (out.in_negative[i]) s.push_back(i);
    std::vector<Rational> rhs;
    rhs.reserve(s.size());
    for (std::size_t j : s) {
      Rational r;
      for (std::size_t i = 0; i < n; ++i)
        if (!out.in_negative[i] && !m(i, j).is_zero()) r -= d[i] * m(i, j);
      rhs.push_back(r);
    }
    std::vector<Rational> x;
    try {
      x = solve(m, s, rhs);
    } catch (const SingularMatrixError&) {
      throw std::logic_error("zariski_decompose: singular negative-part matrix (internal inconsistency)");
    }
    for (std::size_t a = 0; a < s.size(); ++a) out.p[s[a]] = x[a];
  }
}

inline std::vector<std::size_t> support_indices(const Configuration& cfg, const QDivisor& d) {
  std::vector<std::size_t> idx;
  for (const auto& [label, c] : d.coeffs()) idx.push_back(cfg.index_of(label));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace detail

/// Zariski decomposition of an effective divisor. Curves with coefficient 0
/// in `d` take no part in the computation.
inline ZariskiDecomposition zariski_decompose(const Configuration& cfg, const QDivisor& d) {
  if (!d.is_effective()) throw ConfigError("zariski_decompose: divisor is not effective");
  auto dom = detail::support_indices(cfg, d);
  auto m = gram_matrix(cfg).entries.principal(dom);
  std::vector<Rational> coeffs;
  coeffs.reserve(dom.size());
  for (auto i : dom) coeffs.push_back(d.coeff(cfg.curve(i).label));
  auto core = detail::zariski_core(m, coeffs);
  ZariskiDecomposition z;
  z.iterations = core.iterations;
  for (std::size_t a = 0; a < dom.size(); ++a) {
    const auto& label = cfg.curve(dom[a]).label;
    z.positive.set(label, core.p[a]);
    z.negative.set(label, coeffs[a] - core.p[a]);
    if (core.in_negative[a]) z.negative_support.push_back(label);
  }
  return z;
}

inline Rational self_square(const Configuration& cfg, const QDivisor& q) { return intersect(cfg, q, q); }

/// q.C >= 0 for every curve C of the configuration.
inline bool is_nef(const Configuration& cfg, const QDivisor& q) {
  for (std::size_t j = 0; j < cfg.size(); ++j) {
    Rational dot;
    for (const auto& [label, c] : q.coeffs()) dot += c * cfg.pairing(cfg.index_of(label), j);
    if (dot.sign() < 0) return false;
  }
  return true;
}

inline bool is_big_nef(const Configuration& cfg, const QDivisor& q) {
  return is_nef(cfg, q) && self_square(cfg, q).sign() > 0;
}

enum class ChainVerdict { forced_into_N, no_conclusion };

struct ChainForcing {
  ChainVerdict verdict = ChainVerdict::no_conclusion;
  std::string contact;  // chain curve meeting the attachment
  bool end_contact = false;
  /// Solution of the relaxed chain system with unit coefficient on the
  /// attachment; scaled by p(attachment) these bound the true coefficients.
  QDivisor bounds;
};

/// Decides whether a linear chain meeting the rest of the configuration in
/// a single point must lie in the negative part of the reduced divisor.
/// Forced when the contact is at an end of the chain, or the contact curve
/// has self-intersection <= -3.
inline ChainForcing chain_forcing(const Configuration& cfg, const std::vector<std::string>& chain,
                                  const std::string& attachment) {
  if (chain.empty()) throw ConfigError("chain_forcing: empty chain");
  std::vector<std::size_t> idx;
  for (const auto& l : chain) idx.push_back(cfg.index_of(l));
  const std::size_t att = cfg.index_of(attachment);
  std::vector<char> in_chain(cfg.size(), 0);
  for (auto i : idx) {
    if (in_chain[i]) throw ConfigError("chain_forcing: repeated curve in chain");
    in_chain[i] = 1;
  }
  if (in_chain[att]) throw ConfigError("chain_forcing: attachment lies on the chain");
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      int mult = cfg.multiplicity(idx[a], idx[b]);
      if ((b == a + 1 && mult != 1) || (b > a + 1 && mult != 0))
        throw ConfigError("chain_forcing: curves do not form a linear chain in the given order");
    }
  int outside = 0;
  std::optional<std::size_t> contact;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t j = 0; j < cfg.size(); ++j) {
      if (in_chain[j]) continue;
      int mult = cfg.multiplicity(idx[a], j);
      if (mult == 0) continue;
      outside += mult;
      if (j == att) contact = a;
    }
  if (outside != 1 || !contact)
    throw ConfigError("chain_forcing: chain must meet the rest exactly once, at the attachment");

  ChainForcing out;
  const std::size_t t = *contact;
  const std::size_t m = idx.size();
  out.contact = chain[t];
  out.end_contact = t == 0 || t + 1 == m;
  const Rational contact_weight = cfg.curve(idx[t]).self_int;
  bool weights_ok = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return cfg.curve(i).self_int <= -2; });
  if (!weights_ok || (!out.end_contact && contact_weight > -3)) return out;

  // Relaxed system: chain weights -2, the contact at -3 in the interior case.
  auto g = Matrix<Rational>::square(m);
  std::vector<Rational> rhs(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) g(a, b) = cfg.pairing(idx[a], idx[b]);
    g(a, a) = (!out.end_contact && a == t) ? Rational(-3) : Rational(-2);
    rhs[a] = -Rational(cfg.multiplicity(idx[a], att));
  }
  std::vector<std::size_t> all(m);
  for (std::size_t a = 0; a < m; ++a) all[a] = a;
  auto x = solve(g, all, rhs);
  for (std::size_t a = 0; a < m; ++a) out.bounds.set(chain[a], x[a]);
  out.verdict = ChainVerdict::forced_into_N;
  return out;
}

/// Upper bounds b_i >= p_i for the positive part of `d` obtained by
/// re-solving the negative-part system with some self-intersections raised
/// (to values in [C_i^2, -2]) on a negative definite block.
inline std::map<std::string, Rational> coefficient_upper_bounds(
    const Configuration& cfg, const QDivisor& d, const std::map<std::string, Rational>& reassigned_weights) {
  auto z = zariski_decompose(cfg, d);
  auto dom = detail::support_indices(cfg, d);
  const std::size_t n = dom.size();
  auto g = gram_matrix(cfg).entries.principal(dom);
  std::vector<char> in_block(n, 0);
  std::vector<std::size_t> block;
  for (const auto& [label, w] : reassigned_weights) {
    auto gi = cfg.index_of(label);
    auto it = std::find(dom.begin(), dom.end(), gi);
    if (it == dom.end()) throw ConfigError("coefficient_upper_bounds: '" + label + "' is not in the support");
    std::size_t a = static_cast<std::size_t>(it - dom.begin());
    if (w > -2 || w < cfg.curve(gi).self_int)
      throw HypothesisViolation("coefficient_upper_bounds: weight of '" + label + "' must lie in [C^2, -2]");
    g(a, a) = w;
    in_block[a] = 1;
  }
  for (std::size_t a = 0; a < n; ++a)
    if (in_block[a]) block.push_back(a);
  if (!is_negative_definite(g.principal(block)))
    throw HypothesisViolation("coefficient_upper_bounds: relaxed block is not negative definite");
  std::vector<Rational> p(n);
  for (std::size_t a = 0; a < n; ++a) p[a] = z.positive.coeff(cfg.curve(dom[a]).label);
  std::vector<Rational> rhs;
  for (auto j : block) {
    Rational r;
    for (std::size_t i = 0; i < n; ++i)
      if (!in_block[i]) r -= p[i] * g(i, j);
    rhs.push_back(r);
  }
  auto b = solve(g, block, rhs);
  std::map<std::string, Rational> out;
  for (std::size_t a = 0; a < block.size(); ++a) out[cfg.curve(dom[block[a]]).label] = b[a];
  return out;
}

}  // namespace surflat
