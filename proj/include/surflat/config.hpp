#pragma once

// Configurations of curves on a surface, modelled as weighted dual graphs,
// together with Q-divisors supported on them and their intersection
// (Gram) matrices.

#include "surflat/matrix.hpp"
#include "surflat/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace surflat {

/// Raised for any structurally invalid configuration or divisor.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One irreducible curve (or abstract lattice class).
///
/// Exactly one of `genus` and `k_pairing` is set. Genus-bearing curves get
/// their canonical pairing from adjunction; classes with an explicit
/// pairing (e.g. a pulled-back hyperplane) carry it directly.
struct Curve {
  std::string label;
  Rational self_int;
  std::optional<int> genus;
  std::optional<Rational> k_pairing;

  static Curve rational(std::string label, Rational self_int) {
    return Curve{std::move(label), std::move(self_int), 0, std::nullopt};
  }
  static Curve with_genus(std::string label, Rational self_int, int genus) {
    return Curve{std::move(label), std::move(self_int), genus, std::nullopt};
  }
  static Curve with_k(std::string label, Rational self_int, Rational k) {
    return Curve{std::move(label), std::move(self_int), std::nullopt, std::move(k)};
  }

  /// K.C, by adjunction 2g - 2 - C^2 when the genus is known.
  [[nodiscard]] Rational k_dot() const {
    if (genus) return Rational(2 * *genus - 2) - self_int;
    return *k_pairing;
  }
};

struct Edge {
  std::string a;
  std::string b;
  int multiplicity = 1;
};

/// Immutable weighted dual graph. Curve order is the authoritative row
/// order of every matrix built from it.
class Configuration {
 public:
  Configuration() = default;

  Configuration(std::vector<Curve> curves, std::vector<Edge> edges)
      : curves_(std::move(curves)), edges_(std::move(edges)) {
    const std::size_t n = curves_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Curve& c = curves_[i];
      if (c.label.empty()) throw ConfigError("curve with empty label");
      if (c.genus.has_value() == c.k_pairing.has_value())
        throw ConfigError("curve '" + c.label + "' must carry exactly one of genus and k");
      if (c.genus && *c.genus < 0) throw ConfigError("curve '" + c.label + "' has negative genus");
      if (!index_.emplace(c.label, i).second) throw ConfigError("duplicate label '" + c.label + "'");
    }
    mult_.assign(n * n, 0);
    neighbors_.assign(n, {});
    for (const Edge& e : edges_) {
      auto ia = index_.find(e.a);
      if (ia == index_.end()) throw ConfigError("edge refers to unknown label '" + e.a + "'");
      auto ib = index_.find(e.b);
      if (ib == index_.end()) throw ConfigError("edge refers to unknown label '" + e.b + "'");
      if (ia->second == ib->second) throw ConfigError("self-edge on '" + e.a + "'");
      if (e.multiplicity < 1)
        throw ConfigError("edge " + e.a + "-" + e.b + " has non-positive multiplicity");
      std::size_t i = ia->second, j = ib->second;
      if (mult_[i * n + j] != 0) throw ConfigError("duplicate edge " + e.a + "-" + e.b);
      mult_[i * n + j] = mult_[j * n + i] = e.multiplicity;
      neighbors_[i].push_back(j);
      neighbors_[j].push_back(i);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
  }

  [[nodiscard]] std::size_t size() const { return curves_.size(); }
  [[nodiscard]] const std::vector<Curve>& curves() const { return curves_; }
  [[nodiscard]] const Curve& curve(std::size_t i) const { return curves_.at(i); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

  [[nodiscard]] std::optional<std::size_t> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::size_t index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw ConfigError("unknown label '" + label + "'");
    return it->second;
  }

  [[nodiscard]] int multiplicity(std::size_t i, std::size_t j) const { return mult_[i * size() + j]; }
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_[i]; }
  [[nodiscard]] std::size_t degree(std::size_t i) const { return neighbors_[i].size(); }

  /// C_i . C_j, with the self-intersection on the diagonal.
  [[nodiscard]] Rational pairing(std::size_t i, std::size_t j) const {
    return i == j ? curves_[i].self_int : Rational(mult_[i * size() + j]);
  }

  /// Induced sub-configuration on the given indices (kept in that order).
  [[nodiscard]] Configuration sub(std::span<const std::size_t> idx) const {
    std::vector<Curve> cs;
    cs.reserve(idx.size());
    for (auto i : idx) cs.push_back(curves_.at(i));
    std::vector<Edge> es;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (int m = multiplicity(idx[a], idx[b]))
          es.push_back({curves_[idx[a]].label, curves_[idx[b]].label, m});
    return Configuration(std::move(cs), std::move(es));
  }

  /// Copy with one self-intersection replaced. Genus curves keep their genus,
  /// so K.C follows adjunction.
  [[nodiscard]] Configuration with_self_int(std::size_t i, const Rational& value) const {
    auto cs = curves_;
    cs.at(i).self_int = value;
    return Configuration(std::move(cs), edges_);
  }

  [[nodiscard]] bool is_connected() const {
    if (size() == 0) return false;
    return component_of(0).size() == size();
  }

  /// Vertices reachable from `start` (sorted).
  [[nodiscard]] std::vector<std::size_t> component_of(std::size_t start) const {
    std::vector<char> seen(size(), 0);
    std::vector<std::size_t> stack{start}, out;
    seen[start] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      out.push_back(v);
      for (auto w : neighbors_[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<Curve> curves_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<int> mult_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

/// Q-divisor: label -> coefficient. Absent labels have coefficient 0, and
/// zero coefficients are never stored.
class QDivisor {
 public:
  QDivisor() = default;
  QDivisor(std::initializer_list<std::pair<const std::string, Rational>> init) {
    for (const auto& [k, v] : init) set(k, v);
  }

  /// Reduced divisor: every curve of `cfg` with coefficient 1.
  static QDivisor reduced(const Configuration& cfg) {
    QDivisor d;
    for (const auto& c : cfg.curves()) d.set(c.label, 1);
    return d;
  }

  static QDivisor from_vector(const Configuration& cfg, std::span<const Rational> v) {
    QDivisor d;
    for (std::size_t i = 0; i < v.size(); ++i) d.set(cfg.curve(i).label, v[i]);
    return d;
  }

  [[nodiscard]] Rational coeff(const std::string& label) const {
    auto it = coeffs_.find(label);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void set(const std::string& label, const Rational& value) {
    if (value.is_zero())
      coeffs_.erase(label);
    else
      coeffs_[label] = value;
  }

  [[nodiscard]] const std::map<std::string, Rational>& coeffs() const { return coeffs_; }
  [[nodiscard]] bool empty() const { return coeffs_.empty(); }

  /// Coefficient vector in the curve order of `cfg`. Throws on labels
  /// that do not belong to it.
  [[nodiscard]] std::vector<Rational> to_vector(const Configuration& cfg) const {
    std::vector<Rational> v(cfg.size());
    for (const auto& [label, c] : coeffs_) v[cfg.index_of(label)] = c;
    return v;
  }

  [[nodiscard]] bool is_effective() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.sign() > 0; });
  }

  friend QDivisor operator+(const QDivisor& a, const QDivisor& b) {
    QDivisor r = a;
    for (const auto& [k, v] : b.coeffs_) r.set(k, r.coeff(k) + v);
    return r;
  }
  friend QDivisor operator-(const QDivisor& a, const QDivisor& b) {
    QDivisor r = a;
    for (const auto& [k, v] : b.coeffs_) r.set(k, r.coeff(k) - v);
    return r;
  }
  friend QDivisor operator*(const Rational& s, const QDivisor& a) {
    QDivisor r;
    for (const auto& [k, v] : a.coeffs_) r.set(k, s * v);
    return r;
  }
  friend bool operator==(const QDivisor& a, const QDivisor& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::map<std::string, Rational> coeffs_;
};

/// Symmetric intersection matrix over an ordered label set.
struct GramMatrix {
  std::vector<std::string> labels;
  Matrix<Rational> entries;

  [[nodiscard]] std::size_t size() const { return labels.size(); }
};

inline GramMatrix gram_matrix(const Configuration& cfg) {
  GramMatrix g;
  const std::size_t n = cfg.size();
  g.entries = Matrix<Rational>::square(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.labels.push_back(cfg.curve(i).label);
    for (std::size_t j = 0; j < n; ++j) g.entries(i, j) = cfg.pairing(i, j);
  }
  return g;
}

/// Integer Gram matrix; throws unless every self-intersection is integral.
inline Matrix<std::int64_t> integer_gram(const Configuration& cfg) {
  const std::size_t n = cfg.size();
  auto m = Matrix<std::int64_t>::square(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = i == j ? cfg.curve(i).self_int.to_int64() : cfg.multiplicity(i, j);
  return m;
}

inline bool has_integral_weights(const Configuration& cfg) {
  return std::all_of(cfg.curves().begin(), cfg.curves().end(),
                     [](const Curve& c) { return c.self_int.is_integer() && c.self_int.is_small(); });
}

inline Rational k_dot(const Configuration& cfg, const std::string& label) {
  return cfg.curve(cfg.index_of(label)).k_dot();
}

/// a . b for divisors supported on `cfg`.
inline Rational intersect(const Configuration& cfg, const QDivisor& a, const QDivisor& b) {
  Rational sum;
  for (const auto& [la, ca] : a.coeffs()) {
    auto i = cfg.index_of(la);
    for (const auto& [lb, cb] : b.coeffs()) sum += ca * cb * cfg.pairing(i, cfg.index_of(lb));
  }
  return sum;
}

inline Rational k_dot(const Configuration& cfg, const QDivisor& d) {
  Rational sum;
  for (const auto& [label, c] : d.coeffs()) sum += c * k_dot(cfg, label);
  return sum;
}

/// Coefficient-wise ceiling.
inline QDivisor round_up(const QDivisor& d) {
  QDivisor r;
  for (const auto& [label, c] : d.coeffs()) r.set(label, c.ceil());
  return r;
}

/// Connected, acyclic, simple edges only, every curve of genus 0.
inline bool is_rational_tree(const Configuration& cfg) {
  if (cfg.size() == 0 || !cfg.is_connected()) return false;
  if (cfg.edges().size() + 1 != cfg.size()) return false;
  for (const auto& e : cfg.edges())
    if (e.multiplicity != 1) return false;
  return std::all_of(cfg.curves().begin(), cfg.curves().end(),
                     [](const Curve& c) { return c.genus && *c.genus == 0; });
}

/// D.(K + D) for the reduced divisor D on the support of `d`.
///
/// Equals sum_j (2 p_a(D_j) - 2) + 2 * (edges inside the support, with
/// multiplicity) for genus-bearing curves.
inline Rational adjoint_pairing(const Configuration& cfg, const QDivisor& d) {
  std::vector<std::size_t> idx;
  for (const auto& [label, c] : d.coeffs()) idx.push_back(cfg.index_of(label));
  if (idx.empty()) throw ConfigError("adjoint_pairing: empty support");
  std::sort(idx.begin(), idx.end());
  if (!cfg.sub(idx).is_connected()) throw ConfigError("adjoint_pairing: support is not connected");
  Rational sum;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Curve& c = cfg.curve(idx[a]);
    sum += c.self_int + c.k_dot();
    for (std::size_t b = a + 1; b < idx.size(); ++b) sum += Rational(2 * cfg.multiplicity(idx[a], idx[b]));
  }
  return sum;
}

}  // namespace surflat
