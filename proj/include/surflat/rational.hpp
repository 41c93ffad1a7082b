#pragma once

// Exact rational numbers.
//
// Values that fit in a pair of 64-bit integers are stored inline and all
// arithmetic on them goes through 128-bit intermediates; anything larger is
// promoted to boost::multiprecision::cpp_rational and demoted again as soon
// as it fits. Every value is kept in lowest terms with a positive
// denominator, so equality is structural.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace surflat {

class Rational {
 public:
  using BigInt = boost::multiprecision::cpp_int;
  using Big = boost::multiprecision::cpp_rational;

  Rational() = default;

  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  Rational(I value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_unsigned_v<I> && sizeof(I) >= sizeof(std::int64_t)) {
      if (value > static_cast<std::make_unsigned_t<std::int64_t>>(kMax)) {
        big_ = std::make_shared<const Big>(BigInt(value));
        return;
      }
    }
    num_ = static_cast<std::int64_t>(value);
  }

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    assign(static_cast<i128>(num), static_cast<i128>(den));
  }

  explicit Rational(const Big& value) { assign_big(value); }

  /// Parses "p", "-p", "p/q" (optional surrounding whitespace is not allowed).
  static Rational parse(std::string_view text) {
    auto fail = [&]() -> Rational {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();
    auto slash = text.find('/');
    auto numer = text.substr(0, slash);
    auto denom = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    auto valid_int = [](std::string_view s, bool allow_sign) {
      if (!s.empty() && allow_sign && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!valid_int(numer, true)) return fail();
    if (slash != std::string_view::npos && !valid_int(denom, false)) return fail();
    std::string n_str(numer);
    if (!n_str.empty() && n_str[0] == '+') n_str.erase(0, 1);
    BigInt n(n_str);
    BigInt d = slash == std::string_view::npos ? BigInt(1) : BigInt(std::string(denom));
    if (d == 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "': zero denominator");
    Rational r;
    r.assign_big(Big(n, d));
    return r;
  }

  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const {
    return big_ ? boost::multiprecision::denominator(*big_) == 1 : den_ == 1;
  }
  [[nodiscard]] int sign() const {
    if (big_) return big_->sign();
    return (num_ > 0) - (num_ < 0);
  }

  [[nodiscard]] BigInt numerator() const {
    return big_ ? BigInt(boost::multiprecision::numerator(*big_)) : BigInt(num_);
  }
  [[nodiscard]] BigInt denominator() const {
    return big_ ? BigInt(boost::multiprecision::denominator(*big_)) : BigInt(den_);
  }

  /// Integer value; throws if not an integer or out of int64 range.
  [[nodiscard]] std::int64_t to_int64() const {
    if (!is_integer() || big_) throw std::domain_error("rational " + str() + " is not a 64-bit integer");
    return num_;
  }

  [[nodiscard]] Big to_big() const { return big_ ? *big_ : Big(num_, den_); }

  [[nodiscard]] Rational floor() const {
    if (big_) {
      BigInt n = boost::multiprecision::numerator(*big_);
      BigInt d = boost::multiprecision::denominator(*big_);
      BigInt q = n / d;
      if (n % d != 0 && n < 0) q -= 1;
      return Rational(Big(q));
    }
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }

  [[nodiscard]] Rational ceil() const { return -((-*this).floor()); }

  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

  [[nodiscard]] std::string str() const {
    if (big_) {
      auto n = boost::multiprecision::numerator(*big_);
      auto d = boost::multiprecision::denominator(*big_);
      return d == 1 ? n.str() : n.str() + "/" + d.str();
    }
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
      Rational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    Rational r;
    r.assign_big(-to_big());
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return from_i128(i128(a.num_) + b.num_, 1);
      return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    Rational r;
    r.assign_big(a.to_big() + b.to_big());
    return r;
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) return from_i128(i128(a.num_) - b.num_, 1);
      return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    Rational r;
    r.assign_big(a.to_big() - b.to_big());
    return r;
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    Rational r;
    r.assign_big(a.to_big() * b.to_big());
    return r;
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational: division by zero");
    if (!a.big_ && !b.big_) return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    Rational r;
    r.assign_big(a.to_big() / b.to_big());
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    // Normalized representation: a demotable value is never stored big.
    return false;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      i128 lhs = i128(a.num_) * b.den_;
      i128 rhs = i128(b.num_) * a.den_;
      return lhs <=> rhs;
    }
    Big x = a.to_big(), y = b.to_big();
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using i128 = __int128;
  using u128 = unsigned __int128;
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

  static u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
      u128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_i128(i128 n, i128 d) {
    Rational r;
    r.assign(n, d);
    return r;
  }

  // n, d must come from products of int64 values, so |n|, |d| < 2^126.
  void assign(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    if (d != 1) {
      u128 g = gcd128(n < 0 ? u128(-n) : u128(n), u128(d));
      if (g > 1) {
        n /= i128(g);
        d /= i128(g);
      }
    }
    if (n >= kMin && n <= kMax && d <= kMax) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
      return;
    }
    big_ = std::make_shared<const Big>(Big(to_bigint(n), to_bigint(d)));
    num_ = 0;
    den_ = 1;
  }

  static BigInt to_bigint(i128 v) {
    bool neg = v < 0;
    u128 u = neg ? u128(-v) : u128(v);
    BigInt r = BigInt(static_cast<std::uint64_t>(u >> 64));
    r <<= 64;
    r += BigInt(static_cast<std::uint64_t>(u));
    return neg ? BigInt(-r) : r;
  }

  void assign_big(const Big& value) {
    const auto& n = boost::multiprecision::numerator(value);
    const auto& d = boost::multiprecision::denominator(value);
    if (n >= kMin && n <= kMax && d <= kMax) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
    } else {
      big_ = std::make_shared<const Big>(value);
      num_ = 0;
      den_ = 1;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

}  // namespace surflat
