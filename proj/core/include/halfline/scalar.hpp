#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace halfline {

using Index = std::int64_t;

/// Scalar regimes. integer ⊂ rational ⊂ floating; gaussian_integer sits
/// beside the chain and only joins with integer.
enum class Regime { integer, rational, gaussian_integer, floating };

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

/// Weakest regime containing both; throws InvalidInput for unsupported mixes
/// (gaussian with rational or floating).
Regime join(Regime a, Regime b);

struct GaussianInt {
  mpz_class re;
  mpz_class im;

  GaussianInt() = default;
  GaussianInt(long r) : re(r), im(0) {}
  GaussianInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

  mpz_class norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianInt operator-(const GaussianInt& a) { return {-a.re, -a.im}; }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// A value in one of the four regimes. Arithmetic promotes to the join of the
/// operand regimes, so integer inputs never leave exact arithmetic.
class Scalar {
 public:
  using Storage = std::variant<mpz_class, mpq_class, GaussianInt, double>;

  Scalar() : v_(mpz_class(0)) {}
  Scalar(int x) : v_(mpz_class(x)) {}
  Scalar(long x) : v_(mpz_class(x)) {}
  Scalar(long long x) : v_(mpz_class(static_cast<long>(x))) {}
  Scalar(mpz_class x) : v_(std::move(x)) {}
  Scalar(mpq_class x) : v_(std::move(x)) { std::get<mpq_class>(v_).canonicalize(); }
  Scalar(GaussianInt x) : v_(std::move(x)) {}
  Scalar(double x) : v_(x) {}

  static Scalar rational(long num, long den);

  /// Parses "7", "-3/4", "2.5" (floating), or "re,im" (gaussian) in the
  /// requested regime. Integer text is accepted by every regime.
  static Scalar parse(std::string_view text, Regime regime);

  Regime regime() const;
  const Storage& storage() const { return v_; }

  /// Re-expresses the value in a regime at least as strong as the current
  /// one. Throws InvalidInput when the conversion would lose information.
  Scalar to_regime(Regime target) const;

  bool is_zero() const;
  /// True when the value is a rational integer (any regime).
  bool is_integral() const;

  mpq_class to_rational() const;  // floating converts exactly
  mpz_class to_integer() const;   // throws unless is_integral()
  GaussianInt to_gaussian() const;
  double to_double() const;        // throws for gaussian with nonzero imag
  std::complex<double> to_complex() const;

  /// log|x| computed without overflow for huge exact values; -inf for zero.
  double log_abs() const;

  /// Canonical text: integers as digits, rationals as "p/q" (or "p" when
  /// integral), floats as shortest round-trip decimal, gaussians as "re,im".
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  /// Numeric equality across regimes (2 == 2/1 == 2.0).
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Ordering for real regimes; throws for gaussian operands.
  friend bool operator<(const Scalar& a, const Scalar& b);

 private:
  Storage v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Shortest decimal text that parses back to the same double.
std::string shortest_decimal(double x);

/// log|x| for exact values; safe for values far beyond double range.
double log_abs(const mpz_class& x);
double log_abs(const mpq_class& x);

}  // namespace halfline
