#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace halfline {

/// Dense univariate polynomial with exact rational coefficients; coeffs()[i]
/// multiplies z^i. The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(int c) : Polynomial(mpq_class(c)) {}
  Polynomial(mpq_class c);
  explicit Polynomial(std::vector<mpq_class> coeffs);

  /// The monomial z.
  static Polynomial z();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int i) const;
  mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

  mpq_class operator()(const mpq_class& x) const;
  double operator()(double x) const;

  Polynomial derivative() const;
  Polynomial monic() const;

  /// Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Coefficients as "p/q" strings, constant term first.
  std::vector<std::string> to_strings() const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Monic greatest common divisor (zero if both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// f / gcd(f, f'): same roots, all simple.
Polynomial square_free(const Polynomial& f);

/// Sturm chain of a square-free polynomial; counts distinct real roots.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& f);

  int sign_changes(const mpq_class& x) const;
  /// Number of distinct real roots in the half-open interval (a, b].
  int count(const mpq_class& a, const mpq_class& b) const;

  const Polynomial& base() const { return chain_.front(); }

 private:
  std::vector<Polynomial> chain_;
};

/// A real root of a square-free rational polynomial, held as an isolating
/// interval: exactly one root in the open interval (lo, hi), or lo == hi when
/// the root is an exact rational.
struct RealRoot {
  Polynomial poly;
  mpq_class lo;
  mpq_class hi;

  bool exact() const { return lo == hi; }
  mpq_class width() const { return hi - lo; }
  double value() const;

  /// Bisects until hi - lo <= width (or the root is hit exactly).
  void refine(const mpq_class& width);
};

/// Isolates every real root of f in the open interval (lo, hi), sorted
/// ascending. f is reduced to its square-free part first; lo and hi must not
/// be roots.
std::vector<RealRoot> isolate_real_roots(const Polynomial& f, const mpq_class& lo,
                                         const mpq_class& hi);

/// All real roots of f, using a Cauchy bound for the search interval.
std::vector<RealRoot> isolate_real_roots(const Polynomial& f);

/// Dyadic bound B with every complex root of f strictly inside |z| < B.
mpq_class cauchy_bound(const Polynomial& f);

/// Exact equality of two algebraic reals given by isolating intervals.
bool same_root(const RealRoot& a, const RealRoot& b);

/// Exact sign of g at the root r (refines r's interval as needed).
int sign_at(const Polynomial& g, RealRoot& r);

/// 1/10^k as an exact rational.
mpq_class decimal_width(int k);

}  // namespace halfline
