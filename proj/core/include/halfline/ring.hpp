#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace halfline {

class Potential;

/// The grid R = r Z + r^2 Z + ... + r^n Z with r = exp(2 pi i / n), i.e. the
/// cyclotomic integers Z[r]. Elements are exact integer coordinates in the
/// power basis 1, r, ..., r^(phi(n)-1), reduced modulo the n-th cyclotomic
/// polynomial.
class RingSpec {
 public:
  using Element = std::vector<mpz_class>;

  static constexpr int kMaxOrder = 24;

  /// Throws InvalidInput unless 1 <= order <= kMaxOrder.
  explicit RingSpec(int order);

  int order() const { return order_; }
  int rank() const { return static_cast<int>(cyclotomic_.size()) - 1; }
  /// Integer coefficients of the n-th cyclotomic polynomial, constant first.
  const std::vector<mpz_class>& cyclotomic() const { return cyclotomic_; }

  /// sum_k coeffs[k-1] r^k for k = 1..n.
  Element from_generators(const std::vector<long>& coeffs) const;
  Element one() const;
  Element add(const Element& a, const Element& b) const;
  Element negate(const Element& a) const;
  Element multiply(const Element& a, const Element& b) const;
  bool is_zero(const Element& a) const;
  std::complex<double> to_complex(const Element& a) const;

  /// Whether the complex number x + iy (integers) lies in the grid.
  bool contains_gaussian(const mpz_class& re, const mpz_class& im) const;

 private:
  Element reduce(std::vector<mpz_class> poly) const;

  int order_;
  std::vector<mpz_class> cyclotomic_;
};

struct RingValidation {
  bool valid = true;
  int violated_condition = 0;  // 1..4, 0 when valid
  std::string reason;
  /// Closest-to-zero nonzero element found by the isolation search.
  std::vector<long> witness;
  double witness_modulus = 0.0;
  long coefficient_bound = 0;
};

/// Checks conditions (i) -1, 0, 1 in R; (ii) every potential value in R (when
/// a potential is supplied); (iii) ring closure; (iv) 0 isolated, by
/// enumerating every coefficient vector in [-B, B]^rank with
/// B = floor(search_radius). Requires search_radius >= 2.
RingValidation validate_ring(const RingSpec& ring, double search_radius,
                             const Potential* potential = nullptr);

}  // namespace halfline
