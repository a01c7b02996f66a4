#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfline/matrix2.hpp"
#include "halfline/polynomial.hpp"
#include "halfline/potential.hpp"
#include "halfline/scalar.hpp"

namespace halfline {

/// A 2x2 transfer matrix with all entries in one regime.
struct TransferMatrix {
  Regime regime = Regime::integer;
  Mat2<Scalar> m = Mat2<Scalar>::identity();

  Scalar trace() const { return m.trace(); }
  Scalar det() const { return m.det(); }
};

/// Regime an operation on (p, z) computes in; throws InvalidInput on mixes
/// such as gaussian potential with rational z.
Regime operation_regime(const Potential& p, const Scalar& z);

/// T_z(r) ... T_z(l), exact in exact regimes. Requires l <= r.
TransferMatrix transfer_product(const Potential& p, const Scalar& z, Index l, Index r);

/// Same product in a fixed arithmetic type, for hot loops.
template <class T>
Mat2<T> transfer_product_as(const Potential& p, const T& z, Index l, Index r);

enum class Growth { growing, decaying, neutral };
std::string_view to_string(Growth g);

/// Solution of (H - zI)x = 0 on the half-line from the Dirichlet data
/// x_{start-1} = 0, x_start = 1.
struct DirichletOrbit {
  Index start = 0;
  Scalar z;
  /// values[k] = x_{start - 1 + k}; values[0] == 0 and values[1] == 1.
  std::vector<Scalar> values;
  /// Every value lies in the ring generated by the potential (Z or Z[i]).
  bool in_ring = false;
  Growth growth = Growth::neutral;
  /// Least-squares slope of log|x_n| over the trailing quarter.
  double log_slope = 0.0;
  /// Floating orbits whose magnitude exceeded 1e300.
  bool overflow_warning = false;

  const Scalar& at(Index n) const { return values[static_cast<std::size_t>(n - start + 1)]; }
  Index last_index() const { return start - 2 + static_cast<Index>(values.size()); }
};

/// x_{-1} = 0, x_0 = 1 (shifted by `start`) and x_{n+1} = (z - v(n)) x_n - x_{n-1}
/// for n = start .. start + steps - 1.
DirichletOrbit dirichlet_orbit(const Potential& p, const Scalar& z, Index steps, Index start = 0);

/// Least-squares slope of log|x| against index over the trailing quarter of
/// samples, skipping zeros; classification threshold 1e-3.
std::pair<Growth, double> classify_growth(const std::vector<double>& log_abs_values);

/// det (H - zI)_{l..r} by the three-term recursion d_n = (v(n) - z) d_{n-1} - d_{n-2}.
Scalar finite_section_determinant(const Potential& p, const Scalar& z, Index l, Index r);

/// Floquet discriminant of a periodic exact potential: the trace of the
/// monodromy M(z) = T_z(p-1) ... T_z(0) as an exact rational polynomial.
struct Discriminant {
  Index period = 0;
  std::vector<mpq_class> word;  // v(0), ..., v(p-1)
  Mat2<Polynomial> monodromy;
  Polynomial trace;

  mpq_class operator()(const mpq_class& z) const { return trace(z); }
  Mat2<mpq_class> monodromy_at(const mpq_class& z) const;
  /// Spectral search window [min v - 2 - margin, max v + 2 + margin].
  std::pair<mpq_class, mpq_class> search_window(int margin = 1) const;
};

/// Throws InvalidInput unless p is periodic with integer or rational values.
Discriminant discriminant(const Potential& p);

enum class MonodromyVerdict { not_gap, gap_no_dirichlet, gap_dirichlet_impossible_integer };
std::string_view to_string(MonodromyVerdict v);

/// Exact integer monodromy certificate at an integer spectral parameter.
struct MonodromyCertificate {
  MonodromyVerdict verdict = MonodromyVerdict::not_gap;
  mpz_class z;
  Mat2<mpz_class> monodromy;
  mpz_class trace;
  mpz_class m12;
  mpz_class m22;
  mpz_class det;
  /// M12 == 0 and |M22| < 1: the Dirichlet vector spans the contracting
  /// direction. Never true for integer data.
  bool dirichlet_eigenvalue = false;
  /// M12 == 0 implies |M22| == 1 (checked whenever M12 vanishes).
  bool unit_m22_when_m12_zero = true;
};

MonodromyCertificate monodromy_dirichlet_test(const Potential& p, const mpz_class& z);

}  // namespace halfline
