#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "halfline/potential.hpp"

namespace halfline {

/// Real symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] at
/// (i, i+1) and (i+1, i).
class SymTridiag {
 public:
  SymTridiag(std::vector<double> diag, std::vector<double> off);

  /// (H - shift I)_{l..r}: diagonal v(n) - shift, unit off-diagonals.
  static SymTridiag section(const Potential& p, Index l, Index r, double shift = 0.0);

  std::size_t size() const { return diag_.size(); }
  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& off() const { return off_; }

  /// Number of eigenvalues strictly below x (inertia of the shifted LDL^T).
  std::size_t count_below(double x) const;

  /// k-th smallest eigenvalue (0-based) by bisection to absolute width tol.
  double eigenvalue(std::size_t k, double tol = 1e-13) const;

  /// All eigenvalues, ascending.
  std::vector<double> eigenvalues(double tol = 1e-13) const;

  /// Eigenvalues in [lo, hi), ascending.
  std::vector<double> eigenvalues_in(double lo, double hi, double tol = 1e-13) const;

  /// min |lambda| = smallest singular value.
  double min_abs_eigenvalue(double tol = 1e-13) const;

  /// Gershgorin enclosure of the spectrum.
  std::pair<double, double> gershgorin() const;

  std::vector<double> multiply(std::span<const double> x) const;

  /// Largest diagonal magnitude plus twice the largest off-diagonal.
  double scale() const;

 private:
  void bisect_range(double lo, double hi, std::size_t clo, std::size_t chi, double tol,
                    std::vector<double>& out) const;

  std::vector<double> diag_;
  std::vector<double> off_;
  double pivmin_;
};

struct TridiagSolve {
  std::vector<double> x;
  /// ||A x - b||_2 recomputed by direct multiplication.
  double residual = 0.0;
  bool used_qr = false;
};

/// Solves A x = b by LDL^T with pivot monitoring; pivots below 1e-14 * scale
/// or an unacceptable residual switch to Givens QR. Throws SingularSection
/// when QR also meets a negligible diagonal or the residual exceeds
/// 1e-10 ||b||.
TridiagSolve solve(const SymTridiag& a, std::span<const double> b);

double norm2(std::span<const double> x);

}  // namespace halfline
