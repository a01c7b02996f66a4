#include "halfline/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "halfline/error.hpp"

namespace halfline {

SymTridiag::SymTridiag(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
  if (diag_.empty()) throw InvalidInput("empty tridiagonal matrix");
  if (off_.size() + 1 != diag_.size()) throw InvalidInput("off-diagonal length mismatch");
  double emax = 0.0;
  for (double e : off_) emax = std::max(emax, e * e);
  pivmin_ = std::numeric_limits<double>::min() * std::max(1.0, emax);
  pivmin_ = std::max(pivmin_, std::numeric_limits<double>::epsilon() *
                                  std::numeric_limits<double>::epsilon() * std::max(1.0, emax));
}

SymTridiag SymTridiag::section(const Potential& p, Index l, Index r, double shift) {
  if (l > r) throw InvalidInput("section requires l <= r");
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(r - l + 1));
  for (Index n = l; n <= r; ++n) d.push_back(p.eval_double(n) - shift);
  return SymTridiag(std::move(d), std::vector<double>(static_cast<std::size_t>(r - l), 1.0));
}

std::size_t SymTridiag::count_below(double x) const {
  std::size_t count = 0;
  double q = diag_[0] - x;
  if (std::fabs(q) < pivmin_) q = -pivmin_;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < diag_.size(); ++i) {
    q = (diag_[i] - x) - off_[i - 1] * off_[i - 1] / q;
    if (std::fabs(q) < pivmin_) q = -pivmin_;
    if (q < 0) ++count;
  }
  return count;
}

std::pair<double, double> SymTridiag::gershgorin() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < diag_.size(); ++i) {
    double rad = (i > 0 ? std::fabs(off_[i - 1]) : 0.0) + (i < off_.size() ? std::fabs(off_[i]) : 0.0);
    lo = std::min(lo, diag_[i] - rad);
    hi = std::max(hi, diag_[i] + rad);
  }
  double pad = 1e-12 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
  return {lo - pad, hi + pad};
}

double SymTridiag::scale() const {
  double d = 0.0;
  for (double x : diag_) d = std::max(d, std::fabs(x));
  double e = 0.0;
  for (double x : off_) e = std::max(e, std::fabs(x));
  return d + 2.0 * e;
}

double SymTridiag::eigenvalue(std::size_t k, double tol) const {
  if (k >= size()) throw InvalidInput("eigenvalue index out of range");
  auto [lo, hi] = gershgorin();
  while (true) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol || mid <= lo || mid >= hi) return mid;
    if (count_below(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
}

void SymTridiag::bisect_range(double lo, double hi, std::size_t clo, std::size_t chi, double tol,
                              std::vector<double>& out) const {
  // Invariant: exactly chi - clo eigenvalues lie in [lo, hi).
  if (chi == clo) return;
  double mid = 0.5 * (lo + hi);
  if (hi - lo <= tol || mid <= lo || mid >= hi) {
    for (std::size_t i = clo; i < chi; ++i) out.push_back(mid);
    return;
  }
  std::size_t cm = count_below(mid);
  bisect_range(lo, mid, clo, cm, tol, out);
  bisect_range(mid, hi, cm, chi, tol, out);
}

std::vector<double> SymTridiag::eigenvalues(double tol) const {
  auto [lo, hi] = gershgorin();
  std::vector<double> out;
  out.reserve(size());
  bisect_range(lo, hi, 0, size(), tol, out);
  return out;
}

std::vector<double> SymTridiag::eigenvalues_in(double lo, double hi, double tol) const {
  std::vector<double> out;
  if (!(lo < hi)) return out;
  bisect_range(lo, hi, count_below(lo), count_below(hi), tol, out);
  return out;
}

double SymTridiag::min_abs_eigenvalue(double tol) const {
  std::size_t c = count_below(0.0);
  double best = std::numeric_limits<double>::infinity();
  if (c > 0) best = std::min(best, std::fabs(eigenvalue(c - 1, tol)));
  if (c < size()) best = std::min(best, std::fabs(eigenvalue(c, tol)));
  return best;
}

std::vector<double> SymTridiag::multiply(std::span<const double> x) const {
  if (x.size() != size()) throw InvalidInput("dimension mismatch in multiply");
  std::vector<double> y(size());
  for (std::size_t i = 0; i < size(); ++i) {
    double acc = diag_[i] * x[i];
    if (i > 0) acc += off_[i - 1] * x[i - 1];
    if (i + 1 < size()) acc += off_[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

double norm2(std::span<const double> x) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::fabs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  for (double v : x) {
    double t = v / scale;
    acc += t * t;
  }
  return scale * std::sqrt(acc);
}

namespace {

double residual_norm(const SymTridiag& a, std::span<const double> x, std::span<const double> b) {
  std::vector<double> r = a.multiply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return norm2(r);
}

bool solve_ldlt(const SymTridiag& a, std::span<const double> b, double pivot_floor,
                std::vector<double>& x) {
  const auto& d = a.diag();
  const auto& e = a.off();
  const std::size_t n = a.size();
  std::vector<double> piv(n), mult(n, 0.0);
  piv[0] = d[0];
  if (std::fabs(piv[0]) < pivot_floor) return false;
  for (std::size_t i = 1; i < n; ++i) {
    mult[i] = e[i - 1] / piv[i - 1];
    piv[i] = d[i] - mult[i] * e[i - 1];
    if (std::fabs(piv[i]) < pivot_floor) return false;
  }
  x.assign(b.begin(), b.end());
  for (std::size_t i = 1; i < n; ++i) x[i] -= mult[i] * x[i - 1];
  for (std::size_t i = 0; i < n; ++i) x[i] /= piv[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= mult[i + 1] * x[i + 1];
  return true;
}

bool solve_qr(const SymTridiag& a, std::span<const double> b, double pivot_floor,
              std::vector<double>& x) {
  const auto& d = a.diag();
  const auto& e = a.off();
  const std::size_t n = a.size();
  std::vector<double> r0(n), r1(n, 0.0), r2(n, 0.0);
  std::vector<double> rhs(b.begin(), b.end());
  // Row i enters rotation i holding entries at columns i and i+1 only.
  double alpha = d[0];
  double beta = n > 1 ? e[0] : 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double sub = e[i];
    double rho = std::hypot(alpha, sub);
    double c = rho == 0.0 ? 1.0 : alpha / rho;
    double s = rho == 0.0 ? 0.0 : sub / rho;
    double next_d = d[i + 1];
    double next_e = i + 1 < e.size() ? e[i + 1] : 0.0;
    r0[i] = rho;
    r1[i] = c * beta + s * next_d;
    r2[i] = s * next_e;
    alpha = -s * beta + c * next_d;
    beta = c * next_e;
    double bi = rhs[i];
    double bj = rhs[i + 1];
    rhs[i] = c * bi + s * bj;
    rhs[i + 1] = -s * bi + c * bj;
  }
  r0[n - 1] = alpha;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(r0[i]) < pivot_floor) return false;
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    if (i + 1 < n) acc -= r1[i] * x[i + 1];
    if (i + 2 < n) acc -= r2[i] * x[i + 2];
    x[i] = acc / r0[i];
  }
  return true;
}

}  // namespace

TridiagSolve solve(const SymTridiag& a, std::span<const double> b) {
  if (b.size() != a.size()) throw InvalidInput("right-hand side has wrong length");
  const double floor = 1e-14 * std::max(1.0, a.scale());
  const double bnorm = norm2(b);
  const double accept = 1e-10 * bnorm;
  TridiagSolve out;
  if (solve_ldlt(a, b, floor, out.x)) {
    out.residual = residual_norm(a, out.x, b);
    if (std::isfinite(out.residual) && out.residual <= accept) return out;
  }
  out.used_qr = true;
  if (solve_qr(a, b, floor, out.x)) {
    out.residual = residual_norm(a, out.x, b);
    if (std::isfinite(out.residual) && out.residual <= accept) return out;
  }
  double sigma = a.min_abs_eigenvalue();
  throw SingularSection("section of size " + std::to_string(a.size()) +
                            " is numerically singular (sigma_min ~ " + std::to_string(sigma) + ")",
                        sigma);
}

}  // namespace halfline
