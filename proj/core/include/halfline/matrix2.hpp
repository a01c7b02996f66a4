#pragma once

#include <ostream>

namespace halfline {

/// Dense 2x2 matrix over any commutative ring-like T (mpz_class, mpq_class,
/// Scalar, double, Polynomial, ...). Entries are stored row-major.
template <class T>
struct Mat2 {
  T a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return Mat2{T(1), T(0), T(0), T(1)}; }

  T trace() const { return T(a11 + a22); }
  T det() const { return T(a11 * a22 - a12 * a21); }

  /// Adjugate; equals the inverse whenever det() == 1.
  Mat2 adjugate() const { return Mat2{a22, T(-a12), T(-a21), a11}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return Mat2{T(x.a11 * y.a11 + x.a12 * y.a21), T(x.a11 * y.a12 + x.a12 * y.a22),
                T(x.a21 * y.a11 + x.a22 * y.a21), T(x.a21 * y.a12 + x.a22 * y.a22)};
  }

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a11 == y.a11 && x.a12 == y.a12 && x.a21 == y.a21 && x.a22 == y.a22;
  }

  /// Applies the matrix to the column (u, w).
  template <class U>
  void apply(U& u, U& w) const {
    U nu = a11 * u + a12 * w;
    U nw = a21 * u + a22 * w;
    u = std::move(nu);
    w = std::move(nw);
  }

  template <class F>
  auto map(F&& f) const -> Mat2<decltype(f(a11))> {
    return {f(a11), f(a12), f(a21), f(a22)};
  }
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Mat2<T>& m) {
  return os << "[[" << m.a11 << ", " << m.a12 << "], [" << m.a21 << ", " << m.a22 << "]]";
}

/// One step of (H - zI)x = 0: (x_n, x_{n+1}) = T (x_{n-1}, x_n) with
/// T = [[0, 1], [-1, z - v]]. At z = 0 this is the classical transfer matrix.
template <class T>
Mat2<T> transfer_step(const T& z, const T& v) {
  return Mat2<T>{T(0), T(1), T(-1), T(z - v)};
}

}  // namespace halfline
