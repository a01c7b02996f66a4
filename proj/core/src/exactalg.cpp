#include "halfline/exactalg.hpp"

#include <cmath>
#include <limits>

#include "halfline/error.hpp"

namespace halfline {

namespace {

template <class T>
T scalar_cast(const Scalar& s);

template <>
mpz_class scalar_cast<mpz_class>(const Scalar& s) {
  return s.to_integer();
}
template <>
mpq_class scalar_cast<mpq_class>(const Scalar& s) {
  return s.to_rational();
}
template <>
double scalar_cast<double>(const Scalar& s) {
  return s.to_double();
}
template <>
GaussianInt scalar_cast<GaussianInt>(const Scalar& s) {
  return s.to_gaussian();
}

template <class T>
Mat2<Scalar> wrap(const Mat2<T>& m) {
  return m.map([](const T& x) { return Scalar(x); });
}

template <class T>
T determinant_as(const Potential& p, const T& z, Index l, Index r) {
  T prev2 = T(0);
  T prev = T(1);
  for (Index n = l; n <= r; ++n) {
    T d = T((scalar_cast<T>(p(n)) - z) * prev - prev2);
    prev2 = std::move(prev);
    prev = std::move(d);
  }
  return prev;
}

template <class T>
std::vector<Scalar> orbit_as(const Potential& p, const T& z, Index steps, Index start) {
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(steps + 2));
  T prev = T(0);
  T cur = T(1);
  out.emplace_back(prev);
  out.emplace_back(cur);
  for (Index n = start; n < start + steps; ++n) {
    T next = T((z - scalar_cast<T>(p(n))) * cur - prev);
    prev = std::move(cur);
    cur = std::move(next);
    out.emplace_back(cur);
  }
  return out;
}

}  // namespace

template <class T>
Mat2<T> transfer_product_as(const Potential& p, const T& z, Index l, Index r) {
  if (l > r) throw InvalidInput("transfer_product requires l <= r");
  Mat2<T> acc = Mat2<T>::identity();
  for (Index n = l; n <= r; ++n) acc = transfer_step<T>(z, scalar_cast<T>(p(n))) * acc;
  return acc;
}

template Mat2<mpz_class> transfer_product_as(const Potential&, const mpz_class&, Index, Index);
template Mat2<mpq_class> transfer_product_as(const Potential&, const mpq_class&, Index, Index);
template Mat2<double> transfer_product_as(const Potential&, const double&, Index, Index);
template Mat2<GaussianInt> transfer_product_as(const Potential&, const GaussianInt&, Index, Index);

Regime operation_regime(const Potential& p, const Scalar& z) {
  return join(p.regime(), z.regime());
}

TransferMatrix transfer_product(const Potential& p, const Scalar& z, Index l, Index r) {
  Regime regime = operation_regime(p, z);
  TransferMatrix out;
  out.regime = regime;
  switch (regime) {
    case Regime::integer:
      out.m = wrap(transfer_product_as<mpz_class>(p, z.to_integer(), l, r));
      break;
    case Regime::rational:
      out.m = wrap(transfer_product_as<mpq_class>(p, z.to_rational(), l, r));
      break;
    case Regime::floating:
      out.m = wrap(transfer_product_as<double>(p, z.to_double(), l, r));
      break;
    case Regime::gaussian_integer:
      out.m = wrap(transfer_product_as<GaussianInt>(p, z.to_gaussian(), l, r));
      break;
  }
  return out;
}

std::string_view to_string(Growth g) {
  switch (g) {
    case Growth::growing: return "growing";
    case Growth::decaying: return "decaying";
    case Growth::neutral: return "neutral";
  }
  return "neutral";
}

std::pair<Growth, double> classify_growth(const std::vector<double>& log_abs_values) {
  const std::size_t n = log_abs_values.size();
  const std::size_t first = n - n / 4;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t k = (n / 4 >= 2 ? first : 0); k < n; ++k) {
    double y = log_abs_values[k];
    if (!std::isfinite(y)) continue;
    double x = static_cast<double>(k);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return {Growth::neutral, 0.0};
  double md = static_cast<double>(m);
  double denom = md * sxx - sx * sx;
  if (denom == 0.0) return {Growth::neutral, 0.0};
  double slope = (md * sxy - sx * sy) / denom;
  if (slope > 1e-3) return {Growth::growing, slope};
  if (slope < -1e-3) return {Growth::decaying, slope};
  return {Growth::neutral, slope};
}

DirichletOrbit dirichlet_orbit(const Potential& p, const Scalar& z, Index steps, Index start) {
  if (steps < 0) throw InvalidInput("orbit length must be non-negative");
  Regime regime = operation_regime(p, z);
  DirichletOrbit out;
  out.start = start;
  out.z = z;
  switch (regime) {
    case Regime::integer:
      out.values = orbit_as<mpz_class>(p, z.to_integer(), steps, start);
      break;
    case Regime::rational:
      out.values = orbit_as<mpq_class>(p, z.to_rational(), steps, start);
      break;
    case Regime::floating:
      out.values = orbit_as<double>(p, z.to_double(), steps, start);
      break;
    case Regime::gaussian_integer:
      out.values = orbit_as<GaussianInt>(p, z.to_gaussian(), steps, start);
      break;
  }
  out.in_ring = true;
  std::vector<double> logs;
  logs.reserve(out.values.size());
  for (const auto& x : out.values) {
    if (regime != Regime::gaussian_integer && !x.is_integral()) out.in_ring = false;
    if (regime == Regime::floating && std::fabs(x.to_double()) > 1e300) out.overflow_warning = true;
    logs.push_back(x.log_abs());
  }
  auto [growth, slope] = classify_growth(logs);
  out.growth = growth;
  out.log_slope = slope;
  return out;
}

Scalar finite_section_determinant(const Potential& p, const Scalar& z, Index l, Index r) {
  if (l > r) throw InvalidInput("finite section requires l <= r");
  switch (operation_regime(p, z)) {
    case Regime::integer:
      return Scalar(determinant_as<mpz_class>(p, z.to_integer(), l, r));
    case Regime::rational:
      return Scalar(determinant_as<mpq_class>(p, z.to_rational(), l, r));
    case Regime::floating:
      return Scalar(determinant_as<double>(p, z.to_double(), l, r));
    case Regime::gaussian_integer:
      return Scalar(determinant_as<GaussianInt>(p, z.to_gaussian(), l, r));
  }
  return Scalar();
}

Mat2<mpq_class> Discriminant::monodromy_at(const mpq_class& z) const {
  Mat2<mpq_class> acc = Mat2<mpq_class>::identity();
  for (const auto& v : word) acc = transfer_step<mpq_class>(z, v) * acc;
  return acc;
}

std::pair<mpq_class, mpq_class> Discriminant::search_window(int margin) const {
  mpq_class lo = word.front();
  mpq_class hi = word.front();
  for (const auto& v : word) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo - 2 - margin, hi + 2 + margin};
}

Discriminant discriminant(const Potential& p) {
  if (!p.is_periodic()) {
    throw InvalidInput("discriminant requires a periodic potential, got " + p.kind_name());
  }
  if (!p.is_exact_real()) {
    throw InvalidInput("discriminant requires integer or rational values");
  }
  Discriminant d;
  d.period = p.period();
  Mat2<Polynomial> acc = Mat2<Polynomial>::identity();
  const Polynomial z = Polynomial::z();
  for (Index n = 0; n < d.period; ++n) {
    mpq_class v = p(n).to_rational();
    d.word.push_back(v);
    acc = transfer_step<Polynomial>(z, Polynomial(v)) * acc;
  }
  d.monodromy = acc;
  d.trace = acc.trace();
  return d;
}

std::string_view to_string(MonodromyVerdict v) {
  switch (v) {
    case MonodromyVerdict::not_gap: return "not_gap";
    case MonodromyVerdict::gap_no_dirichlet: return "gap_no_dirichlet";
    case MonodromyVerdict::gap_dirichlet_impossible_integer:
      return "gap_dirichlet_impossible_integer";
  }
  return "not_gap";
}

MonodromyCertificate monodromy_dirichlet_test(const Potential& p, const mpz_class& z) {
  if (!p.is_periodic() || p.regime() != Regime::integer) {
    throw InvalidInput("monodromy_dirichlet_test requires an integer periodic potential");
  }
  MonodromyCertificate c;
  c.z = z;
  c.monodromy = transfer_product_as<mpz_class>(p, z, 0, p.period() - 1);
  c.trace = c.monodromy.trace();
  c.m12 = c.monodromy.a12;
  c.m22 = c.monodromy.a22;
  c.det = c.monodromy.det();
  mpz_class abs_m22 = abs(c.m22);
  c.dirichlet_eigenvalue = c.m12 == 0 && abs_m22 < 1;
  c.unit_m22_when_m12_zero = c.m12 != 0 || abs_m22 == 1;
  if (abs(c.trace) <= 2) {
    c.verdict = MonodromyVerdict::not_gap;
  } else if (c.m12 != 0) {
    c.verdict = MonodromyVerdict::gap_no_dirichlet;
  } else {
    c.verdict = MonodromyVerdict::gap_dirichlet_impossible_integer;
  }
  return c;
}

}  // namespace halfline
