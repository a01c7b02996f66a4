#include "halfline/ring.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "halfline/error.hpp"
#include "halfline/polynomial.hpp"
#include "halfline/potential.hpp"

namespace halfline {

namespace {

Polynomial cyclotomic_poly(int n) {
  // x^n - 1 = prod_{d | n} Phi_d(x)
  std::vector<mpq_class> c(static_cast<std::size_t>(n + 1));
  c[0] = -1;
  c[static_cast<std::size_t>(n)] = 1;
  Polynomial f(std::move(c));
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) f = f.divmod(cyclotomic_poly(d)).first;
  }
  return f;
}

}  // namespace

RingSpec::RingSpec(int order) : order_(order) {
  if (order < 1 || order > kMaxOrder) {
    throw InvalidInput("ring generator order " + std::to_string(order) + " outside [1, " +
                       std::to_string(kMaxOrder) + "]");
  }
  const Polynomial phi = cyclotomic_poly(order);
  for (const auto& q : phi.coeffs()) cyclotomic_.push_back(q.get_num());
}

RingSpec::Element RingSpec::reduce(std::vector<mpz_class> poly) const {
  // Cyclotomic polynomials are monic, so reduction stays integral.
  const std::size_t deg = cyclotomic_.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    mpz_class lead = poly[k];
    if (lead == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) poly[k - deg + j] -= lead * cyclotomic_[j];
  }
  poly.resize(deg);
  return poly;
}

RingSpec::Element RingSpec::from_generators(const std::vector<long>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != order_) {
    throw InvalidInput("expected one coefficient per generator");
  }
  std::vector<mpz_class> poly(static_cast<std::size_t>(order_ + 1));
  for (int k = 1; k <= order_; ++k) poly[static_cast<std::size_t>(k)] = coeffs[static_cast<std::size_t>(k - 1)];
  return reduce(std::move(poly));
}

RingSpec::Element RingSpec::one() const {
  Element e(static_cast<std::size_t>(rank()));
  e[0] = 1;
  return e;
}

RingSpec::Element RingSpec::add(const Element& a, const Element& b) const {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RingSpec::Element RingSpec::negate(const Element& a) const {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

RingSpec::Element RingSpec::multiply(const Element& a, const Element& b) const {
  std::vector<mpz_class> prod(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  return reduce(std::move(prod));
}

bool RingSpec::is_zero(const Element& a) const {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

std::complex<double> RingSpec::to_complex(const Element& a) const {
  std::complex<double> acc = 0.0;
  const double theta = 2.0 * std::numbers::pi / order_;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += a[k].get_d() * std::polar(1.0, theta * static_cast<double>(k));
  }
  return acc;
}

bool RingSpec::contains_gaussian(const mpz_class& /*re*/, const mpz_class& im) const {
  // Z[r] contains i exactly when 4 | n; the real integers are always inside.
  return im == 0 || order_ % 4 == 0;
}

RingValidation validate_ring(const RingSpec& ring, double search_radius,
                             const Potential* potential) {
  if (!(search_radius >= 2.0)) throw InvalidInput("search_radius must be >= 2");
  RingValidation out;
  out.coefficient_bound = static_cast<long>(std::floor(search_radius));

  // (i): 1 = r^n, -1 = -r^n, 0 = empty sum.
  std::vector<long> gen(static_cast<std::size_t>(ring.order()), 0);
  gen.back() = 1;
  RingSpec::Element one = ring.from_generators(gen);
  if (one != ring.one() || !ring.is_zero(ring.add(one, ring.negate(one)))) {
    out.valid = false;
    out.violated_condition = 1;
    out.reason = "condition (i) violated: 1 is not r^n";
    return out;
  }

  // (ii)
  if (potential != nullptr) {
    bool ok = true;
    auto check = [&](const Scalar& s) {
      if (s.regime() == Regime::gaussian_integer) {
        auto g = s.to_gaussian();
        ok = ok && ring.contains_gaussian(g.re, g.im);
      } else {
        ok = ok && s.is_integral();
      }
    };
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Potential::Periodic>) {
            for (const auto& s : k.word) check(s);
          } else if constexpr (std::is_same_v<K, Potential::EventuallyPeriodic>) {
            for (const auto& s : k.left_word) check(s);
            for (const auto& s : k.core) check(s);
            for (const auto& s : k.right_word) check(s);
          } else if constexpr (std::is_same_v<K, Potential::Explicit>) {
            for (const auto& s : k.window) check(s);
            check(k.outside);
          } else if constexpr (std::is_same_v<K, Potential::Random>) {
            for (const auto& s : k.values) check(s);
            check(k.outside);
          }
        },
        potential->kind());
    if (!ok) {
      out.valid = false;
      out.violated_condition = 2;
      out.reason = "condition (ii) violated: a potential value lies outside R";
      return out;
    }
  }

  // (iii): products of generators r^j r^k = r^(j+k mod n) stay generators, and
  // reduction modulo a monic integer polynomial keeps coordinates integral.
  if (ring.cyclotomic().back() != 1) {
    out.valid = false;
    out.violated_condition = 3;
    out.reason = "condition (iii) violated: reduction polynomial is not monic";
    return out;
  }

  // (iv): the power basis is a Z-basis, so every nonzero coefficient vector
  // is a nonzero element and its modulus is the distance between two points.
  const int rank = ring.rank();
  const long b = out.coefficient_bound;
  std::vector<long> c(static_cast<std::size_t>(rank), -b);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::complex<double>> basis(static_cast<std::size_t>(rank));
  for (int k = 0; k < rank; ++k) {
    basis[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * std::numbers::pi * k / ring.order());
  }
  while (true) {
    bool nonzero = false;
    std::complex<double> x = 0.0;
    for (int k = 0; k < rank; ++k) {
      if (c[static_cast<std::size_t>(k)] != 0) nonzero = true;
      x += static_cast<double>(c[static_cast<std::size_t>(k)]) * basis[static_cast<std::size_t>(k)];
    }
    if (nonzero && std::abs(x) < best) {
      best = std::abs(x);
      out.witness = c;
    }
    int k = 0;
    while (k < rank && c[static_cast<std::size_t>(k)] == b) c[static_cast<std::size_t>(k++)] = -b;
    if (k == rank) break;
    ++c[static_cast<std::size_t>(k)];
  }
  out.witness_modulus = best;
  if (best < 1.0 - 1e-9) {
    out.valid = false;
    out.violated_condition = 4;
    std::ostringstream os;
    os << "condition (iv) violated: nonzero element of modulus " << best
       << " < 1, so distinct points closer than 1";
    out.reason = os.str();
  }
  return out;
}

}  // namespace halfline
