#include "halfline/scalar.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "halfline/error.hpp"

namespace halfline {

namespace {

int rank(Regime r) {
  switch (r) {
    case Regime::integer: return 0;
    case Regime::rational: return 1;
    case Regime::floating: return 2;
    case Regime::gaussian_integer: return 3;
  }
  return 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  mpz_class out;
  if (s.empty() || out.set_str(std::string(s), 10) != 0) {
    throw InvalidInput("not an integer: '" + std::string(s) + "'");
  }
  return out;
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::integer: return "integer";
    case Regime::rational: return "rational";
    case Regime::gaussian_integer: return "gaussian_integer";
    case Regime::floating: return "float";
  }
  return "integer";
}

Regime regime_from_string(std::string_view s) {
  if (s == "integer") return Regime::integer;
  if (s == "rational") return Regime::rational;
  if (s == "gaussian_integer") return Regime::gaussian_integer;
  if (s == "float" || s == "floating") return Regime::floating;
  throw InvalidInput("unknown scalar regime '" + std::string(s) + "'");
}

Regime join(Regime a, Regime b) {
  if (a == b) return a;
  if (a == Regime::gaussian_integer || b == Regime::gaussian_integer) {
    Regime other = a == Regime::gaussian_integer ? b : a;
    if (other == Regime::integer) return Regime::gaussian_integer;
    throw InvalidInput("gaussian_integer cannot be combined with " +
                       std::string(to_string(other)));
  }
  return rank(a) > rank(b) ? a : b;
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw InvalidInput("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::parse(std::string_view text, Regime regime) {
  text = trim(text);
  switch (regime) {
    case Regime::integer:
      return Scalar(parse_integer(text));
    case Regime::rational: {
      auto slash = text.find('/');
      if (slash == std::string_view::npos) return Scalar(mpq_class(parse_integer(text)));
      mpz_class num = parse_integer(text.substr(0, slash));
      mpz_class den = parse_integer(text.substr(slash + 1));
      if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
      mpq_class q(num, den);
      q.canonicalize();
      return Scalar(std::move(q));
    }
    case Regime::floating: {
      if (text.find('/') != std::string_view::npos) {
        return Scalar(Scalar::parse(text, Regime::rational).to_double());
      }
      double x = 0.0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidInput("not a number: '" + std::string(text) + "'");
      }
      return Scalar(x);
    }
    case Regime::gaussian_integer: {
      auto comma = text.find(',');
      if (comma == std::string_view::npos) {
        return Scalar(GaussianInt(parse_integer(text), 0));
      }
      return Scalar(GaussianInt(parse_integer(text.substr(0, comma)),
                                parse_integer(text.substr(comma + 1))));
    }
  }
  throw InvalidInput("unreachable regime");
}

Regime Scalar::regime() const {
  switch (v_.index()) {
    case 0: return Regime::integer;
    case 1: return Regime::rational;
    case 2: return Regime::gaussian_integer;
    default: return Regime::floating;
  }
}

Scalar Scalar::to_regime(Regime target) const {
  Regime here = regime();
  if (here == target) return *this;
  switch (target) {
    case Regime::integer:
      return Scalar(to_integer());
    case Regime::rational:
      if (here == Regime::floating) {
        throw InvalidInput("refusing to reinterpret a float as an exact rational");
      }
      return Scalar(to_rational());
    case Regime::floating:
      return Scalar(to_double());
    case Regime::gaussian_integer:
      return Scalar(to_gaussian());
  }
  return *this;
}

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GaussianInt>) {
          return x.is_zero();
        } else {
          return x == 0;
        }
      },
      v_);
}

bool Scalar::is_integral() const {
  switch (v_.index()) {
    case 0: return true;
    case 1: return std::get<1>(v_).get_den() == 1;
    case 2: return std::get<2>(v_).im == 0;
    default: {
      double x = std::get<3>(v_);
      return std::isfinite(x) && std::floor(x) == x;
    }
  }
}

mpq_class Scalar::to_rational() const {
  switch (v_.index()) {
    case 0: return mpq_class(std::get<0>(v_));
    case 1: return std::get<1>(v_);
    case 2: {
      const auto& g = std::get<2>(v_);
      if (g.im != 0) throw InvalidInput("gaussian value with nonzero imaginary part");
      return mpq_class(g.re);
    }
    default: {
      double x = std::get<3>(v_);
      if (!std::isfinite(x)) throw InvalidInput("non-finite float has no rational value");
      return mpq_class(x);
    }
  }
}

mpz_class Scalar::to_integer() const {
  if (!is_integral()) throw InvalidInput("value " + to_string() + " is not an integer");
  switch (v_.index()) {
    case 0: return std::get<0>(v_);
    case 1: return std::get<1>(v_).get_num();
    case 2: return std::get<2>(v_).re;
    default: return mpz_class(std::get<3>(v_));
  }
}

GaussianInt Scalar::to_gaussian() const {
  if (v_.index() == 2) return std::get<2>(v_);
  return GaussianInt(to_integer(), 0);
}

double Scalar::to_double() const {
  switch (v_.index()) {
    case 0: return std::get<0>(v_).get_d();
    case 1: return std::get<1>(v_).get_d();
    case 2: {
      const auto& g = std::get<2>(v_);
      if (g.im != 0) throw InvalidInput("gaussian value with nonzero imaginary part");
      return g.re.get_d();
    }
    default: return std::get<3>(v_);
  }
}

std::complex<double> Scalar::to_complex() const {
  if (v_.index() == 2) {
    const auto& g = std::get<2>(v_);
    return {g.re.get_d(), g.im.get_d()};
  }
  return {to_double(), 0.0};
}

double log_abs(const mpz_class& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const mpq_class& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return log_abs(x.get_num()) - log_abs(x.get_den());
}

double Scalar::log_abs() const {
  switch (v_.index()) {
    case 0: return halfline::log_abs(std::get<0>(v_));
    case 1: return halfline::log_abs(std::get<1>(v_));
    case 2: {
      const auto& g = std::get<2>(v_);
      if (g.is_zero()) return -std::numeric_limits<double>::infinity();
      return 0.5 * halfline::log_abs(g.norm());
    }
    default: return std::log(std::fabs(std::get<3>(v_)));
  }
}

std::string shortest_decimal(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string Scalar::to_string() const {
  switch (v_.index()) {
    case 0: return std::get<0>(v_).get_str();
    case 1: return std::get<1>(v_).get_str();
    case 2: {
      const auto& g = std::get<2>(v_);
      return g.re.get_str() + "," + g.im.get_str();
    }
    default: return shortest_decimal(std::get<3>(v_));
  }
}

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  Regime r = join(a.regime(), b.regime());
  switch (r) {
    case Regime::integer:
      return Scalar(mpz_class(op(std::get<0>(a.storage()), std::get<0>(b.storage()))));
    case Regime::rational:
      return Scalar(mpq_class(op(a.to_rational(), b.to_rational())));
    case Regime::floating:
      return Scalar(static_cast<double>(op(a.to_double(), b.to_double())));
    case Regime::gaussian_integer:
      return Scalar(GaussianInt(op(a.to_gaussian(), b.to_gaussian())));
  }
  return Scalar();
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw InvalidInput("division by zero");
  Regime r = join(a.regime(), b.regime());
  switch (r) {
    case Regime::integer:
    case Regime::rational:
      return Scalar(mpq_class(a.to_rational() / b.to_rational()));
    case Regime::floating:
      return Scalar(a.to_double() / b.to_double());
    case Regime::gaussian_integer:
      throw InvalidInput("division is not defined in the gaussian integer ring");
  }
  return Scalar();
}

Scalar operator-(const Scalar& a) {
  return std::visit([](const auto& x) { return Scalar(std::decay_t<decltype(x)>(-x)); },
                    a.storage());
}

bool operator==(const Scalar& a, const Scalar& b) {
  Regime ra = a.regime();
  Regime rb = b.regime();
  if (ra == Regime::gaussian_integer || rb == Regime::gaussian_integer) {
    if (!a.is_integral() && ra != Regime::gaussian_integer) return false;
    if (!b.is_integral() && rb != Regime::gaussian_integer) return false;
    return a.to_gaussian() == b.to_gaussian();
  }
  if (ra == Regime::floating || rb == Regime::floating) {
    double x = ra == Regime::floating ? std::get<3>(a.storage()) : 0.0;
    double y = rb == Regime::floating ? std::get<3>(b.storage()) : 0.0;
    if (!std::isfinite(x) || !std::isfinite(y)) return a.to_double() == b.to_double();
  }
  return a.to_rational() == b.to_rational();
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.regime() == Regime::gaussian_integer || b.regime() == Regime::gaussian_integer) {
    throw InvalidInput("gaussian integers are not ordered");
  }
  return a.to_rational() < b.to_rational();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace halfline
