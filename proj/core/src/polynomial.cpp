#include "halfline/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/error.hpp"

namespace halfline {

Polynomial::Polynomial(mpq_class c) {
  c_.push_back(std::move(c));
  trim();
}

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::z() { return Polynomial(std::vector<mpq_class>{0, 1}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

mpq_class Polynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpq_class> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  std::vector<mpq_class> m(c_);
  mpq_class lead = c_.back();
  for (auto& x : m) x /= lead;
  return Polynomial(std::move(m));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw InvalidInput("polynomial division by zero");
  std::vector<mpq_class> rem(c_);
  int dd = divisor.degree();
  int nd = degree();
  if (nd < dd) return {Polynomial(), *this};
  std::vector<mpq_class> quot(static_cast<std::size_t>(nd - dd + 1));
  const mpq_class& lead = divisor.c_.back();
  for (int k = nd - dd; k >= 0; --k) {
    mpq_class q = rem[static_cast<std::size_t>(k + dd)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a) {
  std::vector<mpq_class> c(a.c_);
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(c));
}

std::vector<std::string> Polynomial::to_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x.get_str());
  return out;
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Polynomial square_free(const Polynomial& f) {
  if (f.degree() <= 0) return f.monic();
  Polynomial g = gcd(f, f.derivative());
  if (g.degree() <= 0) return f.monic();
  return f.divmod(g).first.monic();
}

SturmChain::SturmChain(const Polynomial& f) {
  chain_.push_back(f);
  if (f.degree() <= 0) return;
  chain_.push_back(f.derivative());
  while (true) {
    const Polynomial& a = chain_[chain_.size() - 2];
    const Polynomial& b = chain_.back();
    Polynomial r = a.divmod(b).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern and tames coefficient growth.
    mpq_class lead = r.leading();
    if (lead < 0) lead = -lead;
    Polynomial scaled = -r;
    std::vector<mpq_class> c(scaled.coeffs());
    for (auto& x : c) x /= lead;
    chain_.emplace_back(std::move(c));
  }
}

int SturmChain::sign_changes(const mpq_class& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain_) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmChain::count(const mpq_class& a, const mpq_class& b) const {
  return sign_changes(a) - sign_changes(b);
}

double RealRoot::value() const {
  mpq_class mid = (lo + hi) / 2;
  return mid.get_d();
}

void RealRoot::refine(const mpq_class& target) {
  if (exact()) return;
  int slo = sgn(poly(lo));
  while (hi - lo > target) {
    mpq_class mid = (lo + hi) / 2;
    int sm = sgn(poly(mid));
    if (sm == 0) {
      lo = mid;
      hi = mid;
      return;
    }
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

namespace {

// A split point inside (a, b) that is not a root of f.
mpq_class split_point(const Polynomial& f, const mpq_class& a, const mpq_class& b) {
  static const int kNum[] = {1, 1, 2, 3, 3, 4, 5};
  static const int kDen[] = {2, 3, 5, 7, 5, 9, 11};
  for (std::size_t i = 0; i < std::size(kNum); ++i) {
    mpq_class m = a + (b - a) * mpq_class(kNum[i], kDen[i]);
    if (f(m) != 0) return m;
  }
  // f has finitely many roots; keep halving toward a.
  mpq_class m = (a + b) / 2;
  while (f(m) == 0) m = (a + m) / 2;
  return m;
}

}  // namespace

std::vector<RealRoot> isolate_real_roots(const Polynomial& f, const mpq_class& lo,
                                         const mpq_class& hi) {
  std::vector<RealRoot> out;
  if (f.degree() <= 0) return out;
  Polynomial g = square_free(f);
  if (g(lo) == 0 || g(hi) == 0) {
    throw InvalidInput("isolation interval endpoints must not be roots");
  }
  SturmChain chain(g);
  struct Range {
    mpq_class a, b;
    int n;
  };
  std::vector<Range> stack{{lo, hi, chain.count(lo, hi)}};
  while (!stack.empty()) {
    Range r = std::move(stack.back());
    stack.pop_back();
    if (r.n == 0) continue;
    if (r.n == 1) {
      out.push_back(RealRoot{g, r.a, r.b});
      continue;
    }
    mpq_class m = split_point(g, r.a, r.b);
    int left = chain.count(r.a, m);
    stack.push_back({m, r.b, r.n - left});
    stack.push_back({r.a, m, left});
  }
  std::sort(out.begin(), out.end(),
            [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  return out;
}

mpq_class cauchy_bound(const Polynomial& f) {
  if (f.degree() <= 0) return 1;
  mpq_class m = 0;
  const mpq_class& lead = f.leading();
  for (int i = 0; i < f.degree(); ++i) {
    mpq_class r = f.coeff(i) / lead;
    if (r < 0) r = -r;
    if (r > m) m = r;
  }
  mpq_class bound = 1;
  while (bound <= m + 1) bound *= 2;
  return bound;
}

std::vector<RealRoot> isolate_real_roots(const Polynomial& f) {
  mpq_class b = cauchy_bound(f);
  return isolate_real_roots(f, -b, b);
}

bool same_root(const RealRoot& a, const RealRoot& b) {
  if (a.hi < b.lo || b.hi < a.lo) return false;
  if (a.exact() && b.exact()) return a.lo == b.lo;
  if (a.exact()) return b.poly(a.lo) == 0 && b.lo < a.lo && a.lo < b.hi;
  if (b.exact()) return a.poly(b.lo) == 0 && a.lo < b.lo && b.lo < a.hi;
  Polynomial h = gcd(a.poly, b.poly);
  if (h.degree() <= 0) return false;
  mpq_class lo = a.lo > b.lo ? a.lo : b.lo;
  mpq_class hi = a.hi < b.hi ? a.hi : b.hi;
  if (!(lo < hi)) return false;
  SturmChain chain(square_free(h));
  int n = chain.count(lo, hi);
  if (chain.base()(hi) == 0) --n;
  return n > 0;
}

int sign_at(const Polynomial& g, RealRoot& r) {
  if (g.is_zero()) return 0;
  if (r.exact()) return sgn(g(r.lo));
  Polynomial h = gcd(g, r.poly);
  if (h.degree() > 0) {
    SturmChain hc(square_free(h));
    int n = hc.count(r.lo, r.hi);
    if (hc.base()(r.hi) == 0) --n;
    if (n > 0) return 0;
  }
  Polynomial gs = square_free(g);
  if (gs.degree() <= 0) return sgn(g.leading());
  SturmChain gc(gs);
  while (true) {
    if (gs(r.lo) != 0 && gs(r.hi) != 0 && gc.count(r.lo, r.hi) == 0) {
      return sgn(g(r.lo));
    }
    r.refine(r.width() / 4);
    if (r.exact()) return sgn(g(r.lo));
  }
}

mpq_class decimal_width(int k) {
  mpz_class den = 1;
  for (int i = 0; i < k; ++i) den *= 10;
  return mpq_class(mpz_class(1), den);
}

}  // namespace halfline
