// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "halfline/error.hpp"
#include "halfline/exactalg.hpp"
#include "halfline/fsm.hpp"
#include "halfline/limitops.hpp"
#include "halfline/ring.hpp"
#include "halfline/spectral.hpp"
#include "halfline_cli/reproduce.hpp"

using namespace halfline;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

// a + b sqrt5 with rational a, b.
struct QSqrt5 {
  mpq_class a, b;
  friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.a + y.a, x.b + y.b}; }
  friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.a - y.a, x.b - y.b}; }
  friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
    return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a == y.a && x.b == y.b; }
  double value() const { return a.get_d() + b.get_d() * std::sqrt(5.0); }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Potential three_periodic() {
  return Potential::periodic({Scalar::rational(1, 2), 2, Scalar::rational(1, 2)});
}

Outcome criterion_1() {
  Outcome o;
  Potential p = three_periodic();
  Discriminant d = discriminant(p);
  const bool delta = d(0) == mpq_class(5, 2);
  const Mat2<mpq_class> m = d.monodromy_at(0);
  const bool mono = m == Mat2<mpq_class>{2, 0, 0, mpq_class(1, 2)};
  const bool fred = is_fredholm(p, 0).fredholm;

  DirichletSpectrumReport rep = dirichlet_eigenvalues(p, bands(d));
  bool eig = false;
  for (const auto& e : rep.eigenvalues) eig = eig || (e.root.exact() && e.root.lo == 0 && e.cross_validated);

  double nearest = std::numeric_limits<double>::infinity();
  for (double mu : truncation_spectrum(p, 0, 299)) nearest = std::min(nearest, std::fabs(mu));

  StabilityScan scan =
      stability_scan(p, SectionScheme::half_line(CutoffSequence::arithmetic(2, 3), 30), 0.0);
  const bool ratio = std::fabs(scan.ratio_per_period - 0.5) <= 0.05;

  o.pass = delta && mono && fred && eig && nearest < 1e-6 && ratio;
  o.detail = std::string("Delta(0)=") + d(0).get_str() + " M(0)" + (mono ? "=diag(2,1/2)" : " wrong") +
             (fred ? " fredholm" : " not fredholm") + (eig ? " eigenvalue@0 cross-validated" : " no eigenvalue@0") +
             " |mu|_300=" + fmt(nearest) + " ratio=" + fmt(scan.ratio_per_period);
  return o;
}

Outcome criterion_2() {
  Outcome o;
  cli::Reproduction r = cli::eventually_periodic_kernel();
  bool named = true;
  std::string residual, identity;
  for (const auto& c : r.checks) {
    named = named && c.pass;
    if (c.name.find("residual") != std::string::npos) residual = c.detail;
    if (c.name.find("x_{-12k}") != std::string::npos) identity = c.detail;
  }

  // Exact check of x_{-12k} = x_{5k} in Q(sqrt5), from x_{-1} = 1, x_0 = lambda.
  const std::vector<int> right = {1, 0, 1, 0, 1};
  const std::vector<int> left = {1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1};
  auto v = [&](Index n) {
    return n >= 0 ? right[static_cast<std::size_t>(n % 5)]
                  : left[static_cast<std::size_t>(floor_mod(n, 12))];
  };
  const QSqrt5 lambda{mpq_class(-3, 2), mpq_class(1, 2)};
  std::vector<QSqrt5> fwd = {{1, 0}, lambda};
  for (Index n = 0; n < 40; ++n) {
    QSqrt5 next = QSqrt5{-v(n), 0} * fwd.back() - fwd[fwd.size() - 2];
    fwd.push_back(next);
  }
  std::vector<QSqrt5> bwd = {lambda, {1, 0}};
  for (Index n = -1; n > -96; --n) {
    QSqrt5 next = QSqrt5{-v(n), 0} * bwd.back() - bwd[bwd.size() - 2];
    bwd.push_back(next);
  }
  bool exact = true;
  double worst = 0.0;
  for (Index k = 1; k <= 8; ++k) {
    const QSqrt5& xr = fwd[static_cast<std::size_t>(5 * k + 1)];
    const QSqrt5& xl = bwd[static_cast<std::size_t>(12 * k)];
    exact = exact && xr == xl;
    worst = std::max(worst, std::fabs(xr.value() - xl.value()));
  }
  o.pass = named && exact && worst < 1e-10;
  o.detail = "trace -3, T0=T0^-3, T1=T1^-2; " + residual + "; " + identity +
             (exact ? "; exact in Q(sqrt5)" : "; exact identity broken");
  return o;
}

Outcome criterion_3() {
  Outcome o;
  std::mt19937_64 rng(20240917);
  long tested = 0, violations = 0, m12_zero = 0, trace_mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<long> w(1 + rng() % 8);
    for (auto& x : w) x = static_cast<long>(rng() % 11) - 5;
    Potential p = Potential::periodic_integers(w);
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    for (long z = *lo - 3; z <= *hi + 3; ++z) {
      // Independent 64-bit trace: entries stay below 14^8.
      long a = 1, b = 0, c = 0, d = 1;
      for (long vn : w) {
        long na = c, nb = d, nc = -a + (z - vn) * c, nd = -b + (z - vn) * d;
        a = na; b = nb; c = nc; d = nd;
      }
      if (std::labs(a + d) <= 2) continue;
      ++tested;
      MonodromyCertificate cert = monodromy_dirichlet_test(p, mpz_class(z));
      if (cert.trace != a + d || cert.m12 != b || cert.m22 != d) ++trace_mismatch;
      if (cert.m12 == 0) {
        ++m12_zero;
        if (abs(cert.m22) != 1) ++violations;
      }
      if (cert.dirichlet_eigenvalue || !cert.unit_m22_when_m12_zero ||
          cert.verdict == MonodromyVerdict::not_gap)
        ++violations;
    }
  }
  o.pass = violations == 0 && trace_mismatch == 0 && tested > 0;
  o.detail = std::to_string(tested) + " gap points, " + std::to_string(m12_zero) + " with M12=0, " +
             std::to_string(violations) + " violations, " + std::to_string(trace_mismatch) + " trace mismatches";
  return o;
}

// Distance from 0 to the bands plus every Dirichlet eigenvalue of the
// half-line compressions of all shifts and reflected shifts.
double compression_distance(const Potential& p, const BandSet& bs) {
  double dist = bs.distance(0.0);
  for (Index j = 0; j < p.period(); ++j) {
    for (const Potential& q : {shift(p, j), reflect(shift(p, j))}) {
      DirichletSpectrumReport r = dirichlet_eigenvalues(q, bands(discriminant(q)));
      for (const auto& e : r.eigenvalues) dist = std::min(dist, std::fabs(e.value));
    }
  }
  return dist;
}

Outcome criterion_4() {
  Outcome o;
  std::mt19937_64 rng(4242);
  int runs = 0, applicable = 0, bound_ok = 0, bound_ok_compressions = 0;
  std::vector<std::string> examples;
  while (runs < 120) {
    std::vector<long> w(1 + rng() % 8);
    for (auto& x : w) x = static_cast<long>(rng() % 11) - 5;
    Potential p = Potential::periodic_integers(w);
    Discriminant d = discriminant(p);
    const mpq_class t = d(0);
    if (t * t <= 4) continue;
    BandSet bs = bands(d);

    std::vector<Index> ls, rs;
    Index l = -static_cast<Index>(1 + rng() % 10), r = static_cast<Index>(1 + rng() % 10);
    for (int k = 0; k < 24; ++k) {
      ls.push_back(l);
      rs.push_back(r);
      l -= static_cast<Index>(1 + rng() % 25);
      r += static_cast<Index>(1 + rng() % 25);
    }
    auto scheme = SectionScheme::full_line(CutoffSequence::list(ls), CutoffSequence::list(rs), 0);
    FsmReport rep = run_fsm(p, scheme, 0.0, CompactVector::unit(0));
    ++runs;

    double tail = std::numeric_limits<double>::infinity();
    for (std::size_t k = rep.rows.size() / 2; k < rep.rows.size(); ++k)
      tail = std::min(tail, rep.rows[k].sigma_min);
    const double dist = bs.distance(0.0);
    const bool ok = tail >= 0.5 * dist;
    if (rep.verdict == FsmVerdict::applicable_observed) ++applicable;
    if (ok) ++bound_ok;
    if (tail >= 0.5 * compression_distance(p, bs)) ++bound_ok_compressions;
    if ((rep.verdict != FsmVerdict::applicable_observed || !ok) && examples.size() < 3) {
      std::string word;
      for (long x : w) word += std::to_string(x) + " ";
      examples.push_back("word [" + word + "] " + std::string(to_string(rep.verdict)) + " tail " + fmt(tail) +
                         " dist " + fmt(dist));
    }
  }
  o.pass = applicable == runs && bound_ok == runs;
  o.detail = std::to_string(applicable) + "/" + std::to_string(runs) + " applicable_observed, " +
             std::to_string(bound_ok) + "/" + std::to_string(runs) + " with sigma tail >= 0.5 dist(0, bands)";
  o.notes.push_back("diagnostic: " + std::to_string(bound_ok_compressions) + "/" + std::to_string(runs) +
                    " with sigma tail >= 0.5 dist(0, bands and half-line Dirichlet eigenvalues)");
  for (auto& e : examples) o.notes.push_back("example: " + e);
  return o;
}

// Fraction-free Bareiss determinant of an integer matrix.
mpz_class bareiss(std::vector<std::vector<mpz_class>> a) {
  const std::size_t n = a.size();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Outcome criterion_5() {
  Outcome o;
  std::mt19937_64 rng(555);
  auto rational = [&] {
    mpq_class q(static_cast<long>(rng() % 21) - 10, static_cast<long>(1 + rng() % 7));
    q.canonicalize();
    return q;
  };
  long compared = 0, mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Scalar> word(1 + rng() % 6);
    for (auto& s : word) s = Scalar(rational());
    Potential p = Potential::periodic(word, static_cast<Index>(rng() % 6), Regime::rational);
    const mpq_class z = rational();
    for (Index size = 1; size <= 9; ++size) {
      for (Index l = 0; l < static_cast<Index>(word.size()); ++l) {
        const Index r = l + size - 1;
        mpz_class den = z.get_den();
        for (Index k = l; k <= r; ++k) {
          mpz_class dk = p(k).to_rational().get_den();
          mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), dk.get_mpz_t());
        }
        std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(size),
                                              std::vector<mpz_class>(static_cast<std::size_t>(size), 0));
        for (std::size_t i = 0; i < a.size(); ++i) {
          mpq_class diag = (p(l + static_cast<Index>(i)).to_rational() - z) * den;
          a[i][i] = diag.get_num();
          if (i + 1 < a.size()) a[i][i + 1] = a[i + 1][i] = den;
        }
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(size));
        mpq_class brute(bareiss(a), scale);
        brute.canonicalize();
        ++compared;
        if (finite_section_determinant(p, Scalar(z), l, r).to_rational() != brute) ++mismatches;
      }
    }
  }

  Potential four = Potential::periodic_integers({4});
  double worst = 0.0;
  for (Index m = 1; m <= 200; ++m) {
    std::vector<double> ev = truncation_spectrum(four, 0, m - 1);
    std::vector<double> ref;
    for (Index k = 1; k <= m; ++k) ref.push_back(4.0 + 2.0 * std::cos(k * std::numbers::pi / (m + 1)));
    std::sort(ref.begin(), ref.end());
    for (std::size_t i = 0; i < ev.size(); ++i) worst = std::max(worst, std::fabs(ev[i] - ref[i]));
  }
  o.pass = mismatches == 0 && worst < 1e-10;
  o.detail = std::to_string(compared) + " sections, " + std::to_string(mismatches) +
             " determinant mismatches; v=4 max eigenvalue error " + fmt(worst);
  return o;
}

Outcome criterion_6() {
  Outcome o;
  Potential zero = Potential::periodic_integers({0});
  int bad = 0;
  for (Index n = 1; n <= 399; ++n) {
    Scalar d = finite_section_determinant(zero, Scalar(0), 0, n - 1);
    const Scalar expect = n % 2 == 1 ? Scalar(0) : Scalar((n / 2) % 2 == 0 ? 1 : -1);
    if (d.regime() != Regime::integer || !(d == expect)) ++bad;
  }
  o.pass = bad == 0;
  o.detail = "sizes 1..399: " + std::to_string(bad) + " deviations from 0 (odd) / (-1)^k (size 2k)";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  std::vector<int> w = {1};
  while (w.size() < 10000) {
    std::vector<int> next;
    for (int c : w) {
      next.push_back(1);
      if (c == 1) next.push_back(0);
    }
    w = std::move(next);
  }
  int mismatches = 0;
  for (Index n = 1; n <= 10000; ++n)
    if (fibonacci_value(n) != w[static_cast<std::size_t>(n - 1)]) ++mismatches;
  const bool prefix = w[0] == 1 && w[1] == 0 && w[2] == 1 && w[3] == 1 && w[4] == 0;
  const bool z = validate_ring(RingSpec(2), 3.0).valid;
  const bool zi = validate_ring(RingSpec(4), 3.0).valid;
  const RingValidation five = validate_ring(RingSpec(5), 3.0);
  o.pass = mismatches == 0 && prefix && z && zi && !five.valid;
  o.detail = std::to_string(mismatches) + " mismatches on 1..10000" + (prefix ? ", prefix 10110" : ", bad prefix") +
             "; Z " + (z ? "accepted" : "rejected") + ", Z[i] " + (zi ? "accepted" : "rejected") + ", n=5 " +
             (five.valid ? "accepted" : "rejected (" + five.reason + ")");
  return o;
}

Outcome criterion_8() {
  Outcome o;
  Potential p = Potential::eventually_periodic({0}, {}, 0, {4});
  BandSet es = essential_spectrum(p);
  bool edges = es.bands.size() == 1;
  double lo_err = 1, hi_err = 1;
  if (edges) {
    const Band& b = es.bands[0];
    edges = b.lower.width() <= default_edge_width() && b.upper.width() <= default_edge_width() &&
            b.lower.lo <= -2 && -2 <= b.lower.hi && b.upper.lo <= 6 && 6 <= b.upper.hi;
    lo_err = std::fabs(b.lo() + 2.0);
    hi_err = std::fabs(b.hi() - 6.0);
  }
  bool counts = true;
  const auto ep = p.as_eventually_periodic();
  for (const auto* word : {&ep.left_word, &ep.right_word}) {
    BandSet side = bands(discriminant(Potential::periodic(*word)));
    counts = counts && side.bands.size() <= word->size();
  }
  // Band count bound on a spread of periods.
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    std::vector<long> w(1 + rng() % 8);
    for (auto& x : w) x = static_cast<long>(rng() % 11) - 5;
    counts = counts && bands(discriminant(Potential::periodic_integers(w))).bands.size() <= w.size();
  }
  o.pass = edges && counts && lo_err <= 1e-12 && hi_err <= 1e-12;
  o.detail = std::to_string(es.bands.size()) + " component(s), edge errors " + fmt(lo_err) + ", " + fmt(hi_err) +
             (counts ? "; band counts <= period" : "; band count exceeds period");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "three-periodic singular half-line", 5, criterion_1},
      {2, "eventually periodic kernel vector", 1, criterion_2},
      {3, "integer potentials avoid integer Dirichlet eigenvalues", 60, criterion_3},
      {4, "finite sections for integer potentials in a gap at 0", 300, criterion_4},
      {5, "exact determinant and closed-form spectrum oracles", 0, criterion_5},
      {6, "zero potential section singularity pattern", 0, criterion_6},
      {7, "Fibonacci coding and ring validation", 0, criterion_7},
      {8, "essential spectrum of a two-sided step potential", 0, criterion_8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s <= 0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, in_time ? "" : ", over budget");
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
