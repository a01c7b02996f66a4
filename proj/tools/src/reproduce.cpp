#include "halfline_cli/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "halfline/error.hpp"
#include "halfline/io.hpp"

namespace halfline::cli {

namespace {

void check(Reproduction& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back(Check{std::move(name), pass, std::move(detail)});
}

std::string fmt(double x) { return shortest_decimal(x); }

}  // namespace

bool Reproduction::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Reproduction three_periodic_singular_half_line() {
  Reproduction rep;
  const Potential p =
      Potential::periodic({Scalar::rational(1, 2), Scalar(2), Scalar::rational(1, 2)});
  const Discriminant d = discriminant(p);

  const mpq_class delta0 = d(mpq_class(0));
  check(rep, "discriminant at 0 is 5/2", delta0 == mpq_class(5, 2), "Delta(0) = " + delta0.get_str());

  const Mat2<mpq_class> m0 = d.monodromy_at(mpq_class(0));
  const Mat2<mpq_class> expected{mpq_class(2), mpq_class(0), mpq_class(0), mpq_class(1, 2)};
  check(rep, "monodromy at 0 is diag(2, 1/2)", m0 == expected,
        "M(0) = " + to_json(m0).dump());

  const FredholmResult fr = is_fredholm(p, mpq_class(0));
  check(rep, "H is Fredholm at 0", fr.fredholm, fr.fredholm ? "all limit operators invertible" : fr.diagnostic);

  const KernelScan ks = two_sided_kernel_scan(p, mpq_class(0));
  check(rep, "H is invertible at 0", ks.status == ConditionStatus::holds,
        "matching determinant " + fmt(ks.matching_determinant));

  const BandSet bs = bands(d);
  const DirichletSpectrumReport dr = dirichlet_eigenvalues(p, bs);
  const auto at_zero = std::find_if(dr.eigenvalues.begin(), dr.eigenvalues.end(),
                                    [](const DirichletEigenvalue& e) { return std::fabs(e.value) < 1e-12; });
  check(rep, "Dirichlet eigenvalue at 0", at_zero != dr.eigenvalues.end() && at_zero->cross_validated,
        at_zero == dr.eigenvalues.end()
            ? "no Dirichlet eigenvalue at 0"
            : "truncation of size " + std::to_string(at_zero->truncation_size) + " within " +
                  fmt(at_zero->truncation_distance));

  const std::vector<double> spec300 = truncation_spectrum(p, 0, 299);
  double nearest = std::numeric_limits<double>::infinity();
  for (double mu : spec300) nearest = std::min(nearest, std::fabs(mu));
  check(rep, "half-line truncation of size 300 has an eigenvalue near 0", nearest < 1e-6,
        "min |mu| = " + fmt(nearest));

  const SectionScheme scheme = SectionScheme::half_line(CutoffSequence::arithmetic(2, 3), 30);
  const StabilityScan scan = stability_scan(p, scheme, 0.0);
  check(rep, "sigma_min of H_+ sections decays by 1/2 per period",
        scan.tail == TailBehavior::geometric_decay && std::fabs(scan.ratio_per_period - 0.5) <= 0.05,
        "fitted ratio " + fmt(scan.ratio_per_period) + ", tail " + std::string(to_string(scan.tail)));

  const LimitOperatorSet los = limit_operators(p);
  check(rep, "three limit operators", los.plus.size() == 3 && los.minus.size() == 3,
        std::to_string(los.plus.size()) + " on the right, " + std::to_string(los.minus.size()) + " on the left");

  const ApplicabilityVerdict half = fsm_applicability(p, SectionSide::half_line, mpq_class(0));
  const bool d_fails = !half.conditions.empty() && half.conditions.front().status == ConditionStatus::fails;
  check(rep, "finite sections of H_+ not applicable", half.overall == Applicability::not_applicable && d_fails,
        "overall " + std::string(to_string(half.overall)));

  rep.data["discriminant"] = to_json(d);
  rep.data["bands"] = to_json(bs);
  rep.data["limit_operators"] = to_json(los);
  rep.data["half_line_applicability"] = to_json(half);
  rep.data["stability"] = to_json(scan);
  rep.files["dirichlet.json"] = dump(to_json(dr));
  rep.files["stability.csv"] = stability_csv(scan);
  return rep;
}

Reproduction eventually_periodic_kernel() {
  Reproduction rep;
  const std::vector<long> right_word = {1, 0, 1, 0, 1};
  const std::vector<long> left_word = {1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1};
  std::vector<Scalar> rw(right_word.begin(), right_word.end());
  std::vector<Scalar> lw(left_word.begin(), left_word.end());
  const Potential p = Potential::eventually_periodic(lw, {}, 0, rw);

  const mpz_class zero(0);
  const Mat2<mpz_class> t0 = transfer_step<mpz_class>(zero, mpz_class(0));
  const Mat2<mpz_class> t1 = transfer_step<mpz_class>(zero, mpz_class(1));
  const Mat2<mpz_class> t0inv = t0.adjugate(), t1inv = t1.adjugate();
  check(rep, "T0 = T0^-3", t0 == t0inv * t0inv * t0inv, "T0 = " + to_json(t0).dump());
  check(rep, "T1 = T1^-2", t1 == t1inv * t1inv, "T1 = " + to_json(t1).dump());

  const Mat2<mpz_class> mr = transfer_product_as<mpz_class>(p, zero, 0, 4);
  const Mat2<mpz_class> ml = transfer_product_as<mpz_class>(p, zero, -12, -1);
  check(rep, "trace of T1 T0 T1 T0 T1 is -3", mr.trace() == -3 && mr == t1 * t0 * t1 * t0 * t1,
        "M_R = " + to_json(mr).dump());
  check(rep, "left monodromy inverts the right one", ml * mr == Mat2<mpz_class>::identity(),
        "M_L = " + to_json(ml).dump());

  // Contracting eigenvalue of M_R and its eigenvector (1, lambda).
  const double lambda = (-3.0 + std::sqrt(5.0)) / 2.0;
  auto v = [&](Index n) { return p.eval_double(n); };

  std::vector<double> right_block(6);  // x_{-1}, x_0, ..., x_4
  right_block[0] = 1.0;
  right_block[1] = lambda;
  for (Index j = 0; j < 4; ++j)
    right_block[j + 2] = -v(j) * right_block[j + 1] - right_block[j];
  std::vector<double> left_block(13);  // x_{-12}, ..., x_0
  left_block[12] = lambda;
  left_block[11] = 1.0;
  for (Index n = -1; n >= -11; --n) {
    auto at = [&](Index m) -> double& { return left_block[static_cast<std::size_t>(m + 12)]; };
    at(n - 1) = -v(n) * at(n) - at(n + 1);
  }
  auto x = [&](Index n) -> double {
    if (n >= 0) {
      Index k = n / 5, j = n % 5;
      return std::pow(lambda, static_cast<double>(k)) * right_block[static_cast<std::size_t>(j + 1)];
    }
    Index k = (-n - 1) / 12;  // n = m - 12 k with m in [-12, -1]
    Index m = n + 12 * k;
    return std::pow(lambda, static_cast<double>(k)) * left_block[static_cast<std::size_t>(m + 12)];
  };

  double res2 = 0.0, norm2x = 0.0;
  std::string csv = "n,x_n\n";
  for (Index n = -240; n <= 100; ++n) {
    double hx = x(n - 1) + v(n) * x(n) + x(n + 1);
    res2 += hx * hx;
    norm2x += x(n) * x(n);
    csv += std::to_string(n) + "," + fmt(x(n)) + "\n";
  }
  const double rel = std::sqrt(res2) / std::sqrt(norm2x);
  check(rep, "kernel vector residual on [-240, 100]", rel < 1e-10, "||Hx|| / ||x|| = " + fmt(rel));

  // Independent step-by-step recursions in both directions.
  std::vector<double> fwd = {1.0, lambda};  // x_{-1}, x_0, ...
  for (Index n = 0; n < 40; ++n) fwd.push_back(-v(n) * fwd.back() - fwd[fwd.size() - 2]);
  std::vector<double> bwd = {lambda, 1.0};  // x_0, x_{-1}, ...
  for (Index n = -1; n > -96; --n) bwd.push_back(-v(n) * bwd.back() - bwd[bwd.size() - 2]);
  double worst = 0.0;
  for (Index k = 1; k <= 8; ++k) {
    double xr = fwd[static_cast<std::size_t>(5 * k + 1)];
    double xl = bwd[static_cast<std::size_t>(12 * k)];
    worst = std::max(worst, std::fabs(xl - xr));
  }
  check(rep, "x_{-12k} = x_{5k} for k = 1..8", worst < 1e-10, "max deviation " + fmt(worst));

  const double ratio = std::fabs(x(5) / x(0));
  check(rep, "decay ratio per right period is (3 - sqrt5)/2",
        std::fabs(ratio - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-12, "|x_5 / x_0| = " + fmt(ratio));

  const ApplicabilityVerdict full = fsm_applicability(p, SectionSide::full_line, mpq_class(0));
  check(rep, "kernel scan reports H not invertible",
        !full.conditions.empty() && full.conditions.front().status == ConditionStatus::fails,
        full.conditions.empty() ? "" : full.conditions.front().diagnostic);

  rep.data["right_monodromy"] = to_json(mr);
  rep.data["left_monodromy"] = to_json(ml);
  rep.data["lambda"] = lambda;
  rep.data["relative_residual"] = rel;
  rep.data["full_line_applicability"] = to_json(full);
  rep.files["kernel.csv"] = csv;
  return rep;
}

std::vector<int> fibonacci_substitution_word(std::size_t count) {
  std::vector<int> w = {1};
  while (w.size() < count) {
    std::vector<int> next;
    next.reserve(w.size() * 2);
    for (int c : w) {
      if (c == 1) {
        next.push_back(1);
        next.push_back(0);
      } else {
        next.push_back(1);
      }
    }
    w = std::move(next);
  }
  w.resize(count);
  return w;
}

Reproduction fibonacci_prefix(std::int64_t count) {
  if (count < 5) throw InvalidInput("fibonacci-prefix: count must be at least 5");
  Reproduction rep;
  const std::vector<int> oracle = fibonacci_substitution_word(static_cast<std::size_t>(count));
  std::int64_t mismatches = 0;
  std::optional<std::int64_t> first;
  std::string csv = "n,exact,substitution\n";
  for (std::int64_t n = 1; n <= count; ++n) {
    int exact = fibonacci_value(n);
    int sub = oracle[static_cast<std::size_t>(n - 1)];
    if (exact != sub) {
      ++mismatches;
      if (!first) first = n;
    }
    csv += std::to_string(n) + "," + std::to_string(exact) + "," + std::to_string(sub) + "\n";
  }
  check(rep, "exact coding equals the substitution word on 1.." + std::to_string(count), mismatches == 0,
        mismatches == 0 ? "0 mismatches" : std::to_string(mismatches) + " mismatches, first at n = " + std::to_string(*first));
  std::vector<int> prefix;
  for (Index n = 1; n <= 5; ++n) prefix.push_back(fibonacci_value(n));
  check(rep, "prefix 1,0,1,1,0", prefix == std::vector<int>{1, 0, 1, 1, 0}, json(prefix).dump());
  rep.data["count"] = count;
  rep.data["mismatches"] = mismatches;
  rep.files["fibonacci.csv"] = csv;
  return rep;
}

Reproduction integer_avoidance(std::uint64_t seed, std::int64_t count) {
  if (count < 1) throw InvalidInput("integer-avoidance: count must be positive");
  Reproduction rep;
  std::mt19937_64 rng(seed);
  std::int64_t tested = 0, violations = 0, m12_zero = 0;
  json failures = json::array();
  for (std::int64_t i = 0; i < count; ++i) {
    const std::size_t period = 1 + rng() % 8;
    std::vector<long> w(period);
    for (long& x : w) x = static_cast<long>(rng() % 11) - 5;
    const Potential p = Potential::periodic_integers(w);
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    for (long z = *lo - 3; z <= *hi + 3; ++z) {
      MonodromyCertificate c = monodromy_dirichlet_test(p, mpz_class(z));
      if (c.verdict == MonodromyVerdict::not_gap) continue;
      ++tested;
      if (c.m12 == 0) ++m12_zero;
      if (c.dirichlet_eigenvalue || !c.unit_m22_when_m12_zero) {
        ++violations;
        if (failures.size() < 10) failures.push_back({{"word", w}, {"certificate", to_json(c)}});
      }
    }
  }
  check(rep, "no integer Dirichlet eigenvalue", violations == 0,
        std::to_string(tested) + " (potential, z) pairs in gaps, " + std::to_string(violations) + " violations");
  rep.data["seed"] = seed;
  rep.data["potentials"] = count;
  rep.data["gap_points_tested"] = tested;
  rep.data["m12_zero_events"] = m12_zero;
  rep.data["violations"] = violations;
  rep.data["failures"] = failures;
  return rep;
}

const std::vector<std::string>& reproduction_names() {
  static const std::vector<std::string> names = {"example-4-1", "example-4-2", "fibonacci-prefix",
                                                 "integer-avoidance"};
  return names;
}

CommandResult cmd_reproduce(const ExperimentConfig& cfg) {
  if (!cfg.name) throw InvalidInput("reproduce: a reproduction name is required");
  const std::string& name = *cfg.name;
  Reproduction r;
  if (name == "example-4-1")
    r = three_periodic_singular_half_line();
  else if (name == "example-4-2")
    r = eventually_periodic_kernel();
  else if (name == "fibonacci-prefix")
    r = fibonacci_prefix(cfg.count.value_or(10000));
  else if (name == "integer-avoidance")
    r = integer_avoidance(cfg.seed, cfg.count.value_or(1000));
  else
    throw InvalidInput("reproduce: unknown name '" + name + "'");

  CommandResult res;
  res.checks = r.checks;
  json checks = json::array();
  for (const Check& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json doc = {{"name", name}, {"pass", r.passed()}, {"checks", checks}, {"data", r.data}};
  const auto main_file = cfg.out / (name + ".json");
  write_file_atomic(main_file, dump(doc));
  res.files.push_back(main_file);
  for (const auto& [file, text] : r.files) {
    write_file_atomic(cfg.out / file, text);
    res.files.push_back(cfg.out / file);
  }
  std::size_t passed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  res.message = name + ": " + std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " checks passed";
  res.exit_code = r.passed() ? kPass : kCheckFailed;
  return res;
}

}  // namespace halfline::cli
