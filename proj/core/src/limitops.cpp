#include "halfline/limitops.hpp"

#include <algorithm>
#include <cmath>

#include "halfline/error.hpp"
#include "halfline/exactalg.hpp"
#include "halfline/tridiag.hpp"

namespace halfline {

namespace {

using Cert = std::vector<std::pair<std::string, std::string>>;

Potential::EventuallyPeriodic require_eventually_periodic(const Potential& p, const char* op) {
  if (!p.is_eventually_periodic())
    throw InvalidInput(std::string(op) + ": enumeration undecidable for this class (kind '" +
                       p.kind_name() + "')");
  return p.as_eventually_periodic();
}

void require_exact(const Potential& p, const char* op) {
  if (!p.is_exact_real())
    throw InvalidInput(std::string(op) + ": integer or rational potential required");
}

std::vector<LimitOperator> cyclic_shifts(const std::vector<Scalar>& word, Index anchor) {
  std::vector<LimitOperator> out;
  std::vector<std::vector<Scalar>> seen;
  const Index p = static_cast<Index>(word.size());
  for (Index j = 0; j < p; ++j) {
    auto w = rotate_word(word, j);
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
    seen.push_back(w);
    out.push_back(LimitOperator{Potential::periodic(word, j), floor_mod(anchor + j, p), p});
  }
  return out;
}

Mat2<mpq_class> period_monodromy(const Potential& p, const mpq_class& z, Index from, Index len) {
  return transfer_product_as<mpq_class>(p, z, from, from + len - 1);
}

std::string q(const mpq_class& x) { return x.get_str(); }

// Unit eigenvector of a real 2x2 matrix for the real eigenvalue lambda.
std::pair<double, double> eigenvector(const Mat2<double>& m, double lambda) {
  double x1 = m.a12, y1 = lambda - m.a11;
  double x2 = lambda - m.a22, y2 = m.a21;
  double n1 = std::hypot(x1, y1), n2 = std::hypot(x2, y2);
  if (n1 >= n2) return {x1 / n1, y1 / n1};
  return {x2 / n2, y2 / n2};
}

// Eigenvalues (small, large) in modulus of a det-1 matrix with |trace| > 2.
std::pair<double, double> hyperbolic_eigenvalues(double trace) {
  double root = std::sqrt(trace * trace - 4.0);
  double big = (trace + std::copysign(root, trace)) / 2.0;
  return {1.0 / big, big};
}

ConditionResult aggregate(char label, std::string requirement, const std::vector<LimitOperator>& ops,
                          bool flip, const mpq_class& z) {
  ConditionResult c;
  c.label = label;
  c.requirement = std::move(requirement);
  c.status = ConditionStatus::holds;
  std::vector<std::string> failing;
  for (const LimitOperator& op : ops) {
    Cert cert;
    std::string diag;
    Potential target = flip ? reflect(op.potential) : op.potential;
    ConditionStatus s = half_line_invertibility(target, z, cert, diag);
    std::string tag = "residue " + std::to_string(op.residue) + " mod " + std::to_string(op.modulus);
    for (auto& [k, v] : cert) c.certificate.emplace_back(tag + ": " + k, v);
    if (s == ConditionStatus::fails) {
      c.status = ConditionStatus::fails;
      failing.push_back(tag + " (" + diag + ")");
    }
  }
  if (!failing.empty()) {
    c.diagnostic = "not invertible for";
    for (const auto& f : failing) c.diagnostic += " " + f + ";";
    c.diagnostic.pop_back();
  }
  return c;
}

}  // namespace

LimitOperatorSet limit_operators(const Potential& p) {
  auto ep = require_eventually_periodic(p, "limit_operators");
  LimitOperatorSet out;
  out.minus = cyclic_shifts(ep.left_word, ep.core_start);
  out.plus = cyclic_shifts(ep.right_word, ep.core_end());
  return out;
}

FredholmResult is_fredholm(const Potential& p, const mpq_class& z) {
  auto ep = require_eventually_periodic(p, "is_fredholm");
  require_exact(p, "is_fredholm");
  auto los = limit_operators(p);
  FredholmResult res;
  Potential left = Potential::periodic(ep.left_word);
  Potential right = Potential::periodic(ep.right_word);
  res.trace_minus = period_monodromy(left, z, 0, left.period()).trace();
  res.trace_plus = period_monodromy(right, z, 0, right.period()).trace();
  res.fredholm = true;
  auto check = [&](const mpq_class& t, const std::vector<LimitOperator>& ops, const char* side) {
    if (!res.fredholm) return;
    int s = sgn(mpq_class(t * t - 4));
    if (s > 0) return;
    res.fredholm = false;
    res.band_edge = s == 0;
    res.witness = ops.front();
    res.witness_side = side;
    res.diagnostic = std::string(side) + " limit operator has |Delta(z)| " +
                     (s == 0 ? "= 2 (band edge)" : "< 2") + ", Delta(z) = " + q(t);
  };
  check(res.trace_minus, los.minus, "minus");
  check(res.trace_plus, los.plus, "plus");
  return res;
}

BandSet essential_spectrum(const Potential& p) {
  auto ep = require_eventually_periodic(p, "essential_spectrum");
  require_exact(p, "essential_spectrum");
  if (p.is_periodic()) return bands(discriminant(p));
  BandSet left = bands(discriminant(Potential::periodic(ep.left_word)));
  BandSet right = bands(discriminant(Potential::periodic(ep.right_word)));
  return band_union({left, right});
}

std::string_view to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::holds: return "holds";
    case ConditionStatus::fails: return "fails";
    case ConditionStatus::undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string_view to_string(Applicability a) {
  switch (a) {
    case Applicability::applicable: return "applicable";
    case Applicability::not_applicable: return "not_applicable";
    case Applicability::undetermined: return "undetermined";
  }
  return "undetermined";
}

ConditionStatus half_line_invertibility(const Potential& p, const mpq_class& z, Cert& cert,
                                        std::string& diagnostic) {
  auto ep = require_eventually_periodic(p, "half_line_invertibility");
  require_exact(p, "half_line_invertibility");
  const Index period = static_cast<Index>(ep.right_word.size());
  const Index anchor = std::max<Index>(ep.core_end(), 0);

  Mat2<mpq_class> m = period_monodromy(p, z, anchor, period);
  mpq_class trace = m.trace();
  cert.emplace_back("anchor", std::to_string(anchor));
  cert.emplace_back("trace", q(trace));
  int s = sgn(mpq_class(trace * trace - 4));
  if (s <= 0) {
    diagnostic = s == 0 ? "z is a band edge of the right limit operators"
                        : "z lies in a band of the right limit operators";
    return ConditionStatus::fails;
  }

  // Dirichlet state (x_{anchor-1}, x_anchor) from x_{-1} = 0, x_0 = 1.
  mpq_class u = 0, w = 1;
  if (anchor > 0) transfer_product_as<mpq_class>(p, z, 0, anchor - 1).apply(u, w);
  mpq_class tu = u, tw = w;
  m.apply(tu, tw);
  mpq_class det = u * tw - w * tu;
  cert.emplace_back("state", q(u) + "," + q(w));
  cert.emplace_back("image", q(tu) + "," + q(tw));
  cert.emplace_back("parallel_det", q(det));

  if (p.regime() == Regime::integer && z.get_den() == 1 && p.is_periodic()) {
    auto mc = monodromy_dirichlet_test(p, z.get_num());
    cert.emplace_back("integer_certificate", std::string(to_string(mc.verdict)));
  }

  if (det != 0) return ConditionStatus::holds;
  mpq_class lambda = (u * tu + w * tw) / (u * u + w * w);
  cert.emplace_back("lambda", q(lambda));
  if (abs(lambda) < 1) {
    diagnostic = "Dirichlet state is the contracting eigendirection (lambda = " + q(lambda) + ")";
    return ConditionStatus::fails;
  }
  return ConditionStatus::holds;
}

KernelScan two_sided_kernel_scan(const Potential& p, const mpq_class& z) {
  auto ep = require_eventually_periodic(p, "two_sided_kernel_scan");
  require_exact(p, "two_sided_kernel_scan");
  const Index b = ep.core_start, a = ep.core_end();
  const Index qlen = static_cast<Index>(ep.left_word.size());
  const Index plen = static_cast<Index>(ep.right_word.size());
  auto to_d = [](const Mat2<mpq_class>& m) { return m.map([](const mpq_class& x) { return x.get_d(); }); };

  Mat2<mpq_class> mr = period_monodromy(p, z, a, plen);
  Mat2<mpq_class> ml = period_monodromy(p, z, b - qlen, qlen);
  KernelScan scan;
  mpq_class tr = mr.trace(), tl = ml.trace();
  if (tr * tr <= 4 || tl * tl <= 4) {
    scan.status = ConditionStatus::fails;
    return scan;
  }
  Mat2<double> mrd = to_d(mr), mld = to_d(ml);
  auto [r_small, r_big] = hyperbolic_eigenvalues(mrd.trace());
  auto [l_small, l_big] = hyperbolic_eigenvalues(mld.trace());
  (void)r_big;
  (void)l_small;
  auto vr = eigenvector(mrd, r_small);  // decays to the right
  auto vl = eigenvector(mld, l_big);    // decays to the left
  double u = vl.first, w = vl.second;
  if (a > b) {
    to_d(transfer_product_as<mpq_class>(p, z, b, a - 1)).apply(u, w);
    double n = std::hypot(u, w);
    u /= n;
    w /= n;
  }
  scan.matching_determinant = std::fabs(u * vr.second - w * vr.first);
  scan.suspect = scan.matching_determinant < 1e-8;
  if (!scan.suspect) {
    scan.status = ConditionStatus::holds;
    return scan;
  }
  const double zd = z.get_d();
  const Index centre = (a + b) / 2;
  for (Index n = 64; n <= 4096; n *= 2) {
    double s = smallest_singular_value(p, centre - n / 2, centre - n / 2 + n - 1, zd);
    scan.sigma_trail.emplace_back(n, s);
  }
  const double last = scan.sigma_trail.back().second;
  const double first = scan.sigma_trail.front().second;
  scan.status = (last < 1e-8 && last <= first) ? ConditionStatus::fails
                                               : ConditionStatus::undetermined;
  return scan;
}

ApplicabilityVerdict fsm_applicability(const Potential& p, SectionSide side, const mpq_class& z) {
  require_eventually_periodic(p, "fsm_applicability");
  require_exact(p, "fsm_applicability");
  auto los = limit_operators(p);
  ApplicabilityVerdict v;
  v.side = side;
  v.z = z;

  if (side == SectionSide::full_line) {
    ConditionResult ca;
    ca.label = 'a';
    ca.requirement = "H - z invertible";
    FredholmResult fr = is_fredholm(p, z);
    ca.certificate.emplace_back("trace_minus", q(fr.trace_minus));
    ca.certificate.emplace_back("trace_plus", q(fr.trace_plus));
    if (!fr.fredholm) {
      ca.status = ConditionStatus::fails;
      ca.diagnostic = fr.diagnostic;
    } else if (p.is_periodic()) {
      ca.status = ConditionStatus::holds;
    } else {
      KernelScan ks = two_sided_kernel_scan(p, z);
      ca.status = ks.status;
      ca.certificate.emplace_back("matching_determinant", shortest_decimal(ks.matching_determinant));
      for (auto [n, s] : ks.sigma_trail)
        ca.certificate.emplace_back("sigma_min size " + std::to_string(n), shortest_decimal(s));
      if (ks.status == ConditionStatus::fails)
        ca.diagnostic = "decaying solutions from both ends match: kernel vector";
      else if (ks.status == ConditionStatus::undetermined)
        ca.diagnostic = "matching determinant below 1e-8 but sigma_min scan inconclusive";
    }
    v.conditions.push_back(std::move(ca));
    v.conditions.push_back(aggregate('b', "L_+ - z invertible for all L in Lim_-", los.minus, false, z));
    v.conditions.push_back(aggregate('c', "R_- - z invertible for all R in Lim_+", los.plus, true, z));
  } else {
    ConditionResult cd;
    cd.label = 'd';
    cd.requirement = "H_+ - z invertible";
    cd.status = half_line_invertibility(p, z, cd.certificate, cd.diagnostic);
    v.conditions.push_back(std::move(cd));
    v.conditions.push_back(aggregate('e', "R_- - z invertible for all R in Lim_+", los.plus, true, z));
  }

  bool any_fail = false, any_undetermined = false;
  for (const auto& c : v.conditions) {
    any_fail |= c.status == ConditionStatus::fails;
    any_undetermined |= c.status == ConditionStatus::undetermined;
  }
  v.overall = any_fail ? Applicability::not_applicable
                       : (any_undetermined ? Applicability::undetermined : Applicability::applicable);
  return v;
}

}  // namespace halfline
