#include "halfline/fsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "halfline/error.hpp"

namespace halfline {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Least-squares slope of ys against xs.
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  if (xs.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double den = n * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (n * sxy - sx * sy) / den;
}

std::vector<double> restrict_rhs(const CompactVector& b, Index l, Index r) {
  std::vector<double> out(static_cast<std::size_t>(r - l + 1), 0.0);
  for (Index n = std::max(l, b.start); n <= std::min(r, b.end()); ++n)
    out[static_cast<std::size_t>(n - l)] = b.at(n);
  return out;
}

void require_real(const Potential& p) {
  if (p.regime() == Regime::gaussian_integer)
    throw InvalidInput("finite sections need a real-valued potential");
}

}  // namespace

CutoffSequence CutoffSequence::arithmetic(Index start, Index step) {
  CutoffSequence s;
  s.kind = Kind::arithmetic;
  s.start = static_cast<double>(start);
  s.step = static_cast<double>(step);
  return s;
}

CutoffSequence CutoffSequence::geometric(double start, double ratio) {
  CutoffSequence s;
  s.kind = Kind::geometric;
  s.start = start;
  s.ratio = ratio;
  return s;
}

CutoffSequence CutoffSequence::list(std::vector<Index> values) {
  CutoffSequence s;
  s.kind = Kind::explicit_list;
  s.values = std::move(values);
  return s;
}

std::vector<Index> CutoffSequence::take(std::size_t count) const {
  switch (kind) {
    case Kind::explicit_list:
      return values;
    case Kind::arithmetic: {
      std::vector<Index> out;
      for (std::size_t k = 0; k < count; ++k)
        out.push_back(std::llround(start + step * static_cast<double>(k)));
      return out;
    }
    case Kind::geometric: {
      if (!(ratio > 1.0) || start == 0.0)
        throw InvalidInput("geometric cut-offs need ratio > 1 and a nonzero start");
      std::vector<Index> out;
      double term = start;
      for (std::size_t k = 0; k < count; ++k, term *= ratio) {
        Index v = std::llround(term);
        if (!out.empty()) v = start > 0 ? std::max(v, out.back() + 1) : std::min(v, out.back() - 1);
        out.push_back(v);
      }
      return out;
    }
  }
  return {};
}

std::string_view to_string(CutoffSequence::Kind k) {
  switch (k) {
    case CutoffSequence::Kind::arithmetic: return "arithmetic";
    case CutoffSequence::Kind::geometric: return "geometric";
    case CutoffSequence::Kind::explicit_list: return "explicit";
  }
  return "arithmetic";
}

SectionScheme SectionScheme::half_line(CutoffSequence right, std::size_t rows) {
  SectionScheme s;
  s.side = SectionSide::half_line;
  s.right = std::move(right);
  s.rows = rows;
  return s;
}

SectionScheme SectionScheme::full_line(CutoffSequence left, CutoffSequence right, std::size_t rows) {
  SectionScheme s;
  s.side = SectionSide::full_line;
  s.left = std::move(left);
  s.right = std::move(right);
  s.rows = rows;
  return s;
}

std::vector<std::pair<Index, Index>> SectionScheme::sections() const {
  std::optional<std::size_t> listed;
  auto note = [&](const CutoffSequence& c) {
    if (c.kind == CutoffSequence::Kind::explicit_list)
      listed = listed ? std::min(*listed, c.values.size()) : c.values.size();
  };
  note(right);
  if (side == SectionSide::full_line) {
    if (!left) throw InvalidInput("full_line scheme needs a left cut-off sequence");
    note(*left);
  }
  const std::size_t n = listed.value_or(rows);
  if (n == 0) throw InvalidInput("section scheme has no rows");

  std::vector<Index> rs = right.take(n);
  std::vector<Index> ls = side == SectionSide::full_line ? left->take(n) : std::vector<Index>(n, 0);
  std::vector<std::pair<Index, Index>> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(ls[k] <= rs[k]))
      throw InvalidInput("section " + std::to_string(k) + " is empty: l = " + std::to_string(ls[k]) +
                         ", r = " + std::to_string(rs[k]));
    if (k > 0 && rs[k] <= rs[k - 1])
      throw InvalidInput("right cut-offs must increase strictly (row " + std::to_string(k) + ")");
    if (side == SectionSide::full_line && k > 0 && ls[k] >= ls[k - 1])
      throw InvalidInput("left cut-offs must decrease strictly (row " + std::to_string(k) + ")");
    out.emplace_back(ls[k], rs[k]);
  }
  return out;
}

double CompactVector::at(Index n) const {
  if (n < start || n > end()) return 0.0;
  return values[static_cast<std::size_t>(n - start)];
}

TridiagSolve solve_section(const Potential& p, double z, Index l, Index r,
                           const std::vector<double>& b) {
  require_real(p);
  if (r < l) throw InvalidInput("solve_section: empty section");
  if (static_cast<Index>(b.size()) != r - l + 1)
    throw InvalidInput("solve_section: right-hand side length " + std::to_string(b.size()) +
                       " does not match section size " + std::to_string(r - l + 1));
  for (double v : b)
    if (!std::isfinite(v)) throw InvalidInput("solve_section: right-hand side is not finite");
  return solve(SymTridiag::section(p, l, r, z), b);
}

double ReferenceSolution::at(Index n) const {
  if (n < l || n > r) return 0.0;
  return x[static_cast<std::size_t>(n - l)];
}

namespace {
constexpr Index kEndNudges = 3;
}  // namespace

ReferenceSolution reference_solution(const Potential& p, SectionSide side, double z,
                                     const CompactVector& b, double tol, Index cap) {
  require_real(p);
  if (b.values.empty()) throw InvalidInput("reference_solution: empty right-hand side");
  if (side == SectionSide::half_line && b.start < 0)
    throw InvalidInput("reference_solution: half-line right-hand side must sit at indices >= 0");
  const double scale = std::max(norm2(b.values), std::numeric_limits<double>::min());
  const double abs_tol = tol * scale;

  std::optional<ReferenceSolution> prev;
  std::string last_issue = "no section solved";
  int doublings = 0;
  for (Index h = std::max<Index>(64, static_cast<Index>(b.values.size()));; h *= 2, ++doublings) {
    // A truncation end can sit where a half-line compression has an
    // eigenvalue near z; nudging the ends by a few sites avoids it, and the
    // amplified end mode shows up as tail mass.
    std::optional<ReferenceSolution> best;
    const Index left_nudges = side == SectionSide::full_line ? kEndNudges : 1;
    for (Index dl = 0; dl < left_nudges; ++dl) {
      for (Index dr = 0; dr < kEndNudges; ++dr) {
        ReferenceSolution cur;
        cur.side = side;
        cur.l = side == SectionSide::full_line ? b.start - h - dl : 0;
        cur.r = b.end() + h + dr;
        if (cur.size() > cap)
          throw Inconclusive("reference solution did not converge within " + std::to_string(cap) +
                             " rows (" + last_issue + ")");
        TridiagSolve s;
        try {
          s = solve_section(p, z, cur.l, cur.r, restrict_rhs(b, cur.l, cur.r));
        } catch (const SingularSection&) {
          last_issue = "singular truncation of size " + std::to_string(cur.size());
          continue;
        }
        cur.x = std::move(s.x);
        cur.residual = s.residual;
        cur.doublings = doublings;

        double tail = 0.0;
        const Index band = h / 2;
        for (Index n = cur.r - band + 1; n <= cur.r; ++n) tail += cur.at(n) * cur.at(n);
        if (side == SectionSide::full_line)
          for (Index n = cur.l; n < cur.l + band; ++n) tail += cur.at(n) * cur.at(n);
        cur.tail_mass = std::sqrt(tail);
        if (!best || cur.tail_mass < best->tail_mass) best = std::move(cur);
        if (best->tail_mass < abs_tol) break;
      }
      if (best && best->tail_mass < abs_tol) break;
    }
    if (!best) {
      prev.reset();
      continue;
    }
    ReferenceSolution cur = std::move(*best);

    if (prev) {
      double change = 0.0;
      for (Index n = prev->l; n <= prev->r; ++n) {
        double d = cur.at(n) - prev->at(n);
        change += d * d;
      }
      cur.doubling_change = std::sqrt(change);
      if (cur.tail_mass < abs_tol && cur.doubling_change < abs_tol) return cur;
      last_issue = "tail mass " + shortest_decimal(cur.tail_mass) + ", doubling change " +
                   shortest_decimal(cur.doubling_change);
    } else {
      cur.doubling_change = std::numeric_limits<double>::infinity();
      last_issue = "tail mass " + shortest_decimal(cur.tail_mass);
    }
    prev = std::move(cur);
  }
}

std::string_view to_string(FsmVerdict v) {
  switch (v) {
    case FsmVerdict::applicable_observed: return "applicable_observed";
    case FsmVerdict::failure_observed: return "failure_observed";
    case FsmVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

FsmReport run_fsm(const Potential& p, const SectionScheme& scheme, double z,
                  const CompactVector& b) {
  require_real(p);
  FsmReport rep;
  rep.scheme = scheme;
  rep.z = z;
  const auto secs = scheme.sections();

  std::optional<ReferenceSolution> ref;
  try {
    ref = reference_solution(p, scheme.side, z, b);
    rep.reference_ok = true;
    rep.reference_size = ref->size();
    rep.reference_l = ref->l;
    rep.reference_r = ref->r;
    rep.reference_residual = ref->residual;
  } catch (const Inconclusive& e) {
    rep.reference_failure = e.what();
  }

  for (std::size_t k = 0; k < secs.size(); ++k) {
    auto [l, r] = secs[k];
    FsmRow row;
    row.n = k;
    row.l = l;
    row.r = r;
    row.sigma_min = smallest_singular_value(p, l, r, z);
    row.invertible = row.sigma_min > 0.0;
    row.solution_error = kNaN;
    row.residual = kNaN;
    std::vector<double> x;
    if (row.invertible) {
      try {
        TridiagSolve s = solve_section(p, z, l, r, restrict_rhs(b, l, r));
        row.residual = s.residual;
        x = std::move(s.x);
      } catch (const SingularSection&) {
        row.invertible = false;
      }
    }
    row.inverse_norm = row.invertible ? 1.0 / row.sigma_min : std::numeric_limits<double>::infinity();
    if (row.invertible && ref) {
      double err = 0.0;
      for (Index n = std::min(l, ref->l); n <= std::max(r, ref->r); ++n) {
        double xn = (n >= l && n <= r) ? x[static_cast<std::size_t>(n - l)] : 0.0;
        double d = xn - ref->at(n);
        err += d * d;
      }
      row.solution_error = std::sqrt(err);
    }
    rep.rows.push_back(row);
  }

  const std::size_t count = rep.rows.size();
  const std::size_t burn = std::min(FsmReport::kBurnIn, count);
  for (std::size_t k = burn; k < count; ++k)
    if (!rep.rows[k].invertible) {
      rep.verdict = FsmVerdict::failure_observed;
      rep.reason = std::string(rep.rows[k].sigma_min == 0.0 ? "singular" : "numerically singular") +
                   " section after the first " + std::to_string(FsmReport::kBurnIn) +
                   " rows (sigma_min " + shortest_decimal(rep.rows[k].sigma_min) + ")";
      rep.witness_row = k;
      return rep;
    }

  const std::size_t half = count / 2;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  std::size_t hi_row = half;
  for (std::size_t k = half; k < count; ++k) {
    double v = rep.rows[k].inverse_norm;
    lo = std::min(lo, v);
    if (v > hi) {
      hi = v;
      hi_row = k;
    }
  }
  if (count > 0 && hi >= FsmReport::kSpreadLimit * lo) {
    rep.verdict = FsmVerdict::failure_observed;
    rep.reason = "inverse norms spread by " + shortest_decimal(hi / lo) +
                 "x over the trailing half of rows";
    rep.witness_row = hi_row;
    return rep;
  }

  if (!ref) {
    rep.verdict = FsmVerdict::inconclusive;
    rep.reason = "reference solution unavailable: " + rep.reference_failure;
    return rep;
  }

  bool monotone = true;
  for (std::size_t k = burn; k + 1 < count; ++k) {
    double a = rep.rows[k].solution_error, c = rep.rows[k + 1].solution_error;
    if (!(c <= a || c < FsmReport::kErrorFloor)) monotone = false;
  }
  const double last = rep.rows.back().solution_error;
  if (monotone && last < FsmReport::kErrorTarget) {
    rep.verdict = FsmVerdict::applicable_observed;
    rep.reason = "errors decrease to " + shortest_decimal(last) + ", inverse norm spread " +
                 shortest_decimal(hi / lo) + "x";
    return rep;
  }
  if (last >= FsmReport::kErrorTarget && last >= rep.rows[half].solution_error) {
    rep.verdict = FsmVerdict::failure_observed;
    rep.reason = "solution error not decreasing over the trailing half of rows";
    rep.witness_row = count - 1;
    return rep;
  }
  rep.verdict = FsmVerdict::inconclusive;
  rep.reason = monotone ? "errors decreasing but final error " + shortest_decimal(last) +
                              " above target"
                        : "errors not monotone after the burn-in rows";
  return rep;
}

std::string_view to_string(TailBehavior t) {
  switch (t) {
    case TailBehavior::bounded_below: return "bounded_below";
    case TailBehavior::geometric_decay: return "geometric_decay";
    case TailBehavior::power_decay: return "power_decay";
  }
  return "bounded_below";
}

StabilityScan stability_scan(const Potential& p, const SectionScheme& scheme, double z) {
  require_real(p);
  StabilityScan scan;
  for (auto [l, r] : scheme.sections()) {
    StabilityRow row{r - l + 1, l, r, smallest_singular_value(p, l, r, z)};
    if (row.sigma_min == 0.0) ++scan.singular_rows;
    scan.rows.push_back(row);
  }
  const std::size_t half = scan.rows.size() / 2;
  std::vector<double> xs, logx, ys;
  scan.tail_minimum = std::numeric_limits<double>::infinity();
  for (std::size_t k = half; k < scan.rows.size(); ++k) {
    const auto& row = scan.rows[k];
    scan.tail_minimum = std::min(scan.tail_minimum, row.sigma_min);
    if (row.sigma_min <= 1e-13) continue;
    xs.push_back(static_cast<double>(row.size));
    logx.push_back(std::log(static_cast<double>(row.size)));
    ys.push_back(std::log(row.sigma_min));
  }
  if (xs.size() < 2) return scan;
  scan.log_slope_per_site = ls_slope(xs, ys);
  scan.power_exponent = ls_slope(logx, ys);
  const double period = p.is_periodic() ? static_cast<double>(p.period()) : 1.0;
  scan.ratio_per_period = std::exp(scan.log_slope_per_site * period);
  const double span = xs.back() - xs.front();
  const double total = std::exp(scan.log_slope_per_site * span);
  if (total < 0.1 && scan.ratio_per_period < 0.95)
    scan.tail = TailBehavior::geometric_decay;
  else if (scan.power_exponent < -0.5)
    scan.tail = TailBehavior::power_decay;
  else
    scan.tail = TailBehavior::bounded_below;
  return scan;
}

}  // namespace halfline
