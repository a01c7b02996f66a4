#include "halfline/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "halfline/error.hpp"
#include "halfline/tridiag.hpp"

namespace halfline {

namespace {

// Exact comparison of two algebraic reals; refines copies of both.
int compare_roots(RealRoot a, RealRoot b) {
  if (same_root(a, b)) return 0;
  mpq_class w = std::max(a.width(), b.width());
  while (true) {
    if (a.hi < b.lo || (a.hi == b.lo && !(a.exact() && b.exact()))) return -1;
    if (b.hi < a.lo || (b.hi == a.lo && !(a.exact() && b.exact()))) return 1;
    if (a.exact() && b.exact()) return a.lo < b.lo ? -1 : 1;
    w /= 2;
    a.refine(w);
    b.refine(w);
  }
}

// Sign of an algebraic real minus a rational.
int compare_root(RealRoot r, const mpq_class& x) {
  if (r.exact()) return r.lo < x ? -1 : (r.lo > x ? 1 : 0);
  if (r.poly(x) == 0 && r.lo < x && x < r.hi) return 0;
  while (true) {
    if (r.hi <= x) return -1;
    if (r.lo >= x) return 1;
    r.refine(r.width() / 2);
    if (r.exact()) return r.lo < x ? -1 : (r.lo > x ? 1 : 0);
  }
}

// Refines neighbouring roots until their intervals are strictly separated and
// returns a rational strictly between them.
mpq_class separating_point(RealRoot& a, RealRoot& b) {
  while (!(a.hi < b.lo)) {
    if (!b.exact()) b.refine(b.width() / 2);
    if (!(a.hi < b.lo) && !a.exact()) a.refine(a.width() / 2);
  }
  return (a.hi + b.lo) / 2;
}

Polynomial discriminant_gap_polynomial(const Discriminant& d) {
  return d.trace * d.trace - Polynomial(4);
}

void require_real(const Potential& p, const char* op) {
  if (p.regime() == Regime::gaussian_integer)
    throw InvalidInput(std::string(op) + ": real-valued potential required");
}

void require_section(Index l, Index r, const char* op) {
  if (r < l) throw InvalidInput(std::string(op) + ": empty section (r < l)");
}

}  // namespace

bool BandSet::contains(double z, double margin) const {
  for (const Band& b : bands)
    if (z >= b.lo() - margin && z <= b.hi() + margin) return true;
  return false;
}

std::optional<std::size_t> BandSet::gap_index(double z, double margin) const {
  for (std::size_t k = 0; k < gaps.size(); ++k)
    if (z > gaps[k].lo + margin && z < gaps[k].hi - margin) return k;
  return std::nullopt;
}

double BandSet::distance(double z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Band& b : bands) {
    if (z >= b.lo() && z <= b.hi()) return 0.0;
    best = std::min({best, std::fabs(z - b.lo()), std::fabs(z - b.hi())});
  }
  return best;
}

BandSet bands(const Discriminant& d, const mpq_class& width) {
  Polynomial f = discriminant_gap_polynomial(d);
  Polynomial sf = square_free(f);
  std::vector<RealRoot> roots = isolate_real_roots(f);
  if (static_cast<int>(roots.size()) != sf.degree())
    throw std::runtime_error("bands: Delta^2 - 4 has non-real roots (" +
                             std::to_string(sf.degree() - static_cast<int>(roots.size())) +
                             " missing); the potential is not real-valued");
  for (RealRoot& r : roots) r.refine(width);

  BandSet out;
  out.period = d.period;
  bool inside = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    int right_sign = 1;  // f > 0 beyond the last root (even degree, positive lead)
    if (i + 1 < roots.size()) {
      mpq_class m = separating_point(roots[i], roots[i + 1]);
      right_sign = sgn(f(m));
    }
    if (!inside) start = i;
    if (right_sign < 0) {
      inside = true;
      continue;
    }
    out.bands.push_back(Band{roots[start], roots[i]});
    inside = false;
  }
  for (std::size_t k = 0; k + 1 < out.bands.size(); ++k)
    out.gaps.push_back(Interval{out.bands[k].hi(), out.bands[k + 1].lo()});
  return out;
}

bool in_bands_exact(const Discriminant& d, const mpq_class& z) {
  mpq_class t = d(z);
  return t * t <= 4;
}

BandSet band_union(const std::vector<BandSet>& sets) {
  std::vector<Band> all;
  for (const BandSet& s : sets) all.insert(all.end(), s.bands.begin(), s.bands.end());
  std::sort(all.begin(), all.end(),
            [](const Band& a, const Band& b) { return compare_roots(a.lower, b.lower) < 0; });
  BandSet out;
  for (Band& b : all) {
    if (!out.bands.empty() && compare_roots(b.lower, out.bands.back().upper) <= 0) {
      if (compare_roots(b.upper, out.bands.back().upper) > 0) out.bands.back().upper = b.upper;
      continue;
    }
    out.bands.push_back(b);
  }
  for (std::size_t k = 0; k + 1 < out.bands.size(); ++k)
    out.gaps.push_back(Interval{out.bands[k].hi(), out.bands[k + 1].lo()});
  return out;
}

DirichletSpectrumReport dirichlet_eigenvalues(const Potential& p, const BandSet& bs) {
  Discriminant d = discriminant(p);
  DirichletSpectrumReport rep;
  rep.band_set = bs;
  rep.per_gap_count.assign(bs.gaps.size(), 0);

  const Polynomial f = discriminant_gap_polynomial(d);
  const Polynomial& m12 = d.monodromy.a12;
  const Polynomial& m22 = d.monodromy.a22;
  const Polynomial unit = m22 * m22 - Polynomial(1);
  const Index period = d.period;

  std::vector<RealRoot> roots;
  if (m12.degree() >= 1) roots = isolate_real_roots(m12);

  for (RealRoot& r : roots) {
    int s = sign_at(f, r);
    if (s < 0) continue;  // inside a band: no l2 solution
    DirichletEigenvalue ev;
    int u = sign_at(unit, r);
    r.refine(default_edge_width());
    ev.root = r;
    ev.value = r.value();
    ev.residual_bound = r.width().get_d();
    ev.m22_abs = std::fabs(m22(ev.value));
    if (s == 0) {
      ev.boundary_case = true;
      rep.boundary_cases.push_back(ev);
      rep.diagnostics.push_back("M12 vanishes at band edge z=" + shortest_decimal(ev.value) +
                                " (|Delta|=2, |M22|=1); boundary case, not an eigenvalue");
      continue;
    }
    if (u >= 0) continue;  // expanding direction

    // Gap k sits between band k and band k+1.
    std::size_t below = 0;
    for (const Band& b : bs.bands)
      if (compare_roots(b.upper, r) < 0) ++below;
    if (below >= 1 && below - 1 < bs.gaps.size()) ev.gap = below - 1;

    // |M22|^(N/p) controls the boundary perturbation of a length-N truncation.
    double per_period = std::max(ev.m22_abs, 1e-300);
    Index periods = 60;
    if (per_period > 0.0 && per_period < 1.0)
      periods = std::max<Index>(60, static_cast<Index>(std::ceil(-30.0 / std::log(per_period))));
    periods = std::min<Index>(periods, std::max<Index>(60, 200000 / period));
    ev.truncation_size = periods * period;
    SymTridiag sec = SymTridiag::section(p, 0, ev.truncation_size - 1);
    std::vector<double> near = sec.eigenvalues_in(ev.value - 1e-5, ev.value + 1e-5);
    ev.truncation_distance = std::numeric_limits<double>::infinity();
    for (double mu : near) {
      bool same_gap = bs.gap_index(mu) == ev.gap;
      if (same_gap) ev.truncation_distance = std::min(ev.truncation_distance, std::fabs(mu - ev.value));
    }
    ev.cross_validated = ev.truncation_distance < 1e-6;
    if (!ev.cross_validated)
      rep.diagnostics.push_back("Dirichlet eigenvalue " + shortest_decimal(ev.value) +
                                " not matched by a half-line truncation of size " +
                                std::to_string(ev.truncation_size));
    if (ev.gap) {
      ++rep.per_gap_count[*ev.gap];
    } else {
      rep.diagnostics.push_back("Dirichlet eigenvalue " + shortest_decimal(ev.value) +
                                " outside every bounded gap");
    }
    rep.eigenvalues.push_back(std::move(ev));
  }

  for (std::size_t k = 0; k < rep.per_gap_count.size(); ++k)
    if (rep.per_gap_count[k] > 1) {
      rep.at_most_one_per_gap = false;
      rep.diagnostics.push_back("gap " + std::to_string(k) + " holds " +
                                std::to_string(rep.per_gap_count[k]) + " Dirichlet eigenvalues");
    }

  if (p.regime() == Regime::integer) {
    for (const DirichletEigenvalue& ev : rep.eigenvalues) {
      mpz_class k(std::lround(ev.value));
      if (m12(mpq_class(k)) == 0 && compare_root(ev.root, mpq_class(k)) == 0) {
        rep.integers_avoided = false;
        rep.diagnostics.push_back("integer Dirichlet eigenvalue " + k.get_str());
      }
    }
    auto [vmin, vmax] = p.value_range();
    for (long z = std::lround(vmin) - 3; z <= std::lround(vmax) + 3; ++z) {
      MonodromyCertificate c = monodromy_dirichlet_test(p, mpz_class(z));
      if (c.verdict == MonodromyVerdict::not_gap) continue;
      if (c.dirichlet_eigenvalue || !c.unit_m22_when_m12_zero) rep.integers_avoided = false;
      rep.integer_certificates.push_back(std::move(c));
    }
  }
  return rep;
}

std::vector<double> truncation_spectrum(const Potential& p, Index l, Index r) {
  require_real(p, "truncation_spectrum");
  require_section(l, r, "truncation_spectrum");
  return SymTridiag::section(p, l, r).eigenvalues(1e-13);
}

double smallest_singular_value(const Potential& p, Index l, Index r, double z) {
  require_real(p, "smallest_singular_value");
  require_section(l, r, "smallest_singular_value");
  if (!std::isfinite(z)) throw InvalidInput("smallest_singular_value: z must be finite");
  Index n = r - l + 1;
  std::optional<bool> exactly_singular;
  if (p.is_exact_real() && n <= 512) {
    mpq_class zq(z);
    if (mpz_sizeinbase(zq.get_den_mpz_t(), 2) <= 21)
      exactly_singular = finite_section_determinant(p, Scalar(zq), l, r).is_zero();
  }
  if (exactly_singular && *exactly_singular) return 0.0;
  double s = SymTridiag::section(p, l, r, z).min_abs_eigenvalue(1e-13);
  // Below bisection resolution but provably nonsingular.
  if (exactly_singular && s == 0.0) s = std::numeric_limits<double>::min();
  return s;
}

std::string_view to_string(SectionSide s) {
  return s == SectionSide::half_line ? "half_line" : "full_line";
}

SectionSide section_side_from_string(std::string_view s) {
  if (s == "half_line") return SectionSide::half_line;
  if (s == "full_line") return SectionSide::full_line;
  throw InvalidInput("unknown side '" + std::string(s) + "' (half_line|full_line)");
}

std::pair<Index, Index> centered_section(Index n, SectionSide side) {
  if (n < 1) throw InvalidInput("section size must be positive");
  if (side == SectionSide::half_line) return {0, n - 1};
  Index l = -(n / 2);
  return {l, l + n - 1};
}

PollutionReport pollution_report(const Potential& p, const BandSet& bs,
                                 const std::vector<Index>& sizes, SectionSide side,
                                 bool record_band_rows) {
  require_real(p, "pollution_report");
  constexpr double margin = PollutionReport::kBandMargin;
  PollutionReport rep;
  rep.side = side;
  rep.sizes = sizes;
  rep.per_gap_candidates.assign(bs.gaps.size(), 0);

  struct Hit {
    double value;
    Index size;
    std::optional<std::size_t> gap;
  };
  std::vector<Hit> hits;

  for (Index n : sizes) {
    auto [l, r] = centered_section(n, side);
    SymTridiag sec = SymTridiag::section(p, l, r);
    std::vector<double> ingap;
    Index total = static_cast<Index>(sec.size());
    if (record_band_rows) {
      for (double e : sec.eigenvalues(1e-13)) {
        if (bs.contains(e, margin)) {
          rep.rows.push_back(PollutionRow{n, e, false, std::nullopt});
        } else {
          ingap.push_back(e);
        }
      }
    } else {
      auto [glo, ghi] = sec.gershgorin();
      std::vector<std::pair<double, double>> windows;
      double prev = glo - 1.0;
      for (const Band& b : bs.bands) {
        windows.push_back({prev, b.lo() - margin});
        prev = b.hi() + margin;
      }
      windows.push_back({prev, std::max(ghi, prev) + 1.0});
      for (auto [a, b] : windows) {
        if (!(a < b)) continue;
        for (double e : sec.eigenvalues_in(a, b, 1e-13))
          if (!bs.contains(e, margin)) ingap.push_back(e);
      }
    }
    for (double e : ingap) {
      auto g = bs.gap_index(e);
      rep.rows.push_back(PollutionRow{n, e, true, g});
      hits.push_back(Hit{e, n, g});
    }
    rep.in_band_count.push_back(total - static_cast<Index>(ingap.size()));
  }

  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.value < b.value; });
  std::size_t need = std::max<std::size_t>(2, (sizes.size() + 1) / 2);
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i + 1;
    while (j < hits.size() && hits[j].value - hits[j - 1].value <= PollutionReport::kClusterWidth) ++j;
    PollutionCluster c;
    double sum = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      sum += hits[k].value;
      c.sizes.push_back(hits[k].size);
    }
    c.center = sum / static_cast<double>(j - i);
    c.gap = bs.gap_index(c.center);
    std::sort(c.sizes.begin(), c.sizes.end());
    c.sizes.erase(std::unique(c.sizes.begin(), c.sizes.end()), c.sizes.end());
    c.persistent = c.sizes.size() >= need;
    if (c.persistent && c.gap) ++rep.per_gap_candidates[*c.gap];
    rep.clusters.push_back(std::move(c));
    i = j;
  }
  return rep;
}

}  // namespace halfline
