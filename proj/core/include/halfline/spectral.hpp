#pragma once

#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "halfline/exactalg.hpp"
#include "halfline/polynomial.hpp"
#include "halfline/potential.hpp"

namespace halfline {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// A closed band [lower, upper] whose edges are exact algebraic numbers.
struct Band {
  RealRoot lower;
  RealRoot upper;

  double lo() const { return lower.value(); }
  double hi() const { return upper.value(); }
};

/// Finite union of closed bands, ascending and pairwise disjoint, with the
/// bounded open gaps between them.
struct BandSet {
  Index period = 0;  // 0 for unions of several band sets
  std::vector<Band> bands;
  std::vector<Interval> gaps;

  /// Float membership with an outward margin.
  bool contains(double z, double margin = 0.0) const;
  /// Index of the bounded gap containing z (open gap shrunk by margin).
  std::optional<std::size_t> gap_index(double z, double margin = 0.0) const;
  double distance(double z) const;
};

inline const mpq_class& default_edge_width() {
  static const mpq_class w = decimal_width(12);
  return w;
}

/// Bands {z : |Delta(z)| <= 2} from exact Sturm isolation of Delta^2 - 4,
/// edges refined to `width`. Throws std::runtime_error when Delta^2 - 4 has
/// non-real roots.
BandSet bands(const Discriminant& d, const mpq_class& width = default_edge_width());

/// Exact membership: sign(|Delta(z)| - 2) <= 0.
bool in_bands_exact(const Discriminant& d, const mpq_class& z);

/// Merge of several band sets, touching bands decided exactly.
BandSet band_union(const std::vector<BandSet>& sets);

struct DirichletEigenvalue {
  RealRoot root;           // root of M12, isolated exactly
  double value = 0.0;
  double residual_bound = 0.0;  // width of the isolating interval
  std::optional<std::size_t> gap;
  bool boundary_case = false;  // |Delta| == 2 at the root
  double m22_abs = 0.0;
  Index truncation_size = 0;
  double truncation_distance = 0.0;
  bool cross_validated = false;
};

struct DirichletSpectrumReport {
  BandSet band_set;
  std::vector<DirichletEigenvalue> eigenvalues;
  /// Roots of M12 where |Delta| == 2 exactly; reported with both the gap and
  /// the band reading, never counted as eigenvalues.
  std::vector<DirichletEigenvalue> boundary_cases;
  /// Integer potentials: the monodromy test at every integer z in a gap of
  /// [min v - 3, max v + 3].
  std::vector<MonodromyCertificate> integer_certificates;
  std::vector<int> per_gap_count;
  bool at_most_one_per_gap = true;
  bool integers_avoided = true;
  std::vector<std::string> diagnostics;
};

/// Dirichlet eigenvalues of the half-line compression of a periodic exact
/// potential: roots of M12 in gap closures with |M22| < 1, cross-validated
/// against a half-line truncation of size >= 60 p.
DirichletSpectrumReport dirichlet_eigenvalues(const Potential& p, const BandSet& bs);

/// Every eigenvalue of (H)_{l..r}, ascending, to absolute accuracy 1e-12.
std::vector<double> truncation_spectrum(const Potential& p, Index l, Index r);

/// sigma_min of (H - zI)_{l..r}. Exact zero when the section is exactly
/// singular (checked in exact arithmetic for exact potentials and small sections);
/// a provably nonsingular section below bisection resolution reports the
/// smallest normal double instead of zero.
double smallest_singular_value(const Potential& p, Index l, Index r, double z);

enum class SectionSide { half_line, full_line };
std::string_view to_string(SectionSide s);
SectionSide section_side_from_string(std::string_view s);

struct PollutionRow {
  Index size = 0;
  double eigenvalue = 0.0;
  bool in_gap = false;
  std::optional<std::size_t> gap;
};

struct PollutionCluster {
  double center = 0.0;
  std::optional<std::size_t> gap;
  std::vector<Index> sizes;
  bool persistent = false;
};

struct PollutionReport {
  SectionSide side = SectionSide::half_line;
  std::vector<Index> sizes;
  std::vector<PollutionRow> rows;
  std::vector<PollutionCluster> clusters;
  std::vector<int> per_gap_candidates;
  /// Number of eigenvalues within the band margin, per size.
  std::vector<Index> in_band_count;

  static constexpr double kBandMargin = 1e-8;
  static constexpr double kClusterWidth = 1e-4;
};

/// Classifies truncation eigenvalues as in-band or in-gap and clusters the
/// in-gap ones across sizes; clusters present in at least half of the sizes
/// (and at least two) are Dirichlet-eigenvalue candidates. Without
/// record_band_rows only in-gap eigenvalues are computed and listed.
PollutionReport pollution_report(const Potential& p, const BandSet& bs,
                                 const std::vector<Index>& sizes,
                                 SectionSide side = SectionSide::half_line,
                                 bool record_band_rows = true);

/// Section bounds used by pollution reports and scans: [0, n-1] on the half
/// line, [-floor(n/2), n - 1 - floor(n/2)] on the full line.
std::pair<Index, Index> centered_section(Index n, SectionSide side);

}  // namespace halfline
