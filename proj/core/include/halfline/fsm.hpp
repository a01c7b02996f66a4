#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "halfline/potential.hpp"
#include "halfline/spectral.hpp"
#include "halfline/tridiag.hpp"

namespace halfline {

/// One cut-off sequence. Geometric values are rounded and bumped so that
/// their magnitudes strictly increase.
struct CutoffSequence {
  enum class Kind { arithmetic, geometric, explicit_list };
  Kind kind = Kind::arithmetic;
  double start = 0.0;
  double step = 1.0;   // arithmetic
  double ratio = 2.0;  // geometric
  std::vector<Index> values;  // explicit_list

  static CutoffSequence arithmetic(Index start, Index step);
  static CutoffSequence geometric(double start, double ratio);
  static CutoffSequence list(std::vector<Index> values);

  /// First `count` terms.
  std::vector<Index> take(std::size_t count) const;
};

std::string_view to_string(CutoffSequence::Kind k);

struct SectionScheme {
  SectionSide side = SectionSide::half_line;
  std::optional<CutoffSequence> left;  // full line only
  CutoffSequence right;
  std::size_t rows = 20;  // ignored for explicit lists, which set their own length

  static SectionScheme half_line(CutoffSequence right, std::size_t rows);
  static SectionScheme full_line(CutoffSequence left, CutoffSequence right, std::size_t rows);

  /// (l_n, r_n) for every row; validates l_n < r_n, r_n strictly increasing,
  /// and l_n strictly decreasing on the full line. Throws InvalidInput.
  std::vector<std::pair<Index, Index>> sections() const;
};

/// Finitely supported right-hand side: values[k] sits at index start + k.
struct CompactVector {
  Index start = 0;
  std::vector<double> values;

  static CompactVector unit(Index n) { return {n, {1.0}}; }
  Index end() const { return start + static_cast<Index>(values.size()) - 1; }
  double at(Index n) const;
};

/// Solves (H - zI)_{l..r} x = b; b is given on [l, r].
TridiagSolve solve_section(const Potential& p, double z, Index l, Index r,
                           const std::vector<double>& b);

struct ReferenceSolution {
  SectionSide side = SectionSide::full_line;
  Index l = 0;
  Index r = 0;
  std::vector<double> x;  // on [l, r]
  double residual = 0.0;
  double tail_mass = 0.0;
  double doubling_change = 0.0;
  int doublings = 0;

  Index size() const { return r - l + 1; }
  double at(Index n) const;
};

/// Solves on truncations whose margin around the support of b doubles (each
/// end nudged by up to two sites to dodge near-singular truncations) until
/// the solution mass within the outer half of the margin and the change under
/// one more doubling are both below tol. Throws Inconclusive past `cap` rows.
ReferenceSolution reference_solution(const Potential& p, SectionSide side, double z,
                                     const CompactVector& b, double tol = 1e-12,
                                     Index cap = Index{1} << 20);

struct FsmRow {
  std::size_t n = 0;
  Index l = 0;
  Index r = 0;
  bool invertible = false;
  double sigma_min = 0.0;
  double inverse_norm = 0.0;
  double solution_error = 0.0;  // NaN without a reference
  double residual = 0.0;        // NaN for singular rows
};

enum class FsmVerdict { applicable_observed, failure_observed, inconclusive };
std::string_view to_string(FsmVerdict v);

struct FsmReport {
  SectionScheme scheme;
  double z = 0.0;
  std::vector<FsmRow> rows;
  FsmVerdict verdict = FsmVerdict::inconclusive;
  std::string reason;
  std::optional<std::size_t> witness_row;
  bool reference_ok = false;
  std::string reference_failure;
  Index reference_size = 0;
  Index reference_l = 0;
  Index reference_r = 0;
  double reference_residual = 0.0;

  static constexpr std::size_t kBurnIn = 5;
  static constexpr double kErrorTarget = 1e-8;
  static constexpr double kSpreadLimit = 10.0;
  static constexpr double kErrorFloor = 1e-11;
};

/// Runs the finite section method along `scheme` and compares each
/// zero-extended section solution with the reference solution.
FsmReport run_fsm(const Potential& p, const SectionScheme& scheme, double z,
                  const CompactVector& b);

struct StabilityRow {
  Index size = 0;
  Index l = 0;
  Index r = 0;
  double sigma_min = 0.0;
};

enum class TailBehavior { bounded_below, geometric_decay, power_decay };
std::string_view to_string(TailBehavior t);

struct StabilityScan {
  std::vector<StabilityRow> rows;
  TailBehavior tail = TailBehavior::bounded_below;
  /// Fit of log sigma_min against size over the trailing half, zeros excluded.
  double log_slope_per_site = 0.0;
  /// exp(slope * period) for periodic potentials, exp(slope) otherwise.
  double ratio_per_period = 1.0;
  double power_exponent = 0.0;
  double tail_minimum = 0.0;
  std::size_t singular_rows = 0;
};

StabilityScan stability_scan(const Potential& p, const SectionScheme& scheme, double z);

}  // namespace halfline
