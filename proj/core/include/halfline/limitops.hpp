#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halfline/potential.hpp"
#include "halfline/spectral.hpp"

namespace halfline {

/// A periodic limit operator S^{-h} H S^h along h = residue (mod period),
/// h -> +inf (plus side) or h -> -inf (minus side).
struct LimitOperator {
  Potential potential;
  Index residue = 0;
  Index modulus = 1;
};

struct LimitOperatorSet {
  std::vector<LimitOperator> minus;
  std::vector<LimitOperator> plus;
};

/// All cyclic shifts of the left and right words as two-sided periodic
/// potentials, duplicates merged. Throws InvalidInput unless p is eventually
/// periodic.
LimitOperatorSet limit_operators(const Potential& p);

struct FredholmResult {
  bool fredholm = false;
  /// |Delta(z)| == 2 exactly for the witness.
  bool band_edge = false;
  std::optional<LimitOperator> witness;
  std::string witness_side;  // "minus" or "plus"
  /// Delta of the left and right periodic parts at z.
  mpq_class trace_minus;
  mpq_class trace_plus;
  std::string diagnostic;
};

/// H - zI is Fredholm iff every limit operator is invertible, decided by the
/// exact sign of |Delta(z)| - 2 on each side.
FredholmResult is_fredholm(const Potential& p, const mpq_class& z);

/// Union of the band sets of all limit operators.
BandSet essential_spectrum(const Potential& p);

enum class ConditionStatus { holds, fails, undetermined };
std::string_view to_string(ConditionStatus s);

enum class Applicability { applicable, not_applicable, undetermined };
std::string_view to_string(Applicability a);

struct ConditionResult {
  char label = 'a';  // (a)-(c) full line, (d)-(e) half line
  std::string requirement;
  ConditionStatus status = ConditionStatus::holds;
  std::string diagnostic;
  /// Audit trail: exact rationals as "p/q", floats as shortest decimals.
  std::vector<std::pair<std::string, std::string>> certificate;
};

struct ApplicabilityVerdict {
  SectionSide side = SectionSide::full_line;
  mpq_class z;
  std::vector<ConditionResult> conditions;
  Applicability overall = Applicability::undetermined;
};

/// Invertibility conditions for the finite section method: (a) H - z,
/// (b) L_+ - z for L in Lim_-, (c) R_- - z for R in Lim_+ on the full line;
/// (d) H_+ - z and (e) R_- - z on the half line.
ApplicabilityVerdict fsm_applicability(const Potential& p, SectionSide side, const mpq_class& z);

/// Exact injectivity test for the compression of H - z to [0, inf) when v is
/// periodic from some index on. Fills `cert`; returns holds / fails.
ConditionStatus half_line_invertibility(const Potential& p, const mpq_class& z,
                                        std::vector<std::pair<std::string, std::string>>& cert,
                                        std::string& diagnostic);

/// Result of the numeric two-sided kernel scan for H - z.
struct KernelScan {
  double matching_determinant = 0.0;
  bool suspect = false;
  /// sigma_min of centred sections of growing size (only when suspect).
  std::vector<std::pair<Index, double>> sigma_trail;
  ConditionStatus status = ConditionStatus::undetermined;
};

/// Shoots the decaying solutions in from both ends of an eventually periodic
/// potential and compares their directions across the core; |det| < 1e-8 is
/// a kernel suspect, confirmed or rejected by a sigma_min scan.
KernelScan two_sided_kernel_scan(const Potential& p, const mpq_class& z);

}  // namespace halfline
