#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "halfline/exactalg.hpp"
#include "halfline/fsm.hpp"
#include "halfline/limitops.hpp"
#include "halfline/potential.hpp"
#include "halfline/ring.hpp"
#include "halfline/spectral.hpp"

namespace halfline {

using nlohmann::json;

// Exact integers become JSON integers when they fit in 64 bits and decimal
// strings otherwise; rationals are "p/q" strings, Gaussian integers [re, im]
// pairs, floats shortest round-trip numbers.
json to_json(const Scalar& s);
/// Parses a JSON scalar in its natural regime, converted to `regime` if given.
Scalar scalar_from_json(const json& j, std::optional<Regime> regime = std::nullopt);
/// Regime implied by a JSON scalar (string with '/' is rational, ...).
Regime regime_of_json(const json& j);

json to_json(const mpq_class& q);
json to_json(const mpz_class& z);
json to_json(const Polynomial& p);
json to_json(const RealRoot& r);
template <class T>
json to_json(const Mat2<T>& m) {
  return json::array({json::array({to_json(m.a11), to_json(m.a12)}),
                      json::array({to_json(m.a21), to_json(m.a22)})});
}

json to_json(const Potential& p);
/// {"kind": ..., "regime": ..., ...}; kind-specific fields documented in the
/// README. Throws InvalidInput on malformed documents.
Potential potential_from_json(const json& j);

json to_json(const Discriminant& d);
json to_json(const MonodromyCertificate& c);
json to_json(const DirichletOrbit& o);
json to_json(const RingValidation& v);
json to_json(const BandSet& b);
json to_json(const DirichletSpectrumReport& r);
json to_json(const PollutionReport& r);
json to_json(const LimitOperatorSet& s);
json to_json(const FredholmResult& f);
json to_json(const ApplicabilityVerdict& v);

json to_json(const CutoffSequence& c);
CutoffSequence cutoffs_from_json(const json& j);
/// {"side": "half_line"|"full_line", "rows": n, "cutoffs": {"left": ..., "right": ...}}.
json to_json(const SectionScheme& s);
SectionScheme scheme_from_json(const json& j);

json to_json(const CompactVector& v);
CompactVector compact_from_json(const json& j);

json to_json(const FsmReport& r);
json to_json(const StabilityScan& s);

std::string bands_csv(const BandSet& b);
std::string pollution_csv(const PollutionReport& r);
std::string fsm_csv(const FsmReport& r);
std::string stability_csv(const StabilityScan& s);
/// Columns n, x_n; exact decimal strings in exact regimes.
std::string orbit_csv(const DirichletOrbit& o);

/// Two-space indented JSON followed by a newline.
std::string dump(const json& j);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace halfline
