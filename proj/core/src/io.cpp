#include "halfline/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "halfline/error.hpp"

namespace halfline {

namespace {

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return shortest_decimal(x);
}

json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json word_json(const std::vector<Scalar>& w) {
  json a = json::array();
  for (const Scalar& s : w) a.push_back(to_json(s));
  return a;
}

std::vector<Scalar> word_from(const json& j, const char* field) {
  if (!j.contains(field) || !j.at(field).is_array())
    throw InvalidInput(std::string("potential document needs an array '") + field + "'");
  std::vector<Scalar> out;
  for (const json& x : j.at(field)) out.push_back(scalar_from_json(x));
  return out;
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) && !j.at(key).is_null() ? j.at(key).get<T>() : fallback;
}

json sequence_json(const std::vector<Index>& v) {
  json a = json::array();
  for (Index x : v) a.push_back(x);
  return a;
}

json certificate_json(const std::vector<std::pair<std::string, std::string>>& cert) {
  json o = json::object();
  for (const auto& [k, v] : cert) o[k] = v;
  return o;
}

json limit_operator_json(const LimitOperator& op) {
  return {{"potential", to_json(op.potential)}, {"residue", op.residue}, {"modulus", op.modulus}};
}

}  // namespace

json to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json to_json(const mpq_class& q) { return q.get_str(); }

json to_json(const Scalar& s) {
  return std::visit(
      [](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, mpz_class>) {
          return to_json(v);
        } else if constexpr (std::is_same_v<V, mpq_class>) {
          return to_json(v);
        } else if constexpr (std::is_same_v<V, GaussianInt>) {
          return json::array({to_json(v.re), to_json(v.im)});
        } else {
          return v;
        }
      },
      s.storage());
}

Regime regime_of_json(const json& j) {
  if (j.is_array()) return Regime::gaussian_integer;
  if (j.is_number_integer()) return Regime::integer;
  if (j.is_number_float()) return Regime::floating;
  if (j.is_string()) {
    const auto& t = j.get_ref<const std::string&>();
    if (t.find(',') != std::string::npos) return Regime::gaussian_integer;
    if (t.find('/') != std::string::npos) return Regime::rational;
    if (t.find_first_of(".eEn") != std::string::npos) return Regime::floating;
    return Regime::integer;
  }
  throw InvalidInput("not a scalar: " + j.dump());
}

Scalar scalar_from_json(const json& j, std::optional<Regime> regime) {
  Scalar s;
  if (j.is_array()) {
    if (j.size() != 2) throw InvalidInput("Gaussian integer needs [re, im]: " + j.dump());
    auto part = [](const json& x) {
      Scalar p = scalar_from_json(x);
      if (p.regime() != Regime::integer) throw InvalidInput("Gaussian parts must be integers");
      return p.to_integer();
    };
    s = Scalar(GaussianInt(part(j[0]), part(j[1])));
  } else if (j.is_number_integer()) {
    s = Scalar(mpz_class(j.get<long>()));
  } else if (j.is_number_float()) {
    s = Scalar(j.get<double>());
  } else if (j.is_string()) {
    s = Scalar::parse(j.get_ref<const std::string&>(), regime_of_json(j));
  } else {
    throw InvalidInput("not a scalar: " + j.dump());
  }
  return regime ? s.to_regime(*regime) : s;
}

json to_json(const Polynomial& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

json to_json(const RealRoot& r) {
  return {{"value", r.value()}, {"lo", to_json(r.lo)}, {"hi", to_json(r.hi)},
          {"exact", r.exact()}, {"polynomial", to_json(r.poly)}};
}

json to_json(const Potential& p) {
  json j;
  j["kind"] = p.kind_name();
  j["regime"] = std::string(to_string(p.regime()));
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Potential::Periodic>) {
          j["word"] = word_json(k.word);
          j["phase"] = k.phase;
        } else if constexpr (std::is_same_v<K, Potential::EventuallyPeriodic>) {
          j["left_word"] = word_json(k.left_word);
          j["core"] = word_json(k.core);
          j["start"] = k.core_start;
          j["right_word"] = word_json(k.right_word);
        } else if constexpr (std::is_same_v<K, Potential::Sturmian>) {
          j["offset"] = k.offset;
          j["reflected"] = k.reflected;
        } else if constexpr (std::is_same_v<K, Potential::Explicit>) {
          j["word"] = word_json(k.window);
          j["start"] = k.start;
          j["outside"] = to_json(k.outside);
        } else {
          j["seed"] = k.seed;
          j["values"] = word_json(k.values);
          j["left_length"] = k.left_length ? json(*k.left_length) : json(nullptr);
          j["right_length"] = k.right_length ? json(*k.right_length) : json(nullptr);
          j["outside"] = to_json(k.outside);
          j["offset"] = k.offset;
          j["reflected"] = k.reflected;
        }
      },
      p.kind());
  return j;
}

Potential potential_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("kind")) throw InvalidInput("potential document needs a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    std::optional<Regime> regime;
    if (j.contains("regime")) regime = regime_from_string(j.at("regime").get<std::string>());

    if (kind == "periodic")
      return Potential::periodic(word_from(j, "word"), field_or<Index>(j, "phase", 0), regime);
    if (kind == "eventually_periodic")
      return Potential::eventually_periodic(word_from(j, "left_word"),
                                            j.contains("core") ? word_from(j, "core")
                                                               : std::vector<Scalar>{},
                                            field_or<Index>(j, "start", 0),
                                            word_from(j, "right_word"), regime);
    if (kind == "sturmian" || kind == "fibonacci")
      return Potential::sturmian(field_or<Index>(j, "offset", 0), field_or<bool>(j, "reflected", false));
    if (kind == "explicit") {
      Scalar outside = j.contains("outside") ? scalar_from_json(j.at("outside")) : Scalar(0);
      return Potential::explicit_window(word_from(j, "word"), field_or<Index>(j, "start", 0),
                                        outside, regime);
    }
    if (kind == "random") {
      std::optional<Index> ll, rl;
      if (j.contains("left_length") && !j.at("left_length").is_null()) ll = j.at("left_length").get<Index>();
      if (j.contains("right_length") && !j.at("right_length").is_null()) rl = j.at("right_length").get<Index>();
      std::optional<Scalar> outside;
      if (j.contains("outside")) outside = scalar_from_json(j.at("outside"));
      Potential p = Potential::random(j.at("seed").get<std::uint64_t>(), word_from(j, "values"), ll,
                                      rl, outside, regime);
      bool reflected = field_or<bool>(j, "reflected", false);
      Index offset = field_or<Index>(j, "offset", 0);
      if (reflected) p = reflect(p);
      if (offset != 0) p = shift(p, reflected ? -offset : offset);
      return p;
    }
    throw InvalidInput("unknown potential kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed potential document: ") + e.what());
  }
}

json to_json(const Discriminant& d) {
  json w = json::array();
  for (const auto& v : d.word) w.push_back(to_json(v));
  return {{"period", d.period},
          {"word", w},
          {"trace", to_json(d.trace)},
          {"monodromy", json::array({json::array({to_json(d.monodromy.a11), to_json(d.monodromy.a12)}),
                                     json::array({to_json(d.monodromy.a21), to_json(d.monodromy.a22)})})}};
}

json to_json(const MonodromyCertificate& c) {
  return {{"verdict", std::string(to_string(c.verdict))},
          {"z", to_json(c.z)},
          {"monodromy", to_json(c.monodromy)},
          {"trace", to_json(c.trace)},
          {"m12", to_json(c.m12)},
          {"m22", to_json(c.m22)},
          {"det", to_json(c.det)},
          {"dirichlet_eigenvalue", c.dirichlet_eigenvalue},
          {"unit_m22_when_m12_zero", c.unit_m22_when_m12_zero}};
}

json to_json(const DirichletOrbit& o) {
  json values = json::array();
  for (const auto& v : o.values) values.push_back(to_json(v));
  return {{"start", o.start},         {"z", to_json(o.z)},
          {"values", values},         {"in_ring", o.in_ring},
          {"growth", std::string(to_string(o.growth))},
          {"log_slope", o.log_slope}, {"overflow_warning", o.overflow_warning}};
}

json to_json(const RingValidation& v) {
  json w = json::array();
  for (long c : v.witness) w.push_back(c);
  return {{"valid", v.valid},
          {"violated_condition", v.violated_condition},
          {"reason", v.reason},
          {"witness", w},
          {"witness_modulus", v.witness_modulus},
          {"coefficient_bound", v.coefficient_bound}};
}

json to_json(const BandSet& b) {
  json bands = json::array();
  for (const Band& band : b.bands)
    bands.push_back({{"lo", band.lo()}, {"hi", band.hi()},
                     {"lower_edge", to_json(band.lower)}, {"upper_edge", to_json(band.upper)}});
  json gaps = json::array();
  for (const Interval& g : b.gaps) gaps.push_back(json::array({g.lo, g.hi}));
  return {{"period", b.period}, {"bands", bands}, {"gaps", gaps}};
}

namespace {
json eigen_json(const DirichletEigenvalue& e) {
  return {{"value", e.value},
          {"root", to_json(e.root)},
          {"residual_bound", e.residual_bound},
          {"gap", e.gap ? json(*e.gap) : json(nullptr)},
          {"boundary_case", e.boundary_case},
          {"abs_m22", e.m22_abs},
          {"truncation_size", e.truncation_size},
          {"truncation_distance", number_or_null(e.truncation_distance)},
          {"cross_validated", e.cross_validated}};
}
}  // namespace

json to_json(const DirichletSpectrumReport& r) {
  json eig = json::array(), edge = json::array(), certs = json::array();
  for (const auto& e : r.eigenvalues) eig.push_back(eigen_json(e));
  for (const auto& e : r.boundary_cases) edge.push_back(eigen_json(e));
  for (const auto& c : r.integer_certificates) certs.push_back(to_json(c));
  return {{"bands", to_json(r.band_set)},
          {"eigenvalues", eig},
          {"boundary_cases", edge},
          {"integer_certificates", certs},
          {"per_gap_count", r.per_gap_count},
          {"at_most_one_per_gap", r.at_most_one_per_gap},
          {"integers_avoided", r.integers_avoided},
          {"diagnostics", r.diagnostics}};
}

json to_json(const PollutionReport& r) {
  json clusters = json::array();
  for (const auto& c : r.clusters)
    clusters.push_back({{"center", c.center},
                        {"gap", c.gap ? json(*c.gap) : json(nullptr)},
                        {"sizes", sequence_json(c.sizes)},
                        {"persistent", c.persistent}});
  return {{"side", std::string(to_string(r.side))},
          {"sizes", sequence_json(r.sizes)},
          {"in_band_count", sequence_json(r.in_band_count)},
          {"clusters", clusters},
          {"per_gap_candidates", r.per_gap_candidates},
          {"band_margin", PollutionReport::kBandMargin},
          {"cluster_width", PollutionReport::kClusterWidth}};
}

json to_json(const LimitOperatorSet& s) {
  json minus = json::array(), plus = json::array();
  for (const auto& op : s.minus) minus.push_back(limit_operator_json(op));
  for (const auto& op : s.plus) plus.push_back(limit_operator_json(op));
  return {{"minus", minus}, {"plus", plus}};
}

json to_json(const FredholmResult& f) {
  return {{"fredholm", f.fredholm},
          {"band_edge", f.band_edge},
          {"witness", f.witness ? limit_operator_json(*f.witness) : json(nullptr)},
          {"witness_side", f.witness ? json(f.witness_side) : json(nullptr)},
          {"trace_minus", to_json(f.trace_minus)},
          {"trace_plus", to_json(f.trace_plus)},
          {"diagnostic", f.diagnostic}};
}

json to_json(const ApplicabilityVerdict& v) {
  json conds = json::array();
  for (const auto& c : v.conditions)
    conds.push_back({{"condition", std::string(1, c.label)},
                     {"requirement", c.requirement},
                     {"status", std::string(to_string(c.status))},
                     {"diagnostic", c.diagnostic},
                     {"certificate", certificate_json(c.certificate)}});
  return {{"side", std::string(to_string(v.side))},
          {"z", to_json(v.z)},
          {"conditions", conds},
          {"overall", std::string(to_string(v.overall))}};
}

json to_json(const CutoffSequence& c) {
  switch (c.kind) {
    case CutoffSequence::Kind::arithmetic:
      return {{"kind", "arithmetic"}, {"start", std::llround(c.start)}, {"step", std::llround(c.step)}};
    case CutoffSequence::Kind::geometric:
      return {{"kind", "geometric"}, {"start", c.start}, {"ratio", c.ratio}};
    case CutoffSequence::Kind::explicit_list:
      return {{"kind", "explicit"}, {"values", sequence_json(c.values)}};
  }
  return nullptr;
}

CutoffSequence cutoffs_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "arithmetic")
      return CutoffSequence::arithmetic(j.at("start").get<Index>(), j.at("step").get<Index>());
    if (kind == "geometric")
      return CutoffSequence::geometric(j.at("start").get<double>(), j.at("ratio").get<double>());
    if (kind == "explicit") return CutoffSequence::list(j.at("values").get<std::vector<Index>>());
    throw InvalidInput("unknown cut-off kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed cut-off sequence: ") + e.what());
  }
}

json to_json(const SectionScheme& s) {
  json cut = {{"right", to_json(s.right)}};
  if (s.left) cut["left"] = to_json(*s.left);
  return {{"side", std::string(to_string(s.side))}, {"rows", s.rows}, {"cutoffs", cut}};
}

SectionScheme scheme_from_json(const json& j) {
  try {
    SectionSide side = section_side_from_string(j.at("side").get<std::string>());
    const json& cut = j.at("cutoffs");
    std::size_t rows = field_or<std::size_t>(j, "rows", 20);
    if (side == SectionSide::half_line) return SectionScheme::half_line(cutoffs_from_json(cut.at("right")), rows);
    return SectionScheme::full_line(cutoffs_from_json(cut.at("left")), cutoffs_from_json(cut.at("right")), rows);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed section scheme: ") + e.what());
  }
}

json to_json(const CompactVector& v) { return {{"start", v.start}, {"values", v.values}}; }

CompactVector compact_from_json(const json& j) {
  try {
    CompactVector v{j.at("start").get<Index>(), j.at("values").get<std::vector<double>>()};
    if (v.values.empty()) throw InvalidInput("right-hand side has no values");
    return v;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed right-hand side: ") + e.what());
  }
}

json to_json(const FsmReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"l", row.l},
                    {"r", row.r},
                    {"invertible", row.invertible},
                    {"sigma_min", row.sigma_min},
                    {"inverse_norm", number_or_null(row.inverse_norm)},
                    {"solution_error", number_or_null(row.solution_error)},
                    {"residual", number_or_null(row.residual)}});
  json ref = {{"ok", r.reference_ok}};
  if (r.reference_ok) {
    ref["size"] = r.reference_size;
    ref["l"] = r.reference_l;
    ref["r"] = r.reference_r;
    ref["residual"] = r.reference_residual;
  } else {
    ref["failure"] = r.reference_failure;
  }
  return {{"scheme", to_json(r.scheme)},
          {"z", r.z},
          {"rows", rows},
          {"verdict", std::string(to_string(r.verdict))},
          {"reason", r.reason},
          {"witness_row", r.witness_row ? json(*r.witness_row) : json(nullptr)},
          {"reference", ref}};
}

json to_json(const StabilityScan& s) {
  json rows = json::array();
  for (const auto& row : s.rows)
    rows.push_back({{"size", row.size}, {"l", row.l}, {"r", row.r}, {"sigma_min", row.sigma_min}});
  return {{"rows", rows},
          {"tail", std::string(to_string(s.tail))},
          {"log_slope_per_site", s.log_slope_per_site},
          {"ratio_per_period", s.ratio_per_period},
          {"power_exponent", s.power_exponent},
          {"tail_minimum", number_or_null(s.tail_minimum)},
          {"singular_rows", s.singular_rows}};
}

std::string bands_csv(const BandSet& b) {
  std::ostringstream os;
  os << "kind,index,lo,hi\n";
  for (std::size_t k = 0; k < b.bands.size(); ++k)
    os << "band," << k << ',' << csv_number(b.bands[k].lo()) << ',' << csv_number(b.bands[k].hi()) << '\n';
  for (std::size_t k = 0; k < b.gaps.size(); ++k)
    os << "gap," << k << ',' << csv_number(b.gaps[k].lo) << ',' << csv_number(b.gaps[k].hi) << '\n';
  return os.str();
}

std::string pollution_csv(const PollutionReport& r) {
  std::ostringstream os;
  os << "size,eigenvalue,classification,gap_id\n";
  for (const auto& row : r.rows)
    os << row.size << ',' << csv_number(row.eigenvalue) << ',' << (row.in_gap ? "in_gap" : "in_band")
       << ',' << (row.gap ? static_cast<long>(*row.gap) : -1L) << '\n';
  return os.str();
}

std::string fsm_csv(const FsmReport& r) {
  std::ostringstream os;
  os << "n,l,r,invertible,sigma_min,inverse_norm,solution_error,residual\n";
  for (const auto& row : r.rows)
    os << row.n << ',' << row.l << ',' << row.r << ',' << (row.invertible ? 1 : 0) << ','
       << csv_number(row.sigma_min) << ',' << csv_number(row.inverse_norm) << ','
       << csv_number(row.solution_error) << ',' << csv_number(row.residual) << '\n';
  return os.str();
}

std::string stability_csv(const StabilityScan& s) {
  std::ostringstream os;
  os << "size,l,r,sigma_min\n";
  for (const auto& row : s.rows)
    os << row.size << ',' << row.l << ',' << row.r << ',' << csv_number(row.sigma_min) << '\n';
  return os.str();
}

std::string orbit_csv(const DirichletOrbit& o) {
  std::ostringstream os;
  os << "n,x_n\n";
  for (std::size_t k = 0; k < o.values.size(); ++k)
    os << (o.start - 1 + static_cast<Index>(k)) << ',' << o.values[k].to_string() << '\n';
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

}  // namespace halfline
