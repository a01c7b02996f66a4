#include "halfline_cli/commands.hpp"

#include <algorithm>

#include "halfline/error.hpp"
#include "halfline/io.hpp"

namespace halfline::cli {

namespace {

void write(CommandResult& res, const std::filesystem::path& path, const std::string& text) {
  write_file_atomic(path, text);
  res.files.push_back(path);
}

Potential require_potential(const ExperimentConfig& cfg) {
  if (!cfg.potential) throw InvalidInput(cfg.command + ": config needs a 'potential' document");
  return potential_from_json(*cfg.potential);
}

}  // namespace

double ExperimentConfig::tolerance(const std::string& key, double fallback) const {
  auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  try {
    ExperimentConfig c;
    if (j.contains("command")) c.command = j.at("command").get<std::string>();
    if (j.contains("potential")) c.potential = j.at("potential");
    if (j.contains("z")) {
      const auto& z = j.at("z");
      c.z = z.is_string() ? z.get<std::string>() : z.dump();
    }
    if (j.contains("scheme")) c.scheme = j.at("scheme");
    if (j.contains("rhs")) c.rhs = j.at("rhs");
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    if (j.contains("expect")) c.expect = j.at("expect").get<std::string>();
    if (j.contains("exploratory")) c.exploratory = j.at("exploratory").get<bool>();
    if (j.contains("count")) c.count = j.at("count").get<std::int64_t>();
    if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
    if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed config: ") + e.what());
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j = {{"command", command}, {"z", z}, {"out", out.string()}, {"seed", seed},
                      {"exploratory", exploratory}, {"tolerances", tolerances}};
  if (potential) j["potential"] = *potential;
  if (scheme) j["scheme"] = *scheme;
  if (rhs) j["rhs"] = *rhs;
  if (name) j["name"] = *name;
  if (expect) j["expect"] = *expect;
  if (count) j["count"] = *count;
  if (!sizes.empty()) j["sizes"] = sizes;
  return j;
}

CommandResult cmd_bands(const ExperimentConfig& cfg) {
  Potential p = require_potential(cfg);
  if (!p.is_periodic())
    throw InvalidInput("bands: periodic potential required, got '" + p.kind_name() + "'");
  if (!p.is_exact_real())
    throw InvalidInput("bands: integer or rational potential required for an exact discriminant");

  CommandResult res;
  Discriminant d = discriminant(p);
  BandSet bs = bands(d);
  DirichletSpectrumReport rep = dirichlet_eigenvalues(p, bs);

  json bj = to_json(bs);
  bj["discriminant"] = to_json(d);
  bj["potential"] = to_json(p);
  write(res, cfg.out / "bands.json", dump(bj));
  write(res, cfg.out / "dirichlet.json", dump(to_json(rep)));
  write(res, cfg.out / "bands.csv", bands_csv(bs));
  if (!cfg.sizes.empty()) {
    PollutionReport pr = pollution_report(p, bs, cfg.sizes, SectionSide::half_line);
    write(res, cfg.out / "pollution.json", dump(to_json(pr)));
    write(res, cfg.out / "pollution.csv", pollution_csv(pr));
  }
  res.message = std::to_string(bs.bands.size()) + " band(s), " +
                std::to_string(rep.eigenvalues.size()) + " Dirichlet eigenvalue(s)";
  return res;
}

CommandResult cmd_fsm(const ExperimentConfig& cfg) {
  Potential p = require_potential(cfg);
  if (!cfg.scheme) throw InvalidInput("fsm: config needs a 'scheme' document");
  SectionScheme scheme = scheme_from_json(*cfg.scheme);
  CompactVector b = cfg.rhs ? compact_from_json(*cfg.rhs) : CompactVector::unit(0);
  const double z = Scalar::parse(cfg.z, regime_of_json(json(cfg.z))).to_double();
  const std::vector<std::string> verdicts = {"applicable_observed", "failure_observed", "inconclusive"};
  if (cfg.expect && std::find(verdicts.begin(), verdicts.end(), *cfg.expect) == verdicts.end())
    throw InvalidInput("fsm: unknown expected verdict '" + *cfg.expect + "'");

  CommandResult res;
  FsmReport rep = run_fsm(p, scheme, z, b);
  StabilityScan scan = stability_scan(p, scheme, z);
  json rj = to_json(rep);
  rj["potential"] = to_json(p);
  rj["rhs"] = to_json(b);
  rj["stability"] = to_json(scan);
  rj["exploratory"] = cfg.exploratory;
  write(res, cfg.out / "fsm_report.json", dump(rj));
  write(res, cfg.out / "fsm_report.csv", fsm_csv(rep));
  write(res, cfg.out / "stability.csv", stability_csv(scan));

  const std::string verdict(to_string(rep.verdict));
  res.message = "verdict " + verdict + ": " + rep.reason;
  if (cfg.exploratory) {
    res.exit_code = kPass;
    res.message = "exploratory run, " + res.message;
  } else if (rep.verdict == FsmVerdict::inconclusive) {
    res.exit_code = kInconclusive;
  } else if (cfg.expect && *cfg.expect != verdict) {
    res.exit_code = kCheckFailed;
    res.message += " (expected " + *cfg.expect + ")";
  }
  return res;
}

CommandResult run_command(const ExperimentConfig& cfg) {
  try {
    if (cfg.command == "bands") return cmd_bands(cfg);
    if (cfg.command == "fsm") return cmd_fsm(cfg);
    if (cfg.command == "reproduce") return cmd_reproduce(cfg);
    throw InvalidInput("unknown command '" + cfg.command + "'");
  } catch (const InvalidInput& e) {
    CommandResult res;
    res.exit_code = kUsage;
    res.message = e.what();
    return res;
  } catch (const Inconclusive& e) {
    CommandResult res;
    res.exit_code = kInconclusive;
    res.message = e.what();
    return res;
  }
}

}  // namespace halfline::cli
