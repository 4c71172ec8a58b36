#include "eqflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eqflow/errors.hpp"

namespace eqflow {

namespace {

void put(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

std::vector<double> split_numbers(const std::string& line, std::size_t skip) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  std::size_t idx = 0;
  while (std::getline(ss, cell, ',')) {
    if (idx++ < skip) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ConfigError("snapshot csv: bad number '" + cell + "'");
    }
  }
  return out;
}

std::string modulation_name(TimeModulation::Kind kind) {
  switch (kind) {
    case TimeModulation::Kind::Constant: return "Constant";
    case TimeModulation::Kind::Linear: return "Linear";
    case TimeModulation::Kind::Sinusoid: return "Sinusoid";
    case TimeModulation::Kind::Relaxation: return "Relaxation";
  }
  return "Constant";
}

TimeModulation::Kind modulation_kind(const std::string& name) {
  for (auto kind : {TimeModulation::Kind::Constant, TimeModulation::Kind::Linear, TimeModulation::Kind::Sinusoid,
                    TimeModulation::Kind::Relaxation}) {
    if (modulation_name(kind) == name) return kind;
  }
  throw ConfigError("unknown modulation '" + name + "'");
}

}  // namespace

std::string snapshot_csv(const SnapshotSeries& series) {
  std::string out = "time";
  for (double r : series.grid->nodes()) {
    out += ',';
    put(out, r);
  }
  out += '\n';
  for (const auto& s : series.snapshots) {
    put(out, s.time);
    for (double v : s.values) {
      out += ',';
      put(out, v);
    }
    out += '\n';
  }
  return out;
}

SnapshotTable parse_snapshot_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  SnapshotTable t;
  if (!std::getline(ss, line) || line.rfind("time,", 0) != 0) throw ConfigError("snapshot csv: missing header");
  t.radii = split_numbers(line, 1);
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    auto row = split_numbers(line, 0);
    if (row.size() != t.radii.size() + 1) throw ConfigError("snapshot csv: row width mismatch");
    t.times.push_back(row.front());
    t.values.emplace_back(row.begin() + 1, row.end());
  }
  return t;
}

std::string events_jsonl(const std::vector<RunEvent>& events) {
  std::string out;
  for (const auto& e : events) {
    Json j;
    j["time"] = e.time;
    j["kind"] = e.kind;
    j["detail"] = e.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

Json make_report(const std::string& kind, const Json& body) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["report"] = kind;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

Json to_json(const OrderingReport& r) {
  return Json{{"verdict", to_string(r.verdict)}, {"pairs_checked", r.pairs_checked},
              {"max_violation", r.max_violation}, {"worst_time", r.worst_time},
              {"worst_radius", r.worst_radius}, {"tolerance", r.tolerance}, {"note", r.note}};
}

Json to_json(const ChainReport& r) {
  return Json{{"kind", to_string(r.kind)}, {"time", r.time},         {"max_length", r.max_length},
              {"witness", r.witness},      {"witness_nodes", r.witness_nodes}, {"references", r.references}};
}

Json to_json(const ChainSeries& s) {
  Json inc = Json::array();
  for (const auto& [a, b] : s.increases) inc.push_back({a, b});
  return Json{{"verdict", to_string(s.verdict)}, {"times", s.times}, {"lengths", s.lengths}, {"increases", inc}};
}

Json to_json(const MaximumReport& r) {
  return Json{{"verdict", to_string(r.verdict)}, {"level", r.level},
              {"max_interior", r.max_interior},   {"min_margin", r.min_margin},
              {"max_boundary", r.max_boundary},   {"worst_time", r.worst_time},
              {"worst_radius", r.worst_radius}};
}

Json to_json(const EnergyLedger& ledger) {
  Json samples = Json::array();
  for (const auto& s : ledger.samples) {
    samples.push_back({{"time", s.time}, {"energy", s.energy}, {"flux", s.flux},
                       {"dissipation", s.dissipation}, {"residual", s.residual}});
  }
  return Json{{"max_energy", ledger.max_energy()}, {"max_increase", ledger.max_increase()},
              {"max_residual", ledger.max_residual()}, {"samples", samples}};
}

Json to_json(const BlowUpEvent& e) {
  Json times = Json::array();
  for (const auto& s : e.snapshots.snapshots) times.push_back(s.time);
  return Json{{"detect_time", e.detect_time},     {"max_gradient", e.max_gradient},
              {"argmax_node", e.argmax_node},     {"argmax_radius", e.argmax_radius},
              {"trigger", to_string(e.trigger)},  {"threshold", e.threshold},
              {"concentrated", e.concentrated},   {"snapshot_times", times}};
}

Json to_json(const BubbleFit& f) {
  return Json{{"T_n", f.T_n},           {"R_n", f.R_n},
              {"alpha_est", f.alpha_est}, {"sign", f.sign},
              {"m_offset", f.m_offset}, {"sup_error", f.sup_error},
              {"window", {f.rho_lo, f.rho_hi}}, {"window_nodes", f.window_nodes},
              {"max_gradient", f.max_gradient}};
}

Json to_json(const BubbleCount& c) {
  Json iv = Json::array();
  for (const auto& [a, b] : c.intervals) iv.push_back({a, b});
  return Json{{"count", c.count}, {"intervals", iv}};
}

Json to_json(const OriginLimit& o) {
  return Json{{"conclusive", o.conclusive}, {"nearest_m", o.nearest_m}, {"max_deviation", o.max_deviation},
              {"relative_deviation", o.relative_deviation}, {"nodes", o.nodes}};
}

Json to_json(const BoundaryDataSpec& spec) {
  Json j{{"kind", to_string(spec.kind)}, {"k", spec.k}};
  switch (spec.kind) {
    case BoundaryKind::StationaryArctan:
      j["alpha"] = spec.alpha;
      j["sign"] = spec.sign;
      j["offset_m"] = spec.offset_m;
      break;
    case BoundaryKind::FourArctan: j["alpha"] = spec.alpha; break;
    case BoundaryKind::LinearRamp: j["slope"] = spec.slope; break;
    case BoundaryKind::ScaledProfile:
      j["radii"] = spec.sample_radii;
      j["values"] = spec.sample_values;
      break;
    case BoundaryKind::Constant: j["constant"] = spec.constant; break;
  }
  const auto& m = spec.modulation;
  if (m.kind != TimeModulation::Kind::Constant) {
    j["modulation"] = Json{{"kind", modulation_name(m.kind)}, {"rate", m.rate},     {"amplitude", m.amplitude},
                           {"omega", m.omega},               {"target", m.target}, {"timescale", m.timescale}};
  }
  return j;
}

BoundaryDataSpec boundary_spec_from_json(const Json& j) {
  try {
    BoundaryDataSpec s;
    s.kind = boundary_kind_from_string(j.at("kind").get<std::string>());
    s.k = j.value("k", 1);
    s.alpha = j.value("alpha", 1.0);
    s.sign = j.value("sign", 1);
    s.offset_m = j.value("offset_m", 0);
    s.slope = j.value("slope", 0.0);
    s.constant = j.value("constant", 0.0);
    s.sample_radii = j.value("radii", std::vector<double>{});
    s.sample_values = j.value("values", std::vector<double>{});
    if (j.contains("modulation")) {
      const auto& m = j.at("modulation");
      s.modulation.kind = modulation_kind(m.value("kind", std::string("Constant")));
      s.modulation.rate = m.value("rate", 0.0);
      s.modulation.amplitude = m.value("amplitude", 0.0);
      s.modulation.omega = m.value("omega", 0.0);
      s.modulation.target = m.value("target", 1.0);
      s.modulation.timescale = m.value("timescale", 1.0);
    }
    s.check();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("boundary spec: ") + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace eqflow
