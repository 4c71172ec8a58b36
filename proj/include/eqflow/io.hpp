#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqflow/blowup.hpp"
#include "eqflow/energy.hpp"
#include "eqflow/flow.hpp"
#include "eqflow/principles.hpp"

namespace eqflow {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Header "time,<r_0>,...,<r_N>" with the node radii, then one row per snapshot. %.17g throughout.
std::string snapshot_csv(const SnapshotSeries& series);

struct SnapshotTable {
  std::vector<double> radii;
  std::vector<double> times;
  std::vector<std::vector<double>> values;
};

/// Parses the snapshot CSV layout. Throws ConfigError on malformed input.
SnapshotTable parse_snapshot_csv(const std::string& text);

/// One JSON object per line: {"time":..,"kind":..,"detail":..}.
std::string events_jsonl(const std::vector<RunEvent>& events);

/// {"schema_version": 1, "report": kind, ...body}.
Json make_report(const std::string& kind, const Json& body);

Json to_json(const OrderingReport& r);
Json to_json(const ChainReport& r);
Json to_json(const ChainSeries& s);
Json to_json(const MaximumReport& r);
Json to_json(const EnergyLedger& ledger);
Json to_json(const BlowUpEvent& e);
Json to_json(const BubbleFit& f);
Json to_json(const BubbleCount& c);
Json to_json(const OriginLimit& o);
Json to_json(const BoundaryDataSpec& spec);
BoundaryDataSpec boundary_spec_from_json(const Json& j);

/// Creates parent directories; throws std::runtime_error when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace eqflow
