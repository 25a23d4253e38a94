#pragma once

// JSON and CSV output for the command-line tool. Every report carries a
// manifest and a `schema` number; output depends only on the arguments.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgms/circuit.hpp"
#include "qgms/counting.hpp"
#include "qgms/gms.hpp"
#include "qgms/synth.hpp"

namespace qgms::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct RunManifest {
  std::string subcommand;
  Json config = Json::object();
  std::map<std::string, std::uint64_t> seeds;
  std::string tool_version = kToolVersion;
  // ISO 8601 UTC; empty means "not stamped" and is written as null.
  std::string timestamp;
};

// SOURCE_DATE_EPOCH when set, otherwise the wall clock if `wall_clock`,
// otherwise empty.
std::string make_timestamp(bool wall_clock);

Json to_json(const RunManifest& m);
Json to_json(const ir::ResourceProfile& p);
Json to_json(const gms::CountReport& c);
Json to_json(const gms::QueryRatio& q);
Json to_json(const gms::GmsConfig& cfg);

// "num/den" for rationals, decimal for integers.
std::string to_string(const gms::BigInt& v);
std::string to_string(const gms::BigRational& v);

// {schema, manifest, kind, dims, qubits, gates, constructed, closed_form,
//  stage_sum, closed_form_delta, stages}
Json synth_report(const synth::SynthKind& kind, const ir::Circuit& c, const RunManifest& m);

struct GmsReportInput {
  gms::Instance instance;
  gms::GmsResult result;
  gms::HybridResult hybrid;
  gms::QueryRatio query_ratio;
  gms::CountReport counts;
};

// {schema, manifest, config, N, r, k0_mean, l0_mean, sigma2, p_max, t_curve,
//  optimal_t, query_ratio, counts, ...}
Json gms_report(const GmsReportInput& in, const RunManifest& m);

// "t,probability" rows.
std::string curve_csv(const std::vector<double>& curve);

// Writes to a temporary file next to `path` and renames it into place.
// Throws Error on IO failure.
void write_file(const std::string& path, const std::string& contents);

// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace qgms::report
