#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xstates/core.hpp"
#include "xstates/dynamics.hpp"
#include "xstates/measures.hpp"
#include "xstates/oracle.hpp"

namespace xstates::io {

using Json = nlohmann::ordered_json;

// JSON text with every floating-point number printed at 17 significant digits.
std::string dump(const Json& j, int indent = 2);

Json state_to_json(const XState& x);
// Accepts {a,b,c,d,z:{re,im},w:{re,im}} or {"matrix": 4x4 of [re, im]}.
// Throws Error(ParseError) on malformed input, validation errors otherwise.
XState state_from_json(const Json& j);

Json matrix_to_json(const Matrix4& m);
Matrix4 matrix_from_json(const Json& j);
// Either a 4x4 matrix or an object {"ZI": 0.5, "XX": 1.0} of Pauli strings.
Matrix4 operator_from_json(const Json& j);

Json report_to_json(const MeasureReport& r);
std::string report_to_csv(const MeasureReport& r);

Json campaign_to_json(const CampaignStats& s);

struct DynamicsConfig {
  LindbladSpec spec;
  EvolveOptions options;
  std::optional<XState> initial_state;
};

DynamicsConfig dynamics_config_from_json(const Json& j);
KrausSet kraus_from_json(const Json& j);

void write_trajectory_csv(std::ostream& out, const Trajectory& t);

Json read_json_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace xstates::io
