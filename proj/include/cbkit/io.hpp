#pragma once

// File formats: characteristics, cardinalities and cluster trees as JSON,
// point clouds as CSV, realization settings as key = value lines.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cbkit/oracle.hpp"
#include "cbkit/ordinal.hpp"
#include "cbkit/realize.hpp"
#include "cbkit/space.hpp"

namespace cbkit::io {

using Json = nlohmann::ordered_json;

/// "num/den", or "num" for integers.
std::string format_rational(const Rational& q);
/// Throws FormatError.
Rational parse_rational(const std::string& text);

/// {"rank": "<ordinal>", "count": n}
Json to_json(const CbChar& s);
CbChar char_from_json(const Json& j, ParseMode mode = ParseMode::normalizing);

/// {"kind": "finite", "n": k} or {"kind": "aleph0" | "aleph1"}
Json to_json(const Cardinality& c);

/// center, radius, rank, children, and tail when present:
/// {"next_index", "generator", plus "stage", "radius_schedule", "side_rule"
/// when they differ from the defaults}.
Json to_json(const ClusterTree& t);
ClusterTree tree_from_json(const Json& j, ParseMode mode = ParseMode::normalizing);

/// A single tree is written as an object, several as an array of objects.
Json to_json(const ClusterForest& f);
ClusterForest forest_from_json(const Json& j, ParseMode mode = ParseMode::normalizing);

Json to_json(const GeometryReport& g);
Json to_json(const RankAudit& a);

/// Header `point,den_path`, one row per point: exact fraction, dotted node path.
void write_csv(std::ostream& os, const PointCloud& cloud);

/// Lines `key = value`; '#' starts a comment. Keys: children_per_node, depth,
/// radius_schedule, side_rule. Unknown keys are a FormatError.
RealizationConfig parse_config(std::istream& in, RealizationConfig base = {});
std::string format_config(const RealizationConfig& cfg);

/// Reads and parses a JSON file. Throws FormatError.
Json read_json_file(const std::filesystem::path& path);

/// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace cbkit::io
