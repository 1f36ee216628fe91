#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "entangle/construction.hpp"
#include "entangle/knots.hpp"
#include "entangle/verify.hpp"

namespace entangle {

using Json = nlohmann::ordered_json;

// Schemas are described in docs/schemas.md. Every loader throws
// kInvalidArgument on malformed input.

Json to_json(const TwoComplex& c);
TwoComplex complex_from_json(const Json& j);

Json to_json(const Multigraph& g);
Multigraph multigraph_from_json(const Json& j);

Json cuboid_to_json(const CuboidComplex& c, const Coloring& coloring);
struct LoadedCuboid {
  CuboidComplex box;
  Coloring coloring;
};
// Rebuilds the box from its bounds and checks the stored complex against it.
LoadedCuboid cuboid_from_json(const Json& j);

Json to_json(const Spine& s, const CuboidComplex& c);
Spine spine_from_json(const Json& j);

Json to_json(const SpanningTreePlan& plan, const CuboidComplex& c);
SpanningTreePlan plan_from_json(const Json& j);

Json to_json(const SubdividedComplex& cp);
SubdividedComplex subdivided_from_json(const Json& j);

Json to_json(const KnotCertificate& k);
KnotCertificate certificate_from_json(const Json& j);

VerificationReport report_from_json(const Json& j);

// {"format": "entangle.<kind>", "version": 1, "n": n, "seed": seed}
Json file_header(std::string_view kind, std::int64_t n, std::uint64_t seed);

struct MeshOptions {
  // Fan-triangulate every face.
  bool triangulate = false;
};

// Faces of a complex as polygons through the tails of their darts.
std::string mesh_off(const TwoComplex& c, std::span<const Point3> coords, const MeshOptions& options = {});
std::string mesh_obj(const TwoComplex& c, std::span<const Point3> coords, const MeshOptions& options = {});

// Polylines over a point list: OBJ `l` records, OFF two-point faces per segment.
std::string polylines_obj(std::span<const Point3> points, const std::vector<std::vector<std::size_t>>& lines);
std::string polylines_off(std::span<const Point3> points, const std::vector<std::vector<std::size_t>>& lines);

// Throws kIo.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);
// With a trailing newline; indent < 0 is compact.
std::string dump(const Json& j, int indent = -1);

}  // namespace entangle
