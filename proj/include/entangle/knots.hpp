#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entangle/geometry.hpp"

namespace entangle {

// Closed polyline; the last point connects back to the first.
using PLCycle = std::vector<Point3>;

// Drops points lying strictly between their neighbours on a straight line.
PLCycle merge_collinear(std::span<const Point3> points);

// At least three points, no repeated point, no two collinear consecutive
// segments, and no two segments meeting except adjacent ones at their shared
// endpoint. Throws kInvalidArgument naming the first violation.
void validate_cycle(const PLCycle& cycle);

// Through the given vertex coordinates (in cycle order) with collinear runs
// merged; validated.
PLCycle realize_cycle(std::span<const Point3> vertex_coords);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

struct Crossing {
  std::uint32_t over_segment = 0;
  std::uint32_t under_segment = 0;
  Rational over_param;
  Rational under_param;
  int sign = 0;
  // Filled when arcs are assigned.
  std::uint32_t over_arc = 0;
  std::uint32_t under_in_arc = 0;
  std::uint32_t under_out_arc = 0;
};

struct GaussEntry {
  std::uint32_t crossing = 0;
  bool over = false;
};

struct KnotDiagram {
  Point3 direction;
  // Projection basis: u = d x a, w = d x u; (u, w) is positively oriented seen from +d.
  Point3 u, w;
  std::vector<Crossing> crossings;
  std::vector<GaussEntry> gauss;
  std::uint32_t arc_count = 1;

  // "O1+ U2- ..." with crossings numbered from 1 in order of first appearance.
  std::string gauss_code() const;
};

// Exact checks for a projection direction.
bool is_generic_direction(const PLCycle& cycle, const Point3& d, std::string* why = nullptr);

// Deterministic in (cycle, seed).
Point3 choose_generic_direction(const PLCycle& cycle, std::uint64_t seed);

// Throws kDegenerate when the direction is not generic.
KnotDiagram project(const PLCycle& cycle, const Point3& direction);

struct FoxResult {
  std::uint32_t p = 3;
  std::uint32_t kernel_dimension = 0;
  // p^kernel_dimension in decimal.
  std::string count;
};

FoxResult fox_colorings(const KnotDiagram& diagram, std::uint32_t p);

bool is_odd_prime(std::uint32_t p);

enum class KnotVerdict { kNontrivial, kUnknown };

struct KnotCertificate {
  KnotVerdict verdict = KnotVerdict::kUnknown;
  Point3 direction;
  std::size_t segments = 0;
  std::size_t crossings = 0;
  std::uint32_t arcs = 0;
  FoxResult fox;
  std::string gauss_code;
};

// Nontrivial when the 3-colouring count exceeds 3. Unknown proves nothing.
KnotCertificate is_certified_nontrivial(const PLCycle& cycle, std::uint64_t seed, std::uint32_t p = 3);

}  // namespace entangle
