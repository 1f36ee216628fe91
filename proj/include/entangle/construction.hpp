#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "entangle/complex.hpp"
#include "entangle/cuboid.hpp"

namespace entangle {

// One step of a facial path: a diagonal of a square, or an edge of the complex.
struct PathStep {
  VertexId from = 0;
  VertexId to = 0;
  bool diagonal = true;
  FaceId host = kNoId;  // diagonal steps
  EdgeId edge = kNoId;  // complex-edge steps

  bool operator==(const PathStep&) const = default;
};

struct FacialPath {
  std::vector<VertexId> vertices;
  std::vector<PathStep> steps;

  std::vector<DiagonalEdge> diagonals() const;
  bool operator==(const FacialPath&) const = default;
};

// Three consecutive collinear diagonals; v[0..3] in path order.
struct CollinearTriple {
  std::array<VertexId, 4> v{};
  std::array<DiagonalEdge, 3> e{};
  // Index of the first step within its segment.
  std::size_t first_step = 0;

  bool operator==(const CollinearTriple&) const = default;
};

enum class Side { kRight, kLeft };

struct Spine {
  std::int64_t n = 0;
  // P1 starting segment, P2 right overhand path, P3 bridge, P4 left overhand path, P5 ending segment.
  std::array<FacialPath, 5> parts;
  VertexId A = 0, B = 0, A2 = 0, B2 = 0, O = 0, O2 = 0;
  // Triples inside P2 and P4 whose middle vertices carry no other tree diagonal.
  CollinearTriple right_triple, left_triple;

  std::vector<VertexId> vertices() const;
  bool operator==(const Spine&) const = default;
};

// The box of size (2n+1) x n x n and its colouring with (n-1,0,0) white.
CuboidComplex build_box(std::int64_t n);
Coloring box_coloring(std::int64_t n);

// Throws kConstruction when the template leaves the box.
FacialPath starting_segment(const CuboidComplex& c, const Point3& v);
FacialPath ending_segment(const CuboidComplex& c, const Point3& v);

// Waypoint polylines of the two overhand paths. Throws kInvalidArgument for n < 20.
std::vector<Point3> overhand_waypoints(Side side, std::int64_t n);

// Lexicographically least shortest facial path of same-coloured diagonals
// staying within Chebyshev distance 1 of the waypoint polyline and meeting its
// segments in order. `allowed` filters every vertex except the two ends.
// Throws kConstruction when no path exists.
FacialPath approximate_facial_path(const CuboidComplex& c, const Coloring& coloring,
                                   std::span<const Point3> waypoints,
                                   const std::function<bool(const Point3&)>& allowed);

FacialPath build_P3(const CuboidComplex& c, std::int64_t n);

// Builds and validates. Throws kConstruction on any failed condition.
Spine build_spine(const CuboidComplex& c, std::int64_t n);
void validate_spine(const CuboidComplex& c, const Spine& spine);

// First three consecutive collinear diagonal steps whose two middle vertices
// are interior vertices of the box.
std::optional<CollinearTriple> find_collinear_triple(const CuboidComplex& c, const FacialPath& path);

// Restriction of a diagonal graph to selected vertices and diagonals.
DiagonalGraph restrict_diagonal_graph(const DiagonalGraph& g, const std::function<bool(VertexId)>& keep_vertex,
                                      const std::function<bool(const DiagonalEdge&)>& keep_edge);

DiagonalGraph build_Gb_centre(const CuboidComplex& c, const Coloring& coloring, const Spine& spine);

// Greedy extension in lexicographic edge order (seed 0) or a seeded shuffle of
// it. Edges touching an `avoid` vertex are only taken from the forest.
// Throws kInvalidArgument for a cyclic forest, kConstruction when the graph
// is disconnected. Returns sorted edge ids.
std::vector<EdgeId> extend_forest_to_spanning_tree(const Multigraph& g, std::span<const EdgeId> forest,
                                                   std::uint64_t seed, std::span<const VertexId> avoid = {});

struct SpanningTreePlan {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  Spine spine;
  std::vector<DiagonalEdge> Tb1, Tb2, Tb3, Tw1, Tw2;
  // All black tree diagonals, spine ones included.
  std::vector<DiagonalEdge> Tb;
  // White diagonals crossing Tb.
  std::vector<DiagonalEdge> I;
  // Every diagonal of T', sorted.
  std::vector<DiagonalEdge> diagonals;
  // The two complex edges of T' (P1, P5).
  std::array<EdgeId, 2> complex_edges{};

  bool operator==(const SpanningTreePlan&) const = default;
};

SpanningTreePlan build_tree_plan(const CuboidComplex& c, const Spine& spine, std::uint64_t seed);

// C with every face hosting a tree diagonal subdivided by it.
struct SubdividedComplex {
  TwoComplex complex;
  std::vector<Point3> coords;  // indexed like complex.vertices()
  // Parallel to plan.diagonals.
  std::vector<EdgeId> diagonal_edges;
  // Tree edges as edges of the subdivided complex, sorted.
  std::vector<EdgeId> tree_edges;

  EdgeId edge_of(const DiagonalEdge& d, const SpanningTreePlan& plan) const;
  bool operator==(const SubdividedComplex&) const = default;
};

SubdividedComplex build_Cprime(const CuboidComplex& c, const SpanningTreePlan& plan);
TwoComplex build_Cdoubleprime(const SubdividedComplex& cp);

// A spanning tree of a complex's 1-skeleton rooted at its smallest vertex.
class TreeIndex {
 public:
  TreeIndex(const TwoComplex& c, std::span<const EdgeId> tree_edges);

  bool in_tree(EdgeId e) const;
  // Edges of the tree path between two vertices, from a to b.
  std::vector<EdgeId> path_edges(VertexId a, VertexId b) const;
  // Whether the tree path between a and b uses the tree edge e.
  bool path_uses(VertexId a, VertexId b, EdgeId e) const;

 private:
  std::size_t idx(VertexId v) const;
  bool in_subtree(std::size_t root, std::size_t v) const { return tin_[root] <= tin_[v] && tout_[v] <= tout_[root]; }

  std::vector<VertexId> vertices_;  // sorted
  std::vector<EdgeId> tree_;  // sorted
  std::vector<std::size_t> child_;  // parallel to tree_: the endpoint farther from the root
  std::vector<std::size_t> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::uint32_t> depth_, tin_, tout_;
};

struct FundamentalCycle {
  EdgeId edge = kNoId;
  // Closed vertex sequence starting at the tail of `edge`; vertices[k] -> vertices[k+1] along edges[k].
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

// Throws kInvalidArgument when e is a tree edge.
FundamentalCycle fundamental_cycle(const TwoComplex& c, const TreeIndex& tree, EdgeId e);

// Everything built for one (n, seed).
struct Pipeline {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  CuboidComplex box;
  Coloring coloring{Point3{}, Color::kWhite};
  SpanningTreePlan plan;
  SubdividedComplex cprime;
  TwoComplex cdoubleprime;
  std::optional<TreeIndex> tree;

  // P2 or P4 as edges of C'.
  std::vector<EdgeId> overhand_edges(Side side) const;
  // Which overhand path the slab rule routes the cycle of e through.
  Side required_side(EdgeId e) const;
  const CollinearTriple& triple(Side side) const;
  // The triple's edges in C'.
  std::array<EdgeId, 3> triple_edges(Side side) const;
};

// Throws kInvalidArgument for n < 20.
Pipeline build_pipeline(std::int64_t n, std::uint64_t seed);

}  // namespace entangle
