#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "entangle/complex.hpp"
#include "entangle/geometry.hpp"
#include "entangle/multigraph.hpp"

namespace entangle {

struct CuboidDims {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;

  bool operator==(const CuboidDims&) const = default;
};

// Lattice box complex. Ids come from the coordinates of the parent box:
//   vertex (x,y,z) -> (x*(n2+1)+y)*(n3+1)+z,
//   edges enumerated per vertex in +x,+y,+z order,
//   squares enumerated per lower corner in xy,xz,yz order.
// A slab keeps the ids of its parent.
class CuboidComplex {
 public:
  const TwoComplex& complex() const { return complex_; }
  const CuboidDims& dims() const { return dims_; }
  // Inclusive bounds of the lattice points present.
  const Point3& lo() const { return lo_; }
  const Point3& hi() const { return hi_; }
  // Indexed like complex().vertices().
  std::span<const Point3> coords() const { return coords_; }

  Point3 coord(VertexId v) const;
  bool contains(const Point3& p) const;
  // Throws kNotFound outside the box.
  VertexId vertex_at(const Point3& p) const;
  std::optional<VertexId> find_vertex(const Point3& p) const;
  // Edge joining two lattice-adjacent vertices.
  std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
  // The square with these two opposite corners.
  std::optional<FaceId> square_with_diagonal(VertexId a, VertexId b) const;
  // The four corners of a square in walk order.
  std::array<VertexId, 4> square_corners(FaceId f) const;

  friend CuboidComplex build_cuboid(std::int64_t n1, std::int64_t n2, std::int64_t n3);
  friend CuboidComplex slab(const CuboidComplex& c, std::int64_t a, std::int64_t b);

 private:
  VertexId raw_id(const Point3& p) const { return static_cast<VertexId>((p.x * (dims_.n2 + 1) + p.y) * (dims_.n3 + 1) + p.z); }
  EdgeId raw_edge(const Point3& p, int axis) const;
  FaceId raw_face(const Point3& p, int plane) const;

  TwoComplex complex_;
  CuboidDims dims_;
  Point3 lo_, hi_;
  std::vector<Point3> coords_;
  // Id of the edge from each parent lattice point along each axis (kNoId past the wall).
  std::vector<std::array<EdgeId, 3>> edge_ids_;
  std::vector<std::array<FaceId, 3>> face_ids_;
};

CuboidComplex build_cuboid(std::int64_t n1, std::int64_t n2, std::int64_t n3);

// Induced subcomplex on a <= x <= b.
CuboidComplex slab(const CuboidComplex& c, std::int64_t a, std::int64_t b);

enum class Color : std::uint8_t { kBlack = 0, kWhite = 1 };

inline Color opposite(Color c) { return c == Color::kBlack ? Color::kWhite : Color::kBlack; }
const char* color_name(Color c);

class Coloring {
 public:
  Coloring(const Point3& anchor, Color anchor_color)
      : anchor_parity_(parity(anchor)), anchor_color_(anchor_color) {}

  Color of(const Point3& p) const { return parity(p) == anchor_parity_ ? anchor_color_ : opposite(anchor_color_); }
  const Color& anchor_color() const { return anchor_color_; }
  int anchor_parity() const { return anchor_parity_; }

 private:
  static int parity(const Point3& p) { return static_cast<int>(((p.x + p.y + p.z) % 2 + 2) % 2); }

  int anchor_parity_;
  Color anchor_color_;
};

Coloring two_color(const CuboidComplex& c, VertexId anchor, Color anchor_color);

// Opposite corners of a host square; a < b.
struct DiagonalEdge {
  VertexId a = 0;
  VertexId b = 0;
  FaceId host = 0;

  bool operator==(const DiagonalEdge&) const = default;
  auto operator<=>(const DiagonalEdge&) const = default;
};

DiagonalEdge make_diagonal(VertexId a, VertexId b, FaceId host);

struct DiagonalGraph {
  Multigraph graph;
  // Graph vertex -> complex vertex id, ascending.
  std::vector<VertexId> vertex_ids;
  // Graph edge -> diagonal.
  std::vector<DiagonalEdge> diagonals;

  VertexId graph_vertex(VertexId complex_vertex) const;
};

// The diagonals of `color` of every square of c, one per square.
DiagonalGraph diagonal_graph(const CuboidComplex& c, const Coloring& coloring, Color color);

// The other diagonal of each host square, sorted and deduplicated.
std::vector<DiagonalEdge> crossing_set(const CuboidComplex& c, std::span<const DiagonalEdge> tree_edges);

// The other diagonal of one host square.
DiagonalEdge crossing_diagonal(const CuboidComplex& c, const DiagonalEdge& d);

}  // namespace entangle
