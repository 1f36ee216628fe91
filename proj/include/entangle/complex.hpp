#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "entangle/geometry.hpp"
#include "entangle/multigraph.hpp"

namespace entangle {

struct EdgeRecord {
  EdgeId id = 0;
  VertexId tail = 0;
  VertexId head = 0;

  bool is_loop() const { return tail == head; }
  bool operator==(const EdgeRecord&) const = default;
};

// An edge traversed by a face walk, tail->head when `forward`.
struct FaceDart {
  EdgeId edge = 0;
  bool forward = true;

  bool operator==(const FaceDart&) const = default;
};

struct FaceRecord {
  FaceId id = 0;
  std::vector<FaceDart> walk;

  bool operator==(const FaceRecord&) const = default;
};

// A 2-complex whose faces are closed walks of darts. Vertex, edge and face
// ids are arbitrary but kept sorted ascending, so every record is found by
// binary search and two complexes compare equal iff they are identical.
class TwoComplex {
 public:
  void add_vertex(VertexId v);
  // Ids must exceed every id added so far.
  void add_edge(EdgeId id, VertexId tail, VertexId head);
  EdgeId add_edge(VertexId tail, VertexId head);
  void add_face(FaceId id, std::vector<FaceDart> walk);
  FaceId add_face(std::vector<FaceDart> walk);

  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const EdgeRecord> edges() const { return edges_; }
  std::span<const FaceRecord> faces() const { return faces_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }

  bool has_vertex(VertexId v) const;
  bool has_edge(EdgeId e) const;
  bool has_face(FaceId f) const;
  const EdgeRecord& edge(EdgeId e) const;
  const FaceRecord& face(FaceId f) const;
  // Dense position of a record, for callers that keep side arrays.
  std::size_t vertex_index(VertexId v) const;
  std::size_t edge_index(EdgeId e) const;
  std::size_t face_index(FaceId f) const;

  EdgeId next_edge_id() const { return edges_.empty() ? 0 : edges_.back().id + 1; }
  FaceId next_face_id() const { return faces_.empty() ? 0 : faces_.back().id + 1; }

  VertexId dart_tail(FaceDart d) const {
    const auto& e = edge(d.edge);
    return d.forward ? e.tail : e.head;
  }
  VertexId dart_head(FaceDart d) const {
    const auto& e = edge(d.edge);
    return d.forward ? e.head : e.tail;
  }

  bool operator==(const TwoComplex&) const = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeRecord> edges_;
  std::vector<FaceRecord> faces_;
};

// Edge-end: end 0 is the tail, end 1 the head.
struct EdgeEnd {
  EdgeId edge = 0;
  std::uint8_t end = 0;

  bool operator==(const EdgeEnd&) const = default;
  auto operator<=>(const EdgeEnd&) const = default;
};

// Corner j of a face sits at the head of its j-th dart, between darts j and j+1.
struct FaceCorner {
  FaceId face = 0;
  std::uint32_t corner = 0;

  bool operator==(const FaceCorner&) const = default;
  auto operator<=>(const FaceCorner&) const = default;
};

struct LinkGraphResult {
  Multigraph graph;
  std::vector<EdgeEnd> vertex_origin;
  std::vector<FaceCorner> edge_origin;

  // kNoId when the end is not at this vertex.
  VertexId vertex_of(EdgeEnd end) const;
  EdgeId edge_of(FaceCorner corner) const;
};

// Per-vertex stars of a complex, for callers that need many link graphs.
class IncidenceIndex {
 public:
  explicit IncidenceIndex(const TwoComplex& c);

  std::span<const EdgeEnd> ends_at(VertexId v) const;
  std::span<const FaceCorner> corners_at(VertexId v) const;

 private:
  const TwoComplex* complex_;
  std::vector<std::size_t> end_offsets_;
  std::vector<EdgeEnd> ends_;
  std::vector<std::size_t> corner_offsets_;
  std::vector<FaceCorner> corners_;
};

// One link vertex per edge-end at v (ordered by edge id, then end), one link
// edge per face corner at v (ordered by face id, then corner).
LinkGraphResult link_graph(const TwoComplex& c, VertexId v);
LinkGraphResult link_graph(const TwoComplex& c, const IncidenceIndex& index, VertexId v);

// Contracts every listed edge at once. Non-loops merge their endpoints (the
// smallest id of each merged class survives), the listed edges disappear,
// their traversals are cut out of face walks and emptied faces are deleted.
// The result does not depend on the order of `edges`.
TwoComplex contract_edge_set(const TwoComplex& c, std::span<const EdgeId> edges);
TwoComplex contract_edge(const TwoComplex& c, EdgeId e);

// The vertex that `v` ends up as after contract_edge_set(c, edges).
VertexId contracted_vertex(const TwoComplex& c, std::span<const EdgeId> edges, VertexId v);

struct Subdivision {
  FaceId face = 0;
  VertexId u = 0;
  VertexId w = 0;
};

struct SubdivisionResult {
  TwoComplex complex;
  // Per request: the new edge u->w and the two faces replacing the old one.
  std::vector<EdgeId> new_edges;
  std::vector<std::pair<FaceId, FaceId>> new_faces;
};

// Splits face f along a new edge u->w. The first new face runs from u to w
// along the old walk and returns by the new edge; the second leaves u by the
// new edge and runs from w back to u. Fresh ids are appended.
SubdivisionResult subdivide_face(const TwoComplex& c, FaceId f, VertexId u, VertexId w);
SubdivisionResult subdivide_faces(const TwoComplex& c, std::span<const Subdivision> requests);

struct FaceIncidence {
  FaceId face = 0;
  // Which traversal of the edge within the face walk (0 for the first).
  std::uint32_t occurrence = 0;

  bool operator==(const FaceIncidence&) const = default;
  auto operator<=>(const FaceIncidence&) const = default;
};

// Cyclic order of face incidences around every edge.
struct RotationSystem {
  std::map<EdgeId, std::vector<FaceIncidence>> around;

  bool operator==(const RotationSystem&) const = default;
};

// Orders the faces at every edge by their angle about the oriented edge line
// (right-handed about tail->head). Coordinates are indexed like c.vertices().
RotationSystem rotation_from_geometry(const TwoComplex& c, std::span<const Point3> coords);

// The rotation a contracted complex inherits: contracted edges and deleted
// faces are dropped, everything else keeps its cyclic order.
RotationSystem restrict_rotation(const RotationSystem& r, const TwoComplex& contracted);

// Rotator of every link vertex at v: sigma_e at the tail end, its reverse at
// the head end. Indexed like link.graph.
GraphRotation induced_link_rotation(const TwoComplex& c, const RotationSystem& r,
                                    const LinkGraphResult& link);
GraphRotation induced_link_rotation(const TwoComplex& c, const RotationSystem& r, VertexId v);

struct H1Certificate {
  std::size_t rank = 0;
  std::size_t boundary1_rank = 0;
  std::size_t boundary2_rank = 0;
};

H1Certificate h1_rank(const TwoComplex& c);

// Rank over the rationals of a sparse integer matrix given column-wise as
// (row, value) lists. Throws kInternal on 64-bit overflow.
std::size_t rational_rank(std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns);

}  // namespace entangle
