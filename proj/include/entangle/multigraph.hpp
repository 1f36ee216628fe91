#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "entangle/geometry.hpp"

namespace entangle {

struct GraphEdge {
  VertexId a = 0;
  VertexId b = 0;

  bool is_loop() const { return a == b; }
  VertexId other(VertexId v) const { return v == a ? b : a; }
  bool operator==(const GraphEdge&) const = default;
};

// One end of a graph edge: side 0 sits at `a`, side 1 at `b`.
struct GraphDart {
  EdgeId edge = 0;
  std::uint8_t side = 0;

  bool operator==(const GraphDart&) const = default;
  auto operator<=>(const GraphDart&) const = default;
};

// Undirected multigraph on dense vertex ids 0..V-1 and edge ids 0..E-1.
// Loops and parallel edges are allowed. Labels are optional, but when present
// every vertex has one and they are unique.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  VertexId add_vertex();
  VertexId add_vertex(std::string label);
  EdgeId add_edge(VertexId a, VertexId b);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const GraphEdge& edge(EdgeId e) const;
  std::span<const GraphEdge> edges() const { return edges_; }

  bool has_labels() const { return !labels_.empty() || vertex_count_ == 0; }
  const std::string& label(VertexId v) const;
  std::optional<VertexId> find(std::string_view label) const;
  // Throws kNotFound when the label is absent.
  VertexId at(std::string_view label) const;

  VertexId dart_vertex(GraphDart d) const {
    const auto& e = edge(d.edge);
    return d.side == 0 ? e.a : e.b;
  }

  // Loops count twice.
  std::vector<std::size_t> degrees() const;
  std::size_t degree(VertexId v) const;
  // Darts grouped by the vertex they sit at, in edge-id order.
  std::vector<std::vector<GraphDart>> incidence() const;

  bool operator==(const Multigraph&) const = default;

 private:
  void check_vertex(VertexId v) const;

  std::size_t vertex_count_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> label_index_;
};

// Pairing of an edge at the first summed vertex with an edge at the second.
using EdgePairing = std::vector<std::pair<EdgeId, EdgeId>>;

// Disjoint union of g1 and g2 minus v1 and v2, plus one edge per pair joining
// the far endpoints of the paired edges. Result vertices: those of g1 (minus v1)
// in order, then those of g2 (minus v2). Labels survive if both inputs carry them.
Multigraph vertex_sum(const Multigraph& g1, VertexId v1, const Multigraph& g2,
                      VertexId v2, const EdgePairing& pairing);

// The loop-contraction counterpart inside a single graph: drop every x-y edge,
// add x'y' for each pair (xx', yy'), then delete x and y.
Multigraph internal_vertex_sum(const Multigraph& g, VertexId x, VertexId y,
                               const EdgePairing& pairing);

// Induced subgraph on the complement of `removed`. Surviving vertices keep
// their relative order.
Multigraph delete_vertices(const Multigraph& g, std::span<const VertexId> removed);

// Identify all vertices of `group` into one vertex (placed at the position of
// the smallest member). Edges inside the group disappear, as contracting a
// loop is the same as deleting it.
Multigraph merge_vertices(const Multigraph& g, std::span<const VertexId> group);

// Number of connected components; isolated vertices count.
std::size_t component_count(const Multigraph& g);
std::vector<std::uint32_t> component_ids(const Multigraph& g);

// A rotation system: for every vertex the cyclic order of the darts at it.
using GraphRotation = std::vector<std::vector<GraphDart>>;

struct FaceTrace {
  std::size_t face_count = 0;
  std::vector<std::size_t> face_degrees;
  // Per connected component: V - E + F == 2.
  std::vector<bool> component_planar;

  bool planar() const {
    for (bool p : component_planar)
      if (!p) return false;
    return true;
  }
};

// Traces the faces of the ribbon structure given by `rotation`.
FaceTrace genus_of_rotation(const Multigraph& g, const GraphRotation& rotation);

std::string to_dot(const Multigraph& g, std::string_view name = "G",
                   std::span<const EdgeId> highlighted_edges = {},
                   std::span<const VertexId> highlighted_vertices = {});

}  // namespace entangle
