#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entangle/multigraph.hpp"

namespace entangle {

enum class KuratowskiKind { kNone, kK5, kK33 };

const char* kuratowski_name(KuratowskiKind k);

struct PlanarityVerdict {
  bool planar = false;
  // Planar: rotation of every vertex of the input graph, loops and parallel
  // edges included.
  GraphRotation embedding;
  // Nonplanar: edges of the input forming a subdivision of K5 or K3,3.
  std::vector<EdgeId> kuratowski_edges;
  std::vector<VertexId> branch_vertices;
  KuratowskiKind kind = KuratowskiKind::kNone;
};

// Throws kInternal when the witness fails its own check, so a returned
// verdict is always certified.
PlanarityVerdict is_planar(const Multigraph& g);

// Suppresses degree-2 vertices of the edge-induced subgraph and recognises
// what is left. kNone when it is neither K5 nor K3,3.
KuratowskiKind classify_kuratowski(const Multigraph& g, const std::vector<EdgeId>& edges,
                                   std::vector<VertexId>* branch_vertices = nullptr);

bool embedding_is_planar(const Multigraph& g, const GraphRotation& rotation);

std::string witness_dot(const Multigraph& g, const PlanarityVerdict& verdict, std::string_view name = "G");

Multigraph make_complete(std::size_t n);
Multigraph make_complete_bipartite(std::size_t a, std::size_t b);
Multigraph make_G14();
Multigraph make_G13();
// Octahedron; with `modified` one edge is removed.
Multigraph make_double_wheel(bool modified);

// A contraction script: contract each labelled edge in order, then require
// every pair across the two sides to be adjacent.
struct MinorScript {
  std::vector<std::pair<std::string, std::string>> contractions;
  std::array<std::string, 3> left;
  std::array<std::string, 3> right;
};

struct MinorCertificate {
  bool holds = false;
  // Branch set of every side vertex, as labels of the input graph.
  std::vector<std::vector<std::string>> branch_sets;
  std::string reason;
};

// The script used to show G13 nonplanar: collapse X2-L-M-Y3 and X3-K-Y3.
MinorScript g13_k33_script();

// Requires labels. Throws kInvalidArgument when the script names missing
// vertices or non-edges.
MinorCertificate has_k33_minor_via(const Multigraph& g, const MinorScript& script);

// Branch-set form: six disjoint connected vertex sets with all nine crossing
// adjacencies.
MinorCertificate has_k33_minor_via(const Multigraph& g,
                                   const std::array<std::vector<VertexId>, 3>& left,
                                   const std::array<std::vector<VertexId>, 3>& right);

// Exhaustive search; graphs with at most 16 vertices.
bool has_k33_minor_bruteforce(const Multigraph& g);

// Throws kInternal when a graph is claimed planar and to contain a K3,3 minor.
void check_minor_consistency(const PlanarityVerdict& verdict, const MinorCertificate& cert);

// Exact multigraph isomorphism for graphs with at most 64 vertices; labels are ignored.
bool is_isomorphic(const Multigraph& a, const Multigraph& b);
// The vertex map a -> b when isomorphic.
std::optional<std::vector<VertexId>> find_isomorphism(const Multigraph& a, const Multigraph& b);

// Connected and without a cut vertex. Requires at least three vertices.
bool is_2_connected(const Multigraph& g);
std::vector<VertexId> cut_vertices(const Multigraph& g);

}  // namespace entangle
