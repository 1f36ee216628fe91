#include "entangle/multigraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "entangle/error.hpp"

namespace entangle {

VertexId Multigraph::add_vertex() {
  if (!labels_.empty())
    fail(ErrorKind::kInvalidArgument, "labelled graph requires a label for every vertex");
  return static_cast<VertexId>(vertex_count_++);
}

VertexId Multigraph::add_vertex(std::string label) {
  if (labels_.size() != vertex_count_)
    fail(ErrorKind::kInvalidArgument, "cannot label a vertex of an unlabelled graph");
  auto id = static_cast<VertexId>(vertex_count_);
  if (!label_index_.emplace(label, id).second)
    fail(ErrorKind::kInvalidArgument, "duplicate vertex label '" + label + "'");
  labels_.push_back(std::move(label));
  ++vertex_count_;
  return id;
}

EdgeId Multigraph::add_edge(VertexId a, VertexId b) {
  check_vertex(a);
  check_vertex(b);
  edges_.push_back({a, b});
  return static_cast<EdgeId>(edges_.size() - 1);
}

const GraphEdge& Multigraph::edge(EdgeId e) const {
  if (e >= edges_.size())
    fail(ErrorKind::kNotFound, "unknown graph edge " + std::to_string(e));
  return edges_[e];
}

const std::string& Multigraph::label(VertexId v) const {
  check_vertex(v);
  if (labels_.empty()) fail(ErrorKind::kInvalidArgument, "graph has no vertex labels");
  return labels_[v];
}

std::optional<VertexId> Multigraph::find(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Multigraph::at(std::string_view label) const {
  auto v = find(label);
  if (!v) fail(ErrorKind::kNotFound, "no vertex labelled '" + std::string(label) + "'");
  return *v;
}

std::vector<std::size_t> Multigraph::degrees() const {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (const auto& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

std::size_t Multigraph::degree(VertexId v) const {
  check_vertex(v);
  std::size_t d = 0;
  for (const auto& e : edges_) d += (e.a == v) + (e.b == v);
  return d;
}

std::vector<std::vector<GraphDart>> Multigraph::incidence() const {
  std::vector<std::vector<GraphDart>> inc(vertex_count_);
  for (EdgeId i = 0; i < edges_.size(); ++i) {
    inc[edges_[i].a].push_back({i, 0});
    inc[edges_[i].b].push_back({i, 1});
  }
  return inc;
}

void Multigraph::check_vertex(VertexId v) const {
  if (v >= vertex_count_)
    fail(ErrorKind::kNotFound, "unknown graph vertex " + std::to_string(v));
}

namespace {

// Copies the vertices of `g` except the skipped ones into `out`, returning the
// old->new id map (kNoId for skipped vertices).
std::vector<VertexId> copy_vertices(const Multigraph& g, Multigraph& out, bool labelled,
                                    const std::vector<bool>& skip) {
  std::vector<VertexId> map(g.vertex_count(), kNoId);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (skip[v]) continue;
    map[v] = labelled ? out.add_vertex(g.label(v)) : out.add_vertex();
  }
  return map;
}

// Far endpoint of edge `e` as seen from `v`; rejects edges not at v and loops.
VertexId far_end(const Multigraph& g, EdgeId e, VertexId v, const char* what) {
  const auto& ed = g.edge(e);
  if (ed.a != v && ed.b != v)
    fail(ErrorKind::kInvalidArgument,
         std::string(what) + ": paired edge " + std::to_string(e) + " is not incident to the summed vertex");
  if (ed.is_loop())
    fail(ErrorKind::kInvalidArgument, std::string(what) + ": loops at the summed vertex are not supported");
  return ed.other(v);
}

}  // namespace

Multigraph vertex_sum(const Multigraph& g1, VertexId v1, const Multigraph& g2,
                      VertexId v2, const EdgePairing& pairing) {
  if (v1 >= g1.vertex_count() || v2 >= g2.vertex_count())
    fail(ErrorKind::kNotFound, "vertex_sum: unknown summed vertex");
  const std::size_t d1 = g1.degree(v1);
  const std::size_t d2 = g2.degree(v2);
  if (d1 != d2)
    fail(ErrorKind::kInvalidArgument, "vertex_sum: degree mismatch (" + std::to_string(d1) +
                                          " vs " + std::to_string(d2) + ")");
  if (pairing.size() != d1)
    fail(ErrorKind::kInvalidArgument, "vertex_sum: pairing does not cover every edge end");

  std::unordered_set<EdgeId> seen1, seen2;
  for (auto [e1, e2] : pairing) {
    far_end(g1, e1, v1, "vertex_sum");
    far_end(g2, e2, v2, "vertex_sum");
    if (!seen1.insert(e1).second || !seen2.insert(e2).second)
      fail(ErrorKind::kInvalidArgument, "vertex_sum: pairing uses an edge twice");
  }

  const bool labelled = g1.has_labels() && g2.has_labels() &&
                        (g1.vertex_count() + g2.vertex_count() > 0);
  Multigraph out;
  std::vector<bool> skip1(g1.vertex_count(), false), skip2(g2.vertex_count(), false);
  skip1[v1] = true;
  skip2[v2] = true;
  auto map1 = copy_vertices(g1, out, labelled, skip1);
  auto map2 = copy_vertices(g2, out, labelled, skip2);
  for (const auto& e : g1.edges())
    if (e.a != v1 && e.b != v1) out.add_edge(map1[e.a], map1[e.b]);
  for (const auto& e : g2.edges())
    if (e.a != v2 && e.b != v2) out.add_edge(map2[e.a], map2[e.b]);
  for (auto [e1, e2] : pairing)
    out.add_edge(map1[far_end(g1, e1, v1, "vertex_sum")], map2[far_end(g2, e2, v2, "vertex_sum")]);
  return out;
}

Multigraph internal_vertex_sum(const Multigraph& g, VertexId x, VertexId y,
                               const EdgePairing& pairing) {
  if (x >= g.vertex_count() || y >= g.vertex_count())
    fail(ErrorKind::kNotFound, "internal_vertex_sum: unknown vertex");
  if (x == y) fail(ErrorKind::kInvalidArgument, "internal_vertex_sum: x and y must differ");

  // Every edge touching x or y but not joining them must be paired exactly once.
  std::unordered_set<EdgeId> at_x, at_y;
  for (EdgeId i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    const bool tx = e.a == x || e.b == x;
    const bool ty = e.a == y || e.b == y;
    if (tx && ty) continue;
    if (e.is_loop() && (tx || ty))
      fail(ErrorKind::kInvalidArgument, "internal_vertex_sum: loops at x or y are not supported");
    if (tx) at_x.insert(i);
    if (ty) at_y.insert(i);
  }
  if (pairing.size() != at_x.size() || pairing.size() != at_y.size())
    fail(ErrorKind::kInvalidArgument, "internal_vertex_sum: pairing does not match the ends at x and y");
  std::unordered_set<EdgeId> used_x, used_y;
  for (auto [ex, ey] : pairing) {
    if (!at_x.count(ex) || !at_y.count(ey))
      fail(ErrorKind::kInvalidArgument, "internal_vertex_sum: pairing references a missing end");
    if (!used_x.insert(ex).second || !used_y.insert(ey).second)
      fail(ErrorKind::kInvalidArgument, "internal_vertex_sum: pairing uses an end twice");
  }

  Multigraph out;
  std::vector<bool> skip(g.vertex_count(), false);
  skip[x] = skip[y] = true;
  auto map = copy_vertices(g, out, g.has_labels() && g.vertex_count() > 0, skip);
  for (const auto& e : g.edges())
    if (!skip[e.a] && !skip[e.b]) out.add_edge(map[e.a], map[e.b]);
  for (auto [ex, ey] : pairing)
    out.add_edge(map[g.edge(ex).other(x)], map[g.edge(ey).other(y)]);
  return out;
}

Multigraph delete_vertices(const Multigraph& g, std::span<const VertexId> removed) {
  std::vector<bool> skip(g.vertex_count(), false);
  for (auto v : removed) {
    if (v >= g.vertex_count()) fail(ErrorKind::kNotFound, "delete_vertices: unknown vertex");
    skip[v] = true;
  }
  Multigraph out;
  auto map = copy_vertices(g, out, g.has_labels() && g.vertex_count() > 0, skip);
  for (const auto& e : g.edges())
    if (!skip[e.a] && !skip[e.b]) out.add_edge(map[e.a], map[e.b]);
  return out;
}

Multigraph merge_vertices(const Multigraph& g, std::span<const VertexId> group) {
  if (group.empty()) return g;
  std::vector<bool> in_group(g.vertex_count(), false);
  for (auto v : group) {
    if (v >= g.vertex_count()) fail(ErrorKind::kNotFound, "merge_vertices: unknown vertex");
    in_group[v] = true;
  }
  const VertexId keep = *std::min_element(group.begin(), group.end());
  const bool labelled = g.has_labels() && g.vertex_count() > 0;
  Multigraph out;
  std::vector<VertexId> map(g.vertex_count(), kNoId);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (in_group[v] && v != keep) continue;
    map[v] = labelled ? out.add_vertex(g.label(v)) : out.add_vertex();
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (in_group[v]) map[v] = map[keep];
  for (const auto& e : g.edges()) {
    if (in_group[e.a] && in_group[e.b]) continue;
    out.add_edge(map[e.a], map[e.b]);
  }
  return out;
}

std::vector<std::uint32_t> component_ids(const Multigraph& g) {
  std::vector<std::uint32_t> comp(g.vertex_count(), kNoId);
  auto inc = g.incidence();
  std::uint32_t next = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != kNoId) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (auto d : inc[v]) {
        VertexId w = g.edge(d.edge).other(v);
        if (comp[w] == kNoId) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::size_t component_count(const Multigraph& g) {
  auto comp = component_ids(g);
  std::uint32_t mx = 0;
  for (auto c : comp) mx = std::max(mx, c + 1);
  return mx;
}

FaceTrace genus_of_rotation(const Multigraph& g, const GraphRotation& rotation) {
  if (rotation.size() != g.vertex_count())
    fail(ErrorKind::kInvalidArgument, "rotation: one rotator per vertex required");

  // position[dart] = (vertex, index in its rotator)
  const std::size_t dart_count = 2 * g.edge_count();
  auto dart_index = [](GraphDart d) { return 2 * static_cast<std::size_t>(d.edge) + d.side; };
  std::vector<std::size_t> next(dart_count, SIZE_MAX);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto& rot = rotation[v];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      auto d = rot[i];
      if (d.edge >= g.edge_count() || d.side > 1)
        fail(ErrorKind::kInvalidArgument, "rotation: unknown dart");
      if (g.dart_vertex(d) != v)
        fail(ErrorKind::kInvalidArgument, "rotation: dart listed at the wrong vertex");
      auto idx = dart_index(d);
      if (next[idx] != SIZE_MAX)
        fail(ErrorKind::kInvalidArgument, "rotation: dart listed twice");
      next[idx] = dart_index(rot[(i + 1) % rot.size()]);
    }
  }
  for (std::size_t i = 0; i < dart_count; ++i)
    if (next[i] == SIZE_MAX) fail(ErrorKind::kInvalidArgument, "rotation: missing dart");

  FaceTrace trace;
  auto comp = component_ids(g);
  std::uint32_t ncomp = 0;
  for (auto c : comp) ncomp = std::max(ncomp, c + 1);
  std::vector<std::int64_t> euler(ncomp, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++euler[comp[v]];
  for (const auto& e : g.edges()) --euler[comp[e.a]];

  // Face permutation: phi(d) = sigma(alpha(d)).
  std::vector<bool> visited(dart_count, false);
  for (std::size_t start = 0; start < dart_count; ++start) {
    if (visited[start]) continue;
    std::size_t len = 0;
    std::size_t d = start;
    while (!visited[d]) {
      visited[d] = true;
      ++len;
      d = next[d ^ 1];
    }
    trace.face_degrees.push_back(len);
    ++trace.face_count;
    ++euler[comp[g.edge(static_cast<EdgeId>(start / 2)).a]];
  }
  // An isolated vertex is a sphere with one face.
  auto deg = g.degrees();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (deg[v] == 0) {
      ++euler[comp[v]];
      ++trace.face_count;
      trace.face_degrees.push_back(0);
    }
  trace.component_planar.resize(ncomp);
  for (std::uint32_t c = 0; c < ncomp; ++c) trace.component_planar[c] = euler[c] == 2;
  return trace;
}

std::string to_dot(const Multigraph& g, std::string_view name,
                   std::span<const EdgeId> highlighted_edges,
                   std::span<const VertexId> highlighted_vertices) {
  std::unordered_set<EdgeId> he(highlighted_edges.begin(), highlighted_edges.end());
  std::unordered_set<VertexId> hv(highlighted_vertices.begin(), highlighted_vertices.end());
  const bool labelled = g.has_labels() && g.vertex_count() > 0;
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << "  v" << v << " [label=\"" << (labelled ? g.label(v) : std::to_string(v)) << "\"";
    if (hv.count(v)) os << ", style=filled, fillcolor=red";
    os << "];\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    os << "  v" << g.edge(e).a << " -- v" << g.edge(e).b;
    if (he.count(e)) os << " [color=red, penwidth=2]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace entangle
