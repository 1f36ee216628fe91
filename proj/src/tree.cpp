#include <algorithm>
#include <numeric>
#include <random>

#include "entangle/construction.hpp"
#include "entangle/error.hpp"

namespace entangle {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Graph edge ids of the listed diagonals; throws when one is missing.
std::vector<EdgeId> edges_for(const DiagonalGraph& g, std::span<const DiagonalEdge> diags, const char* what) {
  std::vector<EdgeId> out;
  for (const auto& d : diags) {
    auto it = std::find(g.diagonals.begin(), g.diagonals.end(), d);
    if (it == g.diagonals.end()) fail(ErrorKind::kConstruction, std::string(what) + " is not inside its graph");
    out.push_back(static_cast<EdgeId>(it - g.diagonals.begin()));
  }
  return out;
}

std::vector<DiagonalEdge> diagonals_of(const DiagonalGraph& g, std::span<const EdgeId> edges) {
  std::vector<DiagonalEdge> out;
  for (EdgeId e : edges) out.push_back(g.diagonals[e]);
  return out;
}

void append_sorted(std::vector<DiagonalEdge>& into, std::span<const DiagonalEdge> from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

}  // namespace

DiagonalGraph restrict_diagonal_graph(const DiagonalGraph& g, const std::function<bool(VertexId)>& keep_vertex,
                                      const std::function<bool(const DiagonalEdge&)>& keep_edge) {
  DiagonalGraph out;
  for (VertexId v : g.vertex_ids)
    if (keep_vertex(v)) out.vertex_ids.push_back(v);
  out.graph = Multigraph(out.vertex_ids.size());
  for (const auto& d : g.diagonals) {
    const VertexId a = out.graph_vertex(d.a), b = out.graph_vertex(d.b);
    if (a == kNoId || b == kNoId || !keep_edge(d)) continue;
    out.graph.add_edge(a, b);
    out.diagonals.push_back(d);
  }
  return out;
}

DiagonalGraph build_Gb_centre(const CuboidComplex& c, const Coloring& coloring, const Spine& spine) {
  const std::int64_t n = spine.n;
  const auto black = diagonal_graph(c, coloring, Color::kBlack);
  // The black vertices of P1 and P5 inside the strip, and the black diagonals
  // crossing white spine diagonals.
  std::vector<VertexId> dropped;
  for (std::size_t k : {0u, 4u})
    for (VertexId v : spine.parts[k].vertices) {
      const Point3 p = c.coord(v);
      if (coloring.of(p) == Color::kBlack && p.x >= n && p.x <= n + 1) dropped.push_back(v);
    }
  std::vector<DiagonalEdge> white_spine;
  for (const auto& part : spine.parts)
    for (const auto& d : part.diagonals())
      if (coloring.of(c.coord(d.a)) == Color::kWhite) white_spine.push_back(d);
  const auto crossing = crossing_set(c, white_spine);
  return restrict_diagonal_graph(
      black,
      [&](VertexId v) {
        const auto x = c.coord(v).x;
        return x >= n && x <= n + 1 && std::find(dropped.begin(), dropped.end(), v) == dropped.end();
      },
      [&](const DiagonalEdge& d) { return !std::binary_search(crossing.begin(), crossing.end(), d); });
}

std::vector<EdgeId> extend_forest_to_spanning_tree(const Multigraph& g, std::span<const EdgeId> forest,
                                                   std::uint64_t seed, std::span<const VertexId> avoid) {
  const std::size_t V = g.vertex_count();
  UnionFind uf(V);
  std::vector<char> taken(g.edge_count(), 0);
  std::size_t joined = 0;
  for (EdgeId e : forest) {
    const auto& ed = g.edge(e);
    if (taken[e]) continue;
    if (!uf.unite(ed.a, ed.b)) fail(ErrorKind::kInvalidArgument, "forest contains a cycle");
    taken[e] = 1;
    ++joined;
  }
  std::vector<char> avoided(V, 0);
  for (VertexId v : avoid) {
    if (v >= V) fail(ErrorKind::kInvalidArgument, "avoided vertex out of range");
    avoided[v] = 1;
  }
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  auto key = [&](EdgeId e) {
    const auto& ed = g.edge(e);
    return std::tuple{std::min(ed.a, ed.b), std::max(ed.a, ed.b), e};
  };
  std::sort(order.begin(), order.end(), [&](EdgeId x, EdgeId y) { return key(x) < key(y); });
  if (seed != 0) {
    // Fisher-Yates with explicit draws so the order is the same on every platform.
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  }
  for (EdgeId e : order) {
    if (joined + 1 >= V) break;
    const auto& ed = g.edge(e);
    if (taken[e] || ed.is_loop() || avoided[ed.a] || avoided[ed.b]) continue;
    if (uf.unite(ed.a, ed.b)) {
      taken[e] = 1;
      ++joined;
    }
  }
  if (V > 0 && joined + 1 != V) fail(ErrorKind::kConstruction, "graph is disconnected; no spanning tree");
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (taken[e]) out.push_back(e);
  return out;
}

SpanningTreePlan build_tree_plan(const CuboidComplex& c, const Spine& spine, std::uint64_t seed) {
  const std::int64_t n = spine.n;
  const Coloring col = box_coloring(n);
  SpanningTreePlan plan;
  plan.n = n;
  plan.seed = seed;
  plan.spine = spine;
  auto x_of = [&](VertexId v) { return c.coord(v).x; };
  auto all = [](const DiagonalEdge&) { return true; };

  const auto black = diagonal_graph(c, col, Color::kBlack);
  auto span_with = [&](const DiagonalGraph& g, std::span<const DiagonalEdge> forest, const CollinearTriple* reserved,
                       const char* what) {
    const auto f = edges_for(g, forest, what);
    std::vector<VertexId> avoid;
    if (reserved)
      for (std::size_t k : {1u, 2u}) avoid.push_back(g.graph_vertex(reserved->v[k]));
    return diagonals_of(g, extend_forest_to_spanning_tree(g.graph, f, seed, avoid));
  };

  const auto right = restrict_diagonal_graph(black, [&](VertexId v) { return x_of(v) >= n + 2; }, all);
  plan.Tb1 = span_with(right, spine.parts[1].diagonals(), &spine.right_triple, "P2");
  const auto left = restrict_diagonal_graph(black, [&](VertexId v) { return x_of(v) <= n - 1; }, all);
  plan.Tb2 = span_with(left, spine.parts[3].diagonals(), &spine.left_triple, "P4");
  const auto centre = build_Gb_centre(c, col, spine);
  const auto bridge = spine.parts[2].diagonals();
  plan.Tb3 = span_with(centre, std::span(bridge).subspan(1, 1), nullptr, "the middle diagonal of P3");

  append_sorted(plan.Tb, plan.Tb1);
  append_sorted(plan.Tb, plan.Tb2);
  append_sorted(plan.Tb, plan.Tb3);
  std::vector<DiagonalEdge> white_spine;
  for (const auto& part : spine.parts)
    for (const auto& d : part.diagonals()) {
      if (col.of(c.coord(d.a)) == Color::kBlack)
        append_sorted(plan.Tb, std::span(&d, 1));
      else
        white_spine.push_back(d);
    }
  plan.I = crossing_set(c, plan.Tb);
  for (const auto& d : white_spine)
    if (std::binary_search(plan.I.begin(), plan.I.end(), d))
      fail(ErrorKind::kConstruction, "a white spine diagonal crosses the black tree");

  const auto white = diagonal_graph(c, col, Color::kWhite);
  auto not_in_I = [&](const DiagonalEdge& d) { return !std::binary_search(plan.I.begin(), plan.I.end(), d); };
  const auto p5 = spine.parts[4].diagonals();
  const auto p1 = spine.parts[0].diagonals();
  const auto wright = restrict_diagonal_graph(white, [&](VertexId v) { return x_of(v) >= n + 1; }, not_in_I);
  plan.Tw1 = span_with(wright, std::span(p5).subspan(p5.size() - 2), nullptr, "the end of P5");
  const auto wleft = restrict_diagonal_graph(white, [&](VertexId v) { return x_of(v) <= n; }, not_in_I);
  plan.Tw2 = span_with(wleft, std::span(p1).subspan(0, 2), nullptr, "the start of P1");

  append_sorted(plan.diagonals, plan.Tb);
  append_sorted(plan.diagonals, plan.Tw1);
  append_sorted(plan.diagonals, plan.Tw2);
  plan.complex_edges = {spine.parts[0].steps[2].edge, spine.parts[4].steps[1].edge};

  // Spanning and acyclic over the whole box.
  const auto& cx = c.complex();
  if (plan.diagonals.size() + 2 + 1 != cx.vertex_count())
    fail(ErrorKind::kConstruction, "tree has " + std::to_string(plan.diagonals.size() + 2) + " edges for " +
                                       std::to_string(cx.vertex_count()) + " vertices");
  UnionFind uf(cx.vertex_count());
  for (const auto& d : plan.diagonals)
    if (!uf.unite(cx.vertex_index(d.a), cx.vertex_index(d.b))) fail(ErrorKind::kConstruction, "tree has a cycle");
  for (EdgeId e : plan.complex_edges) {
    const auto& ed = cx.edge(e);
    if (!uf.unite(cx.vertex_index(ed.tail), cx.vertex_index(ed.head))) fail(ErrorKind::kConstruction, "tree has a cycle");
  }
  return plan;
}

EdgeId SubdividedComplex::edge_of(const DiagonalEdge& d, const SpanningTreePlan& plan) const {
  auto it = std::lower_bound(plan.diagonals.begin(), plan.diagonals.end(), d);
  if (it == plan.diagonals.end() || *it != d) return kNoId;
  return diagonal_edges[static_cast<std::size_t>(it - plan.diagonals.begin())];
}

SubdividedComplex build_Cprime(const CuboidComplex& c, const SpanningTreePlan& plan) {
  std::vector<Subdivision> req;
  req.reserve(plan.diagonals.size());
  for (const auto& d : plan.diagonals) req.push_back({d.host, d.a, d.b});
  auto res = subdivide_faces(c.complex(), req);
  SubdividedComplex out;
  out.complex = std::move(res.complex);
  out.coords.assign(c.coords().begin(), c.coords().end());
  out.diagonal_edges = std::move(res.new_edges);
  out.tree_edges = out.diagonal_edges;
  out.tree_edges.insert(out.tree_edges.end(), plan.complex_edges.begin(), plan.complex_edges.end());
  std::sort(out.tree_edges.begin(), out.tree_edges.end());
  return out;
}

TwoComplex build_Cdoubleprime(const SubdividedComplex& cp) { return contract_edge_set(cp.complex, cp.tree_edges); }

TreeIndex::TreeIndex(const TwoComplex& c, std::span<const EdgeId> tree_edges)
    : vertices_(c.vertices().begin(), c.vertices().end()), tree_(tree_edges.begin(), tree_edges.end()) {
  std::sort(tree_.begin(), tree_.end());
  const std::size_t V = vertices_.size();
  if (V == 0) fail(ErrorKind::kInvalidArgument, "empty complex");
  if (tree_.size() + 1 != V) fail(ErrorKind::kInvalidArgument, "edge count is not that of a spanning tree");
  std::vector<std::vector<std::pair<std::size_t, EdgeId>>> adj(V);
  for (EdgeId e : tree_) {
    const auto& r = c.edge(e);
    const auto a = c.vertex_index(r.tail), b = c.vertex_index(r.head);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  parent_.assign(V, SIZE_MAX);
  parent_edge_.assign(V, kNoId);
  depth_.assign(V, 0);
  tin_.assign(V, 0);
  tout_.assign(V, 0);
  std::vector<char> seen(V, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  seen[0] = 1;
  std::uint32_t clock = 0;
  std::size_t visited = 1;
  tin_[0] = clock++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next == adj[v].size()) {
      tout_[v] = clock++;
      stack.pop_back();
      continue;
    }
    const auto [w, e] = adj[v][next++];
    if (w == parent_[v] && e == parent_edge_[v]) continue;
    if (seen[w]) fail(ErrorKind::kInvalidArgument, "tree edges contain a cycle");
    seen[w] = 1;
    ++visited;
    parent_[w] = v;
    parent_edge_[w] = e;
    depth_[w] = depth_[v] + 1;
    tin_[w] = clock++;
    stack.push_back({w, 0});
  }
  if (visited != V) fail(ErrorKind::kInvalidArgument, "tree edges do not span");
  child_.assign(tree_.size(), 0);
  for (std::size_t v = 1; v < V; ++v)
    if (parent_edge_[v] != kNoId)
      child_[static_cast<std::size_t>(std::lower_bound(tree_.begin(), tree_.end(), parent_edge_[v]) - tree_.begin())] = v;
}

std::size_t TreeIndex::idx(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) fail(ErrorKind::kNotFound, "vertex " + std::to_string(v) + " not in tree");
  return static_cast<std::size_t>(it - vertices_.begin());
}

bool TreeIndex::in_tree(EdgeId e) const { return std::binary_search(tree_.begin(), tree_.end(), e); }

std::vector<EdgeId> TreeIndex::path_edges(VertexId a, VertexId b) const {
  std::size_t x = idx(a), y = idx(b);
  std::vector<EdgeId> up, down;
  while (depth_[x] > depth_[y]) {
    up.push_back(parent_edge_[x]);
    x = parent_[x];
  }
  while (depth_[y] > depth_[x]) {
    down.push_back(parent_edge_[y]);
    y = parent_[y];
  }
  while (x != y) {
    up.push_back(parent_edge_[x]);
    x = parent_[x];
    down.push_back(parent_edge_[y]);
    y = parent_[y];
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

bool TreeIndex::path_uses(VertexId a, VertexId b, EdgeId e) const {
  auto it = std::lower_bound(tree_.begin(), tree_.end(), e);
  if (it == tree_.end() || *it != e) return false;
  const std::size_t child = child_[static_cast<std::size_t>(it - tree_.begin())];
  return in_subtree(child, idx(a)) != in_subtree(child, idx(b));
}

FundamentalCycle fundamental_cycle(const TwoComplex& c, const TreeIndex& tree, EdgeId e) {
  if (tree.in_tree(e)) fail(ErrorKind::kInvalidArgument, "edge " + std::to_string(e) + " is a tree edge");
  const auto& r = c.edge(e);
  FundamentalCycle fc;
  fc.edge = e;
  fc.vertices.push_back(r.tail);
  fc.edges.push_back(e);
  VertexId cur = r.head;
  for (EdgeId t : tree.path_edges(r.head, r.tail)) {
    fc.vertices.push_back(cur);
    fc.edges.push_back(t);
    const auto& tr = c.edge(t);
    cur = tr.tail == cur ? tr.head : tr.tail;
  }
  fc.vertices.push_back(cur);
  return fc;
}

}  // namespace entangle
