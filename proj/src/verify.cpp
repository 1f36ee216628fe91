#include "entangle/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <random>

#include "entangle/error.hpp"
#include "entangle/planarity.hpp"

namespace entangle {

using json = nlohmann::ordered_json;

namespace {

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckRecord start(std::string name, std::string scope) {
  CheckRecord r;
  r.name = std::move(name);
  r.scope = std::move(scope);
  r.passed = true;
  return r;
}

// First failure wins the counterexample slot.
void fail_with(CheckRecord& r, json counterexample) {
  if (r.passed) r.counterexample = std::move(counterexample);
  r.passed = false;
}

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

std::vector<EdgeId> non_tree_edges(const TwoComplex& c, const TreeIndex& tree) {
  std::vector<EdgeId> out;
  for (const auto& e : c.edges())
    if (!tree.in_tree(e.id)) out.push_back(e.id);
  return out;
}

std::vector<EdgeId> sample(std::vector<EdgeId> pool, const Scope& scope) {
  if (scope.full || scope.count >= pool.size()) return pool;
  std::mt19937_64 rng(scope.seed);
  for (std::size_t i = 0; i < scope.count; ++i) std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
  pool.resize(scope.count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

const char* side_name(Side s) { return s == Side::kRight ? "P2" : "P4"; }

// Link at the vertex a contraction left; nonplanarity with a classified witness.
json nonplanarity_summary(const PlanarityVerdict& v) {
  json j;
  j["planar"] = v.planar;
  if (!v.planar) {
    j["kuratowski"] = kuratowski_name(v.kind);
    j["witness_edges"] = v.kuratowski_edges.size();
  }
  return j;
}

// Position of each old vertex after merge_vertices(g, group).
std::vector<VertexId> merged_positions(std::size_t n, const std::vector<VertexId>& group) {
  std::vector<char> in(n, 0);
  for (VertexId v : group) in[v] = 1;
  const VertexId head = group.empty() ? kNoId : *std::min_element(group.begin(), group.end());
  std::vector<VertexId> pos(n, kNoId);
  VertexId next = 0;
  for (VertexId v = 0; v < n; ++v)
    if (!in[v] || v == head) pos[v] = next++;
  for (VertexId v : group) pos[v] = pos[head];
  return pos;
}

}  // namespace

Scope Scope::parse(const std::string& text, std::uint64_t seed) {
  if (text == "full") return all();
  const std::string prefix = "sampled:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string k = text.substr(prefix.size());
    if (!k.empty() && std::all_of(k.begin(), k.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) &&
        k.size() < 10)
      return sampled(std::stoul(k), seed);
  }
  fail(ErrorKind::kInvalidArgument, "scope must be 'full' or 'sampled:K', got '" + text + "'");
}

std::string Scope::describe() const {
  return full ? "full" : "sampled:" + std::to_string(count) + ":seed=" + std::to_string(seed);
}

bool CheckRecord::injected() const { return name.rfind(kInjectedPrefix, 0) == 0; }

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& r) { return r.passed; });
}

bool VerificationReport::injected_all_detected() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& r) { return !r.injected() || !r.passed; });
}

json VerificationReport::to_json() const {
  json j;
  j["format"] = "entangle.report";
  j["version"] = 1;
  j["n"] = n;
  j["seed"] = seed;
  j["passed"] = passed();
  j["checks"] = json::array();
  for (const auto& r : checks) {
    json c;
    c["name"] = r.name;
    c["scope"] = r.scope;
    c["passed"] = r.passed;
    c["seconds"] = r.seconds;
    c["summary"] = r.summary;
    c["counterexample"] = r.counterexample;
    j["checks"].push_back(std::move(c));
  }
  return j;
}

std::vector<EdgeId> select_edges(const Pipeline& p, const Scope& scope) {
  return sample(non_tree_edges(p.cprime.complex, *p.tree), scope);
}

CheckRecord verify_tree(const Pipeline& p, std::span<const EdgeId> tree_edges) {
  Stopwatch sw;
  auto r = start("verify_tree", "full");
  const auto& c = p.cprime.complex;
  const std::size_t V = c.vertex_count();
  std::vector<std::vector<std::pair<std::size_t, EdgeId>>> adj(V);
  std::vector<std::size_t> uf(V);
  std::iota(uf.begin(), uf.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (uf[v] != v) v = uf[v] = uf[uf[v]];
    return v;
  };
  std::size_t complex_edges = 0;
  const EdgeId first_new = p.box.complex().next_edge_id();
  for (EdgeId e : tree_edges) {
    if (!c.has_edge(e)) {
      fail_with(r, {{"kind", "unknown_edge"}, {"edge", e}});
      continue;
    }
    complex_edges += e < first_new;
    const auto& rec = c.edge(e);
    const auto a = c.vertex_index(rec.tail), b = c.vertex_index(rec.head);
    if (find(a) == find(b)) {
      // Witness: the existing tree path between the endpoints, closed by e.
      std::vector<std::pair<std::size_t, EdgeId>> via(V, {SIZE_MAX, kNoId});
      std::deque<std::size_t> q{a};
      via[a] = {a, kNoId};
      while (!q.empty() && via[b].first == SIZE_MAX) {
        const auto x = q.front();
        q.pop_front();
        for (auto [y, f] : adj[x])
          if (via[y].first == SIZE_MAX) {
            via[y] = {x, f};
            q.push_back(y);
          }
      }
      json cyc = json::array({e});
      for (std::size_t x = b; x != a && via[x].first != SIZE_MAX; x = via[x].first) cyc.push_back(via[x].second);
      fail_with(r, {{"kind", "cycle"}, {"edges", cyc}});
      continue;
    }
    uf[find(a)] = find(b);
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  std::map<std::size_t, std::vector<VertexId>> comps;
  for (std::size_t v = 0; v < V; ++v) comps[find(v)].push_back(c.vertices()[v]);
  if (comps.size() > 1) {
    auto smallest = std::min_element(comps.begin(), comps.end(),
                                     [](const auto& x, const auto& y) { return x.second.size() < y.second.size(); });
    json part = json::array();
    for (std::size_t k = 0; k < std::min<std::size_t>(smallest->second.size(), 64); ++k)
      part.push_back(smallest->second[k]);
    fail_with(r, {{"kind", "disconnected"}, {"components", comps.size()}, {"smallest_component", part}});
  }
  if (complex_edges != 2) fail_with(r, {{"kind", "complex_edge_count"}, {"complex_edges", complex_edges}});
  r.summary = {{"vertices", V}, {"edges", tree_edges.size()}, {"complex_edges", complex_edges},
               {"components", comps.size()}};
  r.seconds = sw.seconds();
  return r;
}

CheckRecord verify_routing(const Pipeline& p, const TreeIndex& tree, const Scope& scope) {
  Stopwatch sw;
  auto r = start("verify_routing", scope.describe());
  const auto& c = p.cprime.complex;
  const auto p2 = p.overhand_edges(Side::kRight);
  const auto p4 = p.overhand_edges(Side::kLeft);
  auto contains = [&](const EdgeRecord& e, const std::vector<EdgeId>& path) -> std::optional<EdgeId> {
    for (EdgeId t : path)
      if (!tree.path_uses(e.tail, e.head, t)) return t;
    return std::nullopt;
  };
  std::size_t checked = 0, failures = 0, via_p2 = 0, via_p4 = 0;
  for (EdgeId id : sample(non_tree_edges(c, tree), scope)) {
    const auto& e = c.edge(id);
    ++checked;
    const bool mixed = p.coloring.of(p.box.coord(e.tail)) != p.coloring.of(p.box.coord(e.head));
    if (mixed) {
      const Side side = p.required_side(id);
      if (auto missing = contains(e, side == Side::kRight ? p2 : p4)) {
        ++failures;
        fail_with(r, {{"edge", id},
                      {"tail", point_json(p.box.coord(e.tail))},
                      {"head", point_json(p.box.coord(e.head))},
                      {"required", side_name(side)},
                      {"missing_tree_edge", *missing}});
      } else {
        ++(side == Side::kRight ? via_p2 : via_p4);
      }
    } else if (contains(e, p2) && contains(e, p4)) {
      ++failures;
      fail_with(r, {{"edge", id}, {"required", "P2 or P4"}, {"reason", "cycle contains neither overhand path"}});
    }
  }
  r.summary = {{"checked", checked}, {"failures", failures}, {"via_P2", via_p2}, {"via_P4", via_p4}};
  r.seconds = sw.seconds();
  return r;
}

PLCycle cycle_polygon(const Pipeline& p, const FundamentalCycle& fc) {
  std::vector<Point3> pts;
  for (std::size_t k = 0; k + 1 < fc.vertices.size(); ++k) pts.push_back(p.cprime.coords[p.cprime.complex.vertex_index(fc.vertices[k])]);
  return realize_cycle(pts);
}

CheckRecord verify_knotted_cycles(const std::string& name, const std::string& scope,
                                  const std::vector<std::pair<EdgeId, PLCycle>>& cycles, std::uint64_t seed) {
  Stopwatch sw;
  auto r = start(name, scope);
  std::map<std::string, std::size_t> counts;
  std::size_t max_segments = 0, max_crossings = 0;
  std::uint32_t min_dim = UINT32_MAX;
  for (const auto& [id, cycle] : cycles) {
    const auto cert = is_certified_nontrivial(cycle, seed, 3);
    ++counts[cert.fox.count];
    max_segments = std::max(max_segments, cert.segments);
    max_crossings = std::max(max_crossings, cert.crossings);
    min_dim = std::min(min_dim, cert.fox.kernel_dimension);
    if (cert.verdict != KnotVerdict::kNontrivial)
      fail_with(r, {{"edge", id == kNoId ? json() : json(id)},
                    {"colourings", cert.fox.count},
                    {"segments", cert.segments},
                    {"crossings", cert.crossings},
                    {"direction", point_json(cert.direction)},
                    {"gauss_code", cert.gauss_code}});
  }
  r.summary = {{"cycles", cycles.size()},
               {"colourings_histogram", counts},
               {"min_kernel_dimension", cycles.empty() ? 0 : min_dim},
               {"max_segments", max_segments},
               {"max_crossings", max_crossings}};
  r.seconds = sw.seconds();
  return r;
}

CheckRecord verify_entangled_canonical(const Pipeline& p, const Scope& scope) {
  Stopwatch sw;
  std::vector<std::pair<EdgeId, PLCycle>> cycles;
  for (EdgeId e : select_edges(p, scope))
    cycles.emplace_back(e, cycle_polygon(p, fundamental_cycle(p.cprime.complex, *p.tree, e)));
  auto r = verify_knotted_cycles("verify_entangled_canonical", scope.describe(), cycles, scope.seed);
  r.seconds = sw.seconds();
  return r;
}

CheckRecord verify_G14_at(const TwoComplex& c, const std::array<EdgeId, 3>& triple, const std::string& label) {
  Stopwatch sw;
  auto r = start("verify_G14_" + label, "full");
  const EdgeId e2 = triple[1];
  if (!c.has_edge(e2)) {
    fail_with(r, {{"reason", "middle edge missing"}, {"edge", e2}});
    return r;
  }
  const auto& rec = c.edge(e2);
  const auto contracted = contract_edge(c, e2);
  const VertexId u = std::min(rec.tail, rec.head);
  const auto link = link_graph(contracted, u);
  const bool iso = is_isomorphic(link.graph, make_G14());
  r.summary = {{"edges", json::array({triple[0], triple[1], triple[2]})},
               {"link_vertices", link.graph.vertex_count()},
               {"link_edges", link.graph.edge_count()},
               {"isomorphic_to_G14", iso}};
  if (!iso)
    fail_with(r, {{"reason", "link after contracting the middle edge is not G14"},
                  {"link_vertices", link.graph.vertex_count()},
                  {"link_edges", link.graph.edge_count()},
                  {"dot", to_dot(link.graph, "link")}});
  r.seconds = sw.seconds();
  return r;
}

CheckRecord verify_G14(const Pipeline& p, Side side) {
  return verify_G14_at(p.cprime.complex, p.triple_edges(side), side == Side::kRight ? "P2" : "P4");
}

CheckRecord verify_cycle_contraction(const TwoComplex& c, std::span<const EdgeId> cycle_edges,
                                     const std::array<EdgeId, 3>& triple, const std::string& label) {
  Stopwatch sw;
  auto r = start("cycle_contraction_" + label, "full");
  for (EdgeId t : triple)
    if (std::find(cycle_edges.begin(), cycle_edges.end(), t) == cycle_edges.end()) {
      fail_with(r, {{"reason", "triple edge not on the cycle"}, {"edge", t}});
      return r;
    }
  std::vector<EdgeId> rest;
  for (EdgeId e : cycle_edges)
    if (std::find(triple.begin(), triple.end(), e) == triple.end()) rest.push_back(e);

  // 1. Everything but the triple; 2. the middle edge.
  const auto c1 = contract_edge_set(c, rest);
  const auto& m = c1.edge(triple[1]);
  const auto c2 = contract_edge(c1, triple[1]);
  const VertexId u = std::min(m.tail, m.head);
  const auto lu = link_graph(c2, u);
  const bool g14 = is_isomorphic(lu.graph, make_G14());

  const auto& e1 = c2.edge(triple[0]);
  const auto& e3 = c2.edge(triple[2]);
  const VertexId w = e1.tail == u ? e1.head : e1.tail;
  const bool shape = !e1.is_loop() && !e3.is_loop() && (e3.tail == w || e3.head == w) && (e3.tail == u || e3.head == u);
  bool two_connected = false;
  if (shape) {
    const auto lw = link_graph(c2, w);
    std::vector<VertexId> ends = {lw.vertex_of({triple[0], static_cast<std::uint8_t>(e1.tail == w ? 0 : 1)}),
                                  lw.vertex_of({triple[2], static_cast<std::uint8_t>(e3.tail == w ? 0 : 1)})};
    const auto rest_w = delete_vertices(lw.graph, ends);
    two_connected = rest_w.vertex_count() >= 3 && is_2_connected(rest_w);
  }

  // 3. The outer edges.
  const std::array<EdgeId, 2> outer = {triple[0], triple[2]};
  const auto c3 = contract_edge_set(c2, outer);
  const VertexId o = std::min(u, w);
  const auto lo = link_graph(c3, o);
  const auto verdict = is_planar(lo.graph);

  // Collapsing the part inherited from w leaves G14 with its Y3 vertices identified.
  std::vector<VertexId> inherited;
  for (VertexId v = 0; v < lo.graph.vertex_count(); ++v) {
    const auto& end = lo.vertex_origin[v];
    const auto& rec = c2.edge(end.edge);
    if ((end.end == 0 ? rec.tail : rec.head) == w) inherited.push_back(v);
  }
  bool g13 = false;
  MinorCertificate minor;
  if (!inherited.empty()) {
    const auto merged = merge_vertices(lo.graph, inherited);
    const auto pos = merged_positions(lo.graph.vertex_count(), inherited);
    const auto g13_ref = make_G13();
    if (auto phi = find_isomorphism(g13_ref, merged)) {
      g13 = true;
      // Branch sets in the link itself: the script collapses K, L, M into Y3.
      std::vector<std::vector<VertexId>> preimage(merged.vertex_count());
      for (VertexId v = 0; v < lo.graph.vertex_count(); ++v) preimage[pos[v]].push_back(v);
      auto set_of = [&](const char* label) { return preimage[(*phi)[g13_ref.at(label)]]; };
      std::array<std::vector<VertexId>, 3> left = {set_of("X1"), set_of("X2"), set_of("X3")};
      std::array<std::vector<VertexId>, 3> right = {set_of("Y1"), set_of("Y2"), set_of("Y3")};
      for (const char* extra : {"K", "L", "M"}) {
        const auto s = set_of(extra);
        right[2].insert(right[2].end(), s.begin(), s.end());
      }
      minor = has_k33_minor_via(lo.graph, left, right);
      check_minor_consistency(verdict, minor);
    }
  }
  r.summary = {{"cycle_edges", cycle_edges.size()},
               {"triple", json::array({triple[0], triple[1], triple[2]})},
               {"middle_link_is_G14", g14},
               {"outer_link_minus_ends_2_connected", two_connected},
               {"link_vertices", lo.graph.vertex_count()},
               {"link_edges", lo.graph.edge_count()},
               {"link", nonplanarity_summary(verdict)},
               {"collapsed_link_is_G13", g13},
               {"k33_minor_certified", minor.holds}};
  if (!g14 || !shape || !two_connected || verdict.planar || !g13 || !minor.holds) {
    json why = json::array();
    if (!g14) why.push_back("middle link is not G14");
    if (!shape) why.push_back("outer edges do not join the two contracted vertices");
    if (!two_connected) why.push_back("outer link minus the triple ends is not 2-connected");
    if (verdict.planar) why.push_back("link at the contracted cycle is planar");
    if (!g13) why.push_back("collapsed link is not G13");
    if (g13 && !minor.holds) why.push_back("K3,3 branch sets rejected: " + minor.reason);
    fail_with(r, {{"reasons", why}, {"link_vertices", lo.graph.vertex_count()}});
  }
  r.seconds = sw.seconds();
  return r;
}

namespace {

// The slab rule for two-coloured edges; otherwise whichever overhand path the cycle contains.
Side cycle_side(const Pipeline& p, EdgeId e, const FundamentalCycle& fc) {
  const auto& r = p.cprime.complex.edge(e);
  if (p.coloring.of(p.box.coord(r.tail)) != p.coloring.of(p.box.coord(r.head))) return p.required_side(e);
  const auto t = p.triple_edges(Side::kRight);
  const bool right = std::all_of(t.begin(), t.end(), [&](EdgeId x) {
    return std::find(fc.edges.begin(), fc.edges.end(), x) != fc.edges.end();
  });
  return right ? Side::kRight : Side::kLeft;
}

}  // namespace

CheckRecord verify_cycle_contraction_nonplanar(const Pipeline& p, const Scope& scope) {
  Stopwatch sw;
  auto r = start("verify_cycle_contraction_nonplanar", scope.describe());
  std::size_t checked = 0;
  std::map<std::string, std::size_t> kinds;
  for (EdgeId e : select_edges(p, scope)) {
    const auto fc = fundamental_cycle(p.cprime.complex, *p.tree, e);
    const Side side = cycle_side(p, e, fc);
    auto sub = verify_cycle_contraction(p.cprime.complex, fc.edges, p.triple_edges(side), side_name(side));
    ++checked;
    if (sub.summary.contains("link") && sub.summary["link"].contains("kuratowski"))
      ++kinds[sub.summary["link"]["kuratowski"].get<std::string>()];
    if (!sub.passed) {
      auto ce = sub.counterexample;
      ce["edge"] = e;
      fail_with(r, ce);
    }
  }
  r.summary = {{"cycles", checked}, {"witness_kinds", kinds}};
  r.seconds = sw.seconds();
  return r;
}

namespace {

json edge_json(EdgeId e) { return e == kNoId ? json() : json(e); }

CheckRecord link_nonplanar(const TwoComplex& c, const std::string& name, EdgeId e) {
  Stopwatch sw;
  auto r = start(name, "full");
  const auto link = link_graph(c, c.vertices()[0]);
  const auto verdict = is_planar(link.graph);
  r.summary = {{"edge", edge_json(e)}, {"link_vertices", link.graph.vertex_count()},
               {"link_edges", link.graph.edge_count()}, {"link", nonplanarity_summary(verdict)}};
  if (verdict.planar) fail_with(r, {{"edge", edge_json(e)}, {"reason", "link is planar"}});
  r.seconds = sw.seconds();
  return r;
}

}  // namespace

CheckRecord verify_Cpp_contractions(const Pipeline& p, const Scope& scope) {
  Stopwatch sw;
  auto r = start("verify_Cpp_contractions", scope.describe());
  const auto& cpp = p.cdoubleprime;
  if (cpp.vertex_count() != 1) {
    fail_with(r, {{"reason", "C'' has more than one vertex"}, {"vertices", cpp.vertex_count()}});
    return r;
  }
  // C'' with the rotation inherited from the embedding of C' has a planar link.
  const auto rot = restrict_rotation(rotation_from_geometry(p.cprime.complex, p.cprime.coords), cpp);
  const auto link = link_graph(cpp, cpp.vertices()[0]);
  const bool embedded = genus_of_rotation(link.graph, induced_link_rotation(cpp, rot, link)).planar();
  if (!embedded) fail_with(r, {{"reason", "inherited link rotation of C'' is not planar"}});
  std::size_t checked = 0;
  std::map<std::string, std::size_t> kinds;
  for (EdgeId e : select_edges(p, scope)) {
    auto sub = link_nonplanar(contract_edge(cpp, e), "contract", e);
    ++checked;
    if (sub.summary["link"].contains("kuratowski")) ++kinds[sub.summary["link"]["kuratowski"].get<std::string>()];
    if (!sub.passed) fail_with(r, sub.counterexample);
  }
  r.summary = {{"edges", checked},
               {"link_vertices", link.graph.vertex_count()},
               {"link_edges", link.graph.edge_count()},
               {"inherited_rotation_planar", embedded},
               {"witness_kinds", kinds}};
  r.seconds = sw.seconds();
  return r;
}

namespace {

// White graph of a box minus the diagonals crossing `forest`.
bool white_minus_crossings_connected(const CuboidComplex& box, const std::vector<DiagonalEdge>& forest) {
  const Coloring col(Point3{0, 0, 0}, Color::kWhite);
  const auto crossed = crossing_set(box, forest);
  const auto white = restrict_diagonal_graph(
      diagonal_graph(box, col, Color::kWhite), [](VertexId) { return true; },
      [&](const DiagonalEdge& d) { return !std::binary_search(crossed.begin(), crossed.end(), d); });
  return white.graph.vertex_count() <= 1 || component_count(white.graph) == 1;
}

}  // namespace

CheckRecord verify_small_lemmas(const Pipeline& p, std::int64_t max_size, std::size_t trials, std::uint64_t seed) {
  Stopwatch sw;
  auto r = start("verify_small_lemmas", "trials:" + std::to_string(trials) + ":seed=" + std::to_string(seed));
  std::mt19937_64 rng(seed);
  auto draw = [&](std::uint64_t k) { return rng() % k; };
  for (std::size_t t = 0; t < trials; ++t) {
    const auto n1 = 1 + static_cast<std::int64_t>(draw(max_size));
    const auto n2 = 1 + static_cast<std::int64_t>(draw(max_size));
    const auto n3 = 1 + static_cast<std::int64_t>(draw(max_size));
    const auto box = build_cuboid(n1, n2, n3);
    const auto black = diagonal_graph(box, Coloring(Point3{0, 0, 0}, Color::kWhite), Color::kBlack);
    // A random forest: a shuffled greedy pass keeping each acyclic edge with probability q.
    const double q = static_cast<double>(draw(1001)) / 1000.0;
    std::vector<EdgeId> order(black.graph.edge_count());
    std::iota(order.begin(), order.end(), EdgeId{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw(i)]);
    std::vector<std::size_t> uf(black.graph.vertex_count());
    std::iota(uf.begin(), uf.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
      while (uf[v] != v) v = uf[v] = uf[uf[v]];
      return v;
    };
    std::vector<DiagonalEdge> forest;
    for (EdgeId e : order) {
      if (static_cast<double>(draw(1000000)) / 1e6 >= q) continue;
      const auto& ed = black.graph.edge(e);
      const auto a = find(ed.a), b = find(ed.b);
      if (a == b) continue;
      uf[a] = b;
      forest.push_back(black.diagonals[e]);
    }
    if (!white_minus_crossings_connected(box, forest)) {
      json f = json::array();
      for (const auto& d : forest) f.push_back({d.a, d.b});
      fail_with(r, {{"lemma", "white graph minus crossings"}, {"dims", {n1, n2, n3}}, {"forest", f}});
    }
  }
  // Three mutually crossing black diagonals around a white corner form a cycle,
  // so they are rejected as a forest.
  bool triangle_rejected = false;
  {
    const auto cube = build_cuboid(1, 1, 1);
    const auto black = diagonal_graph(cube, Coloring(Point3{0, 0, 0}, Color::kWhite), Color::kBlack);
    std::vector<EdgeId> tri;
    for (EdgeId e = 0; e < black.graph.edge_count(); ++e) {
      const auto& d = black.diagonals[e];
      const auto pa = cube.coord(d.a), pb = cube.coord(d.b);
      if (pa.x + pa.y + pa.z == 1 && pb.x + pb.y + pb.z == 1) tri.push_back(e);
    }
    try {
      extend_forest_to_spanning_tree(black.graph, tri, 0);
    } catch (const Error& e) {
      triangle_rejected = e.kind() == ErrorKind::kInvalidArgument && tri.size() == 3;
    }
    if (!triangle_rejected) fail_with(r, {{"lemma", "cyclic forest rejection"}});
  }
  const bool empty_ok = white_minus_crossings_connected(build_cuboid(3, 3, 3), {});
  if (!empty_ok) fail_with(r, {{"lemma", "empty forest"}});

  // The centre graph.
  const auto centre = build_Gb_centre(p.box, p.coloring, p.plan.spine);
  const bool centre_connected = component_count(centre.graph) == 1;
  const std::int64_t n = p.n;
  auto has = [&](Point3 a, Point3 b) {
    const auto va = p.box.vertex_at(a), vb = p.box.vertex_at(b);
    return std::any_of(centre.diagonals.begin(), centre.diagonals.end(), [&](const DiagonalEdge& d) {
      return (d.a == va && d.b == vb) || (d.a == vb && d.b == va);
    });
  };
  const bool named_edges = has({n, 0, 0}, {n + 1, 1, 0}) && has({n + 1, 1, 0}, {n, 1, 1});
  const auto full = restrict_diagonal_graph(
      diagonal_graph(p.box, p.coloring, Color::kBlack),
      [&](VertexId v) { return p.box.coord(v).x >= n && p.box.coord(v).x <= n + 1; },
      [](const DiagonalEdge&) { return true; });
  const auto removed_vertices = full.graph.vertex_count() - centre.graph.vertex_count();
  // Edges lost beyond those incident to the two removed vertices.
  std::size_t incident = 0;
  for (const auto& d : full.diagonals)
    if (centre.graph_vertex(d.a) == kNoId || centre.graph_vertex(d.b) == kNoId) ++incident;
  const auto removed_crossing = full.diagonals.size() - incident - centre.diagonals.size();
  if (!centre_connected || !named_edges || removed_vertices != 2 || removed_crossing != 2)
    fail_with(r, {{"lemma", "centre graph"},
                  {"connected", centre_connected},
                  {"named_edges_present", named_edges},
                  {"removed_vertices", removed_vertices},
                  {"removed_crossing_edges", removed_crossing}});
  r.summary = {{"random_forests", trials},
               {"max_size", max_size},
               {"cyclic_forest_rejected", triangle_rejected},
               {"empty_forest_connected", empty_ok},
               {"centre_connected", centre_connected},
               {"centre_vertices", centre.graph.vertex_count()},
               {"centre_edges", centre.graph.edge_count()},
               {"centre_removed_vertices", removed_vertices},
               {"centre_removed_crossing_edges", removed_crossing}};
  r.seconds = sw.seconds();
  return r;
}

namespace {

// The wrapped check run on a corrupted input; it is expected to fail.
CheckRecord negative(const std::string& name, CheckRecord inner) {
  const std::string check = inner.name;
  inner.name = std::string(kInjectedPrefix) + name;
  json summary = {{"check", check}, {"detected", !inner.passed}};
  summary.update(inner.summary);
  inner.summary = std::move(summary);
  if (inner.passed) inner.counterexample = nullptr;
  return inner;
}

std::vector<CheckRecord> negative_controls(const Pipeline& p) {
  std::vector<CheckRecord> out;
  const auto& tree = p.cprime.tree_edges;
  const auto& c = p.cprime.complex;

  auto deleted = tree;
  deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(deleted.size() / 2));
  out.push_back(negative("verify_tree/deleted_edge", verify_tree(p, deleted)));
  const auto extra = select_edges(p, Scope::sampled(1, 7));
  auto added = tree;
  added.push_back(extra.front());
  out.push_back(negative("verify_tree/added_edge", verify_tree(p, added)));

  // Swap the first P2 edge out of the tree for a non-tree edge whose cycle used it.
  const auto p2 = p.overhand_edges(Side::kRight);
  for (EdgeId e : select_edges(p, Scope::all())) {
    const auto& rec = c.edge(e);
    if (!p.tree->path_uses(rec.tail, rec.head, p2.front())) continue;
    auto swapped = tree;
    std::erase(swapped, p2.front());
    swapped.push_back(e);
    std::sort(swapped.begin(), swapped.end());
    TreeIndex bad(c, swapped);
    out.push_back(negative("verify_routing/swapped_P2_edge", verify_routing(p, bad, Scope::all())));
    break;
  }

  const PLCycle square = {{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}};
  out.push_back(negative("verify_entangled_canonical/unknot",
                         verify_knotted_cycles("verify_entangled_canonical", "synthetic", {{kNoId, square}}, 0)));

  // The first three steps of P2 turn, so they are not a collinear triple.
  const std::array<EdgeId, 3> bent = {p2[0], p2[1], p2[2]};
  out.push_back(negative("verify_G14/bent_triple", verify_G14_at(c, bent, "bent")));
  for (EdgeId e : select_edges(p, Scope::all())) {
    if (p.required_side(e) != Side::kRight) continue;
    const auto fc = fundamental_cycle(c, *p.tree, e);
    out.push_back(negative("verify_cycle_contraction_nonplanar/bent_triple",
                           verify_cycle_contraction(c, fc.edges, bent, "bent")));
    break;
  }

  // Without contracting an extra edge the single link of C'' is planar.
  out.push_back(negative("verify_Cpp_contractions/no_contraction", link_nonplanar(p.cdoubleprime, "verify_Cpp_contractions", kNoId)));

  // A cyclic black "forest" isolates the white corner it surrounds.
  {
    auto r = start("verify_small_lemmas", "synthetic");
    const auto cube = build_cuboid(1, 1, 1);
    const auto black = diagonal_graph(cube, Coloring(Point3{0, 0, 0}, Color::kWhite), Color::kBlack);
    std::vector<DiagonalEdge> tri;
    for (const auto& d : black.diagonals) {
      const auto pa = cube.coord(d.a), pb = cube.coord(d.b);
      if (pa.x + pa.y + pa.z == 1 && pb.x + pb.y + pb.z == 1) tri.push_back(d);
    }
    if (white_minus_crossings_connected(cube, tri)) r.summary = {{"connected", true}};
    else fail_with(r, {{"reason", "white corner isolated by a black cycle"}});
    out.push_back(negative("verify_small_lemmas/cyclic_forest", r));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"tree", "routing", "knots", "g14", "contraction", "cpp", "lemmas"};
  return names;
}

VerificationReport run_verification(const Pipeline& p, const VerifyOptions& o) {
  for (const auto& c : o.checks)
    if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
      fail(ErrorKind::kInvalidArgument, "unknown check '" + c + "'");
  auto selected = [&](const char* name) {
    return o.checks.empty() || std::find(o.checks.begin(), o.checks.end(), name) != o.checks.end();
  };
  const Scope routing = o.scope.value_or(Scope::all());
  const Scope knots = o.scope.value_or(Scope::sampled(o.knot_samples, o.sample_seed));
  const Scope contractions = o.scope.value_or(Scope::sampled(o.contraction_samples, o.sample_seed));

  std::vector<std::function<std::vector<CheckRecord>()>> tasks;
  auto one = [](CheckRecord r) { return std::vector<CheckRecord>{std::move(r)}; };
  if (selected("tree")) tasks.push_back([&] { return one(verify_tree(p, p.cprime.tree_edges)); });
  if (selected("routing")) tasks.push_back([&] { return one(verify_routing(p, *p.tree, routing)); });
  if (selected("knots")) tasks.push_back([&] { return one(verify_entangled_canonical(p, knots)); });
  if (selected("g14"))
    tasks.push_back([&] { return std::vector<CheckRecord>{verify_G14(p, Side::kRight), verify_G14(p, Side::kLeft)}; });
  if (selected("contraction")) tasks.push_back([&] { return one(verify_cycle_contraction_nonplanar(p, contractions)); });
  if (selected("cpp")) tasks.push_back([&] { return one(verify_Cpp_contractions(p, contractions)); });
  if (selected("lemmas")) tasks.push_back([&] { return one(verify_small_lemmas(p, 4, o.lemma_trials, o.sample_seed)); });
  if (o.inject_negative) tasks.push_back([&] { return negative_controls(p); });

  std::vector<std::vector<CheckRecord>> results(tasks.size());
  if (o.parallel) {
    std::vector<std::future<std::vector<CheckRecord>>> futures;
    for (auto& t : tasks) futures.push_back(std::async(std::launch::async, t));
    for (std::size_t k = 0; k < futures.size(); ++k) results[k] = futures[k].get();
  } else {
    for (std::size_t k = 0; k < tasks.size(); ++k) results[k] = tasks[k]();
  }
  VerificationReport rep;
  rep.n = p.n;
  rep.seed = p.seed;
  for (auto& batch : results)
    for (auto& r : batch) rep.checks.push_back(std::move(r));
  return rep;
}

}  // namespace entangle
