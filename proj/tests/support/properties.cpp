#include "support/properties.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "entangle/cuboid.hpp"
#include "entangle/planarity.hpp"

namespace fixtures {

using namespace entangle;

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

void record(PropertyResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

}  // namespace

TwoComplex random_complex(std::mt19937_64& rng) {
  TwoComplex c;
  const std::size_t V = 1 + pick(rng, 6);
  for (VertexId v = 0; v < V; ++v) c.add_vertex(v);
  const std::size_t E = 1 + pick(rng, 8);
  for (std::size_t k = 0; k < E; ++k) c.add_edge(static_cast<VertexId>(pick(rng, V)), static_cast<VertexId>(pick(rng, V)));

  std::vector<std::vector<FaceDart>> leaving(V);
  for (const auto& e : c.edges()) {
    leaving[e.tail].push_back({e.id, true});
    leaving[e.head].push_back({e.id, false});
  }
  const std::size_t F = pick(rng, 6);
  for (std::size_t f = 0; f < F; ++f) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      const std::size_t len = 1 + pick(rng, 5);
      const auto start = static_cast<VertexId>(pick(rng, V));
      std::vector<FaceDart> walk;
      VertexId at = start;
      bool stuck = false;
      for (std::size_t k = 0; k + 1 < len && !stuck; ++k) {
        if (leaving[at].empty()) {
          stuck = true;
          break;
        }
        const auto d = leaving[at][pick(rng, leaving[at].size())];
        walk.push_back(d);
        at = c.dart_head(d);
      }
      if (stuck) continue;
      std::vector<FaceDart> closing;
      for (const auto& d : leaving[at])
        if (c.dart_head(d) == start) closing.push_back(d);
      if (closing.empty()) continue;
      walk.push_back(closing[pick(rng, closing.size())]);
      c.add_face(std::move(walk));
      break;
    }
  }
  return c;
}

PropertyResult link_sum_consistency(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  std::size_t attempts = 0;
  while (r.trials < trials && attempts++ < 100 * trials) {
    const auto c = random_complex(rng);
    const EdgeId e = c.edges()[pick(rng, c.edge_count())].id;
    const auto& er = c.edge(e);
    // The pairings below assume each face crosses e at most once.
    bool ok = true;
    for (const auto& f : c.faces())
      ok = ok && std::count_if(f.walk.begin(), f.walk.end(), [&](const FaceDart& d) { return d.edge == e; }) <= 1;
    if (!ok) continue;
    ++r.trials;

    const auto contracted = contract_edge(c, e);
    Multigraph expected;
    if (!er.is_loop()) {
      const auto lu = link_graph(c, er.tail), lv = link_graph(c, er.head);
      EdgePairing pairing;
      for (const auto& f : c.faces())
        for (std::uint32_t j = 0; j < f.walk.size(); ++j) {
          if (f.walk[j].edge != e) continue;
          const auto prev = static_cast<std::uint32_t>((j + f.walk.size() - 1) % f.walk.size());
          const FaceCorner at_tail{f.id, f.walk[j].forward ? prev : j};
          const FaceCorner at_head{f.id, f.walk[j].forward ? j : prev};
          pairing.push_back({lu.edge_of(at_tail), lv.edge_of(at_head)});
        }
      expected = vertex_sum(lu.graph, lu.vertex_of({e, 0}), lv.graph, lv.vertex_of({e, 1}), pairing);
    } else {
      const auto lv = link_graph(c, er.tail);
      EdgePairing pairing;
      for (const auto& f : c.faces())
        for (std::uint32_t j = 0; j < f.walk.size(); ++j) {
          if (f.walk[j].edge != e || f.walk.size() == 1) continue;
          const auto prev = static_cast<std::uint32_t>((j + f.walk.size() - 1) % f.walk.size());
          const FaceCorner at_tail{f.id, f.walk[j].forward ? prev : j};
          const FaceCorner at_head{f.id, f.walk[j].forward ? j : prev};
          pairing.push_back({lv.edge_of(at_tail), lv.edge_of(at_head)});
        }
      expected = internal_vertex_sum(lv.graph, lv.vertex_of({e, 0}), lv.vertex_of({e, 1}), pairing);
    }
    const auto actual = link_graph(contracted, std::min(er.tail, er.head)).graph;
    if (!is_isomorphic(expected, actual)) {
      std::ostringstream os;
      os << "trial " << r.trials << ": edge " << e << (er.is_loop() ? " (loop)" : "") << " link has "
         << actual.vertex_count() << "/" << actual.edge_count() << ", sum has " << expected.vertex_count() << "/"
         << expected.edge_count();
      record(r, os.str());
    }
  }
  return r;
}

PropertyResult contraction_commutativity(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  while (r.trials < trials) {
    const auto c = random_complex(rng);
    if (c.edge_count() < 2) continue;
    const EdgeId e = c.edges()[pick(rng, c.edge_count())].id;
    EdgeId f = e;
    while (f == e) f = c.edges()[pick(rng, c.edge_count())].id;
    ++r.trials;
    const auto ef = contract_edge(contract_edge(c, e), f);
    const auto fe = contract_edge(contract_edge(c, f), e);
    const std::vector<EdgeId> both = {e, f};
    const auto at_once = contract_edge_set(c, both);
    if (!(ef == fe) || !(ef == at_once))
      record(r, "trial " + std::to_string(r.trials) + ": edges " + std::to_string(e) + ", " + std::to_string(f));
  }
  return r;
}

namespace {

// Cyclic orders of one vertex's darts with the first dart fixed.
std::vector<std::vector<GraphDart>> cyclic_orders(std::vector<GraphDart> darts) {
  if (darts.size() <= 2) return {darts};
  std::vector<std::vector<GraphDart>> out;
  std::sort(darts.begin() + 1, darts.end());
  do out.push_back(darts);
  while (std::next_permutation(darts.begin() + 1, darts.end()));
  return out;
}

}  // namespace

bool rotation_search_planar(const Multigraph& g) {
  const auto inc = g.incidence();
  std::vector<std::vector<std::vector<GraphDart>>> orders;
  for (const auto& darts : inc) orders.push_back(cyclic_orders(darts));
  std::vector<std::size_t> idx(orders.size(), 0);
  GraphRotation rot(orders.size());
  for (;;) {
    for (std::size_t v = 0; v < orders.size(); ++v) rot[v] = orders[v][idx[v]];
    if (genus_of_rotation(g, rot).planar()) return true;
    std::size_t v = 0;
    while (v < idx.size() && ++idx[v] == orders[v].size()) idx[v++] = 0;
    if (v == idx.size()) return false;
  }
}

double rotation_count(const Multigraph& g) {
  double total = 1;
  for (const auto& darts : g.incidence())
    for (std::size_t k = 2; k < darts.size(); ++k) total *= static_cast<double>(k);
  return total;
}

bool rotation_planarity_agrees(const Multigraph& g) {
  const auto verdict = is_planar(g);
  const bool embedding_ok = !verdict.planar || genus_of_rotation(g, verdict.embedding).planar();
  return embedding_ok && verdict.planar == rotation_search_planar(g);
}

PropertyResult rotation_planarity_agreement(std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyResult r;
  while (r.trials < trials) {
    Multigraph g(3 + pick(rng, 4));
    const std::size_t E = pick(rng, 11);
    for (std::size_t k = 0; k < E; ++k) {
      const auto a = static_cast<VertexId>(pick(rng, g.vertex_count()));
      // Loops are rarer than ordinary edges.
      const auto b = pick(rng, 8) == 0 ? a : static_cast<VertexId>(pick(rng, g.vertex_count()));
      g.add_edge(a, b);
    }
    if (rotation_count(g) > 50000) continue;
    ++r.trials;
    const bool planar = is_planar(g).planar;
    r.negatives += !planar;
    if (!rotation_planarity_agrees(g))
      record(r, "trial " + std::to_string(r.trials) + ": " + std::to_string(g.vertex_count()) + " vertices, " +
                    std::to_string(g.edge_count()) + " edges, is_planar says " + (planar ? "planar" : "nonplanar"));
  }
  return r;
}

PropertyResult rotation_planarity_exhaustive(std::size_t vertices, std::size_t max_edges) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId a = 0; a < vertices; ++a)
    for (VertexId b = a + 1; b < vertices; ++b) pairs.emplace_back(a, b);
  PropertyResult r;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) > max_edges) continue;
    Multigraph g(vertices);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) g.add_edge(pairs[k].first, pairs[k].second);
    ++r.trials;
    r.negatives += !is_planar(g).planar;
    if (!rotation_planarity_agrees(g)) record(r, "edge mask " + std::to_string(mask));
  }
  return r;
}

PropertyResult cuboid_h1_vanishes(std::int64_t max_side) {
  PropertyResult r;
  for (std::int64_t a = 1; a <= max_side; ++a)
    for (std::int64_t b = 1; b <= max_side; ++b)
      for (std::int64_t c = 1; c <= max_side; ++c) {
        ++r.trials;
        const auto h = h1_rank(build_cuboid(a, b, c).complex());
        if (h.rank != 0)
          record(r, "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ") has rank " +
                        std::to_string(h.rank));
      }
  return r;
}

}  // namespace fixtures
