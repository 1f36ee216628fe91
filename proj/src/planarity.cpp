#include "entangle/planarity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "entangle/error.hpp"

namespace entangle {

const char* kuratowski_name(KuratowskiKind k) {
  switch (k) {
    case KuratowskiKind::kK5:
      return "K5";
    case KuratowskiKind::kK33:
      return "K3,3";
    default:
      return "none";
  }
}

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                     boost::property<boost::vertex_index_t, int>,
                                     boost::property<boost::edge_index_t, int>>;
using BEdge = boost::graph_traits<BGraph>::edge_descriptor;

// Loops dropped, each parallel class represented by its smallest edge id.
struct SimpleReduction {
  std::vector<EdgeId> representative;             // simple edge -> input edge
  std::vector<std::vector<EdgeId>> parallels;     // simple edge -> other input edges, ascending
  std::vector<std::vector<EdgeId>> loops;         // vertex -> loops
};

SimpleReduction reduce(const Multigraph& g) {
  SimpleReduction r;
  r.loops.resize(g.vertex_count());
  std::unordered_map<std::uint64_t, std::size_t> by_pair;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if (ed.is_loop()) {
      r.loops[ed.a].push_back(e);
      continue;
    }
    const std::uint64_t key = (static_cast<std::uint64_t>(std::min(ed.a, ed.b)) << 32) | std::max(ed.a, ed.b);
    auto [it, fresh] = by_pair.emplace(key, r.representative.size());
    if (fresh) {
      r.representative.push_back(e);
      r.parallels.emplace_back();
    } else {
      r.parallels[it->second].push_back(e);
    }
  }
  return r;
}

// Boost's Kuratowski output can carry pendant edges; strip them.
std::vector<EdgeId> prune_pendants(const Multigraph& g, std::vector<EdgeId> edges) {
  std::unordered_map<VertexId, int> deg;
  for (auto e : edges) {
    ++deg[g.edge(e).a];
    ++deg[g.edge(e).b];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<EdgeId> kept;
    for (auto e : edges) {
      const auto& ed = g.edge(e);
      if (deg[ed.a] == 1 || deg[ed.b] == 1) {
        --deg[ed.a];
        --deg[ed.b];
        changed = true;
      } else {
        kept.push_back(e);
      }
    }
    edges = std::move(kept);
  }
  return edges;
}

GraphDart dart_at(const Multigraph& g, EdgeId e, VertexId v) {
  return {e, static_cast<std::uint8_t>(g.edge(e).a == v ? 0 : 1)};
}

}  // namespace

bool embedding_is_planar(const Multigraph& g, const GraphRotation& rotation) {
  return genus_of_rotation(g, rotation).planar();
}

KuratowskiKind classify_kuratowski(const Multigraph& g, const std::vector<EdgeId>& edges,
                                   std::vector<VertexId>* branch_vertices) {
  std::vector<EdgeId> es = edges;
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(es.begin(), es.end()) != es.end()) return KuratowskiKind::kNone;
  std::unordered_map<VertexId, std::vector<EdgeId>> inc;
  for (auto e : es) {
    const auto& ed = g.edge(e);
    if (ed.is_loop()) return KuratowskiKind::kNone;
    inc[ed.a].push_back(e);
    inc[ed.b].push_back(e);
  }
  std::vector<VertexId> branch;
  for (const auto& [v, list] : inc) {
    if (list.size() < 2) return KuratowskiKind::kNone;
    if (list.size() >= 3) branch.push_back(v);
  }
  std::sort(branch.begin(), branch.end());

  // Follow every path leaving a branch vertex through degree-2 vertices.
  std::map<std::pair<VertexId, VertexId>, int> links;
  std::unordered_map<EdgeId, bool> used;
  for (auto b : branch)
    for (auto first : inc[b]) {
      if (used[first]) continue;
      VertexId prev = b;
      EdgeId e = first;
      VertexId cur = g.edge(e).other(prev);
      used[e] = true;
      while (inc[cur].size() == 2) {
        EdgeId next = inc[cur][0] == e ? inc[cur][1] : inc[cur][0];
        if (used[next]) return KuratowskiKind::kNone;
        used[next] = true;
        prev = cur;
        e = next;
        cur = g.edge(e).other(prev);
      }
      if (cur == b) return KuratowskiKind::kNone;
      ++links[{std::min(b, cur), std::max(b, cur)}];
    }
  // Every edge must lie on a branch path (no stray cycles).
  for (auto e : es)
    if (!used[e]) return KuratowskiKind::kNone;
  for (const auto& [pair, mult] : links)
    if (mult != 1) return KuratowskiKind::kNone;

  KuratowskiKind kind = KuratowskiKind::kNone;
  if (branch.size() == 5 && links.size() == 10) {
    kind = KuratowskiKind::kK5;
  } else if (branch.size() == 6 && links.size() == 9) {
    // Complete bipartite iff 2-colourable with sides 3 and 3.
    std::map<VertexId, int> side;
    side[branch[0]] = 0;
    bool changed = true, ok = true;
    while (changed && ok) {
      changed = false;
      for (const auto& [pair, mult] : links) {
        auto a = side.find(pair.first), b = side.find(pair.second);
        if (a != side.end() && b != side.end()) {
          ok = ok && a->second != b->second;
        } else if (a != side.end()) {
          side[pair.second] = 1 - a->second;
          changed = true;
        } else if (b != side.end()) {
          side[pair.first] = 1 - b->second;
          changed = true;
        }
      }
    }
    int ones = 0;
    for (const auto& [v, s] : side) ones += s;
    if (ok && side.size() == 6 && ones == 3) kind = KuratowskiKind::kK33;
  }
  if (kind != KuratowskiKind::kNone && branch_vertices) *branch_vertices = branch;
  return kind;
}

PlanarityVerdict is_planar(const Multigraph& g) {
  auto red = reduce(g);
  const int n = static_cast<int>(g.vertex_count());
  BGraph bg(n);
  for (std::size_t i = 0; i < red.representative.size(); ++i) {
    const auto& ed = g.edge(red.representative[i]);
    auto [be, ok] = boost::add_edge(ed.a, ed.b, bg);
    boost::put(boost::edge_index, bg, be, static_cast<int>(i));
  }

  std::vector<std::vector<BEdge>> emb(static_cast<std::size_t>(n));
  std::vector<BEdge> kur;
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));

  PlanarityVerdict v;
  v.planar = planar;
  if (planar) {
    v.embedding.resize(g.vertex_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      auto& rot = v.embedding[u];
      for (const auto& be : emb[u]) {
        const auto idx = static_cast<std::size_t>(boost::get(boost::edge_index, bg, be));
        const EdgeId rep = red.representative[idx];
        const auto& ed = g.edge(rep);
        const auto& par = red.parallels[idx];
        // A bundle of parallels drawn as nested arcs.
        if (u == std::min(ed.a, ed.b)) {
          rot.push_back(dart_at(g, rep, u));
          for (auto p : par) rot.push_back(dart_at(g, p, u));
        } else {
          for (auto it = par.rbegin(); it != par.rend(); ++it) rot.push_back(dart_at(g, *it, u));
          rot.push_back(dart_at(g, rep, u));
        }
      }
      for (auto l : red.loops[u]) {
        rot.push_back({l, 0});
        rot.push_back({l, 1});
      }
    }
    if (!embedding_is_planar(g, v.embedding))
      fail(ErrorKind::kInternal, "planarity: embedding failed the face-tracing check");
  } else {
    for (const auto& be : kur)
      v.kuratowski_edges.push_back(
          red.representative[static_cast<std::size_t>(boost::get(boost::edge_index, bg, be))]);
    v.kuratowski_edges = prune_pendants(g, std::move(v.kuratowski_edges));
    std::sort(v.kuratowski_edges.begin(), v.kuratowski_edges.end());
    v.kind = classify_kuratowski(g, v.kuratowski_edges, &v.branch_vertices);
    if (v.kind == KuratowskiKind::kNone)
      fail(ErrorKind::kInternal, "planarity: Kuratowski witness is neither K5 nor K3,3");
  }
  return v;
}

std::string witness_dot(const Multigraph& g, const PlanarityVerdict& verdict, std::string_view name) {
  return to_dot(g, name, verdict.kuratowski_edges, verdict.branch_vertices);
}

Multigraph make_complete(std::size_t n) {
  Multigraph g(n);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Multigraph make_complete_bipartite(std::size_t a, std::size_t b) {
  Multigraph g(a + b);
  for (VertexId i = 0; i < a; ++i)
    for (VertexId j = 0; j < b; ++j) g.add_edge(i, static_cast<VertexId>(a + j));
  return g;
}

namespace {

constexpr const char* kG14Vertices[] = {"X1", "X2", "X3", "Y1", "Y2", "Y31", "Y32",
                                        "K",  "L",  "M",  "N",  "Q",  "R",   "S"};
constexpr const char* kG14Edges[][2] = {
    {"X1", "Y1"}, {"X1", "Y2"}, {"X2", "Y1"}, {"X2", "Y2"},  {"X3", "Y1"}, {"X3", "Y2"}, {"X1", "Y31"},
    {"X3", "K"},  {"K", "Y31"}, {"X2", "L"},  {"L", "M"},    {"M", "Y32"}, {"Y2", "K"}, {"Y1", "K"},
    {"X1", "X2"}, {"X3", "S"},  {"L", "Q"},   {"L", "N"},    {"M", "Q"},   {"M", "N"},  {"R", "Y32"},
    {"R", "Q"},   {"R", "N"},   {"R", "S"},   {"S", "Q"},    {"S", "N"}};

Multigraph build_named(bool identify_y3) {
  Multigraph g;
  auto name = [&](const char* l) -> std::string {
    std::string s(l);
    if (identify_y3 && (s == "Y31" || s == "Y32")) return "Y3";
    return s;
  };
  for (auto l : kG14Vertices)
    if (!g.find(name(l))) g.add_vertex(name(l));
  for (const auto& e : kG14Edges) g.add_edge(g.at(name(e[0])), g.at(name(e[1])));
  return g;
}

}  // namespace

Multigraph make_G14() { return build_named(false); }
Multigraph make_G13() { return build_named(true); }

Multigraph make_double_wheel(bool modified) {
  // Complement of the perfect matching {0,1},{2,3},{4,5}.
  Multigraph g(6);
  bool skipped = false;
  for (VertexId i = 0; i < 6; ++i)
    for (VertexId j = i + 1; j < 6; ++j) {
      if (j == i + 1 && i % 2 == 0) continue;
      if (modified && !skipped) {
        skipped = true;
        continue;
      }
      g.add_edge(i, j);
    }
  return g;
}

MinorScript g13_k33_script() {
  MinorScript s;
  s.contractions = {{"L", "M"}, {"M", "Y3"}, {"K", "Y3"}};
  s.left = {"X1", "X2", "X3"};
  s.right = {"Y1", "Y2", "Y3"};
  return s;
}

namespace {

struct Classes {
  std::vector<std::size_t> parent;
  explicit Classes(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  }
  std::size_t root(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
};

bool classes_adjacent(const Multigraph& g, Classes& cls, std::size_t a, std::size_t b) {
  for (const auto& e : g.edges()) {
    auto ra = cls.root(e.a), rb = cls.root(e.b);
    if ((ra == a && rb == b) || (ra == b && rb == a)) return true;
  }
  return false;
}

}  // namespace

MinorCertificate has_k33_minor_via(const Multigraph& g, const MinorScript& script) {
  if (!g.has_labels()) fail(ErrorKind::kInvalidArgument, "minor script: graph has no labels");
  auto need = [&](const std::string& l) {
    auto v = g.find(l);
    if (!v) fail(ErrorKind::kInvalidArgument, "minor script: unknown vertex '" + l + "'");
    return *v;
  };
  Classes cls(g.vertex_count());
  for (const auto& [a, b] : script.contractions) {
    auto ra = cls.root(need(a)), rb = cls.root(need(b));
    if (ra == rb) fail(ErrorKind::kInvalidArgument, "minor script: " + a + " and " + b + " already merged");
    if (!classes_adjacent(g, cls, ra, rb))
      fail(ErrorKind::kInvalidArgument, "minor script: " + a + "-" + b + " is not an edge");
    cls.parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  MinorCertificate cert;
  std::vector<std::size_t> roots;
  for (const auto& l : script.left) roots.push_back(cls.root(need(l)));
  for (const auto& l : script.right) roots.push_back(cls.root(need(l)));
  auto sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    cert.reason = "two side vertices were merged";
    return cert;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j)
      if (!classes_adjacent(g, cls, roots[i], roots[j])) {
        cert.reason = "no edge between " + (i < 3 ? script.left[i] : "") + " and " + script.right[j - 3];
        return cert;
      }
  for (auto r : roots) {
    std::vector<std::string> set;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (cls.root(v) == r) set.push_back(g.label(v));
    cert.branch_sets.push_back(std::move(set));
  }
  cert.holds = true;
  return cert;
}

MinorCertificate has_k33_minor_via(const Multigraph& g,
                                   const std::array<std::vector<VertexId>, 3>& left,
                                   const std::array<std::vector<VertexId>, 3>& right) {
  MinorCertificate cert;
  std::vector<int> owner(g.vertex_count(), -1);
  std::vector<const std::vector<VertexId>*> sets;
  for (const auto& s : left) sets.push_back(&s);
  for (const auto& s : right) sets.push_back(&s);
  for (int i = 0; i < 6; ++i) {
    if (sets[i]->empty()) {
      cert.reason = "empty branch set";
      return cert;
    }
    for (auto v : *sets[i]) {
      if (v >= g.vertex_count()) fail(ErrorKind::kInvalidArgument, "branch set names an unknown vertex");
      if (owner[v] != -1) {
        cert.reason = "branch sets overlap";
        return cert;
      }
      owner[v] = i;
    }
  }
  // Connectivity of each set through its own vertices.
  Classes cls(g.vertex_count());
  for (const auto& e : g.edges())
    if (owner[e.a] != -1 && owner[e.a] == owner[e.b]) {
      auto ra = cls.root(e.a), rb = cls.root(e.b);
      if (ra != rb) cls.parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  for (int i = 0; i < 6; ++i)
    for (auto v : *sets[i])
      if (cls.root(v) != cls.root(sets[i]->front())) {
        cert.reason = "branch set " + std::to_string(i) + " is disconnected";
        return cert;
      }
  bool adj[6][6] = {};
  for (const auto& e : g.edges())
    if (owner[e.a] != -1 && owner[e.b] != -1) adj[owner[e.a]][owner[e.b]] = adj[owner[e.b]][owner[e.a]] = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j)
      if (!adj[i][j]) {
        cert.reason = "branch sets " + std::to_string(i) + " and " + std::to_string(j) + " are not adjacent";
        return cert;
      }
  for (auto* s : sets) {
    std::vector<std::string> names;
    for (auto v : *s) names.push_back(g.has_labels() && g.vertex_count() ? g.label(v) : std::to_string(v));
    cert.branch_sets.push_back(std::move(names));
  }
  cert.holds = true;
  return cert;
}

void check_minor_consistency(const PlanarityVerdict& verdict, const MinorCertificate& cert) {
  if (verdict.planar && cert.holds)
    fail(ErrorKind::kInternal, "graph reported planar while holding a K3,3 minor certificate");
}

namespace {

// Simple graph on at most 16 vertices as adjacency bitmasks.
using Adj = std::vector<std::uint32_t>;

int popcount(std::uint32_t x) { return __builtin_popcount(x); }

// Removes vertices of degree <= 1 and suppresses degree-2 vertices; neither
// changes whether a K3,3 subdivision exists.
Adj normalize(Adj a) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < a.size(); ++v) {
      int d = popcount(a[v]);
      if (d == 0) continue;
      if (d == 1) {
        auto u = __builtin_ctz(a[v]);
        a[u] &= ~(1u << v);
        a[v] = 0;
        changed = true;
      } else if (d == 2) {
        auto u = __builtin_ctz(a[v]);
        auto w = __builtin_ctz(a[v] & ~(1u << u));
        a[u] &= ~(1u << v);
        a[w] &= ~(1u << v);
        a[v] = 0;
        a[u] |= 1u << w;
        a[w] |= 1u << u;
        changed = true;
      }
    }
  }
  // Compact away empty vertices.
  std::vector<int> map(a.size(), -1);
  int k = 0;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v]) map[v] = k++;
  Adj out(static_cast<std::size_t>(k), 0);
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v])
      for (std::size_t u = 0; u < a.size(); ++u)
        if (a[v] >> u & 1u) out[static_cast<std::size_t>(map[v])] |= 1u << map[u];
  return out;
}

bool contains_k33_subgraph(const Adj& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> cand;
  for (int v = 0; v < n; ++v)
    if (popcount(a[static_cast<std::size_t>(v)]) >= 3) cand.push_back(v);
  const int m = static_cast<int>(cand.size());
  // Choose the left side, then look for three vertices adjacent to all of it.
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        std::uint32_t common = a[cand[i]] & a[cand[j]] & a[cand[k]];
        common &= ~((1u << cand[i]) | (1u << cand[j]) | (1u << cand[k]));
        if (popcount(common) >= 3) return true;
      }
  return false;
}

std::string key_of(const Adj& a) {
  std::string s(a.size() * 4, '\0');
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int b = 0; b < 4; ++b) s[i * 4 + b] = static_cast<char>(a[i] >> (8 * b));
  return s;
}

bool search_minor(const Adj& raw, std::unordered_map<std::string, bool>& memo) {
  Adj a = normalize(raw);
  if (a.size() < 6) return false;
  std::size_t edges = 0;
  for (auto m : a) edges += static_cast<std::size_t>(popcount(m));
  if (edges / 2 < 9) return false;
  auto key = key_of(a);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool found = contains_k33_subgraph(a);
  for (std::size_t v = 0; v < a.size() && !found; ++v)
    for (std::size_t u = v + 1; u < a.size() && !found; ++u) {
      if (!(a[v] >> u & 1u)) continue;
      // Contract uv into v.
      Adj c = a;
      c[v] |= c[u];
      c[v] &= ~((1u << v) | (1u << u));
      for (std::size_t w = 0; w < c.size(); ++w)
        if (c[w] >> u & 1u) {
          c[w] &= ~(1u << u);
          if (w != v) c[w] |= 1u << v;
        }
      c[u] = 0;
      found = search_minor(c, memo);
      if (found) break;
      Adj d = a;
      d[v] &= ~(1u << u);
      d[u] &= ~(1u << v);
      found = search_minor(d, memo);
    }
  memo.emplace(std::move(key), found);
  return found;
}

}  // namespace

bool has_k33_minor_bruteforce(const Multigraph& g) {
  if (g.vertex_count() > 16) fail(ErrorKind::kInvalidArgument, "brute-force minor search is limited to 16 vertices");
  Adj a(g.vertex_count(), 0);
  for (const auto& e : g.edges())
    if (!e.is_loop()) {
      a[e.a] |= 1u << e.b;
      a[e.b] |= 1u << e.a;
    }
  std::unordered_map<std::string, bool> memo;
  return search_minor(a, memo);
}

namespace {

// Multiplicity matrix, loops on the diagonal.
std::vector<std::vector<int>> multiplicity(const Multigraph& g) {
  std::vector<std::vector<int>> m(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
  for (const auto& e : g.edges()) {
    ++m[e.a][e.b];
    if (e.a != e.b) ++m[e.b][e.a];
  }
  return m;
}

// Stable colour refinement; colours are comparable across the two graphs
// because both are refined with one shared signature table.
void refine(const std::vector<std::vector<int>>& ma, const std::vector<std::vector<int>>& mb,
            std::vector<int>& ca, std::vector<int>& cb) {
  const std::size_t n = ma.size();
  for (;;) {
    std::map<std::vector<int>, int> table;
    auto signature = [&](const std::vector<std::vector<int>>& m, const std::vector<int>& c, std::size_t v) {
      std::vector<int> sig = {c[v], m[v][v]};
      std::vector<std::pair<int, int>> nb;
      for (std::size_t u = 0; u < n; ++u)
        if (u != v && m[v][u]) nb.push_back({c[u], m[v][u]});
      std::sort(nb.begin(), nb.end());
      for (auto [col, mult] : nb) {
        sig.push_back(col);
        sig.push_back(mult);
      }
      return sig;
    };
    std::vector<std::vector<int>> sa(n), sb(n);
    for (std::size_t v = 0; v < n; ++v) {
      sa[v] = signature(ma, ca, v);
      sb[v] = signature(mb, cb, v);
      table.emplace(sa[v], 0);
      table.emplace(sb[v], 0);
    }
    int next = 0;
    for (auto& [sig, id] : table) id = next++;
    std::vector<int> na(n), nb(n);
    for (std::size_t v = 0; v < n; ++v) {
      na[v] = table[sa[v]];
      nb[v] = table[sb[v]];
    }
    auto classes = [](const std::vector<int>& c) {
      auto s = c;
      std::sort(s.begin(), s.end());
      return std::unique(s.begin(), s.end()) - s.begin();
    };
    const bool stable = classes(na) == classes(ca) && classes(nb) == classes(cb);
    ca = std::move(na);
    cb = std::move(nb);
    if (stable) return;
  }
}

}  // namespace

std::optional<std::vector<VertexId>> find_isomorphism(const Multigraph& a, const Multigraph& b) {
  if (a.vertex_count() > 64 || b.vertex_count() > 64)
    fail(ErrorKind::kInvalidArgument, "isomorphism test is limited to 64 vertices");
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;
  const std::size_t n = a.vertex_count();
  auto ma = multiplicity(a), mb = multiplicity(b);
  std::vector<int> ca(n, 0), cb(n, 0);
  refine(ma, mb, ca, cb);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  // Map rarest colours first.
  std::map<int, int> freq;
  for (auto c : ca) ++freq[c];
  std::vector<VertexId> order(n);
  for (VertexId i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](VertexId x, VertexId y) { return freq[ca[x]] < freq[ca[y]]; });

  std::vector<VertexId> map(n, kNoId);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const VertexId v = order[depth];
    for (VertexId w = 0; w < n; ++w) {
      if (used[w] || cb[w] != ca[v] || mb[w][w] != ma[v][v]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const VertexId u = order[k];
        ok = ma[v][u] == mb[w][map[u]];
      }
      if (!ok) continue;
      map[v] = w;
      used[w] = true;
      if (extend(depth + 1)) return true;
      used[w] = false;
      map[v] = kNoId;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

bool is_isomorphic(const Multigraph& a, const Multigraph& b) { return find_isomorphism(a, b).has_value(); }

std::vector<VertexId> cut_vertices(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  auto inc = g.incidence();
  std::vector<std::uint32_t> disc(n, kNoId), low(n, 0);
  std::vector<bool> is_cut(n, false);
  std::uint32_t timer = 0;
  struct Frame {
    VertexId v;
    EdgeId parent_edge;
    std::size_t next;
    std::size_t children;
  };
  for (VertexId s = 0; s < n; ++s) {
    if (disc[s] != kNoId) continue;
    std::vector<Frame> stack = {{s, kNoId, 0, 0}};
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.next < inc[f.v].size()) {
        const auto d = inc[f.v][f.next++];
        const auto& e = g.edge(d.edge);
        if (e.is_loop() || d.edge == f.parent_edge) continue;
        const VertexId w = e.other(f.v);
        if (disc[w] == kNoId) {
          disc[w] = low[w] = timer++;
          ++f.children;
          stack.push_back({w, d.edge, 0, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          auto& p = stack.back();
          low[p.v] = std::min(low[p.v], low[done.v]);
          if (stack.size() > 1 && low[done.v] >= disc[p.v]) is_cut[p.v] = true;
        } else if (done.children > 1) {
          is_cut[done.v] = true;
        }
      }
    }
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

bool is_2_connected(const Multigraph& g) {
  if (g.vertex_count() < 3) fail(ErrorKind::kInvalidArgument, "2-connectivity needs at least three vertices");
  return component_count(g) == 1 && cut_vertices(g).empty();
}

}  // namespace entangle
