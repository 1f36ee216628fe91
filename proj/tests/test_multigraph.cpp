#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "entangle/error.hpp"
#include "entangle/multigraph.hpp"

using namespace entangle;

namespace {

Multigraph complete(std::size_t n) {
  Multigraph g(n);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

EdgeId edge_between(const Multigraph& g, VertexId a, VertexId b) {
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    if ((ed.a == a && ed.b == b) || (ed.a == b && ed.b == a)) return e;
  }
  return kNoId;
}

}  // namespace

TEST(Multigraph, LabelsAreUnique) {
  Multigraph g;
  g.add_vertex("a");
  EXPECT_THROW(g.add_vertex("a"), Error);
  EXPECT_THROW(g.add_vertex(), Error);
  EXPECT_EQ(g.at("a"), 0u);
  EXPECT_THROW(g.at("b"), Error);
}

TEST(Multigraph, LoopsCountTwiceInDegree) {
  Multigraph g(2);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  EXPECT_EQ(g.degree(0), 3u);
  EXPECT_EQ(g.degrees()[1], 1u);
}

TEST(VertexSum, TwoTrianglesGiveFourCycle) {
  auto k3 = complete(3);
  // Sum at vertex 0 of both: its edges are 0-1 (id 0) and 0-2 (id 1).
  auto s = vertex_sum(k3, 0, k3, 0, {{0, 0}, {1, 1}});
  ASSERT_EQ(s.vertex_count(), 4u);
  ASSERT_EQ(s.edge_count(), 4u);
  for (auto d : s.degrees()) EXPECT_EQ(d, 2u);
  EXPECT_EQ(component_count(s), 1u);
}

TEST(VertexSum, IsolatedVerticesGiveDisjointUnion) {
  Multigraph g1(3), g2(2);
  g1.add_edge(1, 2);
  g2.add_edge(0, 1);
  g2.add_edge(0, 1);
  Multigraph lone(1);
  auto s = vertex_sum(g1, 0, lone, 0, {});
  EXPECT_EQ(s.vertex_count(), 2u);
  EXPECT_EQ(s.edge_count(), 1u);
}

TEST(VertexSum, RejectsDegreeMismatchAndIncompletePairing) {
  auto k3 = complete(3);
  auto k4 = complete(4);
  EXPECT_THROW(vertex_sum(k3, 0, k4, 0, {{0, 0}, {1, 1}}), Error);
  EXPECT_THROW(vertex_sum(k3, 0, k3, 0, {{0, 0}}), Error);
  EXPECT_THROW(vertex_sum(k3, 0, k3, 0, {{0, 0}, {0, 1}}), Error);
}

TEST(VertexSum, KeepsLabels) {
  Multigraph a, b;
  for (auto l : {"x", "p", "q"}) a.add_vertex(l);
  for (auto l : {"y", "r", "s"}) b.add_vertex(l);
  a.add_edge(0, 1);
  a.add_edge(0, 2);
  b.add_edge(0, 1);
  b.add_edge(0, 2);
  auto s = vertex_sum(a, 0, b, 0, {{0, 1}, {1, 0}});
  EXPECT_NE(edge_between(s, s.at("p"), s.at("s")), kNoId);
  EXPECT_NE(edge_between(s, s.at("q"), s.at("r")), kNoId);
}

TEST(InternalVertexSum, SmallestCaseLeavesLoop) {
  Multigraph g(3);  // x=0, a=1, y=2
  EdgeId xa = g.add_edge(0, 1);
  EdgeId ay = g.add_edge(1, 2);
  g.add_edge(0, 2);
  auto r = internal_vertex_sum(g, 0, 2, {{xa, ay}});
  ASSERT_EQ(r.vertex_count(), 1u);
  ASSERT_EQ(r.edge_count(), 1u);
  EXPECT_TRUE(r.edge(0).is_loop());
}

TEST(InternalVertexSum, VacuousStepsDeleteXAndY) {
  Multigraph g(4);
  g.add_edge(2, 3);
  auto r = internal_vertex_sum(g, 0, 1, {});
  EXPECT_EQ(r.vertex_count(), 2u);
  EXPECT_EQ(r.edge_count(), 1u);
}

TEST(InternalVertexSum, RejectsMissingEnds) {
  Multigraph g(4);
  EdgeId xa = g.add_edge(0, 2);
  g.add_edge(1, 3);
  EXPECT_THROW(internal_vertex_sum(g, 0, 1, {{xa, xa}}), Error);
  EXPECT_THROW(internal_vertex_sum(g, 0, 1, {}), Error);
}

TEST(Merge, DropsInternalEdges) {
  auto k4 = complete(4);
  const VertexId group[] = {1, 2};
  auto m = merge_vertices(k4, group);
  EXPECT_EQ(m.vertex_count(), 3u);
  EXPECT_EQ(m.edge_count(), 5u);
}

TEST(DeleteVertices, InducedSubgraph) {
  auto k4 = complete(4);
  const VertexId rm[] = {3};
  auto d = delete_vertices(k4, rm);
  EXPECT_EQ(d.vertex_count(), 3u);
  EXPECT_EQ(d.edge_count(), 3u);
}

namespace {

// Darts at each vertex, in edge-id order.
GraphRotation default_rotation(const Multigraph& g) { return g.incidence(); }

// All rotation systems of g, by permuting every rotator's tail after its first dart.
template <typename F>
void for_each_rotation(const Multigraph& g, F&& f) {
  auto base = default_rotation(g);
  std::function<void(std::size_t, GraphRotation&)> rec = [&](std::size_t v, GraphRotation& r) {
    if (v == r.size()) {
      f(r);
      return;
    }
    auto& rot = r[v];
    if (rot.size() <= 2) {
      rec(v + 1, r);
      return;
    }
    std::sort(rot.begin() + 1, rot.end());
    do {
      rec(v + 1, r);
    } while (std::next_permutation(rot.begin() + 1, rot.end()));
  };
  rec(0, base);
}

}  // namespace

TEST(Genus, K4HasAPlanarRotationWithFourFaces) {
  auto k4 = complete(4);
  std::size_t planar = 0;
  for_each_rotation(k4, [&](const GraphRotation& r) {
    auto t = genus_of_rotation(k4, r);
    if (t.planar()) {
      ++planar;
      EXPECT_EQ(t.face_count, 4u);
    }
  });
  EXPECT_GT(planar, 0u);
}

TEST(Genus, K5IsNeverPlanar) {
  auto k5 = complete(5);
  std::size_t count = 0;
  for_each_rotation(k5, [&](const GraphRotation& r) {
    EXPECT_FALSE(genus_of_rotation(k5, r).planar());
    ++count;
  });
  EXPECT_EQ(count, 7776u);  // (3!)^5
}

TEST(Genus, SingleLoopHasTwoFaces) {
  Multigraph g(1);
  g.add_edge(0, 0);
  GraphRotation r = {{{0, 0}, {0, 1}}};
  auto t = genus_of_rotation(g, r);
  EXPECT_EQ(t.face_count, 2u);
  EXPECT_TRUE(t.planar());
}

TEST(Genus, FaceDegreesSumToTwiceEdges) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Multigraph g(6);
    for (int i = 0; i < 10; ++i)
      g.add_edge(static_cast<VertexId>(rng() % 6), static_cast<VertexId>(rng() % 6));
    auto r = default_rotation(g);
    for (auto& rot : r) std::shuffle(rot.begin(), rot.end(), rng);
    auto t = genus_of_rotation(g, r);
    std::size_t sum = 0;
    for (auto d : t.face_degrees) sum += d;
    EXPECT_EQ(sum, 2 * g.edge_count());
  }
}

TEST(Genus, RejectsMalformedRotation) {
  auto k3 = complete(3);
  auto r = default_rotation(k3);
  r[0].pop_back();
  EXPECT_THROW(genus_of_rotation(k3, r), Error);
  r = default_rotation(k3);
  r[0].push_back(r[0].front());
  EXPECT_THROW(genus_of_rotation(k3, r), Error);
  r = default_rotation(k3);
  std::swap(r[0], r[1]);
  EXPECT_THROW(genus_of_rotation(k3, r), Error);
}

TEST(Dot, HighlightsEdges) {
  auto k3 = complete(3);
  const EdgeId hl[] = {1};
  auto s = to_dot(k3, "k3", hl);
  EXPECT_NE(s.find("v0 -- v2 [color=red"), std::string::npos);
}
