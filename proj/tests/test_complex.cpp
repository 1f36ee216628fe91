#include <gtest/gtest.h>

#include <algorithm>

#include "entangle/complex.hpp"
#include "entangle/cuboid.hpp"
#include "entangle/error.hpp"

using namespace entangle;

namespace {

// Square a=0,b=1,c=2,d=3 with edges i: i -> i+1.
TwoComplex unit_square() {
  TwoComplex c;
  for (VertexId v = 0; v < 4; ++v) c.add_vertex(v);
  for (VertexId v = 0; v < 4; ++v) c.add_edge(v, (v + 1) % 4);
  c.add_face({{0, true}, {1, true}, {2, true}, {3, true}});
  return c;
}

TwoComplex loop_disk() {
  TwoComplex c;
  c.add_vertex(0);
  c.add_edge(0, 0);
  c.add_face({{0, true}});
  return c;
}

std::vector<VertexId> walk_tails(const TwoComplex& c, FaceId f) {
  std::vector<VertexId> out;
  for (const auto& d : c.face(f).walk) out.push_back(c.dart_tail(d));
  return out;
}

}  // namespace

TEST(TwoComplex, RejectsOpenWalks) {
  TwoComplex c;
  for (VertexId v = 0; v < 3; ++v) c.add_vertex(v);
  c.add_edge(0, 1);
  c.add_edge(1, 2);
  EXPECT_THROW(c.add_face({{0, true}, {1, true}}), Error);
  EXPECT_THROW(c.add_face({}), Error);
  EXPECT_THROW(c.add_edge(0, 9), Error);
}

TEST(LinkGraph, IsolatedVertexHasEmptyLink) {
  TwoComplex c;
  c.add_vertex(5);
  auto l = link_graph(c, 5);
  EXPECT_EQ(l.graph.vertex_count(), 0u);
  EXPECT_EQ(l.graph.edge_count(), 0u);
  EXPECT_THROW(link_graph(c, 6), Error);
}

TEST(LinkGraph, LoopDiskHasTwoEndsAndOneCorner) {
  auto c = loop_disk();
  auto l = link_graph(c, 0);
  ASSERT_EQ(l.graph.vertex_count(), 2u);
  ASSERT_EQ(l.graph.edge_count(), 1u);
  EXPECT_FALSE(l.graph.edge(0).is_loop());
}

TEST(LinkGraph, CubeCornerIsTriangle) {
  auto cube = build_cuboid(1, 1, 1);
  auto l = link_graph(cube.complex(), 0);
  ASSERT_EQ(l.graph.vertex_count(), 3u);
  ASSERT_EQ(l.graph.edge_count(), 3u);
  for (auto d : l.graph.degrees()) EXPECT_EQ(d, 2u);
}

TEST(Contract, SquareSideGivesTriangle) {
  auto c = contract_edge(unit_square(), 0);
  EXPECT_EQ(c.vertex_count(), 3u);
  EXPECT_EQ(c.edge_count(), 3u);
  ASSERT_EQ(c.face_count(), 1u);
  EXPECT_EQ(c.faces()[0].walk.size(), 3u);
  EXPECT_EQ(walk_tails(c, 0), (std::vector<VertexId>{0, 2, 3}));
}

TEST(Contract, LoopDiskFaceIsDeleted) {
  auto c = contract_edge(loop_disk(), 0);
  EXPECT_EQ(c.vertex_count(), 1u);
  EXPECT_EQ(c.edge_count(), 0u);
  EXPECT_EQ(c.face_count(), 0u);
  EXPECT_EQ(link_graph(c, 0).graph.vertex_count(), 0u);
}

TEST(Contract, SpanningTreeLeavesOneVertex) {
  auto cube = build_cuboid(1, 1, 1);
  const auto& cx = cube.complex();
  // Edges 0..2 leave vertex 0; the rest of a spanning tree by hand.
  std::vector<EdgeId> tree;
  std::vector<std::size_t> parent(cx.vertex_count());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& e : cx.edges()) {
    auto a = root(cx.vertex_index(e.tail)), b = root(cx.vertex_index(e.head));
    if (a == b) continue;
    parent[a] = b;
    tree.push_back(e.id);
  }
  ASSERT_EQ(tree.size(), 7u);
  auto c = contract_edge_set(cx, tree);
  EXPECT_EQ(c.vertex_count(), 1u);
  EXPECT_EQ(c.vertices()[0], 0u);
  EXPECT_EQ(c.edge_count(), 5u);
  for (const auto& e : c.edges()) EXPECT_TRUE(e.is_loop());
  EXPECT_EQ(contracted_vertex(cx, tree, 7), 0u);
}

TEST(Contract, EmptyListIsIdentity) {
  auto cube = build_cuboid(2, 1, 1);
  EXPECT_EQ(contract_edge_set(cube.complex(), {}), cube.complex());
}

TEST(Contract, UnknownEdgeThrows) { EXPECT_THROW(contract_edge(unit_square(), 9), Error); }

TEST(Subdivide, SquareSplitsIntoTwoTriangles) {
  auto r = subdivide_face(unit_square(), 0, 0, 2);
  const auto& c = r.complex;
  ASSERT_EQ(r.new_edges.size(), 1u);
  EXPECT_EQ(c.edge(r.new_edges[0]).tail, 0u);
  EXPECT_EQ(c.edge(r.new_edges[0]).head, 2u);
  EXPECT_FALSE(c.has_face(0));
  EXPECT_EQ(walk_tails(c, r.new_faces[0].first), (std::vector<VertexId>{0, 1, 2}));
  EXPECT_EQ(walk_tails(c, r.new_faces[0].second), (std::vector<VertexId>{0, 2, 3}));
}

TEST(Subdivide, RejectsSecondSubdivisionAndAdjacentCorners) {
  auto r = subdivide_face(unit_square(), 0, 0, 2);
  EXPECT_THROW(subdivide_face(r.complex, 0, 1, 3), Error);
  EXPECT_THROW(subdivide_face(unit_square(), 0, 0, 1), Error);
  EXPECT_THROW(subdivide_face(unit_square(), 0, 0, 7), Error);
  const Subdivision twice[] = {{0, 0, 2}, {0, 1, 3}};
  EXPECT_THROW(subdivide_faces(unit_square(), twice), Error);
}

TEST(Subdivide, FaceCountGrowsByDiagonals) {
  auto cube = build_cuboid(2, 2, 2);
  std::vector<Subdivision> reqs;
  for (const auto& f : cube.complex().faces()) {
    if (f.id % 3 != 0) continue;
    auto q = cube.square_corners(f.id);
    reqs.push_back({f.id, q[0], q[2]});
  }
  auto r = subdivide_faces(cube.complex(), reqs);
  EXPECT_EQ(r.complex.face_count(), cube.complex().face_count() + reqs.size());
  EXPECT_EQ(r.complex.edge_count(), cube.complex().edge_count() + reqs.size());
  EXPECT_EQ(h1_rank(r.complex).rank, 0u);
}

TEST(Homology, LoopWithoutFacesHasRankOne) {
  TwoComplex c;
  c.add_vertex(0);
  c.add_edge(0, 0);
  auto h = h1_rank(c);
  EXPECT_EQ(h.rank, 1u);
  EXPECT_EQ(h.boundary1_rank, 0u);
  EXPECT_EQ(h.boundary2_rank, 0u);
}

TEST(Homology, CubeSurfaceIsAcyclic) {
  auto cube = build_cuboid(1, 1, 1);
  auto h = h1_rank(cube.complex());
  EXPECT_EQ(h.rank, 0u);
  EXPECT_EQ(h.boundary1_rank, 7u);
  EXPECT_EQ(h.boundary2_rank, 5u);
}

TEST(Homology, TorusHasRankTwo) {
  // One vertex, edges a, b, face a b a^-1 b^-1.
  TwoComplex c;
  c.add_vertex(0);
  c.add_edge(0, 0);
  c.add_edge(0, 0);
  c.add_face({{0, true}, {1, true}, {0, false}, {1, false}});
  EXPECT_EQ(h1_rank(c).rank, 2u);
}

TEST(Homology, ProjectivePlaneIsRationallyAcyclic) {
  TwoComplex c;
  c.add_vertex(0);
  c.add_edge(0, 0);
  c.add_face({{0, true}, {0, true}});
  EXPECT_EQ(h1_rank(c).rank, 0u);
}

TEST(Homology, RationalRankOfSmallMatrices) {
  // [[2,4],[1,2]] has rank 1; [[2,0],[0,3]] has rank 2.
  EXPECT_EQ(rational_rank({{{0, 2}, {1, 1}}, {{0, 4}, {1, 2}}}), 1u);
  EXPECT_EQ(rational_rank({{{0, 2}}, {{1, 3}}}), 2u);
  EXPECT_EQ(rational_rank({{}, {{0, 0}}}), 0u);
}

TEST(Rotation, InteriorEdgeFollowsQuadrants) {
  auto c = build_cuboid(2, 2, 2);
  const auto& cx = c.complex();
  // Edge (1,1,1)->(2,1,1) is interior; right-handed about +x the faces go
  // +y, +z, -y, -z.
  auto e = *c.edge_between(c.vertex_at({1, 1, 1}), c.vertex_at({2, 1, 1}));
  auto rs = rotation_from_geometry(cx, c.coords());
  const auto& order = rs.around.at(e);
  ASSERT_EQ(order.size(), 4u);
  auto face_toward = [&](Point3 dir) {
    return *c.square_with_diagonal(c.vertex_at({1, 1, 1}), c.vertex_at(Point3{2, 1, 1} + dir));
  };
  std::vector<FaceId> expected = {face_toward({0, 1, 0}), face_toward({0, 0, 1}), face_toward({0, -1, 0}),
                                  face_toward({0, 0, -1})};
  std::vector<FaceId> got;
  for (const auto& inc : order) got.push_back(inc.face);
  auto it = std::find(got.begin(), got.end(), expected[0]);
  ASSERT_NE(it, got.end());
  std::rotate(got.begin(), it, got.end());
  EXPECT_EQ(got, expected);
}

TEST(Rotation, BoundaryEdgeHasTwoFaces) {
  auto c = build_cuboid(1, 1, 1);
  auto rs = rotation_from_geometry(c.complex(), c.coords());
  for (const auto& [e, order] : rs.around) EXPECT_EQ(order.size(), 2u);
}

TEST(Rotation, InducedLinkRotationsArePlanar) {
  auto c = build_cuboid(2, 2, 2);
  const auto& cx = c.complex();
  auto rs = rotation_from_geometry(cx, c.coords());
  IncidenceIndex idx(cx);
  for (auto v : cx.vertices()) {
    auto link = link_graph(cx, idx, v);
    auto rot = induced_link_rotation(cx, rs, link);
    EXPECT_TRUE(genus_of_rotation(link.graph, rot).planar()) << "vertex " << v;
  }
}

TEST(Rotation, SubdividedFacesStayPlanar) {
  auto c = build_cuboid(2, 2, 2);
  std::vector<Subdivision> reqs;
  for (const auto& f : c.complex().faces()) {
    auto q = c.square_corners(f.id);
    reqs.push_back(f.id % 2 ? Subdivision{f.id, q[0], q[2]} : Subdivision{f.id, q[1], q[3]});
  }
  auto sub = subdivide_faces(c.complex(), reqs);
  std::vector<Point3> coords;
  for (auto v : sub.complex.vertices()) coords.push_back(c.coord(v));
  auto rs = rotation_from_geometry(sub.complex, coords);
  IncidenceIndex idx(sub.complex);
  for (auto v : sub.complex.vertices()) {
    auto link = link_graph(sub.complex, idx, v);
    EXPECT_TRUE(genus_of_rotation(link.graph, induced_link_rotation(sub.complex, rs, link)).planar());
  }
}

TEST(Rotation, CoincidentFacesAreRejected) {
  auto sq = unit_square();
  sq.add_face({{0, true}, {1, true}, {2, true}, {3, true}});
  const Point3 coords[] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  EXPECT_THROW(rotation_from_geometry(sq, coords), Error);
}

TEST(Rotation, RestrictionDropsContractedEdges) {
  auto c = build_cuboid(1, 1, 1);
  auto rs = rotation_from_geometry(c.complex(), c.coords());
  auto contracted = contract_edge(c.complex(), 0);
  auto r2 = restrict_rotation(rs, contracted);
  EXPECT_EQ(r2.around.size(), 11u);
  EXPECT_FALSE(r2.around.count(0));
  auto v = contracted_vertex(c.complex(), std::vector<EdgeId>{0}, 0);
  auto link = link_graph(contracted, v);
  EXPECT_TRUE(genus_of_rotation(link.graph, induced_link_rotation(contracted, r2, link)).planar());
}
