#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "entangle/construction.hpp"
#include "entangle/error.hpp"
#include "entangle/planarity.hpp"

using namespace entangle;

namespace {

const Pipeline& pipeline20() {
  static const Pipeline p = build_pipeline(20, 0);
  return p;
}

std::vector<Point3> coords_of(const CuboidComplex& c, const FacialPath& p) {
  std::vector<Point3> out;
  for (VertexId v : p.vertices) out.push_back(c.coord(v));
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kInternal;
}

}  // namespace

TEST(Construction, TemplatesFollowTheirCoordinates) {
  const auto box = build_box(20);
  const auto s = starting_segment(box, {19, 0, 0});
  EXPECT_EQ(coords_of(box, s), (std::vector<Point3>{{19, 0, 0}, {20, 1, 0}, {20, 0, 1}, {21, 0, 1}, {22, 1, 1}}));
  ASSERT_EQ(s.steps.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(s.steps[k].diagonal, k != 2);
  const auto e = ending_segment(box, {19, 17, 14});
  EXPECT_EQ(coords_of(box, e),
            (std::vector<Point3>{{19, 17, 14}, {20, 18, 14}, {21, 18, 14}, {21, 17, 15}, {22, 18, 15}}));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(e.steps[k].diagonal, k != 1);
  EXPECT_EQ(s.diagonals().size(), 3u);
}

TEST(Construction, TemplatesOutsideTheBoxFail) {
  const auto box = build_box(20);
  EXPECT_EQ(kind_of([&] { starting_segment(box, {40, 0, 0}); }), ErrorKind::kConstruction);
  EXPECT_EQ(kind_of([&] { ending_segment(box, {19, 20, 14}); }), ErrorKind::kConstruction);
}

TEST(Construction, SmallBoxesAreRejected) {
  EXPECT_EQ(kind_of([] { build_box(19); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { overhand_waypoints(Side::kLeft, 19); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { build_pipeline(5, 0); }), ErrorKind::kInvalidArgument);
  const auto box = build_box(20);
  EXPECT_EQ(kind_of([&] { build_spine(box, 21); }), ErrorKind::kInvalidArgument);
}

TEST(Construction, WaypointsAreAxisAlignedAndSingleColoured) {
  for (std::int64_t n : {20, 23}) {
    const auto col = box_coloring(n);
    for (Side side : {Side::kRight, Side::kLeft}) {
      const auto w = overhand_waypoints(side, n);
      ASSERT_EQ(w.size(), 13u);
      for (std::size_t k = 1; k < w.size(); ++k) {
        const auto d = w[k] - w[k - 1];
        EXPECT_EQ((d.x != 0) + (d.y != 0) + (d.z != 0), 1);
        EXPECT_EQ(col.of(w[k]), Color::kBlack);
      }
    }
    EXPECT_EQ(overhand_waypoints(Side::kRight, n).front(), (Point3{n + 2, 1, 1}));
    EXPECT_EQ(overhand_waypoints(Side::kLeft, n).back(), (Point3{n - 1, 17, 14}));
  }
}

TEST(Construction, BridgeIsThreeParallelDiagonals) {
  const auto box = build_box(20);
  const auto p3 = build_P3(box, 20);
  EXPECT_EQ(coords_of(box, p3), (std::vector<Point3>{{22, 9, 9}, {21, 9, 8}, {20, 9, 7}, {19, 9, 6}}));
}

TEST(Construction, FacialPathStaysInItsTube) {
  const auto box = build_box(20);
  const auto col = box_coloring(20);
  const std::vector<Point3> w = {{22, 1, 1}, {26, 1, 1}, {26, 5, 1}};
  const auto p = approximate_facial_path(box, col, w, [](const Point3&) { return true; });
  EXPECT_EQ(box.coord(p.vertices.front()), w.front());
  EXPECT_EQ(box.coord(p.vertices.back()), w.back());
  EXPECT_GE(p.steps.size(), 4u);
  for (VertexId v : p.vertices) {
    const auto q = box.coord(v);
    EXPECT_LE(std::min(chebyshev_distance(q, {std::clamp<std::int64_t>(q.x, 22, 26), 1, 1}),
                       chebyshev_distance(q, {26, std::clamp<std::int64_t>(q.y, 1, 5), 1})),
              1);
    EXPECT_EQ(col.of(q), Color::kBlack);
  }
  EXPECT_EQ(kind_of([&] { approximate_facial_path(box, col, w, [](const Point3& q) { return q.x < 24; }); }),
            ErrorKind::kConstruction);
  const std::vector<Point3> mixed = {{22, 1, 1}, {23, 1, 1}};
  EXPECT_EQ(kind_of([&] { approximate_facial_path(box, col, mixed, [](const Point3&) { return true; }); }),
            ErrorKind::kInvalidArgument);
}

TEST(Construction, SpineMarkersAndSlabs) {
  const auto& p = pipeline20();
  const auto& s = p.plan.spine;
  const auto& box = p.box;
  EXPECT_EQ(box.coord(s.A), (Point3{22, 1, 1}));
  EXPECT_EQ(box.coord(s.B), (Point3{22, 9, 9}));
  EXPECT_EQ(box.coord(s.A2), (Point3{19, 9, 6}));
  EXPECT_EQ(box.coord(s.B2), (Point3{19, 17, 14}));
  EXPECT_EQ(box.coord(s.O), (Point3{20, 0, 1}));
  EXPECT_EQ(box.coord(s.O2), (Point3{21, 18, 14}));
  for (std::size_t k = 1; k + 1 < s.parts[1].vertices.size(); ++k) EXPECT_GE(box.coord(s.parts[1].vertices[k]).x, 23);
  for (std::size_t k = 1; k + 1 < s.parts[3].vertices.size(); ++k) EXPECT_LE(box.coord(s.parts[3].vertices[k]).x, 18);
  const auto verts = s.vertices();
  EXPECT_EQ(std::set<VertexId>(verts.begin(), verts.end()).size(), verts.size());
  EXPECT_NO_THROW(validate_spine(box, s));
}

TEST(Construction, ValidationCatchesTamperedSpines) {
  const auto& p = pipeline20();
  auto s = p.plan.spine;
  std::swap(s.A, s.B);
  EXPECT_EQ(kind_of([&] { validate_spine(p.box, s); }), ErrorKind::kConstruction);
  s = p.plan.spine;
  s.parts[2] = build_P3(p.box, 20);
  s.parts[2].vertices.pop_back();
  s.parts[2].steps.pop_back();
  EXPECT_EQ(kind_of([&] { validate_spine(p.box, s); }), ErrorKind::kConstruction);
  s = p.plan.spine;
  std::swap(s.right_triple, s.left_triple);
  EXPECT_EQ(kind_of([&] { validate_spine(p.box, s); }), ErrorKind::kConstruction);
}

TEST(Construction, LargerBoxesBuildValidSpines) {
  const auto box = build_box(25);
  const auto s = build_spine(box, 25);
  EXPECT_NO_THROW(validate_spine(box, s));
  EXPECT_EQ(box.coord(s.A), (Point3{27, 1, 1}));
}

TEST(Construction, CollinearTriples) {
  const auto& p = pipeline20();
  for (Side side : {Side::kRight, Side::kLeft}) {
    const auto& t = p.triple(side);
    const auto d = p.box.coord(t.v[1]) - p.box.coord(t.v[0]);
    EXPECT_EQ(p.box.coord(t.v[2]) - p.box.coord(t.v[1]), d);
    EXPECT_EQ(p.box.coord(t.v[3]) - p.box.coord(t.v[2]), d);
  }
  // A zig-zag never repeats a direction.
  const auto box = build_box(20);
  FacialPath zig;
  zig.vertices = {box.vertex_at({5, 5, 5}), box.vertex_at({6, 6, 5}), box.vertex_at({7, 5, 5}),
                  box.vertex_at({8, 6, 5}), box.vertex_at({9, 5, 5})};
  for (std::size_t k = 0; k + 1 < zig.vertices.size(); ++k)
    zig.steps.push_back({zig.vertices[k], zig.vertices[k + 1], true,
                         *box.square_with_diagonal(zig.vertices[k], zig.vertices[k + 1]), kNoId});
  EXPECT_FALSE(find_collinear_triple(box, zig));
  // Straight, but its middle vertices sit on the boundary.
  FacialPath edge;
  edge.vertices = {box.vertex_at({0, 0, 0}), box.vertex_at({1, 1, 0}), box.vertex_at({2, 2, 0}),
                   box.vertex_at({3, 3, 0})};
  for (std::size_t k = 0; k + 1 < edge.vertices.size(); ++k)
    edge.steps.push_back({edge.vertices[k], edge.vertices[k + 1], true,
                          *box.square_with_diagonal(edge.vertices[k], edge.vertices[k + 1]), kNoId});
  EXPECT_FALSE(find_collinear_triple(box, edge));
}

TEST(Construction, CentreGraph) {
  const auto& p = pipeline20();
  const auto g = build_Gb_centre(p.box, p.coloring, p.plan.spine);
  EXPECT_EQ(component_count(g.graph), 1u);
  for (VertexId v : g.vertex_ids) {
    const auto x = p.box.coord(v).x;
    EXPECT_TRUE(x == 20 || x == 21);
    EXPECT_EQ(p.coloring.of(p.box.coord(v)), Color::kBlack);
  }
  EXPECT_EQ(g.graph_vertex(p.box.vertex_at({20, 1, 0})), kNoId);  // on P1
}

TEST(Construction, ForestExtension) {
  const auto k3 = make_complete(3);
  const std::vector<EdgeId> none;
  EXPECT_EQ(extend_forest_to_spanning_tree(k3, none, 0), (std::vector<EdgeId>{0, 1}));
  const std::vector<EdgeId> all = {0, 1, 2};
  EXPECT_EQ(kind_of([&] { extend_forest_to_spanning_tree(k3, all, 0); }), ErrorKind::kInvalidArgument);
  const std::vector<EdgeId> keep = {2};
  const auto t = extend_forest_to_spanning_tree(k3, keep, 0);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_TRUE(std::binary_search(t.begin(), t.end(), EdgeId{2}));
  Multigraph two(4);
  two.add_edge(0, 1);
  two.add_edge(2, 3);
  EXPECT_EQ(kind_of([&] { extend_forest_to_spanning_tree(two, none, 0); }), ErrorKind::kConstruction);
  // Avoided vertices keep only their forest edges.
  const auto k4 = make_complete(4);
  const std::vector<EdgeId> forest = {0};  // 0-1
  const std::vector<VertexId> avoid = {1};
  const auto ta = extend_forest_to_spanning_tree(k4, forest, 0, avoid);
  for (EdgeId e : ta)
    if (e != 0) {
      EXPECT_NE(k4.edge(e).a, 1u);
      EXPECT_NE(k4.edge(e).b, 1u);
    }
  // A seeded order still yields a spanning tree containing the forest.
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    const auto ts = extend_forest_to_spanning_tree(k4, forest, seed);
    EXPECT_EQ(ts.size(), 3u);
    EXPECT_TRUE(std::binary_search(ts.begin(), ts.end(), EdgeId{0}));
  }
}

TEST(Construction, TreePlanCounts) {
  const auto& p = pipeline20();
  const auto& plan = p.plan;
  EXPECT_EQ(plan.diagonals.size() + 2, 18521u);
  EXPECT_TRUE(std::is_sorted(plan.diagonals.begin(), plan.diagonals.end()));
  for (const auto& d : plan.I) EXPECT_FALSE(std::binary_search(plan.diagonals.begin(), plan.diagonals.end(), d));
  for (const auto& d : plan.Tb) EXPECT_EQ(p.coloring.of(p.box.coord(d.a)), Color::kBlack);
  for (const auto& d : plan.spine.parts[1].diagonals()) EXPECT_TRUE(std::count(plan.Tb1.begin(), plan.Tb1.end(), d));
  for (const auto& d : plan.spine.parts[3].diagonals()) EXPECT_TRUE(std::count(plan.Tb2.begin(), plan.Tb2.end(), d));
  const auto& s = plan.spine;
  EXPECT_EQ(plan.complex_edges[0], s.parts[0].steps[2].edge);
  EXPECT_EQ(plan.complex_edges[1], s.parts[4].steps[1].edge);
}

TEST(Construction, TreePlanDependsOnSeed) {
  const auto box = build_box(20);
  const auto spine = build_spine(box, 20);
  const auto a = build_tree_plan(box, spine, 3);
  const auto b = build_tree_plan(box, spine, 3);
  const auto c = build_tree_plan(box, spine, 4);
  EXPECT_EQ(a.diagonals, b.diagonals);
  EXPECT_NE(a.diagonals, c.diagonals);
  EXPECT_EQ(c.diagonals.size(), a.diagonals.size());
}

TEST(Construction, SubdividedComplexes) {
  const auto& p = pipeline20();
  const auto& cp = p.cprime.complex;
  const auto& c = p.box.complex();
  EXPECT_EQ(cp.vertex_count(), c.vertex_count());
  EXPECT_EQ(cp.edge_count(), c.edge_count() + p.plan.diagonals.size());
  EXPECT_EQ(cp.face_count(), c.face_count() + p.plan.diagonals.size());
  EXPECT_EQ(p.cprime.tree_edges.size(), 18521u);
  for (std::size_t k = 0; k < p.plan.diagonals.size(); ++k) {
    const auto& e = cp.edge(p.cprime.diagonal_edges[k]);
    EXPECT_EQ(std::minmax(e.tail, e.head), std::minmax(p.plan.diagonals[k].a, p.plan.diagonals[k].b));
  }
  EXPECT_EQ(p.cdoubleprime.vertex_count(), 1u);
  EXPECT_EQ(p.cdoubleprime.edge_count(), 53359u);
  for (const auto& e : p.cdoubleprime.edges()) EXPECT_TRUE(e.is_loop());
}

TEST(Construction, FundamentalCycles) {
  const auto& p = pipeline20();
  const auto& c = p.cprime.complex;
  EXPECT_EQ(kind_of([&] { fundamental_cycle(c, *p.tree, p.cprime.tree_edges.front()); }),
            ErrorKind::kInvalidArgument);
  std::size_t seen = 0;
  for (const auto& e : c.edges()) {
    if (p.tree->in_tree(e.id) || ++seen > 50) continue;
    const auto fc = fundamental_cycle(c, *p.tree, e.id);
    ASSERT_EQ(fc.vertices.size(), fc.edges.size() + 1);
    EXPECT_EQ(fc.vertices.front(), fc.vertices.back());
    EXPECT_EQ(fc.vertices.front(), e.tail);
    EXPECT_EQ(fc.edges.front(), e.id);
    for (std::size_t k = 0; k < fc.edges.size(); ++k) {
      const auto& r = c.edge(fc.edges[k]);
      EXPECT_EQ(std::minmax(r.tail, r.head), std::minmax(fc.vertices[k], fc.vertices[k + 1]));
      if (k) EXPECT_TRUE(p.tree->in_tree(fc.edges[k]));
    }
    const auto path = p.tree->path_edges(e.head, e.tail);
    EXPECT_EQ(path.size() + 1, fc.edges.size());
    for (EdgeId t : path) EXPECT_TRUE(p.tree->path_uses(e.tail, e.head, t));
  }
}

TEST(Construction, SlabRule) {
  const auto& p = pipeline20();
  std::size_t left = 0, right = 0;
  for (const auto& e : p.cprime.complex.edges()) {
    const auto a = p.box.coord(e.tail), b = p.box.coord(e.head);
    if (p.coloring.of(a) == p.coloring.of(b)) {
      EXPECT_THROW(p.required_side(e.id), Error);
      continue;
    }
    const auto white = p.coloring.of(a) == Color::kWhite ? a : b;
    const Side s = p.required_side(e.id);
    EXPECT_EQ(s, white.x >= 21 ? Side::kLeft : Side::kRight);
    ++(s == Side::kLeft ? left : right);
  }
  EXPECT_GT(left, 0u);
  EXPECT_GT(right, 0u);
}

TEST(Construction, PipelineIsDeterministic) {
  const auto a = build_pipeline(20, 0);
  const auto& b = pipeline20();
  EXPECT_EQ(a.plan.diagonals, b.plan.diagonals);
  EXPECT_EQ(a.cprime.complex, b.cprime.complex);
  EXPECT_EQ(a.cdoubleprime, b.cdoubleprime);
}
