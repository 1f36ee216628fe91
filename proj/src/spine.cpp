#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "entangle/construction.hpp"
#include "entangle/error.hpp"
#include "entangle/knots.hpp"

namespace entangle {

namespace {

constexpr std::array<Point3, 12> kDiagonalSteps = {{
    {-1, -1, 0}, {-1, 0, -1}, {-1, 0, 1}, {-1, 1, 0}, {0, -1, -1}, {0, -1, 1},
    {0, 1, -1},  {0, 1, 1},   {1, -1, 0}, {1, 0, -1}, {1, 0, 1},   {1, 1, 0},
}};

std::int64_t interval_gap(std::int64_t a, std::int64_t b, std::int64_t v) {
  const auto lo = std::min(a, b), hi = std::max(a, b);
  return v < lo ? lo - v : (v > hi ? v - hi : 0);
}

// Chebyshev distance from p to the segment [a, b] of an axis-parallel polyline.
std::int64_t distance_to_box_segment(const Point3& p, const Point3& a, const Point3& b) {
  return std::max({interval_gap(a.x, b.x, p.x), interval_gap(a.y, b.y, p.y), interval_gap(a.z, b.z, p.z)});
}

PathStep diagonal_step(const CuboidComplex& c, VertexId a, VertexId b) {
  auto f = c.square_with_diagonal(a, b);
  if (!f) fail(ErrorKind::kConstruction, "no square has diagonal " + std::to_string(a) + "-" + std::to_string(b));
  return {a, b, true, *f, kNoId};
}

PathStep edge_step(const CuboidComplex& c, VertexId a, VertexId b) {
  auto e = c.edge_between(a, b);
  if (!e) fail(ErrorKind::kConstruction, "no edge joins " + std::to_string(a) + "-" + std::to_string(b));
  return {a, b, false, kNoId, *e};
}

// Follows a coordinate template; `edge_step_index` is the one complex-edge step.
FacialPath from_template(const CuboidComplex& c, const std::vector<Point3>& pts, std::size_t edge_step_index,
                         const char* what) {
  FacialPath p;
  for (const auto& q : pts) {
    if (!c.contains(q)) {
      std::ostringstream os;
      os << what << " leaves the box at " << q;
      fail(ErrorKind::kConstruction, os.str());
    }
    p.vertices.push_back(c.vertex_at(q));
  }
  for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k)
    p.steps.push_back(k == edge_step_index ? edge_step(c, p.vertices[k], p.vertices[k + 1])
                                           : diagonal_step(c, p.vertices[k], p.vertices[k + 1]));
  return p;
}

bool interior(const CuboidComplex& c, const Point3& p) {
  return p.x > c.lo().x && p.x < c.hi().x && p.y > c.lo().y && p.y < c.hi().y && p.z > c.lo().z && p.z < c.hi().z;
}

[[noreturn]] void spine_fail(const std::string& msg) { fail(ErrorKind::kConstruction, "spine: " + msg); }

std::string at(const CuboidComplex& c, VertexId v) {
  std::ostringstream os;
  os << c.coord(v);
  return os.str();
}

}  // namespace

std::vector<DiagonalEdge> FacialPath::diagonals() const {
  std::vector<DiagonalEdge> out;
  for (const auto& s : steps)
    if (s.diagonal) out.push_back(make_diagonal(s.from, s.to, s.host));
  return out;
}

std::vector<VertexId> Spine::vertices() const {
  std::vector<VertexId> out;
  for (const auto& p : parts) {
    if (p.vertices.empty()) continue;
    const std::size_t skip = out.empty() ? 0 : 1;
    out.insert(out.end(), p.vertices.begin() + static_cast<std::ptrdiff_t>(skip), p.vertices.end());
  }
  return out;
}

CuboidComplex build_box(std::int64_t n) {
  if (n < 20) fail(ErrorKind::kInvalidArgument, "n must be at least 20, got " + std::to_string(n));
  return build_cuboid(2 * n + 1, n, n);
}

Coloring box_coloring(std::int64_t n) { return Coloring({n - 1, 0, 0}, Color::kWhite); }

FacialPath starting_segment(const CuboidComplex& c, const Point3& v) {
  const auto [x, y, z] = std::array{v.x, v.y, v.z};
  return from_template(c, {{x, y, z}, {x + 1, y + 1, z}, {x + 1, y, z + 1}, {x + 2, y, z + 1}, {x + 3, y + 1, z + 1}},
                       2, "starting segment");
}

FacialPath ending_segment(const CuboidComplex& c, const Point3& v) {
  const auto [x, y, z] = std::array{v.x, v.y, v.z};
  return from_template(c, {{x, y, z}, {x + 1, y + 1, z}, {x + 2, y + 1, z}, {x + 2, y, z + 1}, {x + 3, y + 1, z + 1}},
                       1, "ending segment");
}

std::vector<Point3> overhand_waypoints(Side side, std::int64_t n) {
  if (n < 20) fail(ErrorKind::kInvalidArgument, "n must be at least 20, got " + std::to_string(n));
  if (side == Side::kRight)
    return {{n + 2, 1, 1},    {n + 6, 1, 1},   {n + 6, 5, 1},   {n + 10, 5, 1},  {n + 10, 5, 13},
            {n + 10, 13, 13}, {n + 6, 13, 13}, {n + 6, 13, 5},  {n + 6, 1, 5},   {n + 14, 1, 5},
            {n + 14, 1, 9},   {n + 14, 9, 9},  {n + 2, 9, 9}};
  return {{n - 1, 9, 6},   {n - 13, 9, 6},  {n - 13, 17, 6}, {n - 13, 17, 10}, {n - 5, 17, 10},
          {n - 5, 5, 10},  {n - 5, 5, 2},   {n - 9, 5, 2},   {n - 9, 13, 2},   {n - 9, 13, 14},
          {n - 5, 13, 14}, {n - 5, 17, 14}, {n - 1, 17, 14}};
}

FacialPath approximate_facial_path(const CuboidComplex& c, const Coloring& coloring,
                                   std::span<const Point3> waypoints,
                                   const std::function<bool(const Point3&)>& allowed) {
  if (waypoints.size() < 2) fail(ErrorKind::kInvalidArgument, "need at least two waypoints");
  const Color color = coloring.of(waypoints.front());
  for (std::size_t k = 0; k < waypoints.size(); ++k) {
    if (coloring.of(waypoints[k]) != color) fail(ErrorKind::kInvalidArgument, "waypoints differ in colour");
    if (!c.contains(waypoints[k])) fail(ErrorKind::kInvalidArgument, "waypoint outside the box");
    if (k && (waypoints[k] - waypoints[k - 1]).is_zero()) fail(ErrorKind::kInvalidArgument, "repeated waypoint");
    if (k) {
      const Point3 d = waypoints[k] - waypoints[k - 1];
      if ((d.x != 0) + (d.y != 0) + (d.z != 0) != 1) fail(ErrorKind::kInvalidArgument, "waypoints not axis-aligned");
    }
  }
  const std::size_t K = waypoints.size() - 1;
  const auto& cx = c.complex();
  const std::size_t V = cx.vertex_count();
  const VertexId start = c.vertex_at(waypoints.front());
  const VertexId goal = c.vertex_at(waypoints.back());

  auto in_tube = [&](const Point3& p, std::size_t k) {
    return distance_to_box_segment(p, waypoints[k], waypoints[k + 1]) <= 1;
  };
  std::vector<char> admissible(V, 0);
  for (std::size_t i = 0; i < V; ++i) {
    const VertexId v = cx.vertices()[i];
    const Point3 p = c.coord(v);
    admissible[i] = v == start || v == goal || (coloring.of(p) == color && allowed(p));
  }
  auto neighbours = [&](VertexId v) {
    std::vector<VertexId> out;
    const Point3 p = c.coord(v);
    for (const auto& d : kDiagonalSteps)
      if (auto w = c.find_vertex(p + d); w && admissible[cx.vertex_index(*w)]) out.push_back(*w);
    std::sort(out.begin(), out.end());
    return out;
  };

  // Distances to the goal state in the (vertex, segment) product.
  std::vector<std::int32_t> dist(V * K, -1);
  auto state = [&](VertexId v, std::size_t k) { return cx.vertex_index(v) * K + k; };
  std::deque<std::pair<VertexId, std::size_t>> queue;
  dist[state(goal, K - 1)] = 0;
  queue.emplace_back(goal, K - 1);
  while (!queue.empty()) {
    const auto [w, k] = queue.front();
    queue.pop_front();
    const auto dw = dist[state(w, k)];
    for (VertexId v : neighbours(w)) {
      const Point3 p = c.coord(v);
      for (std::size_t kk : {k, k - 1}) {
        if (kk >= K || !in_tube(p, kk)) continue;
        auto& slot = dist[state(v, kk)];
        if (slot < 0) {
          slot = dw + 1;
          queue.emplace_back(v, kk);
        }
      }
    }
  }
  if (!in_tube(waypoints.front(), 0) || dist[state(start, 0)] < 0)
    fail(ErrorKind::kConstruction, "no facial path within the tube");

  FacialPath path;
  path.vertices.push_back(start);
  VertexId v = start;
  std::size_t k = 0;
  while (!(v == goal && k == K - 1)) {
    const auto dv = dist[state(v, k)];
    std::optional<std::pair<VertexId, std::size_t>> next;
    for (VertexId w : neighbours(v)) {
      const Point3 p = c.coord(w);
      for (std::size_t kk : {k, k + 1}) {
        if (kk >= K || !in_tube(p, kk) || dist[state(w, kk)] != dv - 1) continue;
        if (!next || std::pair{w, kk} < *next) next = std::pair{w, kk};
      }
    }
    if (!next) fail(ErrorKind::kInternal, "facial path walk lost the gradient");
    path.steps.push_back(diagonal_step(c, v, next->first));
    std::tie(v, k) = *next;
    path.vertices.push_back(v);
  }
  std::set<VertexId> seen(path.vertices.begin(), path.vertices.end());
  if (seen.size() != path.vertices.size()) fail(ErrorKind::kConstruction, "facial path repeats a vertex");
  return path;
}

FacialPath build_P3(const CuboidComplex& c, std::int64_t n) {
  if (n < 20) fail(ErrorKind::kInvalidArgument, "n must be at least 20, got " + std::to_string(n));
  FacialPath p;
  for (std::int64_t k = 0; k < 4; ++k) p.vertices.push_back(c.vertex_at({n + 2 - k, 9, 9 - k}));
  for (std::size_t k = 0; k < 3; ++k) p.steps.push_back(diagonal_step(c, p.vertices[k], p.vertices[k + 1]));
  return p;
}

std::optional<CollinearTriple> find_collinear_triple(const CuboidComplex& c, const FacialPath& path) {
  for (std::size_t i = 0; i + 3 <= path.steps.size(); ++i) {
    const auto& s = path.steps;
    if (!s[i].diagonal || !s[i + 1].diagonal || !s[i + 2].diagonal) continue;
    const Point3 d = c.coord(s[i].to) - c.coord(s[i].from);
    if (c.coord(s[i + 1].to) - c.coord(s[i + 1].from) != d || c.coord(s[i + 2].to) - c.coord(s[i + 2].from) != d)
      continue;
    if (!interior(c, c.coord(s[i].to)) || !interior(c, c.coord(s[i + 1].to))) continue;
    CollinearTriple t;
    t.v = {s[i].from, s[i].to, s[i + 1].to, s[i + 2].to};
    for (std::size_t j = 0; j < 3; ++j) t.e[j] = make_diagonal(s[i + j].from, s[i + j].to, s[i + j].host);
    t.first_step = i;
    return t;
  }
  return std::nullopt;
}

Spine build_spine(const CuboidComplex& c, std::int64_t n) {
  if (n < 20) fail(ErrorKind::kInvalidArgument, "n must be at least 20, got " + std::to_string(n));
  if (!(c.dims() == CuboidDims{2 * n + 1, n, n}) || !(c.lo() == Point3{0, 0, 0}))
    fail(ErrorKind::kInvalidArgument, "spine needs the full (2n+1) x n x n box");
  const Coloring col = box_coloring(n);
  Spine s;
  s.n = n;
  s.parts[0] = starting_segment(c, {n - 1, 0, 0});
  const auto right = overhand_waypoints(Side::kRight, n);
  s.parts[1] = approximate_facial_path(c, col, right, [n](const Point3& p) { return p.x >= n + 3; });
  s.parts[2] = build_P3(c, n);
  const auto left = overhand_waypoints(Side::kLeft, n);
  s.parts[3] = approximate_facial_path(c, col, left, [n](const Point3& p) { return p.x <= n - 2; });
  s.parts[4] = ending_segment(c, left.back());
  s.A = s.parts[1].vertices.front();
  s.B = s.parts[1].vertices.back();
  s.A2 = s.parts[3].vertices.front();
  s.B2 = s.parts[3].vertices.back();
  s.O = c.vertex_at({n, 0, 1});
  s.O2 = c.vertex_at({n + 1, 18, 14});
  auto rt = find_collinear_triple(c, s.parts[1]);
  auto lt = find_collinear_triple(c, s.parts[3]);
  if (!rt || !lt) spine_fail("an overhand path has no collinear triple");
  s.right_triple = *rt;
  s.left_triple = *lt;
  validate_spine(c, s);
  return s;
}

void validate_spine(const CuboidComplex& c, const Spine& s) {
  const std::int64_t n = s.n;
  const Coloring col = box_coloring(n);
  // Steps are genuine diagonals or edges and chain up.
  for (std::size_t k = 0; k < 5; ++k) {
    const auto& p = s.parts[k];
    if (p.vertices.size() != p.steps.size() + 1 || p.steps.empty()) spine_fail("malformed part P" + std::to_string(k + 1));
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      const auto& st = p.steps[i];
      if (st.from != p.vertices[i] || st.to != p.vertices[i + 1]) spine_fail("step/vertex mismatch");
      if (st.diagonal) {
        if (c.square_with_diagonal(st.from, st.to) != std::optional<FaceId>(st.host))
          spine_fail("bad diagonal at " + at(c, st.from));
        if (col.of(c.coord(st.from)) != col.of(c.coord(st.to))) spine_fail("diagonal changes colour");
      } else if (c.edge_between(st.from, st.to) != std::optional<EdgeId>(st.edge)) {
        spine_fail("bad edge at " + at(c, st.from));
      }
    }
    if (k && s.parts[k - 1].vertices.back() != p.vertices.front()) spine_fail("parts do not chain");
  }
  const auto verts = s.vertices();
  {
    std::set<VertexId> seen(verts.begin(), verts.end());
    if (seen.size() != verts.size()) spine_fail("repeated vertex");
  }
  // Templates and markers.
  auto same = [](const FacialPath& a, const FacialPath& b) { return a.vertices == b.vertices; };
  if (!same(s.parts[0], starting_segment(c, {n - 1, 0, 0}))) spine_fail("P1 is not the starting segment");
  if (!same(s.parts[4], ending_segment(c, {n - 1, 17, 14}))) spine_fail("P5 is not the ending segment");
  if (!same(s.parts[2], build_P3(c, n))) spine_fail("P3 is not the bridge");
  if (s.A != c.vertex_at({n + 2, 1, 1}) || s.B != c.vertex_at({n + 2, 9, 9}) || s.A2 != c.vertex_at({n - 1, 9, 6}) ||
      s.B2 != c.vertex_at({n - 1, 17, 14}) || s.O != s.parts[0].vertices[2] || s.O2 != s.parts[4].vertices[2])
    spine_fail("markers misplaced");
  std::size_t white = 0;
  for (VertexId v : s.parts[0].vertices) white += col.of(c.coord(v)) == Color::kWhite;
  if (white != 3) spine_fail("starting segment must have three white vertices");
  white = 0;
  for (VertexId v : s.parts[4].vertices) white += col.of(c.coord(v)) == Color::kWhite;
  if (white != 3) spine_fail("ending segment must have three white vertices");
  for (std::size_t k = 1; k <= 3; ++k)
    for (const auto& st : s.parts[k].steps)
      if (!st.diagonal || col.of(c.coord(st.from)) != Color::kBlack) spine_fail("basis must be black diagonals");

  // Slab memberships of the basis P2 P3 P4.
  auto x_of = [&](VertexId v) { return c.coord(v).x; };
  const auto& p2 = s.parts[1].vertices;
  const auto& p4 = s.parts[3].vertices;
  for (std::size_t i = 0; i < p2.size(); ++i) {
    const bool end = i == 0 || i + 1 == p2.size();
    if (end ? x_of(p2[i]) != n + 2 : x_of(p2[i]) < n + 3) spine_fail("P2 leaves its slab at " + at(c, p2[i]));
  }
  for (std::size_t i = 0; i < p4.size(); ++i) {
    const bool end = i == 0 || i + 1 == p4.size();
    if (end ? x_of(p4[i]) != n - 1 : x_of(p4[i]) > n - 2) spine_fail("P4 leaves its slab at " + at(c, p4[i]));
  }
  const auto& p3 = s.parts[2].vertices;
  for (std::size_t i = 1; i + 1 < p3.size(); ++i)
    if (x_of(p3[i]) <= n - 1 || x_of(p3[i]) >= n + 2) spine_fail("P3 leaves the middle strip");

  // Each overhand path holds a collinear triple and closes to a knot with nine 3-colourings.
  for (std::size_t k : {1u, 3u}) {
    const auto& t = k == 1 ? s.right_triple : s.left_triple;
    const Point3 d = c.coord(t.v[1]) - c.coord(t.v[0]);
    for (std::size_t j = 0; j < 3; ++j)
      if (c.coord(t.v[j + 1]) - c.coord(t.v[j]) != d) spine_fail("triple is not collinear");
    const auto& steps = s.parts[k].steps;
    if (t.first_step + 3 > steps.size()) spine_fail("triple lies outside P" + std::to_string(k + 1));
    for (std::size_t j = 0; j < 3; ++j) {
      const auto& st = steps[t.first_step + j];
      if (!st.diagonal || make_diagonal(st.from, st.to, st.host) != t.e[j] || st.from != t.v[j])
        spine_fail("triple is not part of P" + std::to_string(k + 1));
    }
  }
  for (std::size_t k : {1u, 3u}) {
    std::vector<Point3> pts;
    for (VertexId v : s.parts[k].vertices) pts.push_back(c.coord(v));
    auto cert = is_certified_nontrivial(realize_cycle(pts), 0, 3);
    if (cert.fox.count != "9") spine_fail("P" + std::to_string(k + 1) + " does not close to a trefoil-like knot");
  }

  // No two non-consecutive spine vertices at distance 1.
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 2; j < verts.size(); ++j)
      if (squared_norm(c.coord(verts[i]) - c.coord(verts[j])) == 1)
        spine_fail("vertices " + at(c, verts[i]) + " and " + at(c, verts[j]) + " are at distance 1");
}

}  // namespace entangle
