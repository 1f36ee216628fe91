#include "entangle/cuboid.hpp"

#include <algorithm>
#include <string>

#include "entangle/error.hpp"

namespace entangle {

namespace {

constexpr Point3 kAxis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
// Square planes spanned by (first axis, second axis): xy, xz, yz.
constexpr int kPlane[3][2] = {{0, 1}, {0, 2}, {1, 2}};

std::string fmt_point(const Point3& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + "," + std::to_string(p.z) + ")";
}

}  // namespace

const char* color_name(Color c) { return c == Color::kBlack ? "black" : "white"; }

Point3 CuboidComplex::coord(VertexId v) const {
  const std::int64_t s3 = dims_.n3 + 1;
  const std::int64_t s2 = dims_.n2 + 1;
  Point3 p{static_cast<std::int64_t>(v) / (s2 * s3), (static_cast<std::int64_t>(v) / s3) % s2,
           static_cast<std::int64_t>(v) % s3};
  if (!contains(p) || raw_id(p) != v) fail(ErrorKind::kNotFound, "vertex " + std::to_string(v) + " is not in the box");
  return p;
}

bool CuboidComplex::contains(const Point3& p) const {
  return p.x >= lo_.x && p.x <= hi_.x && p.y >= lo_.y && p.y <= hi_.y && p.z >= lo_.z && p.z <= hi_.z;
}

std::optional<VertexId> CuboidComplex::find_vertex(const Point3& p) const {
  if (!contains(p)) return std::nullopt;
  return raw_id(p);
}

VertexId CuboidComplex::vertex_at(const Point3& p) const {
  auto v = find_vertex(p);
  if (!v) fail(ErrorKind::kNotFound, "point " + fmt_point(p) + " lies outside the box");
  return *v;
}

EdgeId CuboidComplex::raw_edge(const Point3& p, int axis) const {
  if (!contains(p) || !contains(p + kAxis[axis])) return kNoId;
  return edge_ids_[raw_id(p)][axis];
}

FaceId CuboidComplex::raw_face(const Point3& p, int plane) const {
  const auto& ax = kPlane[plane];
  if (!contains(p) || !contains(p + kAxis[ax[0]] + kAxis[ax[1]])) return kNoId;
  return face_ids_[raw_id(p)][plane];
}

std::optional<EdgeId> CuboidComplex::edge_between(VertexId a, VertexId b) const {
  Point3 pa = coord(a), pb = coord(b);
  if (pb < pa) std::swap(pa, pb);
  const Point3 d = pb - pa;
  for (int axis = 0; axis < 3; ++axis)
    if (d == kAxis[axis]) {
      auto e = raw_edge(pa, axis);
      if (e != kNoId) return e;
    }
  return std::nullopt;
}

std::optional<FaceId> CuboidComplex::square_with_diagonal(VertexId a, VertexId b) const {
  const Point3 pa = coord(a), pb = coord(b);
  const Point3 d = pb - pa;
  for (int plane = 0; plane < 3; ++plane) {
    const Point3 u = kAxis[kPlane[plane][0]], w = kAxis[kPlane[plane][1]];
    // The other component must vanish and both in-plane components be +-1.
    const Point3 normal = cross(u, w);
    if (dot(d, normal) != 0) continue;
    const auto du = dot(d, u), dw = dot(d, w);
    if ((du != 1 && du != -1) || (dw != 1 && dw != -1)) continue;
    Point3 corner{std::min(pa.x, pb.x), std::min(pa.y, pb.y), std::min(pa.z, pb.z)};
    auto f = raw_face(corner, plane);
    if (f != kNoId) return f;
  }
  return std::nullopt;
}

std::array<VertexId, 4> CuboidComplex::square_corners(FaceId f) const {
  const auto& walk = complex_.face(f).walk;
  if (walk.size() != 4) fail(ErrorKind::kInvalidArgument, "face " + std::to_string(f) + " is not a square");
  return {complex_.dart_tail(walk[0]), complex_.dart_tail(walk[1]), complex_.dart_tail(walk[2]),
          complex_.dart_tail(walk[3])};
}

CuboidComplex build_cuboid(std::int64_t n1, std::int64_t n2, std::int64_t n3) {
  if (n1 < 1 || n2 < 1 || n3 < 1) fail(ErrorKind::kInvalidArgument, "cuboid dimensions must be positive");
  const std::int64_t total = (n1 + 1) * (n2 + 1) * (n3 + 1);
  if (total * 3 >= static_cast<std::int64_t>(kNoId))
    fail(ErrorKind::kInvalidArgument, "cuboid too large for 32-bit ids");

  CuboidComplex c;
  c.dims_ = {n1, n2, n3};
  c.lo_ = {0, 0, 0};
  c.hi_ = {n1, n2, n3};
  c.edge_ids_.assign(static_cast<std::size_t>(total), {kNoId, kNoId, kNoId});
  c.face_ids_.assign(static_cast<std::size_t>(total), {kNoId, kNoId, kNoId});
  c.coords_.reserve(static_cast<std::size_t>(total));

  for (std::int64_t x = 0; x <= n1; ++x)
    for (std::int64_t y = 0; y <= n2; ++y)
      for (std::int64_t z = 0; z <= n3; ++z) {
        c.complex_.add_vertex(c.raw_id({x, y, z}));
        c.coords_.push_back({x, y, z});
      }
  for (const auto& p : c.coords_)
    for (int axis = 0; axis < 3; ++axis) {
      const Point3 q = p + kAxis[axis];
      if (!c.contains(q)) continue;
      c.edge_ids_[c.raw_id(p)][axis] = c.complex_.add_edge(c.raw_id(p), c.raw_id(q));
    }
  for (const auto& p : c.coords_)
    for (int plane = 0; plane < 3; ++plane) {
      const int i = kPlane[plane][0], k = kPlane[plane][1];
      const Point3 pi = p + kAxis[i], pk = p + kAxis[k];
      if (!c.contains(pi + kAxis[k])) continue;
      std::vector<FaceDart> walk = {{c.edge_ids_[c.raw_id(p)][i], true},
                                    {c.edge_ids_[c.raw_id(pi)][k], true},
                                    {c.edge_ids_[c.raw_id(pk)][i], false},
                                    {c.edge_ids_[c.raw_id(p)][k], false}};
      c.face_ids_[c.raw_id(p)][plane] = c.complex_.add_face(std::move(walk));
    }
  return c;
}

CuboidComplex slab(const CuboidComplex& c, std::int64_t a, std::int64_t b) {
  if (a > b || a < c.lo_.x || b > c.hi_.x)
    fail(ErrorKind::kInvalidArgument, "slab bounds [" + std::to_string(a) + "," + std::to_string(b) +
                                          "] fall outside [" + std::to_string(c.lo_.x) + "," +
                                          std::to_string(c.hi_.x) + "]");
  CuboidComplex s;
  s.dims_ = c.dims_;
  s.lo_ = {a, c.lo_.y, c.lo_.z};
  s.hi_ = {b, c.hi_.y, c.hi_.z};
  s.edge_ids_ = c.edge_ids_;
  s.face_ids_ = c.face_ids_;
  const auto& src = c.complex_;
  for (std::size_t i = 0; i < src.vertex_count(); ++i)
    if (s.contains(c.coords_[i])) {
      s.complex_.add_vertex(src.vertices()[i]);
      s.coords_.push_back(c.coords_[i]);
    }
  auto inside = [&](VertexId v) { return s.contains(c.coord(v)); };
  for (const auto& e : src.edges())
    if (inside(e.tail) && inside(e.head)) s.complex_.add_edge(e.id, e.tail, e.head);
  for (const auto& f : src.faces()) {
    bool keep = true;
    for (const auto& d : f.walk) keep = keep && s.complex_.has_edge(d.edge);
    if (keep) s.complex_.add_face(f.id, f.walk);
  }
  return s;
}

Coloring two_color(const CuboidComplex& c, VertexId anchor, Color anchor_color) {
  return Coloring(c.coord(anchor), anchor_color);
}

DiagonalEdge make_diagonal(VertexId a, VertexId b, FaceId host) {
  if (a == b) fail(ErrorKind::kInvalidArgument, "diagonal endpoints coincide");
  if (b < a) std::swap(a, b);
  return {a, b, host};
}

VertexId DiagonalGraph::graph_vertex(VertexId complex_vertex) const {
  auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), complex_vertex);
  if (it == vertex_ids.end() || *it != complex_vertex) return kNoId;
  return static_cast<VertexId>(it - vertex_ids.begin());
}

DiagonalGraph diagonal_graph(const CuboidComplex& c, const Coloring& coloring, Color color) {
  DiagonalGraph g;
  const auto& cx = c.complex();
  for (std::size_t i = 0; i < cx.vertex_count(); ++i)
    if (coloring.of(c.coords()[i]) == color) g.vertex_ids.push_back(cx.vertices()[i]);
  g.graph = Multigraph(g.vertex_ids.size());
  for (const auto& f : cx.faces()) {
    auto q = c.square_corners(f.id);
    const bool first = coloring.of(c.coord(q[0])) == color;
    auto d = first ? make_diagonal(q[0], q[2], f.id) : make_diagonal(q[1], q[3], f.id);
    g.graph.add_edge(g.graph_vertex(d.a), g.graph_vertex(d.b));
    g.diagonals.push_back(d);
  }
  return g;
}

DiagonalEdge crossing_diagonal(const CuboidComplex& c, const DiagonalEdge& d) {
  auto q = c.square_corners(d.host);
  const auto diag0 = make_diagonal(q[0], q[2], d.host);
  const auto diag1 = make_diagonal(q[1], q[3], d.host);
  if (d == diag0) return diag1;
  if (d == diag1) return diag0;
  fail(ErrorKind::kInvalidArgument, "edge " + std::to_string(d.a) + "-" + std::to_string(d.b) +
                                        " is not a diagonal of face " + std::to_string(d.host));
}

std::vector<DiagonalEdge> crossing_set(const CuboidComplex& c, std::span<const DiagonalEdge> tree_edges) {
  std::vector<DiagonalEdge> out;
  out.reserve(tree_edges.size());
  for (const auto& d : tree_edges) out.push_back(crossing_diagonal(c, d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace entangle
