#include "entangle/complex.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "entangle/error.hpp"

namespace entangle {

namespace {

template <typename Vec, typename Key, typename Proj>
std::size_t find_sorted(const Vec& v, Key key, Proj proj) {
  auto it = std::lower_bound(v.begin(), v.end(), key,
                             [&](const auto& rec, Key k) { return proj(rec) < k; });
  if (it == v.end() || proj(*it) != key) return SIZE_MAX;
  return static_cast<std::size_t>(it - v.begin());
}

std::string id_str(std::uint32_t id) { return std::to_string(id); }

}  // namespace

void TwoComplex::add_vertex(VertexId v) {
  if (!vertices_.empty() && v <= vertices_.back())
    fail(ErrorKind::kInvalidArgument, "vertex ids must be added in ascending order");
  vertices_.push_back(v);
}

void TwoComplex::add_edge(EdgeId id, VertexId tail, VertexId head) {
  if (!edges_.empty() && id <= edges_.back().id)
    fail(ErrorKind::kInvalidArgument, "edge ids must be added in ascending order");
  if (!has_vertex(tail) || !has_vertex(head))
    fail(ErrorKind::kNotFound, "edge " + id_str(id) + " has an unknown endpoint");
  edges_.push_back({id, tail, head});
}

EdgeId TwoComplex::add_edge(VertexId tail, VertexId head) {
  EdgeId id = next_edge_id();
  add_edge(id, tail, head);
  return id;
}

void TwoComplex::add_face(FaceId id, std::vector<FaceDart> walk) {
  if (!faces_.empty() && id <= faces_.back().id)
    fail(ErrorKind::kInvalidArgument, "face ids must be added in ascending order");
  if (walk.empty()) fail(ErrorKind::kInvalidArgument, "face " + id_str(id) + " has an empty walk");
  for (const auto& d : walk)
    if (!has_edge(d.edge))
      fail(ErrorKind::kNotFound, "face " + id_str(id) + " uses unknown edge " + id_str(d.edge));
  for (std::size_t j = 0; j < walk.size(); ++j) {
    const auto& next = walk[(j + 1) % walk.size()];
    if (dart_head(walk[j]) != dart_tail(next))
      fail(ErrorKind::kInvalidArgument, "face " + id_str(id) + " walk is not closed at position " +
                                            std::to_string(j));
  }
  faces_.push_back({id, std::move(walk)});
}

FaceId TwoComplex::add_face(std::vector<FaceDart> walk) {
  FaceId id = next_face_id();
  add_face(id, std::move(walk));
  return id;
}

bool TwoComplex::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}
bool TwoComplex::has_edge(EdgeId e) const {
  return find_sorted(edges_, e, [](const EdgeRecord& r) { return r.id; }) != SIZE_MAX;
}
bool TwoComplex::has_face(FaceId f) const {
  return find_sorted(faces_, f, [](const FaceRecord& r) { return r.id; }) != SIZE_MAX;
}

std::size_t TwoComplex::vertex_index(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) fail(ErrorKind::kNotFound, "unknown vertex " + id_str(v));
  return static_cast<std::size_t>(it - vertices_.begin());
}
std::size_t TwoComplex::edge_index(EdgeId e) const {
  auto i = find_sorted(edges_, e, [](const EdgeRecord& r) { return r.id; });
  if (i == SIZE_MAX) fail(ErrorKind::kNotFound, "unknown edge " + id_str(e));
  return i;
}
std::size_t TwoComplex::face_index(FaceId f) const {
  auto i = find_sorted(faces_, f, [](const FaceRecord& r) { return r.id; });
  if (i == SIZE_MAX) fail(ErrorKind::kNotFound, "unknown face " + id_str(f));
  return i;
}

const EdgeRecord& TwoComplex::edge(EdgeId e) const { return edges_[edge_index(e)]; }
const FaceRecord& TwoComplex::face(FaceId f) const { return faces_[face_index(f)]; }

VertexId LinkGraphResult::vertex_of(EdgeEnd end) const {
  auto it = std::lower_bound(vertex_origin.begin(), vertex_origin.end(), end);
  if (it == vertex_origin.end() || *it != end) return kNoId;
  return static_cast<VertexId>(it - vertex_origin.begin());
}

EdgeId LinkGraphResult::edge_of(FaceCorner corner) const {
  auto it = std::lower_bound(edge_origin.begin(), edge_origin.end(), corner);
  if (it == edge_origin.end() || *it != corner) return kNoId;
  return static_cast<EdgeId>(it - edge_origin.begin());
}

IncidenceIndex::IncidenceIndex(const TwoComplex& c) : complex_(&c) {
  const std::size_t nv = c.vertex_count();
  std::vector<std::size_t> end_count(nv, 0), corner_count(nv, 0);
  std::vector<std::size_t> tail_idx(c.edge_count()), head_idx(c.edge_count());
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    tail_idx[i] = c.vertex_index(c.edges()[i].tail);
    head_idx[i] = c.vertex_index(c.edges()[i].head);
    ++end_count[tail_idx[i]];
    ++end_count[head_idx[i]];
  }
  for (const auto& f : c.faces())
    for (const auto& d : f.walk) {
      auto ei = c.edge_index(d.edge);
      ++corner_count[d.forward ? head_idx[ei] : tail_idx[ei]];
    }
  end_offsets_.assign(nv + 1, 0);
  corner_offsets_.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    end_offsets_[v + 1] = end_offsets_[v] + end_count[v];
    corner_offsets_[v + 1] = corner_offsets_[v] + corner_count[v];
  }
  ends_.resize(end_offsets_[nv]);
  corners_.resize(corner_offsets_[nv]);
  std::vector<std::size_t> fill_e(end_offsets_.begin(), end_offsets_.end() - 1);
  std::vector<std::size_t> fill_c(corner_offsets_.begin(), corner_offsets_.end() - 1);
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    ends_[fill_e[tail_idx[i]]++] = {c.edges()[i].id, 0};
    ends_[fill_e[head_idx[i]]++] = {c.edges()[i].id, 1};
  }
  for (const auto& f : c.faces())
    for (std::uint32_t j = 0; j < f.walk.size(); ++j) {
      const auto& d = f.walk[j];
      auto ei = c.edge_index(d.edge);
      corners_[fill_c[d.forward ? head_idx[ei] : tail_idx[ei]]++] = {f.id, j};
    }
}

std::span<const EdgeEnd> IncidenceIndex::ends_at(VertexId v) const {
  auto i = complex_->vertex_index(v);
  return {ends_.data() + end_offsets_[i], end_offsets_[i + 1] - end_offsets_[i]};
}

std::span<const FaceCorner> IncidenceIndex::corners_at(VertexId v) const {
  auto i = complex_->vertex_index(v);
  return {corners_.data() + corner_offsets_[i], corner_offsets_[i + 1] - corner_offsets_[i]};
}

LinkGraphResult link_graph(const TwoComplex& c, const IncidenceIndex& index, VertexId v) {
  LinkGraphResult out;
  auto ends = index.ends_at(v);
  auto corners = index.corners_at(v);
  out.vertex_origin.assign(ends.begin(), ends.end());
  out.graph = Multigraph(ends.size());
  out.edge_origin.reserve(corners.size());
  for (const auto& corner : corners) {
    const auto& walk = c.face(corner.face).walk;
    const auto& in = walk[corner.corner];
    const auto& next = walk[(corner.corner + 1) % walk.size()];
    EdgeEnd arrive{in.edge, static_cast<std::uint8_t>(in.forward ? 1 : 0)};
    EdgeEnd leave{next.edge, static_cast<std::uint8_t>(next.forward ? 0 : 1)};
    auto a = out.vertex_of(arrive);
    auto b = out.vertex_of(leave);
    if (a == kNoId || b == kNoId) fail(ErrorKind::kInternal, "link corner references a foreign end");
    out.graph.add_edge(a, b);
    out.edge_origin.push_back(corner);
  }
  return out;
}

LinkGraphResult link_graph(const TwoComplex& c, VertexId v) {
  if (!c.has_vertex(v)) fail(ErrorKind::kNotFound, "link_graph: unknown vertex " + id_str(v));
  // Building the full index is linear; a single star scan would be too.
  IncidenceIndex index(c);
  return link_graph(c, index, v);
}

namespace {

// Union-find over dense vertex positions; roots are always the smallest member.
struct MergePlan {
  std::vector<std::size_t> parent;
  std::vector<bool> contracted;  // by edge position

  std::size_t root(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

MergePlan plan_merge(const TwoComplex& c, std::span<const EdgeId> edges) {
  MergePlan plan;
  plan.parent.resize(c.vertex_count());
  std::iota(plan.parent.begin(), plan.parent.end(), 0);
  plan.contracted.assign(c.edge_count(), false);
  for (auto e : edges) {
    auto ei = c.edge_index(e);
    plan.contracted[ei] = true;
    const auto& rec = c.edges()[ei];
    auto a = plan.root(c.vertex_index(rec.tail));
    auto b = plan.root(c.vertex_index(rec.head));
    if (a == b) continue;
    if (a < b) std::swap(a, b);
    plan.parent[a] = b;
  }
  return plan;
}

}  // namespace

TwoComplex contract_edge_set(const TwoComplex& c, std::span<const EdgeId> edges) {
  auto plan = plan_merge(c, edges);
  TwoComplex out;
  auto vs = c.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (plan.root(i) == i) out.add_vertex(vs[i]);
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    if (plan.contracted[i]) continue;
    const auto& rec = c.edges()[i];
    out.add_edge(rec.id, vs[plan.root(c.vertex_index(rec.tail))],
                 vs[plan.root(c.vertex_index(rec.head))]);
  }
  for (const auto& f : c.faces()) {
    std::vector<FaceDart> walk;
    walk.reserve(f.walk.size());
    for (const auto& d : f.walk)
      if (!plan.contracted[c.edge_index(d.edge)]) walk.push_back(d);
    if (!walk.empty()) out.add_face(f.id, std::move(walk));
  }
  return out;
}

TwoComplex contract_edge(const TwoComplex& c, EdgeId e) {
  const EdgeId one[] = {e};
  return contract_edge_set(c, one);
}

VertexId contracted_vertex(const TwoComplex& c, std::span<const EdgeId> edges, VertexId v) {
  auto plan = plan_merge(c, edges);
  return c.vertices()[plan.root(c.vertex_index(v))];
}

SubdivisionResult subdivide_faces(const TwoComplex& c, std::span<const Subdivision> requests) {
  std::unordered_map<FaceId, std::size_t> by_face;
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const auto& req = requests[r];
    if (!c.has_face(req.face))
      fail(ErrorKind::kNotFound, "subdivide: unknown face " + id_str(req.face));
    if (!by_face.emplace(req.face, r).second)
      fail(ErrorKind::kNotFound, "subdivide: face " + id_str(req.face) + " was already subdivided");
  }

  SubdivisionResult res;
  const EdgeId first_edge = c.next_edge_id();
  const FaceId first_face = c.next_face_id();
  std::vector<std::pair<std::vector<FaceDart>, std::vector<FaceDart>>> halves(requests.size());
  for (std::size_t r = 0; r < requests.size(); ++r) {
    const auto& req = requests[r];
    const auto& walk = c.face(req.face).walk;
    const std::size_t len = walk.size();
    std::size_t iu = SIZE_MAX, iw = SIZE_MAX;
    for (std::size_t j = 0; j < len; ++j) {
      auto t = c.dart_tail(walk[j]);
      if (t == req.u) iu = iu == SIZE_MAX ? j : SIZE_MAX - 1;
      if (t == req.w) iw = iw == SIZE_MAX ? j : SIZE_MAX - 1;
    }
    if (iu >= SIZE_MAX - 1 || iw >= SIZE_MAX - 1 || req.u == req.w)
      fail(ErrorKind::kInvalidArgument, "subdivide: vertices must each lie exactly once on face " +
                                            id_str(req.face));
    std::size_t gap = (iw + len - iu) % len;
    if (gap <= 1 || gap >= len - 1)
      fail(ErrorKind::kInvalidArgument, "subdivide: vertices are adjacent on face " + id_str(req.face));
    EdgeId ne = first_edge + static_cast<EdgeId>(r);
    auto& [first, second] = halves[r];
    for (std::size_t j = iu; j != iw; j = (j + 1) % len) first.push_back(walk[j]);
    first.push_back({ne, false});
    second.push_back({ne, true});
    for (std::size_t j = iw; j != iu; j = (j + 1) % len) second.push_back(walk[j]);
  }

  for (auto v : c.vertices()) res.complex.add_vertex(v);
  for (const auto& e : c.edges()) res.complex.add_edge(e.id, e.tail, e.head);
  for (std::size_t r = 0; r < requests.size(); ++r)
    res.complex.add_edge(first_edge + static_cast<EdgeId>(r), requests[r].u, requests[r].w);
  for (const auto& f : c.faces())
    if (!by_face.count(f.id)) res.complex.add_face(f.id, f.walk);
  for (std::size_t r = 0; r < requests.size(); ++r) {
    FaceId f1 = first_face + static_cast<FaceId>(2 * r);
    res.complex.add_face(f1, std::move(halves[r].first));
    res.complex.add_face(f1 + 1, std::move(halves[r].second));
    res.new_edges.push_back(first_edge + static_cast<EdgeId>(r));
    res.new_faces.emplace_back(f1, f1 + 1);
  }
  return res;
}

SubdivisionResult subdivide_face(const TwoComplex& c, FaceId f, VertexId u, VertexId w) {
  const Subdivision one[] = {{f, u, w}};
  return subdivide_faces(c, one);
}

namespace {

// Position of the occurrence-th traversal of edge e in a face walk.
std::size_t traversal_position(const FaceRecord& f, EdgeId e, std::uint32_t occurrence) {
  std::uint32_t seen = 0;
  for (std::size_t j = 0; j < f.walk.size(); ++j)
    if (f.walk[j].edge == e && seen++ == occurrence) return j;
  fail(ErrorKind::kInvalidArgument, "rotation: face " + id_str(f.id) + " does not traverse edge " +
                                        id_str(e) + " that often");
}

}  // namespace

RotationSystem rotation_from_geometry(const TwoComplex& c, std::span<const Point3> coords) {
  if (coords.size() != c.vertex_count())
    fail(ErrorKind::kInvalidArgument, "rotation_from_geometry: one coordinate per vertex required");
  auto at = [&](VertexId v) { return coords[c.vertex_index(v)]; };

  struct Spoke {
    FaceIncidence inc;
    Point3 dir;
  };
  std::vector<std::vector<Spoke>> spokes(c.edge_count());
  for (const auto& f : c.faces()) {
    std::unordered_map<EdgeId, std::uint32_t> occ;
    const std::size_t len = f.walk.size();
    for (std::size_t j = 0; j < len; ++j) {
      const auto& d = f.walk[j];
      auto ei = c.edge_index(d.edge);
      const auto& rec = c.edges()[ei];
      if (rec.is_loop())
        fail(ErrorKind::kDegenerate, "rotation_from_geometry: loop " + id_str(rec.id) + " has no axis");
      const Point3 t = at(rec.tail);
      const Point3 axis = at(rec.head) - t;
      // First vertex of the face off the edge line gives the face's direction.
      Point3 dir;
      for (std::size_t k = 1; k <= len && dir.is_zero(); ++k) {
        Point3 q = at(c.dart_head(f.walk[(j + k) % len])) - t;
        if (!cross(axis, q).is_zero()) dir = q * dot(axis, axis) - axis * dot(q, axis);
      }
      if (dir.is_zero())
        fail(ErrorKind::kDegenerate, "rotation_from_geometry: face " + id_str(f.id) + " is flat along edge " +
                                         id_str(rec.id));
      spokes[ei].push_back({{f.id, occ[d.edge]++}, dir});
    }
  }

  RotationSystem rs;
  for (std::size_t ei = 0; ei < c.edge_count(); ++ei) {
    const auto& rec = c.edges()[ei];
    auto& sp = spokes[ei];
    std::vector<FaceIncidence> order;
    if (!sp.empty()) {
      const Point3 axis = at(rec.head) - at(rec.tail);
      const Point3 ref = sp.front().dir;
      auto half = [&](const Point3& q) {
        auto s = dot(axis, cross(ref, q));
        return (s > 0 || (s == 0 && dot(ref, q) > 0)) ? 0 : 1;
      };
      for (std::size_t i = 0; i < sp.size(); ++i)
        for (std::size_t k = i + 1; k < sp.size(); ++k)
          if (cross(sp[i].dir, sp[k].dir).is_zero() && dot(sp[i].dir, sp[k].dir) > 0)
            fail(ErrorKind::kDegenerate, "rotation_from_geometry: faces " + id_str(sp[i].inc.face) + " and " +
                                             id_str(sp[k].inc.face) + " meet edge " + id_str(rec.id) +
                                             " at the same angle");
      std::stable_sort(sp.begin(), sp.end(), [&](const Spoke& a, const Spoke& b) {
        int ha = half(a.dir), hb = half(b.dir);
        if (ha != hb) return ha < hb;
        return dot(axis, cross(a.dir, b.dir)) > 0;
      });
      for (const auto& s : sp) order.push_back(s.inc);
    }
    rs.around.emplace(rec.id, std::move(order));
  }
  return rs;
}

RotationSystem restrict_rotation(const RotationSystem& r, const TwoComplex& contracted) {
  RotationSystem out;
  for (const auto& e : contracted.edges()) {
    auto it = r.around.find(e.id);
    if (it == r.around.end())
      fail(ErrorKind::kInvalidArgument, "restrict_rotation: edge " + id_str(e.id) + " has no rotator");
    std::vector<FaceIncidence> kept;
    for (const auto& inc : it->second)
      if (contracted.has_face(inc.face)) kept.push_back(inc);
    out.around.emplace(e.id, std::move(kept));
  }
  return out;
}

GraphRotation induced_link_rotation(const TwoComplex& c, const RotationSystem& r,
                                    const LinkGraphResult& link) {
  GraphRotation rot(link.vertex_origin.size());
  for (std::size_t lv = 0; lv < link.vertex_origin.size(); ++lv) {
    const auto [e, end] = link.vertex_origin[lv];
    auto it = r.around.find(e);
    if (it == r.around.end())
      fail(ErrorKind::kInvalidArgument, "induced_link_rotation: edge " + id_str(e) + " has no rotator");
    std::vector<FaceIncidence> order = it->second;
    if (end == 1) std::reverse(order.begin(), order.end());
    for (const auto& inc : order) {
      const auto& f = c.face(inc.face);
      const auto j = traversal_position(f, e, inc.occurrence);
      const auto& d = f.walk[j];
      const std::uint8_t start_end = d.forward ? 0 : 1;
      GraphDart dart;
      if (start_end == end) {
        auto corner = static_cast<std::uint32_t>((j + f.walk.size() - 1) % f.walk.size());
        dart = {link.edge_of({f.id, corner}), 1};
      } else {
        dart = {link.edge_of({f.id, static_cast<std::uint32_t>(j)}), 0};
      }
      if (dart.edge == kNoId) fail(ErrorKind::kInternal, "induced_link_rotation: corner missing from link");
      rot[lv].push_back(dart);
    }
  }
  return rot;
}

GraphRotation induced_link_rotation(const TwoComplex& c, const RotationSystem& r, VertexId v) {
  return induced_link_rotation(c, r, link_graph(c, v));
}

}  // namespace entangle
