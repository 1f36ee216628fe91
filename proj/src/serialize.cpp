#include "entangle/serialize.hpp"

#include <fstream>
#include <sstream>

#include "entangle/error.hpp"

namespace entangle {

namespace {

Json point(const Point3& p) { return Json::array({p.x, p.y, p.z}); }

Point3 point_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) fail(ErrorKind::kInvalidArgument, "expected [x, y, z]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>()};
}

Json diagonals(std::span<const DiagonalEdge> ds) {
  Json out = Json::array();
  for (const auto& d : ds) out.push_back({d.a, d.b, d.host});
  return out;
}

std::vector<DiagonalEdge> diagonals_from(const Json& j) {
  std::vector<DiagonalEdge> out;
  for (const auto& d : j) {
    if (!d.is_array() || d.size() != 3) fail(ErrorKind::kInvalidArgument, "expected [a, b, host]");
    out.push_back({d[0].get<VertexId>(), d[1].get<VertexId>(), d[2].get<FaceId>()});
  }
  return out;
}

// Maps nlohmann's parse and type errors onto the library's error kinds.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInvalidArgument) throw;
    fail(ErrorKind::kInvalidArgument, std::string(what) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kInvalidArgument, std::string(what) + ": " + e.what());
  }
}

Json path_json(const FacialPath& p, const CuboidComplex& c) {
  Json coords = Json::array();
  for (VertexId v : p.vertices) coords.push_back(point(c.coord(v)));
  Json steps = Json::array();
  for (const auto& s : p.steps) {
    Json st = {{"from", s.from}, {"to", s.to}};
    if (s.diagonal) {
      st["kind"] = "diagonal";
      st["host"] = s.host;
    } else {
      st["kind"] = "edge";
      st["edge"] = s.edge;
    }
    steps.push_back(std::move(st));
  }
  return {{"vertices", p.vertices}, {"coords", coords}, {"steps", steps}};
}

FacialPath path_from(const Json& j) {
  FacialPath p;
  p.vertices = j.at("vertices").get<std::vector<VertexId>>();
  for (const auto& st : j.at("steps")) {
    PathStep s;
    s.from = st.at("from").get<VertexId>();
    s.to = st.at("to").get<VertexId>();
    const auto kind = st.at("kind").get<std::string>();
    if (kind == "diagonal") {
      s.host = st.at("host").get<FaceId>();
    } else if (kind == "edge") {
      s.diagonal = false;
      s.edge = st.at("edge").get<EdgeId>();
    } else {
      fail(ErrorKind::kInvalidArgument, "unknown step kind '" + kind + "'");
    }
    p.steps.push_back(s);
  }
  return p;
}

Json triple_json(const CollinearTriple& t) {
  return {{"vertices", t.v}, {"diagonals", diagonals(t.e)}, {"first_step", t.first_step}};
}

CollinearTriple triple_from(const Json& j) {
  CollinearTriple t;
  t.v = j.at("vertices").get<std::array<VertexId, 4>>();
  const auto e = diagonals_from(j.at("diagonals"));
  if (e.size() != 3) fail(ErrorKind::kInvalidArgument, "a triple has three diagonals");
  std::copy(e.begin(), e.end(), t.e.begin());
  t.first_step = j.at("first_step").get<std::size_t>();
  return t;
}

const char* verdict_name(KnotVerdict v) { return v == KnotVerdict::kNontrivial ? "nontrivial" : "unknown"; }

}  // namespace

Json to_json(const TwoComplex& c) {
  Json edges = Json::array();
  for (const auto& e : c.edges()) edges.push_back({e.id, e.tail, e.head});
  Json faces = Json::array();
  for (const auto& f : c.faces()) {
    Json walk = Json::array();
    for (const auto& d : f.walk) walk.push_back({d.edge, d.forward ? 1 : -1});
    faces.push_back({{"id", f.id}, {"walk", walk}});
  }
  return {{"vertices", Json(std::vector<VertexId>(c.vertices().begin(), c.vertices().end()))},
          {"edges", edges},
          {"faces", faces}};
}

TwoComplex complex_from_json(const Json& j) {
  return guarded("complex", [&] {
    TwoComplex c;
    for (const auto& v : j.at("vertices")) c.add_vertex(v.get<VertexId>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) fail(ErrorKind::kInvalidArgument, "expected [id, tail, head]");
      c.add_edge(e[0].get<EdgeId>(), e[1].get<VertexId>(), e[2].get<VertexId>());
    }
    for (const auto& f : j.at("faces")) {
      std::vector<FaceDart> walk;
      for (const auto& d : f.at("walk")) {
        const int sign = d.at(1).get<int>();
        if (sign != 1 && sign != -1) fail(ErrorKind::kInvalidArgument, "dart orientation must be 1 or -1");
        walk.push_back({d.at(0).get<EdgeId>(), sign == 1});
      }
      c.add_face(f.at("id").get<FaceId>(), std::move(walk));
    }
    return c;
  });
}

Json to_json(const Multigraph& g) {
  Json j = {{"vertex_count", g.vertex_count()}};
  if (g.vertex_count() > 0 && g.has_labels()) {
    Json labels = Json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v) labels.push_back(g.label(v));
    j["labels"] = labels;
  }
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.a, e.b});
  j["edges"] = edges;
  return j;
}

Multigraph multigraph_from_json(const Json& j) {
  return guarded("graph", [&] {
    const auto n = j.at("vertex_count").get<std::size_t>();
    Multigraph g;
    if (j.contains("labels")) {
      const auto& labels = j.at("labels");
      if (labels.size() != n) fail(ErrorKind::kInvalidArgument, "one label per vertex required");
      for (const auto& l : labels) g.add_vertex(l.get<std::string>());
    } else {
      g = Multigraph(n);
    }
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<VertexId>(), e.at(1).get<VertexId>());
    return g;
  });
}

Json cuboid_to_json(const CuboidComplex& c, const Coloring& coloring) {
  Json coords = Json::array();
  const auto ids = c.complex().vertices();
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto& p = c.coords()[k];
    coords.push_back({ids[k], p.x, p.y, p.z, color_name(coloring.of(p))});
  }
  const int white_parity = coloring.anchor_color() == Color::kWhite ? coloring.anchor_parity() : 1 - coloring.anchor_parity();
  return {{"dims", {c.dims().n1, c.dims().n2, c.dims().n3}},
          {"lo", point(c.lo())},
          {"hi", point(c.hi())},
          {"white_parity", white_parity},
          {"vertex_count", c.complex().vertex_count()},
          {"edge_count", c.complex().edge_count()},
          {"face_count", c.complex().face_count()},
          {"coords", coords},
          {"complex", to_json(c.complex())}};
}

LoadedCuboid cuboid_from_json(const Json& j) {
  return guarded("cuboid", [&] {
    const auto d = j.at("dims");
    auto box = build_cuboid(d.at(0).get<std::int64_t>(), d.at(1).get<std::int64_t>(), d.at(2).get<std::int64_t>());
    const auto lo = point_from(j.at("lo")), hi = point_from(j.at("hi"));
    if (!(lo == box.lo()) || !(hi == box.hi())) box = slab(box, lo.x, hi.x);
    if (!(box.lo() == lo) || !(box.hi() == hi)) fail(ErrorKind::kInvalidArgument, "cuboid bounds are not a slab");
    const int parity = j.at("white_parity").get<int>();
    if (parity != 0 && parity != 1) fail(ErrorKind::kInvalidArgument, "white_parity must be 0 or 1");
    Coloring coloring(Point3{parity, 0, 0}, Color::kWhite);
    if (!(complex_from_json(j.at("complex")) == box.complex()))
      fail(ErrorKind::kInvalidArgument, "stored complex differs from the box it names");
    const auto& coords = j.at("coords");
    if (coords.size() != box.coords().size()) fail(ErrorKind::kInvalidArgument, "coordinate count mismatch");
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const auto& r = coords[k];
      const Point3 p{r.at(1).get<std::int64_t>(), r.at(2).get<std::int64_t>(), r.at(3).get<std::int64_t>()};
      if (r.at(0).get<VertexId>() != box.complex().vertices()[k] || !(p == box.coords()[k]) ||
          r.at(4).get<std::string>() != color_name(coloring.of(p)))
        fail(ErrorKind::kInvalidArgument, "coordinate record " + std::to_string(k) + " disagrees with the box");
    }
    return LoadedCuboid{std::move(box), coloring};
  });
}

Json to_json(const Spine& s, const CuboidComplex& c) {
  static const char* names[5] = {"P1", "P2", "P3", "P4", "P5"};
  Json parts = Json::array();
  for (std::size_t k = 0; k < 5; ++k) {
    Json part = {{"name", names[k]}};
    part.update(path_json(s.parts[k], c));
    parts.push_back(std::move(part));
  }
  Json markers = Json::object();
  for (const auto& [name, v] : {std::pair{"A", s.A}, {"B", s.B}, {"A'", s.A2}, {"B'", s.B2}, {"O", s.O}, {"O'", s.O2}})
    markers[name] = {{"id", v}, {"coord", point(c.coord(v))}};
  return {{"n", s.n},
          {"markers", markers},
          {"parts", parts},
          {"right_triple", triple_json(s.right_triple)},
          {"left_triple", triple_json(s.left_triple)}};
}

Spine spine_from_json(const Json& j) {
  return guarded("spine", [&] {
    Spine s;
    s.n = j.at("n").get<std::int64_t>();
    const auto& parts = j.at("parts");
    if (parts.size() != 5) fail(ErrorKind::kInvalidArgument, "a spine has five parts");
    for (std::size_t k = 0; k < 5; ++k) s.parts[k] = path_from(parts[k]);
    const auto& m = j.at("markers");
    s.A = m.at("A").at("id").get<VertexId>();
    s.B = m.at("B").at("id").get<VertexId>();
    s.A2 = m.at("A'").at("id").get<VertexId>();
    s.B2 = m.at("B'").at("id").get<VertexId>();
    s.O = m.at("O").at("id").get<VertexId>();
    s.O2 = m.at("O'").at("id").get<VertexId>();
    s.right_triple = triple_from(j.at("right_triple"));
    s.left_triple = triple_from(j.at("left_triple"));
    return s;
  });
}

Json to_json(const SpanningTreePlan& plan, const CuboidComplex& c) {
  return {{"n", plan.n},
          {"seed", plan.seed},
          {"spine", to_json(plan.spine, c)},
          {"Tb1", diagonals(plan.Tb1)},
          {"Tb2", diagonals(plan.Tb2)},
          {"Tb3", diagonals(plan.Tb3)},
          {"Tw1", diagonals(plan.Tw1)},
          {"Tw2", diagonals(plan.Tw2)},
          {"Tb", diagonals(plan.Tb)},
          {"I", diagonals(plan.I)},
          {"diagonals", diagonals(plan.diagonals)},
          {"complex_edges", plan.complex_edges}};
}

SpanningTreePlan plan_from_json(const Json& j) {
  return guarded("tree plan", [&] {
    SpanningTreePlan p;
    p.n = j.at("n").get<std::int64_t>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.spine = spine_from_json(j.at("spine"));
    p.Tb1 = diagonals_from(j.at("Tb1"));
    p.Tb2 = diagonals_from(j.at("Tb2"));
    p.Tb3 = diagonals_from(j.at("Tb3"));
    p.Tw1 = diagonals_from(j.at("Tw1"));
    p.Tw2 = diagonals_from(j.at("Tw2"));
    p.Tb = diagonals_from(j.at("Tb"));
    p.I = diagonals_from(j.at("I"));
    p.diagonals = diagonals_from(j.at("diagonals"));
    p.complex_edges = j.at("complex_edges").get<std::array<EdgeId, 2>>();
    return p;
  });
}

Json to_json(const SubdividedComplex& cp) {
  Json coords = Json::array();
  for (const auto& p : cp.coords) coords.push_back(point(p));
  return {{"vertex_count", cp.complex.vertex_count()},
          {"edge_count", cp.complex.edge_count()},
          {"face_count", cp.complex.face_count()},
          {"complex", to_json(cp.complex)},
          {"coords", coords},
          {"diagonal_edges", cp.diagonal_edges},
          {"tree_edges", cp.tree_edges}};
}

SubdividedComplex subdivided_from_json(const Json& j) {
  return guarded("subdivided complex", [&] {
    SubdividedComplex cp;
    cp.complex = complex_from_json(j.at("complex"));
    for (const auto& p : j.at("coords")) cp.coords.push_back(point_from(p));
    if (cp.coords.size() != cp.complex.vertex_count()) fail(ErrorKind::kInvalidArgument, "one coordinate per vertex required");
    cp.diagonal_edges = j.at("diagonal_edges").get<std::vector<EdgeId>>();
    cp.tree_edges = j.at("tree_edges").get<std::vector<EdgeId>>();
    return cp;
  });
}

Json to_json(const KnotCertificate& k) {
  return {{"verdict", verdict_name(k.verdict)},
          {"direction", point(k.direction)},
          {"segments", k.segments},
          {"crossings", k.crossings},
          {"arcs", k.arcs},
          {"fox", {{"p", k.fox.p}, {"kernel_dimension", k.fox.kernel_dimension}, {"count", k.fox.count}}},
          {"gauss_code", k.gauss_code}};
}

KnotCertificate certificate_from_json(const Json& j) {
  return guarded("knot certificate", [&] {
    KnotCertificate k;
    const auto v = j.at("verdict").get<std::string>();
    if (v != "nontrivial" && v != "unknown") fail(ErrorKind::kInvalidArgument, "unknown verdict '" + v + "'");
    k.verdict = v == "nontrivial" ? KnotVerdict::kNontrivial : KnotVerdict::kUnknown;
    k.direction = point_from(j.at("direction"));
    k.segments = j.at("segments").get<std::size_t>();
    k.crossings = j.at("crossings").get<std::size_t>();
    k.arcs = j.at("arcs").get<std::uint32_t>();
    const auto& f = j.at("fox");
    k.fox.p = f.at("p").get<std::uint32_t>();
    k.fox.kernel_dimension = f.at("kernel_dimension").get<std::uint32_t>();
    k.fox.count = f.at("count").get<std::string>();
    k.gauss_code = j.at("gauss_code").get<std::string>();
    return k;
  });
}

VerificationReport report_from_json(const Json& j) {
  return guarded("report", [&] {
    VerificationReport r;
    r.n = j.at("n").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("checks")) {
      CheckRecord rec;
      rec.name = c.at("name").get<std::string>();
      rec.scope = c.at("scope").get<std::string>();
      rec.passed = c.at("passed").get<bool>();
      rec.seconds = c.at("seconds").get<double>();
      rec.summary = c.at("summary");
      rec.counterexample = c.at("counterexample");
      r.checks.push_back(std::move(rec));
    }
    if (j.at("passed").get<bool>() != r.passed()) fail(ErrorKind::kInvalidArgument, "report verdict disagrees with its checks");
    return r;
  });
}

Json file_header(std::string_view kind, std::int64_t n, std::uint64_t seed) {
  return {{"format", "entangle." + std::string(kind)}, {"version", 1}, {"n", n}, {"seed", seed}};
}

namespace {

std::vector<std::vector<std::size_t>> polygons(const TwoComplex& c, const MeshOptions& o) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : c.faces()) {
    std::vector<std::size_t> poly;
    for (const auto& d : f.walk) poly.push_back(c.vertex_index(c.dart_tail(d)));
    if (o.triangulate && poly.size() > 3) {
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) out.push_back({poly[0], poly[k], poly[k + 1]});
    } else {
      out.push_back(std::move(poly));
    }
  }
  return out;
}

void check_coords(const TwoComplex& c, std::span<const Point3> coords) {
  if (coords.size() != c.vertex_count()) fail(ErrorKind::kInvalidArgument, "one coordinate per vertex required");
}

}  // namespace

std::string mesh_off(const TwoComplex& c, std::span<const Point3> coords, const MeshOptions& options) {
  check_coords(c, coords);
  const auto polys = polygons(c, options);
  std::size_t edges = c.edge_count();
  if (options.triangulate)
    for (const auto& f : c.faces()) edges += f.walk.size() > 3 ? f.walk.size() - 3 : 0;
  std::ostringstream os;
  os << "OFF\n" << coords.size() << ' ' << polys.size() << ' ' << edges << '\n';
  for (const auto& p : coords) os << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& poly : polys) {
    os << poly.size();
    for (auto v : poly) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

std::string mesh_obj(const TwoComplex& c, std::span<const Point3> coords, const MeshOptions& options) {
  check_coords(c, coords);
  std::ostringstream os;
  for (const auto& p : coords) os << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& poly : polygons(c, options)) {
    os << 'f';
    for (auto v : poly) os << ' ' << v + 1;
    os << '\n';
  }
  return os.str();
}

std::string polylines_obj(std::span<const Point3> points, const std::vector<std::vector<std::size_t>>& lines) {
  std::ostringstream os;
  for (const auto& p : points) os << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& line : lines) {
    if (line.size() < 2) fail(ErrorKind::kInvalidArgument, "a polyline needs two points");
    os << 'l';
    for (auto v : line) {
      if (v >= points.size()) fail(ErrorKind::kInvalidArgument, "polyline index out of range");
      os << ' ' << v + 1;
    }
    os << '\n';
  }
  return os.str();
}

std::string polylines_off(std::span<const Point3> points, const std::vector<std::vector<std::size_t>>& lines) {
  std::size_t segments = 0;
  for (const auto& line : lines) {
    if (line.size() < 2) fail(ErrorKind::kInvalidArgument, "a polyline needs two points");
    for (auto v : line)
      if (v >= points.size()) fail(ErrorKind::kInvalidArgument, "polyline index out of range");
    segments += line.size() - 1;
  }
  std::ostringstream os;
  os << "OFF\n" << points.size() << ' ' << segments << ' ' << segments << '\n';
  for (const auto& p : points) os << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& line : lines)
    for (std::size_t k = 0; k + 1 < line.size(); ++k) os << "2 " << line[k] << ' ' << line[k + 1] << '\n';
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) fail(ErrorKind::kIo, "failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string dump(const Json& j, int indent) { return j.dump(indent) + "\n"; }

}  // namespace entangle
