#include "entangle/artifacts.hpp"

#include <sstream>

#include "entangle/error.hpp"
#include "entangle/planarity.hpp"

namespace entangle {

Formats Formats::parse(const std::string& list) {
  Formats f;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "off") f.off = true;
    else if (item == "obj") f.obj = true;
    else if (item == "dot") f.dot = true;
    else if (item == "json") f.json = true;
    else fail(ErrorKind::kInvalidArgument, "unknown format '" + item + "' (expected off, obj, dot, json)");
  }
  if (!(f.off || f.obj || f.dot || f.json)) fail(ErrorKind::kInvalidArgument, "empty format list");
  return f;
}

namespace {

std::string obj_comment(const char* what, std::int64_t n, std::uint64_t seed) {
  return "# entangle " + std::string(what) + " n=" + std::to_string(n) + " seed=" + std::to_string(seed) + "\n";
}

class Writer {
 public:
  explicit Writer(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void operator()(const std::string& name, std::string_view text) {
    write_text(dir_ / name, text);
    written_.push_back(dir_ / name);
  }
  std::vector<std::filesystem::path> done() { return std::move(written_); }

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

Json with_header(std::string_view kind, std::int64_t n, std::uint64_t seed, const char* key, Json payload) {
  Json j = {{"header", file_header(kind, n, seed)}};
  j[key] = std::move(payload);
  return j;
}

}  // namespace

std::vector<std::filesystem::path> write_generate(std::int64_t n, const std::filesystem::path& dir,
                                                  const Formats& formats) {
  const auto box = build_box(n);
  const auto col = box_coloring(n);
  Writer w(dir);
  if (formats.json) w("complex.json", dump(with_header("complex", n, 0, "cuboid", cuboid_to_json(box, col))));
  if (formats.off) w("complex.off", mesh_off(box.complex(), box.coords()));
  if (formats.obj) w("complex.obj", obj_comment("complex", n, 0) + mesh_obj(box.complex(), box.coords()));
  if (formats.dot) {
    const auto link = link_graph(box.complex(), box.vertex_at({n, n / 2, n / 2}));
    w("link.dot", to_dot(link.graph, "link"));
  }
  return w.done();
}

std::vector<std::filesystem::path> write_build(const Pipeline& p, const std::filesystem::path& dir,
                                               const Formats& formats) {
  Writer w(dir);
  w("spine.json", dump(with_header("spine", p.n, p.seed, "spine", to_json(p.plan.spine, p.box)), 2));
  Json tree = with_header("tree", p.n, p.seed, "plan", to_json(p.plan, p.box));
  tree["edge_count"] = p.cprime.tree_edges.size();
  tree["tree_edges"] = p.cprime.tree_edges;
  w("tree.json", dump(tree));
  w("cprime.json", dump(with_header("cprime", p.n, p.seed, "subdivided", to_json(p.cprime))));
  Json cpp = with_header("cdoubleprime", p.n, p.seed, "complex", to_json(p.cdoubleprime));
  cpp["vertex_count"] = p.cdoubleprime.vertex_count();
  cpp["edge_count"] = p.cdoubleprime.edge_count();
  cpp["face_count"] = p.cdoubleprime.face_count();
  w("cdoubleprime.json", dump(cpp));

  if (formats.off || formats.obj) {
    const auto coords = p.box.coords();
    std::vector<std::size_t> spine;
    for (VertexId v : p.plan.spine.vertices()) spine.push_back(p.box.complex().vertex_index(v));
    std::vector<std::vector<std::size_t>> segments;
    for (EdgeId e : p.cprime.tree_edges) {
      const auto& r = p.cprime.complex.edge(e);
      segments.push_back({p.cprime.complex.vertex_index(r.tail), p.cprime.complex.vertex_index(r.head)});
    }
    if (formats.off) {
      w("spine.off", polylines_off(coords, {spine}));
      w("tree.off", polylines_off(coords, segments));
      w("cprime.off", mesh_off(p.cprime.complex, p.cprime.coords));
    }
    if (formats.obj) {
      w("spine.obj", obj_comment("spine", p.n, p.seed) + polylines_obj(coords, {spine}));
      w("tree.obj", obj_comment("tree", p.n, p.seed) + polylines_obj(coords, segments));
      w("cprime.obj", obj_comment("cprime", p.n, p.seed) + mesh_obj(p.cprime.complex, p.cprime.coords));
    }
  }
  if (formats.dot) {
    for (Side side : {Side::kRight, Side::kLeft}) {
      const auto t = p.triple_edges(side);
      const auto& m = p.cprime.complex.edge(t[1]);
      const auto link = link_graph(contract_edge(p.cprime.complex, t[1]), std::min(m.tail, m.head));
      w(side == Side::kRight ? "link_P2.dot" : "link_P4.dot", to_dot(link.graph, "link"));
    }
  }
  return w.done();
}

Json knot_report(const Pipeline& p, EdgeId edge, const std::vector<std::uint32_t>& primes) {
  const auto& c = p.cprime.complex;
  if (!c.has_edge(edge)) fail(ErrorKind::kNotFound, "C' has no edge " + std::to_string(edge));
  if (p.tree->in_tree(edge)) fail(ErrorKind::kInvalidArgument, "edge " + std::to_string(edge) + " is a tree edge");
  if (primes.empty()) fail(ErrorKind::kInvalidArgument, "no modulus given");
  for (auto q : primes)
    if (!is_odd_prime(q)) fail(ErrorKind::kInvalidArgument, std::to_string(q) + " is not an odd prime");
  const auto fc = fundamental_cycle(c, *p.tree, edge);
  const auto poly = cycle_polygon(p, fc);
  const auto& r = c.edge(edge);
  const auto a = p.box.coord(r.tail), b = p.box.coord(r.head);
  Json j = {{"header", file_header("knot", p.n, p.seed)},
            {"edge", edge},
            {"tail", {{"id", r.tail}, {"coord", {a.x, a.y, a.z}}, {"color", color_name(p.coloring.of(a))}}},
            {"head", {{"id", r.head}, {"coord", {b.x, b.y, b.z}}, {"color", color_name(p.coloring.of(b))}}}};
  if (p.coloring.of(a) != p.coloring.of(b))
    j["required_path"] = p.required_side(edge) == Side::kRight ? "P2" : "P4";
  j["cycle_edges"] = fc.edges.size();
  j["polygon_vertices"] = poly.size();
  Json certs = Json::array();
  for (auto q : primes) certs.push_back(to_json(is_certified_nontrivial(poly, p.seed, q)));
  j["certificates"] = certs;
  return j;
}

}  // namespace entangle
