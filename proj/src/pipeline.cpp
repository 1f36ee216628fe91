#include "entangle/construction.hpp"
#include "entangle/error.hpp"

namespace entangle {

std::vector<EdgeId> Pipeline::overhand_edges(Side side) const {
  std::vector<EdgeId> out;
  for (const auto& d : plan.spine.parts[side == Side::kRight ? 1 : 3].diagonals()) out.push_back(cprime.edge_of(d, plan));
  return out;
}

Side Pipeline::required_side(EdgeId e) const {
  const auto& r = cprime.complex.edge(e);
  const Point3 a = box.coord(r.tail), b = box.coord(r.head);
  if (coloring.of(a) == coloring.of(b))
    fail(ErrorKind::kInvalidArgument, "edge " + std::to_string(e) + " has no white endpoint opposite a black one");
  const Point3 white = coloring.of(a) == Color::kWhite ? a : b;
  return white.x >= n + 1 ? Side::kLeft : Side::kRight;
}

const CollinearTriple& Pipeline::triple(Side side) const {
  return side == Side::kRight ? plan.spine.right_triple : plan.spine.left_triple;
}

std::array<EdgeId, 3> Pipeline::triple_edges(Side side) const {
  const auto& t = triple(side);
  return {cprime.edge_of(t.e[0], plan), cprime.edge_of(t.e[1], plan), cprime.edge_of(t.e[2], plan)};
}

Pipeline build_pipeline(std::int64_t n, std::uint64_t seed) {
  Pipeline p;
  p.n = n;
  p.seed = seed;
  p.box = build_box(n);
  p.coloring = box_coloring(n);
  p.plan = build_tree_plan(p.box, build_spine(p.box, n), seed);
  p.cprime = build_Cprime(p.box, p.plan);
  p.cdoubleprime = build_Cdoubleprime(p.cprime);
  p.tree.emplace(p.cprime.complex, p.cprime.tree_edges);
  return p;
}

}  // namespace entangle
