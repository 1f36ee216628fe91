#include "entangle/knots.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "entangle/error.hpp"

namespace entangle {

namespace {

using i128 = __int128;

struct P2 {
  std::int64_t x = 0;
  std::int64_t y = 0;
};

i128 cross2(P2 o, P2 a, P2 b) {
  return static_cast<i128>(a.x - o.x) * (b.y - o.y) - static_cast<i128>(a.y - o.y) * (b.x - o.x);
}

i128 cross2v(P2 a, P2 b) { return static_cast<i128>(a.x) * b.y - static_cast<i128>(a.y) * b.x; }

int sgn(i128 v) { return (v > 0) - (v < 0); }

bool within(std::int64_t a, std::int64_t b, std::int64_t v) { return std::min(a, b) <= v && v <= std::max(a, b); }

// Closed segment-segment intersection in the plane.
bool segments_meet_2d(P2 a, P2 b, P2 c, P2 d) {
  const int d1 = sgn(cross2(a, b, c)), d2 = sgn(cross2(a, b, d));
  const int d3 = sgn(cross2(c, d, a)), d4 = sgn(cross2(c, d, b));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  auto on = [](P2 p, P2 q, P2 r) { return within(p.x, q.x, r.x) && within(p.y, q.y, r.y); };
  return (d1 == 0 && on(a, b, c)) || (d2 == 0 && on(a, b, d)) || (d3 == 0 && on(c, d, a)) ||
         (d4 == 0 && on(c, d, b));
}

bool point_on_segment_2d(P2 p, P2 a, P2 b) {
  return cross2(a, b, p) == 0 && within(a.x, b.x, p.x) && within(a.y, b.y, p.y);
}

// Closed segment-segment intersection in space.
bool segments_meet_3d(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  const Point3 ab = b - a, ac = c - a, ad = d - a, cd = d - c;
  const i128 vol = static_cast<i128>(dot(cross(ab, ac), ad));
  if (vol != 0) return false;
  Point3 n = cross(ab, cd);
  if (n.is_zero()) n = cross(ab, ac);
  if (n.is_zero()) {
    // All four collinear: overlap of their shadows on the dominant axis.
    auto ax = [](const Point3& v) { return std::abs(v.x) >= std::abs(v.y) && std::abs(v.x) >= std::abs(v.z) ? 0 : (std::abs(v.y) >= std::abs(v.z) ? 1 : 2); };
    const int k = ab.is_zero() ? ax(cd) : ax(ab);
    auto comp = [k](const Point3& v) { return k == 0 ? v.x : (k == 1 ? v.y : v.z); };
    return std::max(std::min(comp(a), comp(b)), std::min(comp(c), comp(d))) <=
           std::min(std::max(comp(a), comp(b)), std::max(comp(c), comp(d)));
  }
  // Coplanar: drop the dominant normal component.
  const auto nx = std::abs(n.x), ny = std::abs(n.y), nz = std::abs(n.z);
  auto flat = [&](const Point3& p) -> P2 {
    if (nx >= ny && nx >= nz) return {p.y, p.z};
    if (ny >= nz) return {p.x, p.z};
    return {p.x, p.y};
  };
  return segments_meet_2d(flat(a), flat(b), flat(c), flat(d));
}

bool collinear3(const Point3& a, const Point3& b, const Point3& c) { return cross(b - a, c - b).is_zero(); }

Point3 basis_seed(const Point3& d) {
  Point3 a{1, 0, 0};
  if (cross(d, a).is_zero()) a = {0, 1, 0};
  return a;
}

struct Projection {
  Point3 u, w;
  std::vector<P2> pts;
};

Projection make_projection(const PLCycle& c, const Point3& d) {
  Projection pr;
  pr.u = cross(d, basis_seed(d));
  pr.w = cross(d, pr.u);
  pr.pts.reserve(c.size());
  for (const auto& p : c) pr.pts.push_back({dot(p, pr.u), dot(p, pr.w)});
  return pr;
}

struct RawCrossing {
  std::uint32_t i, j;  // segments, i < j
  i128 ti, tj, den;    // parameters ti/den along i, tj/den along j; den > 0
};

// Proper crossings of non-adjacent segment projections.
std::vector<RawCrossing> raw_crossings(const std::vector<P2>& pts) {
  const std::size_t n = pts.size();
  std::vector<RawCrossing> out;
  for (std::uint32_t i = 0; i < n; ++i) {
    const P2 a0 = pts[i], a1 = pts[(i + 1) % n];
    const P2 r{a1.x - a0.x, a1.y - a0.y};
    const std::int64_t minx = std::min(a0.x, a1.x), maxx = std::max(a0.x, a1.x);
    const std::int64_t miny = std::min(a0.y, a1.y), maxy = std::max(a0.y, a1.y);
    for (std::uint32_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const P2 b0 = pts[j], b1 = pts[(j + 1) % n];
      if (std::max(b0.x, b1.x) < minx || std::min(b0.x, b1.x) > maxx || std::max(b0.y, b1.y) < miny ||
          std::min(b0.y, b1.y) > maxy)
        continue;
      const P2 s{b1.x - b0.x, b1.y - b0.y};
      i128 den = cross2v(r, s);
      if (den == 0) continue;
      const P2 q{b0.x - a0.x, b0.y - a0.y};
      i128 tn = cross2v(q, s), un = cross2v(q, r);
      if (den < 0) {
        den = -den;
        tn = -tn;
        un = -un;
      }
      if (tn <= 0 || tn >= den || un <= 0 || un >= den) continue;
      out.push_back({i, j, tn, un, den});
    }
  }
  return out;
}

bool generic_impl(const PLCycle& c, const Point3& d, std::string* why, std::vector<RawCrossing>* crossings_out) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (d.is_zero()) return reject("zero direction");
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    if (cross(c[(i + 1) % n] - c[i], d).is_zero()) return reject("segment " + std::to_string(i) + " is parallel to the direction");
  auto pr = make_projection(c, d);
  const auto& P = pr.pts;
  for (std::size_t i = 0; i < n; ++i)
    if (cross2(P[(i + n - 1) % n], P[i], P[(i + 1) % n]) == 0)
      return reject("segments meeting at vertex " + std::to_string(i) + " project onto one line");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t i1 = (i + 1) % n;
      if (k == i || k == i1) continue;
      if (point_on_segment_2d(P[k], P[i], P[i1]))
        return reject("vertex " + std::to_string(k) + " projects onto segment " + std::to_string(i));
    }
  auto raw = raw_crossings(P);
  // Parameters along each segment must be distinct (this also rules out triple points).
  std::vector<std::vector<std::pair<i128, i128>>> params(n);
  for (const auto& x : raw) {
    params[x.i].push_back({x.ti, x.den});
    params[x.j].push_back({x.tj, x.den});
  }
  for (std::size_t s = 0; s < n; ++s) {
    auto& v = params[s];
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first * b.second < b.first * a.second; });
    for (std::size_t k = 1; k < v.size(); ++k)
      if (v[k - 1].first * v[k].second == v[k].first * v[k - 1].second)
        return reject("two crossings coincide on segment " + std::to_string(s));
  }
  if (crossings_out) *crossings_out = std::move(raw);
  return true;
}

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(ErrorKind::kDegenerate, "crossing parameter exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace

PLCycle merge_collinear(std::span<const Point3> points) {
  PLCycle c(points.begin(), points.end());
  bool changed = true;
  while (changed && c.size() >= 3) {
    changed = false;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point3& a = c[(i + n - 1) % n];
      const Point3& b = c[i];
      const Point3& d = c[(i + 1) % n];
      // b strictly between a and d on a line.
      if (collinear3(a, b, d) && dot(b - a, d - b) > 0) {
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return c;
}

void validate_cycle(const PLCycle& c) {
  const std::size_t n = c.size();
  if (n < 3) fail(ErrorKind::kInvalidArgument, "cycle needs at least three points");
  {
    auto sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorKind::kInvalidArgument, "cycle repeats a point");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (collinear3(c[(i + n - 1) % n], c[i], c[(i + 1) % n]))
      fail(ErrorKind::kInvalidArgument, "segments at point " + std::to_string(i) + " are collinear");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_meet_3d(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n]))
        fail(ErrorKind::kInvalidArgument,
             "segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
    }
}

PLCycle realize_cycle(std::span<const Point3> vertex_coords) {
  auto c = merge_collinear(vertex_coords);
  validate_cycle(c);
  return c;
}

bool is_generic_direction(const PLCycle& cycle, const Point3& d, std::string* why) {
  return generic_impl(cycle, d, why, nullptr);
}

Point3 choose_generic_direction(const PLCycle& cycle, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5DEECE66Dull);
  for (int attempt = 0; attempt < 4096; ++attempt) {
    const std::int64_t r = 8LL << (attempt / 256);
    auto draw = [&] { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(2 * r + 1)) - r; };
    Point3 d{draw(), draw(), draw()};
    if (is_generic_direction(cycle, d)) return d;
  }
  fail(ErrorKind::kDegenerate, "no generic projection direction found");
}

KnotDiagram project(const PLCycle& cycle, const Point3& direction) {
  std::vector<RawCrossing> raw;
  std::string why;
  if (!generic_impl(cycle, direction, &why, &raw)) fail(ErrorKind::kDegenerate, "projection is not generic: " + why);
  const std::size_t n = cycle.size();
  auto pr = make_projection(cycle, direction);
  KnotDiagram kd;
  kd.direction = direction;
  kd.u = pr.u;
  kd.w = pr.w;

  struct Event {
    std::uint32_t segment;
    i128 tn, den;
    std::uint32_t crossing;
    bool over;
  };
  std::vector<Event> events;
  for (const auto& x : raw) {
    const Point3 ri = cycle[(x.i + 1) % n] - cycle[x.i];
    const Point3 rj = cycle[(x.j + 1) % n] - cycle[x.j];
    const i128 depth_i = static_cast<i128>(dot(cycle[x.i], direction)) * x.den + x.ti * dot(ri, direction);
    const i128 depth_j = static_cast<i128>(dot(cycle[x.j], direction)) * x.den + x.tj * dot(rj, direction);
    if (depth_i == depth_j) fail(ErrorKind::kDegenerate, "cycle meets itself at a crossing");
    const bool i_over = depth_i > depth_j;
    Crossing cr;
    cr.over_segment = i_over ? x.i : x.j;
    cr.under_segment = i_over ? x.j : x.i;
    cr.over_param = {narrow(i_over ? x.ti : x.tj), narrow(x.den)};
    cr.under_param = {narrow(i_over ? x.tj : x.ti), narrow(x.den)};
    auto dir2 = [&](std::uint32_t s) {
      return P2{pr.pts[(s + 1) % n].x - pr.pts[s].x, pr.pts[(s + 1) % n].y - pr.pts[s].y};
    };
    cr.sign = sgn(cross2v(dir2(cr.over_segment), dir2(cr.under_segment)));
    const auto id = static_cast<std::uint32_t>(kd.crossings.size());
    kd.crossings.push_back(cr);
    events.push_back({x.i, x.ti, x.den, id, i_over});
    events.push_back({x.j, x.tj, x.den, id, !i_over});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.segment != b.segment) return a.segment < b.segment;
    return a.tn * b.den < b.tn * a.den;
  });

  const auto m = static_cast<std::uint32_t>(kd.crossings.size());
  kd.arc_count = m == 0 ? 1 : m;
  std::uint32_t counter = 0;
  for (const auto& e : events) {
    kd.gauss.push_back({e.crossing, e.over});
    auto& cr = kd.crossings[e.crossing];
    if (e.over) {
      cr.over_arc = counter % kd.arc_count;
    } else {
      cr.under_in_arc = counter % kd.arc_count;
      ++counter;
      cr.under_out_arc = counter % kd.arc_count;
    }
  }
  return kd;
}

std::string KnotDiagram::gauss_code() const {
  std::map<std::uint32_t, std::uint32_t> label;
  std::ostringstream os;
  for (std::size_t k = 0; k < gauss.size(); ++k) {
    const auto& g = gauss[k];
    auto [it, fresh] = label.emplace(g.crossing, static_cast<std::uint32_t>(label.size() + 1));
    if (k) os << ' ';
    os << (g.over ? 'O' : 'U') << it->second << (crossings[g.crossing].sign > 0 ? '+' : '-');
  }
  return os.str();
}

bool is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t k = 3; static_cast<std::uint64_t>(k) * k <= p; k += 2)
    if (p % k == 0) return false;
  return true;
}

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// Rank over F_p of sparse rows.
std::uint32_t rank_mod_p(std::vector<std::map<std::uint32_t, std::uint64_t>> rows, std::uint64_t p) {
  std::map<std::uint32_t, std::map<std::uint32_t, std::uint64_t>> pivots;
  for (auto& row : rows) {
    for (auto it = row.begin(); it != row.end();) it = it->second % p ? std::next(it) : row.erase(it);
    while (!row.empty()) {
      const auto [lead, coef] = *row.begin();
      auto pv = pivots.find(lead);
      if (pv == pivots.end()) {
        const auto inv = pow_mod(coef, p - 2, p);
        for (auto& [c, v] : row) v = v * inv % p;
        pivots.emplace(lead, std::move(row));
        break;
      }
      for (const auto& [c, v] : pv->second) {
        auto& slot = row[c];
        slot = (slot + (p - coef) * v) % p;
        if (slot == 0) row.erase(c);
      }
    }
  }
  return static_cast<std::uint32_t>(pivots.size());
}

}  // namespace

FoxResult fox_colorings(const KnotDiagram& diagram, std::uint32_t p) {
  if (!is_odd_prime(p)) fail(ErrorKind::kInvalidArgument, "Fox colourings need an odd prime, got " + std::to_string(p));
  std::vector<std::map<std::uint32_t, std::uint64_t>> rows;
  for (const auto& c : diagram.crossings) {
    std::map<std::uint32_t, std::uint64_t> row;
    row[c.over_arc] = (row[c.over_arc] + 2) % p;
    row[c.under_in_arc] = (row[c.under_in_arc] + p - 1) % p;
    row[c.under_out_arc] = (row[c.under_out_arc] + p - 1) % p;
    rows.push_back(std::move(row));
  }
  FoxResult r;
  r.p = p;
  r.kernel_dimension = diagram.arc_count - rank_mod_p(std::move(rows), p);
  boost::multiprecision::cpp_int count = 1;
  for (std::uint32_t k = 0; k < r.kernel_dimension; ++k) count *= p;
  r.count = count.str();
  return r;
}

KnotCertificate is_certified_nontrivial(const PLCycle& cycle, std::uint64_t seed, std::uint32_t p) {
  validate_cycle(cycle);
  KnotCertificate cert;
  cert.direction = choose_generic_direction(cycle, seed);
  auto kd = project(cycle, cert.direction);
  cert.segments = cycle.size();
  cert.crossings = kd.crossings.size();
  cert.arcs = kd.arc_count;
  cert.fox = fox_colorings(kd, p);
  cert.gauss_code = kd.gauss_code();
  cert.verdict = cert.fox.kernel_dimension > 1 ? KnotVerdict::kNontrivial : KnotVerdict::kUnknown;
  return cert;
}

}  // namespace entangle
