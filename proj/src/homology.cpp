#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "entangle/complex.hpp"
#include "entangle/error.hpp"

namespace entangle {

namespace {

using Entry = std::pair<std::uint32_t, std::int64_t>;
using Column = std::vector<Entry>;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::kInternal, "rank elimination overflowed 64 bits");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::kInternal, "rank elimination overflowed 64 bits");
  return r;
}

// col <- pa * col - ca * piv, where pa and ca are the lead coefficients.
Column eliminate(const Column& col, const Column& piv) {
  const std::int64_t ca = col.back().second;
  const std::int64_t pa = piv.back().second;
  const std::int64_t g = std::gcd(ca, pa);
  const std::int64_t sc = pa / g, sp = ca / g;
  Column out;
  out.reserve(col.size() + piv.size());
  std::size_t i = 0, k = 0;
  while (i < col.size() || k < piv.size()) {
    if (k == piv.size() || (i < col.size() && col[i].first < piv[k].first)) {
      out.push_back({col[i].first, checked_mul(sc, col[i].second)});
      ++i;
    } else if (i == col.size() || piv[k].first < col[i].first) {
      out.push_back({piv[k].first, checked_sub(0, checked_mul(sp, piv[k].second))});
      ++k;
    } else {
      auto v = checked_sub(checked_mul(sc, col[i].second), checked_mul(sp, piv[k].second));
      if (v != 0) out.push_back({col[i].first, v});
      ++i;
      ++k;
    }
  }
  std::int64_t content = 0;
  for (const auto& [r, v] : out) content = std::gcd(content, v);
  if (content > 1)
    for (auto& [r, v] : out) v /= content;
  return out;
}

}  // namespace

std::size_t rational_rank(std::vector<Column> columns) {
  std::unordered_map<std::uint32_t, std::size_t> pivot_of_row;
  std::vector<Column> reduced;
  reduced.reserve(columns.size());
  for (auto& col : columns) {
    std::sort(col.begin(), col.end());
    // Merge duplicate rows and drop zeros.
    Column merged;
    for (const auto& [r, v] : col) {
      if (!merged.empty() && merged.back().first == r)
        merged.back().second += v;
      else
        merged.push_back({r, v});
      if (merged.back().second == 0) merged.pop_back();
    }
    col = std::move(merged);
    while (!col.empty()) {
      auto it = pivot_of_row.find(col.back().first);
      if (it == pivot_of_row.end()) break;
      col = eliminate(col, reduced[it->second]);
    }
    if (col.empty()) continue;
    pivot_of_row.emplace(col.back().first, reduced.size());
    reduced.push_back(std::move(col));
  }
  return reduced.size();
}

H1Certificate h1_rank(const TwoComplex& c) {
  std::vector<Column> d1;
  d1.reserve(c.edge_count());
  for (const auto& e : c.edges()) {
    Column col;
    if (!e.is_loop()) {
      col.push_back({static_cast<std::uint32_t>(c.vertex_index(e.tail)), -1});
      col.push_back({static_cast<std::uint32_t>(c.vertex_index(e.head)), 1});
    }
    d1.push_back(std::move(col));
  }
  std::vector<Column> d2;
  d2.reserve(c.face_count());
  for (const auto& f : c.faces()) {
    Column col;
    for (const auto& d : f.walk)
      col.push_back({static_cast<std::uint32_t>(c.edge_index(d.edge)), d.forward ? 1 : -1});
    d2.push_back(std::move(col));
  }
  H1Certificate cert;
  cert.boundary1_rank = rational_rank(std::move(d1));
  cert.boundary2_rank = rational_rank(std::move(d2));
  const std::size_t used = cert.boundary1_rank + cert.boundary2_rank;
  if (used > c.edge_count()) fail(ErrorKind::kInternal, "h1_rank: boundary ranks exceed edge count");
  cert.rank = c.edge_count() - used;
  return cert;
}

}  // namespace entangle
