#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace entangle {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using FaceId = std::uint32_t;

inline constexpr std::uint32_t kNoId = 0xffffffffu;

// Integer lattice point; all geometry in this library is exact.
struct Point3 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  auto operator<=>(const Point3&) const = default;

  Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator*(std::int64_t s) const { return {x * s, y * s, z * s}; }
  Point3 operator-() const { return {-x, -y, -z}; }
  bool is_zero() const { return x == 0 && y == 0 && z == 0; }
};

inline std::int64_t dot(const Point3& a, const Point3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline std::int64_t squared_norm(const Point3& a) { return dot(a, a); }

inline std::int64_t chebyshev_distance(const Point3& a, const Point3& b) {
  auto d = a - b;
  auto ax = d.x < 0 ? -d.x : d.x;
  auto ay = d.y < 0 ? -d.y : d.y;
  auto az = d.z < 0 ? -d.z : d.z;
  return ax > ay ? (ax > az ? ax : az) : (ay > az ? ay : az);
}

inline std::ostream& operator<<(std::ostream& os, const Point3& p) {
  return os << '(' << p.x << ',' << p.y << ',' << p.z << ')';
}

struct Point3Hash {
  std::size_t operator()(const Point3& p) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(p.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(p.z) + 0x165667B19E3779F9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace entangle
