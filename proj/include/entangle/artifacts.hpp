#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "entangle/serialize.hpp"

namespace entangle {

struct Formats {
  bool off = false, obj = false, dot = false, json = false;

  // Comma-separated subset of off, obj, dot, json. Throws kInvalidArgument.
  static Formats parse(const std::string& list);
};

// complex.json (cuboid schema), complex.off, complex.obj, and the link of the
// box's central vertex as link.dot. Returns the paths written.
std::vector<std::filesystem::path> write_generate(std::int64_t n, const std::filesystem::path& dir,
                                                  const Formats& formats);

// spine.json, tree.json, cprime.json and cdoubleprime.json always; with off/obj
// the spine polyline, the tree as segments and the C' mesh; with dot the two
// links after contracting the middle edge of each reserved triple.
std::vector<std::filesystem::path> write_build(const Pipeline& p, const std::filesystem::path& dir,
                                               const Formats& formats);

// Certificate of the fundamental cycle of a non-tree edge of C', one entry per
// prime. Throws kNotFound for an unknown edge, kInvalidArgument for a tree edge
// or a modulus that is not an odd prime.
Json knot_report(const Pipeline& p, EdgeId edge, const std::vector<std::uint32_t>& primes);

}  // namespace entangle
