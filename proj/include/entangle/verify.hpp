#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "entangle/construction.hpp"
#include "entangle/knots.hpp"

namespace entangle {

struct Scope {
  bool full = false;
  std::size_t count = 0;  // sampled
  std::uint64_t seed = 0;

  static Scope all() { return {true, 0, 0}; }
  static Scope sampled(std::size_t k, std::uint64_t seed) { return {false, k, seed}; }
  // "full" or "sampled:K"; throws kInvalidArgument.
  static Scope parse(const std::string& text, std::uint64_t seed);
  std::string describe() const;
};

// Name prefix of checks run on deliberately corrupted inputs.
inline constexpr const char* kInjectedPrefix = "injected/";

struct CheckRecord {
  std::string name;
  std::string scope;
  bool passed = false;
  double seconds = 0;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  // Null when passed.
  nlohmann::ordered_json counterexample;

  bool injected() const;
  bool operator==(const CheckRecord&) const = default;
};

struct VerificationReport {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  bool passed() const;
  // Every injected check failed, i.e. every corruption was caught.
  bool injected_all_detected() const;
  nlohmann::ordered_json to_json() const;
  bool operator==(const VerificationReport&) const = default;
};

// Non-tree edges of C' in ascending order, or a seeded sample of them.
std::vector<EdgeId> select_edges(const Pipeline& p, const Scope& scope);

// Acyclic, spanning, exactly two non-diagonal edges.
CheckRecord verify_tree(const Pipeline& p, std::span<const EdgeId> tree_edges);

// Every in-scope fundamental cycle contains the overhand path the slab rule names.
CheckRecord verify_routing(const Pipeline& p, const TreeIndex& tree, const Scope& scope);

// The cycle through `e` as a polygon in the canonical embedding.
PLCycle cycle_polygon(const Pipeline& p, const FundamentalCycle& fc);

// Every cycle must be certified nontrivial.
CheckRecord verify_knotted_cycles(const std::string& name, const std::string& scope,
                                  const std::vector<std::pair<EdgeId, PLCycle>>& cycles, std::uint64_t seed);
CheckRecord verify_entangled_canonical(const Pipeline& p, const Scope& scope);

// Contracts the middle edge of a triple of C' edges and compares the link with G14.
CheckRecord verify_G14(const Pipeline& p, Side side);
CheckRecord verify_G14_at(const TwoComplex& c, const std::array<EdgeId, 3>& triple, const std::string& label);

// Contracts a cycle in the order: all but the triple, then e2, e1, e3.
CheckRecord verify_cycle_contraction(const TwoComplex& c, std::span<const EdgeId> cycle_edges,
                                     const std::array<EdgeId, 3>& triple, const std::string& label);
CheckRecord verify_cycle_contraction_nonplanar(const Pipeline& p, const Scope& scope);

// C''/e'' link nonplanarity for in-scope edges, plus planarity of C'' itself
// under the rotation system inherited from the embedding.
CheckRecord verify_Cpp_contractions(const Pipeline& p, const Scope& scope);

// Random black forests on small boxes keep the white graph minus crossings
// connected; the centre graph is connected.
CheckRecord verify_small_lemmas(const Pipeline& p, std::int64_t max_size, std::size_t trials, std::uint64_t seed);

struct VerifyOptions {
  // When unset: routing over every edge, sampled knot and contraction checks.
  std::optional<Scope> scope;
  std::uint64_t sample_seed = 0;
  std::size_t knot_samples = 100;
  std::size_t contraction_samples = 10;
  std::size_t lemma_trials = 1000;
  bool inject_negative = false;
  // Subset of check_names(); empty runs every check.
  std::vector<std::string> checks;
  // Run the selected checks on separate threads; report order is unchanged.
  bool parallel = true;
};

// tree, routing, knots, g14, contraction, cpp, lemmas
const std::vector<std::string>& check_names();

// Runs the selected checks; throws kInvalidArgument for an unknown check name.
// With inject_negative, also runs each check on a corrupted input; those
// records fail (so the report fails) unless the corruption goes undetected.
VerificationReport run_verification(const Pipeline& p, const VerifyOptions& options);

}  // namespace entangle
