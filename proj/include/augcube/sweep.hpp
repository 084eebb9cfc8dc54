#pragma once

// Runs construct over many terminal sets and tallies the outcome.
//
// Work is split across threads by an atomic cursor; each slot of the result
// vector is written by exactly one worker, and the tally is folded in input
// order afterwards, so the report does not depend on the thread count.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "augcube/construct.hpp"
#include "augcube/family.hpp"
#include "augcube/topology.hpp"

namespace augcube {

using Triple = std::array<Vertex, 3>;

/// All C(2^n, 3) triples in lexicographic order.
std::vector<Triple> all_triples(const AugmentedCube& g);

/// `count` distinct triples drawn with a 64-bit Mersenne twister seeded by
/// `seed`, in draw order. Capped at the number of triples that exist.
std::vector<Triple> sample_triples(const AugmentedCube& g, std::uint64_t count, std::uint64_t seed);

struct SweepFailure {
  Triple terminals;
  std::string message;
};

struct SweepResult {
  int n = 0;
  std::uint64_t triples = 0;
  std::map<CaseTag, std::uint64_t> tag_counts;
  std::uint64_t fallback_count = 0;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  /// Families the independent verifier rejected, or that came out short.
  std::uint64_t verification_failures = 0;
  /// construct raised (AmbiguityError with fallback disabled, or a bug).
  std::uint64_t construct_errors = 0;
  /// First few failures, in input order.
  std::vector<SweepFailure> failures;

  int expected_size() const { return 2 * n - 3; }
  double fallback_fraction() const;
  bool clean() const;
};

struct SweepOptions {
  ConstructOptions construct;
  unsigned jobs = 1;
  std::size_t max_reported_failures = 10;
};

SweepResult run_sweep(const AugmentedCube& g, const std::vector<Triple>& triples, const SweepOptions& options = {});

nlohmann::json sweep_to_json(const SweepResult& r);
std::string sweep_to_text(const SweepResult& r);

}  // namespace augcube
