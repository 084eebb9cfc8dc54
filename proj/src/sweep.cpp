#include "augcube/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "augcube/errors.hpp"
#include "augcube/verify.hpp"

namespace augcube {

namespace {

struct Outcome {
  bool ok = false;
  CaseTag tag = CaseTag::FallbackSearch;
  bool fallback = false;
  std::size_t size = 0;
  bool rejected = false;
  std::string message;
};

Outcome run_one(const AugmentedCube& g, const Triple& s, const ConstructOptions& options) {
  Outcome out;
  try {
    const auto family = construct(g, s, options);
    out.tag = family.tag;
    out.fallback = family.fallback_used();
    out.size = family.size();
    const auto report = verify_family(g, family);
    if (!report.accepted()) {
      out.rejected = true;
      out.message = std::string(to_string(report.violations.front().kind)) + ": " + report.violations.front().detail;
    } else if (static_cast<int>(out.size) != 2 * g.dim() - 3) {
      out.rejected = true;
      out.message = "family has " + std::to_string(out.size) + " trees";
    } else {
      out.ok = true;
    }
  } catch (const AmbiguityError& e) {
    out.message = e.what();
  } catch (const InternalError& e) {
    out.message = e.what();
  }
  return out;
}

}  // namespace

std::vector<Triple> all_triples(const AugmentedCube& g) {
  std::vector<Triple> out;
  const auto count = g.vertex_count();
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = a + 1; b < count; ++b)
      for (std::uint64_t c = b + 1; c < count; ++c) out.push_back({g.vertex(a), g.vertex(b), g.vertex(c)});
  return out;
}

std::vector<Triple> sample_triples(const AugmentedCube& g, std::uint64_t count, std::uint64_t seed) {
  const auto v = g.vertex_count();
  const auto total = v < 3 ? 0 : v * (v - 1) / 2 * (v - 2) / 3;
  count = std::min(count, total);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, v - 1);
  std::set<std::array<std::uint64_t, 3>> seen;
  std::vector<Triple> out;
  while (out.size() < count) {
    std::array<std::uint64_t, 3> t{pick(rng), pick(rng), pick(rng)};
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) continue;
    if (!seen.insert(t).second) continue;
    out.push_back({g.vertex(t[0]), g.vertex(t[1]), g.vertex(t[2])});
  }
  return out;
}

double SweepResult::fallback_fraction() const {
  return triples == 0 ? 0.0 : static_cast<double>(fallback_count) / static_cast<double>(triples);
}

bool SweepResult::clean() const {
  return verification_failures == 0 && construct_errors == 0 &&
         (triples == 0 || (min_size == static_cast<std::size_t>(expected_size()) && max_size == min_size));
}

SweepResult run_sweep(const AugmentedCube& g, const std::vector<Triple>& triples, const SweepOptions& options) {
  std::vector<Outcome> outcomes(triples.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < triples.size(); i = cursor++) {
      outcomes[i] = run_one(g, triples[i], options.construct);
    }
  };
  const unsigned jobs = std::max(1U, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  SweepResult r;
  r.n = g.dim();
  r.triples = triples.size();
  bool first = true;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.ok) {
      (o.rejected ? r.verification_failures : r.construct_errors)++;
      if (r.failures.size() < options.max_reported_failures) r.failures.push_back({triples[i], o.message});
      if (!o.rejected) continue;
    }
    ++r.tag_counts[o.tag];
    if (o.fallback) ++r.fallback_count;
    r.min_size = first ? o.size : std::min(r.min_size, o.size);
    r.max_size = first ? o.size : std::max(r.max_size, o.size);
    first = false;
  }
  return r;
}

nlohmann::json sweep_to_json(const SweepResult& r) {
  nlohmann::json tags = nlohmann::json::object();
  for (const auto& [tag, count] : r.tag_counts) tags[std::string(to_string(tag))] = count;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"s", {f.terminals[0].to_string(), f.terminals[1].to_string(), f.terminals[2].to_string()}},
                        {"message", f.message}});
  }
  return {{"n", r.n},
          {"triples", r.triples},
          {"expected_size", r.expected_size()},
          {"min_size", r.min_size},
          {"max_size", r.max_size},
          {"case_counts", tags},
          {"fallback_count", r.fallback_count},
          {"fallback_fraction", r.fallback_fraction()},
          {"verification_failures", r.verification_failures},
          {"construct_errors", r.construct_errors},
          {"failures", failures}};
}

std::string sweep_to_text(const SweepResult& r) {
  std::ostringstream out;
  out << "AQ_" << r.n << ": " << r.triples << " triples, expected family size " << r.expected_size() << "\n";
  out << "family size: min " << r.min_size << ", max " << r.max_size << "\n";
  out << "case counts:\n";
  for (const auto& [tag, count] : r.tag_counts) {
    out << "  " << std::left << std::setw(16) << to_string(tag) << count << "\n";
  }
  out << "fallback: " << r.fallback_count << " (" << std::fixed << std::setprecision(4) << r.fallback_fraction()
      << ")\n";
  out << "verification failures: " << r.verification_failures << "\n";
  out << "construct errors: " << r.construct_errors << "\n";
  for (const auto& f : r.failures) {
    out << "  {" << f.terminals[0].to_string() << "," << f.terminals[1].to_string() << ","
        << f.terminals[2].to_string() << "}: " << f.message << "\n";
  }
  return out.str();
}

}  // namespace augcube
