#pragma once

// Discrete search over per-impulse delays at fixed model parameters.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tvs/likelihood.hpp"
#include "tvs/model.hpp"

namespace tvs {

inline constexpr int kDefaultProposalSize = 3;
inline constexpr int kDefaultItersPerImpulse = 200;
inline constexpr double kDefaultTauTailMass = 1e-6;
inline constexpr std::uint64_t kDefaultExhaustiveBudget = 1'000'000;

// Smallest t with PoissonCDF(t; lambda_upper) > 1 - tail_mass, at least 1.
int default_tau_max(double lambda_upper, double tail_mass = kDefaultTauTailMass);

struct SearchConfig {
  // Iterations per block. Unset means iters_per_impulse * block size.
  std::optional<int> n_iters;
  int iters_per_impulse = kDefaultItersPerImpulse;
  // Impulses resampled jointly per proposal; clamped to the block size.
  int proposal_size = kDefaultProposalSize;
  int tau_max = 1;
  std::uint64_t rng_seed = 0;
  // Keep the per-iteration incumbent objective of every block.
  bool record_trace = false;

  void validate() const;
};

// Contiguous run of impulses [first, last) whose effects may interact.
// [start, end] is the time window those effects can reach.
struct Block {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return last - first; }
  friend bool operator==(const Block&, const Block&) = default;
};

// Adjacent impulses land in different blocks iff their position gap exceeds
// tau_max, so no admissible pair of shifts can make their effects coincide.
std::vector<Block> partition_blocks(const ImpulseSet& imp, int tau_max);

struct SearchResult {
  ShiftVector shifts;
  JointLogLik loglik;
  // One entry per block when SearchConfig::record_trace is set: the
  // block-local incumbent objective after initialization and after each
  // iteration.
  std::vector<std::vector<double>> incumbent_traces;
};

// Randomized accept-if-better search. Every impulse starts at round(lambda)
// (clamped), each iteration redraws min(m, block size) distinct impulses from
// the truncated Poisson prior, and a proposal replaces the incumbent only on
// strict improvement. Blocks are searched independently with their own
// random streams, so `threads` never changes the result.
SearchResult search_shifts(const TimeSeries& y, const ImpulseSet& imp, const ModelParams& params,
                           const SearchConfig& cfg, unsigned threads = 1);

// Full enumeration over shifts in [0, tau_max] (and in bounds). Ties go to
// the lexicographically smallest vector. Refuses when the candidate count
// exceeds `budget`.
SearchResult exhaustive_search(const TimeSeries& y, const ImpulseSet& imp,
                               const ModelParams& params, int tau_max,
                               std::uint64_t budget = kDefaultExhaustiveBudget);

}  // namespace tvs
