#include "tvs/inner_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tvs/error.hpp"
#include "tvs/parallel.hpp"

namespace tvs {
namespace {

std::mt19937_64 block_engine(std::uint64_t seed, std::size_t block_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block_index),
                    static_cast<std::uint32_t>(block_index >> 32)};
  return std::mt19937_64(seq);
}

// Inverse-CDF sampler for Poisson(lambda) restricted to [0, cap].
class TruncatedPoisson {
 public:
  TruncatedPoisson(double lambda, int tau_max) : cumulative_(static_cast<std::size_t>(tau_max) + 1) {
    const std::vector<double> logpmf = poisson_log_pmf_table(lambda, tau_max);
    const double peak = *std::max_element(logpmf.begin(), logpmf.end());
    double acc = 0.0;
    for (std::size_t t = 0; t < logpmf.size(); ++t) {
      acc += logpmf[t] == kLogZero ? 0.0 : std::exp(logpmf[t] - peak);
      cumulative_[t] = acc;
    }
  }

  template <typename Engine>
  int draw(int cap, Engine& engine) const {
    const double mass = cumulative_[static_cast<std::size_t>(cap)];
    // Every weight in [0, cap] underflowed: the mode lies far above cap and
    // the pmf is increasing there.
    if (mass <= 0.0) return cap;
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(engine) * mass;
    for (int t = 0; t < cap; ++t) {
      if (u < cumulative_[static_cast<std::size_t>(t)]) return t;
    }
    return cap;
  }

 private:
  std::vector<double> cumulative_;
};

struct Change {
  std::size_t local = 0;
  int old_shift = 0;
  int new_shift = 0;
};

class BlockSearcher {
 public:
  BlockSearcher(const TimeSeries& y, const ImpulseSet& imp, const Block& block,
                const ModelParams& params, int tau_max, const std::vector<double>& logpmf,
                const TruncatedPoisson& sampler)
      : y_(y),
        block_(block),
        params_(params),
        logpmf_(logpmf),
        sampler_(sampler),
        inv_two_var_(1.0 / (2.0 * params.sigma_eps * params.sigma_eps)),
        tau_max_(tau_max) {
    const std::size_t k = block.size();
    positions_.resize(k);
    amplitudes_.resize(k);
    caps_.resize(k);
    shifts_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = block.first + i;
      positions_[i] = imp[j].position;
      amplitudes_[i] = imp[j].amplitude;
      caps_[i] = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(tau_max), imp.max_shift(j)));
    }

    const int init = static_cast<int>(std::lround(params.lambda_tau));
    for (std::size_t i = 0; i < k; ++i) shifts_[i] = std::min(init, caps_[i]);

    superposition_.assign(block.end - block.start + 1, 0.0);
    for (std::size_t i = 0; i < k; ++i) superposition_[time_of(i, shifts_[i]) - block.start] += amplitudes_[i];

    objective_ = 0.0;
    for (std::size_t t = block.start; t <= block.end; ++t) {
      objective_ -= squared_residual(t, superposition_[t - block.start]) * inv_two_var_;
    }
    for (std::size_t i = 0; i < k; ++i) objective_ = log_add_terms(objective_, logpmf_[static_cast<std::size_t>(shifts_[i])]);
  }

  void run(int n_iters, int proposal_size, std::mt19937_64& engine, std::vector<double>* trace) {
    const std::size_t k = shifts_.size();
    const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(proposal_size), k);
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Change> changes;
    changes.reserve(m);

    if (trace != nullptr) {
      trace->reserve(static_cast<std::size_t>(n_iters) + 1);
      trace->push_back(objective_);
    }

    for (int iter = 0; iter < n_iters; ++iter) {
      changes.clear();
      for (std::size_t s = 0; s < m; ++s) {
        const std::size_t pick = std::uniform_int_distribution<std::size_t>(s, k - 1)(engine);
        std::swap(order[s], order[pick]);
        const std::size_t i = order[s];
        const int proposed = sampler_.draw(caps_[i], engine);
        if (proposed != shifts_[i]) changes.push_back({i, shifts_[i], proposed});
      }
      if (!changes.empty()) try_proposal(changes);
      if (trace != nullptr) trace->push_back(objective_);
    }
  }

  const std::vector<int>& shifts() const noexcept { return shifts_; }

 private:
  std::size_t time_of(std::size_t i, int shift) const noexcept {
    return positions_[i] + static_cast<std::size_t>(shift);
  }

  double squared_residual(std::size_t t, double u) const noexcept {
    const double r = y_[t] - (params_.beta * u + params_.intercept);
    return r * r;
  }

  // Exact superposition at time t under the current shifts.
  double superposition_at(std::size_t t) const noexcept {
    const std::size_t lo = t >= static_cast<std::size_t>(tau_max_) ? t - static_cast<std::size_t>(tau_max_) : 0;
    auto first = std::lower_bound(positions_.begin(), positions_.end(), lo);
    double u = 0.0;
    for (auto it = first; it != positions_.end() && *it <= t; ++it) {
      const auto i = static_cast<std::size_t>(it - positions_.begin());
      if (time_of(i, shifts_[i]) == t) u += amplitudes_[i];
    }
    return u;
  }

  void try_proposal(const std::vector<Change>& changes) {
    touched_.clear();
    for (const Change& c : changes) {
      touched_.push_back(time_of(c.local, c.old_shift));
      touched_.push_back(time_of(c.local, c.new_shift));
    }
    std::sort(touched_.begin(), touched_.end());
    touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());

    double delta = 0.0;
    for (const Change& c : changes) {
      delta += logpmf_[static_cast<std::size_t>(c.new_shift)] - logpmf_[static_cast<std::size_t>(c.old_shift)];
    }

    for (const Change& c : changes) shifts_[c.local] = c.new_shift;
    proposed_.resize(touched_.size());
    double sse_delta = 0.0;
    for (std::size_t s = 0; s < touched_.size(); ++s) {
      const std::size_t t = touched_[s];
      proposed_[s] = superposition_at(t);
      sse_delta += squared_residual(t, proposed_[s]) - squared_residual(t, superposition_[t - block_.start]);
    }
    delta -= sse_delta * inv_two_var_;

    if (delta > 0.0) {
      for (std::size_t s = 0; s < touched_.size(); ++s) superposition_[touched_[s] - block_.start] = proposed_[s];
      objective_ += delta;
    } else {
      for (const Change& c : changes) shifts_[c.local] = c.old_shift;
    }
  }

  const TimeSeries& y_;
  const Block& block_;
  const ModelParams& params_;
  const std::vector<double>& logpmf_;
  const TruncatedPoisson& sampler_;
  double inv_two_var_;
  int tau_max_;

  std::vector<std::size_t> positions_;
  std::vector<double> amplitudes_;
  std::vector<int> caps_;
  std::vector<int> shifts_;
  std::vector<double> superposition_;
  double objective_ = 0.0;

  std::vector<std::size_t> touched_;
  std::vector<double> proposed_;
};

}  // namespace

int default_tau_max(double lambda_upper, double tail_mass) {
  if (!(lambda_upper >= 0.0) || !std::isfinite(lambda_upper)) {
    throw Error(ErrorKind::kInvalidParameter, "lambda upper bound must be nonnegative");
  }
  if (!(tail_mass > 0.0 && tail_mass < 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "tail mass must lie in (0, 1)");
  }
  double cdf = 0.0;
  int t = 0;
  for (;; ++t) {
    const double logp = poisson_log_pmf(t, lambda_upper);
    if (logp != kLogZero) cdf += std::exp(logp);
    if (cdf > 1.0 - tail_mass) break;
  }
  return std::max(t, 1);
}

void SearchConfig::validate() const {
  if (n_iters && *n_iters <= 0) {
    throw Error(ErrorKind::kConfig, "n_iters must be positive");
  }
  if (iters_per_impulse <= 0) {
    throw Error(ErrorKind::kConfig, "iters_per_impulse must be positive");
  }
  if (proposal_size <= 0) {
    throw Error(ErrorKind::kConfig, "proposal_size must be positive");
  }
  if (tau_max < 1) {
    throw Error(ErrorKind::kConfig, "tau_max must be at least 1");
  }
}

std::vector<Block> partition_blocks(const ImpulseSet& imp, int tau_max) {
  std::vector<Block> blocks;
  const std::size_t cap = static_cast<std::size_t>(std::max(tau_max, 0));
  const std::size_t last_index = imp.source_length() - 1;
  for (std::size_t j = 0; j < imp.size(); ++j) {
    if (blocks.empty() || imp[j].position - imp[j - 1].position > cap) {
      blocks.push_back({j, j + 1, imp[j].position, 0});
    } else {
      blocks.back().last = j + 1;
    }
    blocks.back().end = std::min(imp[j].position + cap, last_index);
  }
  return blocks;
}

SearchResult search_shifts(const TimeSeries& y, const ImpulseSet& imp, const ModelParams& params,
                           const SearchConfig& cfg, unsigned threads) {
  params.validate();
  cfg.validate();
  if (imp.empty()) {
    throw Error(ErrorKind::kInvalidInput, "shift search needs at least one impulse");
  }
  if (y.size() != imp.source_length()) {
    throw Error(ErrorKind::kInvalidInput, "output length does not match the input series");
  }

  const std::vector<Block> blocks = partition_blocks(imp, cfg.tau_max);
  const std::vector<double> logpmf = poisson_log_pmf_table(params.lambda_tau, cfg.tau_max);
  const TruncatedPoisson sampler(params.lambda_tau, cfg.tau_max);

  std::vector<int> shifts(imp.size(), 0);
  SearchResult result;
  if (cfg.record_trace) result.incumbent_traces.resize(blocks.size());

  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    const Block& block = blocks[b];
    BlockSearcher searcher(y, imp, block, params, cfg.tau_max, logpmf, sampler);
    const int iters = cfg.n_iters.value_or(cfg.iters_per_impulse * static_cast<int>(block.size()));
    std::mt19937_64 engine = block_engine(cfg.rng_seed, b);
    searcher.run(iters, cfg.proposal_size, engine,
                 cfg.record_trace ? &result.incumbent_traces[b] : nullptr);
    std::copy(searcher.shifts().begin(), searcher.shifts().end(),
              shifts.begin() + static_cast<std::ptrdiff_t>(block.first));
  });

  result.shifts = ShiftVector(std::move(shifts));
  result.loglik = joint_loglik(y, imp, result.shifts, params);
  return result;
}

SearchResult exhaustive_search(const TimeSeries& y, const ImpulseSet& imp,
                               const ModelParams& params, int tau_max, std::uint64_t budget) {
  params.validate();
  if (tau_max < 0) {
    throw Error(ErrorKind::kInvalidParameter, "tau_max must be nonnegative");
  }
  const std::size_t k = imp.size();
  std::vector<int> caps(k);
  std::uint64_t combos = 1;
  for (std::size_t j = 0; j < k; ++j) {
    caps[j] = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(tau_max), imp.max_shift(j)));
    combos *= static_cast<std::uint64_t>(caps[j]) + 1;
    if (combos > budget) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "exhaustive search over " + std::to_string(k) + " impulses exceeds " +
                      std::to_string(budget) + " candidates");
    }
  }

  std::vector<int> current(k, 0);
  SearchResult best;
  bool have_best = false;
  for (;;) {
    ShiftVector candidate(current);
    const JointLogLik ll = joint_loglik(y, imp, candidate, params);
    if (!have_best || ll.total > best.loglik.total) {
      best.shifts = std::move(candidate);
      best.loglik = ll;
      have_best = true;
    }
    // Odometer with the last impulse fastest: lexicographic order.
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (current[pos] < caps[pos]) {
        ++current[pos];
        break;
      }
      current[pos] = 0;
      if (pos == 0) return best;
    }
    if (k == 0) return best;
  }
}

}  // namespace tvs
