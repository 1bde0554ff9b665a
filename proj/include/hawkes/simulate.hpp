#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hawkes/lattice.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/temporal.hpp"

namespace hawkes {

// Walker/Vose alias table for O(1) sampling from a discrete distribution.
class AliasTable {
  public:
    explicit AliasTable(const std::vector<double>& weights);
    int sample(CounterRng& rng) const;
    std::size_t size() const { return prob_.size(); }

  private:
    std::vector<double> prob_;
    std::vector<int> alias_;
};

struct HawkesConfig {
    LatticeKernel lattice;
    TemporalKernel kernel;
    std::vector<double> mu;
    double horizon = 0;
    std::uint64_t seed = 0;
    std::uint64_t explosion_guard = 100000000ULL; // max events per realization

    HawkesConfig(LatticeKernel lat, TemporalKernel ker, std::vector<double> baseline,
                 double T, std::uint64_t seed_);
};

// Per-site sorted event times of one realization.
struct EventLog {
    std::vector<std::vector<double>> events; // index: site array position 0..2L
    std::size_t total() const;
    // Z_t^i: events at site index i with time <= t
    std::size_t count_at(int site_idx, double t) const;
};

// Exact cluster (immigration-birth) construction. Deterministic for a given
// (seed, replica): every cluster owns a counter-based stream keyed by
// (seed, replica, root site, immigrant index), so thread scheduling cannot
// change the result.
EventLog simulate_cluster(const HawkesConfig& cfg, std::uint64_t replica = 0);

// Ogata thinning from a piecewise-constant intensity bound; the independent
// oracle for simulate_cluster. Exact decay recursion for Exponential kernels,
// direct history sums otherwise (small windows).
EventLog simulate_thinning(const HawkesConfig& cfg, std::uint64_t replica = 0);

// Event counts (per site) at each observation time, without materializing the
// log; this is what the Monte-Carlo harness consumes.
std::vector<std::vector<std::int64_t>> simulate_cluster_counts(
    const HawkesConfig& cfg, std::uint64_t replica, const std::vector<double>& obs_times);

// lambda^i(t) on a grid, reconstructed from a logged realization.
std::vector<std::vector<double>> intensity_trace(const HawkesConfig& cfg, const EventLog& log,
                                                 const std::vector<double>& t_grid);

} // namespace hawkes
