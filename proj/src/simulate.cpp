#include "hawkes/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "hawkes/errors.hpp"

namespace hawkes {

AliasTable::AliasTable(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::domain_error("AliasTable: empty weights");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w)) throw std::domain_error("AliasTable: bad weight");
        total += w;
    }
    if (!(total > 0.0)) throw std::domain_error("AliasTable: all weights zero");

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n) / total;

    // index-ordered work lists keep the construction deterministic
    std::vector<int> small, large;
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));

    while (!small.empty() && !large.empty()) {
        const int s = small.back(); small.pop_back();
        const int l = large.back(); large.pop_back();
        prob_[static_cast<std::size_t>(s)] = scaled[static_cast<std::size_t>(s)];
        alias_[static_cast<std::size_t>(s)] = l;
        scaled[static_cast<std::size_t>(l)] = scaled[static_cast<std::size_t>(l)] + scaled[static_cast<std::size_t>(s)] - 1.0;
        (scaled[static_cast<std::size_t>(l)] < 1.0 ? small : large).push_back(l);
    }
    for (int i : large) prob_[static_cast<std::size_t>(i)] = 1.0;
    for (int i : small) prob_[static_cast<std::size_t>(i)] = 1.0; // numerical leftovers

    // a zero-weight outcome must never be emitted, even as an alias target
    for (std::size_t i = 0; i < n; ++i)
        if (weights[i] == 0.0) prob_[i] = 0.0;
}

int AliasTable::sample(CounterRng& rng) const {
    const double u = rng.uniform() * static_cast<double>(prob_.size());
    std::size_t i = static_cast<std::size_t>(u);
    if (i >= prob_.size()) i = prob_.size() - 1;
    const double frac = u - static_cast<double>(i);
    return frac < prob_[i] ? static_cast<int>(i) : alias_[i];
}

HawkesConfig::HawkesConfig(LatticeKernel lat, TemporalKernel ker, std::vector<double> baseline,
                           double T, std::uint64_t seed_)
    : lattice(std::move(lat)), kernel(std::move(ker)), mu(std::move(baseline)), horizon(T),
      seed(seed_) {
    if (mu.size() != static_cast<std::size_t>(lattice.size()))
        throw std::domain_error("HawkesConfig: mu length must be 2L+1");
    for (double v : mu)
        if (v < 0.0 || !std::isfinite(v))
            throw std::domain_error("HawkesConfig: mu must be nonnegative and finite");
    if (!(horizon > 0.0)) throw std::domain_error("HawkesConfig: horizon must be positive");
}

std::size_t EventLog::total() const {
    std::size_t n = 0;
    for (const auto& v : events) n += v.size();
    return n;
}

std::size_t EventLog::count_at(int site_idx, double t) const {
    const auto& v = events[static_cast<std::size_t>(site_idx)];
    return static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), t) - v.begin());
}

namespace {

constexpr std::uint64_t kImmigrantTag = 0x1001;
constexpr std::uint64_t kClusterTag = 0x2002;
constexpr std::uint64_t kThinningTag = 0x3003;

// Exact conditional sampling of the child delay: density phi / int_0^W phi
// restricted to [0, W]. Closed forms for Exponential and TruncatedPowerTime;
// the Tabulated family is sampled exactly from its own interpolant (per-cell
// quadratic cumulative, inverted in closed form).
struct DelaySampler {
    const TemporalKernel& k;
    std::vector<double> cum; // Tabulated: cumulative at the grid nodes

    explicit DelaySampler(const TemporalKernel& ker) : k(ker) {
        if (k.family() == KernelFamily::Tabulated) {
            const auto& g = k.tab_grid();
            const auto& v = k.tab_values();
            cum.assign(g.size(), 0.0);
            for (std::size_t i = 1; i < g.size(); ++i)
                cum[i] = cum[i - 1] + 0.5 * (v[i] + v[i - 1]) * (g[i] - g[i - 1]);
        }
    }

    // int_0^W phi, exact per family
    double mass(double W) const {
        switch (k.family()) {
            case KernelFamily::Exponential:
                return k.exp_a() / k.exp_b() * (1.0 - std::exp(-k.exp_b() * W));
            case KernelFamily::TruncatedPowerTime: {
                const double e = std::min(W, k.tp_tcut());
                if (!(e > 0.0)) return 0.0;
                return k.tp_c0() * (1.0 - std::pow(1.0 + e, 1.0 - k.tp_beta())) /
                       (k.tp_beta() - 1.0);
            }
            case KernelFamily::Tabulated: {
                const auto& g = k.tab_grid();
                if (W <= g.front()) return 0.0;
                if (W >= g.back()) return cum.back();
                const auto it = std::upper_bound(g.begin(), g.end(), W);
                const std::size_t hi = static_cast<std::size_t>(it - g.begin());
                const std::size_t lo = hi - 1;
                const double phi_w = k.eval(W);
                return cum[lo] + 0.5 * (k.tab_values()[lo] + phi_w) * (W - g[lo]);
            }
        }
        return 0.0;
    }

    double sample(CounterRng& rng, double W) const {
        const double u = rng.uniform();
        switch (k.family()) {
            case KernelFamily::Exponential: {
                const double b = k.exp_b();
                return -std::log1p(-u * (1.0 - std::exp(-b * W))) / b;
            }
            case KernelFamily::TruncatedPowerTime: {
                // F(x) = c0 (1 - (1+x)^{1-beta}) / (beta-1); invert at u F(W)
                const double beta = k.tp_beta();
                const double target = u * mass(W);
                const double inner = 1.0 - target * (beta - 1.0) / k.tp_c0();
                return std::pow(inner, 1.0 / (1.0 - beta)) - 1.0;
            }
            case KernelFamily::Tabulated: {
                const double target = u * mass(W);
                const auto& g = k.tab_grid();
                const auto& v = k.tab_values();
                // cell search, then invert the quadratic cumulative in the cell
                std::size_t lo = 0;
                {
                    std::size_t hi = cum.size() - 1;
                    while (hi - lo > 1) {
                        const std::size_t mid = (lo + hi) / 2;
                        if (cum[mid] <= target)
                            lo = mid;
                        else
                            hi = mid;
                    }
                }
                const double rhs = target - cum[lo];
                const double dx = g[lo + 1] - g[lo];
                const double slope = (v[lo + 1] - v[lo]) / dx;
                double xi;
                if (std::abs(slope) < 1e-300) {
                    xi = v[lo] > 0.0 ? rhs / v[lo] : 0.0;
                } else {
                    const double disc = v[lo] * v[lo] + 2.0 * slope * rhs;
                    xi = (-v[lo] + std::sqrt(std::max(disc, 0.0))) / slope;
                }
                return std::min(g[lo] + std::max(xi, 0.0), W);
            }
        }
        return 0.0;
    }
};

} // namespace

// The cluster engine feeds events into a sink; EventLog and count-matrix
// front ends share it.
template <typename Sink>
static void run_cluster_engine(const HawkesConfig& cfg, std::uint64_t replica, Sink&& sink) {
    const int N = cfg.lattice.size();
    const int L = cfg.lattice.half_width();
    const double T = cfg.horizon;
    const bool circulant = cfg.lattice.window() == Window::Circulant;

    const double pmf_total = std::accumulate(cfg.lattice.pmf().begin(), cfg.lattice.pmf().end(), 0.0);
    // a zero row means offspring can never land anywhere (A(i,i) = 0 always)
    const std::optional<AliasTable> alias =
        pmf_total > 0.0 ? std::optional<AliasTable>(AliasTable(cfg.lattice.pmf())) : std::nullopt;
    const bool exp_kernel = cfg.kernel.family() == KernelFamily::Exponential;
    const double ea = cfg.kernel.exp_a(), eb = cfg.kernel.exp_b();
    DelaySampler delay(cfg.kernel);

    std::uint64_t events_seen = 0;
    std::vector<std::pair<int, double>> stack; // DFS over one cluster
    stack.reserve(1024);

    for (int i = 0; i < N; ++i) {
        const double rate = cfg.mu[static_cast<std::size_t>(i)];
        if (rate <= 0.0) continue;
        CounterRng imm(cfg.seed, CounterRng::stream_id(replica, kImmigrantTag, static_cast<std::uint64_t>(i)));
        double t = imm.exponential(rate);
        std::uint64_t m_idx = 0;
        while (t <= T) {
            // one immigrant cluster, own stream, deterministic DFS
            CounterRng crng(cfg.seed, CounterRng::stream_id(replica ^ 0x5bd1e995, kClusterTag + m_idx,
                                                            static_cast<std::uint64_t>(i)));
            stack.clear();
            stack.emplace_back(i, t);
            while (!stack.empty()) {
                const auto [site, s] = stack.back();
                stack.pop_back();
                sink(site, s);
                if (++events_seen > cfg.explosion_guard)
                    throw ExplosionError("simulate_cluster: explosion guard tripped", s,
                                         events_seen);
                const double W = T - s;
                if (W <= 0.0) continue;
                const double lam = exp_kernel
                                       ? ea / eb * (1.0 - std::exp(-eb * W)) * pmf_total
                                       : delay.mass(W) * pmf_total;
                if (lam <= 0.0) continue;
                const int n_children = crng.poisson(lam);
                for (int cchild = 0; cchild < n_children; ++cchild) {
                    const double d = exp_kernel
                                         ? -std::log1p(-crng.uniform() * (1.0 - std::exp(-eb * W))) / eb
                                         : delay.sample(crng, W);
                    const int disp = alias->sample(crng) - L;
                    int child_site = site + disp;
                    if (circulant) {
                        child_site %= N;
                        if (child_site < 0) child_site += N;
                    } else if (child_site < 0 || child_site >= N) {
                        continue; // mass beyond the restricted window is lost
                    }
                    stack.emplace_back(child_site, s + d);
                }
            }
            ++m_idx;
            t += imm.exponential(rate);
        }
    }
}

EventLog simulate_cluster(const HawkesConfig& cfg, std::uint64_t replica) {
    EventLog log;
    log.events.assign(static_cast<std::size_t>(cfg.lattice.size()), {});
    run_cluster_engine(cfg, replica, [&log](int site, double t) {
        log.events[static_cast<std::size_t>(site)].push_back(t);
    });
    for (auto& v : log.events) std::sort(v.begin(), v.end());
    return log;
}

std::vector<std::vector<std::int64_t>> simulate_cluster_counts(
    const HawkesConfig& cfg, std::uint64_t replica, const std::vector<double>& obs_times) {
    for (std::size_t i = 1; i < obs_times.size(); ++i)
        if (!(obs_times[i] > obs_times[i - 1]))
            throw std::domain_error("simulate_cluster_counts: observation times must increase");
    const std::size_t n_obs = obs_times.size();
    std::vector<std::vector<std::int64_t>> counts(
        static_cast<std::size_t>(cfg.lattice.size()), std::vector<std::int64_t>(n_obs, 0));
    run_cluster_engine(cfg, replica, [&](int site, double t) {
        // bucket: first observation time >= t
        const auto it = std::lower_bound(obs_times.begin(), obs_times.end(), t);
        if (it == obs_times.end()) return;
        counts[static_cast<std::size_t>(site)][static_cast<std::size_t>(it - obs_times.begin())]++;
    });
    // prefix sums turn buckets into Z_{t_k}
    for (auto& row : counts)
        for (std::size_t k = 1; k < n_obs; ++k) row[k] += row[k - 1];
    return counts;
}

EventLog simulate_thinning(const HawkesConfig& cfg, std::uint64_t replica) {
    const int N = cfg.lattice.size();
    const int L = cfg.lattice.half_width();
    const double T = cfg.horizon;
    const bool circulant = cfg.lattice.window() == Window::Circulant;
    const bool exp_kernel = cfg.kernel.family() == KernelFamily::Exponential;

    if (!exp_kernel) {
        // the piecewise-constant bound below needs a nonincreasing kernel
        const double f0 = cfg.kernel.eval(0.0);
        double prev = f0;
        const double end = cfg.kernel.support_end();
        for (int i = 1; i <= 64; ++i) {
            const double v = cfg.kernel.eval(std::min(end, end * i / 64.0));
            if (v > prev + 1e-12 * std::max(1.0, f0))
                throw std::domain_error(
                    "simulate_thinning: kernel must be nonincreasing (or use the cluster engine)");
            prev = v;
        }
    }

    EventLog log;
    log.events.assign(static_cast<std::size_t>(N), {});
    CounterRng rng(cfg.seed, CounterRng::stream_id(replica, kThinningTag, 0));

    const double S_mu = std::accumulate(cfg.mu.begin(), cfg.mu.end(), 0.0);
    if (S_mu == 0.0) return log; // nothing can ever fire

    const double ea = cfg.kernel.exp_a(), eb = cfg.kernel.exp_b();
    std::vector<double> excite(static_cast<std::size_t>(N), 0.0); // lambda_i - mu_i at bound time
    double S_excite = 0.0;
    double t_bound = 0.0; // time the bound was frozen
    std::vector<double> lambda_now(static_cast<std::size_t>(N), 0.0);
    std::uint64_t events_seen = 0;

    // general-kernel path keeps the whole history and recomputes on demand
    std::vector<std::pair<int, double>> history;

    const auto recompute_general = [&](double t) {
        std::vector<double> contrib(static_cast<std::size_t>(N), 0.0);
        for (const auto& [j, s] : history)
            if (s < t) contrib[static_cast<std::size_t>(j)] += cfg.kernel.eval(t - s);
        const auto mixed = cfg.lattice.apply(contrib);
        for (int i = 0; i < N; ++i)
            lambda_now[static_cast<std::size_t>(i)] = cfg.mu[static_cast<std::size_t>(i)] +
                                                      mixed[static_cast<std::size_t>(i)];
    };

    double t = 0.0;
    while (true) {
        const double bound_total = S_mu + S_excite;
        const double gap = rng.exponential(bound_total);
        t += gap;
        if (t > T) break;

        double lam_total;
        if (exp_kernel) {
            const double decay = std::exp(-eb * (t - t_bound));
            lam_total = S_mu + S_excite * decay;
            for (int i = 0; i < N; ++i)
                lambda_now[static_cast<std::size_t>(i)] =
                    cfg.mu[static_cast<std::size_t>(i)] +
                    excite[static_cast<std::size_t>(i)] * decay;
        } else {
            recompute_general(t);
            lam_total = std::accumulate(lambda_now.begin(), lambda_now.end(), 0.0);
        }
        if (lam_total > bound_total * (1.0 + 1e-9))
            throw InternalError("simulate_thinning: intensity exceeded its bound (bug trap)");

        const double u = rng.uniform() * bound_total;
        if (u < lam_total) {
            // accept; u is uniform on [0, lam_total), reuse it to pick the site
            int site = N - 1;
            double acc = 0.0;
            for (int i = 0; i < N; ++i) {
                acc += lambda_now[static_cast<std::size_t>(i)];
                if (u < acc) {
                    site = i;
                    break;
                }
            }
            log.events[static_cast<std::size_t>(site)].push_back(t);
            if (++events_seen > cfg.explosion_guard)
                throw ExplosionError("simulate_thinning: explosion guard tripped", t, events_seen);

            if (exp_kernel) {
                const double decay = std::exp(-eb * (t - t_bound));
                for (int i = 0; i < N; ++i)
                    excite[static_cast<std::size_t>(i)] *= decay;
                // add the new event's kick pmf[i - site] * a
                for (int d = -L; d <= L; ++d) {
                    int i = site + d;
                    if (circulant) {
                        i %= N;
                        if (i < 0) i += N;
                    } else if (i < 0 || i >= N) {
                        continue;
                    }
                    excite[static_cast<std::size_t>(i)] += ea * cfg.lattice.pmf_at(d);
                }
                S_excite = std::accumulate(excite.begin(), excite.end(), 0.0);
                t_bound = t;
            } else {
                history.emplace_back(site, t);
                // freeze the bound at the post-event intensity: current lambda
                // plus the new event's phi(0) kick spread by the lattice row
                std::vector<double> delta(static_cast<std::size_t>(N), 0.0);
                delta[static_cast<std::size_t>(site)] = cfg.kernel.eval(0.0);
                const auto kick = cfg.lattice.apply(delta);
                for (int i = 0; i < N; ++i)
                    excite[static_cast<std::size_t>(i)] =
                        lambda_now[static_cast<std::size_t>(i)] -
                        cfg.mu[static_cast<std::size_t>(i)] +
                        kick[static_cast<std::size_t>(i)];
                S_excite = std::accumulate(excite.begin(), excite.end(), 0.0);
                t_bound = t;
            }
        } else {
            // reject; tighten the bound to the current intensity
            if (exp_kernel) {
                const double decay = std::exp(-eb * (t - t_bound));
                for (int i = 0; i < N; ++i)
                    excite[static_cast<std::size_t>(i)] *= decay;
                S_excite *= decay;
                t_bound = t;
            } else {
                for (int i = 0; i < N; ++i)
                    excite[static_cast<std::size_t>(i)] =
                        lambda_now[static_cast<std::size_t>(i)] -
                        cfg.mu[static_cast<std::size_t>(i)];
                S_excite = std::accumulate(excite.begin(), excite.end(), 0.0);
                t_bound = t;
            }
        }
    }
    return log;
}

std::vector<std::vector<double>> intensity_trace(const HawkesConfig& cfg, const EventLog& log,
                                                 const std::vector<double>& t_grid) {
    const int N = cfg.lattice.size();
    if (log.events.size() != static_cast<std::size_t>(N))
        throw std::domain_error("intensity_trace: log does not match the window");
    for (const auto& v : log.events)
        for (double s : v)
            if (s < 0.0 || s > cfg.horizon)
                throw std::domain_error("intensity_trace: event outside [0, T]");

    std::vector<std::vector<double>> out(t_grid.size());
    const bool exp_kernel = cfg.kernel.family() == KernelFamily::Exponential;
    const double ea = cfg.kernel.exp_a(), eb = cfg.kernel.exp_b();

    if (exp_kernel) {
        // exact decay recursion along a sorted grid
        std::vector<double> sorted = t_grid;
        if (!std::is_sorted(sorted.begin(), sorted.end()))
            throw std::domain_error("intensity_trace: grid must be sorted");
        std::vector<double> contrib(static_cast<std::size_t>(N), 0.0);
        std::vector<std::size_t> next_event(static_cast<std::size_t>(N), 0);
        double t_prev = 0.0;
        for (std::size_t g = 0; g < sorted.size(); ++g) {
            const double t = sorted[g];
            const double decay = std::exp(-eb * (t - t_prev));
            for (auto& v : contrib) v *= decay;
            for (int j = 0; j < N; ++j) {
                auto& idx = next_event[static_cast<std::size_t>(j)];
                const auto& ev = log.events[static_cast<std::size_t>(j)];
                while (idx < ev.size() && ev[idx] < t) {
                    contrib[static_cast<std::size_t>(j)] += ea * std::exp(-eb * (t - ev[idx]));
                    ++idx;
                }
            }
            auto mixed = cfg.lattice.apply(contrib);
            for (int i = 0; i < N; ++i) mixed[static_cast<std::size_t>(i)] += cfg.mu[static_cast<std::size_t>(i)];
            out[g] = std::move(mixed);
            t_prev = t;
        }
        return out;
    }

    for (std::size_t g = 0; g < t_grid.size(); ++g) {
        const double t = t_grid[g];
        std::vector<double> contrib(static_cast<std::size_t>(N), 0.0);
        for (int j = 0; j < N; ++j)
            for (double s : log.events[static_cast<std::size_t>(j)]) {
                if (s >= t) break;
                contrib[static_cast<std::size_t>(j)] += cfg.kernel.eval(t - s);
            }
        auto mixed = cfg.lattice.apply(contrib);
        for (int i = 0; i < N; ++i) mixed[static_cast<std::size_t>(i)] += cfg.mu[static_cast<std::size_t>(i)];
        out[g] = std::move(mixed);
    }
    return out;
}

} // namespace hawkes
