#include "hawkes/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hawkes/errors.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/summation.hpp"

namespace hawkes {

std::string target_name(Target t) {
    switch (t) {
        case Target::SubCriticalLaw: return "subcritical";
        case Target::SuperCriticalLaw: return "supercritical";
        case Target::MeanFieldOnly: return "meanfield";
    }
    return "?";
}

void ExperimentPlan::validate() const {
    if (replicas < 1) throw std::domain_error("ExperimentPlan: replicas must be >= 1");
    if (observation_times.empty())
        throw std::domain_error("ExperimentPlan: need at least one observation time");
    for (std::size_t i = 0; i < observation_times.size(); ++i) {
        const double t = observation_times[i];
        if (!(t > 0.0) || t > cfg.horizon + 1e-12)
            throw std::domain_error("ExperimentPlan: observation times must lie in (0, T]");
        if (i > 0 && !(t > observation_times[i - 1]))
            throw std::domain_error("ExperimentPlan: observation times must increase");
    }
    for (int s : observed_sites)
        if (s < 0 || s >= cfg.lattice.size())
            throw std::domain_error("ExperimentPlan: observed site outside the window");
    if (observed_sites.empty())
        throw std::domain_error("ExperimentPlan: need at least one observed site");
}

namespace {

std::vector<std::vector<std::vector<std::int64_t>>> counts_impl(const ExperimentPlan& plan,
                                                                bool omp) {
    plan.validate();
    const int R = plan.replicas;
    std::vector<std::vector<std::vector<std::int64_t>>> all(static_cast<std::size_t>(R));
    std::string first_error;
    std::size_t failures = 0;
    if (omp) {
#pragma omp parallel for schedule(dynamic) num_threads(threads())
        for (int r = 0; r < R; ++r) {
            try {
                all[static_cast<std::size_t>(r)] = simulate_cluster_counts(
                    plan.cfg, static_cast<std::uint64_t>(r), plan.observation_times);
            } catch (const ExplosionError& e) {
#pragma omp critical
                {
                    ++failures;
                    if (first_error.empty()) first_error = e.what();
                }
            }
        }
    } else {
        for (int r = 0; r < R; ++r) {
            try {
                all[static_cast<std::size_t>(r)] = simulate_cluster_counts(
                    plan.cfg, static_cast<std::uint64_t>(r), plan.observation_times);
            } catch (const ExplosionError& e) {
                ++failures;
                if (first_error.empty()) first_error = e.what();
            }
        }
    }
    if (failures > 0) {
        const double frac = static_cast<double>(failures) / static_cast<double>(R);
        if (frac > 0.01)
            throw ExplosionError("experiment aborted: explosion guard tripped in " +
                                     std::to_string(failures) + "/" + std::to_string(R) +
                                     " replicas (" + first_error + ")",
                                 plan.cfg.horizon, failures);
        // tolerate rare trips by treating those replicas as absent
        std::vector<std::vector<std::vector<std::int64_t>>> kept;
        kept.reserve(all.size());
        for (auto& a : all)
            if (!a.empty()) kept.push_back(std::move(a));
        return kept;
    }
    return all;
}

// Shared table builder: stat(count, t) is the theorem's raw statistic; the
// estimate column is the MC mean of |stat - theory|.
template <typename StatFn>
ConvergenceTable build_table(const ExperimentPlan& plan,
                             const std::vector<std::vector<std::vector<std::int64_t>>>& counts,
                             const std::vector<double>& theory_by_site, StatFn&& stat) {
    ConvergenceTable table;
    const std::size_t R = counts.size();
    std::vector<double> l1(R), raw(R);
    for (std::size_t ti = 0; ti < plan.observation_times.size(); ++ti) {
        const double t = plan.observation_times[ti];
        for (int site : plan.observed_sites) {
            const double theory = theory_by_site[static_cast<std::size_t>(site)];
            for (std::size_t r = 0; r < R; ++r) {
                const double v = stat(counts[r][static_cast<std::size_t>(site)][ti], t);
                raw[r] = v;
                l1[r] = std::abs(v - theory);
            }
            const SampleSummary sl1 = summarize(l1);
            const SampleSummary sraw = summarize(raw);
            ConvergenceRow row;
            row.t = t;
            row.site = site;
            row.estimate = sl1.mean;
            row.theory = theory;
            row.abs_err = std::abs(sraw.mean - theory);
            row.mc_stderr = sl1.stderr_mean;
            table.rows.push_back(row);
        }
    }
    return table;
}

} // namespace

namespace reference {
std::vector<std::vector<std::vector<std::int64_t>>> replica_counts_serial(
    const ExperimentPlan& plan) {
    return counts_impl(plan, false);
}
} // namespace reference

std::vector<std::vector<std::vector<std::int64_t>>> replica_counts(const ExperimentPlan& plan) {
    return counts_impl(plan, true);
}

ConvergenceTable run_subcritical(const ExperimentPlan& plan) {
    plan.validate();
    const KernelAnalysis an = plan.cfg.kernel.analyze();
    if (an.regime != Regime::SubCritical)
        throw RegimeError("run_subcritical: kernel regime is " + regime_name(an.regime));
    const SubCriticalLimit lim = subcritical_limit(an.I, plan.cfg.lattice, plan.cfg.mu, 1e-10);
    const auto counts = replica_counts(plan);
    return build_table(plan, counts, lim.limit,
                       [](std::int64_t z, double t) { return static_cast<double>(z) / t; });
}

ConvergenceTable run_supercritical(const ExperimentPlan& plan) {
    plan.validate();
    const KernelAnalysis an = plan.cfg.kernel.analyze();
    if (an.regime != Regime::SuperCritical)
        throw RegimeError("run_supercritical: kernel regime is " + regime_name(an.regime));
    const double theta = *an.theta;
    if (!(plan.cfg.kernel.bound_kappa() < theta))
        throw RegimeError("run_supercritical: kappa < theta hypothesis fails");
    const double mu_bar = std::accumulate(plan.cfg.mu.begin(), plan.cfg.mu.end(), 0.0) /
                          static_cast<double>(plan.cfg.mu.size());
    const double constant = *an.m_bar > 0.0 ? mu_bar / (theta * theta * *an.m_bar) : 0.0;
    std::vector<double> theory(static_cast<std::size_t>(plan.cfg.lattice.size()), constant);
    const auto counts = replica_counts(plan);
    return build_table(plan, counts, theory, [theta](std::int64_t z, double t) {
        return static_cast<double>(z) * std::exp(-theta * t);
    });
}

ConvergenceTable compare_to_meanfield(const ExperimentPlan& plan, const MeanFieldSolution& sol) {
    plan.validate();
    if (sol.n_sites != plan.cfg.lattice.size())
        throw std::domain_error("compare_to_meanfield: window mismatch");
    if (sol.mu != plan.cfg.mu)
        throw std::domain_error("compare_to_meanfield: baseline mismatch");
    if (sol.T + 1e-9 < plan.observation_times.back())
        throw std::domain_error("compare_to_meanfield: solution horizon too short");
    for (double t : plan.observation_times)
        if (sol.grid_index(t) < 0)
            throw std::domain_error("compare_to_meanfield: observation time off the grid");

    const auto counts = replica_counts(plan);
    const std::size_t R = counts.size();
    ConvergenceTable table;
    std::vector<double> raw(R);
    for (std::size_t ti = 0; ti < plan.observation_times.size(); ++ti) {
        const double t = plan.observation_times[ti];
        const int k = sol.grid_index(t);
        for (int site : plan.observed_sites) {
            for (std::size_t r = 0; r < R; ++r)
                raw[r] = static_cast<double>(counts[r][static_cast<std::size_t>(site)][ti]);
            const SampleSummary s = summarize(raw);
            ConvergenceRow row;
            row.t = t;
            row.site = site;
            row.theory = sol.m_at(k, site);
            row.estimate = s.mean;
            row.abs_err = std::abs(s.mean - row.theory);
            row.mc_stderr = s.stderr_mean;
            row.flagged = row.abs_err > 3.0 * std::max(s.stderr_mean, 1e-300);
            table.rows.push_back(row);
        }
    }
    return table;
}

} // namespace hawkes
