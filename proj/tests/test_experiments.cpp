#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hawkes/errors.hpp"
#include "hawkes/experiments.hpp"

using namespace hawkes;

namespace {
ExperimentPlan sub_plan(int replicas, std::uint64_t seed, double mu_val = 1.0) {
    LatticeKernel lat(1.5, 16, Window::Circulant);
    auto k = TemporalKernel::exponential(0.5, 1.0);
    std::vector<double> mu(33, mu_val);
    HawkesConfig cfg(lat, k, mu, 40.0, seed);
    return ExperimentPlan{cfg, replicas, {10.0, 20.0, 40.0},
                          ExperimentPlan::default_sites(16), Target::SubCriticalLaw};
}
} // namespace

TEST_CASE("plan validation") {
    auto p = sub_plan(10, 1);
    CHECK_NOTHROW(p.validate());
    auto bad_times = p;
    bad_times.observation_times = {10.0, 5.0};
    CHECK_THROWS_AS(bad_times.validate(), std::domain_error);
    auto beyond = p;
    beyond.observation_times = {50.0};
    CHECK_THROWS_AS(beyond.validate(), std::domain_error);
    auto no_sites = p;
    no_sites.observed_sites.clear();
    CHECK_THROWS_AS(no_sites.validate(), std::domain_error);
    auto bad_site = p;
    bad_site.observed_sites = {99};
    CHECK_THROWS_AS(bad_site.validate(), std::domain_error);
}

TEST_CASE("parallel replica batch equals the serial one exactly") {
    const auto plan = sub_plan(48, 31337);
    const auto par = replica_counts(plan);
    const auto ser = reference::replica_counts_serial(plan);
    REQUIRE(par.size() == ser.size());
    for (std::size_t r = 0; r < par.size(); ++r) CHECK(par[r] == ser[r]);
}

TEST_CASE("seed discipline: identical plans give identical tables") {
    const auto t1 = run_subcritical(sub_plan(60, 7));
    const auto t2 = run_subcritical(sub_plan(60, 7));
    REQUIRE(t1.rows.size() == t2.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i) {
        CHECK(t1.rows[i].estimate == t2.rows[i].estimate);
        CHECK(t1.rows[i].mc_stderr == t2.rows[i].mc_stderr);
    }
}

TEST_CASE("sub-critical table: theory column and zero baseline") {
    const auto table = run_subcritical(sub_plan(60, 11));
    for (const auto& r : table.rows) {
        CHECK(r.theory == doctest::Approx(2.0).epsilon(1e-9)); // 1/(1-I)
        CHECK(r.estimate >= 0.0);
        CHECK(r.mc_stderr >= 0.0);
    }
    // rows sorted by t
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        CHECK(table.rows[i].t >= table.rows[i - 1].t);

    const auto tz = run_subcritical(sub_plan(20, 11, 0.0));
    for (const auto& r : tz.rows) {
        CHECK(r.estimate == 0.0);
        CHECK(r.theory == 0.0);
    }
}

TEST_CASE("regime gates") {
    auto p = sub_plan(5, 1);
    LatticeKernel lat(1.5, 16, Window::Circulant);
    auto super = TemporalKernel::exponential(2.0, 1.0);
    std::vector<double> mu(33, 1.0);
    HawkesConfig cfg(lat, super, mu, 8.0, 1);
    ExperimentPlan sp{cfg, 5, {4.0, 8.0}, ExperimentPlan::default_sites(16),
                      Target::SuperCriticalLaw};
    CHECK_THROWS_AS(run_subcritical(sp), RegimeError);
    CHECK_THROWS_AS(run_supercritical(p), RegimeError);
    CHECK_NOTHROW(run_supercritical(sp));
}

TEST_CASE("theory columns do not depend on the replica count") {
    const auto t1 = run_subcritical(sub_plan(10, 3));
    const auto t2 = run_subcritical(sub_plan(25, 3));
    REQUIRE(t1.rows.size() == t2.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i)
        CHECK(t1.rows[i].theory == t2.rows[i].theory);
}

TEST_CASE("doubling replicas shrinks the stderr by about sqrt(2)") {
    const auto t1 = run_subcritical(sub_plan(200, 5));
    const auto t2 = run_subcritical(sub_plan(400, 5));
    double r_acc = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < t1.rows.size(); ++i) {
        if (t2.rows[i].mc_stderr > 0.0) {
            r_acc += t1.rows[i].mc_stderr / t2.rows[i].mc_stderr;
            ++n;
        }
    }
    const double ratio = r_acc / n;
    CHECK(ratio > 1.3);
    CHECK(ratio < 1.5);
}

TEST_CASE("explosion guard in more than 1% of replicas aborts the experiment") {
    LatticeKernel lat(1.5, 8, Window::Circulant);
    auto k = TemporalKernel::exponential(2.0, 1.0);
    std::vector<double> mu(17, 1.0);
    HawkesConfig cfg(lat, k, mu, 12.0, 2);
    cfg.explosion_guard = 1000; // certain to trip
    ExperimentPlan plan{cfg, 10, {6.0, 12.0}, ExperimentPlan::default_sites(8),
                        Target::SuperCriticalLaw};
    CHECK_THROWS_AS(run_supercritical(plan), ExplosionError);
}

TEST_CASE("compare_to_meanfield flags at the Poisson baseline rate") {
    LatticeKernel lat(1.0, 8, Window::Circulant);
    std::vector<double> mu(17, 1.2);
    HawkesConfig cfg(lat, TemporalKernel::zero(), mu, 20.0, 123);
    ExperimentPlan plan{cfg, 400, {5.0, 10.0, 20.0}, {0, 4, 8, 12, 16},
                        Target::MeanFieldOnly};
    const auto sol = solve_volterra(TemporalKernel::zero(), lat, mu, 20.0, 0.01);
    const auto table = compare_to_meanfield(plan, sol);
    REQUIRE(table.rows.size() == 15);
    int flagged = 0;
    for (const auto& r : table.rows) {
        CHECK(r.theory == doctest::Approx(1.2 * r.t).epsilon(1e-9)); // Poisson mean
        if (r.flagged) ++flagged;
    }
    CHECK(flagged <= 2); // ~0.3% per row; 2 of 15 would already be unusual

    // config mismatch is rejected
    std::vector<double> mu2(17, 0.9);
    const auto sol2 = solve_volterra(TemporalKernel::zero(), lat, mu2, 20.0, 0.01);
    CHECK_THROWS_AS(compare_to_meanfield(plan, sol2), std::domain_error);
    ExperimentPlan off_grid = plan;
    off_grid.observation_times = {5.0037};
    CHECK_THROWS_AS(compare_to_meanfield(off_grid, sol), std::domain_error);
}

TEST_CASE("sub-critical mean-field comparison flags few rows") {
    auto plan = sub_plan(300, 100);
    const auto sol = solve_volterra(plan.cfg.kernel, plan.cfg.lattice, plan.cfg.mu, 40.0, 0.01);
    plan.target = Target::MeanFieldOnly;
    const auto table = compare_to_meanfield(plan, sol);
    int flagged = 0;
    for (const auto& r : table.rows)
        if (r.flagged) ++flagged;
    CHECK(flagged <= static_cast<int>(table.rows.size()) / 10);
}
