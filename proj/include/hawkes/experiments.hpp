#pragma once

#include <string>
#include <vector>

#include "hawkes/meanfield.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes {

enum class Target { SubCriticalLaw, SuperCriticalLaw, MeanFieldOnly };

std::string target_name(Target t);

struct ExperimentPlan {
    HawkesConfig cfg;
    int replicas = 1;
    std::vector<double> observation_times; // sorted, within (0, T]
    std::vector<int> observed_sites;       // array positions 0..2L
    Target target = Target::SubCriticalLaw;

    void validate() const;
    // default observation sites: center plus the window edge
    static std::vector<int> default_sites(int L) { return {L, 2 * L}; }
};

struct ConvergenceRow {
    double t = 0;
    int site = 0;        // array position
    double estimate = 0; // MC average of the theorem's L1 discrepancy
    double theory = 0;
    double abs_err = 0;  // |MC mean of the raw statistic - theory|
    double mc_stderr = 0;
    bool flagged = false; // compare_to_meanfield: |diff| > 3 stderr
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
};

// Theorem-2.2-style experiment: estimate = E|Z_t^i / t - (Q_alpha^I mu)_i|.
ConvergenceTable run_subcritical(const ExperimentPlan& plan);

// Theorem-2.3-style experiment: estimate = E|Z_t^i e^{-theta t} - mu_bar/(theta^2 m_bar)|.
ConvergenceTable run_supercritical(const ExperimentPlan& plan);

// First-moment identity check: MC mean of Z_t^i against m_t^i.
ConvergenceTable compare_to_meanfield(const ExperimentPlan& plan, const MeanFieldSolution& sol);

namespace reference {
// Single-threaded replica loop, oracle for the OpenMP harness.
std::vector<std::vector<std::vector<std::int64_t>>> replica_counts_serial(
    const ExperimentPlan& plan);
} // namespace reference

// Replica counts [replica][site][time], OpenMP over replicas; bit-identical
// to the serial path for any thread count.
std::vector<std::vector<std::vector<std::int64_t>>> replica_counts(const ExperimentPlan& plan);

} // namespace hawkes
