#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hawkes/experiments.hpp"
#include "hawkes/lattice.hpp"
#include "hawkes/temporal.hpp"

namespace hawkes {

// Flat key=value run configuration. Unknown keys are rejected; every default
// that gets applied is echoed into the output metadata.
struct RunConfig {
    // kernel
    std::string kernel_family; // exponential | truncated_power | tabulated | zero
    double kernel_a = 0, kernel_b = 0;
    double kernel_c0 = 0, kernel_beta = 0, kernel_tcut = 0;
    std::string kernel_file;

    // lattice
    double alpha = 0;
    int L = 0;
    Window window = Window::Circulant;

    // baseline: constant:<v> | alternating | delta:<disp>:<v> | file:<path>
    std::string mu_spec;

    double T = 0;
    double h = 0;

    int replicas = 100;
    std::vector<double> times;           // defaults to {T}
    std::vector<int> site_displacements; // defaults to {0, L}
    Target target = Target::MeanFieldOnly;

    std::uint64_t seed = 0;
    std::uint64_t guard = 100000000ULL;

    std::vector<int> powers;     // lattice-powers subcommand
    std::vector<int> stable_n;   // stable-check subcommand
    std::optional<double> stable_max_deficit;

    std::vector<std::string> applied_defaults;
    std::string source_path;

    std::string canonical_text() const; // resolved, sorted key=value lines
    std::uint64_t config_hash() const;  // FNV-1a over canonical_text()

    TemporalKernel make_kernel() const;
    LatticeKernel make_lattice() const;
    std::vector<double> make_mu() const;
    HawkesConfig make_hawkes_config() const;
    ExperimentPlan make_plan() const; // fail-fast on regime mismatch
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& name);

std::uint64_t fnv1a64(const std::string& s);

} // namespace hawkes
