#pragma once

#include <optional>
#include <vector>

#include "hawkes/lattice.hpp"
#include "hawkes/temporal.hpp"

namespace hawkes {

// First-moment trajectories m_t^i = E[Z_t^i] and x_t^i = E[lambda_t^i] on a
// uniform time grid, site window {-L..L}. Time-major storage.
struct MeanFieldSolution {
    double T = 0;
    double h = 0;
    int steps = 0;      // grid has steps+1 points
    int n_sites = 0;
    std::vector<double> mu;
    std::optional<double> theta_rescale; // exponent used internally (supercritical)
    std::vector<double> m;               // (steps+1) * n_sites
    std::vector<double> x;

    double time_at(int k) const { return k * h; }
    double m_at(int k, int i) const { return m[static_cast<std::size_t>(k) * n_sites + i]; }
    double x_at(int k, int i) const { return x[static_cast<std::size_t>(k) * n_sites + i]; }
    int grid_index(double t, double tol = 1e-9) const; // -1 if t not on the grid
};

// Solves x_t = mu + int_0^t phi(t-s) A x_s ds by trapezoidal time stepping
// (diagonal term half-weighted, expanded as a fixed-length Neumann series),
// then m by cumulative trapezoid. Supercritical kernels are integrated in the
// rescaled variables x e^{-theta t} to avoid overflow.
//
// Large windows run the barrier-synchronized OpenMP body, small ones the
// serial body; both produce bit-identical results.
MeanFieldSolution solve_volterra(const TemporalKernel& kernel, const LatticeKernel& lattice,
                                 const std::vector<double>& mu, double T, double h);

namespace reference {
// Serial memory-sum path, oracle for the OpenMP one.
MeanFieldSolution solve_volterra_serial(const TemporalKernel& kernel,
                                        const LatticeKernel& lattice,
                                        const std::vector<double>& mu, double T, double h);
} // namespace reference

namespace detail {
// OpenMP body regardless of size (tests and the benchmark compare it
// against the serial reference directly).
MeanFieldSolution solve_volterra_parallel(const TemporalKernel& kernel,
                                          const LatticeKernel& lattice,
                                          const std::vector<double>& mu, double T, double h);
} // namespace detail

struct SubCriticalLimit {
    std::vector<double> limit; // (Q_alpha^I mu)_i
    int n_terms = 0;           // Neumann truncation order
};

// Q_alpha^I mu = sum_n I^n A^n mu, truncated when the geometric remainder
// I^{N+1} max(mu) / (1-I) drops below tol. The matrix is never materialized.
SubCriticalLimit subcritical_limit(double I, const LatticeKernel& lattice,
                                   const std::vector<double>& mu, double tol);

struct SupercriticalProfile {
    std::vector<double> rescaled_m_T; // e^{-theta T} m_T^i
    double theory_constant = 0;       // mu_bar / (theta^2 m_bar)
    bool horizon_warning = false;     // theta*T < 3
};

SupercriticalProfile supercritical_profile(const MeanFieldSolution& sol,
                                           const TemporalKernel& kernel, double theta);

// Numeric check of the vanishing-remainder lemma:
//   e^{-theta T} sum_n eps_n int_0^T phi^{*n}(T-s) e^{theta s/2} ds.
// The finite eps table is treated as the whole (finitely supported) vanishing
// sequence; eta_tail > 0 adds the F(t) <= C e^{theta t} based bound for a
// hypothetical tail at level eta_tail.
double neumann_tail_check(const TemporalKernel& kernel, double theta,
                          const std::vector<double>& eps, double T, double h,
                          double eta_tail = 0.0);

} // namespace hawkes
