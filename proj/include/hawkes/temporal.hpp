#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hawkes {

enum class Regime { SubCritical, Critical, SuperCritical };

std::string regime_name(Regime r);

struct KernelAnalysis {
    double I = 0.0;                 // integral of phi over [0, inf)
    Regime regime = Regime::SubCritical;
    std::optional<double> theta;    // root of L_phi(theta) = 1, supercritical only
    std::optional<double> m_bar;    // integral of t phi(t) e^{-theta t}
};

enum class KernelFamily { Exponential, TruncatedPowerTime, Tabulated };

// Temporal interaction kernel phi on [0, inf) together with its
// sub-exponential certificate phi(t) <= C e^{kappa t}.
//
//   Exponential:        phi(t) = a e^{-b t}
//   TruncatedPowerTime: phi(t) = c0 (1+t)^{-beta} for t <= t_cut, 0 after
//   Tabulated:          linear interpolation on a grid, 0 beyond the grid
class TemporalKernel {
  public:
    static TemporalKernel exponential(double a, double b);
    static TemporalKernel truncated_power(double c0, double beta, double t_cut);
    static TemporalKernel tabulated(std::vector<double> grid, std::vector<double> values);
    static TemporalKernel zero(); // phi identically 0

    KernelFamily family() const { return family_; }
    double exp_a() const { return a_; }
    double exp_b() const { return b_; }
    double tp_c0() const { return c0_; }
    double tp_beta() const { return beta_; }
    double tp_tcut() const { return t_cut_; }
    const std::vector<double>& tab_grid() const { return grid_; }
    const std::vector<double>& tab_values() const { return values_; }
    double bound_C() const { return C_; }
    double bound_kappa() const { return kappa_; }
    bool compact_support() const { return family_ != KernelFamily::Exponential; }
    double support_end() const; // +inf for Exponential

    double eval(double t) const;
    double integral() const;                 // I
    double laplace(double p) const;          // L_phi(p)
    double solve_theta() const;              // root of L_phi = 1, needs I > 1
    double m_bar(double theta) const;        // integral t phi(t) e^{-theta t}
    KernelAnalysis analyze() const;

  private:
    TemporalKernel() = default;
    KernelFamily family_ = KernelFamily::Exponential;
    double a_ = 0, b_ = 0;                   // Exponential
    double c0_ = 0, beta_ = 0, t_cut_ = 0;   // TruncatedPowerTime
    std::vector<double> grid_, values_;      // Tabulated
    double C_ = 0, kappa_ = 0;
};

// Trapezoidal convolution of two samplings on the same uniform grid:
// out[k] = h * (f[0]g[k]/2 + sum_{j=1..k-1} f[j]g[k-j] + f[k]g[0]/2).
std::vector<double> grid_convolve(const std::vector<double>& f,
                                  const std::vector<double>& g, double h);

namespace reference {
// Serial implementation kept as the comparison oracle for the OpenMP kernel.
std::vector<double> grid_convolve_serial(const std::vector<double>& f,
                                         const std::vector<double>& g, double h);
} // namespace reference

// phi^{*n} sampled on the uniform grid {0, h, ..., steps*h}.
std::vector<double> conv_power_phi(const TemporalKernel& k, int n, double h, int steps);

} // namespace hawkes
