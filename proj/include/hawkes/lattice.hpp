#pragma once

#include <vector>

namespace hawkes {

enum class Window { Circulant, Restricted };

// Normalization c(alpha) = 1 / (2 zeta(1+alpha)), so that the displacement
// masses c(alpha)/|d|^{1+alpha} sum to 1 over all of Z*.
double normalization_c(double alpha);

// Finite-window realization of the long-range interaction operator on the
// sites {-L, ..., L}. One row is stored as displacement masses pmf[d],
// indexed by d+L; pmf[0 displacement] = 0 always.
//
// Circulant mode folds the full Z-tail periodically onto the window, which
// keeps every row exactly stochastic. Restricted mode simply truncates and
// reports the lost tail mass.
class LatticeKernel {
  public:
    LatticeKernel(double alpha, int L, Window window);

    double alpha() const { return alpha_; }
    int half_width() const { return L_; }
    int size() const { return 2 * L_ + 1; }
    Window window() const { return window_; }
    double c_alpha() const { return c_alpha_; }
    double tail_mass() const { return tail_mass_; } // 0 for Circulant
    const std::vector<double>& pmf() const { return pmf_; }
    double pmf_at(int displacement) const { return pmf_[static_cast<std::size_t>(displacement + L_)]; }

    // (A x)_i for a site vector of length 2L+1. FFT path for L >= 64,
    // direct convolution otherwise; both agree to 1e-10 relative.
    std::vector<double> apply(const std::vector<double>& x) const;

    // A^n(0, .) via spectral exponentiation; Circulant only. n = 0 is the delta.
    std::vector<double> power_row(int n) const;

    // eps_n = sum_d A^n(0,d)^2 for n = 1..n_max; Circulant only.
    std::vector<double> row_sq_sup(int n_max) const;

    // Iterates A^n mu for n = 1..n_max plus the window average mu_bar.
    struct AverageFlow {
        std::vector<std::vector<double>> iterates;
        double mu_bar;
    };
    AverageFlow mu_average_flow(const std::vector<double>& mu, int n_max) const;

    // sum_i p_i |x_i| with p_0 = 1, p_i = |i|^{-(1+alpha)}.
    double weighted_norm(const std::vector<double>& x) const;

    // Testing hook: replace the row by an arbitrary displacement pmf.
    static LatticeKernel with_custom_pmf(double alpha, int L, Window window,
                                         std::vector<double> pmf);

  private:
    LatticeKernel() = default;
    std::vector<double> spectrum() const; // real eigenvalues (Circulant)

    double alpha_ = 0;
    int L_ = 0;
    Window window_ = Window::Circulant;
    double c_alpha_ = 0;
    double tail_mass_ = 0;
    std::vector<double> pmf_;
};

namespace reference {
// Direct O(N^2) convolution paths, kept as oracles for the FFT/OpenMP ones.
std::vector<double> apply_direct_serial(const LatticeKernel& k, const std::vector<double>& x);
} // namespace reference

// Direct convolution with OpenMP over output sites.
std::vector<double> apply_direct(const LatticeKernel& k, const std::vector<double>& x);
// FFT-based application (circular or zero-padded linear).
std::vector<double> apply_fft(const LatticeKernel& k, const std::vector<double>& x);

} // namespace hawkes
