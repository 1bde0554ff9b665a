#pragma once

#include <utility>
#include <vector>

namespace hawkes {

// Symmetric alpha-stable density p_1 with characteristic function
// e^{-|c t|^alpha}, evaluated by Fourier inversion:
//   p_1(x) = (1/pi) int_0^inf e^{-(c t)^alpha} cos(t x) dt.
// alpha is restricted to (0,2) \ {1}.
class StableDensity {
  public:
    StableDensity(double alpha, double c_scale);

    // Scale matched to the lattice step law P(X = n) = c(alpha)/|n|^{1+alpha},
    // from the domain-of-attraction normalization
    //   c^alpha = c(alpha) * 2 int_0^inf (1 - cos u) / u^{1+alpha} du,
    // computed by quadrature.
    static StableDensity calibrated(double alpha);
    static double calibrated_scale(double alpha);

    double alpha() const { return alpha_; }
    double scale() const { return c_; }

    double pdf(double x) const;                    // p_1
    double pdf_scaled(int n, double x) const;      // p_n(x) = n^{-1/a} p_1(x n^{-1/a})

    // (sup of p_1 on the grid, max finite-difference slope)
    std::pair<double, double> lipschitz_bound(const std::vector<double>& grid) const;

    // p_n at the integers 0..M (symmetric in the sign), via a graded
    // interpolation table; used by the local-limit-theorem sums.
    std::vector<double> pdf_scaled_on_integers(int n, int M) const;

  private:
    double alpha_;
    double c_;
};

// Law of the n-step heavy-tailed walk, truncated to the window {-M..M}.
struct WalkDistribution {
    double alpha = 0;
    int n = 0;
    int M = 0;
    std::vector<double> masses; // index j + M, j in [-M, M]
    double deficit = 0;         // mass escaped beyond the window

    double mass_at(int j) const { return masses[static_cast<std::size_t>(j + M)]; }
};

// n-fold convolution of the truncated step pmf via FFT exponentiation on a
// guarded ring. Throws AccuracyError if the escaped mass exceeds max_deficit.
WalkDistribution walk_pmf(double alpha, int n, int M, double max_deficit = 0.01);

struct LltResult {
    double sup_error = 0;          // sup_j |P(S_n = j) - p_n(j)|
    double rescaled_sup_error = 0; // n^{1/alpha} * sup_error
    double tv_error = 0;           // sum_j |P - p_n| + deficit
    double deficit = 0;
    double c_scale = 0;            // calibration used
};

LltResult llt_errors(double alpha, int n, int M, double max_deficit = 0.01);
double llt_sup_error(double alpha, int n, int M, double max_deficit = 0.01);
double llt_tv_error(double alpha, int n, int M, double max_deficit = 0.01);

} // namespace hawkes
