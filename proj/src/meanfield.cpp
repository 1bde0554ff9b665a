#include "hawkes/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hawkes/errors.hpp"
#include "hawkes/parallel.hpp"

namespace hawkes {

int MeanFieldSolution::grid_index(double t, double tol) const {
    const double k = t / h;
    const double kr = std::round(k);
    if (std::abs(k - kr) > tol / h || kr < 0 || kr > steps) return -1;
    return static_cast<int>(kr);
}

namespace {

int checked_steps(double T, double h) {
    if (!(h > 0.0)) throw std::domain_error("solve_volterra: step must be positive");
    if (!(T > 0.0)) throw std::domain_error("solve_volterra: horizon must be positive");
    const double k = T / h;
    if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k))
        throw std::domain_error("solve_volterra: T/h must be an integer");
    return static_cast<int>(std::round(k));
}

constexpr double kExplosionCap = 1e300;

// Shared solver body; omp toggles the parallel memory sum.
MeanFieldSolution solve_impl(const TemporalKernel& kernel, const LatticeKernel& lattice,
                             const std::vector<double>& mu, double T, double h, bool omp) {
    const int N = lattice.size();
    if (mu.size() != static_cast<std::size_t>(N))
        throw std::domain_error("solve_volterra: mu length must be 2L+1");
    for (double v : mu)
        if (v < 0.0 || !std::isfinite(v))
            throw std::domain_error("solve_volterra: mu must be nonnegative and finite");
    const int K = checked_steps(T, h);

    // Supercritical kernels are stepped in x~ = x e^{-theta t} with the
    // tilted kernel phi e^{-theta t}, which keeps the iteration O(1)-sized.
    const KernelAnalysis an = kernel.analyze();
    const double theta_r = an.regime == Regime::SuperCritical ? *an.theta : 0.0;

    std::vector<double> phi_t(static_cast<std::size_t>(K) + 1);
    for (int j = 0; j <= K; ++j)
        phi_t[static_cast<std::size_t>(j)] = kernel.eval(j * h) * std::exp(-theta_r * j * h);

    MeanFieldSolution sol;
    sol.T = T;
    sol.h = h;
    sol.steps = K;
    sol.n_sites = N;
    sol.mu = mu;
    if (theta_r > 0.0) sol.theta_rescale = theta_r;
    sol.x.assign(static_cast<std::size_t>(K + 1) * N, 0.0);
    sol.m.assign(static_cast<std::size_t>(K + 1) * N, 0.0);

    const std::size_t sN = static_cast<std::size_t>(N);
    // step-major storage for the rescaled intensity and its lattice image
    std::vector<double> xt(static_cast<std::size_t>(K + 1) * sN, 0.0);
    std::vector<double> yt(static_cast<std::size_t>(K + 1) * sN, 0.0);
    std::vector<double> base(sN), term_a(sN), term_b(sN);

    // direct row application for one output site (wrap or clip)
    const bool circulant = lattice.window() == Window::Circulant;
    const int L = lattice.half_width();
    const double* pmf = lattice.pmf().data();
    const auto row_dot = [&](const double* v, int i) {
        double acc = 0.0;
        for (int d = -L; d <= L; ++d) {
            int j = i + d;
            if (circulant) {
                if (j < 0) j += N;
                if (j >= N) j -= N;
            } else if (j < 0 || j >= N) {
                continue;
            }
            acc += pmf[d + L] * v[j];
        }
        return acc;
    };

    // The implicit diagonal term (h/2) phi(0) A x_k is expanded as a Neumann
    // series in diag * A; the term count is fixed up front so every thread
    // count runs the identical arithmetic.
    const double diag = 0.5 * h * phi_t[0];
    int n_terms = 0;
    if (diag > 0.0) {
        const double q = std::min(diag, 0.9);
        n_terms = std::min(64, std::max(2, static_cast<int>(std::ceil(-37.0 / std::log(q)))));
    }

    double explosion_time = -1.0;

    // per-step slice work; [i0, i1) is this worker's site range. The memory
    // sum streams the past-step rows contiguously (j outer, i inner).
    const auto step_init = [&](int k, int i0, int i1) {
        const double decay = std::exp(-theta_r * k * h);
        double* xk = xt.data() + static_cast<std::size_t>(k) * sN;
        for (int i = i0; i < i1; ++i)
            base[static_cast<std::size_t>(i)] = mu[static_cast<std::size_t>(i)] * decay;
        // trapezoid memory sum over past steps, half weight at j = 0
        for (int j = 0; j < k; ++j) {
            const double w = (j == 0 ? 0.5 : 1.0) * h * phi_t[static_cast<std::size_t>(k - j)];
            if (w == 0.0) continue;
            const double* yj = yt.data() + static_cast<std::size_t>(j) * sN;
            for (int i = i0; i < i1; ++i) base[static_cast<std::size_t>(i)] += w * yj[i];
        }
        for (int i = i0; i < i1; ++i) {
            term_a[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)];
            xk[i] = base[static_cast<std::size_t>(i)];
        }
    };
    const auto neumann_term = [&](int k, double* src, double* dst, int i0, int i1) {
        double* xk = xt.data() + static_cast<std::size_t>(k) * sN;
        for (int i = i0; i < i1; ++i) {
            const double v = diag * row_dot(src, i);
            dst[i] = v;
            xk[i] += v;
        }
    };
    const auto step_finish = [&](int k, int i0, int i1) -> bool {
        const double* xk = xt.data() + static_cast<std::size_t>(k) * sN;
        double* yk = yt.data() + static_cast<std::size_t>(k) * sN;
        const double grow = std::exp(theta_r * k * h);
        bool blew_up = false;
        for (int i = i0; i < i1; ++i) {
            yk[i] = row_dot(xk, i);
            if (!(xk[i] * grow < kExplosionCap)) blew_up = true;
        }
        return blew_up;
    };

    // k = 0: x = mu, y = A mu
    for (int i = 0; i < N; ++i) xt[static_cast<std::size_t>(i)] = mu[static_cast<std::size_t>(i)];
    for (int i = 0; i < N; ++i) yt[static_cast<std::size_t>(i)] = row_dot(xt.data(), i);

    if (omp) {
        std::vector<int> blew(static_cast<std::size_t>(threads()), 0);
#pragma omp parallel num_threads(threads())
        {
            const int nt = omp_get_num_threads();
            const int tid = omp_get_thread_num();
            const int i0 = N * tid / nt, i1 = N * (tid + 1) / nt;
            for (int k = 1; k <= K; ++k) {
                step_init(k, i0, i1);
#pragma omp barrier
                double* src = term_a.data();
                double* dst = term_b.data();
                for (int it = 1; it < n_terms; ++it) {
                    neumann_term(k, src, dst, i0, i1);
#pragma omp barrier
                    std::swap(src, dst);
                }
                if (step_finish(k, i0, i1)) blew[static_cast<std::size_t>(tid)] = 1;
#pragma omp barrier
                bool stop = false;
                for (int t = 0; t < nt; ++t)
                    if (blew[static_cast<std::size_t>(t)]) stop = true;
                if (stop) {
#pragma omp master
                    explosion_time = k * h;
                    break;
                }
            }
        }
    } else {
        for (int k = 1; k <= K && explosion_time < 0.0; ++k) {
            step_init(k, 0, N);
            double* src = term_a.data();
            double* dst = term_b.data();
            for (int it = 1; it < n_terms; ++it) {
                neumann_term(k, src, dst, 0, N);
                std::swap(src, dst);
            }
            if (step_finish(k, 0, N)) explosion_time = k * h;
        }
    }
    if (explosion_time >= 0.0)
        throw ExplosionError("solve_volterra: intensity exceeded 1e300", explosion_time, 0);

    // raw x and cumulative-trapezoid m
    for (int k = 0; k <= K; ++k) {
        const double grow = std::exp(theta_r * k * h);
        for (int i = 0; i < N; ++i)
            sol.x[static_cast<std::size_t>(k) * N + i] =
                xt[static_cast<std::size_t>(k) * sN + static_cast<std::size_t>(i)] * grow;
    }
    for (int k = 1; k <= K; ++k) {
        for (int i = 0; i < N; ++i) {
            const std::size_t cur = static_cast<std::size_t>(k) * N + i;
            const std::size_t prev = static_cast<std::size_t>(k - 1) * N + i;
            sol.m[cur] = sol.m[prev] + 0.5 * h * (sol.x[prev] + sol.x[cur]);
            if (!(sol.m[cur] < kExplosionCap))
                throw ExplosionError("solve_volterra: mean count exceeded 1e300", k * h, 0);
        }
    }
    return sol;
}

} // namespace

MeanFieldSolution solve_volterra(const TemporalKernel& kernel, const LatticeKernel& lattice,
                                 const std::vector<double>& mu, double T, double h) {
    // per-step barriers only pay off once the site dimension is large
    const bool use_omp = lattice.size() >= 1024 && threads() > 1;
    return solve_impl(kernel, lattice, mu, T, h, use_omp);
}

namespace reference {
MeanFieldSolution solve_volterra_serial(const TemporalKernel& kernel,
                                        const LatticeKernel& lattice,
                                        const std::vector<double>& mu, double T, double h) {
    return solve_impl(kernel, lattice, mu, T, h, false);
}
} // namespace reference

namespace detail {
MeanFieldSolution solve_volterra_parallel(const TemporalKernel& kernel,
                                          const LatticeKernel& lattice,
                                          const std::vector<double>& mu, double T, double h) {
    return solve_impl(kernel, lattice, mu, T, h, true);
}
} // namespace detail

SubCriticalLimit subcritical_limit(double I, const LatticeKernel& lattice,
                                   const std::vector<double>& mu, double tol) {
    if (!(I < 1.0)) throw RegimeError("subcritical_limit: requires I < 1");
    if (I < 0.0) throw std::domain_error("subcritical_limit: I must be nonnegative");
    if (mu.size() != static_cast<std::size_t>(lattice.size()))
        throw std::domain_error("subcritical_limit: mu length must be 2L+1");
    if (!(tol > 0.0)) throw std::domain_error("subcritical_limit: tol must be positive");

    const double mu_max = *std::max_element(mu.begin(), mu.end());
    SubCriticalLimit out;
    out.limit = mu;
    if (mu_max == 0.0 || I == 0.0) return out;

    // remainder after N terms: I^{N+1} mu_max / (1-I)
    int N = 0;
    double rem = I * mu_max / (1.0 - I);
    while (rem >= tol && N < 1000000) {
        ++N;
        rem *= I;
    }
    out.n_terms = N;

    std::vector<double> term = mu;
    for (int n = 1; n <= N; ++n) {
        term = lattice.apply(term);
        for (auto& v : term) v *= I;
        // accumulate I^n A^n mu (factor folded into term each round)
        for (std::size_t i = 0; i < out.limit.size(); ++i) out.limit[i] += term[i];
    }
    return out;
}

SupercriticalProfile supercritical_profile(const MeanFieldSolution& sol,
                                           const TemporalKernel& kernel, double theta) {
    SupercriticalProfile out;
    const double thT = theta * sol.T;
    if (thT < 3.0) out.horizon_warning = true;
    const double mu_bar = std::accumulate(sol.mu.begin(), sol.mu.end(), 0.0) /
                          static_cast<double>(sol.n_sites);
    const double mb = kernel.m_bar(theta);
    out.theory_constant = mb > 0.0 ? mu_bar / (theta * theta * mb) : 0.0;
    out.rescaled_m_T.resize(static_cast<std::size_t>(sol.n_sites));
    const double scale = std::exp(-thT);
    for (int i = 0; i < sol.n_sites; ++i)
        out.rescaled_m_T[static_cast<std::size_t>(i)] = scale * sol.m_at(sol.steps, i);
    return out;
}

double neumann_tail_check(const TemporalKernel& kernel, double theta,
                          const std::vector<double>& eps, double T, double h,
                          double eta_tail) {
    if (!(theta > kernel.bound_kappa()))
        throw RegimeError("neumann_tail_check: requires kappa < theta");
    const int K = checked_steps(T, h);

    bool all_zero = true;
    for (double e : eps)
        if (e != 0.0) all_zero = false;
    if (all_zero && eta_tail == 0.0) return 0.0;

    // phi values and iterated convolution powers on the grid
    std::vector<double> phi(static_cast<std::size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) phi[static_cast<std::size_t>(j)] = kernel.eval(j * h);

    std::vector<double> expw(static_cast<std::size_t>(K) + 1);
    for (int j = 0; j <= K; ++j) expw[static_cast<std::size_t>(j)] = std::exp(0.5 * theta * j * h);

    const auto weighted_integral = [&](const std::vector<double>& pw) {
        // trapezoid of phi^{*n}(T-s) e^{theta s/2} over s in [0, T]
        double s = 0.5 * (pw[static_cast<std::size_t>(K)] * expw[0] + pw[0] * expw[static_cast<std::size_t>(K)]);
        for (int j = 1; j < K; ++j)
            s += pw[static_cast<std::size_t>(K - j)] * expw[static_cast<std::size_t>(j)];
        return s * h;
    };

    const double pre = std::exp(-theta * T);
    double main_sum = 0.0;
    std::vector<double> power = phi;
    std::vector<double> Fsum(static_cast<std::size_t>(K) + 1, 0.0);
    const std::size_t n_eps = eps.size();
    for (std::size_t n = 1; n <= n_eps; ++n) {
        if (n > 1) power = grid_convolve(power, phi, h);
        main_sum += eps[n - 1] * weighted_integral(power);
        for (std::size_t j = 0; j <= static_cast<std::size_t>(K); ++j) Fsum[j] += power[j];
    }
    double value = pre * main_sum;

    if (eta_tail > 0.0) {
        // extend F = sum_n phi^{*n} until new powers stop contributing, then
        // bound the hypothetical n > N tail by eta * C_F * (2/theta)(1 - e^{-theta T/2})
        for (int extra = 0; extra < 400; ++extra) {
            power = grid_convolve(power, phi, h);
            double mx = 0.0, fx = 0.0;
            for (std::size_t j = 0; j <= static_cast<std::size_t>(K); ++j) {
                Fsum[j] += power[j];
                mx = std::max(mx, power[j]);
                fx = std::max(fx, Fsum[j]);
            }
            if (mx <= 1e-14 * fx) break;
        }
        double C_F = 0.0;
        for (int j = 0; j <= K; ++j)
            C_F = std::max(C_F, Fsum[static_cast<std::size_t>(j)] * std::exp(-theta * j * h));
        value += eta_tail * C_F * (2.0 / theta) * (1.0 - std::exp(-0.5 * theta * T));
    }
    return value;
}

} // namespace hawkes
