#include "hawkes/lattice.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hawkes/errors.hpp"
#include "hawkes/fft.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/special.hpp"

namespace hawkes {

double normalization_c(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("normalization_c: alpha must be positive");
    return 1.0 / (2.0 * riemann_zeta(1.0 + alpha));
}

LatticeKernel::LatticeKernel(double alpha, int L, Window window) {
    if (!(alpha > 0.0)) throw std::domain_error("LatticeKernel: alpha must be positive");
    if (L < 1) throw std::domain_error("LatticeKernel: L must be >= 1");
    alpha_ = alpha;
    L_ = L;
    window_ = window;
    c_alpha_ = normalization_c(alpha);

    const int N = 2 * L + 1;
    const double s = 1.0 + alpha;
    pmf_.assign(static_cast<std::size_t>(N), 0.0);
    for (int d = 1; d <= L; ++d) {
        const double mass = c_alpha_ * std::pow(static_cast<double>(d), -s);
        pmf_[static_cast<std::size_t>(L + d)] = mass;
        pmf_[static_cast<std::size_t>(L - d)] = mass;
    }

    if (window == Window::Circulant) {
        // Fold the full Z-tail onto the window. The line j = i (mod N), j != i
        // would land on displacement 0, which must stay empty (A(i,i) = 0);
        // that mass is redistributed proportionally so the row stays exactly
        // stochastic. Hurwitz-zeta evaluation keeps every fold below 1e-12
        // relative error.
        const double P = static_cast<double>(N);
        const double Ppow = std::pow(P, -s);
        for (int d = 1; d <= L; ++d) {
            const double fold = c_alpha_ * Ppow *
                (hurwitz_zeta(s, 1.0 + d / P) + hurwitz_zeta(s, 1.0 - d / P));
            pmf_[static_cast<std::size_t>(L + d)] += fold;
            pmf_[static_cast<std::size_t>(L - d)] += fold;
        }
        const double diag_line = c_alpha_ * Ppow * 2.0 * riemann_zeta(s);
        const double renorm = 1.0 / (1.0 - diag_line);
        for (double& v : pmf_) v *= renorm;
        tail_mass_ = 0.0;
    } else {
        // Σ_{j>L} c j^{-s} on each side
        tail_mass_ = 2.0 * c_alpha_ * hurwitz_zeta(s, static_cast<double>(L) + 1.0);
    }
}

LatticeKernel LatticeKernel::with_custom_pmf(double alpha, int L, Window window,
                                             std::vector<double> pmf) {
    if (pmf.size() != static_cast<std::size_t>(2 * L + 1))
        throw std::domain_error("with_custom_pmf: pmf length must be 2L+1");
    LatticeKernel k;
    k.alpha_ = alpha;
    k.L_ = L;
    k.window_ = window;
    k.c_alpha_ = normalization_c(alpha);
    k.pmf_ = std::move(pmf);
    k.tail_mass_ = 1.0 - std::accumulate(k.pmf_.begin(), k.pmf_.end(), 0.0);
    return k;
}

namespace reference {
std::vector<double> apply_direct_serial(const LatticeKernel& k, const std::vector<double>& x) {
    const int N = k.size();
    const int L = k.half_width();
    if (x.size() != static_cast<std::size_t>(N))
        throw std::domain_error("apply: vector length must be 2L+1");
    const auto& pmf = k.pmf();
    std::vector<double> out(static_cast<std::size_t>(N), 0.0);
    if (k.window() == Window::Circulant) {
        for (int i = 0; i < N; ++i) {
            double s = 0.0;
            for (int d = -L; d <= L; ++d) {
                int j = i + d;
                if (j < 0) j += N;
                if (j >= N) j -= N;
                s += pmf[static_cast<std::size_t>(d + L)] * x[static_cast<std::size_t>(j)];
            }
            out[static_cast<std::size_t>(i)] = s;
        }
    } else {
        for (int i = 0; i < N; ++i) {
            double s = 0.0;
            for (int d = -L; d <= L; ++d) {
                const int j = i + d;
                if (j < 0 || j >= N) continue;
                s += pmf[static_cast<std::size_t>(d + L)] * x[static_cast<std::size_t>(j)];
            }
            out[static_cast<std::size_t>(i)] = s;
        }
    }
    return out;
}
} // namespace reference

std::vector<double> apply_direct(const LatticeKernel& k, const std::vector<double>& x) {
    const int N = k.size();
    const int L = k.half_width();
    if (x.size() != static_cast<std::size_t>(N))
        throw std::domain_error("apply: vector length must be 2L+1");
    const auto& pmf = k.pmf();
    std::vector<double> out(static_cast<std::size_t>(N), 0.0);
    const bool circ = k.window() == Window::Circulant;
#pragma omp parallel for schedule(static) num_threads(threads())
    for (int i = 0; i < N; ++i) {
        double s = 0.0;
        for (int d = -L; d <= L; ++d) {
            int j = i + d;
            if (circ) {
                if (j < 0) j += N;
                if (j >= N) j -= N;
            } else if (j < 0 || j >= N) {
                continue;
            }
            s += pmf[static_cast<std::size_t>(d + L)] * x[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

namespace {
// pmf rearranged as a length-N circular filter: index (d mod N).
std::vector<double> wrapped_filter(const LatticeKernel& k) {
    const int N = k.size();
    const int L = k.half_width();
    std::vector<double> g(static_cast<std::size_t>(N), 0.0);
    for (int d = -L; d <= L; ++d) {
        const int idx = (d % N + N) % N;
        g[static_cast<std::size_t>(idx)] = k.pmf_at(d);
    }
    return g;
}
} // namespace

std::vector<double> apply_fft(const LatticeKernel& k, const std::vector<double>& x) {
    const int N = k.size();
    const int L = k.half_width();
    if (x.size() != static_cast<std::size_t>(N))
        throw std::domain_error("apply: vector length must be 2L+1");
    if (k.window() == Window::Circulant) {
        return circular_convolve(wrapped_filter(k), x);
    }
    // zero-padded linear convolution, cropped to the window
    const auto full = linear_convolve_fft(k.pmf(), x);
    std::vector<double> out(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = full[static_cast<std::size_t>(i + L)];
    return out;
}

std::vector<double> LatticeKernel::apply(const std::vector<double>& x) const {
    return L_ >= 64 ? apply_fft(*this, x) : apply_direct(*this, x);
}

std::vector<double> LatticeKernel::spectrum() const {
    const auto g = wrapped_filter(*this);
    std::vector<cplx> in(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) in[i] = cplx(g[i], 0.0);
    const auto sp = dft(in, false);
    std::vector<double> lam(sp.size());
    for (std::size_t i = 0; i < sp.size(); ++i) lam[i] = sp[i].real();
    return lam;
}

std::vector<double> LatticeKernel::power_row(int n) const {
    if (window_ != Window::Circulant)
        throw std::domain_error("power_row: rows of the restricted operator are not translates");
    if (n < 0) throw std::domain_error("power_row: n must be >= 0");
    const int N = size();
    std::vector<double> row(static_cast<std::size_t>(N), 0.0);
    if (n == 0) {
        row[static_cast<std::size_t>(L_)] = 1.0; // delta at displacement 0
        return row;
    }
    const auto lam = spectrum();
    std::vector<cplx> sp(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i)
        sp[i] = cplx(std::pow(lam[i], n), 0.0);
    const auto back = dft(sp, true);
    // back[j] is the mass at circular index j; shift to displacement indexing
    for (int d = -L_; d <= L_; ++d) {
        const int idx = (d % N + N) % N;
        row[static_cast<std::size_t>(d + L_)] = back[static_cast<std::size_t>(idx)].real();
    }
    return row;
}

std::vector<double> LatticeKernel::row_sq_sup(int n_max) const {
    if (n_max < 1) throw std::domain_error("row_sq_sup: n_max must be >= 1");
    const auto lam = spectrum();
    const int N = size();
    std::vector<double> eps(static_cast<std::size_t>(n_max), 0.0);
#pragma omp parallel for schedule(dynamic) num_threads(threads())
    for (int n = 1; n <= n_max; ++n) {
        std::vector<cplx> sp(lam.size());
        for (std::size_t i = 0; i < lam.size(); ++i)
            sp[i] = cplx(std::pow(lam[i], n), 0.0);
        const auto back = dft(sp, true);
        double s2 = 0.0;
        for (int j = 0; j < N; ++j) {
            const double v = back[static_cast<std::size_t>(j)].real();
            s2 += v * v;
        }
        eps[static_cast<std::size_t>(n - 1)] = s2;
    }
    return eps;
}

LatticeKernel::AverageFlow LatticeKernel::mu_average_flow(const std::vector<double>& mu,
                                                          int n_max) const {
    if (window_ != Window::Circulant)
        throw std::domain_error("mu_average_flow: circulant window required");
    if (mu.size() != static_cast<std::size_t>(size()))
        throw std::domain_error("mu_average_flow: mu length must be 2L+1");
    AverageFlow out;
    out.mu_bar = std::accumulate(mu.begin(), mu.end(), 0.0) / static_cast<double>(size());
    out.iterates.reserve(static_cast<std::size_t>(n_max));
    std::vector<double> cur = mu;
    for (int n = 1; n <= n_max; ++n) {
        cur = apply(cur);
        out.iterates.push_back(cur);
    }
    return out;
}

double LatticeKernel::weighted_norm(const std::vector<double>& x) const {
    if (x.size() != static_cast<std::size_t>(size()))
        throw std::domain_error("weighted_norm: vector length must be 2L+1");
    const double s = 1.0 + alpha_;
    double total = std::abs(x[static_cast<std::size_t>(L_)]); // p_0 = 1
    for (int i = 1; i <= L_; ++i) {
        const double p = std::pow(static_cast<double>(i), -s);
        total += p * (std::abs(x[static_cast<std::size_t>(L_ + i)]) +
                      std::abs(x[static_cast<std::size_t>(L_ - i)]));
    }
    return total;
}

} // namespace hawkes
