#include "hawkes/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hawkes/errors.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/quadrature.hpp"

namespace hawkes {

namespace {
constexpr double kCriticalTol = 1e-9;
constexpr double kQuadRelTol = 1e-11;
} // namespace

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::SubCritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::SuperCritical: return "supercritical";
    }
    return "?";
}

TemporalKernel TemporalKernel::exponential(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("exponential kernel: a and b must be positive");
    TemporalKernel k;
    k.family_ = KernelFamily::Exponential;
    k.a_ = a;
    k.b_ = b;
    k.C_ = a;       // phi(t) = a e^{-bt} <= a
    k.kappa_ = 0.0;
    return k;
}

TemporalKernel TemporalKernel::truncated_power(double c0, double beta, double t_cut) {
    if (!(c0 > 0.0)) throw std::domain_error("truncated_power kernel: c0 must be positive");
    if (!(beta > 1.0)) throw std::domain_error("truncated_power kernel: beta must exceed 1");
    if (!(t_cut > 0.0)) throw std::domain_error("truncated_power kernel: t_cut must be positive");
    TemporalKernel k;
    k.family_ = KernelFamily::TruncatedPowerTime;
    k.c0_ = c0;
    k.beta_ = beta;
    k.t_cut_ = t_cut;
    k.C_ = c0;
    k.kappa_ = 0.0;
    return k;
}

TemporalKernel TemporalKernel::tabulated(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() != values.size() || grid.size() < 2)
        throw std::domain_error("tabulated kernel: grid and values must match, length >= 2");
    if (grid.front() < 0.0) throw std::domain_error("tabulated kernel: grid must be nonnegative");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::domain_error("tabulated kernel: grid must be strictly increasing");
    double vmax = 0.0;
    for (double v : values) {
        if (v < 0.0) throw std::domain_error("tabulated kernel: values must be nonnegative");
        vmax = std::max(vmax, v);
    }
    TemporalKernel k;
    k.family_ = KernelFamily::Tabulated;
    k.grid_ = std::move(grid);
    k.values_ = std::move(values);
    k.C_ = std::max(vmax, 1e-300);
    k.kappa_ = 0.0;
    return k;
}

TemporalKernel TemporalKernel::zero() {
    return tabulated({0.0, 1.0}, {0.0, 0.0});
}

double TemporalKernel::support_end() const {
    switch (family_) {
        case KernelFamily::Exponential: return std::numeric_limits<double>::infinity();
        case KernelFamily::TruncatedPowerTime: return t_cut_;
        case KernelFamily::Tabulated: return grid_.back();
    }
    return 0.0;
}

double TemporalKernel::eval(double t) const {
    if (t < 0.0) throw std::domain_error("eval_phi: negative time");
    switch (family_) {
        case KernelFamily::Exponential:
            return a_ * std::exp(-b_ * t);
        case KernelFamily::TruncatedPowerTime:
            return t <= t_cut_ ? c0_ * std::pow(1.0 + t, -beta_) : 0.0;
        case KernelFamily::Tabulated: {
            if (t < grid_.front() || t > grid_.back()) return 0.0;
            auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
            if (it == grid_.begin()) return values_.front();
            if (it == grid_.end()) return values_.back();
            const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
            const std::size_t lo = hi - 1;
            const double w = (t - grid_[lo]) / (grid_[hi] - grid_[lo]);
            return values_[lo] + w * (values_[hi] - values_[lo]);
        }
    }
    return 0.0;
}

double TemporalKernel::integral() const {
    switch (family_) {
        case KernelFamily::Exponential:
            return a_ / b_;
        case KernelFamily::TruncatedPowerTime:
            return integrate_adaptive([this](double t) { return eval(t); }, 0.0, t_cut_,
                                      kQuadRelTol);
        case KernelFamily::Tabulated: {
            // trapezoid per cell is the exact integral of the interpolant
            double s = 0.0;
            for (std::size_t i = 1; i < grid_.size(); ++i)
                s += 0.5 * (values_[i] + values_[i - 1]) * (grid_[i] - grid_[i - 1]);
            return s;
        }
    }
    return 0.0;
}

double TemporalKernel::laplace(double p) const {
    switch (family_) {
        case KernelFamily::Exponential:
            // the integral converges exactly for p > -b
            if (p <= -b_)
                throw std::domain_error("laplace_phi: p outside the convergence region");
            return a_ / (b_ + p);
        case KernelFamily::TruncatedPowerTime:
            return integrate_adaptive(
                [this, p](double t) { return eval(t) * std::exp(-p * t); }, 0.0, t_cut_,
                kQuadRelTol);
        case KernelFamily::Tabulated: {
            double s = 0.0;
            for (std::size_t i = 1; i < grid_.size(); ++i) {
                if (values_[i] == 0.0 && values_[i - 1] == 0.0) continue;
                s += integrate_adaptive(
                    [this, p](double t) { return eval(t) * std::exp(-p * t); }, grid_[i - 1],
                    grid_[i], kQuadRelTol);
            }
            return s;
        }
    }
    return 0.0;
}

double TemporalKernel::solve_theta() const {
    const double I = integral();
    if (!(I > 1.0 + kCriticalTol))
        throw RegimeError("solve_theta: kernel is not supercritical (I = " + std::to_string(I) + ")");

    const double lo0 = kappa_ + 1e-6;
    if (laplace(lo0) < 1.0)
        throw RegimeError("solve_theta: root lies at or below kappa; Theorem hypothesis kappa < theta fails");

    // expand the bracket upward until L_phi < 1
    double lo = lo0;
    double hi = kappa_ + 1.0;
    while (laplace(hi) >= 1.0) {
        lo = hi;
        hi = kappa_ + 2.0 * (hi - kappa_);
        if (hi > 1e12)
            throw RegimeError("solve_theta: no finite root found below p = 1e12");
    }

    // bisect to width 1e-12
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (laplace(mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double theta = 0.5 * (lo + hi);

    // one Newton polish; L' = -m_bar evaluated at theta
    const double deriv = -m_bar(theta);
    if (deriv != 0.0) {
        const double candidate = theta - (laplace(theta) - 1.0) / deriv;
        if (candidate > kappa_ && std::abs(laplace(candidate) - 1.0) <= std::abs(laplace(theta) - 1.0))
            theta = candidate;
    }

    if (std::abs(laplace(theta) - 1.0) > 1e-10)
        throw InternalError("solve_theta: root polish failed to reach 1e-10");
    if (theta <= kappa_)
        throw RegimeError("solve_theta: computed theta <= kappa (hypothesis violation)");
    return theta;
}

double TemporalKernel::m_bar(double theta) const {
    if (theta <= kappa_ && !compact_support())
        throw std::domain_error("m_bar: theta must exceed kappa");
    switch (family_) {
        case KernelFamily::Exponential: {
            const double d = b_ + theta;
            return a_ / (d * d);
        }
        case KernelFamily::TruncatedPowerTime:
            return integrate_adaptive(
                [this, theta](double t) { return t * eval(t) * std::exp(-theta * t); }, 0.0,
                t_cut_, kQuadRelTol);
        case KernelFamily::Tabulated: {
            double s = 0.0;
            for (std::size_t i = 1; i < grid_.size(); ++i) {
                if (values_[i] == 0.0 && values_[i - 1] == 0.0) continue;
                s += integrate_adaptive(
                    [this, theta](double t) { return t * eval(t) * std::exp(-theta * t); },
                    grid_[i - 1], grid_[i], kQuadRelTol);
            }
            return s;
        }
    }
    return 0.0;
}

KernelAnalysis TemporalKernel::analyze() const {
    KernelAnalysis out;
    out.I = integral();
    if (std::abs(out.I - 1.0) < kCriticalTol) {
        out.regime = Regime::Critical;
    } else if (out.I < 1.0) {
        out.regime = Regime::SubCritical;
    } else {
        out.regime = Regime::SuperCritical;
        out.theta = solve_theta();
        out.m_bar = m_bar(*out.theta);
    }
    return out;
}

namespace reference {
std::vector<double> grid_convolve_serial(const std::vector<double>& f,
                                         const std::vector<double>& g, double h) {
    if (f.size() != g.size()) throw std::domain_error("grid_convolve: size mismatch");
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        if (k >= 1) {
            s += 0.5 * f[0] * g[k];
            for (std::size_t j = 1; j < k; ++j) s += f[j] * g[k - j];
            s += 0.5 * f[k] * g[0];
        }
        out[k] = h * s;
    }
    return out;
}
} // namespace reference

std::vector<double> grid_convolve(const std::vector<double>& f,
                                  const std::vector<double>& g, double h) {
    if (f.size() != g.size()) throw std::domain_error("grid_convolve: size mismatch");
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(static) num_threads(threads())
    for (std::ptrdiff_t kk = 0; kk < static_cast<std::ptrdiff_t>(n); ++kk) {
        const std::size_t k = static_cast<std::size_t>(kk);
        double s = 0.0;
        if (k >= 1) {
            s += 0.5 * f[0] * g[k];
            for (std::size_t j = 1; j < k; ++j) s += f[j] * g[k - j];
            s += 0.5 * f[k] * g[0];
        }
        out[k] = h * s;
    }
    return out;
}

std::vector<double> conv_power_phi(const TemporalKernel& k, int n, double h, int steps) {
    if (n < 1) throw std::domain_error("conv_power_phi: n must be >= 1");
    if (!(h > 0.0)) throw std::domain_error("conv_power_phi: step must be positive");
    std::vector<double> phi(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) phi[static_cast<std::size_t>(i)] = k.eval(i * h);
    std::vector<double> out = phi;
    for (int m = 1; m < n; ++m) out = grid_convolve(out, phi, h);
    return out;
}

} // namespace hawkes
