#include "hawkes/stable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hawkes/errors.hpp"
#include "hawkes/fft.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/quadrature.hpp"
#include "hawkes/special.hpp"
#include "hawkes/summation.hpp"

namespace hawkes {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0) || std::abs(alpha - 1.0) < 1e-12)
        throw std::domain_error("stable: alpha must lie in (0,2) excluding 1");
}

// int_a^inf env(u) cos(u y) du for a smooth decreasing envelope, by panels
// between consecutive zeros of the cosine with Aitken acceleration of the
// alternating partial sums.
double oscillatory_cos_integral(const std::function<double(double)>& env, double a, double y) {
    const double pi = std::numbers::pi;
    y = std::abs(y);
    const int max_panels = 96;
    std::vector<double> partial;
    partial.reserve(static_cast<std::size_t>(max_panels));
    double sum = 0.0;
    double left = a;
    // first zero of cos(uy) at or after a
    double z = (std::floor(a * y / pi - 0.5) + 1.5) * pi / y;
    if (z <= left) z += pi / y;
    for (int kpanel = 0; kpanel < max_panels; ++kpanel) {
        const double s = gk15([&](double u) { return env(u) * std::cos(u * y); }, left, z).integral;
        sum += s;
        partial.push_back(sum);
        left = z;
        z += pi / y;
        if (env(left) < 1e-18 && kpanel > 2) return sum; // envelope exhausted
        if (kpanel > 6 && std::abs(s) < 1e-16 * std::abs(sum)) return sum;
    }
    return aitken_accelerate(partial);
}

} // namespace

StableDensity::StableDensity(double alpha, double c_scale) : alpha_(alpha), c_(c_scale) {
    check_alpha(alpha);
    if (!(c_scale > 0.0)) throw std::domain_error("stable: scale must be positive");
}

double StableDensity::calibrated_scale(double alpha) {
    check_alpha(alpha);
    // J = 2 int_0^inf (1 - cos u)/u^{1+alpha} du, split at u = 1:
    //  - [0,1] by the entire cosine series (exact, fast, no endpoint issue)
    //  - [1,inf) = 1/alpha - int_1^inf cos(u) u^{-1-alpha} du
    double head = 0.0;
    double fact = 1.0; // (2k)!
    double sign = 1.0;
    for (int k = 1; k <= 40; ++k) {
        fact *= (2.0 * k - 1.0) * (2.0 * k);
        const double term = sign / (fact * (2.0 * k - alpha));
        head += term;
        sign = -sign;
        if (std::abs(term) < 1e-18 * std::abs(head)) break;
    }
    const double osc = oscillatory_cos_integral(
        [alpha](double u) { return std::pow(u, -1.0 - alpha); }, 1.0, 1.0);
    const double J = 2.0 * (head + 1.0 / alpha - osc);
    const double c_alpha = 1.0 / (2.0 * riemann_zeta(1.0 + alpha));
    return std::pow(c_alpha * J, 1.0 / alpha);
}

StableDensity StableDensity::calibrated(double alpha) {
    return StableDensity(alpha, calibrated_scale(alpha));
}

double StableDensity::pdf(double x) const {
    // substitute u = c t: p_1(x) = (1/(pi c)) int_0^inf e^{-u^alpha} cos(u y) du,
    // with y = |x| / c
    const double y = std::abs(x) / c_;
    const double alpha = alpha_;
    const auto env = [alpha](double u) { return std::exp(-std::pow(u, alpha)); };
    // envelope is below 1e-18 past this point
    const double u_star = std::pow(41.5, 1.0 / alpha);
    double val;
    if (y * u_star < 1.5) {
        // no oscillation before the envelope dies
        val = integrate_adaptive([&](double u) { return env(u) * std::cos(u * y); }, 0.0,
                                 u_star, 1e-12);
    } else {
        // initial segment up to the first zero, then alternating panels
        const double z1 = 0.5 * std::numbers::pi / y;
        val = integrate_adaptive([&](double u) { return env(u) * std::cos(u * y); }, 0.0,
                                 std::min(z1, u_star), 1e-12);
        if (z1 < u_star * 1.2) val += oscillatory_cos_integral(env, z1, y);
    }
    return std::max(val / (std::numbers::pi * c_), 0.0);
}

double StableDensity::pdf_scaled(int n, double x) const {
    if (n < 1) throw std::domain_error("stable_pdf_scaled: n must be >= 1");
    const double r = std::pow(static_cast<double>(n), -1.0 / alpha_);
    return r * pdf(x * r);
}

std::pair<double, double> StableDensity::lipschitz_bound(const std::vector<double>& grid) const {
    if (grid.size() < 2) throw std::domain_error("lipschitz_bound: need at least 2 grid points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::domain_error("lipschitz_bound: grid must be sorted increasing");
    std::vector<double> vals(grid.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i)
        vals[static_cast<std::size_t>(i)] = pdf(grid[static_cast<std::size_t>(i)]);
    double sup = 0.0, lip = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        sup = std::max(sup, vals[i]);
        if (i > 0)
            lip = std::max(lip, std::abs(vals[i] - vals[i - 1]) / (grid[i] - grid[i - 1]));
    }
    return {sup, lip};
}

std::vector<double> StableDensity::pdf_scaled_on_integers(int n, int M) const {
    if (n < 1 || M < 0) throw std::domain_error("pdf_scaled_on_integers: bad arguments");
    const double r = std::pow(static_cast<double>(n), -1.0 / alpha_); // n^{-1/alpha}
    const double y_max = (M + 1) * r;

    // Graded evaluation grid in y: dense where the density is sharply curved
    // (near 0), loose linear mid-range, log-spaced power-law tail.
    std::vector<double> ys;
    const double y_dense_end = std::min(4.0, y_max);
    for (double y = 0.0; y < y_dense_end; y += 2.5e-4) ys.push_back(y);
    if (y_max > 4.0) {
        const double y_mid_end = std::min(64.0, y_max);
        for (double y = 4.0; y < y_mid_end; y += 2e-3) ys.push_back(y);
        if (y_max > 64.0) {
            const int n_log = 3000;
            const double lo = std::log(64.0), hi = std::log(y_max * 1.0000001);
            for (int i = 0; i <= n_log; ++i)
                ys.push_back(std::exp(lo + (hi - lo) * i / n_log));
        }
    }
    ys.push_back(y_max * 1.0000002);

    // table parameterized by the physical argument x = j n^{-1/alpha}
    std::vector<double> table(ys.size());
#pragma omp parallel for schedule(dynamic, 32) num_threads(threads())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(ys.size()); ++i)
        table[static_cast<std::size_t>(i)] = pdf(ys[static_cast<std::size_t>(i)]);

    std::vector<double> out(static_cast<std::size_t>(M) + 1);
    std::size_t pos = 0;
    for (int j = 0; j <= M; ++j) {
        const double y = j * r;
        while (pos + 2 < ys.size() && ys[pos + 1] <= y) ++pos;
        const double y0 = ys[pos], y1 = ys[pos + 1];
        const double f0 = table[pos], f1 = table[pos + 1];
        double v;
        if (y0 > 64.0 && f0 > 0.0 && f1 > 0.0) {
            // power-law tail: interpolate linearly in log-log
            const double t = (std::log(y) - std::log(y0)) / (std::log(y1) - std::log(y0));
            v = std::exp(std::log(f0) + t * (std::log(f1) - std::log(f0)));
        } else {
            const double t = (y - y0) / (y1 - y0);
            v = f0 + t * (f1 - f0);
        }
        out[static_cast<std::size_t>(j)] = r * v;
    }
    return out;
}

WalkDistribution walk_pmf(double alpha, int n, int M, double max_deficit) {
    check_alpha(alpha);
    if (n < 1) throw std::domain_error("walk_pmf: n must be >= 1");
    if (M < n) throw std::domain_error("walk_pmf: needs M >= n for support control");

    const double s = 1.0 + alpha;
    const double c = 1.0 / (2.0 * riemann_zeta(s));

    // Ring with a half-window guard so that wrap-around pollution inside the
    // window stays far below the reported masses.
    const std::size_t ring = next_pow2(3 * static_cast<std::size_t>(M) + 2);
    std::vector<cplx> a(ring, cplx(0, 0));
    for (int d = 1; d <= M; ++d) {
        const double mass = c * std::pow(static_cast<double>(d), -s);
        a[static_cast<std::size_t>(d)] += cplx(mass, 0.0);
        a[ring - static_cast<std::size_t>(d)] += cplx(mass, 0.0);
    }
    fft_pow2(a, false);
    for (auto& z : a) {
        // the step pmf is real and even, so the spectrum is real
        z = cplx(std::pow(z.real(), n), 0.0);
    }
    fft_pow2(a, true);

    WalkDistribution out;
    out.alpha = alpha;
    out.n = n;
    out.M = M;
    out.masses.assign(2 * static_cast<std::size_t>(M) + 1, 0.0);
    for (int j = -M; j <= M; ++j) {
        const std::size_t idx = static_cast<std::size_t>((j % static_cast<long>(ring) +
                                                          static_cast<long>(ring)) %
                                                         static_cast<long>(ring));
        out.masses[static_cast<std::size_t>(j + M)] = a[idx].real();
    }
    out.deficit = 1.0 - pairwise_sum(out.masses);
    if (out.deficit > max_deficit)
        throw AccuracyError("walk_pmf: window too small, deficit " + std::to_string(out.deficit) +
                            " exceeds " + std::to_string(max_deficit));
    return out;
}

LltResult llt_errors(double alpha, int n, int M, double max_deficit) {
    const WalkDistribution walk = walk_pmf(alpha, n, M, max_deficit);
    const StableDensity d = StableDensity::calibrated(alpha);
    const std::vector<double> pn = d.pdf_scaled_on_integers(n, M);

    // fixed-size chunks: per-chunk partials are summed pairwise afterwards,
    // so the result does not depend on the thread count
    const int chunk = 4096;
    const int n_chunks = (2 * M + 1 + chunk - 1) / chunk;
    std::vector<double> tv_part(static_cast<std::size_t>(n_chunks), 0.0);
    std::vector<double> sup_part(static_cast<std::size_t>(n_chunks), 0.0);
#pragma omp parallel for schedule(static) num_threads(threads())
    for (int ci = 0; ci < n_chunks; ++ci) {
        double tv = 0.0, sup = 0.0;
        const int lo = ci * chunk - M;
        const int hi = std::min(lo + chunk - 1, M);
        for (int j = lo; j <= hi; ++j) {
            const double diff =
                std::abs(walk.mass_at(j) - pn[static_cast<std::size_t>(std::abs(j))]);
            tv += diff;
            sup = std::max(sup, diff);
        }
        tv_part[static_cast<std::size_t>(ci)] = tv;
        sup_part[static_cast<std::size_t>(ci)] = sup;
    }

    LltResult r;
    r.deficit = walk.deficit;
    r.c_scale = d.scale();
    r.sup_error = *std::max_element(sup_part.begin(), sup_part.end());
    r.rescaled_sup_error = std::pow(static_cast<double>(n), 1.0 / alpha) * r.sup_error;
    r.tv_error = pairwise_sum(tv_part) + walk.deficit;
    return r;
}

double llt_sup_error(double alpha, int n, int M, double max_deficit) {
    return llt_errors(alpha, n, M, max_deficit).sup_error;
}

double llt_tv_error(double alpha, int n, int M, double max_deficit) {
    return llt_errors(alpha, n, M, max_deficit).tv_error;
}

} // namespace hawkes
