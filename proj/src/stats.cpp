#include "hawkes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkes/summation.hpp"

namespace hawkes {

SampleSummary summarize(const std::vector<double>& v) {
    SampleSummary s;
    s.n = v.size();
    if (s.n == 0) return s;
    s.mean = pairwise_sum(v) / static_cast<double>(s.n);
    if (s.n > 1) {
        std::vector<double> sq(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double d = v[i] - s.mean;
            sq[i] = d * d;
        }
        s.stddev = std::sqrt(pairwise_sum(sq) / static_cast<double>(s.n - 1));
        s.stderr_mean = s.stddev / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    // Stephens' small-sample correction to the asymptotic distribution
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return {d, kolmogorov_q(lambda)};
}

} // namespace hawkes
