#include "hawkes/special.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {
// B_{2k} / (2k)! for the Euler-Maclaurin correction terms.
constexpr double kBernoulliOverFact[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    7.0 / 523069747200.0,
};
constexpr int kNumCorrections = 7;
} // namespace

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0)) throw std::domain_error("hurwitz_zeta: requires s > 1");
    if (!(q > 0.0)) throw std::domain_error("hurwitz_zeta: requires q > 0");

    // Direct terms up to n = N-1, Euler-Maclaurin tail from N+q.
    const int N = 24;
    double sum = 0.0;
    for (int n = N - 1; n >= 0; --n) sum += std::pow(n + q, -s);

    const double a = N + q;
    sum += std::pow(a, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(a, -s);

    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * a^{-(s+2k-1)}
    double rising = s; // (s)_{2k-1}, starts at k=1
    double apow = std::pow(a, -s - 1.0);
    for (int k = 0; k < kNumCorrections; ++k) {
        sum += kBernoulliOverFact[k] * rising * apow;
        rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
        apow /= a * a;
    }
    return sum;
}

double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

} // namespace hawkes
