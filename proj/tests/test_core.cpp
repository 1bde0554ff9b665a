#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hawkes/fft.hpp"
#include "hawkes/quadrature.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/special.hpp"
#include "hawkes/summation.hpp"

using namespace hawkes;

namespace {

// brute-force zeta(s, q): direct sum plus integral tail, independent of the
// Euler-Maclaurin path under test
double zeta_brute(double s, double q) {
    const long N = 2000000;
    // Kahan compensation: two million terms would otherwise lose ~1e-10
    double sum = 0.0, comp = 0.0;
    for (long n = N - 1; n >= 0; --n) {
        const double y = std::pow(n + q, -s) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // tail sum_{n>=N} (n+q)^{-s} = integral + half-term + B2 correction
    const double a = N + q;
    return sum + std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s) +
           s / 12.0 * std::pow(a, -s - 1.0);
}

std::vector<cplx> dft_naive(const std::vector<cplx>& x, bool inverse) {
    const std::size_t n = x.size();
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> out(n, cplx(0, 0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j * k) /
                               static_cast<double>(n);
            out[k] += x[j] * cplx(std::cos(ang), std::sin(ang));
        }
    if (inverse)
        for (auto& z : out) z /= static_cast<double>(n);
    return out;
}

} // namespace

TEST_CASE("riemann and hurwitz zeta against brute force") {
    for (double s : {1.25, 1.5, 2.0, 2.5, 4.0, 5.0})
        CHECK(riemann_zeta(s) == doctest::Approx(zeta_brute(s, 1.0)).epsilon(1e-12));
    CHECK(riemann_zeta(2.0) ==
          doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-14));
    CHECK(riemann_zeta(4.0) ==
          doctest::Approx(std::pow(std::numbers::pi, 4) / 90.0).epsilon(1e-14));
    for (double s : {1.25, 2.5, 3.5})
        for (double q : {0.25, 0.75, 1.5, 17.0})
            CHECK(hurwitz_zeta(s, q) == doctest::Approx(zeta_brute(s, q)).epsilon(1e-11));
    CHECK(riemann_zeta(51.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(riemann_zeta(1.0));
    CHECK_THROWS(hurwitz_zeta(2.0, -1.0));
}

TEST_CASE("fft matches the naive DFT and round-trips") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {std::size_t{4}, std::size_t{8}, std::size_t{7}, std::size_t{12},
                          std::size_t{37}, std::size_t{101}}) {
        std::vector<cplx> x(n);
        for (auto& z : x) z = cplx(u(gen), u(gen));
        const auto fast = dft(x, false);
        const auto slow = dft_naive(x, false);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(fast[i] - slow[i]) < 1e-10);
        const auto back = dft(fast, true);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-12);
    }
}

TEST_CASE("convolutions: fft vs naive") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> a(13), b(13);
    for (auto& v : a) v = u(gen);
    for (auto& v : b) v = u(gen);

    const auto c = circular_convolve(a, b);
    for (std::size_t m = 0; m < a.size(); ++m) {
        double ref = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j)
            ref += a[j] * b[(m + a.size() - j) % a.size()];
        CHECK(c[m] == doctest::Approx(ref).epsilon(1e-12));
    }

    const auto l = linear_convolve_fft(a, b);
    REQUIRE(l.size() == a.size() + b.size() - 1);
    for (std::size_t m = 0; m < l.size(); ++m) {
        double ref = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (m >= j && m - j < b.size()) ref += a[j] * b[m - j];
        CHECK(l[m] == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("adaptive quadrature on closed forms") {
    CHECK(integrate_adaptive([](double x) { return x * x * x; }, 0.0, 2.0) ==
          doctest::Approx(4.0).epsilon(1e-13));
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_exp_tail([](double t) { return std::exp(-t); }, 0.0, 1.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(integrate_exp_tail([](double t) { return t * std::exp(-2.0 * t); }, 0.0, 1.0, 1.5) ==
          doctest::Approx(0.25).epsilon(1e-11));
}

TEST_CASE("aitken accelerates alternating series") {
    std::vector<double> partial;
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
        s += (k % 2 ? 1.0 : -1.0) / k;
        partial.push_back(s);
    }
    CHECK(aitken_accelerate(partial) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("philox streams are deterministic and separated") {
    CounterRng a(42, CounterRng::stream_id(1, 2, 3));
    CounterRng b(42, CounterRng::stream_id(1, 2, 3));
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    CounterRng a2(42, CounterRng::stream_id(1, 2, 3));
    CounterRng c(42, CounterRng::stream_id(1, 2, 4));
    bool differs = false;
    for (int i = 0; i < 10; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);

    CounterRng r(123, 5);
    const int n = 200000;
    double m1 = 0, m2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = r.uniform();
        REQUIRE(x >= 0.0);
        REQUIRE(x < 1.0);
        m1 += x;
        m2 += x * x;
    }
    m1 /= n;
    m2 /= n;
    CHECK(m1 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(m2 - m1 * m1 == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("poisson and exponential samplers hit their moments") {
    CounterRng r(9, 1);
    const int n = 100000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < n; ++i) {
        const int k = r.poisson(2.5);
        sum += k;
        sumsq += static_cast<double>(k) * k;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(mean == doctest::Approx(2.5).epsilon(0.02));
    CHECK(var == doctest::Approx(2.5).epsilon(0.05));
    CHECK(r.poisson(0.0) == 0);

    double esum = 0;
    for (int i = 0; i < n; ++i) esum += r.exponential(4.0);
    CHECK(esum / n == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("pairwise summation matches long-double reference") {
    std::vector<double> v(10001);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = 1e-8 * std::sin(0.1 * static_cast<double>(i)) + 1.0;
    long double ref = 0.0L;
    for (double x : v) ref += static_cast<long double>(x);
    CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
}
