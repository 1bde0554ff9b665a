#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "hawkes/fft.hpp"
#include "hawkes/lattice.hpp"
#include "hawkes/special.hpp"

using namespace hawkes;

TEST_CASE("normalization constant") {
    const double pi = std::numbers::pi;
    CHECK(normalization_c(1.0) == doctest::Approx(3.0 / (pi * pi)).epsilon(1e-13));
    CHECK(normalization_c(3.0) == doctest::Approx(45.0 / std::pow(pi, 4)).epsilon(1e-13));
    CHECK(normalization_c(50.0) > 0.4999);
    CHECK(normalization_c(50.0) < 0.5);
    CHECK_THROWS(normalization_c(0.0));
}

TEST_CASE("restricted window row") {
    const LatticeKernel k(1.0, 1, Window::Restricted);
    const double c = normalization_c(1.0);
    CHECK(k.pmf_at(0) == 0.0);
    CHECK(k.pmf_at(1) == doctest::Approx(c));
    CHECK(k.pmf_at(-1) == doctest::Approx(c));
    const double sum = std::accumulate(k.pmf().begin(), k.pmf().end(), 0.0);
    CHECK(sum == doctest::Approx(2.0 * c).epsilon(1e-12)); // ~0.6079
    CHECK(k.tail_mass() == doctest::Approx(1.0 - 2.0 * c).epsilon(1e-9));

    // reported tail equals 2 c zeta(1+alpha, L+1)
    const LatticeKernel k8(1.5, 8, Window::Restricted);
    const double want = 2.0 * normalization_c(1.5) * hurwitz_zeta(2.5, 9.0);
    CHECK(k8.tail_mass() == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("circulant rows are exactly stochastic with empty diagonal") {
    for (double alpha : {0.25, 0.5, 1.0, 1.5, 3.0}) {
        for (int L : {1, 5, 64}) {
            const LatticeKernel k(alpha, L, Window::Circulant);
            CHECK(k.pmf_at(0) == 0.0);
            const double sum = std::accumulate(k.pmf().begin(), k.pmf().end(), 0.0);
            CHECK(std::abs(sum - 1.0) <= 1e-9);
            for (int d = 1; d <= L; ++d) CHECK(k.pmf_at(d) == k.pmf_at(-d));
            // folding adds mass on top of the plain power-law entry
            CHECK(k.pmf_at(L) > k.c_alpha() * std::pow(static_cast<double>(L), -(1.0 + alpha)));
        }
    }
}

TEST_CASE("apply: stochasticity, delta, and path agreement") {
    const LatticeKernel k(1.0, 1, Window::Restricted);
    std::vector<double> ones(3, 1.0);
    const auto y = k.apply(ones);
    CHECK(y[1] == doctest::Approx(2.0 * normalization_c(1.0)).epsilon(1e-12));

    const LatticeKernel kc(0.75, 20, Window::Circulant);
    std::vector<double> onesc(41, 1.0);
    const auto yc = kc.apply(onesc);
    for (double v : yc) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    // delta at the center lands pmf on the neighbors
    const LatticeKernel k2(1.0, 2, Window::Circulant);
    std::vector<double> delta(5, 0.0);
    delta[2] = 1.0;
    const auto yd = k2.apply(delta);
    CHECK(yd[3] == doctest::Approx(k2.pmf_at(1)).epsilon(1e-12));
    CHECK(yd[1] == doctest::Approx(k2.pmf_at(1)).epsilon(1e-12));
    CHECK(yd[2] == doctest::Approx(0.0));

    CHECK_THROWS(k2.apply(std::vector<double>(4, 1.0)));
}

TEST_CASE("fft, direct, and serial application paths agree") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Window w : {Window::Circulant, Window::Restricted}) {
        for (int L : {5, 64, 200}) {
            const LatticeKernel k(1.25, L, w);
            std::vector<double> x(static_cast<std::size_t>(2 * L + 1));
            for (auto& v : x) v = u(gen);
            const auto a = apply_direct(k, x);
            const auto b = apply_fft(k, x);
            const auto c = reference::apply_direct_serial(k, x);
            double scale = 0.0;
            for (double v : a) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(std::abs(a[i] - b[i]) <= 1e-10 * scale);
                CHECK(a[i] == c[i]); // omp vs serial is bit-identical
            }
        }
    }
}

TEST_CASE("power_row basics and Chapman-Kolmogorov") {
    const LatticeKernel k(1.5, 32, Window::Circulant);
    const int N = k.size();

    const auto r0 = k.power_row(0);
    CHECK(r0[32] == 1.0);
    CHECK(std::accumulate(r0.begin(), r0.end(), 0.0) == 1.0);

    const auto r1 = k.power_row(1);
    for (int d = -32; d <= 32; ++d)
        CHECK(r1[static_cast<std::size_t>(d + 32)] ==
              doctest::Approx(k.pmf_at(d)).epsilon(1e-12));

    // n = 2 at displacement 0 equals sum of squared row entries
    const auto r2 = k.power_row(2);
    double want = 0.0;
    for (int d = -32; d <= 32; ++d) want += k.pmf_at(d) * k.pmf_at(d);
    CHECK(r2[32] == doctest::Approx(want).epsilon(1e-11));

    for (int n : {1, 2, 5, 16}) {
        const auto r = k.power_row(n);
        double sum = 0.0;
        for (int j = 0; j < N; ++j) {
            CHECK(r[static_cast<std::size_t>(j)] >= -1e-12);
            sum += r[static_cast<std::size_t>(j)];
        }
        CHECK(std::abs(sum - 1.0) <= 1e-9);
        for (int d = 1; d <= 32; ++d)
            CHECK(r[static_cast<std::size_t>(32 + d)] ==
                  doctest::Approx(r[static_cast<std::size_t>(32 - d)]).epsilon(1e-9));
    }

    // row(m+n) = circular convolution of row(m) and row(n)
    const auto r3 = k.power_row(3);
    const auto r5 = k.power_row(5);
    // rearrange displacement-indexed rows into circular layout for the helper
    const auto to_circ = [N](const std::vector<double>& row) {
        std::vector<double> g(static_cast<std::size_t>(N), 0.0);
        for (int d = -32; d <= 32; ++d)
            g[static_cast<std::size_t>((d % N + N) % N)] = row[static_cast<std::size_t>(d + 32)];
        return g;
    };
    const auto conv = circular_convolve(to_circ(r2), to_circ(r3));
    const auto r5c = to_circ(r5);
    for (int j = 0; j < N; ++j)
        CHECK(std::abs(conv[static_cast<std::size_t>(j)] - r5c[static_cast<std::size_t>(j)]) <=
              1e-9);

    CHECK_THROWS(LatticeKernel(1.5, 4, Window::Restricted).power_row(2));
}

TEST_CASE("power_row(2) at the origin approaches 2 c^2 zeta(2+2alpha)") {
    const LatticeKernel k(1.0, 4096, Window::Circulant);
    const auto r2 = k.power_row(2);
    const double c = normalization_c(1.0);
    CHECK(r2[4096] == doctest::Approx(2.0 * c * c * riemann_zeta(4.0)).epsilon(5e-3));
}

TEST_CASE("row_sq_sup decreasing, bounded rescaled, and below the row sup") {
    const LatticeKernel k(1.5, 512, Window::Circulant);
    const auto eps = k.row_sq_sup(32);
    REQUIRE(eps.size() == 32);
    CHECK(eps[0] > 0.0);
    // eps_1 equals sum pmf^2
    double e1 = 0.0;
    for (int d = -512; d <= 512; ++d) e1 += k.pmf_at(d) * k.pmf_at(d);
    CHECK(eps[0] == doctest::Approx(e1).epsilon(1e-10));
    for (std::size_t n = 1; n < eps.size(); ++n) CHECK(eps[n] < eps[n - 1]);

    // eps_n <= sup_d row_n[d] (the stochasticity chain), with fp slack
    for (int n : {1, 2, 8, 32}) {
        const auto row = k.power_row(n);
        double sup = 0.0, sq = 0.0;
        for (double v : row) {
            sup = std::max(sup, v);
            sq += v * v;
        }
        CHECK(sq <= sup + 1e-12);
        CHECK(eps[static_cast<std::size_t>(n - 1)] == doctest::Approx(sq).epsilon(1e-9));
    }

    // n^{1/alpha} eps_n stays within a narrow band once n is moderate
    double lo = 1e300, hi = 0.0;
    for (int n = 8; n <= 32; ++n) {
        const double v = std::pow(static_cast<double>(n), 1.0 / 1.5) *
                         eps[static_cast<std::size_t>(n - 1)];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo < 2.0);
}

TEST_CASE("mu_average_flow washes out spatial structure") {
    const LatticeKernel k(1.5, 128, Window::Circulant);
    const int N = k.size();

    std::vector<double> ones(static_cast<std::size_t>(N), 1.0);
    auto flow = k.mu_average_flow(ones, 4);
    CHECK(flow.mu_bar == doctest::Approx(1.0));
    for (const auto& it : flow.iterates)
        for (double v : it) CHECK(v == doctest::Approx(1.0).epsilon(1e-11));

    std::vector<double> alt(static_cast<std::size_t>(N), 0.0);
    for (int d = -128; d <= 128; ++d)
        alt[static_cast<std::size_t>(d + 128)] = (std::abs(d) % 2 == 0) ? 1.0 : 0.0;
    auto flow2 = k.mu_average_flow(alt, 32);
    CHECK(flow2.mu_bar == doctest::Approx(129.0 / 257.0));
    double worst = 0.0;
    for (double v : flow2.iterates.back()) worst = std::max(worst, std::abs(v - flow2.mu_bar));
    CHECK(worst < 0.05);
}

TEST_CASE("weighted norm and its contraction under apply") {
    const LatticeKernel k(1.0, 16, Window::Circulant);
    std::vector<double> x(33, 0.0);
    x[16] = 1.0;
    CHECK(k.weighted_norm(x) == 1.0); // p_0 = 1
    std::fill(x.begin(), x.end(), 0.0);
    x[18] = 1.0; // displacement +2
    CHECK(k.weighted_norm(x) == doctest::Approx(0.25)); // p_2 = 2^{-2}

    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double alpha : {0.5, 1.0, 1.5}) {
        const LatticeKernel ka(alpha, 32, Window::Circulant);
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<double> v(65);
            for (auto& w : v) w = u(gen);
            const double before = ka.weighted_norm(v);
            const double after = ka.weighted_norm(ka.apply(v));
            if (before > 1e-12) worst = std::max(worst, after / before);
        }
        CHECK(worst < 10.0); // empirical C_alpha stays finite and modest
        CHECK(worst > 0.0);
    }
}

TEST_CASE("custom pmf hook keeps invariants checkable") {
    std::vector<double> pmf(5, 0.0);
    pmf[1] = 0.5;
    pmf[3] = 0.5;
    const auto k = LatticeKernel::with_custom_pmf(1.0, 2, Window::Circulant, pmf);
    CHECK(k.pmf_at(-1) == 0.5);
    CHECK(k.pmf_at(0) == 0.0);
    CHECK(k.tail_mass() == doctest::Approx(0.0));
}
