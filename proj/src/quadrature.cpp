#include "hawkes/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

double rec_integrate(const std::function<double(double)>& f, double a, double b,
                     double tol, double whole_scale, int depth) {
    PanelResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= 1e-16 * whole_scale || depth >= 40)
        return r.integral;
    const double mid = 0.5 * (a + b);
    return rec_integrate(f, a, mid, 0.5 * tol, whole_scale, depth + 1) +
           rec_integrate(f, mid, b, 0.5 * tol, whole_scale, depth + 1);
}

} // namespace

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    // Gauss nodes are the odd-index Kronrod nodes
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    return {resk * h, std::abs((resk - resg) * h)};
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol) {
    if (a == b) return 0.0;
    PanelResult first = gk15(f, a, b);
    const double scale = std::max(std::abs(first.integral), 1e-300);
    const double tol = std::max(abs_tol, rel_tol * scale);
    if (first.error <= tol) return first.integral;
    return rec_integrate(f, a, b, tol, scale, 0);
}

double integrate_exp_tail(const std::function<double(double)>& f, double a,
                          double envelope_C, double envelope_lambda,
                          double rel_tol) {
    if (!(envelope_lambda > 0.0))
        throw std::domain_error("integrate_exp_tail: needs a positive decay rate");

    double T = a + std::max(1.0, 10.0 / envelope_lambda);
    double est = integrate_adaptive(f, a, T, rel_tol);
    for (int iter = 0; iter < 60; ++iter) {
        const double tail = envelope_C / envelope_lambda * std::exp(-envelope_lambda * T);
        if (tail <= std::max(1e-300, rel_tol * std::abs(est))) break;
        const double T2 = 2.0 * T;
        est += integrate_adaptive(f, T, T2, rel_tol);
        T = T2;
    }
    return est;
}

double aitken_accelerate(std::vector<double> s) {
    if (s.empty()) return 0.0;
    double best = s.back();
    while (s.size() >= 3) {
        std::vector<double> next;
        next.reserve(s.size() - 2);
        for (std::size_t i = 0; i + 2 < s.size(); ++i) {
            const double d1 = s[i + 1] - s[i];
            const double d2 = s[i + 2] - 2.0 * s[i + 1] + s[i];
            if (std::abs(d2) < 1e-300) {
                next.push_back(s[i + 2]);
            } else {
                next.push_back(s[i + 2] - (s[i + 2] - s[i + 1]) * (s[i + 2] - s[i + 1]) / d2);
            }
        }
        s = std::move(next);
        best = s.back();
    }
    return best;
}

} // namespace hawkes
