#pragma once

#include <functional>
#include <vector>

namespace hawkes {

struct PanelResult {
    double integral;
    double error; // |K15 - G7| estimate
};

// Single Gauss-Kronrod 7-15 panel on [a, b].
PanelResult gk15(const std::function<double(double)>& f, double a, double b);

// Adaptive GK15 on a finite interval. Subdivides until the local error
// estimate is below max(abs_tol_local, rel_tol * |whole|).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double abs_tol = 0.0);

// Integral over [a, inf) of f with a certified envelope |f(t)| <= C e^{-lam t}.
// The horizon is extended until the analytic tail bound (C/lam) e^{-lam T}
// drops below rel_tol * |estimate| (with an absolute floor).
double integrate_exp_tail(const std::function<double(double)>& f, double a,
                          double envelope_C, double envelope_lambda,
                          double rel_tol = 1e-12);

// Iterated Aitken delta-squared acceleration of a sequence of partial sums.
// Returns the top of the cascade table (best available estimate).
double aitken_accelerate(std::vector<double> s);

} // namespace hawkes
