#pragma once

#include <vector>

namespace hawkes {

struct SampleSummary {
    double mean = 0;
    double stddev = 0;  // sample standard deviation (n-1)
    double stderr_mean = 0;
    std::size_t n = 0;
};

SampleSummary summarize(const std::vector<double>& v);

// Asymptotic Kolmogorov distribution Q(lambda) = 2 sum (-1)^{k-1} e^{-2k^2 lambda^2}.
double kolmogorov_q(double lambda);

// Two-sample Kolmogorov-Smirnov test; returns (D, p_value). Conservative for
// discrete samples (ties), which is the safe direction for an equivalence gate.
struct KsResult {
    double d = 0;
    double p_value = 0;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

} // namespace hawkes
