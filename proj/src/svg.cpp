#include "hawkes/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 150, kMarginT = 40, kMarginB = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

void emit_svg_lines(const std::vector<Series>& series, const std::string& path, SvgScale scale,
                    const std::string& title, std::uint64_t seed, std::uint64_t config_hash) {
    if (series.empty()) throw std::domain_error("emit_svg_lines: no series");
    for (const auto& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::domain_error("emit_svg_lines: series '" + s.name + "' is empty or ragged");
        for (double v : s.x)
            if (!std::isfinite(v))
                throw std::domain_error("emit_svg_lines: non-finite x in series '" + s.name + "'");
        for (double v : s.y) {
            if (!std::isfinite(v))
                throw std::domain_error("emit_svg_lines: non-finite y in series '" + s.name + "'");
            if (scale == SvgScale::LogY && !(v > 0.0))
                throw std::domain_error("emit_svg_lines: log scale needs positive y, series '" +
                                        s.name + "'");
        }
    }

    double xmin = series[0].x[0], xmax = xmin;
    double ymin = series[0].y[0], ymax = ymin;
    for (const auto& s : series) {
        for (double v : s.x) {
            xmin = std::min(xmin, v);
            xmax = std::max(xmax, v);
        }
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    const auto ty = [&](double v) { return scale == SvgScale::LogY ? std::log10(v) : v; };
    double lo = ty(ymin), hi = ty(ymax);
    if (hi == lo) hi = lo + 1.0;
    lo -= 0.05 * (hi - lo);
    hi += 0.05 * (hi - lo);

    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    const auto px = [&](double v) { return kMarginL + (v - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double v) { return kMarginT + ph - (ty(v) - lo) / (hi - lo) * ph; };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("emit_svg_lines: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    {
        char meta[128];
        std::snprintf(meta, sizeof(meta),
                      "<!-- hawkes-longrange v0.1.0 seed=%llu config-hash=%016llx -->\n",
                      static_cast<unsigned long long>(seed),
                      static_cast<unsigned long long>(config_hash));
        out << meta;
    }
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    if (!title.empty())
        out << "<text x=\"" << kMarginL << "\" y=\"24\" font-family=\"monospace\" font-size=\"14\">"
            << title << "</text>\n";

    // axes
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT + ph << "\" x2=\""
        << kMarginL + pw << "\" y2=\"" << kMarginT + ph << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << kMarginT << "\" x2=\"" << kMarginL
        << "\" y2=\"" << kMarginT + ph << "\" stroke=\"black\"/>\n";

    const int n_ticks = 6;
    for (int i = 0; i <= n_ticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / n_ticks;
        const double gx = px(fx);
        out << "<line x1=\"" << num(gx) << "\" y1=\"" << kMarginT + ph << "\" x2=\"" << num(gx)
            << "\" y2=\"" << kMarginT + ph + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(gx) << "\" y=\"" << kMarginT + ph + 20
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << num(fx)
            << "</text>\n";
        const double fy = lo + (hi - lo) * i / n_ticks;
        const double gy = kMarginT + ph - (fy - lo) / (hi - lo) * ph;
        const double label = scale == SvgScale::LogY ? std::pow(10.0, fy) : fy;
        out << "<line x1=\"" << kMarginL - 5 << "\" y1=\"" << num(gy) << "\" x2=\"" << kMarginL
            << "\" y2=\"" << num(gy) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << num(gy + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" << num(label)
            << "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << (i ? " " : "") << num(px(s.x[i])) << "," << num(py(s.y[i]));
        out << "\"/>\n";
        const double ly = kMarginT + 16.0 * static_cast<double>(si);
        out << "<line x1=\"" << kMarginL + pw + 8 << "\" y1=\"" << num(ly + 11) << "\" x2=\""
            << kMarginL + pw + 28 << "\" y2=\"" << num(ly + 11) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << kMarginL + pw + 32 << "\" y=\"" << num(ly + 15)
            << "\" font-family=\"monospace\" font-size=\"11\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw ConfigError("emit_svg_lines: write failed for " + path);
}

} // namespace hawkes
