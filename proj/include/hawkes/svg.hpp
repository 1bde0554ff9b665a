#pragma once

#include <string>
#include <vector>

namespace hawkes {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

enum class SvgScale { Linear, LogY };

// Self-contained deterministic SVG line plot: axes, tick labels, legend.
// Non-finite values, or nonpositive y under LogY, raise a data error naming
// the offending series. The metadata comment (version, seed, config hash)
// mirrors the CSV header line.
void emit_svg_lines(const std::vector<Series>& series, const std::string& path, SvgScale scale,
                    const std::string& title = "", std::uint64_t seed = 0,
                    std::uint64_t config_hash = 0);

} // namespace hawkes
