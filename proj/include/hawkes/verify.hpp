#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/csv.hpp"

namespace hawkes {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    std::vector<std::string> files_written;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Canned verification plans for the sub-critical linear-growth law, the
// super-critical exponential-growth law, and the stable-law limit suite.
// Writes one CSV per suite into out_dir. quick shrinks replica counts and
// walk sizes (used for fast reproducibility comparisons); the thresholds are
// only asserted on the full profile.
VerifyReport run_verify(const std::string& out_dir, std::uint64_t seed, bool quick,
                        bool emit_svg);

} // namespace hawkes
