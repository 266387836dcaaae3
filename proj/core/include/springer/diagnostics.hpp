#pragma once

#include <string>
#include <vector>

namespace springer {

/// Outcome of a multi-condition membership test: overall verdict, the worst
/// residual seen, and which condition broke first (empty when none did).
struct FlagCheck {
    bool ok = false;
    double worst_residual = 0.0;
    std::string first_violation;

    explicit operator bool() const noexcept { return ok; }
};

/// Residual of one cup constraint of a matching-indexed membership test.
struct CupResidual {
    int left = 0;
    int right = 0;
    double residual = 0.0;
};

/// Membership verdict with per-cup diagnostics, so a harness can report
/// worst offenders instead of a bare boolean.
struct ComponentCheck {
    bool ok = false;
    double worst_residual = 0.0;
    std::vector<CupResidual> cups;

    explicit operator bool() const noexcept { return ok; }
};

} // namespace springer
