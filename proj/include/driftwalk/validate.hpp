#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftwalk/fields.hpp"

namespace dwalk {

/// Result of one invariant check: worst residual and where it happened.
struct CheckResult {
    std::string name;
    bool pass = true;
    double worst_residual = 0.0;
    std::int64_t worst_site = -1;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;

    [[nodiscard]] bool all_pass() const noexcept {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    [[nodiscard]] const CheckResult* check(const std::string& name) const noexcept {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    [[nodiscard]] std::string summary() const;
};

/// Checks the four drift-field invariants on the fully expanded field:
/// edge antisymmetry, zero divergence at every site, |V| <= 1, and zero
/// spatial mean per direction. `tol` applies to divergence and mean
/// residuals (generators emitting dyadic rationals hit exactly 0).
/// Failures are reported, never thrown. Also warns when some site has
/// >= 2d-1 zero rates.
ValidationReport validate_drift(const DriftField& v, double tol = 1e-12);

/// Checks antisymmetry and the two shift symmetries of the expanded tensor.
/// With derived storage these hold exactly; the expand path itself is what
/// is being exercised.
ValidationReport validate_stream(const StreamTensorField& h, double tol = 1e-12);

}  // namespace dwalk
