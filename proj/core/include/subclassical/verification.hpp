#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subclassical {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;   // worst observed errors, or the failure reason
    double millis = 0.0;
};

struct VerificationOptions {
    std::uint64_t seed = 42;
    /// Run only criteria whose name contains this substring.
    std::optional<std::string> only;
    /// Perturb an intermediate R matrix to exercise the failure path.
    bool inject_fault = false;
};

/// Run the built-in verification suite; one result per criterion.
std::vector<CriterionResult> run_verification_suite(const VerificationOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace subclassical
