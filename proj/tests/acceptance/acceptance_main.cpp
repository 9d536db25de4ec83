// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion.

#include <cstdio>

#include "subclassical/verification.hpp"

int main() {
    const auto results = subclassical::run_verification_suite();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("%s  %-45s [%7.1f ms]  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.millis, r.detail.c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - failures, results.size());
    return failures == 0 ? 0 : 1;
}
