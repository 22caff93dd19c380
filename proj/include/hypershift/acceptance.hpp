#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hypershift {

struct CriterionResult {
    std::string id;
    bool passed = false;
    std::string detail;
    /// Negative controls pass when the underlying check fails.
    bool control = false;
    /// Informational lines carry no verdict.
    bool note = false;
};

struct AcceptanceOptions {
    unsigned long seed = 20211;
    /// Restrict to a subset of ids ("A1" ... "A9"); empty runs all.
    std::vector<std::string> only;
};

/// Runs the acceptance criteria in order; `report` is called as each line is ready.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {},
                                            const std::function<void(const CriterionResult&)>& report = {});

/// "PASS A3 ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace hypershift
