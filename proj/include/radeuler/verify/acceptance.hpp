#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace radeuler::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;     ///< measured quantities against their thresholds
    double seconds = 0.0;
    double limit_seconds = 0.0;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<CriterionResult()> evaluate;
};

/// The ten acceptance criteria, in order.
const std::vector<Criterion>& acceptance_criteria();

/// Runs the selected criteria (all when empty). A criterion that throws is
/// reported as failed with the exception text; exceeding the runtime limit
/// also fails it.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

/// "PASS  3  name: detail [1.23 s / 30 s]"
std::string format_result(const CriterionResult& r);

/// Prints one line per result plus a closing tally; returns true when all passed.
bool print_report(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace radeuler::verify
