#ifndef TREELAB_ACCEPTANCE_HPP
#define TREELAB_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace treelab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool informational = false;  // recorded, not asserted
    std::string detail;
};

// Runs the full regression battery; every tolerance is pinned in code.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, int threads);

// Prints one PASS/FAIL line per criterion; returns true when all pass.
bool report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace treelab

#endif
