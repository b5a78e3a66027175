#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tgr::verify {

// One entry of the built-in reproduction suite.  Every tolerance and bound
// quoted in `detail` is pinned inside the criterion itself; callers only
// get the verdict.
struct CriterionResult {
    int id = 0;
    std::string name;   // stable slug, usable as a --only filter
    std::string anchor; // the physical statement the criterion pins down
    bool pass = false;
    std::string detail; // measured numbers next to their pinned bounds
    double seconds = 0.0;
    double budget_seconds = 0.0; // runtime ceiling, part of the verdict
};

int criterion_count(); // 13
std::string criterion_name(int id);
std::string criterion_anchor(int id);

// Run one criterion (1-based).  A given (id, seed) pair is deterministic:
// every random draw comes from the seed.  Never throws; internal errors
// turn into a failed result carrying the diagnostic.
CriterionResult run_criterion(int id, std::uint64_t seed);

// Run several (empty ids = all), collecting failures without aborting.
std::vector<CriterionResult> run_suite(const std::vector<int>& ids,
                                       std::uint64_t seed);

// Resolve a filter token to criterion ids: an integer selects that id, any
// other token selects every criterion whose name contains it.  Unknown
// tokens yield an empty list.
std::vector<int> match_criteria(const std::string& token);

// Human-readable table, one PASS/FAIL line per criterion plus a footer.
std::string render_table(const std::vector<CriterionResult>& results);

// Machine-readable report; deterministic field order for byte-stable output.
std::string render_json(const std::vector<CriterionResult>& results,
                        std::uint64_t seed);

} // namespace tgr::verify
