#ifndef HYPERVORT_SELFCHECK_HPP
#define HYPERVORT_SELFCHECK_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace hypervort {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // worst observed defect vs. threshold
};

// The invariant battery behind `hypervort check`: frame geometry, transform
// round trips, Parseval, projections, calculus identities, nonlinearity
// cross-checks, OU moments, determinism. Fixed seeds, a few seconds total.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed);

// Prints one line per check; returns true when everything passed.
bool report_selfcheck(std::ostream& os, std::uint64_t seed);

}  // namespace hypervort

#endif
