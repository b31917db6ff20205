#ifndef HYPERVORT_CONFIG_HPP
#define HYPERVORT_CONFIG_HPP

#include <string>
#include <utility>
#include <vector>

#include "hypervort/dynamics.hpp"

namespace hypervort {

/// Full experiment description: the simulation core plus the per-subcommand
/// extensions (observable list for the law comparison, scan table for the
/// regularity scan, output options).
struct ExperimentConfig {
    SimConfig sim;

    std::vector<std::string> observables = {"enstrophy", "energy"};

    double scan_a = 2.0;
    std::vector<std::pair<double, double>> scan_bc = {{1.0, 1.0}, {0.0, 0.0}};
    std::vector<int> scan_n = {4, 8, 12, 16};
    int scan_paths = 500;
    double scan_T = 1.0;

    std::vector<int> finiteness_n = {2, 3, 4, 6};
    int finiteness_paths = 100;

    enum class Snapshots { None, Terminal, All };
    Snapshots snapshots = Snapshots::None;

    std::vector<std::string> warnings;  // filled at parse/validate time
};

// Parses the sectioned key-value format ([physics] [noise] [numerics]
// [experiment]). Unknown sections or keys and malformed values raise
// std::invalid_argument naming the offender. Missing keys take the
// documented defaults.
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);
ExperimentConfig parse_config(const std::string& path);

// Subcommand-specific checks; appends warnings (e.g. girsanov outside the
// c > 1/2, b = 1 regime) and throws on hard errors.
void validate_for_subcommand(ExperimentConfig& cfg, const std::string& subcommand);

// The config echoed back in the canonical file format (used by manifests).
std::string config_to_text(const ExperimentConfig& cfg);

}  // namespace hypervort

#endif
