#ifndef HYPERVORT_IO_HPP
#define HYPERVORT_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypervort/config.hpp"
#include "hypervort/girsanov.hpp"
#include "hypervort/noise.hpp"

namespace hypervort {

inline constexpr const char* kVersion = "1.0.0";

// FNV-1a 64-bit content digest, rendered as 16 hex digits.
std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_hex(const std::string& bytes);

// PathRecord table, RFC-4180 style. Header:
// path_id,t,energy,enstrophy,h1,h2,l3
void write_path_records_csv(std::ostream& os, const std::vector<PathRecord>& records);

// Regularity scan table. Header:
// b,c,a,n,paths,mean_sq,stderr,exact,mc_slope,exact_slope
void write_scan_csv(std::ostream& os, const RegularityScanResult& scan);

// Finiteness table. Header: n,mean_integral,stderr
void write_finiteness_csv(std::ostream& os, const std::vector<FinitenessRow>& rows);

// Law comparison, JSON report and flat CSV
// (name,direct_mean,direct_stderr,weighted_mean,weighted_stderr,z,pass_3sigma).
std::string law_report_json(const LawComparisonReport& rep, const ExperimentConfig& cfg);
void write_law_report_csv(std::ostream& os, const LawComparisonReport& rep);

// Martingale series. Header: t,e_w,stderr
void write_martingale_csv(std::ostream& os, const std::vector<MartingalePoint>& points);

struct ManifestEntry {
    std::string file;
    std::size_t bytes = 0;
    std::string digest;
};

// Run manifest: config snapshot, version, seed, timestamp, emitted files
// with digests. Re-running the same (config, seed) reproduces the digests.
std::string manifest_json(const ExperimentConfig& cfg, const std::string& subcommand,
                          int threads, const std::vector<ManifestEntry>& outputs);

// Blow-up diagnostics (.diag.json payload).
std::string blowup_diag_json(const std::vector<BlowUpInfo>& blowups);

// Writes bytes to dir/name and appends the manifest entry.
void emit_file(const std::string& dir, const std::string& name, const std::string& bytes,
               std::vector<ManifestEntry>& entries);

}  // namespace hypervort

#endif
