#include "hypervort/io.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace hypervort {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)fnv1a64(bytes));
    return buf;
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_path_records_csv(std::ostream& os, const std::vector<PathRecord>& records) {
    os << "path_id,t,energy,enstrophy,h1,h2,l3\n";
    for (const auto& rec : records)
        for (std::size_t i = 0; i < rec.times.size(); ++i) {
            const Observables& o = rec.observables[i];
            os << rec.path_id << ',' << fmt(rec.times[i]) << ',' << fmt(o.energy) << ','
               << fmt(o.enstrophy) << ',' << fmt(o.h1) << ',' << fmt(o.h2) << ',' << fmt(o.l3)
               << '\n';
        }
}

void write_scan_csv(std::ostream& os, const RegularityScanResult& scan) {
    os << "b,c,a,n,paths,mean_sq,stderr,exact,mc_slope,exact_slope\n";
    for (const auto& row : scan.rows) {
        double mc_slope = 0, exact_slope = 0;
        for (const auto& s : scan.slopes)
            if (s.b == row.b && s.c == row.c) {
                mc_slope = s.mc_slope;
                exact_slope = s.exact_slope;
            }
        os << fmt(row.b) << ',' << fmt(row.c) << ',' << fmt(scan.a) << ',' << row.n << ','
           << scan.paths << ',' << fmt(row.mean_sq) << ',' << fmt(row.std_err) << ','
           << fmt(row.exact) << ',' << fmt(mc_slope) << ',' << fmt(exact_slope) << '\n';
    }
}

void write_finiteness_csv(std::ostream& os, const std::vector<FinitenessRow>& rows) {
    os << "n,mean_integral,stderr\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt(r.mean_integral) << ',' << fmt(r.std_err) << '\n';
}

std::string law_report_json(const LawComparisonReport& rep, const ExperimentConfig& cfg) {
    json j;
    j["schema_version"] = 1;
    j["paths"] = rep.paths;
    j["t_final"] = rep.t_final;
    j["sign_convention"] = rep.sign;
    j["e_w"] = rep.e_w;
    j["e_w_stderr"] = rep.e_w_stderr;
    j["e_w_z"] = rep.e_w_z;
    j["effective_sample_size"] = rep.ess;
    j["blowups"] = {{"direct", rep.direct_blowups}, {"weighted", rep.weighted_blowups}};
    json obs = json::array();
    for (const auto& oc : rep.observables) {
        obs.push_back({{"name", oc.name},
                       {"direct_mean", oc.direct_mean},
                       {"direct_stderr", oc.direct_stderr},
                       {"weighted_mean", oc.weighted_mean},
                       {"weighted_stderr", oc.weighted_stderr},
                       {"combined_stderr", oc.combined_stderr},
                       {"z", oc.z},
                       {"pass_3sigma", oc.pass_3sigma}});
    }
    j["observables"] = obs;
    j["pass"] = rep.pass;
    j["config"] = config_to_text(cfg);
    return j.dump(2) + "\n";
}

void write_law_report_csv(std::ostream& os, const LawComparisonReport& rep) {
    os << "name,direct_mean,direct_stderr,weighted_mean,weighted_stderr,z,pass_3sigma\n";
    for (const auto& oc : rep.observables)
        os << oc.name << ',' << fmt(oc.direct_mean) << ',' << fmt(oc.direct_stderr) << ','
           << fmt(oc.weighted_mean) << ',' << fmt(oc.weighted_stderr) << ',' << fmt(oc.z) << ','
           << (oc.pass_3sigma ? "true" : "false") << '\n';
}

void write_martingale_csv(std::ostream& os, const std::vector<MartingalePoint>& points) {
    os << "t,e_w,stderr\n";
    for (const auto& p : points)
        os << fmt(p.t) << ',' << fmt(p.e_w) << ',' << fmt(p.std_err) << '\n';
}

std::string manifest_json(const ExperimentConfig& cfg, const std::string& subcommand,
                          int threads, const std::vector<ManifestEntry>& outputs) {
    json j;
    j["tool"] = "hypervort";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    char stamp[64];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["created_utc"] = stamp;
    j["master_seed"] = cfg.sim.seed;
    j["threads"] = threads;
    j["config"] = config_to_text(cfg);
    json outs = json::array();
    for (const auto& e : outputs)
        outs.push_back({{"file", e.file}, {"bytes", e.bytes}, {"fnv1a64", e.digest}});
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

std::string blowup_diag_json(const std::vector<BlowUpInfo>& blowups) {
    json j;
    j["blowups"] = json::array();
    for (const auto& b : blowups) {
        json history = json::array();
        // Keep the tail; the early history is rarely diagnostic.
        const std::size_t keep = 64;
        const std::size_t start = b.history.size() > keep ? b.history.size() - keep : 0;
        for (std::size_t i = start; i < b.history.size(); ++i) history.push_back(b.history[i]);
        j["blowups"].push_back({{"path_id", b.path_id},
                                {"t", b.t},
                                {"l2_norm", b.norm},
                                {"l2_history_tail", history}});
    }
    return j.dump(2) + "\n";
}

void emit_file(const std::string& dir, const std::string& name, const std::string& bytes,
               std::vector<ManifestEntry>& entries) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
    out.close();
    entries.push_back({name, bytes.size(), digest_hex(bytes)});
}

}  // namespace hypervort
