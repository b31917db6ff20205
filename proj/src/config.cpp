#include "hypervort/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hypervort {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_key(const std::string& origin, const std::string& key,
                          const std::string& why) {
    throw std::invalid_argument(origin + ": key '" + key + "': " + why);
}

struct Parsed {
    // section.key -> value, insertion order kept for error reporting
    std::map<std::string, std::string> kv;
    std::string origin;

    bool has(const std::string& k) const { return kv.count(k) > 0; }

    template <typename F>
    void take(const std::string& k, const F& f) {
        const auto it = kv.find(k);
        if (it == kv.end()) return;
        f(it->second);
        kv.erase(it);
    }

    double to_double(const std::string& k, const std::string& v) const {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing characters");
            return x;
        } catch (const std::exception&) {
            bad_key(origin, k, "expected a number, got '" + v + "'");
        }
    }
    long long to_int(const std::string& k, const std::string& v) const {
        try {
            std::size_t pos = 0;
            const long long x = std::stoll(v, &pos);
            if (pos != v.size()) throw std::invalid_argument("trailing characters");
            return x;
        } catch (const std::exception&) {
            bad_key(origin, k, "expected an integer, got '" + v + "'");
        }
    }
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    static const std::map<std::string, std::vector<std::string>> known = {
        {"physics", {"c"}},
        {"noise", {"b", "scale"}},
        {"numerics", {"n", "T", "dt", "save_every"}},
        {"experiment",
         {"system", "paths", "seed", "init", "init_mode", "init_amp", "init_seed", "init_decay",
          "stretch_scale", "noise_mode", "observables", "snapshots", "scan_a", "scan_bc",
          "scan_n", "scan_paths", "scan_T", "finiteness_n", "finiteness_paths",
          "blowup_threshold"}},
    };

    Parsed p;
    p.origin = origin;
    std::string section;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                            ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (!known.count(section))
                throw std::invalid_argument(origin + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw std::invalid_argument(origin + ": key '" + key + "' outside any section");
        const auto& keys = known.at(section);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw std::invalid_argument(origin + ": unknown key '" + key + "' in section [" +
                                        section + "]");
        p.kv[section + "." + key] = val;
    }

    ExperimentConfig cfg;
    SimConfig& sim = cfg.sim;

    p.take("physics.c", [&](const std::string& v) { sim.c = p.to_double("c", v); });
    p.take("noise.b", [&](const std::string& v) { sim.b = p.to_double("b", v); });
    p.take("noise.scale",
           [&](const std::string& v) { sim.noise_scale = p.to_double("scale", v); });
    p.take("numerics.n", [&](const std::string& v) { sim.n = int(p.to_int("n", v)); });
    p.take("numerics.T", [&](const std::string& v) { sim.T = p.to_double("T", v); });
    p.take("numerics.dt", [&](const std::string& v) { sim.dt = p.to_double("dt", v); });
    p.take("numerics.save_every",
           [&](const std::string& v) { sim.save_every = int(p.to_int("save_every", v)); });

    bool noise_mode_given = false;
    p.take("experiment.system", [&](const std::string& v) {
        if (v == "full")
            sim.system = SystemKind::FullVorticity;
        else if (v == "transport")
            sim.system = SystemKind::TransportOnly;
        else if (v == "linear_ou")
            sim.system = SystemKind::LinearOU;
        else if (v == "difference_beta")
            sim.system = SystemKind::DifferenceBeta;
        else if (v == "difference_delta")
            sim.system = SystemKind::DifferenceDelta;
        else
            bad_key(origin, "system",
                    "expected one of full|transport|linear_ou|difference_beta|difference_delta");
    });
    p.take("experiment.paths",
           [&](const std::string& v) { sim.m_paths = int(p.to_int("paths", v)); });
    p.take("experiment.seed", [&](const std::string& v) {
        sim.seed = std::uint64_t(p.to_int("seed", v));
    });
    p.take("experiment.init", [&](const std::string& v) {
        if (v == "zero")
            sim.init.kind = InitialCondition::Kind::Zero;
        else if (v == "single_mode")
            sim.init.kind = InitialCondition::Kind::SingleMode;
        else if (v == "smooth_random")
            sim.init.kind = InitialCondition::Kind::SmoothRandom;
        else
            bad_key(origin, "init", "expected zero|single_mode|smooth_random");
    });
    p.take("experiment.init_mode", [&](const std::string& v) {
        WaveVector k;
        if (std::sscanf(v.c_str(), "%d %d %d", &k.x, &k.y, &k.z) != 3)
            bad_key(origin, "init_mode", "expected three integers, e.g. '0 0 1'");
        sim.init.mode = k;
    });
    p.take("experiment.init_amp",
           [&](const std::string& v) { sim.init.amp = p.to_double("init_amp", v); });
    p.take("experiment.init_seed", [&](const std::string& v) {
        sim.init.seed = std::uint64_t(p.to_int("init_seed", v));
    });
    p.take("experiment.init_decay",
           [&](const std::string& v) { sim.init.decay = p.to_double("init_decay", v); });
    p.take("experiment.stretch_scale",
           [&](const std::string& v) { sim.stretch_scale = p.to_double("stretch_scale", v); });
    p.take("experiment.noise_mode", [&](const std::string& v) {
        noise_mode_given = true;
        if (v == "scheme")
            sim.noise_mode = NoiseMode::Scheme;
        else if (v == "exact_ou")
            sim.noise_mode = NoiseMode::ExactOu;
        else
            bad_key(origin, "noise_mode", "expected scheme|exact_ou");
    });
    p.take("experiment.blowup_threshold", [&](const std::string& v) {
        sim.blowup_threshold = p.to_double("blowup_threshold", v);
    });
    p.take("experiment.observables", [&](const std::string& v) {
        cfg.observables = split(v, ',');
        for (const auto& name : cfg.observables) Observables{}.by_name(name);  // validates
        if (cfg.observables.empty()) bad_key(origin, "observables", "empty list");
    });
    p.take("experiment.snapshots", [&](const std::string& v) {
        if (v == "none")
            cfg.snapshots = ExperimentConfig::Snapshots::None;
        else if (v == "terminal")
            cfg.snapshots = ExperimentConfig::Snapshots::Terminal;
        else if (v == "all")
            cfg.snapshots = ExperimentConfig::Snapshots::All;
        else
            bad_key(origin, "snapshots", "expected none|terminal|all");
    });
    p.take("experiment.scan_a",
           [&](const std::string& v) { cfg.scan_a = p.to_double("scan_a", v); });
    p.take("experiment.scan_bc", [&](const std::string& v) {
        cfg.scan_bc.clear();
        for (const auto& pair : split(v, ';')) {
            double b, c;
            if (std::sscanf(pair.c_str(), "%lf:%lf", &b, &c) != 2)
                bad_key(origin, "scan_bc", "expected 'b:c;b:c;...'");
            cfg.scan_bc.emplace_back(b, c);
        }
        if (cfg.scan_bc.empty()) bad_key(origin, "scan_bc", "empty list");
    });
    p.take("experiment.scan_n", [&](const std::string& v) {
        cfg.scan_n.clear();
        for (const auto& item : split(v, ',')) cfg.scan_n.push_back(int(p.to_int("scan_n", item)));
        if (cfg.scan_n.empty()) bad_key(origin, "scan_n", "empty list");
    });
    p.take("experiment.scan_paths",
           [&](const std::string& v) { cfg.scan_paths = int(p.to_int("scan_paths", v)); });
    p.take("experiment.scan_T",
           [&](const std::string& v) { cfg.scan_T = p.to_double("scan_T", v); });
    p.take("experiment.finiteness_n", [&](const std::string& v) {
        cfg.finiteness_n.clear();
        for (const auto& item : split(v, ','))
            cfg.finiteness_n.push_back(int(p.to_int("finiteness_n", item)));
    });
    p.take("experiment.finiteness_paths", [&](const std::string& v) {
        cfg.finiteness_paths = int(p.to_int("finiteness_paths", v));
    });

    // LinearOU runs default to the exact transition unless overridden.
    if (sim.system == SystemKind::LinearOU && !noise_mode_given)
        sim.noise_mode = NoiseMode::ExactOu;

    sim.validate();
    return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void validate_for_subcommand(ExperimentConfig& cfg, const std::string& subcommand) {
    if (subcommand == "girsanov") {
        if (!(cfg.sim.c > 0.5))
            cfg.warnings.push_back("c = " + std::to_string(cfg.sim.c) +
                                   " is outside the theorem regime c > 1/2; the law "
                                   "equivalence is not guaranteed, run proceeds");
        if (cfg.sim.b != 1.0)
            cfg.warnings.push_back("b = " + std::to_string(cfg.sim.b) +
                                   " differs from the theorem value b = 1; run proceeds");
        if (cfg.sim.init.kind == InitialCondition::Kind::SmoothRandom &&
            !(cfg.sim.init.decay >= 7.0))
            cfg.warnings.push_back("init_decay < 7 gives thin H^2 margin for the initial data");
    }
}

std::string config_to_text(const ExperimentConfig& cfg) {
    const SimConfig& s = cfg.sim;
    std::ostringstream os;
    const auto system_name = [&] {
        switch (s.system) {
            case SystemKind::FullVorticity: return "full";
            case SystemKind::TransportOnly: return "transport";
            case SystemKind::LinearOU: return "linear_ou";
            case SystemKind::DifferenceBeta: return "difference_beta";
            case SystemKind::DifferenceDelta: return "difference_delta";
        }
        return "full";
    }();
    const auto init_name = [&] {
        switch (s.init.kind) {
            case InitialCondition::Kind::Zero: return "zero";
            case InitialCondition::Kind::SingleMode: return "single_mode";
            case InitialCondition::Kind::SmoothRandom: return "smooth_random";
        }
        return "zero";
    }();
    char buf[128];
    os << "[physics]\n";
    std::snprintf(buf, sizeof(buf), "c = %.17g\n", s.c);
    os << buf;
    os << "[noise]\n";
    std::snprintf(buf, sizeof(buf), "b = %.17g\nscale = %.17g\n", s.b, s.noise_scale);
    os << buf;
    os << "[numerics]\n";
    std::snprintf(buf, sizeof(buf), "n = %d\nT = %.17g\ndt = %.17g\nsave_every = %d\n", s.n, s.T,
                  s.dt, s.save_every);
    os << buf;
    os << "[experiment]\n";
    os << "system = " << system_name << "\n";
    os << "paths = " << s.m_paths << "\n";
    os << "seed = " << s.seed << "\n";
    os << "init = " << init_name << "\n";
    std::snprintf(buf, sizeof(buf), "init_mode = %d %d %d\n", s.init.mode.x, s.init.mode.y,
                  s.init.mode.z);
    os << buf;
    std::snprintf(buf, sizeof(buf), "init_amp = %.17g\ninit_seed = %llu\ninit_decay = %.17g\n",
                  s.init.amp, (unsigned long long)s.init.seed, s.init.decay);
    os << buf;
    std::snprintf(buf, sizeof(buf), "stretch_scale = %.17g\n", s.stretch_scale);
    os << buf;
    os << "noise_mode = " << (s.noise_mode == NoiseMode::ExactOu ? "exact_ou" : "scheme") << "\n";
    os << "observables = ";
    for (std::size_t i = 0; i < cfg.observables.size(); ++i)
        os << (i ? "," : "") << cfg.observables[i];
    os << "\n";
    return os.str();
}

}  // namespace hypervort
