#include "hypervort/girsanov.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hypervort/norms.hpp"
#include "hypervort/operators.hpp"

namespace hypervort {

SpectralField drift_gap(const SpectralField& eta, double b, PaddedProductPlan& plan) {
    return fractional_laplacian(b, stretching_term(eta, biot_savart(eta), plan));
}

void accumulate(GirsanovAccumulator& acc, const SpectralField& G, const WienerIncrement& dW,
                double dt) {
    if (dW.dt != dt) throw std::invalid_argument("girsanov accumulate: dt mismatch");
    double ito = 0, q = 0;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (int j = 0; j < 2; ++j) {
            ito += std::real(G.coeff(i, j) * std::conj(dW.at(i, j)));
            q += std::norm(G.coeff(i, j));
        }
    acc.ito += ito;
    acc.qv += q * dt;
    acc.qv_history.push_back(2.0 * q);  // full-lattice ||G||^2
}

double log_weight(const GirsanovAccumulator& acc, int sign) {
    return sign * acc.ito - 0.5 * acc.qv;
}

namespace {

struct MeanStderr {
    double mean = 0, se = 0;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
    double s = 0, ss = 0;
    for (double x : xs) {
        s += x;
        ss += x * x;
    }
    const double n = double(xs.size());
    const double m = s / n;
    const double var = std::max(0.0, ss / n - m * m);
    return {m, std::sqrt(var / n)};
}

struct WeightedPath {
    double w = 0;
    Observables obs;
    bool ok = false;
};

// Transport-only paths with weight accumulation; results in path order.
std::vector<WeightedPath> run_weighted_ensemble(const SimConfig& base,
                                                std::uint64_t first_path, int count,
                                                int threads, int sign,
                                                std::vector<GirsanovAccumulator>* accs) {
    SimConfig cfg = base;
    cfg.system = SystemKind::TransportOnly;
    std::vector<WeightedPath> out(count);
    if (accs) accs->assign(count, {});
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel num_threads(nthreads)
    {
        Integrator integ(cfg);
#pragma omp for schedule(dynamic)
        for (int i = 0; i < count; ++i) {
            try {
                GirsanovAccumulator acc;
                const auto hook = [&](const TrajectoryState& st, const WienerIncrement& dW) {
                    SpectralField G = drift_gap(st.reconstructed(), cfg.b, integ.plan());
                    if (cfg.stretch_scale != 1.0) G *= cfg.stretch_scale;
                    accumulate(acc, G, dW, cfg.dt);
                };
                const PathRecord rec =
                    integ.integrate_path(first_path + std::uint64_t(i), false, hook);
                out[i].w = std::exp(log_weight(acc, sign));
                out[i].obs = integ.measure(*rec.terminal);
                out[i].ok = true;
                if (accs) (*accs)[i] = std::move(acc);
            } catch (const BlowUpError&) {
                out[i].ok = false;
            }
        }
    }
    return out;
}

}  // namespace

LawComparisonReport mc_compare_laws(const SimConfig& cfg,
                                    const std::vector<std::string>& observables, int paths,
                                    int threads) {
    if (paths <= 0) throw std::invalid_argument("mc_compare_laws: need paths > 0");

    LawComparisonReport rep;
    rep.paths = paths;
    rep.t_final = cfg.steps() * cfg.dt;
    rep.sign = kGirsanovSign;

    // Direct ensemble under the full dynamics, path ids [0, M).
    SimConfig direct_cfg = cfg;
    direct_cfg.system = SystemKind::FullVorticity;
    std::vector<std::vector<double>> direct_vals(observables.size());
    {
        const EnsembleOutcome ens = run_ensemble(direct_cfg, 0, paths, threads);
        rep.direct_blowups = int(ens.blowups.size());
        for (const auto& rec : ens.records) {
            const Observables& o = rec.observables.back();
            for (std::size_t q = 0; q < observables.size(); ++q)
                direct_vals[q].push_back(o.by_name(observables[q]));
        }
    }

    // Independent weighted ensemble, path ids [M, 2M).
    const auto weighted =
        run_weighted_ensemble(cfg, std::uint64_t(paths), paths, threads, kGirsanovSign, nullptr);

    std::vector<double> ws;
    std::vector<std::vector<double>> weighted_vals(observables.size());
    for (const auto& wp : weighted) {
        if (!wp.ok) {
            ++rep.weighted_blowups;
            continue;
        }
        ws.push_back(wp.w);
        for (std::size_t q = 0; q < observables.size(); ++q)
            weighted_vals[q].push_back(wp.w * wp.obs.by_name(observables[q]));
    }

    const auto ew = mean_stderr(ws);
    rep.e_w = ew.mean;
    rep.e_w_stderr = ew.se;
    rep.e_w_z = ew.se > 0 ? std::abs(ew.mean - 1.0) / ew.se : (ew.mean == 1.0 ? 0.0 : HUGE_VAL);
    double wsum = 0, wsq = 0;
    for (double w : ws) {
        wsum += w;
        wsq += w * w;
    }
    rep.ess = wsq > 0 ? wsum * wsum / wsq : 0.0;

    bool all_pass = true;
    for (std::size_t q = 0; q < observables.size(); ++q) {
        ObservableComparison oc;
        oc.name = observables[q];
        const auto d = mean_stderr(direct_vals[q]);
        const auto w = mean_stderr(weighted_vals[q]);
        oc.direct_mean = d.mean;
        oc.direct_stderr = d.se;
        oc.weighted_mean = w.mean;
        oc.weighted_stderr = w.se;
        oc.combined_stderr = std::hypot(d.se, w.se);
        oc.z = oc.combined_stderr > 0 ? std::abs(d.mean - w.mean) / oc.combined_stderr
                                      : (d.mean == w.mean ? 0.0 : HUGE_VAL);
        oc.pass_3sigma = oc.z <= 3.0;
        all_pass = all_pass && oc.pass_3sigma;
        rep.observables.push_back(oc);
    }

    const double blowup_frac =
        double(rep.direct_blowups + rep.weighted_blowups) / double(2 * paths);
    rep.pass = all_pass && rep.e_w_z <= 3.0 && blowup_frac <= 0.01;
    return rep;
}

std::vector<MartingalePoint> martingale_check(const SimConfig& cfg, int paths,
                                              const std::vector<double>& times, int threads,
                                              int sign) {
    if (paths <= 0) throw std::invalid_argument("martingale_check: need paths > 0");

    // Snap requested times to step indices.
    std::vector<int> snap;
    for (double t : times) {
        const int s = int(std::llround(t / cfg.dt));
        if (s < 0 || s > cfg.steps())
            throw std::invalid_argument("martingale_check: time outside horizon");
        snap.push_back(s);
    }

    SimConfig tcfg = cfg;
    tcfg.system = SystemKind::TransportOnly;
    std::vector<std::vector<double>> w_at(snap.size(), std::vector<double>());
    std::vector<std::vector<double>> slots(paths, std::vector<double>(snap.size(), -1.0));
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel num_threads(nthreads)
    {
        Integrator integ(tcfg);
#pragma omp for schedule(dynamic)
        for (int p = 0; p < paths; ++p) {
            try {
                GirsanovAccumulator acc;
                const auto hook = [&](const TrajectoryState& st, const WienerIncrement& dW) {
                    // Snapshot before consuming step st.step_index.
                    for (std::size_t q = 0; q < snap.size(); ++q)
                        if (int(st.step_index) == snap[q])
                            slots[p][q] = std::exp(log_weight(acc, sign));
                    SpectralField G = drift_gap(st.reconstructed(), tcfg.b, integ.plan());
                    if (tcfg.stretch_scale != 1.0) G *= tcfg.stretch_scale;
                    accumulate(acc, G, dW, tcfg.dt);
                };
                integ.integrate_path(std::uint64_t(p), false, hook);
                for (std::size_t q = 0; q < snap.size(); ++q)
                    if (snap[q] == tcfg.steps()) slots[p][q] = std::exp(log_weight(acc, sign));
            } catch (const BlowUpError&) {
                // slot stays negative, skipped below
            }
        }
    }

    std::vector<MartingalePoint> out;
    for (std::size_t q = 0; q < snap.size(); ++q) {
        std::vector<double> ws;
        for (int p = 0; p < paths; ++p)
            if (slots[p][q] >= 0) ws.push_back(slots[p][q]);
        const auto ms = mean_stderr(ws);
        out.push_back({snap[q] * cfg.dt, ms.mean, ms.se});
    }
    return out;
}

std::vector<FinitenessRow> finiteness_diagnostic(const SimConfig& cfg,
                                                 const std::vector<int>& n_list, int paths,
                                                 int threads) {
    std::vector<FinitenessRow> rows;
    for (const int n : n_list) {
        SimConfig ncfg = cfg;
        ncfg.n = n;
        ncfg.system = SystemKind::TransportOnly;
        std::vector<GirsanovAccumulator> accs;
        const auto wp =
            run_weighted_ensemble(ncfg, 0, paths, threads, kGirsanovSign, &accs);
        std::vector<double> integrals;
        for (int p = 0; p < paths; ++p)
            if (wp[p].ok) integrals.push_back(2.0 * accs[p].qv);  // full-lattice norm
        const auto ms = mean_stderr(integrals);
        rows.push_back({n, ms.mean, ms.se});
    }
    return rows;
}

}  // namespace hypervort
