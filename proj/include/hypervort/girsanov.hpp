#ifndef HYPERVORT_GIRSANOV_HPP
#define HYPERVORT_GIRSANOV_HPP

#include <string>
#include <vector>

#include "hypervort/dynamics.hpp"

namespace hypervort {

// Sign of the stochastic-integral term in the log weight. The drift gap is
// the term the full system adds on top of the transport system, so the
// change of measure toward the full law pairs +G against the driving noise;
// pinned by the law-match calibration test (both signs are exact unit-mean
// martingales, so E[W] alone cannot distinguish them).
inline constexpr int kGirsanovSign = +1;

/// Running pieces of the log Radon-Nikodym weight along one transport-only
/// trajectory. ito and qv accumulate over the stored (half-lattice)
/// coefficients, which carry exactly the real degrees of freedom the
/// finite-dimensional Girsanov density pairs; qv_history keeps the
/// full-lattice ||G(t)||^2 per step.
struct GirsanovAccumulator {
    double ito = 0;                  // sum_t sum_{k,j} Re(G conj(dbeta))
    double qv = 0;                   // sum_t sum_{k,j} |G|^2 dt, nondecreasing
    std::vector<double> qv_history;  // ||G(t_s)||_{L2}^2 per step
};

// G = (-Delta)^b P[(eta . grad) T eta], the drift-gap functional.
SpectralField drift_gap(const SpectralField& eta, double b, PaddedProductPlan& plan);

// Left-endpoint (Ito) accumulation of one step. dW must be the raw
// uncolored increment of the same step that drove the dynamics; dt must
// match dW.dt.
void accumulate(GirsanovAccumulator& acc, const SpectralField& G, const WienerIncrement& dW,
                double dt);

double log_weight(const GirsanovAccumulator& acc, int sign = kGirsanovSign);

struct ObservableComparison {
    std::string name;
    double direct_mean = 0, direct_stderr = 0;
    double weighted_mean = 0, weighted_stderr = 0;
    double combined_stderr = 0;
    double z = 0;
    bool pass_3sigma = false;
};

struct LawComparisonReport {
    int paths = 0;
    double t_final = 0;
    double e_w = 0, e_w_stderr = 0, e_w_z = 0;
    double ess = 0;  // (sum W)^2 / sum W^2, always <= paths
    int direct_blowups = 0, weighted_blowups = 0;
    int sign = kGirsanovSign;
    std::vector<ObservableComparison> observables;
    bool pass = false;
};

// The law-equivalence experiment: M direct FullVorticity paths against M
// independent TransportOnly paths carrying Radon-Nikodym weights, compared
// observable by observable at the final time. Fails the run when more than
// 1% of the paths blow up. Throws for M <= 0.
LawComparisonReport mc_compare_laws(const SimConfig& cfg,
                                    const std::vector<std::string>& observables, int paths,
                                    int threads);

struct MartingalePoint {
    double t = 0;
    double e_w = 0;
    double std_err = 0;
};

// E[W(t)] with standard errors along the requested times (snapped to the
// step grid). Unit mean within MC error for either sign.
std::vector<MartingalePoint> martingale_check(const SimConfig& cfg, int paths,
                                              const std::vector<double>& times, int threads,
                                              int sign = kGirsanovSign);

struct FinitenessRow {
    int n = 0;
    double mean_integral = 0;  // E int_0^T ||G||_{L2}^2 dt
    double std_err = 0;
};

// E[int ||G||^2 dt] against the truncation: stabilizes for b = 1, c > 1/2,
// grows without saturation for b = 0, c = 0.
std::vector<FinitenessRow> finiteness_diagnostic(const SimConfig& cfg,
                                                 const std::vector<int>& n_list, int paths,
                                                 int threads);

}  // namespace hypervort

#endif
