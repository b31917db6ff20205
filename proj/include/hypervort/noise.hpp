#ifndef HYPERVORT_NOISE_HPP
#define HYPERVORT_NOISE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hypervort/field.hpp"
#include "hypervort/rng.hpp"

namespace hypervort {

/// Noise and dissipation parameters: per-mode drift rate lambda_k =
/// |k|^{2(1+c)} and coloring amplitude |k|^{-2b}. scale = 0 switches the
/// forcing off entirely.
struct NoiseSpec {
    double b = 1.0;
    double c = 1.0;
    int n = 3;
    double scale = 1.0;

    double lambda(int k2) const;
    double amplitude(int k2) const;
};

/// Raw cylindrical Wiener increment over one step: per stored mode and frame
/// index, a complex Gaussian with independent real and imaginary parts of
/// variance dt each (E|d_beta|^2 = 2 dt). Conjugate modes are implied by
/// beta(-k,j) = -conj(beta(k,j)) exactly as for field coefficients.
struct WienerIncrement {
    double dt = 0;
    std::shared_ptr<const Lattice> lat;
    std::vector<Complex> d;  // [2*mode + j]

    const Complex& at(std::size_t mode, int j) const { return d[2 * mode + j]; }
};

// Draw the increment for a given step index. Counter-addressed: the same
// (stream, step) always yields the same increment. Throws for dt <= 0.
WienerIncrement sample_wiener_increment(double dt, std::shared_ptr<const Lattice> lat,
                                        const RngStream& rng, std::uint64_t step);

// The increment viewed as a (white) field, and its coloring by (-Delta)^{-b}.
SpectralField increment_as_field(const WienerIncrement& dw);
SpectralField colored_increment(const WienerIncrement& dw, double b);

// Exact OU transition over dt, mode-wise: decay e^{-lambda dt} plus a
// Gaussian with per-component variance amp^2 (1 - e^{-2 lambda dt})/(2 lambda).
double ou_decay(double lambda, double dt);
double ou_noise_gain(double lambda, double dt);  // exact std / (amp sqrt(dt)), -> 1 as dt -> 0
Complex ou_apply_exact(Complex z, int k2, const NoiseSpec& spec, double dt, Complex dbeta);
Complex ou_exact_step(Complex z, const WaveVector& k, const NoiseSpec& spec, double dt,
                      const RngStream& rng, std::uint64_t step = 0);

// The stochastic convolution sampled exactly in distribution at the grid
// times; starts from zero at times[0] = 0. Throws on a non-monotone grid.
std::vector<SpectralField> ou_sample_path(const NoiseSpec& spec,
                                          const std::vector<double>& times,
                                          const RngStream& rng);

struct RegularityScanRow {
    double b = 0, c = 0;
    int n = 0;
    double mean_sq = 0;    // MC estimate of E ||zeta(T)||_{H^a}^2
    double std_err = 0;
    double exact = 0;      // closed-form series value (the MC limit)
};

struct RegularityScanResult {
    double a = 0;
    double horizon = 0;
    int paths = 0;
    std::vector<RegularityScanRow> rows;
    // Fitted log-log growth slope in n per (b, c), paired with the slope of
    // the exact series (direct-summation oracle).
    struct Slope {
        double b = 0, c = 0;
        double mc_slope = 0;
        double exact_slope = 0;
    };
    std::vector<Slope> slopes;
};

// Estimates E ||zeta(T)||_{H^a}^2 against the truncation for each (b, c).
// Throws on an empty n_list or T <= 0.
RegularityScanResult ou_regularity_scan(double a,
                                        const std::vector<std::pair<double, double>>& bc_list,
                                        const std::vector<int>& n_list, double T, int paths,
                                        std::uint64_t seed);

// Brownian increments (components ~ N(0, T/steps)) for one mode's driver.
std::vector<Complex> sample_brownian_increments(int steps, double T, const RngStream& rng);

// Factorization identity diagnostic: rebuilds the mode's stochastic
// convolution through the auxiliary process Y_alpha and returns the relative
// terminal deviation from the directly computed mild solution on the same
// increments. Quadrature-limited; alpha must lie in (0, 1/2).
double factorization_check(double alpha, const WaveVector& k, const NoiseSpec& spec,
                           const std::vector<Complex>& dbeta, double T);

}  // namespace hypervort

#endif
