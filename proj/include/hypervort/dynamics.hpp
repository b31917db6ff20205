#ifndef HYPERVORT_DYNAMICS_HPP
#define HYPERVORT_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypervort/field.hpp"
#include "hypervort/noise.hpp"
#include "hypervort/nonlinear.hpp"
#include "hypervort/rng.hpp"

namespace hypervort {

enum class SystemKind {
    FullVorticity,   // dissipation + transport + stretching
    TransportOnly,   // dissipation + transport
    LinearOU,        // dissipation only
    DifferenceBeta,  // eta - zeta, companion OU supplied mode-wise
    DifferenceDelta  // xi - zeta, companion OU supplied mode-wise
};

// Placement of the noise inside a step: Scheme multiplies the increment by
// the linear decay factor; ExactOu uses the exact transition variance so the
// linear system reproduces the OU law with no time-discretization error.
enum class NoiseMode { Scheme, ExactOu };

struct InitialCondition {
    enum class Kind { Zero, SingleMode, SmoothRandom };
    Kind kind = Kind::SmoothRandom;
    WaveVector mode{0, 0, 1};  // SingleMode
    double amp = 1.0;          // SingleMode amplitude / SmoothRandom scale
    std::uint64_t seed = 1;    // SmoothRandom
    double decay = 7.0;        // SmoothRandom per-mode amplitude |k|^{-decay/2}
};

// Real, divergence-free initial data at truncation n. SmoothRandom draws
// independent complex Gaussians with E|u_{k,j}|^2 = amp^2 |k|^{-decay}; the
// per-mode keying makes the field at truncation n the projection of the same
// field at any larger truncation. Requires decay > 4.5 (H^2 with margin).
SpectralField make_initial(const InitialCondition& init, int n);

struct SimConfig {
    int n = 3;
    double c = 1.0;
    double b = 1.0;
    double T = 0.1;
    double dt = 1e-3;
    int save_every = 10;
    int m_paths = 2000;
    std::uint64_t seed = 42;
    SystemKind system = SystemKind::FullVorticity;
    InitialCondition init;
    double noise_scale = 1.0;
    double stretch_scale = 1.0;  // 0 degenerates FullVorticity to TransportOnly
    NoiseMode noise_mode = NoiseMode::Scheme;
    double blowup_threshold = 1e8;

    int steps() const;
    NoiseSpec noise_spec() const { return {b, c, n, noise_scale}; }
    void validate() const;  // throws std::invalid_argument naming the field
};

struct TrajectoryState {
    double t = 0;
    std::uint64_t step_index = 0;
    SpectralField field;
    std::optional<SpectralField> companion;  // OU process for difference systems

    explicit TrajectoryState(SpectralField f) : field(std::move(f)) {}

    // eta = beta + zeta (resp. xi = delta + zeta) for difference systems,
    // the evolved field itself otherwise.
    SpectralField reconstructed() const;
};

struct Observables {
    double energy = 0;     // 0.5 ||T xi||_{L2}^2
    double enstrophy = 0;  // 0.5 ||xi||_{L2}^2
    double h1 = 0;
    double h2 = 0;
    double l3 = 0;

    static const std::vector<std::string>& names();
    double by_name(const std::string& name) const;
};

struct PathRecord {
    std::uint64_t path_id = 0;
    std::vector<double> times;
    std::vector<Observables> observables;
    std::vector<SpectralField> snapshots;  // filled only when requested
    std::optional<SpectralField> terminal;
};

struct BlowUpError : std::runtime_error {
    BlowUpError(double t_, double norm_, std::vector<double> history_)
        : std::runtime_error("trajectory blew up at t = " + std::to_string(t_) +
                             " (L2 norm " + std::to_string(norm_) + ")"),
          t(t_),
          norm(norm_),
          history(std::move(history_)) {}
    double t;
    double norm;
    std::vector<double> history;  // L2 norm after each completed step
};

/// Exponential-Euler integrator for all five systems: exact linear decay,
/// phi1-weighted nonlinear drift, Ito-point noise. Holds the dealiasing plan
/// and per-mode tables; one instance per worker thread.
class Integrator {
  public:
    explicit Integrator(const SimConfig& cfg);

    const SimConfig& config() const { return cfg_; }
    const std::shared_ptr<const Lattice>& lattice() const { return lat_; }
    PaddedProductPlan& plan() { return plan_; }

    TrajectoryState initial_state() const;

    // Nonlinear drift of the configured system, evaluated at a reconstructed
    // field. Zero for LinearOU.
    SpectralField nonlinear_drift(const SpectralField& field);

    // One step; dW.dt must equal cfg.dt. Throws BlowUpError on divergence.
    void step(TrajectoryState& state, const WienerIncrement& dW);

    Observables measure(const SpectralField& xi);

    // Called with the pre-step state and the increment about to be applied.
    using StepHook = std::function<void(const TrajectoryState&, const WienerIncrement&)>;

    PathRecord integrate_path(std::uint64_t path_id, bool keep_snapshots = false,
                              const StepHook& hook = {});

  private:
    SimConfig cfg_;
    std::shared_ptr<const Lattice> lat_;
    PaddedProductPlan plan_;
    NoiseSpec spec_;
    int steps_;
    std::vector<double> decay_, phi1dt_, noise_factor_;
    std::vector<double> norm_history_;
};

// Plain Euler-Maruyama reference step (serial, kept for cross-checks):
// u' = u + dt (-lambda u + N(u)) + amp dbeta.
SpectralField euler_maruyama_step(const SpectralField& field, const WienerIncrement& dW,
                                  const SimConfig& cfg, PaddedProductPlan& plan);

struct BlowUpInfo {
    std::uint64_t path_id = 0;
    double t = 0;
    double norm = 0;
    std::vector<double> history;
};

struct EnsembleOutcome {
    std::vector<PathRecord> records;  // in path-id order; blown paths absent
    std::vector<BlowUpInfo> blowups;
};

// Runs [first_path, first_path + count) in parallel over paths with the
// requested OpenMP thread count (0 = library default). Results are collected
// in fixed path order, so the outcome is independent of scheduling.
EnsembleOutcome run_ensemble(const SimConfig& cfg, std::uint64_t first_path, int count,
                             int threads, bool keep_snapshots = false);

struct BalanceSeries {
    std::vector<double> times;            // t_1 .. t_N
    std::vector<double> residual;         // ||f(t)||^2 - ||f(0)||^2 + 2 int ||f||_{H^{1+c}}^2
    std::vector<double> stretching_work;  // 2 int <B2(xi, T xi), xi> ds (FullVorticity)
    double initial_sq = 0;
};

// Energy bookkeeping along one deterministic trajectory (noise_scale must be
// 0). For TransportOnly the residual is pure quadrature/scheme error; for
// FullVorticity it should match the stretching work term.
BalanceSeries deterministic_energy_balance(const SimConfig& cfg);

struct StochasticEnergyReport {
    double lhs_mean = 0;  // E ||v(T)||^2 + 2 int_0^T E ||v||_{H^{1+c}}^2
    double lhs_stderr = 0;
    double rhs = 0;  // ||v(0)||^2 + T * velocity noise trace
    double initial_sq = 0;
    double trace_rate = 0;
    double rel_discrepancy = 0;
    int paths = 0;
};

// Trace of the velocity-level noise covariance per unit time, in the
// artifact's increment convention (E|d_beta|^2 = 2 dt):
// 4 * scale^2 * sum_{0<|k|<=n} |k|^{-2(2b+1)}.
double velocity_noise_trace(int n, double b, double scale);

StochasticEnergyReport stochastic_energy_identity(const SimConfig& cfg, int paths, int threads);

struct ContinuousDependenceRow {
    double eps = 0;
    double sup_diff = 0;
    double ratio = 0;  // sup_diff / eps
};

// Same-noise pairs with initial separation eps along a fixed unit direction.
std::vector<ContinuousDependenceRow> continuous_dependence_probe(
    const SimConfig& cfg, const std::vector<double>& eps_list);

}  // namespace hypervort

#endif
