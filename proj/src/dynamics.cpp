#include "hypervort/dynamics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypervort/norms.hpp"
#include "hypervort/operators.hpp"

namespace hypervort {

SpectralField make_initial(const InitialCondition& init, int n) {
    auto lat = Lattice::make(n);
    SpectralField f(lat);
    switch (init.kind) {
        case InitialCondition::Kind::Zero:
            return f;
        case InitialCondition::Kind::SingleMode: {
            if (init.mode.norm2() == 0 || init.mode.norm2() > n * n)
                throw std::invalid_argument("make_initial: single mode outside truncation");
            f.set(init.mode, Complex(init.amp, 0), Complex(0, 0));
            return f;
        }
        case InitialCondition::Kind::SmoothRandom: {
            if (!(init.decay > 4.5))
                throw std::invalid_argument(
                    "make_initial: smooth_random decay must exceed 4.5 for H^2 data");
            const RngStream rng(init.seed, 0, StreamPurpose::Init);
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (std::size_t i = 0; i < lat->size(); ++i) {
                const WaveVector& k = lat->mode(i);
                const double amp =
                    init.amp * std::pow(double(k.norm2()), -0.25 * init.decay) * inv_sqrt2;
                const std::uint32_t code = pack_wavevector(k);
                for (int j = 0; j < 2; ++j) {
                    const auto [g1, g2] = rng.normal_pair_mode(code, std::uint32_t(j), 0);
                    f.coeff(i, j) = Complex(g1 * amp, g2 * amp);
                }
            }
            return f;
        }
    }
    throw std::invalid_argument("make_initial: unknown initial condition kind");
}

int SimConfig::steps() const { return std::max(1, int(std::llround(T / dt))); }

void SimConfig::validate() const {
    if (n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (!(dt > 0)) throw std::invalid_argument("config: dt must be positive");
    if (!(T >= dt)) throw std::invalid_argument("config: T must be >= dt");
    if (c < 0) throw std::invalid_argument("config: c must be >= 0");
    if (b < 0) throw std::invalid_argument("config: b must be >= 0");
    if (m_paths < 0) throw std::invalid_argument("config: paths must be >= 0");
    if (save_every < 1) throw std::invalid_argument("config: save_every must be >= 1");
}

SpectralField TrajectoryState::reconstructed() const {
    if (!companion) return field;
    return field + *companion;
}

const std::vector<std::string>& Observables::names() {
    static const std::vector<std::string> n = {"energy", "enstrophy", "h1", "h2", "l3"};
    return n;
}

double Observables::by_name(const std::string& name) const {
    if (name == "energy") return energy;
    if (name == "enstrophy") return enstrophy;
    if (name == "h1") return h1;
    if (name == "h2") return h2;
    if (name == "l3") return l3;
    throw std::invalid_argument("unknown observable: " + name);
}

namespace {

bool is_difference(SystemKind s) {
    return s == SystemKind::DifferenceBeta || s == SystemKind::DifferenceDelta;
}

// phi1(x) = (1 - e^{-x}) / x, the exponential-Euler drift weight.
double phi1(double x) { return x < 1e-12 ? 1.0 : -std::expm1(-x) / x; }

}  // namespace

Integrator::Integrator(const SimConfig& cfg)
    : cfg_(cfg),
      lat_(Lattice::make(cfg.n)),
      plan_(lat_),
      spec_(cfg.noise_spec()),
      steps_(cfg.steps()) {
    cfg_.validate();
    decay_.resize(lat_->size());
    phi1dt_.resize(lat_->size());
    noise_factor_.resize(lat_->size());
    for (std::size_t i = 0; i < lat_->size(); ++i) {
        const int k2 = lat_->mode(i).norm2();
        const double lam = spec_.lambda(k2);
        const double x = lam * cfg_.dt;
        decay_[i] = std::exp(-x);
        phi1dt_[i] = phi1(x) * cfg_.dt;
        const double amp = spec_.amplitude(k2);
        noise_factor_[i] = cfg_.noise_mode == NoiseMode::ExactOu
                               ? amp * ou_noise_gain(lam, cfg_.dt)
                               : amp * decay_[i];
    }
}

TrajectoryState Integrator::initial_state() const {
    TrajectoryState st(make_initial(cfg_.init, cfg_.n));
    if (is_difference(cfg_.system)) st.companion = SpectralField(lat_);
    return st;
}

SpectralField Integrator::nonlinear_drift(const SpectralField& field) {
    switch (cfg_.system) {
        case SystemKind::LinearOU:
            return SpectralField(lat_);
        case SystemKind::TransportOnly:
        case SystemKind::DifferenceBeta: {
            const SpectralField v = biot_savart(field);
            return transport_term(v, field, plan_) * -1.0;
        }
        case SystemKind::FullVorticity:
        case SystemKind::DifferenceDelta: {
            const SpectralField v = biot_savart(field);
            SpectralField drift = transport_term(v, field, plan_) * -1.0;
            if (cfg_.stretch_scale != 0.0)
                drift += stretching_term(field, v, plan_) * cfg_.stretch_scale;
            return drift;
        }
    }
    return SpectralField(lat_);
}

void Integrator::step(TrajectoryState& state, const WienerIncrement& dW) {
    if (dW.dt != cfg_.dt)
        throw std::invalid_argument("Integrator::step: increment dt does not match config dt");

    const bool diff = is_difference(cfg_.system);
    const bool linear = cfg_.system == SystemKind::LinearOU;

    if (linear && cfg_.noise_mode == NoiseMode::ExactOu) {
        // Shared kernel with ou_sample_path: bit-identical fields on the
        // same increments.
        for (std::size_t i = 0; i < lat_->size(); ++i) {
            const int k2 = lat_->mode(i).norm2();
            for (int j = 0; j < 2; ++j)
                state.field.coeff(i, j) =
                    ou_apply_exact(state.field.coeff(i, j), k2, spec_, cfg_.dt, dW.at(i, j));
        }
    } else {
        SpectralField drift = linear ? SpectralField(lat_) : nonlinear_drift(state.reconstructed());
        for (std::size_t i = 0; i < lat_->size(); ++i) {
            for (int j = 0; j < 2; ++j) {
                Complex u = decay_[i] * state.field.coeff(i, j) + phi1dt_[i] * drift.coeff(i, j);
                if (!diff) u += noise_factor_[i] * dW.at(i, j);
                state.field.coeff(i, j) = u;
            }
        }
        if (diff) {
            SpectralField& zeta = *state.companion;
            for (std::size_t i = 0; i < lat_->size(); ++i)
                for (int j = 0; j < 2; ++j)
                    zeta.coeff(i, j) =
                        decay_[i] * zeta.coeff(i, j) + noise_factor_[i] * dW.at(i, j);
        }
    }

    state.t += cfg_.dt;
    ++state.step_index;

    const double l2 = norm_sobolev(diff ? state.reconstructed() : state.field, 0.0);
    norm_history_.push_back(l2);
    if (!std::isfinite(l2) || l2 > cfg_.blowup_threshold) {
        auto history = norm_history_;
        norm_history_.clear();
        throw BlowUpError(state.t, l2, std::move(history));
    }
}

Observables Integrator::measure(const SpectralField& xi) {
    Observables o;
    const double hm1 = norm_sobolev(xi, -1.0);
    const double l2 = norm_sobolev(xi, 0.0);
    o.energy = 0.5 * hm1 * hm1;
    o.enstrophy = 0.5 * l2 * l2;
    o.h1 = norm_sobolev(xi, 1.0);
    o.h2 = norm_sobolev(xi, 2.0);
    o.l3 = grid_norm_lp(plan_.synthesize(xi), 3.0);
    return o;
}

PathRecord Integrator::integrate_path(std::uint64_t path_id, bool keep_snapshots,
                                      const StepHook& hook) {
    norm_history_.clear();
    PathRecord rec;
    rec.path_id = path_id;
    TrajectoryState st = initial_state();
    const RngStream rng(cfg_.seed, path_id, StreamPurpose::Noise);

    const auto save = [&](const TrajectoryState& s) {
        const SpectralField xi = s.reconstructed();
        rec.times.push_back(s.t);
        rec.observables.push_back(measure(xi));
        if (keep_snapshots) rec.snapshots.push_back(xi);
    };
    save(st);

    for (int s = 0; s < steps_; ++s) {
        const WienerIncrement dW =
            sample_wiener_increment(cfg_.dt, lat_, rng, std::uint64_t(s));
        if (hook) hook(st, dW);
        step(st, dW);
        if ((s + 1) % cfg_.save_every == 0 || s + 1 == steps_) save(st);
    }
    rec.terminal = st.reconstructed();
    return rec;
}

SpectralField euler_maruyama_step(const SpectralField& field, const WienerIncrement& dW,
                                  const SimConfig& cfg, PaddedProductPlan& plan) {
    const NoiseSpec spec = cfg.noise_spec();
    SpectralField out = field;
    SpectralField drift(field.lattice_ptr());
    if (cfg.system != SystemKind::LinearOU) {
        const SpectralField v = biot_savart(field);
        drift = transport_term(v, field, plan) * -1.0;
        if (cfg.system == SystemKind::FullVorticity && cfg.stretch_scale != 0.0)
            drift += stretching_term(field, v, plan) * cfg.stretch_scale;
    }
    for (std::size_t i = 0; i < field.size(); ++i) {
        const int k2 = field.lattice().mode(i).norm2();
        const double lam = spec.lambda(k2);
        const double amp = spec.amplitude(k2);
        for (int j = 0; j < 2; ++j)
            out.coeff(i, j) = field.coeff(i, j) +
                              cfg.dt * (-lam * field.coeff(i, j) + drift.coeff(i, j)) +
                              amp * dW.at(i, j);
    }
    return out;
}

EnsembleOutcome run_ensemble(const SimConfig& cfg, std::uint64_t first_path, int count,
                             int threads, bool keep_snapshots) {
    std::vector<std::optional<PathRecord>> slots(count);
    std::vector<std::optional<BlowUpInfo>> failures(count);
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel num_threads(nthreads)
    {
        Integrator integ(cfg);
#pragma omp for schedule(dynamic)
        for (int i = 0; i < count; ++i) {
            const std::uint64_t pid = first_path + std::uint64_t(i);
            try {
                slots[i] = integ.integrate_path(pid, keep_snapshots);
            } catch (const BlowUpError& e) {
                failures[i] = BlowUpInfo{pid, e.t, e.norm, e.history};
            }
        }
    }

    EnsembleOutcome out;
    for (int i = 0; i < count; ++i) {
        if (slots[i]) out.records.push_back(std::move(*slots[i]));
        if (failures[i]) out.blowups.push_back(std::move(*failures[i]));
    }
    return out;
}

BalanceSeries deterministic_energy_balance(const SimConfig& cfg) {
    if (cfg.noise_scale != 0.0)
        throw std::invalid_argument("deterministic_energy_balance: noise_scale must be 0");
    Integrator integ(cfg);
    auto lat = integ.lattice();
    TrajectoryState st = integ.initial_state();
    const RngStream rng(cfg.seed, 0, StreamPurpose::Noise);

    BalanceSeries series;
    const double e0 = norm_sobolev(st.reconstructed(), 0.0);
    series.initial_sq = e0 * e0;

    double diss = 0, work = 0;
    const int steps = cfg.steps();
    const bool track_work = cfg.system == SystemKind::FullVorticity;
    for (int s = 0; s < steps; ++s) {
        const SpectralField xi = st.reconstructed();
        const double hn = norm_sobolev(xi, 1.0 + cfg.c);
        diss += 2.0 * cfg.dt * hn * hn;
        if (track_work) {
            const SpectralField b2 = stretching_term(xi, biot_savart(xi), integ.plan());
            work += 2.0 * cfg.dt * cfg.stretch_scale * inner_l2(b2, xi);
        }
        const WienerIncrement dW = sample_wiener_increment(cfg.dt, lat, rng, std::uint64_t(s));
        integ.step(st, dW);
        const double e = norm_sobolev(st.reconstructed(), 0.0);
        series.times.push_back(st.t);
        series.residual.push_back(e * e - series.initial_sq + diss);
        series.stretching_work.push_back(work);
    }
    return series;
}

double velocity_noise_trace(int n, double b, double scale) {
    return 4.0 * scale * scale * lattice_sum(n, -(2.0 * b + 1.0));
}

StochasticEnergyReport stochastic_energy_identity(const SimConfig& cfg, int paths, int threads) {
    StochasticEnergyReport rep;
    rep.paths = paths;

    const SpectralField xi0 = make_initial(cfg.init, cfg.n);
    const double v0 = norm_sobolev(xi0, -1.0);  // ||v(0)|| = ||xi(0)||_{H^{-1}}
    rep.initial_sq = v0 * v0;
    rep.trace_rate = velocity_noise_trace(cfg.n, cfg.b, cfg.noise_scale);
    rep.rhs = rep.initial_sq + cfg.T * rep.trace_rate;

    std::vector<double> lhs(paths, std::numeric_limits<double>::quiet_NaN());
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
    {
        Integrator integ(cfg);
#pragma omp for schedule(dynamic)
        for (int p = 0; p < paths; ++p) {
            try {
                double diss = 0;
                const auto hook = [&](const TrajectoryState& st, const WienerIncrement&) {
                    // ||v||_{H^{1+c}} = ||xi||_{H^c}, mode-wise identity
                    const double hv = norm_sobolev(st.reconstructed(), cfg.c);
                    diss += 2.0 * cfg.dt * hv * hv;
                };
                const PathRecord rec = integ.integrate_path(std::uint64_t(p), false, hook);
                const double vT = norm_sobolev(*rec.terminal, -1.0);
                lhs[p] = vT * vT + diss;
            } catch (const BlowUpError&) {
                // left as NaN, counted below
            }
        }
    }

    double sum = 0, sumsq = 0;
    int ok = 0;
    for (double x : lhs) {
        if (!std::isfinite(x)) continue;
        sum += x;
        sumsq += x * x;
        ++ok;
    }
    rep.paths = ok;
    rep.lhs_mean = sum / ok;
    const double var = std::max(0.0, sumsq / ok - rep.lhs_mean * rep.lhs_mean);
    rep.lhs_stderr = std::sqrt(var / ok);
    rep.rel_discrepancy = std::abs(rep.lhs_mean - rep.rhs) / rep.rhs;
    return rep;
}

std::vector<ContinuousDependenceRow> continuous_dependence_probe(
    const SimConfig& cfg, const std::vector<double>& eps_list) {
    // Unit-L2 perturbation direction.
    SpectralField dir(Lattice::make(cfg.n));
    dir.set(WaveVector{0, 0, 1}, Complex(1.0 / std::sqrt(2.0), 0), Complex(0, 0));

    std::vector<ContinuousDependenceRow> rows;
    for (const double eps : eps_list) {
        Integrator a(cfg), bI(cfg);
        TrajectoryState sa = a.initial_state();
        TrajectoryState sb = bI.initial_state();
        sb.field += dir * eps;
        const RngStream rng(cfg.seed, 0, StreamPurpose::Noise);
        double sup = norm_sobolev(sa.reconstructed() - sb.reconstructed(), 0.0);
        const int steps = cfg.steps();
        for (int s = 0; s < steps; ++s) {
            const WienerIncrement dW =
                sample_wiener_increment(cfg.dt, a.lattice(), rng, std::uint64_t(s));
            a.step(sa, dW);
            bI.step(sb, dW);
            sup = std::max(sup, norm_sobolev(sa.reconstructed() - sb.reconstructed(), 0.0));
        }
        rows.push_back({eps, sup, eps > 0 ? sup / eps : 0.0});
    }
    return rows;
}

}  // namespace hypervort
