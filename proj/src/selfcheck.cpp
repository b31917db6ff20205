#include "hypervort/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hypervort/dynamics.hpp"
#include "hypervort/girsanov.hpp"
#include "hypervort/noise.hpp"
#include "hypervort/nonlinear.hpp"
#include "hypervort/norms.hpp"
#include "hypervort/operators.hpp"
#include "hypervort/transforms.hpp"

namespace hypervort {

namespace {

SpectralField random_field(int n, std::uint64_t seed, double decay = 5.0) {
    InitialCondition init;
    init.kind = InitialCondition::Kind::SmoothRandom;
    init.seed = seed;
    init.decay = decay;
    return make_initial(init, n);
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
    const double scale = std::max(norm_sobolev(b, 0.0), 1e-300);
    return norm_sobolev(a - b, 0.0) / scale;
}

std::string detail(double worst, double threshold) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "worst %.3e, threshold %.3e", worst, threshold);
    return buf;
}

CheckResult check(const std::string& name, double worst, double threshold) {
    return {name, worst <= threshold, detail(worst, threshold)};
}

}  // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
    std::vector<CheckResult> out;

    // Half-lattice enumeration against brute-force pair counting.
    {
        bool ok = enumerate_lattice(1).size() == 3 && enumerate_lattice(2).size() == 16;
        for (int n = 3; n <= 5 && ok; ++n) {
            std::size_t full = 0;
            for (int x = -n; x <= n; ++x)
                for (int y = -n; y <= n; ++y)
                    for (int z = -n; z <= n; ++z) {
                        const int k2 = x * x + y * y + z * z;
                        if (k2 > 0 && k2 <= n * n) ++full;
                    }
            ok = enumerate_lattice(n).size() * 2 == full;
        }
        out.push_back({"lattice enumeration (one of each +/-k pair)", ok,
                       ok ? "counts match brute force" : "count mismatch"});
    }

    // Frame geometry for every |k| <= 16.
    {
        double worst = 0;
        bool sign_exact = true;
        for (const auto& k : enumerate_lattice(16)) {
            const Frame f = frame_vectors(k);
            const Vec3 kv = k.to_vec3().normalized();
            worst = std::max({worst, std::abs(f.b1.norm() - 1.0), std::abs(f.b2.norm() - 1.0),
                              std::abs(f.b1.dot(f.b2)), std::abs(f.b1.dot(kv)),
                              std::abs(f.b2.dot(kv)), (f.b1.cross(f.b2) - kv).norm()});
            const Frame g = frame_vectors(-k);
            sign_exact = sign_exact && g.b1.x == -f.b1.x && g.b1.y == -f.b1.y &&
                         g.b1.z == -f.b1.z && g.b2.x == -f.b2.x && g.b2.y == -f.b2.y &&
                         g.b2.z == -f.b2.z;
        }
        auto r = check("frame invariants, |k| <= 16", worst, 1e-14);
        r.pass = r.pass && sign_exact;
        if (!sign_exact) r.detail += "; b(-k) != -b(k)";
        out.push_back(r);
    }

    // Spectral <-> physical round trip and reality.
    {
        const SpectralField f = random_field(4, seed);
        const SpectralField back = to_spectral(to_physical(f, 12), 4);
        out.push_back(check("transform round trip (n=4, M=12)", rel_diff(back, f), 1e-12));
        out.push_back(check("reality of synthesis", reality_defect(f, 12), 1e-12));
    }

    // Parseval.
    {
        const SpectralField f = random_field(8, seed + 1);
        const double a = norm_lp(f, 2.0, 2 * 8 + 2);
        const double b = norm_sobolev(f, 0.0);
        out.push_back(check("Parseval (grid L2 vs spectral)", std::abs(a - b) / b, 1e-10));
    }

    // Leray projection: annihilates gradients, fixes div-free, idempotent.
    {
        auto lat = Lattice::make(4);
        CartesianCoeffs raw(lat);
        const RngStream rng(seed + 2, 0, StreamPurpose::Probe);
        for (std::size_t i = 0; i < lat->size(); ++i) {
            const std::uint32_t code = pack_wavevector(lat->mode(i));
            std::array<Complex, 3> v;
            for (int c = 0; c < 3; ++c) {
                const auto [g1, g2] = rng.normal_pair_mode(code, std::uint32_t(c), 0);
                v[c] = Complex(g1, g2);
            }
            raw.entry(i) = v;
        }
        const SpectralField p = leray_project(raw);
        // gradient mode i k phi: project and measure
        CartesianCoeffs grad(lat);
        for (std::size_t i = 0; i < lat->size(); ++i) {
            const Vec3 kv = lat->mode(i).to_vec3();
            const Complex phi(0.3, -0.7);
            grad.entry(i) = {Complex(0, 1) * phi * kv.x, Complex(0, 1) * phi * kv.y,
                             Complex(0, 1) * phi * kv.z};
        }
        const double g0 = norm_sobolev(leray_project(grad), 0.0);
        // idempotence: re-project p through its own cartesian coefficients
        CartesianCoeffs again(lat);
        for (std::size_t i = 0; i < lat->size(); ++i) again.entry(i) = p.cartesian(i);
        const double idem = rel_diff(leray_project(again), p);
        out.push_back(check("Leray annihilates gradients", g0, 1e-12));
        out.push_back(check("Leray idempotent", idem, 1e-14));
    }

    // curl / Biot-Savart round trips and the mode-wise norm shift.
    {
        const SpectralField xi = random_field(8, seed + 3);
        out.push_back(
            check("curl(biot_savart(xi)) = xi (n=8)", rel_diff(curl(biot_savart(xi)), xi), 1e-12));
        out.push_back(check("biot_savart(curl(v)) = v (n=8)",
                            rel_diff(biot_savart(curl(xi)), xi), 1e-12));
        double worst = 0;
        for (double a : {0.0, 1.0, 2.0}) {
            const double lhs = norm_sobolev(biot_savart(xi), a);
            const double rhs = norm_sobolev(xi, a - 1.0);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
        out.push_back(check("||T xi||_{H^a} = ||xi||_{H^{a-1}}", worst, 1e-12));
    }

    // Trilinear identities and the convolution oracle.
    {
        auto lat = Lattice::make(4);
        PaddedProductPlan plan(lat);
        double worst_cancel = 0, worst_anti = 0;
        for (int trial = 0; trial < 10; ++trial) {
            const SpectralField u = random_field(4, seed + 10 + trial);
            const SpectralField v = random_field(4, seed + 40 + trial);
            const SpectralField w = random_field(4, seed + 70 + trial);
            const SpectralField buv = plan.advect(u, v);
            const SpectralField buw = plan.advect(u, w);
            const double scale = norm_sobolev(buv, 0.0) * norm_sobolev(v, 0.0) + 1e-300;
            worst_cancel = std::max(worst_cancel, std::abs(inner_l2(buv, v)) / scale);
            const double anti_scale =
                std::abs(inner_l2(buv, w)) + std::abs(inner_l2(buw, v)) + 1e-300;
            worst_anti =
                std::max(worst_anti, std::abs(inner_l2(buv, w) + inner_l2(buw, v)) / anti_scale);
        }
        out.push_back(check("<P[(u.grad)v], v> = 0", worst_cancel, 1e-10));
        out.push_back(check("trilinear antisymmetry", worst_anti, 1e-10));

        auto lat3 = Lattice::make(3);
        PaddedProductPlan plan3(lat3);
        const SpectralField a = random_field(3, seed + 5);
        const SpectralField b = random_field(3, seed + 6);
        const double d1 = rel_diff(transport_term(a, b, plan3),
                                   exact_convolution(a, b, NonlinearForm::Transport));
        const double d2 = rel_diff(stretching_term(a, b, plan3),
                                   exact_convolution(a, b, NonlinearForm::Stretching));
        out.push_back(check("FFT nonlinearity = convolution oracle (n=3)", std::max(d1, d2),
                            1e-10));
    }

    // Semigroup contraction and Galerkin contraction.
    {
        const SpectralField f = random_field(6, seed + 7);
        double worst = 0;
        for (double a : {0.0, 1.0, 2.0}) {
            const double before = norm_sobolev(f, a);
            const double after = norm_sobolev(semigroup_apply(0.37, 2.0, f), a);
            worst = std::max(worst, (after - before) / before);
        }
        const double gp = norm_sobolev(galerkin_project(3, f), 0.0) - norm_sobolev(f, 0.0);
        out.push_back({"semigroup and Galerkin contraction", worst <= 0 && gp <= 0,
                       detail(std::max(worst, gp), 0.0)});
    }

    // OU stationary variance at k = (1,0,0), b = c = 1 (quick MC, 5 sigma).
    {
        const NoiseSpec spec{1.0, 1.0, 1, 1.0};
        const WaveVector k{1, 0, 0};
        const RngStream rng(seed + 8, 0, StreamPurpose::Probe);
        const int samples = 4000;
        double acc = 0, acc2 = 0;
        for (int s = 0; s < samples; ++s) {
            Complex z = 0;
            // 12 steps of dt = 0.5: e^{-2*6} leaves no initial transient
            for (int step = 0; step < 12; ++step)
                z = ou_exact_step(z, k, spec, 0.5, rng, std::uint64_t(12 * s + step));
            const double m = std::norm(z);
            acc += m;
            acc2 += m * m;
        }
        const double mean = acc / samples;
        const double se = std::sqrt(std::max(0.0, acc2 / samples - mean * mean) / samples);
        const double zscore = std::abs(mean - 1.0) / se;
        out.push_back({"OU stationary variance (E|z|^2 = 1)", zscore <= 5.0,
                       detail(zscore, 5.0) + " (sigma units)"});
    }

    // Determinism: increments, coloring, and whole paths are bit-stable.
    {
        auto lat = Lattice::make(3);
        const RngStream rng(seed + 9, 17, StreamPurpose::Noise);
        const auto dw1 = sample_wiener_increment(1e-3, lat, rng, 5);
        const auto dw2 = sample_wiener_increment(1e-3, lat, rng, 5);
        bool bits = dw1.d == dw2.d;
        const SpectralField colored = colored_increment(dw1, 1.0);
        const SpectralField via_op = fractional_laplacian(-1.0, increment_as_field(dw1));
        bits = bits && colored.raw() == via_op.raw();

        SimConfig cfg;
        cfg.n = 2;
        cfg.T = 0.01;
        cfg.dt = 1e-3;
        cfg.system = SystemKind::FullVorticity;
        Integrator integ(cfg);
        const PathRecord r1 = integ.integrate_path(3);
        const PathRecord r2 = integ.integrate_path(3);
        bits = bits && r1.terminal->raw() == r2.terminal->raw();
        out.push_back({"determinism (increments, coloring, paths)", bits,
                       bits ? "bit-identical" : "bit mismatch"});
    }

    // Difference-form reconstruction against the direct transport route.
    {
        SimConfig cfg;
        cfg.n = 2;
        cfg.T = 0.01;
        cfg.dt = 1e-3;
        cfg.init.kind = InitialCondition::Kind::SmoothRandom;
        cfg.init.seed = seed + 11;
        cfg.system = SystemKind::TransportOnly;
        Integrator direct(cfg);
        const PathRecord rd = direct.integrate_path(0);
        cfg.system = SystemKind::DifferenceBeta;
        Integrator diff(cfg);
        const PathRecord rb = diff.integrate_path(0);
        out.push_back(check("difference-form two-route consistency (n=2)",
                            rel_diff(*rb.terminal, *rd.terminal), 1e-9));
    }

    return out;
}

bool report_selfcheck(std::ostream& os, std::uint64_t seed) {
    bool all = true;
    for (const auto& r : run_selfcheck(seed)) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.detail << ")\n";
        all = all && r.pass;
    }
    return all;
}

}  // namespace hypervort
