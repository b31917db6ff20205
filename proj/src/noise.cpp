#include "hypervort/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypervort/norms.hpp"

namespace hypervort {

double NoiseSpec::lambda(int k2) const { return std::pow(double(k2), 1.0 + c); }

double NoiseSpec::amplitude(int k2) const { return scale * std::pow(double(k2), -b); }

WienerIncrement sample_wiener_increment(double dt, std::shared_ptr<const Lattice> lat,
                                        const RngStream& rng, std::uint64_t step) {
    if (dt <= 0) throw std::invalid_argument("sample_wiener_increment: dt must be positive");
    WienerIncrement dw;
    dw.dt = dt;
    dw.lat = std::move(lat);
    dw.d.resize(2 * dw.lat->size());
    const double sq = std::sqrt(dt);
    for (std::size_t i = 0; i < dw.lat->size(); ++i) {
        const std::uint32_t code = pack_wavevector(dw.lat->mode(i));
        for (int j = 0; j < 2; ++j) {
            const auto [g1, g2] = rng.normal_pair_mode(code, std::uint32_t(j), step);
            dw.d[2 * i + j] = Complex(g1 * sq, g2 * sq);
        }
    }
    return dw;
}

SpectralField increment_as_field(const WienerIncrement& dw) {
    SpectralField f(dw.lat);
    std::copy(dw.d.begin(), dw.d.end(), f.raw().begin());
    return f;
}

SpectralField colored_increment(const WienerIncrement& dw, double b) {
    SpectralField f = increment_as_field(dw);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = std::pow(double(f.lattice().mode(i).norm2()), -b);
        f.coeff(i, 0) *= w;
        f.coeff(i, 1) *= w;
    }
    return f;
}

double ou_decay(double lambda, double dt) { return std::exp(-lambda * dt); }

double ou_noise_gain(double lambda, double dt) {
    const double x = lambda * dt;
    // (1 - e^{-2x}) / (2x), stable for small x
    const double r = x < 1e-8 ? 1.0 - x : -std::expm1(-2.0 * x) / (2.0 * x);
    return std::sqrt(r);
}

Complex ou_apply_exact(Complex z, int k2, const NoiseSpec& spec, double dt, Complex dbeta) {
    const double lam = spec.lambda(k2);
    return ou_decay(lam, dt) * z + spec.amplitude(k2) * ou_noise_gain(lam, dt) * dbeta;
}

Complex ou_exact_step(Complex z, const WaveVector& k, const NoiseSpec& spec, double dt,
                      const RngStream& rng, std::uint64_t step) {
    if (dt <= 0) throw std::invalid_argument("ou_exact_step: dt must be positive");
    const auto [g1, g2] = rng.normal_pair_mode(pack_wavevector(k), 0, step);
    const double sq = std::sqrt(dt);
    return ou_apply_exact(z, k.norm2(), spec, dt, Complex(g1 * sq, g2 * sq));
}

std::vector<SpectralField> ou_sample_path(const NoiseSpec& spec,
                                          const std::vector<double>& times,
                                          const RngStream& rng) {
    if (times.empty() || times.front() != 0)
        throw std::invalid_argument("ou_sample_path: time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("ou_sample_path: time grid must be strictly increasing");

    auto lat = Lattice::make(spec.n);
    std::vector<SpectralField> path;
    path.reserve(times.size());
    path.emplace_back(lat);  // zero initial state
    SpectralField z(lat);
    for (std::size_t s = 1; s < times.size(); ++s) {
        const double dt = times[s] - times[s - 1];
        const WienerIncrement dw = sample_wiener_increment(dt, lat, rng, s - 1);
        for (std::size_t i = 0; i < lat->size(); ++i) {
            const int k2 = lat->mode(i).norm2();
            for (int j = 0; j < 2; ++j)
                z.coeff(i, j) = ou_apply_exact(z.coeff(i, j), k2, spec, dt, dw.at(i, j));
        }
        path.push_back(z);
    }
    return path;
}

namespace {

// Closed form E ||zeta(T)||_{H^a}^2 = 2 sum_{0<|k|<=n} |k|^{2a} amp^2 (1-e^{-2 lam T})/lam
double ou_expected_sq_norm(double a, const NoiseSpec& spec, int n, double T) {
    double s = 0;
    for (const auto& k : enumerate_lattice(n)) {
        const int k2 = k.norm2();
        const double lam = spec.lambda(k2);
        const double amp = spec.amplitude(k2);
        const double var2 = amp * amp * -std::expm1(-2.0 * lam * T) / lam;  // E|z_{k,j}|^2
        s += 2.0 * std::pow(double(k2), a) * 2.0 * var2;                    // j = 1,2; +/-k
    }
    return s;
}

double loglog_slope(const std::vector<int>& ns, const std::vector<double>& vals) {
    const std::size_t m = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = std::log(double(ns[i]));
        const double y = std::log(std::max(vals[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

RegularityScanResult ou_regularity_scan(double a,
                                        const std::vector<std::pair<double, double>>& bc_list,
                                        const std::vector<int>& n_list, double T, int paths,
                                        std::uint64_t seed) {
    if (n_list.empty()) throw std::invalid_argument("ou_regularity_scan: empty n_list");
    if (T <= 0) throw std::invalid_argument("ou_regularity_scan: horizon must be positive");
    const int nmax = *std::max_element(n_list.begin(), n_list.end());
    auto lat = Lattice::make(nmax);

    RegularityScanResult res;
    res.a = a;
    res.horizon = T;
    res.paths = paths;

    for (const auto& [b, c] : bc_list) {
        NoiseSpec spec{b, c, nmax, 1.0};
        // Per-mode transition std over [0, T], one exact step from zero.
        std::vector<double> stddev(lat->size());
        std::vector<double> weight(lat->size());
        for (std::size_t i = 0; i < lat->size(); ++i) {
            const int k2 = lat->mode(i).norm2();
            const double lam = spec.lambda(k2);
            stddev[i] = spec.amplitude(k2) * std::sqrt(-std::expm1(-2.0 * lam * T) / (2.0 * lam));
            weight[i] = std::pow(double(k2), a);
        }
        std::vector<int> n2s(n_list.size());
        for (std::size_t q = 0; q < n_list.size(); ++q) n2s[q] = n_list[q] * n_list[q];

        // Accumulate ||zeta(T)||^2 truncated to each n, sharing the draws so
        // nested truncations of the same sample stay consistent.
        std::vector<double> sum(n_list.size(), 0), sumsq(n_list.size(), 0);
        for (int p = 0; p < paths; ++p) {
            RngStream rng(seed, std::uint64_t(p), StreamPurpose::Scan);
            std::vector<double> acc(n_list.size(), 0);
            for (std::size_t i = 0; i < lat->size(); ++i) {
                const std::uint32_t code = pack_wavevector(lat->mode(i));
                const int k2 = lat->mode(i).norm2();
                double m2 = 0;
                for (int j = 0; j < 2; ++j) {
                    const auto [g1, g2] = rng.normal_pair_mode(code, std::uint32_t(j), 0);
                    m2 += (g1 * g1 + g2 * g2) * stddev[i] * stddev[i];
                }
                const double contrib = 2.0 * weight[i] * m2;
                for (std::size_t q = 0; q < n_list.size(); ++q)
                    if (k2 <= n2s[q]) acc[q] += contrib;
            }
            for (std::size_t q = 0; q < n_list.size(); ++q) {
                sum[q] += acc[q];
                sumsq[q] += acc[q] * acc[q];
            }
        }

        std::vector<double> means(n_list.size());
        for (std::size_t q = 0; q < n_list.size(); ++q) {
            const double mean = sum[q] / paths;
            const double var = std::max(0.0, sumsq[q] / paths - mean * mean);
            means[q] = mean;
            RegularityScanRow row;
            row.b = b;
            row.c = c;
            row.n = n_list[q];
            row.mean_sq = mean;
            row.std_err = std::sqrt(var / paths);
            row.exact = ou_expected_sq_norm(a, spec, n_list[q], T);
            res.rows.push_back(row);
        }
        std::vector<double> exacts(n_list.size());
        for (std::size_t q = 0; q < n_list.size(); ++q)
            exacts[q] = ou_expected_sq_norm(a, NoiseSpec{b, c, n_list[q], 1.0}, n_list[q], T);
        res.slopes.push_back({b, c, loglog_slope(n_list, means), loglog_slope(n_list, exacts)});
    }
    return res;
}

std::vector<Complex> sample_brownian_increments(int steps, double T, const RngStream& rng) {
    if (steps < 1 || T <= 0)
        throw std::invalid_argument("sample_brownian_increments: need steps >= 1 and T > 0");
    const double sq = std::sqrt(T / steps);
    std::vector<Complex> out(steps);
    for (int i = 0; i < steps; ++i) {
        const auto [g1, g2] = rng.normal_pair(0, std::uint64_t(i));
        out[i] = Complex(g1 * sq, g2 * sq);
    }
    return out;
}

double factorization_check(double alpha, const WaveVector& k, const NoiseSpec& spec,
                           const std::vector<Complex>& dbeta, double T) {
    if (!(alpha > 0 && alpha < 0.5))
        throw std::invalid_argument("factorization_check: alpha must lie in (0, 1/2)");
    const int N = int(dbeta.size());
    if (N < 2) throw std::invalid_argument("factorization_check: need at least 2 increments");
    const double h = T / N;
    const int k2 = k.norm2();
    const double lam = spec.lambda(k2);
    const double amp = spec.amplitude(k2);

    // Direct mild solution at grid times (recursive, exact for point-mass
    // increments placed at the left endpoints).
    std::vector<Complex> zdir(N + 1, Complex(0, 0));
    double zmax = 0;
    for (int m = 0; m < N; ++m) {
        zdir[m + 1] = std::exp(-lam * h) * (zdir[m] + amp * dbeta[m]);
        zmax = std::max(zmax, std::abs(zdir[m + 1]));
    }

    // Y_alpha at grid times: left-endpoint sums of (s-r)^{-alpha} e^{-lam(s-r)} dbeta.
    std::vector<Complex> Y(N + 1, Complex(0, 0));
    for (int m = 1; m <= N; ++m) {
        Complex acc(0, 0);
        for (int i = 0; i < m; ++i) {
            const double gap = (m - i) * h;
            acc += std::pow(gap, -alpha) * std::exp(-lam * gap) * dbeta[i];
        }
        Y[m] = amp * acc;
    }

    // Outer reconstruction, product-integrating the weakly singular factor
    // (T-s)^{alpha-1} exactly per cell, exponential frozen at the left end.
    Complex zrec(0, 0);
    for (int m = 0; m < N; ++m) {
        const double tl = T - m * h;
        const double tr = T - (m + 1) * h;
        const double wsing = (std::pow(tl, alpha) - std::pow(tr, alpha)) / alpha;
        zrec += wsing * std::exp(-lam * tl) * Y[m];
    }
    zrec *= std::sin(M_PI * alpha) / M_PI;

    const double dev = std::abs(zrec - zdir[N]);
    if (zmax == 0) return dev == 0 ? 0.0 : dev;
    return dev / zmax;
}

}  // namespace hypervort
