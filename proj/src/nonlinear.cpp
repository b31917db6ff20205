#include "hypervort/nonlinear.hpp"

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace hypervort {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

inline std::size_t wrap_index(const WaveVector& k, int M) {
    const auto w = [M](int t) { return std::size_t(((t % M) + M) % M); };
    return (w(k.x) * M + w(k.y)) * M + w(k.z);
}

bool fft_friendly(int m) {
    for (int p : {2, 3, 5})
        while (m % p == 0) m /= p;
    return m == 1;
}

}  // namespace

int PaddedProductPlan::choose_grid(int n) {
    int M = 3 * n + 2;
    if (M % 2) ++M;
    while (!fft_friendly(M)) M += 2;
    return M;
}

PaddedProductPlan::PaddedProductPlan(std::shared_ptr<const Lattice> lattice)
    : PaddedProductPlan(lattice, choose_grid(lattice->truncation())) {}

PaddedProductPlan::PaddedProductPlan(std::shared_ptr<const Lattice> lattice, int M)
    : lat_(std::move(lattice)), M_(M), npts_(std::size_t(M) * M * M) {
    if (M_ < 3 * lat_->truncation() + 2)
        throw std::invalid_argument("PaddedProductPlan: M must be >= 3n+2 for dealiasing");
    buf_ = fftw_alloc_complex(npts_);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd_ = fftw_plan_dft_3d(M_, M_, M_, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_3d(M_, M_, M_, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (auto& a : adv_) a.resize(npts_);
    grad_.resize(npts_);
    prod_.resize(npts_);
}

PaddedProductPlan::~PaddedProductPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
}

void PaddedProductPlan::synth_to(const SpectralField& f, int comp, bool derivative,
                                 int deriv_axis, double* dst) {
    std::memset(buf_, 0, sizeof(fftw_complex) * npts_);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const WaveVector& k = f.lattice().mode(i);
        Complex c = f.cartesian(i)[comp];
        if (derivative) {
            const int kj = deriv_axis == 0 ? k.x : (deriv_axis == 1 ? k.y : k.z);
            c *= Complex(0, double(kj));
        }
        auto* p = buf_ + wrap_index(k, M_);
        (*p)[0] = c.real();
        (*p)[1] = c.imag();
        auto* q = buf_ + wrap_index(-k, M_);
        (*q)[0] = c.real();
        (*q)[1] = -c.imag();
    }
    fftw_execute(bwd_);
    for (std::size_t p = 0; p < npts_; ++p) dst[p] = buf_[p][0];
}

GridField PaddedProductPlan::synthesize(const SpectralField& f) {
    if (f.truncation() != truncation())
        throw std::invalid_argument("PaddedProductPlan: truncation mismatch");
    GridField g(M_);
    for (int comp = 0; comp < 3; ++comp) {
        synth_to(f, comp, false, 0, grad_.data());
        for (std::size_t p = 0; p < npts_; ++p) g.values[p * 3 + comp] = grad_[p];
    }
    return g;
}

SpectralField PaddedProductPlan::advect(const SpectralField& a, const SpectralField& b) {
    if (a.truncation() != truncation() || b.truncation() != truncation())
        throw std::invalid_argument("PaddedProductPlan: truncation mismatch");

    for (int j = 0; j < 3; ++j) synth_to(a, j, false, 0, adv_[j].data());

    const double scale = 1.0 / double(npts_);
    std::vector<std::array<Complex, 3>> cart(lat_->size());
    for (int comp = 0; comp < 3; ++comp) {
        std::memset(prod_.data(), 0, sizeof(double) * npts_);
        for (int j = 0; j < 3; ++j) {
            synth_to(b, comp, true, j, grad_.data());
            const double* aj = adv_[j].data();
            for (std::size_t p = 0; p < npts_; ++p) prod_[p] += aj[p] * grad_[p];
        }
        for (std::size_t p = 0; p < npts_; ++p) {
            buf_[p][0] = prod_[p];
            buf_[p][1] = 0.0;
        }
        fftw_execute(fwd_);
        for (std::size_t i = 0; i < lat_->size(); ++i) {
            const auto* p = buf_ + wrap_index(lat_->mode(i), M_);
            cart[i][comp] = Complex((*p)[0] * scale, (*p)[1] * scale);
        }
    }

    SpectralField out(lat_);
    for (std::size_t i = 0; i < lat_->size(); ++i) {
        const WaveVector& k = lat_->mode(i);
        const Vec3 kv = k.to_vec3();
        const double k2 = double(k.norm2());
        auto v = cart[i];
        const Complex kdotv = v[0] * kv.x + v[1] * kv.y + v[2] * kv.z;
        v[0] -= kdotv * (kv.x / k2);
        v[1] -= kdotv * (kv.y / k2);
        v[2] -= kdotv * (kv.z / k2);
        const auto uv = frame_coords(v, lat_->frame(i));
        out.coeff(i, 0) = uv[0];
        out.coeff(i, 1) = uv[1];
    }
    return out;
}

SpectralField transport_term(const SpectralField& v, const SpectralField& xi,
                             PaddedProductPlan& plan) {
    return plan.advect(v, xi);
}

SpectralField stretching_term(const SpectralField& xi, const SpectralField& v,
                              PaddedProductPlan& plan) {
    return plan.advect(xi, v);
}

SpectralField exact_convolution(const SpectralField& a, const SpectralField& b,
                                NonlinearForm /*form*/) {
    const int n = a.truncation();
    if (n != b.truncation())
        throw std::invalid_argument("exact_convolution: truncation mismatch");
    if (n > 6) throw std::invalid_argument("exact_convolution: refused for n > 6 (cost guard)");

    const auto lat = a.lattice_ptr();
    struct Entry {
        WaveVector k;
        std::array<Complex, 3> v;
    };
    // Expand both operands to the full lattice.
    const auto expand = [](const SpectralField& f) {
        std::vector<Entry> out;
        out.reserve(2 * f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            const auto v = f.cartesian(i);
            const WaveVector& k = f.lattice().mode(i);
            out.push_back({k, v});
            out.push_back({-k, {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}});
        }
        return out;
    };
    const auto ea = expand(a);
    const auto eb = expand(b);

    std::vector<std::array<Complex, 3>> acc(lat->size(),
                                            {Complex(0, 0), Complex(0, 0), Complex(0, 0)});
    const int n2 = n * n;
    for (const auto& pa : ea)
        for (const auto& pb : eb) {
            const WaveVector m{pa.k.x + pb.k.x, pa.k.y + pb.k.y, pa.k.z + pb.k.z};
            const int m2 = m.norm2();
            if (m2 == 0 || m2 > n2 || !in_half_lattice(m)) continue;
            const int idx = lat->index_of(m);
            if (idx < 0) continue;
            // (a . grad) b at m: i (a_hat(ka) . kb) b_hat(kb)
            const Complex adotk =
                pa.v[0] * double(pb.k.x) + pa.v[1] * double(pb.k.y) + pa.v[2] * double(pb.k.z);
            const Complex s = Complex(0, 1) * adotk;
            acc[idx][0] += s * pb.v[0];
            acc[idx][1] += s * pb.v[1];
            acc[idx][2] += s * pb.v[2];
        }

    SpectralField out(lat);
    for (std::size_t i = 0; i < lat->size(); ++i) {
        const WaveVector& k = lat->mode(i);
        const Vec3 kv = k.to_vec3();
        const double k2 = double(k.norm2());
        auto v = acc[i];
        const Complex kdotv = v[0] * kv.x + v[1] * kv.y + v[2] * kv.z;
        v[0] -= kdotv * (kv.x / k2);
        v[1] -= kdotv * (kv.y / k2);
        v[2] -= kdotv * (kv.z / k2);
        const auto uv = frame_coords(v, lat->frame(i));
        out.coeff(i, 0) = uv[0];
        out.coeff(i, 1) = uv[1];
    }
    return out;
}

}  // namespace hypervort
