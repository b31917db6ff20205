#include "hypervort/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace hypervort {

namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Workspace {
    int M;
    fftw_complex* buf;
    fftw_plan fwd, bwd;

    explicit Workspace(int M_) : M(M_) {
        const std::size_t npts = std::size_t(M) * M * M;
        buf = fftw_alloc_complex(npts);
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd = fftw_plan_dft_3d(M, M, M, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_3d(M, M, M, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Workspace() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    std::size_t wrap(const WaveVector& k) const {
        const auto w = [this](int t) { return std::size_t(((t % M) + M) % M); };
        return (w(k.x) * M + w(k.y)) * M + w(k.z);
    }
    void clear() { std::memset(buf, 0, sizeof(fftw_complex) * M * M * M); }
};

void check_grid(int M, int n, const char* who) {
    if (M < 2 * n + 2)
        throw std::invalid_argument(std::string(who) +
                                    ": grid size M must be >= 2n+2, would alias");
}

// Place one Cartesian component of the field (with conjugate completion)
// into the workspace and run the backward transform.
void synthesize_component(Workspace& ws, const SpectralField& f, int comp) {
    ws.clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto v = f.cartesian(i);
        const WaveVector& k = f.lattice().mode(i);
        const Complex c = v[comp];
        auto* p = ws.buf + ws.wrap(k);
        (*p)[0] = c.real();
        (*p)[1] = c.imag();
        auto* q = ws.buf + ws.wrap(-k);
        (*q)[0] = c.real();
        (*q)[1] = -c.imag();
    }
    fftw_execute(ws.bwd);
}

}  // namespace

GridField to_physical(const SpectralField& f, int M) {
    check_grid(M, f.truncation(), "to_physical");
    GridField g(M);
    Workspace ws(M);
    for (int comp = 0; comp < 3; ++comp) {
        synthesize_component(ws, f, comp);
        const std::size_t npts = g.points();
        for (std::size_t p = 0; p < npts; ++p) g.values[p * 3 + comp] = ws.buf[p][0];
    }
    return g;
}

double reality_defect(const SpectralField& f, int M) {
    check_grid(M, f.truncation(), "reality_defect");
    Workspace ws(M);
    double max_im = 0, max_re = 0;
    for (int comp = 0; comp < 3; ++comp) {
        synthesize_component(ws, f, comp);
        const std::size_t npts = std::size_t(M) * M * M;
        for (std::size_t p = 0; p < npts; ++p) {
            max_im = std::max(max_im, std::abs(ws.buf[p][1]));
            max_re = std::max(max_re, std::abs(ws.buf[p][0]));
        }
    }
    return max_re > 0 ? max_im / max_re : max_im;
}

std::array<Complex, 2> frame_coords(const std::array<Complex, 3>& v, const Frame& fr) {
    return {v[0] * fr.b1.x + v[1] * fr.b1.y + v[2] * fr.b1.z,
            v[0] * fr.b2.x + v[1] * fr.b2.y + v[2] * fr.b2.z};
}

SpectralField to_spectral(const GridField& g, int n) {
    check_grid(g.M, n, "to_spectral");
    auto lat = Lattice::make(n);
    SpectralField out(lat);
    Workspace ws(g.M);
    const std::size_t npts = g.points();
    const double scale = 1.0 / double(npts);

    std::vector<std::array<Complex, 3>> cart(lat->size());
    for (int comp = 0; comp < 3; ++comp) {
        for (std::size_t p = 0; p < npts; ++p) {
            ws.buf[p][0] = g.values[p * 3 + comp];
            ws.buf[p][1] = 0.0;
        }
        fftw_execute(ws.fwd);
        for (std::size_t i = 0; i < lat->size(); ++i) {
            const auto* p = ws.buf + ws.wrap(lat->mode(i));
            cart[i][comp] = Complex((*p)[0] * scale, (*p)[1] * scale);
        }
    }
    for (std::size_t i = 0; i < lat->size(); ++i) {
        const WaveVector& k = lat->mode(i);
        const Vec3 kv = k.to_vec3();
        const double k2 = double(k.norm2());
        auto v = cart[i];
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

CartesianCoeffs::CartesianCoeffs(std::shared_ptr<const Lattice> lattice)
    : lat_(std::move(lattice)), v_(lat_->size(), {Complex(0, 0), Complex(0, 0), Complex(0, 0)}) {}

void CartesianCoeffs::set(const WaveVector& k, const std::array<Complex, 3>& v) {
    if (in_half_lattice(k)) {
        const int i = lat_->index_of(k);
        if (i < 0) throw std::invalid_argument("CartesianCoeffs::set: mode outside truncation");
        v_[i] = v;
        return;
    }
    const int i = lat_->index_of(-k);
    if (i < 0) throw std::invalid_argument("CartesianCoeffs::set: mode outside truncation");
    v_[i] = {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
}

std::array<Complex, 3> CartesianCoeffs::at(const WaveVector& k) const {
    if (in_half_lattice(k)) {
        const int i = lat_->index_of(k);
        if (i < 0) return {};
        return v_[i];
    }
    const int i = lat_->index_of(-k);
    if (i < 0) return {};
    return {std::conj(v_[i][0]), std::conj(v_[i][1]), std::conj(v_[i][2])};
}

SpectralField leray_project(const CartesianCoeffs& raw) {
    SpectralField out(raw.lattice_ptr());
    for (std::size_t i = 0; i < raw.lattice().size(); ++i) {
        const WaveVector& k = raw.lattice().mode(i);
        const Vec3 kv = k.to_vec3();
        const double k2 = double(k.norm2());
        auto v = raw.entry(i);
        const Complex kdotv = v[0] * kv.x + v[1] * kv.y + v[2] * kv.z;
        v[0] -= kdotv * (kv.x / k2);
        v[1] -= kdotv * (kv.y / k2);
        v[2] -= kdotv * (kv.z / k2);
        const auto uv = frame_coords(v, raw.lattice().frame(i));
        out.coeff(i, 0) = uv[0];
        out.coeff(i, 1) = uv[1];
    }
    return out;
}

}  // namespace hypervort
