#ifndef HYPERVORT_TRANSFORMS_HPP
#define HYPERVORT_TRANSFORMS_HPP

#include <memory>
#include <vector>

#include "hypervort/field.hpp"

namespace hypervort {

/// Samples of a real 3-vector field on the uniform M^3 grid of the torus,
/// points x_m = 2*pi*m/M (the same point set as the [-pi,pi]^3 grid).
/// Layout: value(ix,iy,iz)[comp] at ((ix*M+iy)*M+iz)*3+comp.
struct GridField {
    int M = 0;
    std::vector<double> values;

    GridField() = default;
    explicit GridField(int M_) : M(M_), values(std::size_t(M_) * M_ * M_ * 3, 0.0) {}

    double& at(int ix, int iy, int iz, int c) {
        return values[((std::size_t(ix) * M + iy) * M + iz) * 3 + c];
    }
    double at(int ix, int iy, int iz, int c) const {
        return values[((std::size_t(ix) * M + iy) * M + iz) * 3 + c];
    }
    std::size_t points() const { return std::size_t(M) * M * M; }
};

// Fourier synthesis u(x) = sum_k u_k e^{i k.x} on the M^3 grid.
// Requires M >= 2n+2 (throws otherwise: the grid would alias).
GridField to_physical(const SpectralField& f, int M);

// Largest |imaginary part| of the synthesis relative to the field scale;
// zero up to roundoff for any SpectralField by the conjugate storage rule.
double reality_defect(const SpectralField& f, int M);

// Fourier analysis of a real grid field, Leray projection included,
// truncated to |k| <= n. Requires M >= 2n+2.
SpectralField to_spectral(const GridField& g, int n);

/// Cartesian coefficient table on the half lattice (conjugate-consistent
/// full-lattice values implied), the input format of leray_project.
class CartesianCoeffs {
  public:
    explicit CartesianCoeffs(std::shared_ptr<const Lattice> lattice);

    const Lattice& lattice() const { return *lat_; }
    const std::shared_ptr<const Lattice>& lattice_ptr() const { return lat_; }

    // Accepts any full-lattice k; values at -k are folded to conj storage.
    void set(const WaveVector& k, const std::array<Complex, 3>& v);
    std::array<Complex, 3> at(const WaveVector& k) const;

    std::array<Complex, 3>& entry(std::size_t mode) { return v_[mode]; }
    const std::array<Complex, 3>& entry(std::size_t mode) const { return v_[mode]; }

  private:
    std::shared_ptr<const Lattice> lat_;
    std::vector<std::array<Complex, 3>> v_;
};

// Per mode v -> v - (k.v) k/|k|^2, expressed in frame coordinates.
SpectralField leray_project(const CartesianCoeffs& raw);

// Frame decomposition of one already-projected Cartesian coefficient.
std::array<Complex, 2> frame_coords(const std::array<Complex, 3>& v, const Frame& fr);

}  // namespace hypervort

#endif
