#ifndef HYPERVORT_FIELD_HPP
#define HYPERVORT_FIELD_HPP

#include <complex>
#include <iosfwd>
#include <memory>
#include <vector>

#include "hypervort/lattice.hpp"

namespace hypervort {

using Complex = std::complex<double>;

/// Divergence-free, zero-mean real vector field stored as two complex frame
/// coordinates per half-lattice mode. Coefficients at -k are never stored;
/// they are implied by u(-k,j) = -conj(u(k,j)), which keeps the represented
/// physical field real by construction.
class SpectralField {
  public:
    explicit SpectralField(std::shared_ptr<const Lattice> lattice);

    static SpectralField zero(std::shared_ptr<const Lattice> lattice) {
        return SpectralField(std::move(lattice));
    }

    const Lattice& lattice() const { return *lat_; }
    const std::shared_ptr<const Lattice>& lattice_ptr() const { return lat_; }
    int truncation() const { return lat_->truncation(); }
    std::size_t size() const { return lat_->size(); }

    Complex& coeff(std::size_t mode, int j) { return a_[2 * mode + j]; }
    const Complex& coeff(std::size_t mode, int j) const { return a_[2 * mode + j]; }

    // Frame coefficients at an arbitrary full-lattice wavevector (conjugate
    // rule applied for modes outside the half lattice). Zero off-lattice.
    std::array<Complex, 2> at(const WaveVector& k) const;
    void set(const WaveVector& k, Complex u1, Complex u2);

    // Cartesian coefficient vector at a stored mode index.
    std::array<Complex, 3> cartesian(std::size_t mode) const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);
    SpectralField operator+(const SpectralField& o) const;
    SpectralField operator-(const SpectralField& o) const;
    SpectralField operator*(double s) const;

    bool same_lattice(const SpectralField& o) const { return lat_ == o.lat_ || lat_->truncation() == o.lat_->truncation(); }

    const std::vector<Complex>& raw() const { return a_; }
    std::vector<Complex>& raw() { return a_; }

  private:
    std::shared_ptr<const Lattice> lat_;
    std::vector<Complex> a_;  // [2*mode + j], j = 0,1
};

// L2 inner product of two real fields, summed over the full lattice.
double inner_l2(const SpectralField& f, const SpectralField& g);

// CSV serialization: fixed header "kx,ky,kz,u1_re,u1_im,u2_re,u2_im",
// one row per stored half-lattice mode, round-trip exact.
void write_field_csv(std::ostream& os, const SpectralField& f);
SpectralField read_field_csv(std::istream& is);

}  // namespace hypervort

#endif
