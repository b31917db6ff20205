#ifndef HYPERVORT_NONLINEAR_HPP
#define HYPERVORT_NONLINEAR_HPP

#include <fftw3.h>

#include <memory>
#include <vector>

#include "hypervort/field.hpp"
#include "hypervort/transforms.hpp"

namespace hypervort {

enum class NonlinearForm { Transport, Stretching };

/// Scratch space and FFT plans for dealiased products at a fixed truncation.
/// The padded grid has M >= 3n+2 points per dimension so quadratic products
/// of degree-n fields are alias-free on the retained modes. Holds mutable
/// buffers: one plan per worker thread, never shared concurrently.
class PaddedProductPlan {
  public:
    explicit PaddedProductPlan(std::shared_ptr<const Lattice> lattice);
    PaddedProductPlan(std::shared_ptr<const Lattice> lattice, int M);
    ~PaddedProductPlan();

    PaddedProductPlan(const PaddedProductPlan&) = delete;
    PaddedProductPlan& operator=(const PaddedProductPlan&) = delete;

    int truncation() const { return lat_->truncation(); }
    int grid_size() const { return M_; }
    const std::shared_ptr<const Lattice>& lattice_ptr() const { return lat_; }

    // P[(a . grad) b] truncated to |k| <= n, exact on the retained modes.
    SpectralField advect(const SpectralField& a, const SpectralField& b);

    // Physical samples on the padded grid (used for L_p observables).
    GridField synthesize(const SpectralField& f);

    // Smallest FFT-friendly grid size >= 3n+2.
    static int choose_grid(int n);

  private:
    void synth_to(const SpectralField& f, int comp, bool derivative, int deriv_axis,
                  double* dst);

    std::shared_ptr<const Lattice> lat_;
    int M_;
    std::size_t npts_;
    fftw_complex* buf_;
    fftw_plan fwd_, bwd_;
    std::vector<double> adv_[3];   // advecting field samples
    std::vector<double> grad_;     // one derivative component
    std::vector<double> prod_;     // accumulated product component
};

// B1 = P[(v . grad) xi], the transport nonlinearity. Both fields must match
// the plan's truncation.
SpectralField transport_term(const SpectralField& v, const SpectralField& xi,
                             PaddedProductPlan& plan);

// B2 = P[(xi . grad) v], the vorticity stretching nonlinearity.
SpectralField stretching_term(const SpectralField& xi, const SpectralField& v,
                              PaddedProductPlan& plan);

// Direct O(N^2) convolution reference for the FFT path. Both forms apply the
// derivative to the second argument, mirroring the argument order of
// transport_term / stretching_term; the tag records which physical term a
// call cross-checks. Refused for n > 6 (cost guard).
SpectralField exact_convolution(const SpectralField& a, const SpectralField& b,
                                NonlinearForm form);

}  // namespace hypervort

#endif
