#ifndef HYPERVORT_OPERATORS_HPP
#define HYPERVORT_OPERATORS_HPP

#include "hypervort/field.hpp"

namespace hypervort {

// (-Delta)^a: coefficients scaled by |k|^{2a}. The zero mode is excluded by
// construction so negative powers are safe.
SpectralField fractional_laplacian(double a, const SpectralField& f);

// e^{-t(-Delta)^s}: coefficients scaled by e^{-t |k|^{2s}}. Throws for t < 0.
SpectralField semigroup_apply(double t, double s, const SpectralField& f);

// Curl in frame coordinates: (u1, u2) -> (-i|k| u2, i|k| u1) per mode.
SpectralField curl(const SpectralField& v);

// Biot-Savart map T (velocity from vorticity), the inverse of curl on
// zero-mean divergence-free fields: (x1, x2) -> (-i x2/|k|, i x1/|k|).
SpectralField biot_savart(const SpectralField& xi);

// Galerkin projection: zero all modes with |k| > m. Throws for m < 1.
SpectralField galerkin_project(int m, const SpectralField& f);

}  // namespace hypervort

#endif
