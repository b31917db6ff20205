#ifndef HYPERVORT_NORMS_HPP
#define HYPERVORT_NORMS_HPP

#include "hypervort/field.hpp"
#include "hypervort/transforms.hpp"

namespace hypervort {

// H^a norm: sqrt of sum_k |k|^{2a} (|u1|^2 + |u2|^2) over the full lattice,
// in the orthonormalized basis (no (2pi)^3 factor). a = 0 is the L2 norm.
double norm_sobolev(const SpectralField& f, double a);

// L_p norm by grid quadrature against the normalized measure dx/(2pi)^3:
// (mean over grid points of |u(x)|^p)^(1/p). Exact for p = 2 (Parseval);
// approximate for p > 2 (use M >= 3n+2 there). Throws for p < 2.
double norm_lp(const SpectralField& f, double p, int M);

// L_p norm of an already synthesized grid field (same quadrature).
double grid_norm_lp(const GridField& g, double p);

}  // namespace hypervort

#endif
