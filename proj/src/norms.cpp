#include "hypervort/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace hypervort {

double norm_sobolev(const SpectralField& f, double a) {
    double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = std::pow(double(f.lattice().mode(i).norm2()), a);
        s += w * (std::norm(f.coeff(i, 0)) + std::norm(f.coeff(i, 1)));
    }
    return std::sqrt(2.0 * s);
}

double grid_norm_lp(const GridField& g, double p) {
    if (p < 2.0) throw std::invalid_argument("norm_lp: only p >= 2 is supported");
    double s = 0;
    const std::size_t npts = g.points();
    for (std::size_t i = 0; i < npts; ++i) {
        const double* v = &g.values[i * 3];
        const double mag2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        s += std::pow(mag2, 0.5 * p);
    }
    return std::pow(s / double(npts), 1.0 / p);
}

double norm_lp(const SpectralField& f, double p, int M) {
    if (p < 2.0) throw std::invalid_argument("norm_lp: only p >= 2 is supported");
    return grid_norm_lp(to_physical(f, M), p);
}

}  // namespace hypervort
