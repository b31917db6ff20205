#include "hypervort/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace hypervort {

SpectralField fractional_laplacian(double a, const SpectralField& f) {
    SpectralField out = f;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = std::pow(double(f.lattice().mode(i).norm2()), a);
        out.coeff(i, 0) *= w;
        out.coeff(i, 1) *= w;
    }
    return out;
}

SpectralField semigroup_apply(double t, double s, const SpectralField& f) {
    if (t < 0) throw std::invalid_argument("semigroup_apply: t must be nonnegative");
    SpectralField out = f;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = std::exp(-t * std::pow(double(f.lattice().mode(i).norm2()), s));
        out.coeff(i, 0) *= w;
        out.coeff(i, 1) *= w;
    }
    return out;
}

SpectralField curl(const SpectralField& v) {
    SpectralField out(v.lattice_ptr());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double kn = v.lattice().mode(i).norm();
        const Complex ik(0, kn);
        out.coeff(i, 0) = -ik * v.coeff(i, 1);
        out.coeff(i, 1) = ik * v.coeff(i, 0);
    }
    return out;
}

SpectralField biot_savart(const SpectralField& xi) {
    SpectralField out(xi.lattice_ptr());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double kn = xi.lattice().mode(i).norm();
        const Complex iok(0, 1.0 / kn);
        out.coeff(i, 0) = -iok * xi.coeff(i, 1);
        out.coeff(i, 1) = iok * xi.coeff(i, 0);
    }
    return out;
}

SpectralField galerkin_project(int m, const SpectralField& f) {
    if (m < 1) throw std::invalid_argument("galerkin_project: m must be >= 1");
    SpectralField out = f;
    const int m2 = m * m;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.lattice().mode(i).norm2() > m2) {
            out.coeff(i, 0) = 0;
            out.coeff(i, 1) = 0;
        }
    }
    return out;
}

}  // namespace hypervort
