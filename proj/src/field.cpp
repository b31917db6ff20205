#include "hypervort/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hypervort {

SpectralField::SpectralField(std::shared_ptr<const Lattice> lattice)
    : lat_(std::move(lattice)), a_(2 * lat_->size(), Complex(0, 0)) {}

std::array<Complex, 2> SpectralField::at(const WaveVector& k) const {
    if (in_half_lattice(k)) {
        const int i = lat_->index_of(k);
        if (i < 0) return {Complex(0, 0), Complex(0, 0)};
        return {coeff(i, 0), coeff(i, 1)};
    }
    const int i = lat_->index_of(-k);
    if (i < 0) return {Complex(0, 0), Complex(0, 0)};
    return {-std::conj(coeff(i, 0)), -std::conj(coeff(i, 1))};
}

void SpectralField::set(const WaveVector& k, Complex u1, Complex u2) {
    if (in_half_lattice(k)) {
        const int i = lat_->index_of(k);
        if (i < 0) throw std::invalid_argument("SpectralField::set: mode outside truncation");
        coeff(i, 0) = u1;
        coeff(i, 1) = u2;
        return;
    }
    const int i = lat_->index_of(-k);
    if (i < 0) throw std::invalid_argument("SpectralField::set: mode outside truncation");
    coeff(i, 0) = -std::conj(u1);
    coeff(i, 1) = -std::conj(u2);
}

std::array<Complex, 3> SpectralField::cartesian(std::size_t mode) const {
    const Frame& fr = lat_->frame(mode);
    const Complex u1 = coeff(mode, 0), u2 = coeff(mode, 1);
    return {u1 * fr.b1.x + u2 * fr.b2.x, u1 * fr.b1.y + u2 * fr.b2.y,
            u1 * fr.b1.z + u2 * fr.b2.z};
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : a_) c *= s;
    return *this;
}

SpectralField SpectralField::operator+(const SpectralField& o) const {
    SpectralField r = *this;
    r += o;
    return r;
}

SpectralField SpectralField::operator-(const SpectralField& o) const {
    SpectralField r = *this;
    r -= o;
    return r;
}

SpectralField SpectralField::operator*(double s) const {
    SpectralField r = *this;
    r *= s;
    return r;
}

double inner_l2(const SpectralField& f, const SpectralField& g) {
    double s = 0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (int j = 0; j < 2; ++j)
            s += std::real(f.coeff(i, j) * std::conj(g.coeff(i, j)));
    return 2.0 * s;  // conjugate modes contribute the same amount
}

void write_field_csv(std::ostream& os, const SpectralField& f) {
    os << "kx,ky,kz,u1_re,u1_im,u2_re,u2_im\n";
    char buf[160];
    for (std::size_t i = 0; i < f.size(); ++i) {
        const WaveVector& k = f.lattice().mode(i);
        const Complex u1 = f.coeff(i, 0), u2 = f.coeff(i, 1);
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g,%.17g,%.17g,%.17g\n", k.x, k.y, k.z,
                      u1.real(), u1.imag(), u2.real(), u2.imag());
        os << buf;
    }
}

SpectralField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("kx,ky,kz", 0) != 0)
        throw std::runtime_error("read_field_csv: missing header");
    struct Row {
        WaveVector k;
        Complex u1, u2;
    };
    std::vector<Row> rows;
    int max_k2 = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        Row r;
        double a, b, c, d;
        if (std::sscanf(line.c_str(), "%d,%d,%d,%lf,%lf,%lf,%lf", &r.k.x, &r.k.y, &r.k.z, &a, &b,
                        &c, &d) != 7)
            throw std::runtime_error("read_field_csv: malformed row: " + line);
        r.u1 = Complex(a, b);
        r.u2 = Complex(c, d);
        max_k2 = std::max(max_k2, r.k.norm2());
        rows.push_back(r);
    }
    // The serialized lattice always contains (n,0,0), so max |k|^2 = n^2.
    const int n = std::max(1, int(std::lround(std::sqrt(double(max_k2)))));
    SpectralField f(Lattice::make(n));
    for (const auto& r : rows) f.set(r.k, r.u1, r.u2);
    return f;
}

}  // namespace hypervort
