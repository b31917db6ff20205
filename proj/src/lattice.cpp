#include "hypervort/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace hypervort {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
    const double r = norm();
    return {x / r, y / r, z / r};
}

double WaveVector::norm() const { return std::sqrt(double(norm2())); }

bool in_half_lattice(const WaveVector& k) {
    if (k.x != 0) return k.x > 0;
    if (k.y != 0) return k.y > 0;
    return k.z > 0;
}

std::uint32_t pack_wavevector(const WaveVector& k) {
    const auto u = [](int c) { return std::uint32_t(c + 128) & 0xffu; };
    return (u(k.x) << 16) | (u(k.y) << 8) | u(k.z);
}

std::vector<WaveVector> enumerate_lattice(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_lattice: truncation n must be >= 1");
    std::vector<WaveVector> out;
    const int n2 = n * n;
    for (int x = -n; x <= n; ++x)
        for (int y = -n; y <= n; ++y)
            for (int z = -n; z <= n; ++z) {
                const WaveVector k{x, y, z};
                const int k2 = k.norm2();
                if (k2 == 0 || k2 > n2) continue;
                if (in_half_lattice(k)) out.push_back(k);
            }
    return out;  // loop order is already lexicographic
}

Frame frame_vectors(const WaveVector& k) {
    if (k.norm2() == 0) throw std::invalid_argument("frame_vectors: zero wavevector");
    if (!in_half_lattice(k)) {
        const Frame f = frame_vectors(-k);
        return {-f.b1, -f.b2};
    }
    const Vec3 kv = k.to_vec3();
    // Axis e1 unless k is parallel to it, then e2.
    const Vec3 axis = (k.y == 0 && k.z == 0) ? Vec3{0, 1, 0} : Vec3{1, 0, 0};
    const Vec3 b1 = kv.cross(axis).normalized();
    const Vec3 b2 = kv.normalized().cross(b1);
    return {b1, b2};
}

Lattice::Lattice(int n) : n_(n), modes_(enumerate_lattice(n)) {
    frames_.reserve(modes_.size());
    index_.reserve(modes_.size());
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        frames_.push_back(frame_vectors(modes_[i]));
        index_.emplace(pack_wavevector(modes_[i]), int(i));
    }
}

std::shared_ptr<const Lattice> Lattice::make(int n) {
    return std::shared_ptr<const Lattice>(new Lattice(n));
}

int Lattice::index_of(const WaveVector& k) const {
    const auto it = index_.find(pack_wavevector(k));
    return it == index_.end() ? -1 : it->second;
}

double lattice_sum(int n, double a) {
    double s = 0;
    for (const auto& k : enumerate_lattice(n)) s += 2.0 * std::pow(double(k.norm2()), a);
    return s;
}

}  // namespace hypervort
