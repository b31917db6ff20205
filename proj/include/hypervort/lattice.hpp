#ifndef HYPERVORT_LATTICE_HPP
#define HYPERVORT_LATTICE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

namespace hypervort {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const;
    Vec3 normalized() const;
};

/// Integer wavevector on the periodic lattice, never the zero mode.
struct WaveVector {
    int x = 0, y = 0, z = 0;

    int norm2() const { return x * x + y * y + z * z; }
    double norm() const;
    WaveVector operator-() const { return {-x, -y, -z}; }
    bool operator==(const WaveVector& o) const { return x == o.x && y == o.y && z == o.z; }
    Vec3 to_vec3() const { return {double(x), double(y), double(z)}; }
};

// Membership in the half lattice: one representative per {k, -k} pair,
// (x>0) or (x=0, y>0) or (x=0, y=0, z>0).
bool in_half_lattice(const WaveVector& k);

// Canonical packing of a wavevector into 32 bits; components must be in [-127, 127].
std::uint32_t pack_wavevector(const WaveVector& k);

// All half-lattice wavevectors with 0 < |k| <= n, lexicographic in (x, y, z).
// Throws std::invalid_argument for n < 1.
std::vector<WaveVector> enumerate_lattice(int n);

/// Orthonormal pair spanning the plane perpendicular to k.
/// Right-handed (b1 x b2 = k/|k|) on the half lattice; at -k both vectors
/// are the exact negation so that stored coefficients yield real fields.
struct Frame {
    Vec3 b1, b2;
};

Frame frame_vectors(const WaveVector& k);

/// Immutable index of the half-lattice modes at truncation n, with
/// precomputed frames. Shared between fields; safe to use from any thread.
class Lattice {
  public:
    static std::shared_ptr<const Lattice> make(int n);

    int truncation() const { return n_; }
    std::size_t size() const { return modes_.size(); }
    const std::vector<WaveVector>& modes() const { return modes_; }
    const WaveVector& mode(std::size_t i) const { return modes_[i]; }
    const Frame& frame(std::size_t i) const { return frames_[i]; }

    // Index of a stored (half-lattice) mode; -1 if not stored.
    int index_of(const WaveVector& k) const;

  private:
    explicit Lattice(int n);

    int n_;
    std::vector<WaveVector> modes_;
    std::vector<Frame> frames_;
    std::unordered_map<std::uint32_t, int> index_;
};

// Sum of |k|^(2a) over the full lattice 0 < |k| <= n.
double lattice_sum(int n, double a);

}  // namespace hypervort

#endif
