// direction.hpp
// Real 3-vectors and unit directions on the sphere.

#pragma once

#include <cmath>
#include <stdexcept>

#include "fieldcmp/rng.hpp"

namespace fieldcmp {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// A direction on the unit sphere. The constructor rejects clearly non-unit
// input and snaps near-unit input to exact unit length, so downstream algebra
// sees |n| = 1 to machine precision.
class UnitDirection {
public:
    UnitDirection(double x, double y, double z) : v_{x, y, z} {
        const double r = norm(v_);
        if (std::abs(r - 1.0) > 1e-9) {
            throw std::invalid_argument("UnitDirection: input is not unit length");
        }
        v_ = (1.0 / r) * v_;
    }

    // Normalizes an arbitrary nonzero vector.
    static UnitDirection from_vector(const Vec3& v) {
        const double r = norm(v);
        if (r < 1e-12) {
            throw std::invalid_argument("UnitDirection: cannot normalize near-zero vector");
        }
        return UnitDirection(v.x / r, v.y / r, v.z / r, 0);
    }

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }

    UnitDirection operator-() const { return UnitDirection(-v_.x, -v_.y, -v_.z, 0); }

private:
    // Unchecked fast path; last parameter is a tag.
    UnitDirection(double x, double y, double z, int) : v_{x, y, z} {}
    Vec3 v_;
};

inline double dot(const UnitDirection& a, const UnitDirection& b) { return dot(a.vec(), b.vec()); }
inline Vec3 cross(const UnitDirection& a, const UnitDirection& b) { return cross(a.vec(), b.vec()); }

// Uniform on the unit sphere (normalized 3-d Gaussian).
inline UnitDirection random_direction(Rng& rng) {
    while (true) {
        const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
        const double r = norm(v);
        if (r > 1e-6) {
            return UnitDirection::from_vector(v);
        }
    }
}

// A point on the circle of directions orthogonal to n. phi = 0 maps to a
// deterministic reference vector; the frame is built by crossing n with the
// coordinate axis least aligned with it, which keeps the construction stable
// when n sits near an axis.
inline UnitDirection orthogonal_direction(const UnitDirection& n, double phi) {
    const double ax = std::abs(n.x());
    const double ay = std::abs(n.y());
    const double az = std::abs(n.z());
    Vec3 axis{0.0, 0.0, 1.0};
    if (ax <= ay && ax <= az) {
        axis = {1.0, 0.0, 0.0};
    } else if (ay <= az) {
        axis = {0.0, 1.0, 0.0};
    }
    const UnitDirection e1 = UnitDirection::from_vector(cross(n.vec(), axis));
    const Vec3 e2 = cross(n.vec(), e1.vec());
    return UnitDirection::from_vector(std::cos(phi) * e1.vec() + std::sin(phi) * e2);
}

} // namespace fieldcmp
