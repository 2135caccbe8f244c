// gates.hpp
// Pauli algebra, axis rotations and the standard gates used by the protocols.

#pragma once

#include <cmath>

#include "fieldcmp/direction.hpp"
#include "fieldcmp/state.hpp"

namespace fieldcmp {

inline const Operator& pauli_x() {
    static const Operator op(2, {0.0, 1.0, 1.0, 0.0});
    return op;
}

inline const Operator& pauli_y() {
    static const Operator op(2, {0.0, cdouble{0.0, -1.0}, cdouble{0.0, 1.0}, 0.0});
    return op;
}

inline const Operator& pauli_z() {
    static const Operator op(2, {1.0, 0.0, 0.0, -1.0});
    return op;
}

// v . sigma for an arbitrary real 3-vector (no unit-length requirement);
// Hermitian but only unitary when |v| = 1.
inline Operator pauli_vector(const Vec3& v) {
    return Operator(2, {cdouble{v.z, 0.0}, cdouble{v.x, -v.y},
                        cdouble{v.x, v.y}, cdouble{-v.z, 0.0}});
}

// n . sigma for a unit direction: Hermitian, unitary, trace-free, squares to
// the identity.
inline Operator pauli_dot(const UnitDirection& n) {
    return pauli_vector(n.vec());
}

// exp(-i theta (n . sigma) / 2) = cos(theta/2) I - i sin(theta/2) (n . sigma).
// Models evolution under a unit-strength field along n for time theta.
inline Operator rotation(const UnitDirection& n, double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("rotation: angle must be finite");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return cdouble{c, 0.0} * Operator::identity(2) + cdouble{0.0, -s} * pauli_dot(n);
}

inline const Operator& hadamard() {
    static const Operator op = [] {
        const double s = 1.0 / std::sqrt(2.0);
        return Operator(2, {s, s, s, -s});
    }();
    return op;
}

// CNOT on an ordered qubit pair (control first).
inline const Operator& cnot() {
    static const Operator op(2 * 2, {1.0, 0.0, 0.0, 0.0,
                                     0.0, 1.0, 0.0, 0.0,
                                     0.0, 0.0, 0.0, 1.0,
                                     0.0, 0.0, 1.0, 0.0});
    return op;
}

// Eigenstate of n . sigma with eigenvalue +1 (which = 0) or -1 (which = 1).
inline StateVector pauli_eigenstate(const UnitDirection& n, int which) {
    if (which != 0 && which != 1) {
        throw std::invalid_argument("pauli_eigenstate: which must be 0 or 1");
    }
    const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    const double phi = std::atan2(n.y(), n.x());
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cdouble phase{std::cos(phi), std::sin(phi)};
    if (which == 0) {
        return StateVector(1, {cdouble{c, 0.0}, s * phase});
    }
    return StateVector(1, {-s * std::conj(phase), cdouble{c, 0.0}});
}

} // namespace fieldcmp
