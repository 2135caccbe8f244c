// bell.hpp
// The Bell basis: constructors, coefficient extraction, reconstruction.

#pragma once

#include <array>
#include <cmath>

#include "fieldcmp/state.hpp"

namespace fieldcmp {

enum class BellKind { psi_plus, psi_minus, phi_plus, phi_minus };

inline constexpr std::array<BellKind, 4> kBellBasis = {
    BellKind::psi_plus, BellKind::psi_minus, BellKind::phi_plus, BellKind::phi_minus};

inline const char* bell_name(BellKind kind) {
    switch (kind) {
        case BellKind::psi_plus: return "psi+";
        case BellKind::psi_minus: return "psi-";
        case BellKind::phi_plus: return "phi+";
        case BellKind::phi_minus: return "phi-";
    }
    return "?";
}

inline StateVector bell_state(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellKind::psi_plus: return StateVector(2, {0.0, s, s, 0.0});
        case BellKind::psi_minus: return StateVector(2, {0.0, s, -s, 0.0});
        case BellKind::phi_plus: return StateVector(2, {s, 0.0, 0.0, s});
        case BellKind::phi_minus: return StateVector(2, {s, 0.0, 0.0, -s});
    }
    throw std::invalid_argument("bell_state: unknown kind");
}

// The singlet, the protocol's working resource.
inline StateVector singlet() { return bell_state(BellKind::psi_minus); }

// Expansion coefficients in the order (psi+, psi-, phi+, phi-), so c2 is the
// singlet amplitude.
struct BellCoefficients {
    cdouble c1, c2, c3, c4;

    double norm_squared() const {
        return std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4);
    }
};

inline BellCoefficients bell_coefficients(const StateVector& state) {
    if (state.num_qubits() != 2) {
        throw std::invalid_argument("bell_coefficients: state must have two qubits");
    }
    return {inner(bell_state(BellKind::psi_plus), state),
            inner(bell_state(BellKind::psi_minus), state),
            inner(bell_state(BellKind::phi_plus), state),
            inner(bell_state(BellKind::phi_minus), state)};
}

inline StateVector bell_reconstruct(const BellCoefficients& c) {
    std::vector<cdouble> amps(4, 0.0);
    const std::array<cdouble, 4> cs = {c.c1, c.c2, c.c3, c.c4};
    for (std::size_t k = 0; k < 4; ++k) {
        const StateVector b = bell_state(kBellBasis[k]);
        for (std::size_t i = 0; i < 4; ++i) {
            amps[i] += cs[k] * b[i];
        }
    }
    return StateVector(2, std::move(amps));
}

} // namespace fieldcmp
