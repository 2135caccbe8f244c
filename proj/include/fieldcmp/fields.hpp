// fields.hpp
// Eve's side of the game: draw a promised pair of field directions and act
// on the exposed qubits. The fields are deliberately opaque -- the rest of
// the code only ever sees their unitary action on supplied qubits, never the
// direction parameters themselves.

#pragma once

#include <cmath>
#include <numbers>

#include "fieldcmp/direction.hpp"
#include "fieldcmp/gates.hpp"
#include "fieldcmp/state.hpp"

namespace fieldcmp {

enum class PromiseKind { parallel, orthogonal, anti_parallel, angle };

struct Promise {
    PromiseKind kind = PromiseKind::parallel;
    double alpha = 0.0;  // only meaningful for PromiseKind::angle

    static Promise parallel() { return {PromiseKind::parallel, 0.0}; }
    static Promise orthogonal() { return {PromiseKind::orthogonal, 0.0}; }
    static Promise anti_parallel() { return {PromiseKind::anti_parallel, 0.0}; }
    static Promise angle(double alpha) {
        if (!(alpha >= 0.0 && alpha <= std::numbers::pi)) {
            throw std::invalid_argument("Promise::angle: alpha must lie in [0, pi]");
        }
        return {PromiseKind::angle, alpha};
    }
};

inline const char* promise_name(const Promise& p) {
    switch (p.kind) {
        case PromiseKind::parallel: return "parallel";
        case PromiseKind::orthogonal: return "orthogonal";
        case PromiseKind::anti_parallel: return "anti-parallel";
        case PromiseKind::angle: return "angle";
    }
    return "?";
}

// The n.m value the promise guarantees.
inline double promised_cosine(const Promise& p) {
    switch (p.kind) {
        case PromiseKind::parallel: return 1.0;
        case PromiseKind::orthogonal: return 0.0;
        case PromiseKind::anti_parallel: return -1.0;
        case PromiseKind::angle: return std::cos(p.alpha);
    }
    throw std::invalid_argument("promised_cosine: unknown promise");
}

struct FieldScenario {
    Promise promise;
    UnitDirection n;  // Alice's field
    UnitDirection m;  // Bob's field
};

// Draws a scenario honoring the promise: n uniform on the sphere, m equal to
// n, antipodal, uniform on the circle orthogonal to n, or rotated away from
// n by alpha about a uniformly random orthogonal axis.
inline FieldScenario eve_choose(const Promise& promise, Rng& rng) {
    const UnitDirection n = random_direction(rng);
    switch (promise.kind) {
        case PromiseKind::parallel:
            return {promise, n, n};
        case PromiseKind::anti_parallel:
            return {promise, n, -n};
        case PromiseKind::orthogonal:
            return {promise, n, orthogonal_direction(n, rng.uniform(0.0, 2.0 * std::numbers::pi))};
        case PromiseKind::angle: {
            const UnitDirection u =
                orthogonal_direction(n, rng.uniform(0.0, 2.0 * std::numbers::pi));
            const Vec3 m = std::cos(promise.alpha) * n.vec() + std::sin(promise.alpha) * u.vec();
            return {promise, n, UnitDirection::from_vector(m)};
        }
    }
    throw std::invalid_argument("eve_choose: unknown promise");
}

// Instantaneous picture: the fields act as (n . sigma) on Alice's exposed
// qubit 0 and (m . sigma) on Bob's exposed qubit 1.
inline StateVector apply_fields_instantaneous(const FieldScenario& scenario,
                                              const StateVector& state) {
    StateVector out = apply(pauli_dot(scenario.n), state, {0});
    return apply(pauli_dot(scenario.m), out, {1});
}

// Time-evolution picture: both exposed qubits precess for the same time
// theta, each about its own field axis.
inline StateVector apply_fields_evolution(const FieldScenario& scenario, double theta,
                                          const StateVector& state) {
    StateVector out = apply(rotation(scenario.n, theta), state, {0});
    return apply(rotation(scenario.m, theta), out, {1});
}

} // namespace fieldcmp
