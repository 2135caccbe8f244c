// Shared helpers for the test suites.

#pragma once

#include <complex>
#include <vector>

#include "doctest.h"
#include "fieldcmp/fieldcmp.hpp"

namespace helpers {

using fieldcmp::cdouble;
using fieldcmp::Operator;
using fieldcmp::Rng;
using fieldcmp::StateVector;

inline StateVector random_state(int num_qubits, Rng& rng) {
    std::vector<cdouble> amps(std::size_t{1} << num_qubits);
    for (auto& a : amps) {
        a = cdouble{rng.normal(), rng.normal()};
    }
    return StateVector(num_qubits, std::move(amps)).normalized();
}

inline Operator random_unitary2(Rng& rng) {
    while (true) {
        const double q0 = rng.normal(), q1 = rng.normal(), q2 = rng.normal(), q3 = rng.normal();
        const double r = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
        if (r > 1e-6) {
            return fieldcmp::su2_from_quaternion(q0 / r, q1 / r, q2 / r, q3 / r);
        }
    }
}

inline void check_state_near(const StateVector& got, const StateVector& want,
                             double tol = 1e-12) {
    REQUIRE(got.dim() == want.dim());
    CHECK(fieldcmp::max_abs_diff(got, want) <= tol);
}

inline void check_op_near(const Operator& got, const Operator& want, double tol = 1e-12) {
    REQUIRE(got.dim() == want.dim());
    CHECK(got.max_abs_diff(want) <= tol);
}

inline void check_complex_near(cdouble got, cdouble want, double tol = 1e-12) {
    CHECK(std::abs(got - want) <= tol);
}

} // namespace helpers
