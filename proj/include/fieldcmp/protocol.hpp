// protocol.hpp
// Alice and Bob's strategies when quantum communication is allowed, plus the
// Bell-discrimination circuit shared with the LOCC variant.

#pragma once

#include <array>
#include <cstdint>

#include "fieldcmp/bell.hpp"
#include "fieldcmp/errors.hpp"
#include "fieldcmp/fields.hpp"
#include "fieldcmp/gates.hpp"
#include "fieldcmp/state.hpp"

namespace fieldcmp {

enum class Verdict { parallel, orthogonal };

inline const char* verdict_name(Verdict v) {
    return v == Verdict::parallel ? "parallel" : "orthogonal";
}

enum class Strategy { quantum_comm, locc };

struct TrialRecord {
    FieldScenario scenario;
    Verdict verdict;
    bool correct;
    Strategy strategy;
    std::uint64_t seed;
};

// The basis rotation used before readout: |0> -> (|0> - |1>)/sqrt(2),
// |1> -> (|0> + |1>)/sqrt(2). Undoes the Hadamard-type preparation of the
// Bell basis, with the sign landing on the |0> image.
inline const Operator& inverse_hadamard() {
    static const Operator op = [] {
        const double s = 1.0 / std::sqrt(2.0);
        return Operator(2, {s, s, -s, s});
    }();
    return op;
}

inline Verdict verdict_from_bits(int alice_bit, int bob_bit) {
    // Both parties reading 1 singles out the singlet; every other outcome
    // belongs to the triplet sector.
    return (alice_bit == 1 && bob_bit == 1) ? Verdict::parallel : Verdict::orthogonal;
}

struct DiscriminationResult {
    std::array<int, 2> bits;  // (qubit 0 outcome, qubit 1 outcome)
    StateVector post;
    double probability;
};

// CNOT (qubit 0 controls qubit 1), then the readout rotation on qubit 0,
// then a computational measurement of both qubits. Maps the Bell basis to
// deterministic outcomes: phi+ -> (0,0), phi- -> (1,0), psi+ -> (0,1),
// psi- -> (1,1). The readout gate is a parameter so a harness self-check can
// inject a known-bad gate.
inline DiscriminationResult bell_discriminate(const StateVector& state, Rng& rng,
                                              const Operator& readout = inverse_hadamard()) {
    if (state.num_qubits() != 2) {
        throw std::invalid_argument("bell_discriminate: state must have two qubits");
    }
    StateVector s = apply(cnot(), state, {0, 1});
    s = apply(readout, s, {0});
    MeasurementResult m = measure_computational(s, {0, 1}, rng);
    return {{m.bits[0], m.bits[1]}, std::move(m.post), m.probability};
}

// Strategy with quantum communication: Alice sends her particle to Bob, who
// measures the projector onto the singlet. Success means the fields were
// parallel; the projection probability is 1 or 0 for the two promises, so
// the verdict never errs.
inline TrialRecord run_with_qcomm(const FieldScenario& scenario, Rng& rng) {
    if (scenario.promise.kind != PromiseKind::parallel &&
        scenario.promise.kind != PromiseKind::orthogonal) {
        throw protocol_error("run_with_qcomm: promise must be parallel or orthogonal");
    }
    const StateVector post = apply_fields_instantaneous(scenario, singlet());
    const double p_singlet = fidelity(singlet(), post);
    const bool projected = rng.uniform() < p_singlet;
    const Verdict verdict = projected ? Verdict::parallel : Verdict::orthogonal;
    const bool correct =
        (verdict == Verdict::parallel) == (scenario.promise.kind == PromiseKind::parallel);
    return {scenario, verdict, correct, Strategy::quantum_comm, rng.seed()};
}

} // namespace fieldcmp
