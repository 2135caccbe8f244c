// locc.hpp
// Two-party harness with enforced locality. The joint state lives in one
// simulator; Alice and Bob hold capability handles that can only touch their
// own qubits, and every local operation, measurement and classical bit is
// logged to an auditable transcript. Qubit ownership is fixed: Alice holds
// {0, 2}, Bob holds {1, 3}; (0, 1) is the field-exposed pair, (2, 3) the
// shielded pair.

#pragma once

#include <cstdio>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fieldcmp/bell.hpp"
#include "fieldcmp/errors.hpp"
#include "fieldcmp/fields.hpp"
#include "fieldcmp/gates.hpp"
#include "fieldcmp/protocol.hpp"
#include "fieldcmp/state.hpp"

namespace fieldcmp {

enum class PartyId { alice, bob };

inline const char* party_name(PartyId id) { return id == PartyId::alice ? "alice" : "bob"; }

inline bool owns_qubit(PartyId id, int qubit) {
    return id == PartyId::alice ? (qubit == 0 || qubit == 2) : (qubit == 1 || qubit == 3);
}

// A shared pair handed out by the entanglement source before the run starts.
struct PrepareEvent {
    std::string resource;
    int qubit_a;
    int qubit_b;
};

struct GateEvent {
    PartyId party;
    std::string gate;
    std::vector<int> qubits;
};

struct MeasureEvent {
    PartyId party;
    int qubit;
    int outcome;
};

struct MessageEvent {
    PartyId from;
    PartyId to;
    int bit;
    std::string label;
};

using TranscriptEvent = std::variant<PrepareEvent, GateEvent, MeasureEvent, MessageEvent>;

struct Transcript {
    std::vector<TranscriptEvent> events;

    int message_count() const {
        int n = 0;
        for (const auto& e : events) n += std::holds_alternative<MessageEvent>(e);
        return n;
    }

    int message_count(const std::string& label) const {
        int n = 0;
        for (const auto& e : events) {
            if (const auto* m = std::get_if<MessageEvent>(&e)) n += (m->label == label);
        }
        return n;
    }

    int singlet_count() const {
        int n = 0;
        for (const auto& e : events) {
            if (const auto* p = std::get_if<PrepareEvent>(&e)) n += (p->resource == "singlet");
        }
        return n;
    }

    // Re-checks, from the log alone, that no party ever touched a qubit it
    // does not own.
    void audit_locality() const {
        for (const auto& e : events) {
            if (const auto* g = std::get_if<GateEvent>(&e)) {
                for (int q : g->qubits) {
                    if (!owns_qubit(g->party, q)) {
                        throw locality_error(std::string(party_name(g->party)) +
                                             " applied a gate to unowned qubit " +
                                             std::to_string(q));
                    }
                }
            } else if (const auto* m = std::get_if<MeasureEvent>(&e)) {
                if (!owns_qubit(m->party, m->qubit)) {
                    throw locality_error(std::string(party_name(m->party)) +
                                         " measured unowned qubit " + std::to_string(m->qubit));
                }
            }
        }
    }

    // One event per line: STEP <index> <party> <kind> <payload>.
    std::string to_text() const {
        std::string out;
        char buf[128];
        for (std::size_t i = 0; i < events.size(); ++i) {
            const auto& e = events[i];
            if (const auto* p = std::get_if<PrepareEvent>(&e)) {
                std::snprintf(buf, sizeof buf, "STEP %zu source prepare %s %d %d\n", i,
                              p->resource.c_str(), p->qubit_a, p->qubit_b);
                out += buf;
            } else if (const auto* g = std::get_if<GateEvent>(&e)) {
                std::snprintf(buf, sizeof buf, "STEP %zu %s gate %s", i, party_name(g->party),
                              g->gate.c_str());
                out += buf;
                for (int q : g->qubits) {
                    std::snprintf(buf, sizeof buf, " %d", q);
                    out += buf;
                }
                out += '\n';
            } else if (const auto* m = std::get_if<MeasureEvent>(&e)) {
                std::snprintf(buf, sizeof buf, "STEP %zu %s measure %d %d\n", i,
                              party_name(m->party), m->qubit, m->outcome);
                out += buf;
            } else if (const auto* msg = std::get_if<MessageEvent>(&e)) {
                std::snprintf(buf, sizeof buf, "STEP %zu %s msg %s %d %s\n", i,
                              party_name(msg->from), party_name(msg->to), msg->bit,
                              msg->label.c_str());
                out += buf;
            }
        }
        return out;
    }
};

class LoccSession;

// Capability handle: the only way a party acts on the joint state. Every
// method checks ownership before touching anything and logs what it did.
class Party {
public:
    PartyId id() const { return id_; }

    void gate(const std::string& name, const Operator& op, std::vector<int> qubits);
    int measure(int qubit, Rng& rng);
    int measure_forced(int qubit, int outcome);
    void send(int bit, const std::string& label);
    int recv(const std::string& label);

private:
    friend class LoccSession;
    Party(LoccSession* session, PartyId id) : session_(session), id_(id) {}

    LoccSession* session_;
    PartyId id_;
};

class LoccSession {
public:
    // Four qubits in |0000>; pairs are then handed out by prepare_pair.
    LoccSession() : state_(4) {}

    // Starts from a caller-supplied 4-qubit joint state (for tests that need
    // arbitrary control/target states).
    explicit LoccSession(StateVector joint) : state_(std::move(joint)) {
        if (state_.num_qubits() != 4) {
            throw std::invalid_argument("LoccSession: joint state must have four qubits");
        }
    }

    Party party(PartyId id) { return Party(this, id); }

    // The entanglement source distributes a Bell pair onto two fresh qubits.
    void prepare_pair(BellKind kind, int qubit_a, int qubit_b, const std::string& resource) {
        const std::array<int, 2> pair = {qubit_a, qubit_b};
        const int n = state_.num_qubits();
        for (std::size_t i = 0; i < state_.dim(); ++i) {
            if (detail::local_index(i, n, pair) != 0 && std::abs(state_[i]) > 1e-12) {
                throw protocol_error("prepare_pair: target qubits are not in |00>");
            }
        }
        const StateVector b = bell_state(kind);
        StateVector out(n, std::vector<cdouble>(state_.dim()));
        for (std::size_t i = 0; i < state_.dim(); ++i) {
            if (detail::local_index(i, n, pair) != 0) continue;
            for (std::size_t l = 0; l < 4; ++l) {
                out[detail::replace_bits(i, n, pair, l)] = state_[i] * b[l];
            }
        }
        state_ = std::move(out);
        transcript_.events.push_back(PrepareEvent{resource, qubit_a, qubit_b});
    }

    // Physics outside either lab (Eve's fields). Not a party operation, so it
    // is not part of the LOCC transcript.
    void environment_gate(const Operator& op, std::initializer_list<int> targets) {
        state_ = apply(op, state_, targets);
    }

    const StateVector& state() const { return state_; }
    Transcript& transcript() { return transcript_; }
    const Transcript& transcript() const { return transcript_; }

private:
    friend class Party;

    void check_ownership(PartyId id, std::span<const int> qubits) const {
        for (int q : qubits) {
            if (q < 0 || q >= state_.num_qubits()) {
                throw std::invalid_argument("qubit index out of range");
            }
            if (!owns_qubit(id, q)) {
                throw locality_error(std::string(party_name(id)) +
                                     " attempted to act on unowned qubit " + std::to_string(q));
            }
        }
    }

    StateVector state_;
    Transcript transcript_;
    std::deque<MessageEvent> channel_;  // in-order, exactly-once delivery
};

inline void Party::gate(const std::string& name, const Operator& op, std::vector<int> qubits) {
    session_->check_ownership(id_, qubits);
    session_->state_ = apply(op, session_->state_, qubits);
    session_->transcript_.events.push_back(GateEvent{id_, name, std::move(qubits)});
}

inline int Party::measure(int qubit, Rng& rng) {
    const std::array<int, 1> targets = {qubit};
    session_->check_ownership(id_, targets);
    MeasurementResult m = measure_computational(session_->state_, targets, rng);
    session_->state_ = std::move(m.post);
    session_->transcript_.events.push_back(MeasureEvent{id_, qubit, m.bits[0]});
    return m.bits[0];
}

inline int Party::measure_forced(int qubit, int outcome) {
    const std::array<int, 1> targets = {qubit};
    const std::array<int, 1> bits = {outcome};
    session_->check_ownership(id_, targets);
    MeasurementResult m = fieldcmp::measure_forced(session_->state_, targets, bits);
    session_->state_ = std::move(m.post);
    session_->transcript_.events.push_back(MeasureEvent{id_, qubit, m.bits[0]});
    return m.bits[0];
}

inline void Party::send(int bit, const std::string& label) {
    const PartyId to = (id_ == PartyId::alice) ? PartyId::bob : PartyId::alice;
    MessageEvent msg{id_, to, bit & 1, label};
    session_->transcript_.events.push_back(msg);
    session_->channel_.push_back(std::move(msg));
}

inline int Party::recv(const std::string& label) {
    if (session_->channel_.empty()) {
        throw protocol_error(std::string(party_name(id_)) + " blocked waiting for '" + label +
                             "' but no message is in flight");
    }
    const MessageEvent msg = session_->channel_.front();
    session_->channel_.pop_front();
    if (msg.to != id_ || msg.label != label) {
        throw protocol_error(std::string(party_name(id_)) + " expected '" + label +
                             "' but received '" + msg.label + "'");
    }
    return msg.bit;
}

// Converts a singlet into phi+ when applied to the second qubit of the pair:
// i sigma_y, taking |0> -> -|1> and |1> -> |0>.
inline const Operator& singlet_to_phi_plus() {
    static const Operator op(2, {0.0, 1.0, -1.0, 0.0});
    return op;
}

// CNOT between Alice's `control` and Bob's `target` without quantum
// communication, consuming one shared phi+ pair (Alice's half first) and two
// classical bits. Steps: Alice entangles her control with her ebit half and
// measures it; Bob fixes his half, drives the target from it, measures it in
// the x basis; Alice applies the resulting phase fix. Each measurement
// branch yields the exact CNOT, so the gate works branch-by-branch, not just
// on average. `forced_branch` pins the two measurement outcomes for
// exhaustive verification.
inline void remote_cnot(LoccSession& session, int control, int target,
                        std::pair<int, int> ebit, Rng& rng,
                        std::optional<std::pair<int, int>> forced_branch = std::nullopt) {
    if (!owns_qubit(PartyId::alice, control) || !owns_qubit(PartyId::alice, ebit.first) ||
        !owns_qubit(PartyId::bob, target) || !owns_qubit(PartyId::bob, ebit.second)) {
        throw locality_error("remote_cnot: control/ebit.first must be Alice's, "
                             "target/ebit.second must be Bob's");
    }

    // The construction assumes the shared pair is phi+.
    const std::array<int, 2> pair = {ebit.first, ebit.second};
    const Operator rho = reduced_density(session.state(), pair);
    const StateVector phi = bell_state(BellKind::phi_plus);
    cdouble f = 0.0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            f += std::conj(phi[static_cast<std::size_t>(r)]) * rho.at(r, c) *
                 phi[static_cast<std::size_t>(c)];
        }
    }
    if (f.real() < 1.0 - 1e-9) {
        throw protocol_error("remote_cnot: shared pair is not in phi+");
    }

    Party alice = session.party(PartyId::alice);
    Party bob = session.party(PartyId::bob);

    alice.gate("cnot", cnot(), {control, ebit.first});
    const int x_bit = forced_branch ? alice.measure_forced(ebit.first, forced_branch->first)
                                    : alice.measure(ebit.first, rng);
    alice.send(x_bit, "rcnot-x");

    if (bob.recv("rcnot-x") == 1) {
        bob.gate("x", pauli_x(), {ebit.second});
    }
    bob.gate("cnot", cnot(), {ebit.second, target});
    bob.gate("h", hadamard(), {ebit.second});
    const int z_bit = forced_branch ? bob.measure_forced(ebit.second, forced_branch->second)
                                    : bob.measure(ebit.second, rng);
    bob.send(z_bit, "rcnot-z");

    if (alice.recv("rcnot-z") == 1) {
        alice.gate("z", pauli_z(), {control});
    }
}

struct LoccRunResult {
    TrialRecord record;
    Transcript transcript;
};

// Full LOCC run: two singlets are distributed, Eve's fields hit the exposed
// pair, the remote CNOT burns the shielded pair, Alice rotates and both
// parties measure. Alice's outcome bit travels to Bob (one extra logged
// bit), who announces the verdict.
inline LoccRunResult run_locc(const FieldScenario& scenario, Rng& rng) {
    if (scenario.promise.kind != PromiseKind::parallel &&
        scenario.promise.kind != PromiseKind::orthogonal) {
        throw protocol_error("run_locc: promise must be parallel or orthogonal");
    }

    LoccSession session;
    session.prepare_pair(BellKind::psi_minus, 0, 1, "singlet");
    session.prepare_pair(BellKind::psi_minus, 2, 3, "singlet");

    session.environment_gate(pauli_dot(scenario.n), {0});
    session.environment_gate(pauli_dot(scenario.m), {1});

    Party alice = session.party(PartyId::alice);
    Party bob = session.party(PartyId::bob);

    // The shielded resource is a singlet; Bob locally turns it into phi+ so
    // the remote CNOT corrections keep their textbook form.
    bob.gate("iy", singlet_to_phi_plus(), {3});

    remote_cnot(session, 0, 1, {2, 3}, rng);

    alice.gate("ihad", inverse_hadamard(), {0});
    const int alice_bit = alice.measure(0, rng);
    const int bob_bit = bob.measure(1, rng);

    alice.send(alice_bit, "verdict");
    const Verdict verdict = verdict_from_bits(bob.recv("verdict"), bob_bit);

    const bool correct =
        (verdict == Verdict::parallel) == (scenario.promise.kind == PromiseKind::parallel);
    return {TrialRecord{scenario, verdict, correct, Strategy::locc, rng.seed()},
            std::move(session.transcript())};
}

} // namespace fieldcmp
