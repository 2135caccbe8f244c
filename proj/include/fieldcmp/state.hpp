// state.hpp
// Dense complex statevectors and operators for up to four qubits.
//
// Conventions, used everywhere in this library:
//   - amplitude ordering is big-endian over qubit indices: qubit 0 is the
//     most significant bit, so |01> on two qubits is amplitude index 1;
//   - qubit 0 is Alice's field-exposed qubit, 1 Bob's, 2 and 3 the shielded
//     pair (Alice's half, Bob's half);
//   - states and operators are immutable values; every operation returns a
//     fresh value, so independent trials can run concurrently.

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "fieldcmp/rng.hpp"

namespace fieldcmp {

using cdouble = std::complex<double>;

// Tolerance for exact algebraic identities in double precision; loose enough
// to survive 4-qubit circuits, tight enough to catch any real defect.
inline constexpr double kAlgebraTol = 1e-12;

class Operator {
public:
    explicit Operator(int dim) : dim_(dim), m_(static_cast<std::size_t>(dim) * dim) {
        check_dim(dim);
    }

    Operator(int dim, std::initializer_list<cdouble> entries)
        : dim_(dim), m_(entries) {
        check_dim(dim);
        if (m_.size() != static_cast<std::size_t>(dim) * dim) {
            throw std::invalid_argument("Operator: entry count does not match dimension");
        }
    }

    static Operator identity(int dim) {
        Operator op(dim);
        for (int i = 0; i < dim; ++i) {
            op.at(i, i) = 1.0;
        }
        return op;
    }

    int dim() const { return dim_; }

    cdouble& at(int row, int col) { return m_[static_cast<std::size_t>(row) * dim_ + col]; }
    const cdouble& at(int row, int col) const {
        return m_[static_cast<std::size_t>(row) * dim_ + col];
    }

    Operator adjoint() const {
        Operator out(dim_);
        for (int r = 0; r < dim_; ++r) {
            for (int c = 0; c < dim_; ++c) {
                out.at(c, r) = std::conj(at(r, c));
            }
        }
        return out;
    }

    friend Operator operator*(const Operator& a, const Operator& b) {
        if (a.dim_ != b.dim_) {
            throw std::invalid_argument("Operator product: dimension mismatch");
        }
        Operator out(a.dim_);
        for (int r = 0; r < a.dim_; ++r) {
            for (int k = 0; k < a.dim_; ++k) {
                const cdouble ark = a.at(r, k);
                if (ark == cdouble{}) continue;
                for (int c = 0; c < a.dim_; ++c) {
                    out.at(r, c) += ark * b.at(k, c);
                }
            }
        }
        return out;
    }

    friend Operator operator*(cdouble s, const Operator& a) {
        Operator out = a;
        for (auto& e : out.m_) e *= s;
        return out;
    }

    friend Operator operator+(const Operator& a, const Operator& b) {
        if (a.dim_ != b.dim_) {
            throw std::invalid_argument("Operator sum: dimension mismatch");
        }
        Operator out = a;
        for (std::size_t i = 0; i < out.m_.size(); ++i) out.m_[i] += b.m_[i];
        return out;
    }

    friend Operator operator-(const Operator& a, const Operator& b) {
        return a + (cdouble{-1.0} * b);
    }

    double max_abs_diff(const Operator& other) const {
        if (dim_ != other.dim_) {
            throw std::invalid_argument("Operator comparison: dimension mismatch");
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < m_.size(); ++i) {
            worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
        }
        return worst;
    }

    bool is_unitary(double tol = kAlgebraTol) const {
        return (adjoint() * *this).max_abs_diff(identity(dim_)) <= tol;
    }

    bool is_hermitian(double tol = kAlgebraTol) const {
        return adjoint().max_abs_diff(*this) <= tol;
    }

    cdouble trace() const {
        cdouble t = 0.0;
        for (int i = 0; i < dim_; ++i) t += at(i, i);
        return t;
    }

private:
    static void check_dim(int dim) {
        if (dim != 2 && dim != 4 && dim != 8 && dim != 16) {
            throw std::invalid_argument("Operator: dimension must be 2, 4, 8 or 16");
        }
    }

    int dim_;
    std::vector<cdouble> m_;
};

class StateVector {
public:
    // |00...0> on num_qubits qubits.
    explicit StateVector(int num_qubits)
        : num_qubits_(num_qubits), amps_(dim_for(num_qubits)) {
        amps_[0] = 1.0;
    }

    StateVector(int num_qubits, std::vector<cdouble> amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        if (amps_.size() != dim_for(num_qubits)) {
            throw std::invalid_argument("StateVector: amplitude count does not match qubit count");
        }
    }

    static StateVector basis(int num_qubits, std::size_t index) {
        StateVector s(num_qubits);
        if (index >= s.dim()) {
            throw std::out_of_range("StateVector::basis: index out of range");
        }
        s.amps_[0] = 0.0;
        s.amps_[index] = 1.0;
        return s;
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    const cdouble& operator[](std::size_t i) const { return amps_[i]; }
    cdouble& operator[](std::size_t i) { return amps_[i]; }

    std::span<const cdouble> amplitudes() const { return amps_; }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    bool is_normalized(double tol = kAlgebraTol) const {
        return std::abs(norm_squared() - 1.0) <= tol;
    }

    StateVector normalized() const {
        const double r = std::sqrt(norm_squared());
        if (r < 1e-12) {
            throw std::invalid_argument("StateVector: cannot normalize zero vector");
        }
        StateVector out = *this;
        for (auto& a : out.amps_) a /= r;
        return out;
    }

private:
    static std::size_t dim_for(int num_qubits) {
        if (num_qubits < 1 || num_qubits > 4) {
            throw std::invalid_argument("StateVector: qubit count must be in [1, 4]");
        }
        return std::size_t{1} << num_qubits;
    }

    int num_qubits_;
    std::vector<cdouble> amps_;
};

// <a|b>, conjugate-linear in the first argument.
inline cdouble inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    cdouble s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

// |<a|b>|^2 -- the global-phase-insensitive comparison.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a, b));
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

// Kronecker product; the left operand owns the high-order index.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    StateVector out(a.num_qubits() + b.num_qubits(),
                    std::vector<cdouble>(a.dim() * b.dim()));
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

inline Operator tensor(const Operator& a, const Operator& b) {
    Operator out(a.dim() * b.dim());
    for (int ra = 0; ra < a.dim(); ++ra) {
        for (int ca = 0; ca < a.dim(); ++ca) {
            const cdouble f = a.at(ra, ca);
            if (f == cdouble{}) continue;
            for (int rb = 0; rb < b.dim(); ++rb) {
                for (int cb = 0; cb < b.dim(); ++cb) {
                    out.at(ra * b.dim() + rb, ca * b.dim() + cb) = f * b.at(rb, cb);
                }
            }
        }
    }
    return out;
}

namespace detail {

// Local index of the target qubits inside a full basis index; targets[0]
// supplies the most significant bit of the local index.
inline std::size_t local_index(std::size_t full, int num_qubits, std::span<const int> targets) {
    std::size_t l = 0;
    for (int t : targets) {
        l = (l << 1) | ((full >> (num_qubits - 1 - t)) & 1u);
    }
    return l;
}

// Replaces the target-qubit bits of a full basis index with the bits of a
// local index.
inline std::size_t replace_bits(std::size_t full, int num_qubits, std::span<const int> targets,
                                std::size_t local) {
    const int k = static_cast<int>(targets.size());
    for (int j = 0; j < k; ++j) {
        const std::size_t bit = (local >> (k - 1 - j)) & 1u;
        const int pos = num_qubits - 1 - targets[j];
        full = (full & ~(std::size_t{1} << pos)) | (bit << pos);
    }
    return full;
}

inline void check_targets(const StateVector& state, std::span<const int> targets, int op_dim) {
    if (targets.empty()) {
        throw std::invalid_argument("apply: no target qubits");
    }
    if (op_dim != (1 << targets.size())) {
        throw std::invalid_argument("apply: operator dimension does not match target count");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= state.num_qubits()) {
            throw std::invalid_argument("apply: target qubit out of range");
        }
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("apply: duplicate target qubit");
            }
        }
    }
}

} // namespace detail

// Embeds op on the given qubits (identity elsewhere) and applies it.
inline StateVector apply(const Operator& op, const StateVector& state,
                         std::span<const int> targets) {
    detail::check_targets(state, targets, op.dim());
    const int n = state.num_qubits();
    const std::size_t k = targets.size();
    StateVector out(n, std::vector<cdouble>(state.dim()));
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const std::size_t row = detail::local_index(i, n, targets);
        cdouble acc = 0.0;
        for (std::size_t col = 0; col < (std::size_t{1} << k); ++col) {
            const cdouble f = op.at(static_cast<int>(row), static_cast<int>(col));
            if (f == cdouble{}) continue;
            acc += f * state[detail::replace_bits(i, n, targets, col)];
        }
        out[i] = acc;
    }
    return out;
}

inline StateVector apply(const Operator& op, const StateVector& state,
                         std::initializer_list<int> targets) {
    return apply(op, state, std::span<const int>(targets.begin(), targets.size()));
}

// Full-dimension application, op.dim() == state.dim().
inline StateVector apply_full(const Operator& op, const StateVector& state) {
    if (static_cast<std::size_t>(op.dim()) != state.dim()) {
        throw std::invalid_argument("apply_full: dimension mismatch");
    }
    StateVector out(state.num_qubits(), std::vector<cdouble>(state.dim()));
    for (int r = 0; r < op.dim(); ++r) {
        cdouble acc = 0.0;
        for (int c = 0; c < op.dim(); ++c) {
            acc += op.at(r, c) * state[static_cast<std::size_t>(c)];
        }
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

// <state|op|state>.
inline cdouble expectation(const Operator& op, const StateVector& state) {
    return inner(state, apply_full(op, state));
}

// Reduced density matrix of the kept qubits (row/col index big-endian over
// the kept qubits, in the order given).
inline Operator reduced_density(const StateVector& state, std::span<const int> kept) {
    detail::check_targets(state, kept, 1 << kept.size());
    const int n = state.num_qubits();
    const std::size_t k = kept.size();
    Operator rho(1 << k);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const std::size_t r = detail::local_index(i, n, kept);
        for (std::size_t c = 0; c < (std::size_t{1} << k); ++c) {
            const std::size_t j = detail::replace_bits(i, n, kept, c);
            rho.at(static_cast<int>(r), static_cast<int>(c)) += state[i] * std::conj(state[j]);
        }
    }
    return rho;
}

inline Operator reduced_density(const StateVector& state, std::initializer_list<int> kept) {
    return reduced_density(state, std::span<const int>(kept.begin(), kept.size()));
}

struct MeasurementResult {
    std::vector<int> bits;  // one per target, targets[0] first
    StateVector post;       // renormalized post-measurement state
    double probability;     // Born probability of the observed outcome
};

namespace detail {

inline MeasurementResult collapse(const StateVector& state, std::span<const int> targets,
                                  std::size_t outcome, double prob) {
    const int n = state.num_qubits();
    StateVector post(n, std::vector<cdouble>(state.dim()));
    const double scale = 1.0 / std::sqrt(prob);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (local_index(i, n, targets) == outcome) {
            post[i] = scale * state[i];
        }
    }
    std::vector<int> bits(targets.size());
    for (std::size_t j = 0; j < targets.size(); ++j) {
        bits[j] = static_cast<int>((outcome >> (targets.size() - 1 - j)) & 1u);
    }
    return {std::move(bits), std::move(post), prob};
}

inline std::vector<double> outcome_probabilities(const StateVector& state,
                                                 std::span<const int> targets) {
    std::vector<double> probs(std::size_t{1} << targets.size(), 0.0);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        probs[local_index(i, state.num_qubits(), targets)] += std::norm(state[i]);
    }
    return probs;
}

} // namespace detail

// Projective measurement of the target qubits in the computational basis.
// The outcome is sampled by the Born rule; a zero-probability branch is never
// returned.
inline MeasurementResult measure_computational(const StateVector& state,
                                               std::span<const int> targets, Rng& rng) {
    detail::check_targets(state, targets, 1 << targets.size());
    const auto probs = detail::outcome_probabilities(state, targets);
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t chosen = probs.size();
    for (std::size_t o = 0; o < probs.size(); ++o) {
        if (probs[o] <= 0.0) continue;
        cum += probs[o];
        if (u < cum) {
            chosen = o;
            break;
        }
    }
    if (chosen == probs.size()) {
        // Guard against cum falling short of 1 by rounding.
        for (std::size_t o = probs.size(); o-- > 0;) {
            if (probs[o] > 0.0) {
                chosen = o;
                break;
            }
        }
    }
    return detail::collapse(state, targets, chosen, probs[chosen]);
}

inline MeasurementResult measure_computational(const StateVector& state,
                                               std::initializer_list<int> targets, Rng& rng) {
    return measure_computational(state, std::span<const int>(targets.begin(), targets.size()),
                                 rng);
}

// Forces a specific outcome branch (for exhaustive branch verification).
// Throws if the branch has (near-)zero probability.
inline MeasurementResult measure_forced(const StateVector& state, std::span<const int> targets,
                                        std::span<const int> bits) {
    detail::check_targets(state, targets, 1 << targets.size());
    if (bits.size() != targets.size()) {
        throw std::invalid_argument("measure_forced: bit count does not match target count");
    }
    std::size_t outcome = 0;
    for (int b : bits) {
        outcome = (outcome << 1) | static_cast<std::size_t>(b & 1);
    }
    const auto probs = detail::outcome_probabilities(state, targets);
    if (probs[outcome] < 1e-15) {
        throw std::invalid_argument("measure_forced: branch has zero probability");
    }
    return detail::collapse(state, targets, outcome, probs[outcome]);
}

inline MeasurementResult measure_forced(const StateVector& state,
                                        std::initializer_list<int> targets,
                                        std::initializer_list<int> bits) {
    return measure_forced(state, std::span<const int>(targets.begin(), targets.size()),
                          std::span<const int>(bits.begin(), bits.size()));
}

} // namespace fieldcmp
