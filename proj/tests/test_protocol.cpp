#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fieldcmp/fieldcmp.hpp"
#include "helpers.hpp"

using namespace fieldcmp;
using helpers::check_state_near;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// The pre-measurement circuit map as one 4x4 operator.
Operator discrimination_map() {
    return tensor(inverse_hadamard(), Operator::identity(2)) * cnot();
}

} // namespace

TEST_CASE("the readout rotation implements the quoted basis action") {
    const StateVector from_zero = apply_full(inverse_hadamard(), StateVector::basis(1, 0));
    check_state_near(from_zero, StateVector(1, {kInvSqrt2, -kInvSqrt2}));

    const StateVector from_one = apply_full(inverse_hadamard(), StateVector::basis(1, 1));
    check_state_near(from_one, StateVector(1, {kInvSqrt2, kInvSqrt2}));

    CHECK(inverse_hadamard().is_unitary());
}

TEST_CASE("bell_discriminate maps Bell states to fixed outcomes") {
    const struct {
        BellKind kind;
        std::array<int, 2> want;
    } cases[] = {
        {BellKind::phi_plus, {0, 0}},
        {BellKind::phi_minus, {1, 0}},
        {BellKind::psi_plus, {0, 1}},
        {BellKind::psi_minus, {1, 1}},
    };
    for (const auto& c : cases) {
        for (std::uint64_t seed = 1; seed <= 32; ++seed) {
            Rng rng(seed);
            const DiscriminationResult r = bell_discriminate(bell_state(c.kind), rng);
            CHECK(r.bits == c.want);
            CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("circuit maps Bell states to the product basis up to global phase") {
    const Operator map = discrimination_map();
    CHECK(map.is_unitary());

    const struct {
        BellKind kind;
        std::size_t want;
    } cases[] = {
        {BellKind::phi_plus, 0b00},
        {BellKind::phi_minus, 0b10},
        {BellKind::psi_plus, 0b01},
        {BellKind::psi_minus, 0b11},
    };
    for (const auto& c : cases) {
        const StateVector image = apply_full(map, bell_state(c.kind));
        CHECK(fidelity(image, StateVector::basis(2, c.want)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("circuit preserves orthonormality") {
    const Operator map = discrimination_map();
    std::vector<StateVector> images;
    for (BellKind k : kBellBasis) {
        images.push_back(apply_full(map, bell_state(k)));
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = 0; j < images.size(); ++j) {
            const cdouble want = (i == j) ? cdouble{1.0} : cdouble{0.0};
            CHECK(std::abs(std::abs(inner(images[i], images[j])) - std::abs(want)) < 1e-12);
        }
    }
}

TEST_CASE("triplet superpositions never produce the singlet signature") {
    // Any unit combination of psi+, phi+, phi- has zero amplitude on the
    // (1,1) outcome; this is what makes the orthogonal verdict error-free.
    Rng rng(0x9407);
    const Operator map = discrimination_map();
    for (int i = 0; i < 1000; ++i) {
        cdouble c1{rng.normal(), rng.normal()};
        cdouble c3{rng.normal(), rng.normal()};
        cdouble c4{rng.normal(), rng.normal()};
        const double r = std::sqrt(std::norm(c1) + std::norm(c3) + std::norm(c4));
        c1 /= r;
        c3 /= r;
        c4 /= r;
        const StateVector psi = bell_reconstruct({c1, 0.0, c3, c4});
        const StateVector image = apply_full(map, psi);
        CHECK(std::norm(image[0b11]) < 1e-12);

        Rng mrng(0x9408 + static_cast<std::uint64_t>(i));
        const DiscriminationResult r2 = bell_discriminate(psi, mrng);
        CHECK(r2.bits != std::array<int, 2>{1, 1});
    }
}

TEST_CASE("verdict_from_bits") {
    CHECK(verdict_from_bits(1, 1) == Verdict::parallel);
    CHECK(verdict_from_bits(0, 0) == Verdict::orthogonal);
    CHECK(verdict_from_bits(0, 1) == Verdict::orthogonal);
    CHECK(verdict_from_bits(1, 0) == Verdict::orthogonal);
}

TEST_CASE("quantum-communication strategy") {
    SUBCASE("parallel promise always yields the parallel verdict") {
        for (std::uint64_t t = 0; t < 2000; ++t) {
            Rng rng = Rng::for_trial(0x9409, t);
            const FieldScenario sc = eve_choose(Promise::parallel(), rng);
            const TrialRecord rec = run_with_qcomm(sc, rng);
            CHECK(rec.verdict == Verdict::parallel);
            CHECK(rec.correct);
        }
    }

    SUBCASE("orthogonal promise always yields the orthogonal verdict") {
        for (std::uint64_t t = 0; t < 2000; ++t) {
            Rng rng = Rng::for_trial(0x940A, t);
            const FieldScenario sc = eve_choose(Promise::orthogonal(), rng);
            const TrialRecord rec = run_with_qcomm(sc, rng);
            CHECK(rec.verdict == Verdict::orthogonal);
            CHECK(rec.correct);
        }
    }

    SUBCASE("zero errors over a large mixed-promise run") {
        int errors = 0;
        const std::uint64_t trials = 100000;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Rng rng = Rng::for_trial(0x940B, t);
            const Promise promise =
                (rng.next_u64() & 1) ? Promise::parallel() : Promise::orthogonal();
            const FieldScenario sc = eve_choose(promise, rng);
            errors += !run_with_qcomm(sc, rng).correct;
        }
        CHECK(errors == 0);
    }

    SUBCASE("unsupported promises are rejected") {
        Rng rng(0x940C);
        const FieldScenario sc = eve_choose(Promise::anti_parallel(), rng);
        CHECK_THROWS_AS(run_with_qcomm(sc, rng), protocol_error);
        const FieldScenario sc2 = eve_choose(Promise::angle(0.3), rng);
        CHECK_THROWS_AS(run_with_qcomm(sc2, rng), protocol_error);
    }
}

TEST_CASE("bell_discriminate validates input size") {
    Rng rng(0x940D);
    CHECK_THROWS_AS(bell_discriminate(StateVector(1), rng), std::invalid_argument);
}
