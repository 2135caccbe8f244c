#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "fieldcmp/fieldcmp.hpp"
#include "helpers.hpp"

using namespace fieldcmp;
using helpers::check_complex_near;
using helpers::random_state;

namespace {

constexpr double kPi = std::numbers::pi;

// Frozen from the seeded calibration run (seed 0xFE02, 2000 direction
// samples); the analytic supremum for this ensemble is 0.0917517.
constexpr double kPauliSixWorstError = 0.090092352835805023;

// The worked sample: parallel axis z, orthogonal pair ((1,0,1), (1,0,-1))/sqrt2.
// phi_perp = pi lands the orthogonal-circle point on (1,0,-1)/sqrt2.
ConditionSample worked_sample() {
    return {UnitDirection(0, 0, 1),
            UnitDirection(1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)), kPi};
}

std::vector<StateVector> pauli_six() {
    std::vector<StateVector> out;
    for (int axis = 0; axis < 3; ++axis) {
        for (int which : {0, 1}) {
            const UnitDirection n(axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0,
                                  axis == 2 ? 1.0 : 0.0);
            out.push_back(pauli_eigenstate(n, which));
        }
    }
    return out;
}

// Brute-force minimum-error oracle: grid search over two-outcome projective
// measurements inside the 2D span of the states.
double min_error_grid(const StateVector& s1, const StateVector& s2) {
    const cdouble ov = inner(s1, s2);
    const double w = std::sqrt(std::max(0.0, 1.0 - std::norm(ov)));
    double best = 1.0;
    for (int it = 0; it < 512; ++it) {
        const double t = it * kPi / 512.0;
        for (int ip = 0; ip < 256; ++ip) {
            const double p = ip * 2.0 * kPi / 256.0;
            const double miss1 = std::sin(t) * std::sin(t);
            const cdouble amp2 = std::cos(t) * ov +
                                 cdouble{std::cos(-p), std::sin(-p)} * std::sin(t) * w;
            const double err = 0.5 * (miss1 + std::norm(amp2));
            best = std::min(best, err);
        }
    }
    return best;
}

} // namespace

TEST_CASE("the singlet satisfies the discrimination condition everywhere") {
    Rng rng(0xA11A01);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const ConditionSample s = random_condition_sample(rng);
        worst = std::max(worst, std::abs(discrimination_overlap(singlet(), s)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("worked sample on psi+ evaluates to -1 in both routes") {
    const ConditionSample s = worked_sample();
    // The sample must realize the intended orthogonal direction.
    const UnitDirection perp = condition_perp(s);
    CHECK(std::abs(perp.x() - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(perp.y()) < 1e-12);
    CHECK(std::abs(perp.z() + 1.0 / std::sqrt(2.0)) < 1e-12);

    const StateVector psi_plus = bell_state(BellKind::psi_plus);
    check_complex_near(discrimination_overlap(psi_plus, s), -1.0);
    check_complex_near(discrimination_overlap_closed_form(psi_plus, s), -1.0);

    // On the singlet the two closed-form terms cancel: (n.n')(n.n'perp) is
    // -1/2 and the correlation term matches it.
    CHECK(std::abs(dot(s.n, s.nprime) * dot(s.n.vec(), perp.vec()) + 0.5) < 1e-12);
    check_complex_near(discrimination_overlap(singlet(), s), 0.0);
    check_complex_near(discrimination_overlap_closed_form(singlet(), s), 0.0);
}

TEST_CASE("equal parallel and test axes reduce to a local Pauli expectation") {
    Rng rng(0xA11A02);
    for (int i = 0; i < 1000; ++i) {
        const StateVector psi = random_state(2, rng);
        const UnitDirection n = random_direction(rng);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const ConditionSample s{n, n, phi};
        const UnitDirection perp = condition_perp(s);
        const UnitDirection ndoubleprime = UnitDirection::from_vector(cross(n, perp));
        const cdouble want =
            cdouble{0.0, 1.0} *
            expectation(tensor(Operator::identity(2), pauli_dot(ndoubleprime)), psi);
        check_complex_near(discrimination_overlap(psi, s), want);
    }
}

TEST_CASE("closed form agrees with direct evaluation on maximally entangled states") {
    Rng rng(0xA11A03);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const StateVector psi = random_max_entangled(rng);
        const ConditionSample s = random_condition_sample(rng);
        const cdouble direct = discrimination_overlap(psi, s);
        const cdouble closed = discrimination_overlap_closed_form(psi, s);
        worst = std::max(worst, std::abs(direct - closed));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("closed form rejects states outside its precondition") {
    CHECK_THROWS_AS(
        discrimination_overlap_closed_form(StateVector::basis(2, 0), worked_sample()),
        std::invalid_argument);
}

TEST_CASE("maximal entanglement detection") {
    SUBCASE("all four Bell states pass") {
        for (BellKind k : kBellBasis) {
            const MaxEntWitness w = is_maximally_entangled(bell_state(k));
            CHECK(w.maximally_entangled);
            CHECK(w.residual < 1e-12);
        }
    }

    SUBCASE("|00> fails with witness 1") {
        const MaxEntWitness w = is_maximally_entangled(StateVector::basis(2, 0));
        CHECK_FALSE(w.maximally_entangled);
        CHECK(w.residual == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("the equal psi+/phi+ superposition is a product state") {
        const double s = 1.0 / std::sqrt(2.0);
        const StateVector psi = bell_reconstruct({s, 0.0, s, 0.0});
        const MaxEntWitness w = is_maximally_entangled(psi);
        CHECK_FALSE(w.maximally_entangled);
        CHECK(w.residual == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Pauli-residual and reduced-purity formulations agree") {
    Rng rng(0xA11A04);
    for (int i = 0; i < 10000; ++i) {
        const StateVector psi = random_state(2, rng);
        // Bloch norm of Bob's reduced state from Pauli expectations...
        double b2 = 0.0;
        const Operator* paulis[] = {&pauli_x(), &pauli_y(), &pauli_z()};
        for (const Operator* p : paulis) {
            const double e =
                expectation(tensor(Operator::identity(2), *p), psi).real();
            b2 += e * e;
        }
        // ...must equal 2*purity - 1 from the explicit density matrix.
        const double purity = reduced_purity(psi, 1);
        CHECK(std::abs((2.0 * purity - 1.0) - b2) < 1e-10);
        // A pure bipartite state has equal purities on both sides.
        CHECK(std::abs(reduced_purity(psi, 0) - purity) < 1e-10);
    }

    SUBCASE("predicates agree on the reference states") {
        for (BellKind k : kBellBasis) {
            CHECK(std::abs(reduced_purity(bell_state(k), 1) - 0.5) < 1e-12);
            CHECK(is_maximally_entangled(bell_state(k)).maximally_entangled);
        }
        CHECK(std::abs(reduced_purity(StateVector::basis(2, 0), 1) - 1.0) < 1e-12);
        CHECK_FALSE(is_maximally_entangled(StateVector::basis(2, 0)).maximally_entangled);
    }
}

TEST_CASE("uniqueness scan") {
    SUBCASE("the singlet heads the report with a vanishing residual") {
        Rng rng(0xA11A05);
        const auto reports = uniqueness_scan(8, 64, rng);
        REQUIRE(reports.size() == 9);
        CHECK(reports.front().worst_violation < 1e-12);
        CHECK(reports.front().singlet_weight == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 1; i < reports.size(); ++i) {
            CHECK(reports[i - 1].worst_violation <= reports[i].worst_violation);
        }
    }

    SUBCASE("no non-singlet state slips under the calibrated floor") {
        Rng rng(0xA11A06);
        const auto reports = uniqueness_scan(32, 64, rng);
        for (const auto& r : reports) {
            if (r.singlet_weight < kViolationFloorWeight) {
                CHECK(r.worst_violation > kViolationFloor);
            }
        }
    }

    SUBCASE("boundary states at the floor weight stay above the floor") {
        // Fresh draws, independent of the calibration seed.
        Rng rng(0xA11A07);
        const auto grid = stratified_condition_samples();
        for (int i = 0; i < 200; ++i) {
            double a = rng.normal(), b = rng.normal(), c = rng.normal();
            const double r = std::sqrt(a * a + b * b + c * c);
            const double s = std::sqrt(1.0 - kViolationFloorWeight);
            a *= s / r;
            b *= s / r;
            c *= s / r;
            const double q2 =
                std::sqrt(kViolationFloorWeight) * ((rng.next_u64() & 1) ? 1.0 : -1.0);
            const StateVector psi = max_entangled_from_quaternion(a, b, q2, c);
            const ViolationReport rep = scan_state(psi, grid, 0, rng);
            CHECK(rep.worst_violation > kViolationFloor);
        }
    }

    SUBCASE("violation decreases monotonically on the approach to the singlet") {
        Rng rng(0xA11A08);
        const auto grid = stratified_condition_samples();
        const double w0 = 1.0 / std::sqrt(14.0);
        const double w1 = 2.0 / std::sqrt(14.0);
        const double w3 = 3.0 / std::sqrt(14.0);
        double prev = 1e9;
        for (int k = 8; k >= 0; --k) {
            const double beta = k * kPi / 16.0;  // from pi/2 down to 0
            const double sb = std::sin(beta / 2.0), cb = std::cos(beta / 2.0);
            const StateVector psi =
                max_entangled_from_quaternion(w0 * sb, w1 * sb, cb, w3 * sb);
            const ViolationReport rep = scan_state(psi, grid, 0, rng);
            CHECK(rep.worst_violation <= prev + 1e-9);
            prev = rep.worst_violation;
        }
        CHECK(prev < 1e-12);  // the endpoint is the singlet itself
    }
}

TEST_CASE("disentangled strategy overlap") {
    SUBCASE("eigenstate along the parallel axis always vanishes") {
        const StateVector zero = StateVector::basis(1, 0);
        for (int k = 0; k < 8; ++k) {
            check_complex_near(
                disentangled_overlap(zero, UnitDirection(0, 0, 1), k * kPi / 4.0), 0.0);
        }
    }

    SUBCASE("worst case has unit magnitude") {
        // n = x with phi = 3pi/2 realizes nperp = y; then the overlap on |0>
        // is i<sigma_z> = i.
        const UnitDirection n(1, 0, 0);
        const double phi = 3.0 * kPi / 2.0;
        const UnitDirection nperp = orthogonal_direction(n, phi);
        CHECK(std::abs(nperp.y() - 1.0) < 1e-12);
        check_complex_near(disentangled_overlap(StateVector::basis(1, 0), n, phi),
                           cdouble{0.0, 1.0});
    }

    SUBCASE("equals i times Bloch-vector dot the plane normal") {
        Rng rng(0xA11A09);
        for (int i = 0; i < 2000; ++i) {
            const StateVector psi = random_state(1, rng);
            const UnitDirection n = random_direction(rng);
            const double phi = rng.uniform(0.0, 2.0 * kPi);
            const Vec3 bloch{expectation(pauli_x(), psi).real(),
                             expectation(pauli_y(), psi).real(),
                             expectation(pauli_z(), psi).real()};
            const Vec3 normal = cross(n.vec(), orthogonal_direction(n, phi).vec());
            const cdouble want = cdouble{0.0, 1.0} * dot(bloch, normal);
            check_complex_near(disentangled_overlap(psi, n, phi), want);
        }
    }
}

TEST_CASE("Helstrom error") {
    SUBCASE("distinguishable and identical extremes") {
        CHECK(helstrom_error(StateVector::basis(1, 0), StateVector::basis(1, 1)) == 0.0);
        const StateVector psi = StateVector::basis(1, 0);
        CHECK(helstrom_error(psi, psi) == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("overlap 1/sqrt(2), frozen value and measurement oracle") {
        const double s = 1.0 / std::sqrt(2.0);
        const StateVector plus(1, {s, s});
        const double got = helstrom_error(StateVector::basis(1, 0), plus);
        CHECK(std::abs(got - 0.14644660940672624) < 1e-12);
        CHECK(std::abs(got - min_error_grid(StateVector::basis(1, 0), plus)) < 2e-4);
    }

    SUBCASE("symmetry and monotonicity in the overlap") {
        Rng rng(0xA11A0A);
        double prev = -1.0;
        for (int k = 0; k <= 10; ++k) {
            const double ov = k / 10.0;
            const StateVector s1 = StateVector::basis(1, 0);
            const StateVector s2(1, {ov, std::sqrt(1.0 - ov * ov)});
            const double e = helstrom_error(s1, s2);
            CHECK(e >= prev);
            CHECK(e == helstrom_error(s2, s1));
            prev = e;
        }
        const StateVector a = random_state(1, rng);
        const StateVector b = random_state(1, rng);
        CHECK(helstrom_error(a, b) == helstrom_error(b, a));
    }
}

TEST_CASE("finite disentangled strategies always err") {
    SUBCASE("a single |0> fails completely somewhere") {
        const std::vector<StateVector> single{StateVector::basis(1, 0)};
        Rng rng(0xFE01);
        CHECK(std::abs(finite_strategy_worst_error(single, 2000, rng) - 0.5) < 1e-12);
    }

    SUBCASE("the six Pauli eigenstates, frozen regression value") {
        Rng rng(0xFE02);
        const double got = finite_strategy_worst_error(pauli_six(), 2000, rng);
        CHECK(std::abs(got - kPauliSixWorstError) < 1e-12);
        // Bracketed by the analytic supremum for this ensemble.
        CHECK(got < (1.0 - std::sqrt(2.0 / 3.0)) / 2.0 + 1e-12);
        CHECK(got > 0.0);
    }

    SUBCASE("growing nested ensembles never get worse, never reach zero") {
        Rng ens_rng(0xFE03);
        std::vector<StateVector> ensemble;
        double prev = 0.5 + 1e-9;
        for (int size : {1, 6, 24, 96}) {
            while (static_cast<int>(ensemble.size()) < size) {
                ensemble.push_back(random_state(1, ens_rng));
            }
            Rng dir_rng(0xFE04);  // identical direction draws for every size
            const double e = finite_strategy_worst_error(ensemble, 2000, dir_rng);
            CHECK(e > 0.0);
            CHECK(e <= prev);
            prev = e;
        }
    }

    SUBCASE("empty ensembles are rejected") {
        Rng rng(0xFE05);
        const std::vector<StateVector> none;
        CHECK_THROWS_AS(finite_strategy_worst_error(none, 10, rng), std::invalid_argument);
    }
}

TEST_CASE("angle sweep matches the cosine-squared law") {
    std::vector<double> alphas;
    for (int k = 0; k <= 12; ++k) alphas.push_back(k * kPi / 12.0);
    Rng rng(0xA11A0B);
    const auto points = angle_sweep(alphas, 50, rng);
    REQUIRE(points.size() == alphas.size());
    for (const auto& p : points) {
        const double want = std::cos(p.alpha) * std::cos(p.alpha);
        CHECK(std::abs(p.mean_survival - want) < 1e-9);
        CHECK(p.max_dev < 1e-9);
    }
    CHECK(points.front().mean_survival == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(points[6].mean_survival < 1e-12);  // alpha = pi/2
    CHECK(std::abs(points[3].mean_survival - 0.5) < 1e-9);  // alpha = pi/4
}

TEST_CASE("anti-parallel waiting-time scan") {
    std::vector<double> thetas;
    for (int k = 0; k <= 12; ++k) thetas.push_back(k * kPi / 12.0);
    for (std::uint64_t seed = 1; seed <= 16; ++seed) {
        Rng rng(seed);
        const auto points = antiparallel_check(thetas, rng);
        REQUIRE(points.size() == thetas.size());
        for (const auto& p : points) {
            const double c2 = std::cos(p.theta) * std::cos(p.theta);
            CHECK(std::abs(p.singlet_fidelity - c2) < 1e-12);
            CHECK(std::abs(p.triplet_fidelity - (1.0 - c2)) < 1e-12);
        }
        CHECK(points.front().singlet_fidelity == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(points[6].singlet_fidelity < 1e-12);            // theta = pi/2
        CHECK(points[6].triplet_fidelity > 1.0 - 1e-12);
    }
}

TEST_CASE("argument validation") {
    Rng rng(0xA11A0C);
    CHECK_THROWS_AS(discrimination_overlap(StateVector(1), worked_sample()),
                    std::invalid_argument);
    CHECK_THROWS_AS(disentangled_overlap(StateVector(2), UnitDirection(0, 0, 1), 0.0),
                    std::invalid_argument);
    const std::vector<double> alphas{0.1};
    CHECK_THROWS_AS(angle_sweep(alphas, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(su2_from_quaternion(1.0, 1.0, 0.0, 0.0), std::invalid_argument);
}
