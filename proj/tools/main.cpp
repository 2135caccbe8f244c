// fieldcmp command-line interface: run the protocols, the invariant suite,
// and the analysis sweeps/scans with reproducible seeded output.

#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fieldcmp/fieldcmp.hpp"

using namespace fieldcmp;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Machine-readable output goes to --out when given, stdout otherwise.
int write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
        return 1;
    }
    return 0;
}

struct CommonOpts {
    std::uint64_t seed = 1;
    int trials = 10000;
    double tol = 1e-12;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "Master seed; per-trial streams are hash(seed, index)")
        ->capture_default_str();
    cmd->add_option("--trials", o.trials, "Monte Carlo trial count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "Pass/fail tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Write machine-readable output to this file");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

std::vector<double> default_grid() {
    std::vector<double> g;
    for (int k = 0; k <= 12; ++k) g.push_back(k * kPi / 12.0);
    return g;
}

json scenario_json(const FieldScenario& sc) {
    return json{{"promise", promise_name(sc.promise)},
                {"n", {sc.n.x(), sc.n.y(), sc.n.z()}},
                {"m", {sc.m.x(), sc.m.y(), sc.m.z()}}};
}

// ---------------------------------------------------------------------------
// demo

int cmd_demo(const CommonOpts& opt, const std::string& promise_name_arg) {
    const Promise promise = promise_name_arg == "orthogonal" ? Promise::orthogonal()
                                                             : Promise::parallel();
    Rng rng(opt.seed);
    const FieldScenario sc = eve_choose(promise, rng);
    const LoccRunResult run = run_locc(sc, rng);

    bool ok = run.record.correct;
    std::string audit_note = "ok";
    try {
        run.transcript.audit_locality();
    } catch (const locality_error& e) {
        ok = false;
        audit_note = e.what();
    }
    ok = ok && run.transcript.singlet_count() == 2 && run.transcript.message_count() == 3;

    if (opt.format == "json") {
        json j{{"seed", opt.seed},
               {"scenario", scenario_json(sc)},
               {"verdict", verdict_name(run.record.verdict)},
               {"correct", run.record.correct},
               {"singlets_consumed", run.transcript.singlet_count()},
               {"classical_bits", run.transcript.message_count()},
               {"locality_audit", audit_note}};
        json lines = json::array();
        std::string text = run.transcript.to_text();
        std::size_t pos = 0;
        while (pos < text.size()) {
            const std::size_t eol = text.find('\n', pos);
            if (eol == std::string::npos) {
                lines.push_back(text.substr(pos));
                break;
            }
            lines.push_back(text.substr(pos, eol - pos));
            pos = eol + 1;
        }
        j["transcript"] = lines;
        if (write_output(j.dump(2) + "\n", opt.out) != 0) return 1;
        return ok ? 0 : 1;
    }

    std::string text;
    text += "seed: " + std::to_string(opt.seed) + "\n";
    text += "promise: " + std::string(promise_name(sc.promise)) + "\n";
    text += "alice field n = (" + fmt_double(sc.n.x()) + ", " + fmt_double(sc.n.y()) + ", " +
            fmt_double(sc.n.z()) + ")\n";
    text += "bob field   m = (" + fmt_double(sc.m.x()) + ", " + fmt_double(sc.m.y()) + ", " +
            fmt_double(sc.m.z()) + ")\n";
    text += "transcript:\n" + run.transcript.to_text();
    text += "verdict: " + std::string(verdict_name(run.record.verdict)) +
            (run.record.correct ? " (correct)\n" : " (WRONG)\n");
    text += "singlets consumed: " + std::to_string(run.transcript.singlet_count()) +
            ", classical bits: " + std::to_string(run.transcript.message_count()) +
            ", locality audit: " + audit_note + "\n";
    if (write_output(text, opt.out) != 0) return 1;
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify

struct Property {
    std::string name;
    std::function<std::optional<std::string>()> run;  // nullopt = pass
};

int cmd_verify(const CommonOpts& opt, const std::string& inject_fault) {
    const bool fault_hadamard = inject_fault == "hadamard-sign";
    // Sign attached to the wrong basis column; breaks the outcome table.
    const double s = 1.0 / std::sqrt(2.0);
    const Operator faulty_readout(2, {s, -s, s, s});
    const Operator& readout = fault_hadamard ? faulty_readout : inverse_hadamard();

    std::vector<Property> properties;

    properties.push_back({"pauli-algebra", [&]() -> std::optional<std::string> {
        Rng rng(Rng::mix(opt.seed ^ 0x01));
        for (int i = 0; i < 2000; ++i) {
            const Operator op = pauli_dot(random_direction(rng));
            if ((op * op).max_abs_diff(Operator::identity(2)) > 1e-12)
                return "square differs from identity";
            if (!op.is_hermitian()) return "not hermitian";
            if (std::abs(op.trace()) > 1e-12) return "not trace-free";
        }
        return std::nullopt;
    }});

    properties.push_back({"rotation-evolution", [&]() -> std::optional<std::string> {
        Rng rng(Rng::mix(opt.seed ^ 0x02));
        for (int i = 0; i < 500; ++i) {
            const UnitDirection n = random_direction(rng);
            const double theta = rng.uniform(-6.0, 6.0);
            if ((rotation(n, theta) * rotation(n, -theta))
                    .max_abs_diff(Operator::identity(2)) > 1e-12)
                return "inverse evolution failed";
            if (rotation(n, kPi).max_abs_diff(cdouble{0, -1} * pauli_dot(n)) > 1e-12)
                return "half turn differs from -i n.sigma";
        }
        return std::nullopt;
    }});

    properties.push_back({"tensor-structure", [&]() -> std::optional<std::string> {
        Rng rng(Rng::mix(opt.seed ^ 0x03));
        for (int i = 0; i < 100; ++i) {
            Operator a(2), b(2), c(2);
            for (int r = 0; r < 2; ++r) {
                for (int col = 0; col < 2; ++col) {
                    a.at(r, col) = {rng.normal(), rng.normal()};
                    b.at(r, col) = {rng.normal(), rng.normal()};
                    c.at(r, col) = {rng.normal(), rng.normal()};
                }
            }
            if (tensor(tensor(a, b), c).max_abs_diff(tensor(a, tensor(b, c))) > 1e-12)
                return "associativity failed";
        }
        return std::nullopt;
    }});

    properties.push_back({"norm-preservation", [&]() -> std::optional<std::string> {
        Rng rng(Rng::mix(opt.seed ^ 0x04));
        for (int i = 0; i < 200; ++i) {
            std::vector<cdouble> amps(8);
            for (auto& a : amps) a = {rng.normal(), rng.normal()};
            StateVector psi = StateVector(3, std::move(amps)).normalized();
            psi = apply(rotation(random_direction(rng), rng.uniform(0.0, 6.28)), psi,
                        {static_cast<int>(rng.next_u64() % 3)});
            psi = apply(cnot(), psi, {0, 2});
            if (std::abs(psi.norm_squared() - 1.0) > 1e-12) return "norm drifted";
        }
        return std::nullopt;
    }});

    properties.push_back({"bell-roundtrip", [&]() -> std::optional<std::string> {
        Rng rng(Rng::mix(opt.seed ^ 0x05));
        for (int i = 0; i < 200; ++i) {
            std::vector<cdouble> amps(4);
            for (auto& a : amps) a = {rng.normal(), rng.normal()};
            const StateVector psi = StateVector(2, std::move(amps)).normalized();
            const BellCoefficients c = bell_coefficients(psi);
            if (std::abs(c.norm_squared() - 1.0) > 1e-12) return "coefficients not normalized";
            if (max_abs_diff(bell_reconstruct(c), psi) > 1e-12) return "round trip failed";
        }
        return std::nullopt;
    }});

    properties.push_back({"field-invariance", [&]() -> std::optional<std::string> {
        Rng rng(Rng::mix(opt.seed ^ 0x06));
        for (int i = 0; i < 2000; ++i) {
            const FieldScenario par = eve_choose(Promise::parallel(), rng);
            if (std::abs(fidelity(singlet(), apply_fields_instantaneous(par, singlet())) -
                         1.0) > 1e-12)
                return "parallel fields moved the singlet";
            const FieldScenario ort = eve_choose(Promise::orthogonal(), rng);
            if (std::abs(inner(singlet(), apply_fields_instantaneous(ort, singlet()))) > 1e-12)
                return "orthogonal image not orthogonal to the singlet";
        }
        for (int i = 0; i < 500; ++i) {
            const FieldScenario sc = eve_choose(
                (i & 1) ? Promise::parallel() : Promise::orthogonal(), rng);
            const StateVector a = apply_fields_evolution(sc, kPi, singlet());
            const StateVector b = apply_fields_instantaneous(sc, singlet());
            if (std::abs(fidelity(a, b) - 1.0) > 1e-12)
                return "evolution at pi differs from the instantaneous picture";
        }
        return std::nullopt;
    }});

    properties.push_back({"bell-mapping", [&]() -> std::optional<std::string> {
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
            for (std::uint64_t k = 0; k < 16; ++k) {
                Rng rng = Rng::for_trial(Rng::mix(opt.seed ^ 0x07), k);
                const DiscriminationResult r =
                    bell_discriminate(bell_state(c.kind), rng, readout);
                if (r.bits != c.want)
                    return std::string("outcome table broken on ") + bell_name(c.kind);
                if (std::abs(r.probability - 1.0) > 1e-12)
                    return std::string("outcome not deterministic on ") + bell_name(c.kind);
            }
        }
        Rng rng(Rng::mix(opt.seed ^ 0x08));
        for (int i = 0; i < 200; ++i) {
            cdouble c1{rng.normal(), rng.normal()};
            cdouble c3{rng.normal(), rng.normal()};
            cdouble c4{rng.normal(), rng.normal()};
            const double r = std::sqrt(std::norm(c1) + std::norm(c3) + std::norm(c4));
            const StateVector psi = bell_reconstruct({c1 / r, 0.0, c3 / r, c4 / r});
            const DiscriminationResult d = bell_discriminate(psi, rng, readout);
            if (d.bits == std::array<int, 2>{1, 1})
                return "triplet superposition produced the singlet signature";
        }
        return std::nullopt;
    }});

    properties.push_back({"remote-cnot-oracle", [&]() -> std::optional<std::string> {
        for (std::uint64_t t = 0; t < 200; ++t) {
            Rng rng = Rng::for_trial(Rng::mix(opt.seed ^ 0x09), t);
            std::vector<cdouble> amps(4);
            for (auto& a : amps) a = {rng.normal(), rng.normal()};
            const StateVector exposed = StateVector(2, std::move(amps)).normalized();
            const StateVector want_exposed = apply(cnot(), exposed, {0, 1});
            for (int x = 0; x < 2; ++x) {
                for (int z = 0; z < 2; ++z) {
                    LoccSession session(tensor(exposed, bell_state(BellKind::phi_plus)));
                    remote_cnot(session, 0, 1, {2, 3}, rng, std::make_pair(x, z));
                    const StateVector want = tensor(
                        want_exposed, StateVector::basis(2, static_cast<std::size_t>(x * 2 + z)));
                    if (std::abs(fidelity(session.state(), want) - 1.0) > 1e-12)
                        return "branch (" + std::to_string(x) + "," + std::to_string(z) +
                               ") differs from the direct gate";
                }
            }
        }
        return std::nullopt;
    }});

    properties.push_back({"locality-audit", [&]() -> std::optional<std::string> {
        for (std::uint64_t t = 0; t < 500; ++t) {
            Rng rng = Rng::for_trial(Rng::mix(opt.seed ^ 0x0A), t);
            const Promise promise =
                (rng.next_u64() & 1) ? Promise::parallel() : Promise::orthogonal();
            const LoccRunResult run = run_locc(eve_choose(promise, rng), rng);
            try {
                run.transcript.audit_locality();
            } catch (const locality_error& e) {
                return std::string(e.what());
            }
            if (run.transcript.singlet_count() != 2) return "singlet budget violated";
            if (run.transcript.message_count() != 3) return "classical bit budget violated";
        }
        return std::nullopt;
    }});

    properties.push_back({"protocol-zero-error", [&]() -> std::optional<std::string> {
        int errors = 0;
        for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(opt.trials); ++t) {
            Rng rng = Rng::for_trial(Rng::mix(opt.seed ^ 0x0B), t);
            const Promise promise =
                (rng.next_u64() & 1) ? Promise::parallel() : Promise::orthogonal();
            const FieldScenario sc = eve_choose(promise, rng);
            Rng rng_q = Rng::for_trial(Rng::mix(opt.seed ^ 0x0C), t);
            errors += !run_with_qcomm(sc, rng_q).correct;
            errors += !run_locc(sc, rng).record.correct;
        }
        if (errors > 0) return std::to_string(errors) + " wrong verdicts";
        return std::nullopt;
    }});

    // In json mode the per-property lines go to stderr so the document owns
    // stdout.
    std::FILE* lines_out = opt.format == "json" ? stderr : stdout;
    std::string first_failure;
    json results = json::array();
    for (const auto& p : properties) {
        const std::optional<std::string> failure = p.run();
        results.push_back(json{{"name", p.name}, {"pass", !failure.has_value()}});
        if (failure) {
            std::fprintf(lines_out, "FAIL %s: %s\n", p.name.c_str(), failure->c_str());
            if (first_failure.empty()) first_failure = p.name;
        } else {
            std::fprintf(lines_out, "PASS %s\n", p.name.c_str());
        }
    }
    if (opt.format == "json") {
        const json doc{{"seed", opt.seed},
                       {"trials", opt.trials},
                       {"all_pass", first_failure.empty()},
                       {"properties", results}};
        if (write_output(doc.dump(2) + "\n", opt.out) != 0) return 1;
    }
    if (!first_failure.empty()) {
        std::fprintf(lines_out, "FIRST FAILURE: %s\n", first_failure.c_str());
        return 1;
    }
    std::fprintf(lines_out, "all %zu properties passed\n", properties.size());
    return 0;
}

// ---------------------------------------------------------------------------
// sweep-angle

int cmd_sweep_angle(const CommonOpts& opt, std::vector<double> alphas) {
    if (alphas.empty()) alphas = default_grid();
    Rng rng(opt.seed);
    const auto points = angle_sweep(alphas, opt.trials, rng);

    double worst = 0.0;
    for (const auto& p : points) {
        const double want = std::cos(p.alpha) * std::cos(p.alpha);
        worst = std::max(worst, std::abs(p.mean_survival - want));
        worst = std::max(worst, p.max_dev);
    }

    std::string text;
    if (opt.format == "json") {
        json rows = json::array();
        for (const auto& p : points) {
            rows.push_back(json{{"alpha", p.alpha},
                                {"mean_survival", p.mean_survival},
                                {"max_dev", p.max_dev}});
        }
        text = json{{"seed", opt.seed}, {"trials", opt.trials}, {"points", rows}}.dump(2) + "\n";
    } else {
        text = "alpha,mean_survival,max_dev\n";
        for (const auto& p : points) {
            text += fmt_double(p.alpha) + "," + fmt_double(p.mean_survival) + "," +
                    fmt_double(p.max_dev) + "\n";
        }
    }
    if (write_output(text, opt.out) != 0) return 1;
    std::fprintf(stderr, "max deviation from cos^2(alpha): %s\n", fmt_double(worst).c_str());
    return worst <= opt.tol ? 0 : 1;
}

// ---------------------------------------------------------------------------
// uniqueness

int cmd_uniqueness(const CommonOpts& opt, int states, int samples) {
    Rng rng(opt.seed);
    const auto reports = uniqueness_scan(states, samples, rng);

    double singlet_residual = -1.0;
    double min_nonsinglet = -1.0;
    bool floor_ok = true;
    for (const auto& r : reports) {
        if (r.singlet_weight > kViolationFloorWeight) {
            if (singlet_residual < 0.0 || r.worst_violation < singlet_residual) {
                singlet_residual = r.worst_violation;
            }
        } else {
            if (min_nonsinglet < 0.0 || r.worst_violation < min_nonsinglet) {
                min_nonsinglet = r.worst_violation;
            }
            floor_ok = floor_ok && r.worst_violation > kViolationFloor;
        }
    }

    std::string text;
    if (opt.format == "json") {
        json rows = json::array();
        for (const auto& r : reports) {
            rows.push_back(json{{"c2sq", r.singlet_weight},
                                {"worst_violation", r.worst_violation},
                                {"n", {r.argmax.n.x(), r.argmax.n.y(), r.argmax.n.z()}},
                                {"nprime",
                                 {r.argmax.nprime.x(), r.argmax.nprime.y(), r.argmax.nprime.z()}},
                                {"phi_perp", r.argmax.phi_perp},
                                {"samples", r.samples_used}});
        }
        text = json{{"seed", opt.seed},
                    {"states", states},
                    {"extra_samples", samples},
                    {"violation_floor", kViolationFloor},
                    {"reports", rows}}
                   .dump(2) +
               "\n";
    } else {
        text = "c2sq,worst_violation,nx,ny,nz,npx,npy,npz,phi_perp,samples\n";
        for (const auto& r : reports) {
            text += fmt_double(r.singlet_weight) + "," + fmt_double(r.worst_violation) + "," +
                    fmt_double(r.argmax.n.x()) + "," + fmt_double(r.argmax.n.y()) + "," +
                    fmt_double(r.argmax.n.z()) + "," + fmt_double(r.argmax.nprime.x()) + "," +
                    fmt_double(r.argmax.nprime.y()) + "," + fmt_double(r.argmax.nprime.z()) +
                    "," + fmt_double(r.argmax.phi_perp) + "," +
                    std::to_string(r.samples_used) + "\n";
        }
    }
    if (write_output(text, opt.out) != 0) return 1;

    std::fprintf(stderr, "singlet residual: %s (tolerance %s)\n",
                 fmt_double(singlet_residual).c_str(), fmt_double(opt.tol).c_str());
    if (min_nonsinglet >= 0.0) {
        std::fprintf(stderr, "minimum non-singlet violation: %s (floor %s)\n",
                     fmt_double(min_nonsinglet).c_str(), fmt_double(kViolationFloor).c_str());
    }
    const bool ok = singlet_residual >= 0.0 && singlet_residual < opt.tol && floor_ok;
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// antiparallel

int cmd_antiparallel(const CommonOpts& opt, std::vector<double> thetas) {
    if (thetas.empty()) thetas = default_grid();
    Rng rng(opt.seed);
    const auto points = antiparallel_check(thetas, rng);

    // Side check: under a parallel promise the singlet survives every
    // waiting time.
    Rng rng_par(Rng::mix(opt.seed ^ 0x0D));
    const FieldScenario par = eve_choose(Promise::parallel(), rng_par);
    double worst_parallel = 0.0;
    for (double theta : thetas) {
        worst_parallel = std::max(
            worst_parallel,
            std::abs(fidelity(singlet(), apply_fields_evolution(par, theta, singlet())) - 1.0));
    }

    double worst_law = 0.0;
    for (const auto& p : points) {
        const double c2 = std::cos(p.theta) * std::cos(p.theta);
        worst_law = std::max(worst_law, std::abs(p.singlet_fidelity - c2));
        worst_law = std::max(worst_law, std::abs(p.triplet_fidelity - (1.0 - c2)));
    }

    std::string text;
    if (opt.format == "json") {
        json rows = json::array();
        for (const auto& p : points) {
            rows.push_back(json{{"theta", p.theta},
                                {"singlet_fidelity", p.singlet_fidelity},
                                {"triplet_fidelity", p.triplet_fidelity}});
        }
        text = json{{"seed", opt.seed}, {"points", rows}}.dump(2) + "\n";
    } else {
        text = "theta,singlet_fidelity,triplet_fidelity\n";
        for (const auto& p : points) {
            text += fmt_double(p.theta) + "," + fmt_double(p.singlet_fidelity) + "," +
                    fmt_double(p.triplet_fidelity) + "\n";
        }
    }
    if (write_output(text, opt.out) != 0) return 1;

    std::fprintf(stderr, "max deviation from cos^2/sin^2 law: %s\n",
                 fmt_double(worst_law).c_str());
    std::fprintf(stderr, "parallel evolution worst singlet infidelity: %s\n",
                 fmt_double(worst_parallel).c_str());
    return (worst_law <= opt.tol && worst_parallel <= opt.tol) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// finite-strategy

int cmd_finite_strategy(const CommonOpts& opt, int samples) {
    struct Row {
        std::string label;
        int size;
        double worst_error;
    };
    std::vector<Row> rows;

    {
        const std::vector<StateVector> single{StateVector::basis(1, 0)};
        Rng rng(Rng::mix(opt.seed ^ 0x0E));
        rows.push_back({"single-zero", 1, finite_strategy_worst_error(single, samples, rng)});
    }
    {
        std::vector<StateVector> pauli6;
        for (int axis = 0; axis < 3; ++axis) {
            for (int which : {0, 1}) {
                const UnitDirection n(axis == 0 ? 1.0 : 0.0, axis == 1 ? 1.0 : 0.0,
                                      axis == 2 ? 1.0 : 0.0);
                pauli6.push_back(pauli_eigenstate(n, which));
            }
        }
        Rng rng(Rng::mix(opt.seed ^ 0x0E));
        rows.push_back(
            {"pauli-eigenstates", 6, finite_strategy_worst_error(pauli6, samples, rng)});
    }
    {
        Rng ens_rng(Rng::mix(opt.seed ^ 0x0F));
        std::vector<StateVector> ensemble;
        for (int size : {1, 6, 24, 96}) {
            while (static_cast<int>(ensemble.size()) < size) {
                std::vector<cdouble> amps(2);
                amps[0] = {ens_rng.normal(), ens_rng.normal()};
                amps[1] = {ens_rng.normal(), ens_rng.normal()};
                ensemble.push_back(StateVector(1, std::move(amps)).normalized());
            }
            Rng dir_rng(Rng::mix(opt.seed ^ 0x0E));  // same directions for every size
            rows.push_back(
                {"random", size, finite_strategy_worst_error(ensemble, samples, dir_rng)});
        }
    }

    bool ok = std::abs(rows[0].worst_error - 0.5) < 1e-12;
    double prev = 1.0;
    for (const auto& r : rows) {
        ok = ok && r.worst_error > 0.0;
        if (r.label == "random") {
            ok = ok && r.worst_error <= prev + 1e-15;
            prev = r.worst_error;
        }
    }

    std::string text;
    if (opt.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows) {
            jrows.push_back(
                json{{"label", r.label}, {"size", r.size}, {"worst_error", r.worst_error}});
        }
        text = json{{"seed", opt.seed}, {"direction_samples", samples}, {"rows", jrows}}.dump(2) +
               "\n";
    } else {
        text = "label,size,worst_error\n";
        for (const auto& r : rows) {
            text += r.label + "," + std::to_string(r.size) + "," + fmt_double(r.worst_error) +
                    "\n";
        }
    }
    if (write_output(text, opt.out) != 0) return 1;

    std::fprintf(stderr,
                 "every finite ensemble errs somewhere; random-chain errors non-increasing: %s\n",
                 ok ? "yes" : "NO");
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fieldcmp: entanglement-assisted comparison of two remote field orientations.\n"
        "Identical subcommand, flags and --seed give byte-identical output."};
    app.require_subcommand(1);

    CommonOpts demo_opt;
    std::string demo_promise = "parallel";
    CLI::App* demo = app.add_subcommand("demo", "One seeded end-to-end LOCC trial");
    add_common(demo, demo_opt);
    demo->add_option("--promise", demo_promise, "Eve's promise")
        ->check(CLI::IsMember({"parallel", "orthogonal"}))
        ->capture_default_str();

    CommonOpts verify_opt;
    std::string inject_fault;
    CLI::App* verify = app.add_subcommand("verify", "Run the full invariant suite");
    add_common(verify, verify_opt);
    verify->add_option("--inject-fault", inject_fault,
                       "Deliberately break the harness to prove it catches faults")
        ->check(CLI::IsMember({"hadamard-sign"}));

    CommonOpts sweep_opt;
    sweep_opt.trials = 200;
    sweep_opt.tol = 1e-9;
    std::vector<double> sweep_alphas;
    CLI::App* sweep = app.add_subcommand(
        "sweep-angle", "Singlet survival vs promised angle (CSV: alpha,mean_survival,max_dev)");
    add_common(sweep, sweep_opt);
    sweep->add_option("--alphas", sweep_alphas,
                      "Angles in radians (default: 13 points over [0, pi])");

    CommonOpts uniq_opt;
    int uniq_states = 64;
    int uniq_samples = 256;
    CLI::App* uniq = app.add_subcommand(
        "uniqueness",
        "Scan maximally entangled states for discrimination-condition violations\n"
        "(CSV: c2sq,worst_violation,nx,ny,nz,npx,npy,npz,phi_perp,samples; the argmax\n"
        "sample's parallel axis n, test axis n', and orthogonal-circle phase)");
    add_common(uniq, uniq_opt);
    uniq->add_option("--states", uniq_states, "Random maximally entangled states to scan")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    uniq->add_option("--samples", uniq_samples, "Random samples on top of the stratified grid")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    CommonOpts anti_opt;
    std::vector<double> anti_thetas;
    CLI::App* anti = app.add_subcommand(
        "antiparallel",
        "Anti-parallel evolution scan (CSV: theta,singlet_fidelity,triplet_fidelity)");
    add_common(anti, anti_opt);
    anti->add_option("--thetas", anti_thetas,
                     "Waiting times in radians (default: 13 points over [0, pi])");

    CommonOpts finite_opt;
    int finite_samples = 2000;
    CLI::App* finite = app.add_subcommand(
        "finite-strategy",
        "Worst-case error of finite disentangled ensembles (CSV: label,size,worst_error)");
    add_common(finite, finite_opt);
    finite->add_option("--samples", finite_samples, "Random direction samples beyond the grid")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (demo->parsed()) return cmd_demo(demo_opt, demo_promise);
        if (verify->parsed()) return cmd_verify(verify_opt, inject_fault);
        if (sweep->parsed()) return cmd_sweep_angle(sweep_opt, sweep_alphas);
        if (uniq->parsed()) return cmd_uniqueness(uniq_opt, uniq_states, uniq_samples);
        if (anti->parsed()) return cmd_antiparallel(anti_opt, anti_thetas);
        if (finite->parsed()) return cmd_finite_strategy(finite_opt, finite_samples);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
