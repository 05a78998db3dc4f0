// Command-line front end: generate instances, run the forward/inverse maps,
// and execute verification suites over JSON files.
//
// Exit codes: 0 success, 2 unsatisfiable spec input, 3 outside the section
// domain, 4 verification failure, 5 I/O or parse error.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "orbitred/json_io.hpp"

using namespace orbitred;

namespace {

struct RunConfig {
    std::string mode = "exact";
    int m = 2;
    int n_orbits = 4;
    uint64_t seed = 0;
    int trials = 25;
    double tol = kDefaultTol;
    std::string specs_path;
    std::string discrete_path;
    std::string input_path;
    std::string out_path;
};

constexpr int kExitBadSpec = 2;
constexpr int kExitOutsideDomain = 3;
constexpr int kExitVerifyFail = 4;
constexpr int kExitIo = 5;

// Default spec family: distinct small-integer eigenvalues, with the last
// orbit's spectrum balancing the total trace to zero.
template <class S>
std::vector<OrbitSpec<S>> default_specs(int m, int n) {
    std::vector<OrbitSpec<S>> specs;
    S total(0L);
    for (int i = 0; i + 1 < n; ++i) {
        OrbitSpec<S> sp;
        sp.m = m;
        for (int k = 0; k < m; ++k) sp.eigs.emplace_back(S(static_cast<long>(i * m + k + 1)), 1);
        total += sp.trace_value();
        specs.push_back(std::move(sp));
    }
    OrbitSpec<S> last;
    last.m = m;
    S acc(0L);
    for (int k = 0; k + 1 < m; ++k) {
        last.eigs.emplace_back(S(static_cast<long>(-(100 + k))), 1);
        acc += S(static_cast<long>(-(100 + k)));
    }
    last.eigs.emplace_back(-total - acc, 1);
    specs.push_back(std::move(last));
    return specs;
}

template <class S>
std::vector<OrbitSpec<S>> load_specs(const RunConfig& cfg) {
    if (cfg.specs_path.empty()) return default_specs<S>(cfg.m, cfg.n_orbits);
    json j = load_json_file(cfg.specs_path);
    std::vector<OrbitSpec<S>> specs;
    for (const auto& sp : j.at("specs")) specs.push_back(spec_from_json<S>(sp));
    return specs;
}

template <class S>
DiscreteData<S> load_discrete(const RunConfig& cfg, const std::vector<OrbitSpec<S>>& specs) {
    if (cfg.discrete_path.empty()) return default_discrete(specs);
    return discrete_from_json<S>(load_json_file(cfg.discrete_path));
}

void emit(const RunConfig& cfg, const json& j) {
    if (cfg.out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(cfg.out_path, j);
}

template <class S>
int cmd_sample(const RunConfig& cfg) {
    auto specs = load_specs<S>(cfg);
    for (size_t i = 0; i < specs.size(); ++i) {
        if (!specs[i].valid(cfg.tol)) {
            std::cerr << "spec " << i << " is invalid: multiplicities must sum to m and eigenvalues must be"
                      << " pairwise distinct (one Jordan block per eigenvalue; eigenspaces are"
                      << " one-dimensional)\n";
            return kExitBadSpec;
        }
    }
    auto data = load_discrete<S>(cfg, specs);
    Rng rng(cfg.seed);
    FuchsTuple<S> tuple;
    try {
        tuple = sample_tuple(specs, data, rng, cfg.tol);
    } catch (const Error& e) {
        std::cerr << "sampling failed: " << e.what() << "\n";
        return kExitBadSpec;
    }
    emit(cfg, tuple_to_json(tuple));
    return 0;
}

template <class S>
int cmd_check(const RunConfig& cfg) {
    FuchsTuple<S> tuple = tuple_from_json<S>(load_json_file(cfg.input_path));
    MembershipReport rep = tuple.validate(cfg.tol);
    json out{{"ok", rep.ok}, {"report", rep.summary()}};
    emit(cfg, out);
    return rep.ok ? 0 : kExitVerifyFail;
}

template <class S>
int cmd_reduce(const RunConfig& cfg) {
    FuchsTuple<S> tuple = tuple_from_json<S>(load_json_file(cfg.input_path));
    auto data = load_discrete<S>(cfg, tuple.specs);
    ReducedPoint<S> p = reduce(tuple, data, cfg.tol);
    emit(cfg, reduced_to_json(p));
    return 0;
}

template <class S>
int cmd_lift(const RunConfig& cfg) {
    ReducedPoint<S> p = reduced_from_json<S>(load_json_file(cfg.input_path));
    LiftResult<S> r = lift(p, cfg.tol);
    if (!r.ok) {
        std::cerr << "lift landed off-orbit: " << r.report.summary() << "\n";
        return kExitOutsideDomain;
    }
    emit(cfg, tuple_to_json(r.tuple));
    return 0;
}

template <class S>
int cmd_roundtrip(const RunConfig& cfg) {
    FuchsTuple<S> tuple = tuple_from_json<S>(load_json_file(cfg.input_path));
    auto data = load_discrete<S>(cfg, tuple.specs);
    FuchsTuple<S> section = canonical_section(tuple, data, cfg.tol);
    ReducedPoint<S> p = reduce(tuple, data, cfg.tol);
    FuchsTuple<S> lifted = lift_strict(p, cfg.tol);
    bool forward = lifted.matrices == section.matrices;
    bool backward = reduce(lifted, data, cfg.tol) == p;
    json out{{"lift_reduce_equals_section", forward},
             {"reduce_lift_identity", backward},
             {"match", forward && backward ? "exact match" : "MISMATCH"}};
    emit(cfg, out);
    return (forward && backward) ? 0 : kExitVerifyFail;
}

template <class S>
int cmd_verify(const RunConfig& cfg) {
    FuchsTuple<S> tuple = tuple_from_json<S>(load_json_file(cfg.input_path));
    auto data = load_discrete<S>(cfg, tuple.specs);
    Rng rng(cfg.seed);
    PullbackReport rep = verify_pullback(tuple, data, cfg.trials, rng, cfg.tol);
    emit(cfg, report_to_json(rep));
    return rep.ok() ? 0 : kExitVerifyFail;
}

template <int (*ExactFn)(const RunConfig&), int (*FloatFn)(const RunConfig&)>
int dispatch(const RunConfig& cfg) {
    if (cfg.mode == "exact") return ExactFn(cfg);
    if (cfg.mode == "float") return FloatFn(cfg);
    std::cerr << "unknown mode '" << cfg.mode << "' (use exact|float)\n";
    return kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"birational symplectic reduction of Fuchs residue tuples onto products of coadjoint orbits"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub, bool takes_input) {
        sub->add_option("--mode", cfg.mode, "scalar mode: exact|float")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "floating-mode zero tolerance")->capture_default_str();
        sub->add_option("--out", cfg.out_path, "output file (stdout when omitted)");
        sub->add_option("--discrete", cfg.discrete_path, "discrete-data JSON file");
        if (takes_input) sub->add_option("input", cfg.input_path, "input JSON file")->required();
    };

    CLI::App* sample = app.add_subcommand("sample", "generate a random zero-momentum tuple");
    add_common(sample, false);
    sample->add_option("--m", cfg.m, "matrix dimension")->check(CLI::Range(2, 64))->capture_default_str();
    sample->add_option("--n-orbits", cfg.n_orbits, "number of orbits (>= 3)")->check(CLI::Range(3, 1024))->capture_default_str();
    sample->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sample->add_option("--specs", cfg.specs_path, "orbit-spec JSON file ({\"specs\": [...]})");

    CLI::App* check = app.add_subcommand("check", "membership and momentum report for a tuple");
    add_common(check, true);

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "forward map: tuple -> reduced point");
    add_common(reduce_cmd, true);

    CLI::App* lift_cmd = app.add_subcommand("lift", "inverse map: reduced point -> tuple");
    add_common(lift_cmd, true);

    CLI::App* roundtrip = app.add_subcommand("roundtrip", "assert lift(reduce(x)) = section(x) and reduce(lift(p)) = p");
    add_common(roundtrip, true);

    CLI::App* verify = app.add_subcommand("verify", "symplectic pullback identities over random tangents");
    add_common(verify, true);
    verify->add_option("--trials", cfg.trials, "number of random tangent pairs")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--seed", cfg.seed, "random seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return dispatch<cmd_sample<GaussianRational>, cmd_sample<FloatingComplex>>(cfg);
        if (check->parsed()) return dispatch<cmd_check<GaussianRational>, cmd_check<FloatingComplex>>(cfg);
        if (reduce_cmd->parsed()) return dispatch<cmd_reduce<GaussianRational>, cmd_reduce<FloatingComplex>>(cfg);
        if (lift_cmd->parsed()) return dispatch<cmd_lift<GaussianRational>, cmd_lift<FloatingComplex>>(cfg);
        if (roundtrip->parsed()) return dispatch<cmd_roundtrip<GaussianRational>, cmd_roundtrip<FloatingComplex>>(cfg);
        if (verify->parsed()) return dispatch<cmd_verify<GaussianRational>, cmd_verify<FloatingComplex>>(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const GaussObstruction& e) {
        std::cerr << "outside domain (Gauss decomposition obstructed): " << e.what() << "\n";
        return kExitOutsideDomain;
    } catch (const ZeroEigenvectorComponent& e) {
        std::cerr << "outside domain (condition (3) eigenvector): " << e.what() << "\n";
        return kExitOutsideDomain;
    } catch (const LiftedOffOrbit& e) {
        std::cerr << "outside domain (lift off-orbit): " << e.what() << "\n";
        return kExitOutsideDomain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return 0;
}
