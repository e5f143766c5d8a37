// Copyright 2026 The graded-qec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Exit codes: 0 success, 1 violation found, 2 input
// error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gqec/gqec.hpp"
#include "json_io.hpp"

namespace gqec::cli {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

/// Settings shared by every subcommand.
struct JobConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string seed_text;
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> tol_overrides;
    Tolerances tol;
    std::string out_dir;
    bool json_stdout = false;
    std::string grid_text;
    std::vector<double> grid = log_grid(1e-3, 1.0, 16);
    std::size_t env_draws = 24;
    std::size_t distance = 2;
    std::string e_text;
    std::size_t max_degree = 0;
    std::size_t max_candidates = 1000000;
    std::size_t max_subset_size = 0;
    std::size_t r_target = 0;
};

inline std::uint64_t parse_seed(const std::string &text) {
    try {
        std::size_t used = 0;
        auto v = std::stoull(text, &used, 0);
        if (used != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception &) {
        throw io::InputError("invalid seed \"" + text + "\"");
    }
}

/// --seed, then GRADED_QEC_SEED, then 0x5EED.
inline std::uint64_t resolve_seed(const std::string &flag) {
    if (!flag.empty()) {
        return parse_seed(flag);
    }
    if (const char *env = std::getenv("GRADED_QEC_SEED"); env != nullptr && *env != '\0') {
        return parse_seed(env);
    }
    return kDefaultSeed;
}

inline Tolerances apply_overrides(const std::vector<std::string> &overrides) {
    Tolerances tol;
    for (const auto &o : overrides) {
        auto eq = o.find('=');
        if (eq == std::string::npos) {
            throw io::InputError("--tol expects name=value, got \"" + o + "\"");
        }
        std::string name = o.substr(0, eq);
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(o.substr(eq + 1), &used);
            if (used != o.size() - eq - 1) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw io::InputError("--tol " + name + ": invalid value");
        }
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw io::InputError("--tol " + name + ": must be positive and finite");
        }
        bool found = false;
        for (const auto &[field_name, field] : kToleranceFields) {
            if (field_name == name) {
                tol.*field = value;
                found = true;
            }
        }
        if (!found) {
            throw io::InputError("--tol: unknown tolerance \"" + name + "\"");
        }
    }
    return tol;
}

inline std::vector<double> parse_grid(const std::string &text) {
    double lo = 0.0;
    double hi = 0.0;
    unsigned long count = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lu%c", &lo, &hi, &count, &tail) != 3) {
        throw io::InputError("--grid expects min,max,count");
    }
    try {
        return log_grid(lo, hi, count);
    } catch (const std::invalid_argument &e) {
        throw io::InputError(std::string("--grid: ") + e.what());
    }
}

inline std::string utc_timestamp() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

/// Report envelope; "generated_at" is the only field that varies between
/// identical runs.
inline io::json envelope(const JobConfig &cfg, io::json result) {
    return io::json{
        {"command", cfg.command},
        {"inputs", cfg.inputs},
        {"seed", cfg.seed},
        {"tolerances", io::tolerances_to_json(cfg.tol)},
        {"result", std::move(result)},
        {"generated_at", utc_timestamp()}};
}

inline std::string file_stem(const std::string &command) {
    std::string s = command;
    for (auto &c : s) {
        if (c == ' ') {
            c = '-';
        }
    }
    return s;
}

inline void emit(const JobConfig &cfg, const io::json &report, const std::string &summary, std::ostream &out, const std::string &csv = {}) {
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        auto base = std::filesystem::path(cfg.out_dir) / file_stem(cfg.command);
        std::ofstream(base.string() + ".json") << report.dump(2) << "\n";
        if (!csv.empty()) {
            std::ofstream(base.string() + ".csv") << csv;
        }
    }
    if (cfg.json_stdout) {
        out << report.dump(2) << "\n";
    } else {
        out << summary;
    }
}

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline OperatorSpace degree_space(const OperatorSpace &j1, std::size_t d, const Tolerances &tol) {
    if (d == 0) {
        return scalars(j1.ambient_dim());
    }
    return grade(j1, d, tol).degree(d);
}

// ---------------------------------------------------------------------------

inline int cmd_algebra(const JobConfig &cfg, std::ostream &out) {
    auto model = io::model_from_json(io::read_json_file(cfg.inputs.at(0)), cfg.tol);
    OperatorSpace j1 = io::model_j1(model, cfg.tol);
    std::size_t n = j1.ambient_dim();
    std::size_t d_max = cfg.max_degree == 0 ? n * n : cfg.max_degree;
    GradedAlgebra g = grade(j1, d_max, cfg.tol);
    io::json dims = io::json::array({1});
    std::ostringstream s;
    s << "degree  dim\n     0    1\n";
    for (std::size_t d = 1; d <= g.max_degree(); ++d) {
        dims.push_back(g.grades[d - 1].rank());
        s << std::setw(6) << d << std::setw(5) << g.grades[d - 1].rank() << "\n";
    }
    auto lambda = io::model_lambda(model, cfg.tol);
    io::json lam{{"hamiltonian", nullptr}, {"markov", nullptr}, {"discrete", nullptr}};
    const char *key = model.index() == 0 ? "hamiltonian" : model.index() == 1 ? "markov" : "discrete";
    if (lambda) {
        lam[key] = *lambda;
        s << "lambda (" << key << "): " << fmt(*lambda) << "\n";
    }
    s << (g.saturated ? "saturated at degree " : "not saturated; grades computed: ") << g.saturation_degree << "\n";
    io::json result{
        {"model", io::model_kind(model)},
        {"system_dim", n},
        {"grade_dims", dims},
        {"saturated", g.saturated},
        {"saturation_degree", g.saturation_degree},
        {"lambda", lam}};
    emit(cfg, envelope(cfg, result), s.str(), out);
    return kExitOk;
}

inline int cmd_decompose(const JobConfig &cfg, std::ostream &out) {
    auto model = io::model_from_json(io::read_json_file(cfg.inputs.at(0)), cfg.tol);
    OperatorSpace j1 = io::model_j1(model, cfg.tol);
    auto full = full_algebra(j1, cfg.tol);
    const auto &a = full.algebra;
    AlgebraDecomposition dec = decompose(a, cfg.seed, cfg.tol);
    std::size_t comm = commutant(a, cfg.tol).rank();
    std::size_t cen = center(a, cfg.tol).rank();
    std::size_t sum_c = 0;
    std::size_t sum_z = 0;
    std::ostringstream s;
    s << "algebra dim " << a.rank() << ", commutant dim " << comm << ", center dim " << cen << "\n";
    s << "block  d_C  d_Z\n";
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        const auto &b = dec.blocks[i];
        sum_c += b.d_c * b.d_c;
        sum_z += b.d_z * b.d_z;
        s << std::setw(5) << i << std::setw(5) << b.d_c << std::setw(5) << b.d_z << "\n";
    }
    io::json subs = io::json::array();
    for (const auto &ns : noiseless_subsystems(dec)) {
        subs.push_back({{"block", ns.block}, {"d_c", ns.d_c}, {"d_z", ns.d_z}, {"is_subspace", ns.is_subspace}, {"code", io::code_to_json(Code{ns.logical_isometry, std::nullopt})}});
        s << "noiseless " << (ns.is_subspace ? "subspace" : "subsystem") << " in block " << ns.block << " (dim " << ns.d_z << ")\n";
    }
    bool ok = sum_c == a.rank() && sum_z == comm;
    if (!ok) {
        s << "VIOLATION: dimension identities fail\n";
    }
    io::json result{
        {"algebra_dim", a.rank()},
        {"saturation_degree", full.saturation_degree},
        {"commutant_dim", comm},
        {"center_dim", cen},
        {"dimension_identities_hold", ok},
        {"decomposition", io::decomposition_to_json(dec)},
        {"noiseless_subsystems", subs}};
    emit(cfg, envelope(cfg, result), s.str(), out);
    return ok ? kExitOk : kExitViolation;
}

inline int cmd_code_check(const JobConfig &cfg, std::ostream &out) {
    Code code = io::code_from_json(io::read_json_file(cfg.inputs.at(0)), cfg.tol);
    auto model = io::model_from_json(io::read_json_file(cfg.inputs.at(1)), cfg.tol);
    OperatorSpace j1 = io::model_j1(model, cfg.tol);
    if (j1.ambient_dim() != code.system_dim()) {
        throw io::InputError("code check: code and noise model differ in system dimension");
    }
    GradedAlgebra g = grade(j1, 1, cfg.tol);
    CodeReport rep = certify(code, g, cfg.tol);
    Distance cd = rep.c_distance ? *rep.c_distance : min_c_distance(code, g, cfg.tol);
    io::json kl = io::json::array();
    std::size_t last = rep.correctable_e.infinite ? g.max_degree() : std::min(rep.correctable_e.value + 1, g.max_degree());
    for (std::size_t e = 0; e <= last; ++e) {
        bool ok = e == 0 || kl_correctable(code, g.degree(e), cfg.tol);
        kl.push_back({{"e", e}, {"correctable", ok}});
    }
    std::ostringstream s;
    s << "N " << code.system_dim() << ", K " << code.logical_dim() << "\n";
    s << "distance " << rep.distance.str() << ", c-distance " << cd.str() << ", correctable e " << rep.correctable_e.str() << "\n";
    // Distance 2e+1 implies correctability of J_e.
    bool consistent = true;
    if (!rep.distance.infinite && rep.distance.value >= 1) {
        std::size_t implied = (rep.distance.value - 1) / 2;
        consistent = rep.correctable_e.at_least(implied);
    } else if (rep.distance.infinite) {
        consistent = rep.correctable_e.infinite;
    }
    if (!consistent) {
        s << "VIOLATION: distance does not imply the expected correctability\n";
    }
    io::json result{
        {"system_dim", code.system_dim()},
        {"logical_dim", code.logical_dim()},
        {"distance", io::distance_to_json(rep.distance)},
        {"c_distance", io::distance_to_json(cd)},
        {"correctable_e", io::distance_to_json(rep.correctable_e)},
        {"kl", kl},
        {"residuals", {{"isometry", rep.isometry_defect}, {"detection", rep.worst_detection_residual}}},
        {"distance_implies_correctability", consistent}};
    emit(cfg, envelope(cfg, result), s.str(), out);
    return consistent ? kExitOk : kExitViolation;
}

inline int cmd_search_c(const JobConfig &cfg, std::ostream &out) {
    auto model = io::model_from_json(io::read_json_file(cfg.inputs.at(0)), cfg.tol);
    OperatorSpace j1 = io::model_j1(model, cfg.tol);
    if (cfg.distance < 1) {
        throw io::InputError("--distance must be at least 1");
    }
    OperatorSpace e = degree_space(j1, cfg.distance - 1, cfg.tol);
    std::size_t n = e.ambient_dim();
    Code code = greedy_c_code(e, n, cfg.seed, cfg.tol);
    double worst = 0.0;
    for (const auto &op : e.basis()) {
        worst = std::max(worst, c_detects(code, op, cfg.tol).residual);
    }
    std::size_t ceil_nd = (n + e.rank() - 1) / e.rank();
    bool ok = code.logical_dim() >= ceil_nd && worst <= cfg.tol.certificate;
    std::ostringstream s;
    s << "N " << n << ", D " << e.rank() << ", ceil(N/D) " << ceil_nd << ", achieved " << code.logical_dim() << "\n";
    s << "worst off-diagonal <c_i|E|c_j>: " << fmt(worst) << "\n";
    if (!ok) {
        s << "VIOLATION: greedy code below the guaranteed dimension or off-diagonal check failed\n";
    }
    io::json result{
        {"distance", cfg.distance},
        {"bound", {{"N", n}, {"D", e.rank()}, {"ceil_N_over_D", ceil_nd}, {"achieved_dim", code.logical_dim()}}},
        {"worst_offdiagonal", worst},
        {"passed", ok},
        {"code", io::code_to_json(code)}};
    emit(cfg, envelope(cfg, result), s.str(), out);
    return ok ? kExitOk : kExitViolation;
}

inline int cmd_search_q(const JobConfig &cfg, std::ostream &out) {
    auto model = io::model_from_json(io::read_json_file(cfg.inputs.at(0)), cfg.tol);
    OperatorSpace j1 = io::model_j1(model, cfg.tol);
    if (cfg.distance < 1) {
        throw io::InputError("--distance must be at least 1");
    }
    OperatorSpace e = degree_space(j1, cfg.distance - 1, cfg.tol);
    PartitionOptions opts;
    opts.max_candidates = cfg.max_candidates;
    opts.max_subset_size = cfg.max_subset_size;
    std::optional<std::size_t> r;
    if (cfg.r_target > 0) {
        r = cfg.r_target;
    }
    auto rep = search_quantum_code(e, e.ambient_dim(), cfg.seed, opts, r, cfg.tol);
    std::ostringstream s;
    s << "N " << rep.n << ", D " << rep.d << ", ceil(N/D) " << rep.ceil_n_over_d << ", Tverberg r " << rep.tverberg_r
      << ", c-code dim " << rep.c_code_dim << ", target r " << rep.r_target << "\n";
    s << "partition " << to_string(rep.partition.status) << " after " << rep.partition.candidates_tested
      << " candidates; achieved dim " << rep.achieved_dim() << "\n";
    // Tverberg's theorem makes the target feasible, so infeasibility is a
    // violation; exhausting the cap is not.
    bool ok = rep.partition.status != PartitionStatus::infeasible;
    if (!ok) {
        s << "VIOLATION: no partition at the Tverberg count\n";
    }
    io::json result{
        {"distance", cfg.distance},
        {"bound",
         {{"N", rep.n},
          {"D", rep.d},
          {"ceil_N_over_D", rep.ceil_n_over_d},
          {"tverberg_r", rep.tverberg_r},
          {"achieved_dim", rep.achieved_dim()}}},
        {"c_code_dim", rep.c_code_dim},
        {"r_target", rep.r_target},
        {"status", to_string(rep.partition.status)},
        {"candidates_tested", rep.partition.candidates_tested},
        {"certificate", rep.partition.certificate ? io::certificate_to_json(*rep.partition.certificate) : io::json(nullptr)},
        {"code_residual", rep.residual},
        {"code", rep.code ? io::code_to_json(*rep.code) : io::json(nullptr)},
        {"passed", ok}};
    emit(cfg, envelope(cfg, result), s.str(), out);
    return ok ? kExitOk : kExitViolation;
}

/// e from --e, or the largest correctable e of the code under the model.
inline Distance resolve_e(const JobConfig &cfg, const Code &code, const OperatorSpace &j1) {
    if (!cfg.e_text.empty()) {
        if (cfg.e_text == "inf") {
            return Distance::unbounded();
        }
        try {
            std::size_t used = 0;
            auto v = std::stoul(cfg.e_text, &used);
            if (used != cfg.e_text.size()) {
                throw std::invalid_argument("trailing");
            }
            return Distance::finite(v);
        } catch (const std::exception &) {
            throw io::InputError("--e expects a non-negative integer or inf");
        }
    }
    GradedAlgebra g = grade(j1, 1, cfg.tol);
    return certify(code, g, cfg.tol).correctable_e;
}

/// Recovery for J_e. If the code does not correct J_e (an overclaimed --e),
/// the recovery for the certified order is used instead and the bound check
/// runs against the claimed e.
inline QuantumOperation recovery_for(
    const Code &code, const OperatorSpace &j1, const Distance &e, const Tolerances &tol, std::ostream &err) {
    OperatorSpace je = e.infinite ? full_algebra(j1, tol).algebra : degree_space(j1, e.value, tol);
    if (!kl_correctable(code, je, tol)) {
        GradedAlgebra g = grade(j1, 1, tol);
        Distance certified = certify(code, g, tol).correctable_e;
        err << "[simulate] the code does not correct J_" << e.str() << "; using the recovery for e = "
            << certified.str() << "\n";
        je = certified.infinite ? full_algebra(j1, tol).algebra : degree_space(j1, certified.value, tol);
    }
    try {
        return build_recovery(code, je, tol);
    } catch (const std::invalid_argument &ex) {
        throw io::InputError(std::string("simulate: ") + ex.what());
    }
}

inline int cmd_simulate(const JobConfig &cfg, const std::string &kind, std::ostream &out, std::ostream &err) {
    auto model = io::model_from_json(io::read_json_file(cfg.inputs.at(0)), cfg.tol);
    Code code = io::code_from_json(io::read_json_file(cfg.inputs.at(1)), cfg.tol);
    std::string expected = kind == "hamiltonian" ? "interaction" : kind;
    if (io::model_kind(model) != expected) {
        throw io::InputError("simulate " + kind + ": the noise model must have kind \"" + expected + "\"");
    }
    OperatorSpace j1 = io::model_j1(model, cfg.tol);
    if (j1.ambient_dim() != code.system_dim()) {
        throw io::InputError("simulate: code and noise model differ in system dimension");
    }
    Distance e = resolve_e(cfg, code, j1);
    err << "[simulate " << kind << "] e = " << e.str() << "\n";
    QuantumOperation rec = recovery_for(code, j1, e, cfg.tol, err);
    SimulationRun run;
    if (kind == "hamiltonian") {
        AmplitudeCheckOptions opts;
        opts.lambda_t_grid = cfg.grid;
        opts.env_draws = cfg.env_draws;
        opts.seed = cfg.seed;
        opts.slack = cfg.tol.bound_slack;
        run = check_amplitude_bound(std::get<InteractionSpec>(model), code, rec, e, opts, cfg.tol);
    } else if (kind == "lindblad") {
        MarkovCheckOptions opts;
        opts.lambda_t_grid = cfg.grid;
        opts.slack = cfg.tol.bound_slack;
        run = check_markov_bound(std::get<MarkovSpec>(model), code, rec, e, opts, cfg.tol);
    } else {
        run = check_discrete_bound(std::get<DiscreteSpec>(model), code, rec, e, cfg.tol.bound_slack, cfg.tol);
    }
    err << "[simulate " << kind << "] " << run.points.size() << " points evaluated\n";
    std::ostringstream csv;
    write_csv(csv, run);
    std::ostringstream s;
    s << "model " << run.model << ", lambda " << fmt(run.lambda) << ", e " << e.str() << ", metric " << run.metric << "\n";
    s << "bound " << (run.bound_ok ? "holds" : "VIOLATED") << " at " << run.points.size() << " points; worst ratio " << fmt(run.worst_ratio) << "\n";
    if (auto ms = run.min_slope()) {
        s << "lowest-decade slope " << fmt(*ms) << (run.slope_checked ? (run.slope_ok ? " (ok)" : " (BELOW e+1-0.1)") : "") << "\n";
    }
    if (run.counterexample) {
        const auto &c = *run.counterexample;
        s << "counterexample: seed " << c.seed << ", t " << fmt(c.t) << ", measured " << fmt(c.measured()) << " > bound " << fmt(c.bound) << "\n";
    }
    emit(cfg, envelope(cfg, io::run_to_json(run)), s.str(), out, csv.str());
    return run.passed() ? kExitOk : kExitViolation;
}

inline int cmd_example(const JobConfig &cfg, std::ostream &out, std::ostream &err) {
    const auto &tol = cfg.tol;
    auto ex = three_qubit::run(cfg.seed, 20, tol);
    io::json blocks = io::json::array();
    bool blocks_ok = ex.decomposition.blocks.size() == 2;
    for (std::size_t i = 0; i < ex.decomposition.blocks.size(); ++i) {
        const auto &b = ex.decomposition.blocks[i];
        blocks.push_back({{"d_c", b.d_c}, {"d_z", b.d_z}});
    }
    if (blocks_ok) {
        const auto &b = ex.decomposition.blocks;
        blocks_ok = b[0].d_c == 4 && b[0].d_z == 1 && b[1].d_c == 2 && b[1].d_z == 2;
    }
    err << "[example] decomposition done\n";
    OperatorSpace a = full_algebra(three_qubit::interaction(tol), tol).algebra;
    QuantumOperation rec = build_recovery(ex.code, a, tol);
    AmplitudeCheckOptions hopts;
    hopts.lambda_t_grid = cfg.grid;
    hopts.env_draws = cfg.env_draws;
    hopts.seed = cfg.seed;
    hopts.slack = tol.bound_slack;
    auto hrun = check_amplitude_bound(three_qubit::interaction_spec(), ex.code, rec, Distance::unbounded(), hopts, tol);
    MarkovCheckOptions mopts;
    mopts.lambda_t_grid = cfg.grid;
    mopts.slack = tol.bound_slack;
    auto mrun = check_markov_bound(three_qubit::lindblad_spec(1.0), ex.code, rec, Distance::unbounded(), mopts, tol);
    err << "[example] simulations done\n";
    double max_a = 0.0;
    for (const auto &p : hrun.points) {
        max_a = std::max(max_a, p.a);
    }
    double max_p = 0.0;
    for (const auto &p : mrun.points) {
        max_p = std::max(max_p, p.p);
    }
    bool comm_ok = ex.commutant_dim == 5;
    bool members_ok = ex.s1_residual <= tol.commutation && ex.s2_residual <= tol.commutation;
    bool immune_ok = ex.worst_subsystem_change <= tol.subsystem_state;
    bool ok = blocks_ok && comm_ok && members_ok && immune_ok && hrun.passed() && mrun.passed();
    std::ostringstream s;
    s << "three-qubit collective noise\n";
    s << "blocks (d_C, d_Z):";
    for (const auto &b : ex.decomposition.blocks) {
        s << " (" << b.d_c << "," << b.d_z << ")";
    }
    s << "\nalgebra dim " << ex.algebra_dim << ", commutant dim " << ex.commutant_dim << ", center dim " << ex.center_dim << "\n";
    s << "s1 residual " << fmt(ex.s1_residual) << ", s2 residual " << fmt(ex.s2_residual) << "\n";
    s << "Z-factor change over " << ex.trials << " collective unitaries: " << fmt(ex.worst_subsystem_change) << "\n";
    s << "hamiltonian run max a " << fmt(max_a) << ", lindblad run max p " << fmt(max_p) << "\n";
    s << (ok ? "reproduced\n" : "VIOLATION: example not reproduced\n");
    io::json result{
        {"blocks", blocks},
        {"algebra_dim", ex.algebra_dim},
        {"commutant_dim", ex.commutant_dim},
        {"center_dim", ex.center_dim},
        {"s1_residual", ex.s1_residual},
        {"s2_residual", ex.s2_residual},
        {"unitary_trials", ex.trials},
        {"worst_subsystem_change", ex.worst_subsystem_change},
        {"code", io::code_to_json(ex.code)},
        {"hamiltonian_max_a", max_a},
        {"lindblad_max_p", max_p},
        {"checks",
         {{"blocks", blocks_ok},
          {"commutant_dim", comm_ok},
          {"commutant_membership", members_ok},
          {"subsystem_immunity", immune_ok},
          {"hamiltonian_bound", hrun.passed()},
          {"lindblad_bound", mrun.passed()}}},
        {"passed", ok}};
    emit(cfg, envelope(cfg, result), s.str(), out);
    return ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Graded-algebra quantum error correction toolkit", "gqec"};
    app.require_subcommand(1);
    JobConfig cfg;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--seed", cfg.seed_text, "random seed (default: $GRADED_QEC_SEED or 0x5EED)");
        sub->add_option("--tol", cfg.tol_overrides, "tolerance override name=value")->take_all();
        sub->add_option("--out", cfg.out_dir, "directory for JSON/CSV reports");
        sub->add_flag("--json", cfg.json_stdout, "print the JSON report instead of the summary");
    };
    auto grid_opts = [&](CLI::App *sub) {
        sub->add_option("--grid", cfg.grid_text, "lambda*t grid min,max,count (default 1e-3,1,16)");
        sub->add_option("--env-draws", cfg.env_draws, "random environment Hamiltonians (default 24)");
    };

    std::string spec_path;
    std::string code_path;

    auto *alg = app.add_subcommand("algebra", "grading dimensions, saturation and noise strength");
    alg->add_option("model", spec_path, "noise model JSON")->required();
    alg->add_option("--max-degree", cfg.max_degree, "highest degree to compute (default N^2)");
    common(alg);

    auto *dec = app.add_subcommand("decompose", "block structure and noiseless subsystems");
    dec->add_option("model", spec_path, "noise model JSON")->required();
    common(dec);

    auto *code = app.add_subcommand("code", "code certification and searches");
    code->require_subcommand(1);
    auto *check = code->add_subcommand("check", "distance, c-distance and correctability");
    check->add_option("code", code_path, "code JSON")->required();
    check->add_option("model", spec_path, "noise model JSON")->required();
    common(check);
    auto *sc = code->add_subcommand("search-c", "greedy c-code");
    sc->add_option("model", spec_path, "noise model JSON")->required();
    sc->add_option("--distance", cfg.distance, "target distance d (errors in J_{d-1})");
    common(sc);
    auto *sq = code->add_subcommand("search-q", "quantum code from a convex partition");
    sq->add_option("model", spec_path, "noise model JSON")->required();
    sq->add_option("--distance", cfg.distance, "target distance d (errors in J_{d-1})");
    sq->add_option("--cap", cfg.max_candidates, "candidate partitions before giving up (default 1e6)");
    sq->add_option("--max-subset-size", cfg.max_subset_size, "largest subset (0 = unrestricted)");
    sq->add_option("--r", cfg.r_target, "number of subsets (default: Tverberg count of the c-code)");
    common(sq);

    auto *sim = app.add_subcommand("simulate", "error versus the (lambda t)^{e+1}/(e+1)! envelope");
    sim->require_subcommand(1);
    std::vector<CLI::App *> sims;
    for (const char *k : {"hamiltonian", "lindblad", "discrete"}) {
        auto *s = sim->add_subcommand(k, std::string(k) + " noise");
        s->add_option("model", spec_path, "noise model JSON")->required();
        s->add_option("code", code_path, "code JSON")->required();
        s->add_option("--e", cfg.e_text, "correctable order e or inf (default: computed)");
        common(s);
        grid_opts(s);
        sims.push_back(s);
    }

    auto *exg = app.add_subcommand("example", "built-in worked examples");
    exg->require_subcommand(1);
    auto *ex3 = exg->add_subcommand("three-qubit-collective", "three qubits under collective noise");
    common(ex3);
    grid_opts(ex3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code_ = app.exit(e, out, err);
        return code_ == 0 ? kExitOk : kExitInput;
    }

    try {
        cfg.seed = resolve_seed(cfg.seed_text);
        cfg.tol = apply_overrides(cfg.tol_overrides);
        if (!cfg.grid_text.empty()) {
            cfg.grid = parse_grid(cfg.grid_text);
        }
        if (*alg) {
            cfg.command = "algebra";
            cfg.inputs = {spec_path};
            return cmd_algebra(cfg, out);
        }
        if (*dec) {
            cfg.command = "decompose";
            cfg.inputs = {spec_path};
            return cmd_decompose(cfg, out);
        }
        if (*check) {
            cfg.command = "code check";
            cfg.inputs = {code_path, spec_path};
            return cmd_code_check(cfg, out);
        }
        if (*sc) {
            cfg.command = "code search-c";
            cfg.inputs = {spec_path};
            return cmd_search_c(cfg, out);
        }
        if (*sq) {
            cfg.command = "code search-q";
            cfg.inputs = {spec_path};
            return cmd_search_q(cfg, out);
        }
        for (auto *s : sims) {
            if (*s) {
                cfg.command = "simulate " + s->get_name();
                cfg.inputs = {spec_path, code_path};
                return cmd_simulate(cfg, s->get_name(), out, err);
            }
        }
        if (*ex3) {
            cfg.command = "example three-qubit-collective";
            return cmd_example(cfg, out, err);
        }
    } catch (const io::InputError &e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DecompositionError &e) {
        err << "decomposition failed: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::invalid_argument &e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitInput;
}

}  // namespace gqec::cli
