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

// JSON encoding of operators, noise models, codes and reports.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gqec/gqec.hpp"
#include "json.hpp"

namespace gqec::io {

using json = nlohmann::ordered_json;

/// Malformed or inconsistent input; the CLI maps it to exit code 2.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

inline double number(const json &j, const std::string &what) {
    if (!j.is_number()) {
        throw InputError(what + ": expected a number");
    }
    return j.get<double>();
}

/// A complex number: a real number or [re, im].
inline Complex complex_from_json(const json &j, const std::string &what) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {number(j[0], what), number(j[1], what)};
    }
    throw InputError(what + ": expected a number or [re, im]");
}

inline json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

inline Eigen::MatrixXd real_matrix(const json &j, std::size_t dim, const std::string &what) {
    if (!j.is_array() || j.size() != dim) {
        throw InputError(what + ": expected " + std::to_string(dim) + " rows");
    }
    auto d = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != dim) {
            throw InputError(what + ": row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
        }
        for (Eigen::Index c = 0; c < d; ++c) {
            m(r, c) = number(row[static_cast<std::size_t>(c)], what);
        }
    }
    return m;
}

/// Operators: {"dim", "re", "im"} dense rows, {"pauli", "coeff"}, or
/// {"terms": [...]} summing operators of either form.
inline Operator operator_from_json(const json &j, const std::string &what = "operator") {
    if (!j.is_object()) {
        throw InputError(what + ": expected an object");
    }
    if (j.contains("terms")) {
        const auto &terms = j["terms"];
        if (!terms.is_array() || terms.empty()) {
            throw InputError(what + ": \"terms\" must be a nonempty array");
        }
        Operator sum = operator_from_json(terms[0], what + ".terms[0]");
        for (std::size_t i = 1; i < terms.size(); ++i) {
            Operator t = operator_from_json(terms[i], what + ".terms[" + std::to_string(i) + "]");
            if (t.rows() != sum.rows()) {
                throw InputError(what + ": terms differ in dimension");
            }
            sum += t;
        }
        return sum;
    }
    if (j.contains("pauli")) {
        if (!j["pauli"].is_string()) {
            throw InputError(what + ": \"pauli\" must be a string");
        }
        Complex coeff = j.contains("coeff") ? complex_from_json(j["coeff"], what + ".coeff") : Complex{1.0, 0.0};
        try {
            return pauli_operator(j["pauli"].get<std::string>(), coeff);
        } catch (const std::invalid_argument &e) {
            throw InputError(what + ": " + e.what());
        }
    }
    if (j.contains("dim") && j.contains("re")) {
        if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
            throw InputError(what + ": \"dim\" must be a positive integer");
        }
        auto dim = j["dim"].get<std::size_t>();
        Operator m = real_matrix(j["re"], dim, what + ".re").cast<Complex>();
        if (j.contains("im")) {
            m += kI * real_matrix(j["im"], dim, what + ".im").cast<Complex>();
        }
        if (!m.allFinite()) {
            throw InputError(what + ": entries must be finite");
        }
        return m;
    }
    throw InputError(what + ": expected {dim, re, im}, {pauli, coeff} or {terms}");
}

inline json operator_to_json(const Operator &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rr = json::array();
        json ri = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return json{{"dim", static_cast<std::size_t>(m.rows())}, {"re", re}, {"im", im}};
}

/// Vectors: {"re": [...], "im": [...]}.
inline StateVector vector_from_json(const json &j, const std::string &what) {
    if (!j.is_object() || !j.contains("re") || !j["re"].is_array()) {
        throw InputError(what + ": expected {re, im}");
    }
    std::size_t n = j["re"].size();
    StateVector v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        v(static_cast<Eigen::Index>(i)) = number(j["re"][i], what);
    }
    if (j.contains("im")) {
        if (!j["im"].is_array() || j["im"].size() != n) {
            throw InputError(what + ": \"im\" must match \"re\" in length");
        }
        for (std::size_t i = 0; i < n; ++i) {
            v(static_cast<Eigen::Index>(i)) += kI * number(j["im"][i], what);
        }
    }
    return v;
}

/// Column-major [re, im] pairs.
inline json matrix_pairs(const Eigen::MatrixXcd &m) {
    json out = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            out.push_back(complex_to_json(m(r, c)));
        }
    }
    return out;
}

inline Eigen::MatrixXcd matrix_from_pairs(const json &j, std::size_t rows, std::size_t cols, const std::string &what) {
    if (!j.is_array() || j.size() != rows * cols) {
        throw InputError(what + ": expected " + std::to_string(rows * cols) + " [re, im] pairs");
    }
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[c * rows + r], what);
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Noise models.

/// Named degree-one space on n qubits without dynamics.
struct StandardModel {
    std::size_t qubits = 0;
    InteractionKind kind = InteractionKind::linear;
};

using NoiseModel = std::variant<InteractionSpec, MarkovSpec, DiscreteSpec, StandardModel>;

inline std::vector<Operator> operator_list(const json &j, const std::string &what) {
    if (!j.is_array()) {
        throw InputError(what + ": expected an array of operators");
    }
    std::vector<Operator> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(operator_from_json(j[i], what + "[" + std::to_string(i) + "]"));
    }
    return out;
}

inline std::size_t require_size(const json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0) {
        throw InputError(std::string("\"") + key + "\" must be a positive integer");
    }
    return j[key].get<std::size_t>();
}

/// Wraps library validation failures as input errors.
template <class F>
auto checked(const char *what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

inline NoiseModel model_from_json(const json &j, const Tolerances &tol = {}) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw InputError("noise model: \"kind\" must be one of interaction, lindblad, discrete, standard");
    }
    auto kind = j["kind"].get<std::string>();
    if (kind == "standard") {
        StandardModel m;
        m.qubits = require_size(j, "qubits");
        if (!j.contains("interaction") || !j["interaction"].is_string()) {
            throw InputError("standard model: \"interaction\" must be linear, collective or classical");
        }
        m.kind = checked("standard model", [&] { return parse_interaction_kind(j["interaction"].get<std::string>()); });
        if (m.qubits > 10) {
            throw InputError("standard model: at most 10 qubits");
        }
        return m;
    }
    if (kind == "interaction") {
        InteractionSpec s;
        s.system_dim = require_size(j, "system_dim");
        s.env_dim = require_size(j, "env_dim");
        if (!j.contains("couplings") || !j["couplings"].is_array()) {
            throw InputError("interaction: \"couplings\" must be an array");
        }
        for (std::size_t i = 0; i < j["couplings"].size(); ++i) {
            const auto &c = j["couplings"][i];
            std::string w = "couplings[" + std::to_string(i) + "]";
            if (!c.is_object() || !c.contains("system") || !c.contains("environment")) {
                throw InputError(w + ": expected {system, environment}");
            }
            s.couplings.push_back(
                {operator_from_json(c["system"], w + ".system"), operator_from_json(c["environment"], w + ".environment")});
        }
        if (j.contains("env_hamiltonian")) {
            s.env_hamiltonian = operator_from_json(j["env_hamiltonian"], "env_hamiltonian");
        }
        if (j.contains("env_initial_state")) {
            s.env_initial_state = vector_from_json(j["env_initial_state"], "env_initial_state");
        }
        bool project = j.value("project_traceless", false);
        if (project) {
            s = checked("interaction", [&] { return project_traceless(s).spec; });
        }
        checked("interaction", [&] {
            validate(s, tol);
            return 0;
        });
        return s;
    }
    if (kind == "lindblad") {
        auto ls = j.contains("lindblad_ops") ? operator_list(j["lindblad_ops"], "lindblad_ops") : std::vector<Operator>{};
        MarkovSpec s;
        if (j.contains("drift")) {
            s.lindblad_ops = ls;
            s.drift = operator_from_json(j["drift"], "drift");
        } else {
            std::size_t dim = 0;
            if (j.contains("hamiltonian")) {
                Operator h = operator_from_json(j["hamiltonian"], "hamiltonian");
                dim = static_cast<std::size_t>(h.rows());
                s = complete_drift(ls, h);
            } else {
                if (ls.empty()) {
                    throw InputError("lindblad: give \"drift\", \"hamiltonian\" or at least one Lindblad operator");
                }
                dim = static_cast<std::size_t>(ls.front().rows());
                s = checked("lindblad", [&] { return complete_drift(ls, zero_operator(dim)); });
            }
        }
        checked("lindblad", [&] {
            validate(s, tol);
            return 0;
        });
        return s;
    }
    if (kind == "discrete") {
        if (!j.contains("operations") || !j["operations"].is_array()) {
            throw InputError("discrete: \"operations\" must be an array");
        }
        DiscreteSpec s;
        for (std::size_t i = 0; i < j["operations"].size(); ++i) {
            const auto &o = j["operations"][i];
            std::string w = "operations[" + std::to_string(i) + "]";
            if (!o.is_object() || !o.contains("drift")) {
                throw InputError(w + ": expected {drift, kraus_tail}");
            }
            DiscreteOperation op;
            op.drift = operator_from_json(o["drift"], w + ".drift");
            if (o.contains("kraus_tail")) {
                op.kraus_tail = operator_list(o["kraus_tail"], w + ".kraus_tail");
            }
            s.operations.push_back(std::move(op));
        }
        checked("discrete", [&] {
            validate(s, tol);
            return 0;
        });
        return s;
    }
    throw InputError("noise model: unknown kind \"" + kind + "\"");
}

inline std::size_t model_dim(const NoiseModel &m) {
    return std::visit(
        [](const auto &s) -> std::size_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, InteractionSpec>) {
                return s.system_dim;
            } else if constexpr (std::is_same_v<T, MarkovSpec>) {
                return static_cast<std::size_t>(s.drift.rows());
            } else if constexpr (std::is_same_v<T, DiscreteSpec>) {
                return s.system_dim();
            } else {
                return std::size_t{1} << s.qubits;
            }
        },
        m);
}

inline const char *model_kind(const NoiseModel &m) {
    switch (m.index()) {
        case 0:
            return "interaction";
        case 1:
            return "lindblad";
        case 2:
            return "discrete";
        default:
            return "standard";
    }
}

inline OperatorSpace model_j1(const NoiseModel &m, const Tolerances &tol = {}) {
    return std::visit(
        [&](const auto &s) -> OperatorSpace {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StandardModel>) {
                return standard_interaction(s.qubits, s.kind, tol);
            } else {
                return build_j1(s, tol);
            }
        },
        m);
}

/// Noise strength for models with dynamics.
inline std::optional<double> model_lambda(const NoiseModel &m, const Tolerances &tol = {}) {
    return std::visit(
        [&](const auto &s) -> std::optional<double> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, InteractionSpec>) {
                return noise_strength_hamiltonian(s, tol);
            } else if constexpr (std::is_same_v<T, MarkovSpec>) {
                return noise_strength_markov(s, tol);
            } else if constexpr (std::is_same_v<T, DiscreteSpec>) {
                return noise_strength_discrete(s, tol);
            } else {
                return std::nullopt;
            }
        },
        m);
}

// ---------------------------------------------------------------------------
// Codes.

inline json code_to_json(const Code &code) {
    json j{{"system_dim", code.system_dim()}, {"logical_dim", code.logical_dim()}, {"isometry", matrix_pairs(code.isometry)}};
    if (code.transmission_basis) {
        j["transmission_basis"] = matrix_pairs(code.codeword_matrix());
    }
    return j;
}

inline Code code_from_json(const json &j, const Tolerances &tol = {}) {
    if (!j.is_object()) {
        throw InputError("code: expected an object");
    }
    std::size_t n = require_size(j, "system_dim");
    std::size_t k = require_size(j, "logical_dim");
    if (!j.contains("isometry")) {
        throw InputError("code: missing \"isometry\"");
    }
    Eigen::MatrixXcd v = matrix_from_pairs(j["isometry"], n, k, "code.isometry");
    Code c{v, std::nullopt};
    if (j.contains("transmission_basis")) {
        Eigen::MatrixXcd t = matrix_from_pairs(j["transmission_basis"], n, k, "code.transmission_basis");
        std::vector<StateVector> words;
        for (Eigen::Index i = 0; i < t.cols(); ++i) {
            words.emplace_back(t.col(i));
        }
        c.transmission_basis = words;
    }
    checked("code", [&] {
        validate(c, tol);
        return 0;
    });
    return c;
}

// ---------------------------------------------------------------------------
// Reports.

inline json tolerances_to_json(const Tolerances &tol) {
    json j = json::object();
    for (const auto &[name, field] : kToleranceFields) {
        j[std::string(name)] = tol.*field;
    }
    return j;
}

inline json distance_to_json(const Distance &d) {
    if (d.infinite) {
        return "inf";
    }
    return d.value;
}

inline json decomposition_to_json(const AlgebraDecomposition &dec, bool with_isometries = true) {
    json blocks = json::array();
    for (const auto &b : dec.blocks) {
        json jb{{"d_c", b.d_c}, {"d_z", b.d_z}};
        if (with_isometries) {
            jb["isometry"] = {{"rows", b.isometry.rows()}, {"cols", b.isometry.cols()}, {"pairs", matrix_pairs(b.isometry)}};
        }
        blocks.push_back(jb);
    }
    return json{{"ambient_dim", dec.ambient_dim}, {"seed", dec.seed}, {"attempts", dec.attempts}, {"residual", dec.residual}, {"blocks", blocks}};
}

inline json certificate_to_json(const PartitionCertificate &c) {
    json subsets = json::array();
    for (std::size_t i = 0; i < c.subsets.size(); ++i) {
        subsets.push_back({{"indices", c.subsets[i]}, {"weights", c.weights[i]}});
    }
    json gamma = json::array();
    for (Eigen::Index i = 0; i < c.gamma.size(); ++i) {
        gamma.push_back(c.gamma(i));
    }
    return json{{"subsets", subsets}, {"gamma", gamma}, {"residual", c.residual}};
}

inline json point_to_json(const SimulationPoint &p) {
    return json{{"draw", p.draw}, {"seed", p.seed}, {"t", p.t}, {"lambda_t", p.lambda_t}, {"a", p.a}, {"p", p.p}, {"bound", p.bound}};
}

inline json run_to_json(const SimulationRun &run) {
    json pts = json::array();
    for (const auto &p : run.points) {
        pts.push_back(point_to_json(p));
    }
    json slopes = json::array();
    for (const auto &s : run.slopes) {
        slopes.push_back(s ? json(*s) : json(nullptr));
    }
    auto ms = run.min_slope();
    json j{
        {"model", run.model},
        {"metric", run.metric},
        {"compared_quantity", run.model == "hamiltonian" ? "a" : "p"},
        {"lambda", run.lambda},
        {"e", distance_to_json(run.e)},
        {"lambda_t_grid", run.lambda_t_grid},
        {"bound_ok", run.bound_ok},
        {"slope_checked", run.slope_checked},
        {"slope_ok", run.slope_ok},
        {"min_slope", ms ? json(*ms) : json(nullptr)},
        {"slopes", slopes},
        {"worst_ratio", run.worst_ratio},
        {"passed", run.passed()},
        {"counterexample", run.counterexample ? point_to_json(*run.counterexample) : json(nullptr)},
        {"points", pts}};
    return j;
}

}  // namespace gqec::io
