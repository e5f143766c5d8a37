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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqec/operator.hpp"
#include "gqec/operator_space.hpp"
#include "gqec/pauli.hpp"
#include "gqec/tolerances.hpp"

namespace gqec {

/// One term J_i (x) B_i of the system-environment interaction.
struct Coupling {
    Operator system;
    Operator environment;
};

/// Interaction Hamiltonian J = sum_i J_i (x) B_i with a finite environment.
///
/// The J_i are traceless and the B_i linearly independent; `validate` checks
/// both. The environment's own Hamiltonian and initial state are optional
/// (zero and |0> by default).
struct InteractionSpec {
    std::size_t system_dim = 0;
    std::size_t env_dim = 0;
    std::vector<Coupling> couplings;
    std::optional<Operator> env_hamiltonian;
    std::optional<StateVector> env_initial_state;

    /// J assembled on the joint space, system index outermost.
    Operator joint_interaction() const {
        Operator j = zero_operator(system_dim * env_dim);
        for (const auto &c : couplings) {
            j += kron(c.system, c.environment);
        }
        return j;
    }

    Operator environment_hamiltonian() const {
        return env_hamiltonian.value_or(zero_operator(env_dim));
    }

    /// J + I (x) H_B.
    Operator joint_hamiltonian() const {
        return joint_interaction() + kron(identity(system_dim), environment_hamiltonian());
    }

    StateVector initial_environment_state() const {
        if (env_initial_state) {
            return *env_initial_state;
        }
        StateVector v = StateVector::Zero(static_cast<Eigen::Index>(env_dim));
        v(0) = 1.0;
        return v;
    }
};

inline void validate(const InteractionSpec &spec, const Tolerances &tol = {}) {
    if (spec.system_dim == 0 || spec.env_dim == 0) {
        throw std::invalid_argument("InteractionSpec: system_dim and env_dim must be positive");
    }
    std::vector<Operator> env_ops;
    for (std::size_t i = 0; i < spec.couplings.size(); ++i) {
        const auto &c = spec.couplings[i];
        require_operator(c.system, "coupling " + std::to_string(i) + " system operator");
        require_operator(c.environment, "coupling " + std::to_string(i) + " environment operator");
        if (static_cast<std::size_t>(c.system.rows()) != spec.system_dim ||
            static_cast<std::size_t>(c.environment.rows()) != spec.env_dim) {
            throw std::invalid_argument("coupling " + std::to_string(i) + ": operator dimensions do not match system_dim and env_dim");
        }
        double scale = static_cast<double>(spec.system_dim) * std::max(c.system.cwiseAbs().maxCoeff(), 1e-300);
        if (std::abs(c.system.trace()) > tol.traceless * scale) {
            throw std::invalid_argument(
                "coupling " + std::to_string(i) +
                ": system operator must be traceless (use project_traceless to move the trace into the "
                "environment Hamiltonian)");
        }
        env_ops.push_back(c.environment);
    }
    if (!env_ops.empty()) {
        auto s = span(spec.env_dim, env_ops, tol);
        if (s.rank() != env_ops.size()) {
            throw std::invalid_argument(
                "InteractionSpec: environment operators B_i are linearly dependent (rank " + std::to_string(s.rank()) +
                " for " + std::to_string(env_ops.size()) + " couplings); combine terms that share an environment "
                "operator");
        }
    }
    if (spec.env_hamiltonian) {
        require_operator(*spec.env_hamiltonian, "environment Hamiltonian");
        if (static_cast<std::size_t>(spec.env_hamiltonian->rows()) != spec.env_dim) {
            throw std::invalid_argument("environment Hamiltonian has the wrong dimension");
        }
    }
    if (spec.env_initial_state) {
        const auto &v = *spec.env_initial_state;
        if (static_cast<std::size_t>(v.size()) != spec.env_dim || std::abs(v.norm() - 1.0) > 1e-9) {
            throw std::invalid_argument("environment initial state must be a unit vector of length env_dim");
        }
    }
}

/// Result of moving tr(J_i)/N * I (x) B_i out of the interaction.
struct TracelessProjection {
    InteractionSpec spec;
    /// tr(J_i)/N for each coupling.
    std::vector<Complex> shifts;
};

/// Subtracts (tr J_i / N) I from each J_i and adds the matching
/// sum_i (tr J_i / N) B_i to the environment Hamiltonian, so J + I (x) H_B is
/// unchanged.
inline TracelessProjection project_traceless(const InteractionSpec &spec) {
    TracelessProjection out{spec, {}};
    Operator shift_env = zero_operator(spec.env_dim);
    auto n = static_cast<double>(spec.system_dim);
    for (auto &c : out.spec.couplings) {
        Complex s = c.system.trace() / n;
        out.shifts.push_back(s);
        c.system -= s * identity(spec.system_dim);
        shift_env += s * c.environment;
    }
    out.spec.env_hamiltonian = spec.environment_hamiltonian() + shift_env;
    return out;
}

/// Markovian generator rho -> sum_i L_i rho L_i^dagger + V rho + rho V^dagger.
struct MarkovSpec {
    std::vector<Operator> lindblad_ops;
    Operator drift;

    std::size_t system_dim() const {
        return static_cast<std::size_t>(drift.rows());
    }
};

/// Drift V = -iH - 1/2 sum_i L_i^dagger L_i, which makes the generator trace
/// preserving.
inline MarkovSpec complete_drift(std::vector<Operator> lindblad_ops, const Operator &hamiltonian) {
    Operator v = -kI * hamiltonian;
    for (const auto &l : lindblad_ops) {
        v -= 0.5 * l.adjoint() * l;
    }
    return MarkovSpec{std::move(lindblad_ops), std::move(v)};
}

/// |V + V^dagger + sum_i L_i^dagger L_i|_HS.
inline double trace_preservation_defect(const MarkovSpec &spec) {
    Operator s = spec.drift + spec.drift.adjoint();
    for (const auto &l : spec.lindblad_ops) {
        s += l.adjoint() * l;
    }
    return s.norm();
}

inline void validate(const MarkovSpec &spec, const Tolerances & = {}) {
    require_operator(spec.drift, "drift V");
    for (std::size_t i = 0; i < spec.lindblad_ops.size(); ++i) {
        require_operator(spec.lindblad_ops[i], "Lindblad operator " + std::to_string(i));
        if (spec.lindblad_ops[i].rows() != spec.drift.rows()) {
            throw std::invalid_argument("Lindblad operator " + std::to_string(i) + " has the wrong dimension");
        }
    }
}

/// Quantum operation rho -> (I+V) rho (I+V)^dagger + sum_j L_j rho L_j^dagger.
struct DiscreteOperation {
    Operator drift;
    std::vector<Operator> kraus_tail;

    std::vector<Operator> kraus() const {
        std::vector<Operator> k;
        k.push_back(identity(static_cast<std::size_t>(drift.rows())) + drift);
        k.insert(k.end(), kraus_tail.begin(), kraus_tail.end());
        return k;
    }
};

/// Noise given as a sequence of quantum operations applied in order.
struct DiscreteSpec {
    std::vector<DiscreteOperation> operations;

    std::size_t system_dim() const {
        return operations.empty() ? 0 : static_cast<std::size_t>(operations.front().drift.rows());
    }
};

inline void validate(const DiscreteSpec &spec, const Tolerances &tol = {}) {
    if (spec.operations.empty()) {
        throw std::invalid_argument("DiscreteSpec: at least one operation is required");
    }
    std::size_t n = spec.system_dim();
    for (std::size_t i = 0; i < spec.operations.size(); ++i) {
        const auto &op = spec.operations[i];
        require_operator(op.drift, "operation " + std::to_string(i) + " drift");
        if (static_cast<std::size_t>(op.drift.rows()) != n) {
            throw std::invalid_argument("operation " + std::to_string(i) + " has the wrong dimension");
        }
        Operator sum = zero_operator(n);
        for (const auto &k : op.kraus()) {
            require_operator(k, "operation " + std::to_string(i) + " Kraus operator");
            if (static_cast<std::size_t>(k.rows()) != n) {
                throw std::invalid_argument("operation " + std::to_string(i) + " has the wrong dimension");
            }
            sum += k.adjoint() * k;
        }
        if ((sum - identity(n)).norm() > tol.trace_preservation) {
            throw std::invalid_argument("operation " + std::to_string(i) + " is not trace preserving");
        }
    }
}

/// span{I, J_1, J_2, ...} together with adjoints.
inline OperatorSpace build_j1(const InteractionSpec &spec, const Tolerances &tol = {}) {
    validate(spec, tol);
    std::vector<Operator> ops{identity(spec.system_dim)};
    for (const auto &c : spec.couplings) {
        ops.push_back(c.system);
        ops.push_back(c.system.adjoint());
    }
    return span(spec.system_dim, ops, tol);
}

/// span of I, the L_i, V and their adjoints.
inline OperatorSpace build_j1(const MarkovSpec &spec, const Tolerances &tol = {}) {
    validate(spec, tol);
    std::size_t n = spec.system_dim();
    std::vector<Operator> ops{identity(n), spec.drift, spec.drift.adjoint()};
    for (const auto &l : spec.lindblad_ops) {
        ops.push_back(l);
        ops.push_back(l.adjoint());
    }
    return span(n, ops, tol);
}

/// span of I, the V_i, L_ij and their adjoints.
inline OperatorSpace build_j1(const DiscreteSpec &spec, const Tolerances &tol = {}) {
    validate(spec, tol);
    std::size_t n = spec.system_dim();
    std::vector<Operator> ops{identity(n)};
    for (const auto &op : spec.operations) {
        ops.push_back(op.drift);
        ops.push_back(op.drift.adjoint());
        for (const auto &l : op.kraus_tail) {
            ops.push_back(l);
            ops.push_back(l.adjoint());
        }
    }
    return span(n, ops, tol);
}

enum class InteractionKind { linear, collective, classical };

inline const char *to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::linear:
            return "linear";
        case InteractionKind::collective:
            return "collective";
        case InteractionKind::classical:
            return "classical";
    }
    return "?";
}

inline InteractionKind parse_interaction_kind(std::string_view text) {
    if (text == "linear") {
        return InteractionKind::linear;
    }
    if (text == "collective") {
        return InteractionKind::collective;
    }
    if (text == "classical") {
        return InteractionKind::classical;
    }
    throw std::invalid_argument("unknown interaction kind '" + std::string(text) + "'");
}

/// Degree-one space of the standard qubit interactions:
///   linear     - I and every single-qubit Pauli (rank 3n+1),
///   collective - I and J_u = sum_k sigma_u^(k) (rank 4),
///   classical  - Pauli strings with at most one X or Y (rank (n+1) 2^n).
inline OperatorSpace standard_interaction(std::size_t n_qubits, InteractionKind kind, const Tolerances &tol = {}) {
    if (n_qubits == 0 || n_qubits > 10) {
        throw std::invalid_argument("standard_interaction: n_qubits must be in 1..10");
    }
    std::size_t dim = std::size_t{1} << n_qubits;
    std::vector<Operator> ops{identity(dim)};
    static constexpr PauliLetter kXYZ[] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
    switch (kind) {
        case InteractionKind::linear:
            for (std::size_t k = 0; k < n_qubits; ++k) {
                for (auto u : kXYZ) {
                    ops.push_back(single_qubit_pauli(n_qubits, k, u));
                }
            }
            break;
        case InteractionKind::collective:
            for (auto u : kXYZ) {
                ops.push_back(collective_pauli(n_qubits, u));
            }
            break;
        case InteractionKind::classical:
            for (const auto &p : all_pauli_strings(n_qubits)) {
                std::size_t flips = 0;
                for (auto l : p.letters) {
                    flips += l == PauliLetter::X || l == PauliLetter::Y;
                }
                if (flips <= 1 && p.weight() > 0) {
                    ops.push_back(pauli_to_operator(p));
                }
            }
            break;
    }
    return span(dim, ops, tol);
}

/// The filtration J_1 ⊆ J_2 ⊆ ... with J_d = J_1^d.
struct GradedAlgebra {
    /// grades[d-1] is J_d.
    std::vector<OperatorSpace> grades;
    bool saturated = false;
    /// Smallest d with J_{d+1} = J_d when saturated; otherwise the number of
    /// grades computed.
    std::size_t saturation_degree = 0;

    std::size_t ambient_dim() const {
        return grades.empty() ? 0 : grades.front().ambient_dim();
    }

    std::size_t max_degree() const {
        return grades.size();
    }

    /// J_d, with J_0 = span{I}. Degrees past saturation return the full
    /// algebra.
    OperatorSpace degree(std::size_t d) const {
        if (d == 0) {
            return scalars(ambient_dim());
        }
        if (d <= grades.size()) {
            return grades[d - 1];
        }
        if (saturated) {
            return grades.back();
        }
        throw std::out_of_range("GradedAlgebra: degree " + std::to_string(d) + " was not computed");
    }
};

namespace detail {

inline void require_contains_identity(const OperatorSpace &j1, const Tolerances &tol) {
    if (j1.rank() == 0 || !contains(j1, identity(j1.ambient_dim()), tol)) {
        throw std::invalid_argument("degree-one space must contain the identity");
    }
}

}  // namespace detail

/// Appends J_{k+1} = J_k * J_1 until `g` holds `d` grades or saturates.
///
/// Saturation is declared when a product step leaves the rank unchanged and
/// one further guard step does too, or when J_k is the whole matrix algebra.
/// The guard step is not stored.
inline void extend_grading(GradedAlgebra &g, std::size_t d, const Tolerances &tol = {}) {
    if (g.grades.empty()) {
        throw std::invalid_argument("extend_grading: the grading has no degree-one space");
    }
    // Copied: push_back below may reallocate the grades.
    const OperatorSpace j1 = g.grades.front();
    std::size_t n = j1.ambient_dim();
    d = std::min(d, n * n);
    while (!g.saturated && g.grades.size() < d) {
        OperatorSpace last = g.grades.back();
        if (last.rank() == n * n) {
            g.saturated = true;
            break;
        }
        OperatorSpace next = space_product(last, j1, tol);
        if (next.rank() == last.rank()) {
            OperatorSpace guard = space_product(next, j1, tol);
            if (guard.rank() == next.rank()) {
                g.saturated = true;
                break;
            }
        }
        g.grades.push_back(std::move(next));
    }
    if (!g.saturated && g.grades.back().rank() == n * n) {
        g.saturated = true;
    }
    g.saturation_degree = g.grades.size();
}

/// J_{k+1} = J_k * J_1 for k < d_max, with d_max capped at N^2.
inline GradedAlgebra grade(const OperatorSpace &j1, std::size_t d_max, const Tolerances &tol = {}) {
    detail::require_contains_identity(j1, tol);
    std::size_t n = j1.ambient_dim();
    d_max = std::clamp<std::size_t>(d_max, 1, n * n);
    GradedAlgebra g;
    g.grades.push_back(j1);
    extend_grading(g, d_max, tol);
    return g;
}

struct FullAlgebra {
    OperatorSpace algebra;
    std::size_t saturation_degree = 0;
};

/// The algebra generated by J_1, obtained by grading until saturation.
inline FullAlgebra full_algebra(const OperatorSpace &j1, const Tolerances &tol = {}) {
    std::size_t n = j1.ambient_dim();
    GradedAlgebra g = grade(j1, n * n, tol);
    return FullAlgebra{g.grades.back(), g.saturation_degree};
}

/// lambda = |J|, the operator norm of the assembled interaction.
inline double noise_strength_hamiltonian(const InteractionSpec &spec, const Tolerances &tol = {}) {
    validate(spec, tol);
    return op_norm(spec.joint_interaction());
}

/// lambda = 2|V| + sum_i |L_i|^2.
inline double noise_strength_markov(const MarkovSpec &spec, const Tolerances &tol = {}) {
    validate(spec, tol);
    double lambda = 2.0 * op_norm(spec.drift);
    for (const auto &l : spec.lindblad_ops) {
        double s = op_norm(l);
        lambda += s * s;
    }
    return lambda;
}

/// lambda = max_i (2|V_i| + |V_i|^2 + sum_j |L_ij|^2).
inline double noise_strength_discrete(const DiscreteSpec &spec, const Tolerances &tol = {}) {
    validate(spec, tol);
    double lambda = 0.0;
    for (const auto &op : spec.operations) {
        double v = op_norm(op.drift);
        double term = 2.0 * v + v * v;
        for (const auto &l : op.kraus_tail) {
            double s = op_norm(l);
            term += s * s;
        }
        lambda = std::max(lambda, term);
    }
    return lambda;
}

struct TimeSample {
    double time = 0.0;
    InteractionSpec spec;
};

struct NoiseEnvelope {
    OperatorSpace j1;
    double lambda_max = 0.0;
};

/// Union of the per-time degree-one spaces and the largest noise strength.
inline NoiseEnvelope time_dependent_envelope(std::span<const TimeSample> samples, const Tolerances &tol = {}) {
    if (samples.empty()) {
        throw std::invalid_argument("time_dependent_envelope: no samples");
    }
    std::size_t n = samples.front().spec.system_dim;
    std::vector<Operator> ops;
    double lambda = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto &s = samples[k];
        if (k > 0 && !(s.time > samples[k - 1].time)) {
            throw std::invalid_argument("time_dependent_envelope: sample times must be strictly increasing");
        }
        if (s.spec.system_dim != n) {
            throw std::invalid_argument("time_dependent_envelope: samples disagree on system dimension");
        }
        OperatorSpace j1 = build_j1(s.spec, tol);
        ops.insert(ops.end(), j1.basis().begin(), j1.basis().end());
        lambda = std::max(lambda, noise_strength_hamiltonian(s.spec, tol));
    }
    return NoiseEnvelope{span(n, ops, tol), lambda};
}

}  // namespace gqec
