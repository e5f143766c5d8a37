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
#include <cstdint>
#include <utility>
#include <vector>

#include "gqec/codes.hpp"
#include "gqec/graded_algebra.hpp"
#include "gqec/operator.hpp"
#include "gqec/operator_space.hpp"
#include "gqec/pauli.hpp"
#include "gqec/structure.hpp"
#include "gqec/tolerances.hpp"

namespace gqec {

/// Three qubits A, B, C (indices 0, 1, 2) under collective noise: the
/// interaction is spanned by the total spin components, so the noise algebra
/// is generated by I, S_x, S_y, S_z.
namespace three_qubit {

inline constexpr std::size_t kQubits = 3;
inline constexpr std::size_t kDim = 8;

inline OperatorSpace interaction(const Tolerances &tol = {}) {
    return standard_interaction(kQubits, InteractionKind::collective, tol);
}

/// sigma^a . sigma^b for qubits a and b.
inline Operator exchange(std::size_t a, std::size_t b) {
    Operator s = zero_operator(kDim);
    for (auto u : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
        s += single_qubit_pauli(kQubits, a, u) * single_qubit_pauli(kQubits, b, u);
    }
    return s;
}

inline Operator s1() {
    return exchange(0, 1);
}

inline Operator s2() {
    return exchange(0, 2);
}

/// Collective coupling to a one-qubit environment: S_u (x) sigma_u.
inline InteractionSpec interaction_spec() {
    InteractionSpec s;
    s.system_dim = kDim;
    s.env_dim = 2;
    for (auto u : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
        s.couplings.push_back({collective_pauli(kQubits, u), pauli_matrix(u)});
    }
    return s;
}

/// Collective Lindblad noise with operators sqrt(gamma) S_u and no
/// Hamiltonian part.
inline MarkovSpec lindblad_spec(double gamma) {
    std::vector<Operator> ls;
    for (auto u : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
        ls.push_back(std::sqrt(gamma) * collective_pauli(kQubits, u));
    }
    return complete_drift(ls, zero_operator(kDim));
}

struct ExampleResult {
    AlgebraDecomposition decomposition;
    std::size_t algebra_dim = 0;
    std::size_t commutant_dim = 0;
    std::size_t center_dim = 0;
    double s1_residual = 0.0;
    double s2_residual = 0.0;
    /// Code on the Z factor of the (2, 2) block.
    Code code;
    std::size_t trials = 0;
    /// Largest trace distance between the Z-factor state before and after a
    /// random collective unitary.
    double worst_subsystem_change = 0.0;
};

/// Decomposes the collective algebra, checks s1 and s2 against the
/// commutant, and evolves a random Z-factor state under `trials` random
/// unitaries exp(-i H) with H a Hermitian element of the algebra.
inline ExampleResult run(std::uint64_t seed, std::size_t trials = 20, const Tolerances &tol = {}) {
    ExampleResult out;
    OperatorSpace a = full_algebra(interaction(tol), tol).algebra;
    out.algebra_dim = a.rank();
    out.decomposition = decompose(a, seed, tol);
    OperatorSpace comm = commutant(a, tol);
    out.commutant_dim = comm.rank();
    out.center_dim = center(a, tol).rank();
    out.s1_residual = comm.residual_norm(s1()) / hs_norm(s1());
    out.s2_residual = comm.residual_norm(s2()) / hs_norm(s2());

    auto subsystems = noiseless_subsystems(out.decomposition);
    if (subsystems.empty()) {
        throw std::runtime_error("three_qubit::run: no noiseless subsystem found");
    }
    const auto &sub = subsystems.front();
    const auto &block = out.decomposition.blocks[sub.block];
    out.code = code_from_isometry(sub.logical_isometry, tol);

    Rng rng(seed);
    auto dc = static_cast<Eigen::Index>(block.d_c);
    auto dz = static_cast<Eigen::Index>(block.d_z);
    StateVector z = rng.unit_vector(static_cast<std::size_t>(dz));
    StateVector c = rng.unit_vector(static_cast<std::size_t>(dc));
    StateVector psi = block.isometry * kron(c, z);
    Operator rho = psi * psi.adjoint();
    Operator before = subsystem_state(block, rho);
    out.trials = trials;
    for (std::size_t k = 0; k < trials; ++k) {
        Operator u = evolution_operator(random_hermitian_element(a, rng), 1.0);
        Operator after = subsystem_state(block, u * rho * u.adjoint());
        out.worst_subsystem_change = std::max(out.worst_subsystem_change, trace_distance(before, after));
    }
    return out;
}

}  // namespace three_qubit

}  // namespace gqec
