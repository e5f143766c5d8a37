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

// Codes built independently of the library, from stabilizer generators.

#include <string>
#include <vector>

#include "gqec/codes.hpp"
#include "gqec/graded_algebra.hpp"
#include "gqec/operator.hpp"
#include "gqec/pauli.hpp"

namespace gqec::testing {

/// Projector onto the joint +1 eigenspace of commuting Pauli generators.
inline Operator stabilizer_projector(const std::vector<std::string> &generators) {
    std::size_t n = std::size_t{1} << generators.front().size();
    Operator p = identity(n);
    for (const auto &g : generators) {
        p = p * (0.5 * (identity(n) + pauli_operator(g)));
    }
    return p;
}

/// [[5,1,3]]: cyclic shifts of XZZXI; |0_L> from P|00000>, |1_L> = XXXXX|0_L>.
inline Code five_qubit_code() {
    Operator p = stabilizer_projector({"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"});
    StateVector zero = StateVector::Zero(32);
    zero(0) = 1.0;
    StateVector l0 = p * zero;
    l0.normalize();
    StateVector l1 = pauli_operator("XXXXX") * l0;
    Eigen::MatrixXcd v(32, 2);
    v << l0, l1;
    return code_from_isometry(v);
}

/// Three-qubit bit-flip repetition code span{|000>, |111>}.
inline Code repetition_code() {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(8, 2);
    v(0, 0) = 1.0;
    v(7, 1) = 1.0;
    return code_from_isometry(v);
}

/// Whole space of `n` dimensions as a code.
inline Code trivial_code(std::size_t n) {
    return code_from_isometry(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

/// Five system qubits coupled to one environment qubit through
/// sum_b J_b (x) sigma_b, b in {I, X, Y, Z}, with each J_b a seeded random
/// combination of single-qubit Paulis.
inline InteractionSpec five_qubit_environment(std::uint64_t seed) {
    Rng rng(seed);
    InteractionSpec s;
    s.system_dim = 32;
    s.env_dim = 2;
    for (auto b : {PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
        Operator j = zero_operator(32);
        for (std::size_t k = 0; k < 5; ++k) {
            for (auto u : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
                j += rng.normal() * single_qubit_pauli(5, k, u);
            }
        }
        s.couplings.push_back({j, pauli_matrix(b)});
    }
    return s;
}

}  // namespace gqec::testing
