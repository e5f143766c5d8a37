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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gqec/operator.hpp"

namespace gqec {

enum class PauliLetter : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Single-qubit Pauli matrix.
inline Operator pauli_matrix(PauliLetter letter) {
    Operator m = Operator::Zero(2, 2);
    switch (letter) {
        case PauliLetter::I:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case PauliLetter::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case PauliLetter::Y:
            m(0, 1) = -kI;
            m(1, 0) = kI;
            break;
        case PauliLetter::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

inline PauliLetter parse_pauli_letter(char c) {
    switch (c) {
        case 'I':
        case '_':
            return PauliLetter::I;
        case 'X':
            return PauliLetter::X;
        case 'Y':
            return PauliLetter::Y;
        case 'Z':
            return PauliLetter::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

/// Tensor product of Pauli letters with a complex coefficient. Letter 0 acts on
/// the first (most significant) qubit.
struct PauliString {
    std::vector<PauliLetter> letters;
    Complex coeff{1.0, 0.0};

    static PauliString parse(std::string_view text, Complex coeff = {1.0, 0.0}) {
        PauliString p;
        p.coeff = coeff;
        p.letters.reserve(text.size());
        for (char c : text) {
            p.letters.push_back(parse_pauli_letter(c));
        }
        if (p.letters.empty()) {
            throw std::invalid_argument("empty Pauli string");
        }
        return p;
    }

    std::size_t n_qubits() const {
        return letters.size();
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (auto l : letters) {
            w += l != PauliLetter::I;
        }
        return w;
    }

    std::string str() const {
        std::string s;
        for (auto l : letters) {
            s.push_back(static_cast<char>(l));
        }
        return s;
    }
};

inline Operator pauli_to_operator(const PauliString &p) {
    if (p.letters.empty()) {
        throw std::invalid_argument("pauli_to_operator: empty Pauli string");
    }
    Operator out = pauli_matrix(p.letters[0]);
    for (std::size_t k = 1; k < p.letters.size(); ++k) {
        out = kron(out, pauli_matrix(p.letters[k]));
    }
    return p.coeff * out;
}

inline Operator pauli_operator(std::string_view letters, Complex coeff = {1.0, 0.0}) {
    return pauli_to_operator(PauliString::parse(letters, coeff));
}

/// sigma_u acting on qubit `k` (0-based) of `n`.
inline Operator single_qubit_pauli(std::size_t n, std::size_t k, PauliLetter u) {
    if (k >= n) {
        throw std::invalid_argument("single_qubit_pauli: qubit index out of range");
    }
    PauliString p;
    p.letters.assign(n, PauliLetter::I);
    p.letters[k] = u;
    return pauli_to_operator(p);
}

/// Collective operator J_u = sum_k sigma_u^(k).
inline Operator collective_pauli(std::size_t n, PauliLetter u) {
    std::size_t dim = std::size_t{1} << n;
    Operator out = zero_operator(dim);
    for (std::size_t k = 0; k < n; ++k) {
        out += single_qubit_pauli(n, k, u);
    }
    return out;
}

/// All Pauli strings on `n` qubits in lexicographic I < X < Y < Z order.
inline std::vector<PauliString> all_pauli_strings(std::size_t n) {
    static constexpr PauliLetter kLetters[] = {PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
    std::vector<PauliString> out;
    std::size_t total = std::size_t{1} << (2 * n);
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        PauliString p;
        p.letters.resize(n);
        std::size_t c = code;
        for (std::size_t k = n; k-- > 0;) {
            p.letters[k] = kLetters[c & 3];
            c >>= 2;
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace gqec
