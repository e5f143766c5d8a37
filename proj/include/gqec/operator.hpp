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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gqec {

using Complex = std::complex<double>;

/// Dense complex square matrix. Every operator in the library (interaction
/// terms, Kraus elements, projectors, Lindblad operators) is one of these.
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Throws std::invalid_argument unless `a` is a non-empty square matrix with
/// finite entries.
inline void require_operator(const Operator &a, const std::string &what = "operator") {
    if (a.rows() == 0 || a.rows() != a.cols()) {
        throw std::invalid_argument(
            what + ": expected a non-empty square matrix, got " + std::to_string(a.rows()) + "x" +
            std::to_string(a.cols()));
    }
    if (!a.allFinite()) {
        throw std::invalid_argument(what + ": entries must be finite");
    }
}

inline Operator identity(std::size_t n) {
    return Operator::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

inline Operator zero_operator(std::size_t n) {
    return Operator::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

/// Hilbert-Schmidt inner product tr(A^dagger B).
inline Complex hs_inner(const Operator &a, const Operator &b) {
    return (a.conjugate().cwiseProduct(b)).sum();
}

inline double hs_norm(const Operator &a) {
    return a.norm();
}

/// Largest singular value, i.e. the largest eigenvalue of sqrt(A^dagger A).
inline double op_norm(const Operator &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Operator> svd(a);
    return svd.singularValues()(0);
}

/// tr sqrt(A^dagger A), the sum of singular values.
inline double trace_norm(const Operator &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Operator> svd(a);
    return svd.singularValues().sum();
}

inline Operator commutator(const Operator &a, const Operator &b) {
    return a * b - b * a;
}

/// Kronecker product; the first factor is the slow (outer) index.
inline Operator kron(const Operator &a, const Operator &b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline StateVector kron(const StateVector &a, const StateVector &b) {
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline bool is_hermitian(const Operator &a, double tol) {
    return (a - a.adjoint()).norm() <= tol * (1.0 + a.norm());
}

/// Column-major vectorization; <vec A, vec B> equals tr(A^dagger B).
inline Eigen::VectorXcd vectorize(const Operator &a) {
    return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size());
}

inline Operator unvectorize(const Eigen::Ref<const Eigen::VectorXcd> &v, std::size_t n) {
    auto dim = static_cast<Eigen::Index>(n);
    if (v.size() != dim * dim) {
        throw std::invalid_argument("unvectorize: length is not n*n");
    }
    return Eigen::Map<const Operator>(v.data(), dim, dim);
}

/// Half the trace norm of the difference.
inline double trace_distance(const Operator &a, const Operator &b) {
    return 0.5 * trace_norm(a - b);
}

/// exp(-i H t) for Hermitian H, through its eigendecomposition.
inline Operator evolution_operator(const Operator &h, double t) {
    Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (h + h.adjoint()));
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("evolution_operator: eigendecomposition failed");
    }
    Eigen::VectorXcd phases = (-kI * t * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Seeded source of the random draws used across the library (generic
/// elements of algebras, environment Hamiltonians, greedy codewords).
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    double normal() {
        return normal_(engine_);
    }

    Complex complex_normal() {
        double re = normal_(engine_);
        double im = normal_(engine_);
        return {re, im};
    }

    double uniform() {
        return uniform_(engine_);
    }

    Eigen::VectorXd real_vector(std::size_t n) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = normal();
        }
        return v;
    }

    Eigen::VectorXcd complex_vector(std::size_t n) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = complex_normal();
        }
        return v;
    }

    StateVector unit_vector(std::size_t n) {
        StateVector v = complex_vector(n);
        return v / v.norm();
    }

    Operator matrix(std::size_t rows, std::size_t cols) {
        Operator m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                m(i, j) = complex_normal();
            }
        }
        return m;
    }

    Operator matrix(std::size_t n) {
        return matrix(n, n);
    }

    /// Gaussian (GUE-like) Hermitian matrix.
    Operator hermitian(std::size_t n) {
        Operator g = matrix(n);
        return 0.5 * (g + g.adjoint());
    }

    /// Random pure-state density operator.
    Operator pure_state(std::size_t n) {
        StateVector v = unit_vector(n);
        return v * v.adjoint();
    }

    std::mt19937_64 &engine() {
        return engine_;
    }

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace gqec
