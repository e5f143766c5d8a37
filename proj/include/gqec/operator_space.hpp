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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqec/operator.hpp"
#include "gqec/tolerances.hpp"

namespace gqec {

/// A linear space of N x N operators, held as a basis that is orthonormal
/// under <A, B> = tr(A^dagger B).
///
/// The basis is stored twice: as the matrix whose columns are the vectorized
/// basis operators (used for projections) and as a list of operators.
class OperatorSpace {
   public:
    OperatorSpace() = default;

    /// Rank-0 space of N x N operators.
    explicit OperatorSpace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {
        auto n2 = static_cast<Eigen::Index>(ambient_dim * ambient_dim);
        columns_ = Eigen::MatrixXcd(n2, 0);
    }

    /// Wraps columns that are already orthonormal vectorized operators.
    static OperatorSpace from_orthonormal_columns(std::size_t ambient_dim, Eigen::MatrixXcd columns) {
        if (columns.rows() != static_cast<Eigen::Index>(ambient_dim * ambient_dim)) {
            throw std::invalid_argument("OperatorSpace: column length must be ambient_dim^2");
        }
        OperatorSpace s(ambient_dim);
        s.columns_ = std::move(columns);
        s.basis_.reserve(static_cast<std::size_t>(s.columns_.cols()));
        for (Eigen::Index j = 0; j < s.columns_.cols(); ++j) {
            s.basis_.push_back(unvectorize(s.columns_.col(j), ambient_dim));
        }
        return s;
    }

    std::size_t ambient_dim() const {
        return ambient_dim_;
    }

    std::size_t rank() const {
        return basis_.size();
    }

    const std::vector<Operator> &basis() const {
        return basis_;
    }

    const Operator &element(std::size_t i) const {
        return basis_.at(i);
    }

    /// N^2 x rank matrix of vectorized basis operators.
    const Eigen::MatrixXcd &columns() const {
        return columns_;
    }

    /// Coefficients of the orthogonal projection of `a` in this basis.
    Eigen::VectorXcd coordinates(const Operator &a) const {
        return columns_.adjoint() * vectorize(a);
    }

    Operator project(const Operator &a) const {
        return unvectorize(columns_ * coordinates(a), ambient_dim_);
    }

    /// Hilbert-Schmidt norm of the part of `a` orthogonal to the space.
    double residual_norm(const Operator &a) const {
        Eigen::VectorXcd v = vectorize(a);
        if (rank() == 0) {
            return v.norm();
        }
        Eigen::VectorXcd r = v - columns_ * (columns_.adjoint() * v);
        // Second pass keeps the residual accurate when it is tiny.
        r -= columns_ * (columns_.adjoint() * r);
        return r.norm();
    }

    /// Operator built from coefficients in this basis.
    Operator combination(const Eigen::Ref<const Eigen::VectorXcd> &coeffs) const {
        return unvectorize(columns_ * coeffs, ambient_dim_);
    }

    /// Largest deviation of the basis Gram matrix from the identity.
    double orthonormality_defect() const {
        if (rank() == 0) {
            return 0.0;
        }
        Eigen::MatrixXcd g = columns_.adjoint() * columns_;
        g -= Eigen::MatrixXcd::Identity(g.rows(), g.cols());
        return g.cwiseAbs().maxCoeff();
    }

   private:
    std::size_t ambient_dim_ = 0;
    Eigen::MatrixXcd columns_;
    std::vector<Operator> basis_;
};

namespace detail {

/// Orthonormal basis of the column space of `stack`, by Householder QR with
/// column pivoting. Columns of Q are kept while |R_kk| exceeds `cutoff` times
/// |R_00|; pivoting makes the diagonal non-increasing, so this is the
/// numerical rank.
inline Eigen::MatrixXcd orthonormal_range(const Eigen::MatrixXcd &stack, double cutoff) {
    if (stack.cols() == 0 || stack.rows() == 0) {
        return Eigen::MatrixXcd(stack.rows(), 0);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(stack);
    const auto &r = qr.matrixQR();
    Eigen::Index diag = std::min(r.rows(), r.cols());
    double top = std::abs(r(0, 0));
    if (!(top > 0.0)) {
        return Eigen::MatrixXcd(stack.rows(), 0);
    }
    Eigen::Index keep = 0;
    while (keep < diag && std::abs(r(keep, keep)) > cutoff * top) {
        ++keep;
    }
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(stack.rows(), keep);
    q.applyOnTheLeft(qr.householderQ());
    return q;
}

/// Orthonormal basis of the vectors x with |M x| <= cutoff |x|, from the SVD
/// of the triangular factor of M. Intended for M with few columns.
inline Eigen::MatrixXcd small_singular_right_vectors(const Eigen::MatrixXcd &m, double cutoff) {
    Eigen::Index c = m.cols();
    if (c == 0) {
        return Eigen::MatrixXcd(0, 0);
    }
    Eigen::MatrixXcd r;
    if (m.rows() > c) {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
        r = qr.matrixQR().topRows(c).triangularView<Eigen::Upper>();
    } else {
        r = m;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    std::vector<Eigen::Index> cols;
    for (Eigen::Index k = 0; k < c; ++k) {
        double s = k < sv.size() ? sv(k) : 0.0;
        if (s <= cutoff) {
            cols.push_back(k);
        }
    }
    Eigen::MatrixXcd out(c, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = svd.matrixV().col(cols[j]);
    }
    return out;
}

inline void require_same_ambient(const OperatorSpace &a, const OperatorSpace &b, const char *what) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw std::invalid_argument(
            std::string(what) + ": dimension mismatch (" + std::to_string(a.ambient_dim()) + " vs " +
            std::to_string(b.ambient_dim()) + ")");
    }
}

/// Orthonormal basis grown by blocks of vectors. Each block is projected off
/// the current basis twice (classical Gram-Schmidt with reorthogonalization),
/// then new directions are extracted by pivoted QR of the residual; a
/// direction is new when its residual exceeds `cutoff` times the largest
/// vector norm seen so far.
class IncrementalBasis {
   public:
    IncrementalBasis(std::size_t length, double cutoff)
        : q_(static_cast<Eigen::Index>(length), 0), cutoff_(cutoff) {
    }

    std::size_t rank() const {
        return static_cast<std::size_t>(q_.cols());
    }

    void add(Eigen::MatrixXcd block) {
        for (Eigen::Index j = 0; j < block.cols(); ++j) {
            scale_ = std::max(scale_, block.col(j).norm());
        }
        if (!(scale_ > 0.0)) {
            return;
        }
        if (q_.cols() > 0) {
            for (int pass = 0; pass < 2; ++pass) {
                block -= q_ * (q_.adjoint() * block);
            }
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(block);
        const auto &r = qr.matrixQR();
        Eigen::Index diag = std::min(r.rows(), r.cols());
        Eigen::Index keep = 0;
        while (keep < diag && std::abs(r(keep, keep)) > cutoff_ * scale_) {
            ++keep;
        }
        if (keep == 0) {
            return;
        }
        Eigen::MatrixXcd fresh = Eigen::MatrixXcd::Identity(block.rows(), keep);
        fresh.applyOnTheLeft(qr.householderQ());
        if (q_.cols() > 0) {
            fresh -= q_ * (q_.adjoint() * fresh);
            Eigen::HouseholderQR<Eigen::MatrixXcd> again(fresh);
            Eigen::MatrixXcd thin = Eigen::MatrixXcd::Identity(fresh.rows(), keep);
            thin.applyOnTheLeft(again.householderQ());
            fresh = std::move(thin);
        }
        Eigen::MatrixXcd grown(q_.rows(), q_.cols() + keep);
        grown << q_, fresh;
        q_ = std::move(grown);
    }

    const Eigen::MatrixXcd &basis() const {
        return q_;
    }

    Eigen::MatrixXcd take() {
        return std::move(q_);
    }

   private:
    Eigen::MatrixXcd q_;
    double cutoff_;
    double scale_ = 0.0;
};

// Stacks below this many complex entries are orthonormalized directly in
// space_product; larger products are sampled.
inline constexpr std::size_t kDirectProductEntries = std::size_t{1} << 18;
inline constexpr std::size_t kProductOversample = 6;
inline constexpr std::uint64_t kProductSampleSeed = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

/// Orthonormal basis of span(ops) in an N x N operator space.
inline OperatorSpace span(std::size_t ambient_dim, std::span<const Operator> ops, const Tolerances &tol = {}) {
    auto n2 = static_cast<Eigen::Index>(ambient_dim * ambient_dim);
    Eigen::MatrixXcd stack(n2, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t j = 0; j < ops.size(); ++j) {
        if (static_cast<std::size_t>(ops[j].rows()) != ambient_dim ||
            static_cast<std::size_t>(ops[j].cols()) != ambient_dim) {
            throw std::invalid_argument("span: operators must share the ambient dimension");
        }
        if (!ops[j].allFinite()) {
            throw std::invalid_argument("span: operator entries must be finite");
        }
        stack.col(static_cast<Eigen::Index>(j)) = vectorize(ops[j]);
    }
    return OperatorSpace::from_orthonormal_columns(ambient_dim, detail::orthonormal_range(stack, tol.rank_cutoff));
}

/// span(ops) with the ambient dimension taken from the operators. An empty
/// list gives the rank-0 space of unspecified dimension.
inline OperatorSpace span(std::span<const Operator> ops, const Tolerances &tol = {}) {
    if (ops.empty()) {
        return OperatorSpace(0);
    }
    return span(static_cast<std::size_t>(ops[0].rows()), ops, tol);
}

inline OperatorSpace span(std::initializer_list<Operator> ops, const Tolerances &tol = {}) {
    std::vector<Operator> v(ops);
    return span(std::span<const Operator>(v), tol);
}

inline bool contains(const OperatorSpace &s, const Operator &a, const Tolerances &tol = {}) {
    if (static_cast<std::size_t>(a.rows()) != s.ambient_dim() || a.rows() != a.cols()) {
        throw std::invalid_argument("contains: dimension mismatch");
    }
    return s.residual_norm(a) <= tol.containment * (1.0 + hs_norm(a));
}

/// span of all products b1 * b2 with b1, b2 running over the two bases.
///
/// Small products are orthonormalized directly. When the stack of products
/// is large, the span is recovered from products of random elements u * v,
/// u in s1, v in s2: such products are generic points of a variety spanning
/// the product space, so they are linearly independent until its dimension is
/// reached. Sampling stops once the number of draws exceeds the rank found
/// by a fixed margin.
inline OperatorSpace space_product(const OperatorSpace &s1, const OperatorSpace &s2, const Tolerances &tol = {}) {
    detail::require_same_ambient(s1, s2, "space_product");
    std::size_t n = s1.ambient_dim();
    std::size_t r1 = s1.rank();
    std::size_t r2 = s2.rank();
    if (r1 == 0 || r2 == 0) {
        return OperatorSpace(n);
    }
    std::size_t n2 = n * n;
    if (r1 * r2 * n2 <= detail::kDirectProductEntries) {
        std::vector<Operator> products;
        products.reserve(r1 * r2);
        for (const auto &a : s1.basis()) {
            for (const auto &b : s2.basis()) {
                products.push_back(a * b);
            }
        }
        return span(n, products, tol);
    }

    Rng rng(detail::kProductSampleSeed ^ (r1 * 0x100000001B3ULL) ^ (r2 << 20) ^ n);
    detail::IncrementalBasis basis(n2, tol.rank_cutoff);
    std::size_t bound = std::min(r1 * r2, n2);
    std::size_t samples = 0;
    while (basis.rank() + detail::kProductOversample > samples && basis.rank() < n2) {
        std::size_t want = basis.rank() + detail::kProductOversample - samples;
        std::size_t batch = std::clamp<std::size_t>(want, 8, 128);
        batch = std::min(batch, bound + detail::kProductOversample);
        Eigen::MatrixXcd block(static_cast<Eigen::Index>(n2), static_cast<Eigen::Index>(batch));
        for (std::size_t j = 0; j < batch; ++j) {
            Operator u = s1.combination(rng.complex_vector(r1));
            Operator v = s2.combination(rng.complex_vector(r2));
            block.col(static_cast<Eigen::Index>(j)) = vectorize(u * v);
        }
        basis.add(block);
        samples += batch;
    }
    return OperatorSpace::from_orthonormal_columns(n, basis.take());
}

/// span(S.basis together with the adjoints of its elements).
inline OperatorSpace dagger_closure(const OperatorSpace &s, const Tolerances &tol = {}) {
    std::vector<Operator> ops;
    ops.reserve(2 * s.rank());
    for (const auto &b : s.basis()) {
        ops.push_back(b);
        ops.push_back(b.adjoint());
    }
    if (ops.empty()) {
        return OperatorSpace(s.ambient_dim());
    }
    return span(s.ambient_dim(), ops, tol);
}

inline bool is_dagger_closed(const OperatorSpace &s, const Tolerances &tol = {}) {
    for (const auto &b : s.basis()) {
        if (!contains(s, b.adjoint(), tol)) {
            return false;
        }
    }
    return true;
}

/// span(S1 union S2).
inline OperatorSpace space_sum(const OperatorSpace &s1, const OperatorSpace &s2, const Tolerances &tol = {}) {
    detail::require_same_ambient(s1, s2, "space_sum");
    std::vector<Operator> ops(s1.basis());
    ops.insert(ops.end(), s2.basis().begin(), s2.basis().end());
    return span(s1.ambient_dim(), ops, tol);
}

/// S1 intersect S2: the directions of the smaller space whose residual
/// against the larger one vanishes.
inline OperatorSpace intersection(const OperatorSpace &s1, const OperatorSpace &s2, const Tolerances &tol = {}) {
    detail::require_same_ambient(s1, s2, "intersection");
    std::size_t n = s1.ambient_dim();
    if (s1.rank() == 0 || s2.rank() == 0) {
        return OperatorSpace(n);
    }
    if (s2.rank() > s1.rank()) {
        return intersection(s2, s1, tol);
    }
    const auto &q1 = s1.columns();
    const auto &q2 = s2.columns();
    Eigen::MatrixXcd resid = q2 - q1 * (q1.adjoint() * q2);
    resid -= q1 * (q1.adjoint() * resid);
    Eigen::MatrixXcd coeffs = detail::small_singular_right_vectors(resid, tol.containment);
    return OperatorSpace::from_orthonormal_columns(n, q2 * coeffs);
}

/// True when the two spaces have the same orthogonal projector.
inline bool same_span(const OperatorSpace &s1, const OperatorSpace &s2, const Tolerances &tol = {}) {
    if (s1.ambient_dim() != s2.ambient_dim() || s1.rank() != s2.rank()) {
        return false;
    }
    for (const auto &b : s1.basis()) {
        if (!contains(s2, b, tol)) {
            return false;
        }
    }
    return true;
}

/// span{I}.
inline OperatorSpace scalars(std::size_t n) {
    return span(n, std::vector<Operator>{identity(n)});
}

/// Random element sum_k c_k b_k with complex Gaussian coefficients.
inline Operator random_element(const OperatorSpace &s, Rng &rng) {
    return s.combination(rng.complex_vector(s.rank()));
}

/// Random Hermitian element; lies in S when S is dagger-closed.
inline Operator random_hermitian_element(const OperatorSpace &s, Rng &rng) {
    Operator a = random_element(s, rng);
    return 0.5 * (a + a.adjoint());
}

}  // namespace gqec
