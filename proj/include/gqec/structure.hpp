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
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gqec/operator.hpp"
#include "gqec/operator_space.hpp"
#include "gqec/tolerances.hpp"

namespace gqec {

/// Eigenvectors of a Hermitian matrix grouped by eigenvalue. Consecutive
/// eigenvalues (ascending) stay in one cluster while their gap is at most
/// `rel_gap` times the spectral range.
struct SpectralCluster {
    double value = 0.0;
    Eigen::MatrixXcd vectors;
};

inline std::vector<SpectralCluster> spectral_clusters(const Operator &h, double rel_gap) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
    const Eigen::VectorXd &ev = es.eigenvalues();
    const Eigen::MatrixXcd &vecs = es.eigenvectors();
    std::vector<SpectralCluster> out;
    if (ev.size() == 0) {
        return out;
    }
    double range = ev(ev.size() - 1) - ev(0);
    double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    // A spectrum narrower than roundoff is a single eigenvalue.
    double gap = range <= 1e-13 * std::max(scale, 1e-300) ? range + 1.0 : rel_gap * range;
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= ev.size(); ++k) {
        if (k == ev.size() || ev(k) - ev(k - 1) > gap) {
            SpectralCluster c;
            c.value = ev.segment(start, k - start).mean();
            c.vectors = vecs.middleCols(start, k - start);
            out.push_back(std::move(c));
            start = k;
        }
    }
    return out;
}

namespace detail {

inline constexpr std::uint64_t kCommutantSeed = 0xC0117A17ULL;
inline constexpr std::uint64_t kClosureCheckSeed = 0xC105EDULL;

/// Randomized check that S is closed under the adjoint: a generic element's
/// adjoint lies in S only if S is dagger-closed.
inline bool sampled_dagger_closed(const OperatorSpace &s, const Tolerances &tol, std::size_t samples = 3) {
    Rng rng(kClosureCheckSeed);
    for (std::size_t k = 0; k < samples; ++k) {
        Operator a = random_element(s, rng);
        if (!contains(s, a.adjoint(), tol)) {
            return false;
        }
    }
    return true;
}

inline bool sampled_product_closed(const OperatorSpace &s, const Tolerances &tol, std::size_t samples = 8) {
    Rng rng(kClosureCheckSeed + 1);
    for (std::size_t k = 0; k < samples; ++k) {
        Operator a = random_element(s, rng);
        Operator b = random_element(s, rng);
        if (!contains(s, a * b, tol)) {
            return false;
        }
    }
    return true;
}

inline void require_unital_dagger_closed(const OperatorSpace &a, const Tolerances &tol, const char *what) {
    if (a.rank() == 0 || !contains(a, identity(a.ambient_dim()), tol)) {
        throw std::invalid_argument(std::string(what) + ": the operator space must contain the identity");
    }
    if (!sampled_dagger_closed(a, tol)) {
        throw std::invalid_argument(std::string(what) + ": the operator space must be closed under the adjoint");
    }
}

}  // namespace detail

namespace detail {

/// Coefficients c (orthonormal columns) with sum_k c_k [X_k, B] = 0 for every
/// B in `ops`, for orthonormal X_k. The stacked commutator map is reduced by
/// a running QR; its null space is read off the SVD of the triangular
/// factor, keeping singular values at most `cutoff` times max(sigma_max, 1).
/// The floor keeps the threshold meaningful when every X_k already commutes
/// and sigma_max is roundoff.
inline Eigen::MatrixXcd commutator_null_space(
    const std::vector<Operator> &xs, const std::vector<Operator> &ops, double cutoff) {
    auto k = static_cast<Eigen::Index>(xs.size());
    if (k == 0) {
        return Eigen::MatrixXcd(0, 0);
    }
    auto n = xs.front().rows();
    auto n2 = n * n;
    Eigen::MatrixXcd r(0, k);
    std::vector<Eigen::MatrixXcd> pending;
    Eigen::Index pending_rows = 0;
    Eigen::Index batch_rows = std::max<Eigen::Index>(8 * k, 4 * n2);
    auto flush = [&]() {
        if (pending.empty()) {
            return;
        }
        Eigen::MatrixXcd stack(r.rows() + pending_rows, k);
        stack.topRows(r.rows()) = r;
        Eigen::Index row = r.rows();
        for (const auto &b : pending) {
            stack.middleRows(row, b.rows()) = b;
            row += b.rows();
        }
        pending.clear();
        pending_rows = 0;
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(stack);
        Eigen::Index keep = std::min(stack.rows(), k);
        r = qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
    };
    for (const auto &b : ops) {
        // Multiples of the identity commute with everything.
        Complex mean = b.trace() / static_cast<double>(n);
        if ((b - mean * Operator::Identity(n, n)).norm() <= 1e-14 * b.norm()) {
            continue;
        }
        Eigen::MatrixXcd m(n2, k);
        for (Eigen::Index c = 0; c < k; ++c) {
            const Operator &x = xs[static_cast<std::size_t>(c)];
            m.col(c) = vectorize(x * b - b * x);
        }
        pending_rows += n2;
        pending.push_back(std::move(m));
        if (pending_rows >= batch_rows) {
            flush();
        }
    }
    flush();
    if (r.rows() == 0) {
        return Eigen::MatrixXcd::Identity(k, k);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    double ref = std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < k; ++c) {
        double s = c < sv.size() ? sv(c) : 0.0;
        if (s <= cutoff * ref) {
            keep.push_back(c);
        }
    }
    Eigen::MatrixXcd out(k, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        out.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(keep[c]);
    }
    return out;
}

inline std::vector<Operator> combine(const std::vector<Operator> &xs, const Eigen::MatrixXcd &coeffs) {
    std::vector<Operator> out;
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j) {
        Operator y = zero_operator(static_cast<std::size_t>(xs.front().rows()));
        for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
            if (coeffs(i, j) != Complex(0.0, 0.0)) {
                y += coeffs(i, j) * xs[static_cast<std::size_t>(i)];
            }
        }
        out.push_back(std::move(y));
    }
    return out;
}

// Loose cutoff for the screening pass; it only has to keep a superset.
inline constexpr double kScreeningCutoff = 1e-6;
inline constexpr std::size_t kScreeningElements = 4;

}  // namespace detail

/// {X : XB = BX for all B in A}.
///
/// Anything commuting with A commutes with a generic Hermitian H in A, so the
/// search starts from operators block diagonal in the eigenspaces of H. A
/// screening pass against a few random elements of A narrows the candidates;
/// the final null space is that of the commutator map stacked over the whole
/// basis of A.
inline OperatorSpace commutant(const OperatorSpace &a, const Tolerances &tol = {}) {
    detail::require_unital_dagger_closed(a, tol, "commutant");
    std::size_t n = a.ambient_dim();
    Rng rng(detail::kCommutantSeed);
    Operator h = random_hermitian_element(a, rng);
    std::vector<Operator> candidates;
    for (const auto &c : spectral_clusters(h, tol.eigen_cluster_gap)) {
        for (Eigen::Index j = 0; j < c.vectors.cols(); ++j) {
            for (Eigen::Index i = 0; i < c.vectors.cols(); ++i) {
                candidates.push_back(c.vectors.col(i) * c.vectors.col(j).adjoint());
            }
        }
    }
    std::vector<Operator> screen;
    for (std::size_t k = 0; k < detail::kScreeningElements; ++k) {
        screen.push_back(random_element(a, rng));
    }
    Eigen::MatrixXcd c1 = detail::commutator_null_space(candidates, screen, detail::kScreeningCutoff);
    std::vector<Operator> reduced = detail::combine(candidates, c1);
    std::vector<Operator> result;
    if (!reduced.empty()) {
        Eigen::MatrixXcd c2 = detail::commutator_null_space(reduced, a.basis(), tol.commutant_cutoff);
        result = detail::combine(reduced, c2);
    }
    auto n2 = static_cast<Eigen::Index>(n * n);
    Eigen::MatrixXcd columns(n2, static_cast<Eigen::Index>(result.size()));
    for (std::size_t j = 0; j < result.size(); ++j) {
        columns.col(static_cast<Eigen::Index>(j)) = vectorize(result[j]);
    }
    return OperatorSpace::from_orthonormal_columns(n, std::move(columns));
}

/// Z(A) = A intersect commutant(A).
inline OperatorSpace center(const OperatorSpace &a, const Tolerances &tol = {}) {
    return intersection(a, commutant(a, tol), tol);
}

/// One summand Mat(C) (x) I_Z of a decomposition. Column c * d_Z + z of the
/// isometry is the basis vector |c> (x) |z>.
struct DecompositionBlock {
    Eigen::MatrixXcd isometry;
    std::size_t d_c = 0;
    std::size_t d_z = 0;
};

struct AlgebraDecomposition {
    std::size_t ambient_dim = 0;
    std::vector<DecompositionBlock> blocks;
    /// Seed of the draw that passed verification.
    std::uint64_t seed = 0;
    std::size_t attempts = 0;
    double residual = 0.0;
};

class DecompositionError : public std::runtime_error {
   public:
    DecompositionError(const std::string &what, double worst_residual)
        : std::runtime_error(what), worst_residual_(worst_residual) {
    }

    double worst_residual() const {
        return worst_residual_;
    }

   private:
    double worst_residual_;
};

/// Largest violation of the block form: |W_i^dagger A W_j| for i != j,
/// |W_i^dagger A W_i - M (x) I| on the diagonal, for A over the basis of the
/// algebra, together with the isometry and completeness defects.
inline double verify_decomposition(const AlgebraDecomposition &dec, const OperatorSpace &a) {
    std::size_t n = a.ambient_dim();
    double worst = 0.0;
    std::size_t total = 0;
    for (const auto &b : dec.blocks) {
        total += b.d_c * b.d_z;
        if (static_cast<std::size_t>(b.isometry.cols()) != b.d_c * b.d_z ||
            static_cast<std::size_t>(b.isometry.rows()) != n) {
            return std::numeric_limits<double>::infinity();
        }
    }
    if (total != n) {
        return std::numeric_limits<double>::infinity();
    }
    Eigen::MatrixXcd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::Index col = 0;
    for (const auto &b : dec.blocks) {
        w.middleCols(col, b.isometry.cols()) = b.isometry;
        col += b.isometry.cols();
    }
    worst = std::max(worst, (w.adjoint() * w - Eigen::MatrixXcd::Identity(w.cols(), w.cols())).cwiseAbs().maxCoeff());
    for (const auto &op : a.basis()) {
        Eigen::MatrixXcd full = w.adjoint() * op * w;
        Eigen::Index r0 = 0;
        for (const auto &bi : dec.blocks) {
            auto ri = bi.isometry.cols();
            Eigen::Index c0 = 0;
            for (const auto &bj : dec.blocks) {
                auto cj = bj.isometry.cols();
                auto blk = full.block(r0, c0, ri, cj);
                if (&bi != &bj) {
                    worst = std::max(worst, blk.norm());
                } else {
                    auto dc = static_cast<Eigen::Index>(bi.d_c);
                    auto dz = static_cast<Eigen::Index>(bi.d_z);
                    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dc, dc);
                    for (Eigen::Index c = 0; c < dc; ++c) {
                        for (Eigen::Index cp = 0; cp < dc; ++cp) {
                            for (Eigen::Index z = 0; z < dz; ++z) {
                                m(c, cp) += blk(c * dz + z, cp * dz + z);
                            }
                        }
                    }
                    m /= static_cast<double>(dz);
                    Eigen::MatrixXcd model = kron(m, identity(bi.d_z));
                    worst = std::max(worst, (blk - model).norm());
                }
                c0 += cj;
            }
            r0 += ri;
        }
    }
    return worst;
}

namespace detail {

/// Orthonormal columns X (X^dagger X)^{-1/2}.
inline Eigen::MatrixXcd polar_orthonormalize(const Eigen::MatrixXcd &x) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(x.adjoint() * x);
    Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    return x * es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
}

struct DecomposeAttempt {
    AlgebraDecomposition dec;
    double residual = std::numeric_limits<double>::infinity();
    std::string failure;
};

inline std::size_t smallest_support_index(const Eigen::MatrixXcd &w) {
    Eigen::VectorXd weight = w.rowwise().squaredNorm();
    for (Eigen::Index i = 0; i < weight.size(); ++i) {
        if (weight(i) > 1e-8) {
            return static_cast<std::size_t>(i);
        }
    }
    return static_cast<std::size_t>(weight.size());
}

inline DecomposeAttempt decompose_once(
    const OperatorSpace &a, const OperatorSpace &comm, const OperatorSpace &cent, std::uint64_t seed,
    const Tolerances &tol) {
    DecomposeAttempt out;
    std::size_t n = a.ambient_dim();
    Rng rng(seed);
    out.dec.ambient_dim = n;

    auto supports = spectral_clusters(random_hermitian_element(cent, rng), tol.eigen_cluster_gap);
    if (supports.size() != cent.rank()) {
        out.failure = "central element split into " + std::to_string(supports.size()) + " eigenspaces, expected " +
                      std::to_string(cent.rank());
        return out;
    }
    Operator k_herm = random_hermitian_element(comm, rng);
    Operator k_gen = random_element(comm, rng);
    for (const auto &support : supports) {
        const Eigen::MatrixXcd &q = support.vectors;
        Eigen::MatrixXcd local = q.adjoint() * k_herm * q;
        auto copies = spectral_clusters(local, tol.eigen_cluster_gap);
        std::size_t d_z = copies.size();
        auto d_c = static_cast<std::size_t>(copies.front().vectors.cols());
        for (const auto &c : copies) {
            if (static_cast<std::size_t>(c.vectors.cols()) != d_c) {
                out.failure = "commutant element has unequal eigenspace multiplicities within a block";
                return out;
            }
        }
        std::vector<Eigen::MatrixXcd> proj;
        for (const auto &c : copies) {
            proj.push_back(q * c.vectors);
        }
        // Copy z is reached from copy 0 through Pi_z K Pi_0, which intertwines
        // the action of A on the two copies.
        Eigen::MatrixXcd w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d_c * d_z));
        for (std::size_t z = 0; z < d_z; ++z) {
            Eigen::MatrixXcd g;
            if (z == 0) {
                g = proj[0];
            } else {
                g = proj[z] * (proj[z].adjoint() * k_gen * proj[0]);
                g = polar_orthonormalize(g);
            }
            for (std::size_t c = 0; c < d_c; ++c) {
                w.col(static_cast<Eigen::Index>(c * d_z + z)) = g.col(static_cast<Eigen::Index>(c));
            }
        }
        out.dec.blocks.push_back(DecompositionBlock{std::move(w), d_c, d_z});
    }
    std::stable_sort(out.dec.blocks.begin(), out.dec.blocks.end(), [](const auto &x, const auto &y) {
        return std::make_tuple(y.d_c, y.d_z, smallest_support_index(x.isometry)) <
               std::make_tuple(x.d_c, x.d_z, smallest_support_index(y.isometry));
    });
    out.residual = verify_decomposition(out.dec, a);
    out.dec.residual = out.residual;
    if (!(out.residual <= tol.decomposition)) {
        out.failure = "block-form residual " + std::to_string(out.residual) + " exceeds tolerance";
    }
    return out;
}

inline constexpr std::size_t kDecomposeRetries = 5;

}  // namespace detail

/// Decomposition A = sum_i W_i (Mat(C_i) (x) I_{Z_i}) W_i^dagger of a unital,
/// dagger-closed, product-closed algebra.
///
/// Block supports are the eigenspaces of a random central element; within a
/// block the eigenspaces of a random commutant element are the copies of
/// C_i, aligned with one another through a random element of the commutant.
/// Each draw is verified; seeds seed, seed+1, ..., seed+5 are tried in turn.
inline AlgebraDecomposition decompose(const OperatorSpace &a, std::uint64_t seed, const Tolerances &tol = {}) {
    detail::require_unital_dagger_closed(a, tol, "decompose");
    if (!detail::sampled_product_closed(a, tol)) {
        throw std::invalid_argument("decompose: the operator space is not closed under products; use full_algebra first");
    }
    OperatorSpace comm = commutant(a, tol);
    OperatorSpace cent = intersection(a, comm, tol);
    double worst = 0.0;
    std::string last_failure;
    for (std::size_t k = 0; k <= detail::kDecomposeRetries; ++k) {
        auto attempt = detail::decompose_once(a, comm, cent, seed + k, tol);
        if (attempt.failure.empty()) {
            attempt.dec.seed = seed + k;
            attempt.dec.attempts = k + 1;
            return std::move(attempt.dec);
        }
        last_failure = attempt.failure;
        if (std::isfinite(attempt.residual)) {
            worst = std::max(worst, attempt.residual);
        } else {
            worst = std::numeric_limits<double>::infinity();
        }
    }
    throw DecompositionError(
        "decompose: verification failed after " + std::to_string(detail::kDecomposeRetries + 1) +
            " draws (last: " + last_failure + ")",
        worst);
}

/// Z factor of one block: immune to every element of the algebra.
struct NoiselessSubsystem {
    std::size_t block = 0;
    std::size_t d_c = 0;
    std::size_t d_z = 0;
    /// d_C = 1: the block is a noiseless subspace.
    bool is_subspace = false;
    /// N x d_Z columns W(|0> (x) |z>).
    Eigen::MatrixXcd logical_isometry;
    /// W (I (x) |z><z'|) W^dagger for all z, z'; they span the commutant
    /// restricted to the block.
    std::vector<Operator> observables;
};

inline std::vector<NoiselessSubsystem> noiseless_subsystems(const AlgebraDecomposition &dec) {
    std::vector<NoiselessSubsystem> out;
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        const auto &b = dec.blocks[i];
        if (b.d_z < 2) {
            continue;
        }
        NoiselessSubsystem s;
        s.block = i;
        s.d_c = b.d_c;
        s.d_z = b.d_z;
        s.is_subspace = b.d_c == 1;
        auto dz = static_cast<Eigen::Index>(b.d_z);
        s.logical_isometry = b.isometry.leftCols(dz);
        for (Eigen::Index z = 0; z < dz; ++z) {
            for (Eigen::Index zp = 0; zp < dz; ++zp) {
                Operator o = zero_operator(dec.ambient_dim);
                for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(b.d_c); ++c) {
                    o += b.isometry.col(c * dz + z) * b.isometry.col(c * dz + zp).adjoint();
                }
                s.observables.push_back(std::move(o));
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Reduced state on the Z factor of block `block` of a state rho: the partial
/// trace over C of W^dagger rho W.
inline Operator subsystem_state(const DecompositionBlock &block, const Operator &rho) {
    Eigen::MatrixXcd r = block.isometry.adjoint() * rho * block.isometry;
    auto dc = static_cast<Eigen::Index>(block.d_c);
    auto dz = static_cast<Eigen::Index>(block.d_z);
    Operator out = Operator::Zero(dz, dz);
    for (Eigen::Index c = 0; c < dc; ++c) {
        out += r.block(c * dz, c * dz, dz, dz);
    }
    return out;
}

}  // namespace gqec
