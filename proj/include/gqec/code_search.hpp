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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqec/codes.hpp"
#include "gqec/operator.hpp"
#include "gqec/operator_space.hpp"
#include "gqec/simplex.hpp"
#include "gqec/tolerances.hpp"

namespace gqec {

namespace detail {

inline constexpr std::size_t kGreedyRetries = 5;
// A projected random vector shorter than this has hit the constraint span.
inline constexpr double kGreedyMinResidual = 1e-6;

}  // namespace detail

/// c-code built one codeword at a time: each new codeword is a seeded random
/// vector projected off span{E_i c_j, E_i^dagger c_j} and normalized. The
/// loop runs until no such vector remains.
inline Code greedy_c_code(const OperatorSpace &e, std::size_t n, std::uint64_t seed, const Tolerances &tol = {}) {
    if (e.ambient_dim() != n) {
        throw std::invalid_argument("greedy_c_code: error space dimension does not match N");
    }
    if (!contains(e, identity(n), tol)) {
        throw std::invalid_argument("greedy_c_code: the error space must contain the identity");
    }
    Rng rng(seed);
    detail::IncrementalBasis used(n, tol.rank_cutoff);
    std::vector<StateVector> words;
    while (used.rank() < n) {
        std::optional<StateVector> next;
        for (std::size_t attempt = 0; attempt < detail::kGreedyRetries && !next; ++attempt) {
            StateVector v = rng.unit_vector(n);
            const auto &q = used.basis();
            if (q.cols() > 0) {
                v -= q * (q.adjoint() * v);
                v -= q * (q.adjoint() * v);
            }
            double r = v.norm();
            if (r > detail::kGreedyMinResidual) {
                next = v / r;
            }
        }
        if (!next) {
            break;
        }
        Eigen::MatrixXcd images(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(2 * e.rank()));
        for (std::size_t i = 0; i < e.rank(); ++i) {
            images.col(static_cast<Eigen::Index>(2 * i)) = e.element(i) * *next;
            images.col(static_cast<Eigen::Index>(2 * i + 1)) = e.element(i).adjoint() * *next;
        }
        used.add(images);
        words.push_back(*next);
    }
    return code_from_codewords(words, tol);
}

/// Hermitian operator basis {I, H_2, ..., H_D'} of a space E: I first, then
/// an orthonormal basis (real inner product Re tr(AB)) of the traceless parts
/// of the Hermitian and anti-Hermitian parts of the elements of E.
inline std::vector<Operator> hermitian_frame(const OperatorSpace &e, const Tolerances &tol = {}) {
    std::size_t n = e.ambient_dim();
    auto n2 = static_cast<Eigen::Index>(n * n);
    std::vector<Operator> parts;
    for (const auto &b : e.basis()) {
        parts.push_back(0.5 * (b + b.adjoint()));
        parts.push_back(Complex(0.0, -0.5) * (b - b.adjoint()));
    }
    Eigen::MatrixXd stack(2 * n2, static_cast<Eigen::Index>(parts.size()));
    for (std::size_t j = 0; j < parts.size(); ++j) {
        Operator h = parts[j];
        h -= (h.trace() / static_cast<double>(n)) * identity(n);
        Eigen::VectorXcd v = vectorize(h);
        stack.col(static_cast<Eigen::Index>(j)) << v.real(), v.imag();
    }
    std::vector<Operator> frame{identity(n)};
    if (stack.cols() == 0 || stack.norm() == 0.0) {
        return frame;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stack);
    const auto &r = qr.matrixQR();
    Eigen::Index diag = std::min(r.rows(), r.cols());
    double top = std::abs(r(0, 0));
    Eigen::Index keep = 0;
    while (keep < diag && std::abs(r(keep, keep)) > tol.rank_cutoff * top) {
        ++keep;
    }
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(stack.rows(), keep);
    q.applyOnTheLeft(qr.householderQ());
    for (Eigen::Index j = 0; j < keep; ++j) {
        Eigen::VectorXcd v(n2);
        v.real() = q.col(j).head(n2);
        v.imag() = q.col(j).tail(n2);
        Operator h = unvectorize(v, n);
        frame.push_back(0.5 * (h + h.adjoint()));
    }
    return frame;
}

/// Real coordinates alpha_{j,l} = <c_j|H_l|c_j> of codeword j in a Hermitian
/// frame; the first coordinate (H_1 = I) is 1.
struct AlphaVector {
    std::size_t index = 0;
    Eigen::VectorXd coords;
};

inline std::vector<AlphaVector> alpha_vectors(const Code &code, const OperatorSpace &e, const Tolerances &tol = {}) {
    if (!code.transmission_basis) {
        throw std::invalid_argument("alpha_vectors: the code has no transmission basis");
    }
    auto frame = hermitian_frame(e, tol);
    std::vector<AlphaVector> out;
    const auto &words = *code.transmission_basis;
    for (std::size_t j = 0; j < words.size(); ++j) {
        AlphaVector a;
        a.index = j;
        a.coords.resize(static_cast<Eigen::Index>(frame.size()));
        for (std::size_t l = 0; l < frame.size(); ++l) {
            a.coords(static_cast<Eigen::Index>(l)) = words[j].dot(frame[l] * words[j]).real();
        }
        out.push_back(std::move(a));
    }
    return out;
}

/// Disjoint subsets Y_i of the points with weights beta_{i,j} >= 0,
/// sum_j beta_{i,j} = 1, and a common point gamma = sum_j beta_{i,j} alpha_j.
struct PartitionCertificate {
    /// Indices into the point list, per subset.
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::vector<double>> weights;
    Eigen::VectorXd gamma;
    double residual = 0.0;
};

enum class PartitionStatus { feasible, infeasible, cap_exhausted };

inline const char *to_string(PartitionStatus s) {
    switch (s) {
        case PartitionStatus::feasible:
            return "feasible";
        case PartitionStatus::infeasible:
            return "infeasible";
        case PartitionStatus::cap_exhausted:
            return "cap_exhausted";
    }
    return "?";
}

struct PartitionOptions {
    /// Candidate partitions tested before giving up with cap_exhausted.
    std::size_t max_candidates = 1000000;
    /// Largest subset size considered; 0 means unrestricted.
    std::size_t max_subset_size = 0;
};

struct PartitionResult {
    PartitionStatus status = PartitionStatus::infeasible;
    std::optional<PartitionCertificate> certificate;
    std::size_t candidates_tested = 0;
};

namespace detail {

/// LP feasibility for one candidate partition, re-verified in double.
inline std::optional<PartitionCertificate> test_partition(
    const std::vector<AlphaVector> &points, const std::vector<std::vector<std::size_t>> &subsets,
    const Tolerances &tol) {
    std::size_t r = subsets.size();
    auto dim = static_cast<std::size_t>(points.front().coords.size());
    std::size_t vars = 0;
    for (const auto &s : subsets) {
        vars += s.size();
    }
    std::size_t rows = r + (r - 1) * dim;
    FeasibilityLp lp(rows, vars);
    std::vector<std::size_t> offset(r, 0);
    for (std::size_t i = 1; i < r; ++i) {
        offset[i] = offset[i - 1] + subsets[i - 1].size();
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < subsets[i].size(); ++j) {
            lp.set(i, offset[i] + j, 1);
        }
        lp.set_rhs(i, 1);
    }
    // sum_{Y_i} beta alpha - sum_{Y_0} beta alpha = 0, coordinate by coordinate.
    for (std::size_t i = 1; i < r; ++i) {
        for (std::size_t l = 0; l < dim; ++l) {
            std::size_t row = r + (i - 1) * dim + l;
            for (std::size_t j = 0; j < subsets[i].size(); ++j) {
                lp.set(row, offset[i] + j, points[subsets[i][j]].coords(static_cast<Eigen::Index>(l)));
            }
            for (std::size_t j = 0; j < subsets[0].size(); ++j) {
                lp.set(row, offset[0] + j, -points[subsets[0][j]].coords(static_cast<Eigen::Index>(l)));
            }
        }
    }
    auto x = lp.solve();
    if (!x) {
        return std::nullopt;
    }
    PartitionCertificate cert;
    cert.subsets = subsets;
    cert.weights.resize(r);
    double residual = 0.0;
    std::vector<Eigen::VectorXd> centers(r, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim)));
    for (std::size_t i = 0; i < r; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < subsets[i].size(); ++j) {
            double w = static_cast<double>((*x)[offset[i] + j]);
            cert.weights[i].push_back(w);
            sum += w;
            centers[i] += w * points[subsets[i][j]].coords;
        }
        residual = std::max(residual, std::abs(sum - 1.0));
    }
    cert.gamma = centers[0];
    for (std::size_t i = 1; i < r; ++i) {
        residual = std::max(residual, (centers[i] - centers[0]).cwiseAbs().maxCoeff());
    }
    cert.residual = residual;
    if (residual > tol.certificate) {
        return std::nullopt;
    }
    return cert;
}

/// Advances `idx` to the next k-combination of {0..n-1} in lexicographic
/// order; false after the last.
inline bool next_combination(std::vector<std::size_t> &idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

/// Advances a restricted-growth string to the next one (lexicographic) that
/// uses exactly `blocks` labels; false after the last.
inline bool next_rgs(std::vector<std::size_t> &a, std::size_t blocks) {
    std::size_t m = a.size();
    while (true) {
        // Increment the rightmost position that can grow.
        std::size_t i = m;
        bool advanced = false;
        while (i-- > 1) {
            std::size_t prefix_max = 0;
            for (std::size_t j = 0; j < i; ++j) {
                prefix_max = std::max(prefix_max, a[j]);
            }
            if (a[i] <= prefix_max && a[i] + 1 < blocks) {
                ++a[i];
                std::fill(a.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.end(), 0);
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            return false;
        }
        std::size_t used = *std::max_element(a.begin(), a.end()) + 1;
        if (used == blocks) {
            return true;
        }
    }
}

}  // namespace detail

/// First partition, in a fixed order, of some of the points into r_target
/// disjoint nonempty subsets whose convex hulls share a point.
///
/// Order: by the number of points used (r_target up to all), then by the
/// lexicographic combination of point indices, then by the restricted-growth
/// string assigning the chosen points to subsets (labels in order of first
/// appearance). Each candidate is an LP feasibility problem.
inline PartitionResult convex_partition(
    const std::vector<AlphaVector> &points, std::size_t r_target, const PartitionOptions &opts = {},
    const Tolerances &tol = {}) {
    if (r_target < 1) {
        throw std::invalid_argument("convex_partition: r_target must be at least 1");
    }
    PartitionResult result;
    std::size_t n = points.size();
    if (n < r_target) {
        return result;
    }
    for (const auto &p : points) {
        if (p.coords.size() != points.front().coords.size() || !p.coords.allFinite()) {
            throw std::invalid_argument("convex_partition: points must be finite and of equal dimension");
        }
    }
    std::size_t cap_size = opts.max_subset_size == 0 ? n : opts.max_subset_size;
    for (std::size_t m = r_target; m <= std::min(n, r_target * cap_size); ++m) {
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) {
            idx[i] = i;
        }
        do {
            // First string with exactly r_target labels: 0..0 1 2 ... r-1.
            std::vector<std::size_t> rgs(m, 0);
            for (std::size_t b = 1; b < r_target; ++b) {
                rgs[m - r_target + b] = b;
            }
            do {
                std::vector<std::vector<std::size_t>> subsets(r_target);
                for (std::size_t i = 0; i < m; ++i) {
                    subsets[rgs[i]].push_back(idx[i]);
                }
                bool sizes_ok = true;
                for (const auto &s : subsets) {
                    sizes_ok = sizes_ok && s.size() <= cap_size;
                }
                if (!sizes_ok) {
                    continue;
                }
                if (result.candidates_tested >= opts.max_candidates) {
                    result.status = PartitionStatus::cap_exhausted;
                    return result;
                }
                ++result.candidates_tested;
                if (auto cert = detail::test_partition(points, subsets, tol)) {
                    result.status = PartitionStatus::feasible;
                    result.certificate = std::move(cert);
                    return result;
                }
            } while (detail::next_rgs(rgs, r_target));
        } while (detail::next_combination(idx, n));
    }
    return result;
}

/// Largest r with r (D + 1) - D <= ceil(N / D), at least 1.
inline std::size_t tverberg_bound(std::size_t n, std::size_t d) {
    if (n == 0 || d == 0) {
        throw std::invalid_argument("tverberg_bound: N and D must be positive");
    }
    std::size_t points = (n + d - 1) / d;
    // r (D + 1) - D <= points  <=>  r <= (points + D) / (D + 1).
    return std::max<std::size_t>(1, (points + d) / (d + 1));
}

/// Largest r whose Tverberg count r (D + 1) - D does not exceed `points`.
inline std::size_t tverberg_r_for_points(std::size_t points, std::size_t d) {
    return std::max<std::size_t>(1, (points + d) / (d + 1));
}

/// Largest deviation of <q_i|E|q_j> from gamma_E delta_ij over the basis of E.
inline double quantum_code_residual(const Code &code, const OperatorSpace &e) {
    const auto &v = code.isometry;
    auto k = v.cols();
    double worst = 0.0;
    for (const auto &op : e.basis()) {
        Eigen::MatrixXcd m = v.adjoint() * op * v;
        Complex g = m.trace() / static_cast<double>(k);
        worst = std::max(worst, (m - g * Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Code spanned by |q_i> = sum_{j in Y_i} sqrt(beta_{i,j}) |c_j>, verified
/// directly against every basis element of E.
inline Code quantum_code_from_c_code(
    const Code &ccode, const PartitionCertificate &cert, const OperatorSpace &e, const Tolerances &tol = {}) {
    if (!ccode.transmission_basis) {
        throw std::invalid_argument("quantum_code_from_c_code: the c-code has no transmission basis");
    }
    if (cert.residual > tol.certificate) {
        throw std::invalid_argument("quantum_code_from_c_code: certificate residual exceeds tolerance");
    }
    const auto &words = *ccode.transmission_basis;
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(ccode.isometry.rows(), static_cast<Eigen::Index>(cert.subsets.size()));
    for (std::size_t i = 0; i < cert.subsets.size(); ++i) {
        for (std::size_t j = 0; j < cert.subsets[i].size(); ++j) {
            double w = std::max(cert.weights[i][j], 0.0);
            v.col(static_cast<Eigen::Index>(i)) += std::sqrt(w) * words.at(cert.subsets[i][j]);
        }
        double norm = v.col(static_cast<Eigen::Index>(i)).norm();
        if (!(norm > 0.0)) {
            throw std::invalid_argument("quantum_code_from_c_code: empty subset");
        }
        v.col(static_cast<Eigen::Index>(i)) /= norm;
    }
    Code q{v, std::nullopt};
    validate(q, tol);
    double residual = quantum_code_residual(q, e);
    if (residual > tol.certificate) {
        throw std::runtime_error(
            "quantum_code_from_c_code: <q_i|E|q_j> deviates from gamma delta_ij by " + std::to_string(residual));
    }
    return q;
}

/// End-to-end search: greedy c-code, alpha vectors, partition at the
/// Tverberg count of the codewords found, quantum code.
struct QuantumSearchReport {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t ceil_n_over_d = 0;
    std::size_t tverberg_r = 0;
    std::size_t c_code_dim = 0;
    std::size_t r_target = 0;
    PartitionResult partition;
    std::optional<Code> code;
    double residual = 0.0;

    std::size_t achieved_dim() const {
        return code ? code->logical_dim() : 0;
    }
};

inline QuantumSearchReport search_quantum_code(
    const OperatorSpace &e, std::size_t n, std::uint64_t seed, const PartitionOptions &opts = {},
    std::optional<std::size_t> r_target = std::nullopt, const Tolerances &tol = {}) {
    QuantumSearchReport rep;
    rep.n = n;
    rep.d = e.rank();
    rep.ceil_n_over_d = (n + rep.d - 1) / rep.d;
    rep.tverberg_r = tverberg_bound(n, rep.d);
    Code ccode = greedy_c_code(e, n, seed, tol);
    rep.c_code_dim = ccode.logical_dim();
    rep.r_target = r_target.value_or(tverberg_r_for_points(rep.c_code_dim, rep.d));
    auto points = alpha_vectors(ccode, e, tol);
    rep.partition = convex_partition(points, rep.r_target, opts, tol);
    if (rep.partition.certificate) {
        rep.code = quantum_code_from_c_code(ccode, *rep.partition.certificate, e, tol);
        rep.residual = quantum_code_residual(*rep.code, e);
    }
    return rep;
}

}  // namespace gqec
