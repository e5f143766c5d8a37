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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gqec/graded_algebra.hpp"
#include "gqec/operator.hpp"
#include "gqec/operator_space.hpp"
#include "gqec/structure.hpp"
#include "gqec/tolerances.hpp"

namespace gqec {

/// A K-dimensional subspace of the N-dimensional system, held as an N x K
/// isometry V. A c-code also carries a transmission basis of K orthonormal
/// codewords spanning the same subspace.
struct Code {
    Eigen::MatrixXcd isometry;
    std::optional<std::vector<StateVector>> transmission_basis;

    std::size_t system_dim() const {
        return static_cast<std::size_t>(isometry.rows());
    }

    std::size_t logical_dim() const {
        return static_cast<std::size_t>(isometry.cols());
    }

    Operator projector() const {
        return isometry * isometry.adjoint();
    }

    /// Codewords as columns (the transmission basis when present).
    Eigen::MatrixXcd codeword_matrix() const {
        if (!transmission_basis) {
            return isometry;
        }
        Eigen::MatrixXcd t(isometry.rows(), static_cast<Eigen::Index>(transmission_basis->size()));
        for (std::size_t j = 0; j < transmission_basis->size(); ++j) {
            t.col(static_cast<Eigen::Index>(j)) = (*transmission_basis)[j];
        }
        return t;
    }
};

inline void validate(const Code &code, const Tolerances &tol = {}) {
    const auto &v = code.isometry;
    if (v.rows() == 0 || v.cols() == 0 || v.cols() > v.rows()) {
        throw std::invalid_argument("code isometry must be N x K with 1 <= K <= N");
    }
    if (!v.allFinite()) {
        throw std::invalid_argument("code isometry entries must be finite");
    }
    double defect = (v.adjoint() * v - Eigen::MatrixXcd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
    if (defect > tol.isometry) {
        throw std::invalid_argument("code isometry columns are not orthonormal (defect " + std::to_string(defect) + ")");
    }
    if (code.transmission_basis) {
        const auto &tb = *code.transmission_basis;
        if (tb.size() != code.logical_dim()) {
            throw std::invalid_argument("transmission basis must have K codewords");
        }
        Eigen::MatrixXcd t = code.codeword_matrix();
        if (t.rows() != v.rows()) {
            throw std::invalid_argument("transmission codewords have the wrong length");
        }
        double ortho = (t.adjoint() * t - Eigen::MatrixXcd::Identity(t.cols(), t.cols())).cwiseAbs().maxCoeff();
        double inside = (t - v * (v.adjoint() * t)).norm();
        if (ortho > tol.isometry || inside > tol.containment * (1.0 + t.norm())) {
            throw std::invalid_argument("transmission basis must be an orthonormal basis of the code");
        }
    }
}

/// Code spanned by orthonormal columns.
inline Code code_from_isometry(Eigen::MatrixXcd v, const Tolerances &tol = {}) {
    Code c{std::move(v), std::nullopt};
    validate(c, tol);
    return c;
}

/// c-code whose transmission basis is the given orthonormal codewords.
inline Code code_from_codewords(const std::vector<StateVector> &words, const Tolerances &tol = {}) {
    if (words.empty()) {
        throw std::invalid_argument("code_from_codewords: no codewords");
    }
    Eigen::MatrixXcd v(words.front().size(), static_cast<Eigen::Index>(words.size()));
    for (std::size_t j = 0; j < words.size(); ++j) {
        if (words[j].size() != v.rows()) {
            throw std::invalid_argument("code_from_codewords: codewords differ in length");
        }
        v.col(static_cast<Eigen::Index>(j)) = words[j];
    }
    Code c{v, words};
    validate(c, tol);
    return c;
}

/// Outcome of the detection test Pi E Pi = alpha Pi.
struct Detection {
    bool detected = false;
    Complex alpha{0.0, 0.0};
    /// |Pi E Pi - alpha Pi|_HS.
    double residual = 0.0;
};

namespace detail {

inline void require_code_dim(const Code &code, const Operator &e, const char *what) {
    if (static_cast<std::size_t>(e.rows()) != code.system_dim() || e.rows() != e.cols()) {
        throw std::invalid_argument(std::string(what) + ": operator dimension does not match the code");
    }
}

/// Detection from the compression V^dagger E V; `e_norm` is |E|_HS.
inline Detection detection_from_compression(const Eigen::MatrixXcd &m, double e_norm, const Tolerances &tol) {
    auto k = m.rows();
    Detection d;
    d.alpha = m.trace() / static_cast<double>(k);
    d.residual = (m - d.alpha * Eigen::MatrixXcd::Identity(k, k)).norm();
    d.detected = d.residual <= tol.detection * (1.0 + e_norm);
    return d;
}

}  // namespace detail

/// Pi E Pi = alpha_E Pi with alpha_E = tr(Pi E Pi) / K.
inline Detection detects(const Code &code, const Operator &e, const Tolerances &tol = {}) {
    detail::require_code_dim(code, e, "detects");
    const auto &v = code.isometry;
    return detail::detection_from_compression(v.adjoint() * e * v, hs_norm(e), tol);
}

struct CDetection {
    bool detected = false;
    /// Largest off-diagonal |<c_i|E|c_j>|.
    double residual = 0.0;
};

/// <c_i|E|c_j> = 0 for i != j in the transmission basis.
inline CDetection c_detects(const Code &code, const Operator &e, const Tolerances &tol = {}) {
    detail::require_code_dim(code, e, "c_detects");
    if (!code.transmission_basis) {
        throw std::invalid_argument("c_detects: the code has no transmission basis");
    }
    Eigen::MatrixXcd t = code.codeword_matrix();
    Eigen::MatrixXcd m = t.adjoint() * e * t;
    CDetection out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j) {
                out.residual = std::max(out.residual, std::abs(m(i, j)));
            }
        }
    }
    out.detected = out.residual <= tol.detection * (1.0 + hs_norm(e));
    return out;
}

/// A code distance; infinite when every error of the saturated algebra is
/// detected.
struct Distance {
    bool infinite = false;
    std::size_t value = 0;

    static Distance finite(std::size_t d) {
        return Distance{false, d};
    }

    static Distance unbounded() {
        return Distance{true, 0};
    }

    bool at_least(std::size_t d) const {
        return infinite || value >= d;
    }

    std::string str() const {
        return infinite ? std::string("inf") : std::to_string(value);
    }

    friend bool operator==(const Distance &a, const Distance &b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

/// Every basis element of S is detected, and the worst residual.
struct SpaceDetection {
    bool detected = true;
    double worst_residual = 0.0;
};

inline SpaceDetection detects_space(const Code &code, const OperatorSpace &s, const Tolerances &tol = {}) {
    SpaceDetection out;
    for (const auto &e : s.basis()) {
        auto d = detects(code, e, tol);
        out.worst_residual = std::max(out.worst_residual, d.residual);
        if (!d.detected) {
            out.detected = false;
            return out;
        }
    }
    return out;
}

namespace detail {

/// Largest d with pred(J_{d-1}); extends the grading as needed.
template <typename Pred>
Distance ascend_distance(GradedAlgebra &g, Pred pred, const Tolerances &tol) {
    for (std::size_t k = 1;; ++k) {
        if (k > g.max_degree()) {
            extend_grading(g, k, tol);
        }
        if (k > g.max_degree()) {
            // Saturated below degree k and every grade passed.
            return Distance::unbounded();
        }
        if (!pred(g.grades[k - 1])) {
            return Distance::finite(k);
        }
        if (g.saturated && k == g.max_degree()) {
            return Distance::unbounded();
        }
    }
}

}  // namespace detail

/// Largest d such that the code detects J_{d-1}. The grading is extended in
/// place; infinity is returned only once it saturates with every grade
/// detected.
inline Distance min_distance(const Code &code, GradedAlgebra &g, const Tolerances &tol = {}) {
    validate(code, tol);
    return detail::ascend_distance(
        g, [&](const OperatorSpace &s) { return detects_space(code, s, tol).detected; }, tol);
}

/// Compressions V^dagger E V of the basis elements of S commute pairwise.
/// When there are more compressions than K^2 the test runs over an
/// orthonormal basis of their span instead, which is equivalent by
/// bilinearity.
inline bool compressions_commute(const Code &code, const OperatorSpace &s, const Tolerances &tol = {}) {
    const auto &v = code.isometry;
    std::vector<Operator> comp;
    comp.reserve(s.rank());
    for (const auto &e : s.basis()) {
        comp.push_back(v.adjoint() * e * v);
    }
    std::size_t k = code.logical_dim();
    if (comp.size() > k * k) {
        comp = span(k, comp, tol).basis();
    }
    for (std::size_t i = 0; i < comp.size(); ++i) {
        for (std::size_t j = i + 1; j < comp.size(); ++j) {
            if (commutator(comp[i], comp[j]).norm() > tol.commutation) {
                return false;
            }
        }
    }
    return true;
}

/// Largest d such that the compressions of J_{d-1} commute pairwise.
inline Distance min_c_distance(const Code &code, GradedAlgebra &g, const Tolerances &tol = {}) {
    validate(code, tol);
    return detail::ascend_distance(
        g, [&](const OperatorSpace &s) { return compressions_commute(code, s, tol); }, tol);
}

/// Orthonormal codewords diagonalizing every compression of S at once.
///
/// The compressions commute and the family is closed under the adjoint, so
/// they are commuting normal matrices. Starting from the whole code, each
/// compression in basis order splits the current eigenspaces along the
/// spectra of its Hermitian and anti-Hermitian parts.
inline std::vector<StateVector> transmission_basis(const Code &code, const OperatorSpace &s, const Tolerances &tol = {}) {
    validate(code, tol);
    if (!compressions_commute(code, s, tol)) {
        throw std::invalid_argument("transmission_basis: compressions of the error space do not commute");
    }
    const auto &v = code.isometry;
    auto k = v.cols();
    std::vector<Eigen::MatrixXcd> spaces{Eigen::MatrixXcd::Identity(k, k)};
    auto refine = [&](const Eigen::MatrixXcd &h) {
        std::vector<Eigen::MatrixXcd> next;
        for (const auto &q : spaces) {
            if (q.cols() == 1) {
                next.push_back(q);
                continue;
            }
            Eigen::MatrixXcd local = q.adjoint() * h * q;
            for (const auto &c : spectral_clusters(local, tol.eigen_cluster_gap)) {
                next.push_back(q * c.vectors);
            }
        }
        spaces = std::move(next);
    };
    for (const auto &e : s.basis()) {
        Eigen::MatrixXcd m = v.adjoint() * e * v;
        refine(0.5 * (m + m.adjoint()));
        refine(Complex(0.0, -0.5) * (m - m.adjoint()));
    }
    std::vector<StateVector> out;
    for (const auto &q : spaces) {
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            out.push_back(v * q.col(j));
        }
    }
    return out;
}

/// Correctability test: the code detects E_k^dagger E_l for all pairs of
/// basis elements of Je, a spanning set of Je^dagger Je.
inline bool kl_correctable(const Code &code, const OperatorSpace &je, const Tolerances &tol = {}) {
    validate(code, tol);
    if (je.ambient_dim() != code.system_dim()) {
        throw std::invalid_argument("kl_correctable: error space dimension does not match the code");
    }
    const auto &v = code.isometry;
    std::vector<Eigen::MatrixXcd> ev;
    for (const auto &e : je.basis()) {
        ev.push_back(e * v);
    }
    for (std::size_t k = 0; k < ev.size(); ++k) {
        for (std::size_t l = 0; l < ev.size(); ++l) {
            Eigen::MatrixXcd m = ev[k].adjoint() * ev[l];
            auto d = detail::detection_from_compression(m, 0.0, tol);
            if (!d.detected) {
                // Retry with the exact |E_k^dagger E_l|_HS in the threshold.
                double e_norm = hs_norm(je.element(k).adjoint() * je.element(l));
                if (d.residual > tol.detection * (1.0 + e_norm)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// A family of Kraus operators rho -> sum_i A_i rho A_i^dagger.
struct QuantumOperation {
    std::vector<Operator> kraus;

    /// |sum_i A_i^dagger A_i - I|_HS.
    double completeness_defect() const {
        if (kraus.empty()) {
            return std::numeric_limits<double>::infinity();
        }
        auto n = kraus.front().cols();
        Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
        for (const auto &a : kraus) {
            s += a.adjoint() * a;
        }
        return (s - Eigen::MatrixXcd::Identity(n, n)).norm();
    }

    Operator apply(const Operator &rho) const {
        Operator out = Operator::Zero(kraus.front().rows(), kraus.front().rows());
        for (const auto &a : kraus) {
            out += a * rho * a.adjoint();
        }
        return out;
    }
};

/// Recovery for a code that corrects the given error space.
///
/// With beta_kl = tr(V^dagger E_k^dagger E_l V) / K diagonalized as
/// U diag(d) U^dagger, the errors F_m = sum_k U_km E_k map the code onto
/// mutually orthogonal subspaces F_m V. The Kraus element V V^dagger F_m^dagger
/// / sqrt(d_m) measures subspace m and rotates it back; the projector onto
/// the rest of the space completes the operation.
inline QuantumOperation build_recovery(const Code &code, const OperatorSpace &je, const Tolerances &tol = {}) {
    if (!kl_correctable(code, je, tol)) {
        throw std::invalid_argument("build_recovery: the code does not satisfy the correctability conditions");
    }
    const auto &v = code.isometry;
    auto r = static_cast<Eigen::Index>(je.rank());
    auto k = static_cast<double>(code.logical_dim());
    std::vector<Eigen::MatrixXcd> ev;
    for (const auto &e : je.basis()) {
        ev.push_back(e * v);
    }
    Eigen::MatrixXcd beta(r, r);
    for (Eigen::Index a = 0; a < r; ++a) {
        for (Eigen::Index b = 0; b < r; ++b) {
            beta(a, b) = (ev[static_cast<std::size_t>(a)].adjoint() * ev[static_cast<std::size_t>(b)]).trace() / k;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (beta + beta.adjoint()));
    const auto &dvals = es.eigenvalues();
    double top = dvals.size() > 0 ? dvals(dvals.size() - 1) : 0.0;
    std::size_t n = code.system_dim();
    QuantumOperation out;
    Operator covered = zero_operator(n);
    Operator pi = code.projector();
    for (Eigen::Index m = r - 1; m >= 0; --m) {
        if (!(dvals(m) > tol.rank_cutoff * top)) {
            continue;
        }
        Eigen::MatrixXcd fv = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), v.cols());
        for (Eigen::Index a = 0; a < r; ++a) {
            fv += es.eigenvectors()(a, m) * ev[static_cast<std::size_t>(a)];
        }
        double s = std::sqrt(dvals(m));
        // F_m V / sqrt(d_m) is an isometry onto the m-th error subspace.
        Eigen::MatrixXcd w = fv / s;
        out.kraus.push_back(v * w.adjoint());
        covered += w * w.adjoint();
    }
    Operator rest = identity(n) - covered;
    if (rest.norm() > tol.completeness) {
        out.kraus.push_back(rest);
    }
    return out;
}

/// Largest |R(E rho E^dagger) - tr(.) rho|_HS over the basis of Je and
/// seeded random logical pure states rho, for a recovery R.
inline double recovery_residual(
    const Code &code, const QuantumOperation &r, const OperatorSpace &je, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    const auto &v = code.isometry;
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        StateVector psi = v * rng.unit_vector(code.logical_dim());
        Operator rho = psi * psi.adjoint();
        for (const auto &e : je.basis()) {
            Operator out = r.apply(e * rho * e.adjoint());
            worst = std::max(worst, (out - out.trace() * rho).norm());
        }
    }
    return worst;
}

/// Outcome of the code-as-noiseless-subsystem check.
struct SubsystemCertificate {
    bool passed = false;
    bool identity_in_span = false;
    std::size_t algebra_rank = 0;
    /// Index of the block carrying the code, when found.
    std::optional<std::size_t> block;
    std::size_t d_c = 0;
    std::size_t d_z = 0;
    /// Worst trace distance observed in the preservation test.
    double worst_trace_distance = std::numeric_limits<double>::infinity();
    std::string message;
};

namespace detail {

inline constexpr std::size_t kSubsystemStateSamples = 10;
inline constexpr std::size_t kSubsystemErrorSamples = 10;

/// Linear map J with tr_C(W^dagger A(V rho V^dagger) W) = J rho J^dagger, from
/// the rank-one Choi matrix of the left side. Empty when the Choi matrix is
/// not rank one.
inline std::optional<Eigen::MatrixXcd> logical_embedding(
    const Code &code, const QuantumOperation &op, const DecompositionBlock &block, double tol) {
    auto k = static_cast<Eigen::Index>(code.logical_dim());
    auto dz = static_cast<Eigen::Index>(block.d_z);
    const auto &v = code.isometry;
    Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(k * dz, k * dz);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            Operator x = v.col(a) * v.col(b).adjoint();
            choi.block(a * dz, b * dz, dz, dz) = subsystem_state(block, op.apply(x));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (choi + choi.adjoint()));
    const auto &ev = es.eigenvalues();
    double top = ev(ev.size() - 1);
    if (!(top > tol)) {
        return std::nullopt;
    }
    double second = ev.size() > 1 ? std::max(std::abs(ev(ev.size() - 2)), std::abs(ev(0))) : 0.0;
    if (second > tol * top) {
        return std::nullopt;
    }
    Eigen::VectorXcd top_vec = es.eigenvectors().col(ev.size() - 1) * std::sqrt(top);
    Eigen::MatrixXcd j(dz, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        j.col(a) = top_vec.segment(a * dz, dz);
    }
    return j;
}

inline Operator normalized(const Operator &rho) {
    Complex t = rho.trace();
    return std::abs(t) > 0.0 ? Operator(rho / t) : rho;
}

}  // namespace detail

/// Checks that the code is a noiseless subsystem of the algebra generated by
/// the products E A_i, E in Je, A_i in the operation A:
///   (a) I lies in span{A_i^dagger A_j};
///   (b) the dagger-closed algebra generated by I and the E A_i has a block
///       with d_Z >= K on whose Z factor the logical state lands as
///       J rho J^dagger, and seeded random elements of the algebra and of Je
///       leave that Z-factor state unchanged up to normalization.
inline SubsystemCertificate verify_as_noiseless_subsystem(
    const Code &code, const QuantumOperation &a, const OperatorSpace &je, std::uint64_t seed,
    const Tolerances &tol = {}) {
    validate(code, tol);
    SubsystemCertificate cert;
    std::size_t n = code.system_dim();
    for (const auto &ai : a.kraus) {
        if (static_cast<std::size_t>(ai.rows()) != n || static_cast<std::size_t>(ai.cols()) != n) {
            throw std::invalid_argument("verify_as_noiseless_subsystem: operation elements must be N x N");
        }
    }
    if (je.ambient_dim() != n) {
        throw std::invalid_argument("verify_as_noiseless_subsystem: error space dimension does not match the code");
    }
    std::vector<Operator> pairs;
    for (const auto &x : a.kraus) {
        for (const auto &y : a.kraus) {
            pairs.push_back(x.adjoint() * y);
        }
    }
    cert.identity_in_span = contains(span(n, pairs, tol), identity(n), tol);
    if (!cert.identity_in_span) {
        cert.message = "identity is not in the span of A_i^dagger A_j";
        return cert;
    }

    std::vector<Operator> gens{identity(n)};
    for (const auto &e : je.basis()) {
        for (const auto &ai : a.kraus) {
            Operator g = e * ai;
            gens.push_back(g);
            gens.push_back(g.adjoint());
        }
    }
    OperatorSpace alg = full_algebra(span(n, gens, tol), tol).algebra;
    cert.algebra_rank = alg.rank();
    AlgebraDecomposition dec = decompose(alg, seed, tol);

    Rng rng(seed ^ 0x5AB5757EULL);
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
        const auto &block = dec.blocks[i];
        if (block.d_z < code.logical_dim()) {
            continue;
        }
        auto j = detail::logical_embedding(code, a, block, tol.subsystem_state);
        if (!j) {
            continue;
        }
        double worst = 0.0;
        for (std::size_t s = 0; s < detail::kSubsystemStateSamples; ++s) {
            StateVector psi = rng.unit_vector(code.logical_dim());
            Operator logical = psi * psi.adjoint();
            Operator expected = detail::normalized(*j * logical * j->adjoint());
            Operator encoded = code.isometry * logical * code.isometry.adjoint();
            Operator state = a.apply(encoded);
            for (std::size_t t = 0; t < detail::kSubsystemErrorSamples; ++t) {
                Operator x = t % 2 == 0 ? random_element(alg, rng) : random_element(je, rng);
                Operator z = subsystem_state(block, x * state * x.adjoint());
                if (std::abs(z.trace()) <= tol.subsystem_state) {
                    continue;
                }
                worst = std::max(worst, trace_distance(detail::normalized(z), expected));
            }
        }
        if (worst <= tol.subsystem_state) {
            cert.passed = true;
            cert.block = i;
            cert.d_c = block.d_c;
            cert.d_z = block.d_z;
            cert.worst_trace_distance = worst;
            return cert;
        }
        cert.worst_trace_distance = std::min(cert.worst_trace_distance, worst);
    }
    cert.message = "no block of the generated algebra carries the code as a noiseless subsystem";
    return cert;
}

/// Certification summary of a code against a grading.
struct CodeReport {
    Distance distance;
    std::optional<Distance> c_distance;
    /// Largest e with kl_correctable(J_e), checked up to saturation.
    Distance correctable_e;
    double isometry_defect = 0.0;
    double worst_detection_residual = 0.0;
};

inline CodeReport certify(const Code &code, GradedAlgebra &g, const Tolerances &tol = {}) {
    validate(code, tol);
    CodeReport rep;
    const auto &v = code.isometry;
    rep.isometry_defect = (v.adjoint() * v - Eigen::MatrixXcd::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
    rep.distance = min_distance(code, g, tol);
    if (code.transmission_basis) {
        rep.c_distance = min_c_distance(code, g, tol);
    }
    std::size_t detected_grades = rep.distance.infinite ? g.max_degree() : rep.distance.value - 1;
    for (std::size_t k = 1; k <= detected_grades && k <= g.max_degree(); ++k) {
        rep.worst_detection_residual =
            std::max(rep.worst_detection_residual, detects_space(code, g.grades[k - 1], tol).worst_residual);
    }
    // e = 0 always holds; ascend while J_e is correctable.
    std::size_t e = 0;
    while (true) {
        std::size_t next = e + 1;
        if (next > g.max_degree()) {
            extend_grading(g, next, tol);
        }
        if (next > g.max_degree()) {
            rep.correctable_e = Distance::unbounded();
            break;
        }
        if (!kl_correctable(code, g.grades[next - 1], tol)) {
            rep.correctable_e = Distance::finite(e);
            break;
        }
        if (g.saturated && next == g.max_degree()) {
            rep.correctable_e = Distance::unbounded();
            break;
        }
        e = next;
    }
    return rep;
}

}  // namespace gqec
