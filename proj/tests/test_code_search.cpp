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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gqec/code_search.hpp"
#include "gqec/codes.hpp"
#include "gqec/graded_algebra.hpp"
#include "gqec/pauli.hpp"
#include "oracle/frozen_values.hpp"
#include "support/partition_instances.hpp"

namespace gqec {
namespace {

using P = PauliLetter;

std::size_t ceil_div(std::size_t a, std::size_t b) {
    return (a + b - 1) / b;
}

std::vector<AlphaVector> points_1d(const std::vector<double> &xs) {
    std::vector<AlphaVector> out;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        Eigen::VectorXd v(1);
        v << xs[j];
        out.push_back({j, v});
    }
    return out;
}

void expect_valid_certificate(const std::vector<AlphaVector> &pts, const PartitionCertificate &c) {
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < c.subsets.size(); ++i) {
        ASSERT_FALSE(c.subsets[i].empty());
        double total = 0.0;
        Eigen::VectorXd point = Eigen::VectorXd::Zero(c.gamma.size());
        for (std::size_t j = 0; j < c.subsets[i].size(); ++j) {
            std::size_t idx = c.subsets[i][j];
            EXPECT_FALSE(used[idx]);
            used[idx] = true;
            EXPECT_GE(c.weights[i][j], -1e-12);
            total += c.weights[i][j];
            point += c.weights[i][j] * pts[idx].coords;
        }
        EXPECT_NEAR(total, 1.0, 1e-8);
        EXPECT_LE((point - c.gamma).norm(), 1e-8);
    }
}

TEST(GreedyCCode, ScalarsGiveFullBasis) {
    Code c = greedy_c_code(scalars(4), 4, 1);
    EXPECT_EQ(c.logical_dim(), 4u);
    EXPECT_TRUE(c.transmission_basis.has_value());
}

TEST(GreedyCCode, CollectiveThreeQubits) {
    OperatorSpace e = standard_interaction(3, InteractionKind::collective);
    Code c = greedy_c_code(e, 8, 0x5EED);
    EXPECT_GE(c.logical_dim(), ceil_div(8, 4));
    auto words = c.codeword_matrix();
    for (const auto &op : e.basis()) {
        Eigen::MatrixXcd m = words.adjoint() * op * words;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (i != j) {
                    EXPECT_LE(std::abs(m(i, j)), 1e-9);
                }
            }
        }
    }
}

TEST(GreedyCCode, ClassicalTwoQubitsMeetsBound) {
    OperatorSpace e = standard_interaction(2, InteractionKind::classical);
    ASSERT_EQ(e.rank(), 12u);
    Code c = greedy_c_code(e, 4, 3);
    EXPECT_GE(c.logical_dim(), 1u);
    EXPECT_GE(c.logical_dim(), ceil_div(4, 12));
}

TEST(GreedyCCode, RequiresIdentity) {
    EXPECT_THROW(greedy_c_code(span({pauli_matrix(P::X)}), 2, 1), std::invalid_argument);
}

TEST(AlphaVectors, IdentityComponentIsOne) {
    OperatorSpace e = standard_interaction(3, InteractionKind::collective);
    Code c = greedy_c_code(e, 8, 4);
    auto alphas = alpha_vectors(c, e);
    ASSERT_EQ(alphas.size(), c.logical_dim());
    for (const auto &a : alphas) {
        EXPECT_LE(static_cast<std::size_t>(a.coords.size()), 2 * e.rank() - 1);
        EXPECT_NEAR(a.coords(0), 1.0, 1e-12);
        EXPECT_TRUE(a.coords.allFinite());
    }
}

TEST(ConvexPartition, SingleSubsetIsAlwaysFeasible) {
    auto pts = points_1d({0.3, -2.0, 5.0});
    PartitionResult r = convex_partition(pts, 1);
    ASSERT_EQ(r.status, PartitionStatus::feasible);
    ASSERT_EQ(r.certificate->subsets.size(), 1u);
    EXPECT_EQ(r.certificate->subsets[0], (std::vector<std::size_t>{0}));
    EXPECT_NEAR(r.certificate->gamma(0), 0.3, 1e-12);
    EXPECT_NEAR(r.certificate->weights[0][0], 1.0, 1e-12);
}

TEST(ConvexPartition, RadonCaseOnALine) {
    auto pts = points_1d({-1.0, 0.25, 2.0});
    PartitionResult r = convex_partition(pts, 2);
    ASSERT_EQ(r.status, PartitionStatus::feasible);
    const auto &c = *r.certificate;
    EXPECT_EQ(c.subsets[0], (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(c.subsets[1], (std::vector<std::size_t>{1}));
    EXPECT_NEAR(c.gamma(0), 0.25, 1e-12);
    expect_valid_certificate(pts, c);
}

TEST(ConvexPartition, TooManySubsetsIsInfeasible) {
    auto pts = points_1d({-1.0, 0.25, 2.0});
    EXPECT_EQ(convex_partition(pts, 3).status, PartitionStatus::infeasible);
    EXPECT_THROW(convex_partition(pts, 0), std::invalid_argument);
}

TEST(ConvexPartition, CapIsReportedSeparately) {
    // First oracle-infeasible instance whose exhaustive search needs more
    // than three candidates.
    std::size_t pick = oracle::kPartitionFeasible.size();
    for (std::size_t i = 0; i < oracle::kPartitionFeasible.size() && pick == oracle::kPartitionFeasible.size(); ++i) {
        auto inst = testing::partition_instance(i);
        if (!oracle::kPartitionFeasible[i] && convex_partition(inst.points, inst.r).candidates_tested > 3) {
            pick = i;
        }
    }
    ASSERT_LT(pick, oracle::kPartitionFeasible.size());
    auto inst = testing::partition_instance(pick);
    PartitionOptions opts;
    opts.max_candidates = 3;
    PartitionResult r = convex_partition(inst.points, inst.r, opts);
    EXPECT_EQ(r.status, PartitionStatus::cap_exhausted);
    EXPECT_EQ(r.candidates_tested, 3u);
    EXPECT_STREQ(to_string(r.status), "cap_exhausted");
    EXPECT_FALSE(r.certificate.has_value());
}

TEST(ConvexPartition, SubsetSizeLimit) {
    auto pts = points_1d({-1.0, 0.25, 2.0});
    PartitionOptions opts;
    opts.max_subset_size = 1;
    EXPECT_EQ(convex_partition(pts, 2, opts).status, PartitionStatus::infeasible);
}

TEST(ConvexPartition, AgreesWithExhaustiveOracle) {
    for (std::size_t i = 0; i < oracle::kPartitionFeasible.size(); ++i) {
        auto inst = testing::partition_instance(i);
        PartitionResult r = convex_partition(inst.points, inst.r);
        ASSERT_NE(r.status, PartitionStatus::cap_exhausted) << "instance " << i;
        EXPECT_EQ(r.status == PartitionStatus::feasible, oracle::kPartitionFeasible[i]) << "instance " << i;
        if (r.certificate) {
            expect_valid_certificate(inst.points, *r.certificate);
        }
    }
}

TEST(TverbergBound, Arithmetic) {
    EXPECT_EQ(tverberg_bound(8, 4), 1u);
    EXPECT_EQ(tverberg_bound(4, 4), 1u);
    EXPECT_EQ(tverberg_bound(5, 5), 1u);
    for (std::size_t n = 1; n <= 12; ++n) {
        std::size_t r = tverberg_bound(n, 1);
        EXPECT_LE(2 * r - 1, n);
        EXPECT_GT(2 * (r + 1) - 1, n);
    }
    for (std::size_t n = 1; n <= 64; ++n) {
        for (std::size_t d = 1; d <= 16; ++d) {
            std::size_t r = tverberg_bound(n, d);
            std::size_t points = ceil_div(n, d);
            EXPECT_TRUE(r == 1 || r * (d + 1) - d <= points);
            EXPECT_GT((r + 1) * (d + 1) - d, points);
        }
    }
    EXPECT_THROW(tverberg_bound(0, 1), std::invalid_argument);
}

TEST(QuantumCode, FromScalarErrorsOnEightDimensions) {
    QuantumSearchReport rep = search_quantum_code(scalars(8), 8, 1);
    EXPECT_EQ(rep.c_code_dim, 8u);
    EXPECT_EQ(rep.r_target, 4u);
    ASSERT_TRUE(rep.code.has_value());
    EXPECT_EQ(rep.achieved_dim(), 4u);
    EXPECT_LE(rep.residual, 1e-8);
}

TEST(QuantumCode, DephasingPairsOnThreeQubits) {
    OperatorSpace e = span({identity(8), collective_pauli(3, P::Z)});
    QuantumSearchReport rep = search_quantum_code(e, 8, 2);
    ASSERT_TRUE(rep.code.has_value());
    EXPECT_GE(rep.achieved_dim(), 2u);
    EXPECT_GE(rep.achieved_dim(), std::max<std::size_t>(1, ceil_div(rep.ceil_n_over_d, rep.d + 1)));
    for (const auto &op : e.basis()) {
        EXPECT_TRUE(detects(*rep.code, op).detected);
    }
}

TEST(QuantumCode, CollectiveThreeQubitsAtTverbergCount) {
    OperatorSpace e = standard_interaction(3, InteractionKind::collective);
    QuantumSearchReport rep = search_quantum_code(e, 8, 0x5EED);
    EXPECT_EQ(rep.tverberg_r, 1u);
    ASSERT_EQ(rep.partition.status, PartitionStatus::feasible);
    ASSERT_TRUE(rep.code.has_value());
    EXPECT_GE(rep.achieved_dim(), 1u);
    GradedAlgebra g = grade(e, 1);
    EXPECT_TRUE(min_distance(*rep.code, g).at_least(2));
}

TEST(QuantumCode, OffDiagonalsVanishForDisjointSubsets) {
    OperatorSpace e = span({identity(16), collective_pauli(4, P::Z), collective_pauli(4, P::X)});
    Code c = greedy_c_code(e, 16, 5);
    auto points = alpha_vectors(c, e);
    std::size_t r = tverberg_r_for_points(points.size(), e.rank());
    ASSERT_GE(r, 2u);
    PartitionResult part = convex_partition(points, r);
    ASSERT_EQ(part.status, PartitionStatus::feasible);
    Code q = quantum_code_from_c_code(c, *part.certificate, e);
    for (const auto &op : e.basis()) {
        Eigen::MatrixXcd m = q.isometry.adjoint() * op * q.isometry;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (i != j) {
                    EXPECT_LE(std::abs(m(i, j)), 1e-8);
                }
            }
        }
    }
    EXPECT_LE(quantum_code_residual(q, e), 1e-8);
}

TEST(QuantumCode, RejectsBadCertificate) {
    Code c = greedy_c_code(scalars(4), 4, 1);
    PartitionCertificate cert;
    cert.subsets = {{0}, {1}};
    cert.weights = {{1.0}, {1.0}};
    cert.gamma = Eigen::VectorXd::Ones(1);
    cert.residual = 1.0;
    EXPECT_THROW(quantum_code_from_c_code(c, cert, scalars(4)), std::invalid_argument);
}

TEST(CodeSearchProperties, GreedyCodesOnFixtures) {
    std::vector<OperatorSpace> fixtures{
        standard_interaction(2, InteractionKind::linear),
        standard_interaction(3, InteractionKind::linear),
        standard_interaction(2, InteractionKind::collective),
        standard_interaction(3, InteractionKind::collective),
        standard_interaction(4, InteractionKind::collective),
        standard_interaction(2, InteractionKind::classical),
        standard_interaction(3, InteractionKind::classical),
        scalars(5),
    };
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
        const auto &e = fixtures[f];
        std::size_t n = e.ambient_dim();
        Code c = greedy_c_code(e, n, 100 + f);
        EXPECT_GE(c.logical_dim(), ceil_div(n, e.rank())) << "fixture " << f;
        for (const auto &op : e.basis()) {
            EXPECT_TRUE(c_detects(c, op).detected) << "fixture " << f;
        }
    }
}

}  // namespace
}  // namespace gqec
