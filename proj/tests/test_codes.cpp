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

#include <vector>

#include "gqec/codes.hpp"
#include "gqec/examples.hpp"
#include "gqec/graded_algebra.hpp"
#include "gqec/pauli.hpp"
#include "gqec/structure.hpp"
#include "oracle/frozen_values.hpp"
#include "support/fixtures.hpp"

namespace gqec {
namespace {

using P = PauliLetter;

std::vector<std::string> low_weight_paulis(std::size_t n, std::size_t max_weight) {
    std::vector<std::string> out;
    for (const auto &p : all_pauli_strings(n)) {
        if (p.weight() >= 1 && p.weight() <= max_weight) {
            out.push_back(p.str());
        }
    }
    return out;
}

Code repetition_c_code() {
    StateVector a = StateVector::Zero(8);
    StateVector b = StateVector::Zero(8);
    a(0) = 1.0;
    b(7) = 1.0;
    return code_from_codewords({a, b});
}

Code collective_subsystem_code() {
    return three_qubit::run(0x5EED, 1).code;
}

OperatorSpace products(const OperatorSpace &je) {
    std::vector<Operator> ops;
    for (const auto &a : je.basis()) {
        for (const auto &b : je.basis()) {
            ops.push_back(a.adjoint() * b);
        }
    }
    return span(je.ambient_dim(), ops);
}

TEST(Code, ValidatesIsometry) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(4, 2);
    v(0, 0) = 1.0;
    v(1, 1) = 2.0;
    EXPECT_THROW(code_from_isometry(v), std::invalid_argument);
    Code c = testing::repetition_code();
    Operator p = c.projector();
    EXPECT_LT((p * p - p).norm(), 1e-14);
    EXPECT_LT((p - p.adjoint()).norm(), 1e-14);
}

TEST(Detects, IdentityIsAlwaysDetected) {
    for (const Code &c : {testing::repetition_code(), testing::five_qubit_code(), testing::trivial_code(3)}) {
        Detection d = detects(c, identity(c.system_dim()));
        EXPECT_TRUE(d.detected);
        EXPECT_NEAR(d.alpha.real(), 1.0, 1e-12);
        EXPECT_NEAR(d.alpha.imag(), 0.0, 1e-12);
    }
}

TEST(Detects, FullSpaceCodeMissesSigmaX) {
    Detection d = detects(testing::trivial_code(2), pauli_matrix(P::X));
    EXPECT_FALSE(d.detected);
    EXPECT_NEAR(std::abs(d.alpha), 0.0, 1e-15);
}

TEST(Detects, FiveQubitCodeDetectsLowWeightPaulis) {
    Code c = testing::five_qubit_code();
    auto paulis = low_weight_paulis(5, 2);
    ASSERT_EQ(paulis.size(), oracle::kFiveQubitLowWeightPaulis);
    std::size_t detected = 0;
    for (const auto &p : paulis) {
        detected += detects(c, pauli_operator(p)).detected ? 1 : 0;
    }
    EXPECT_EQ(detected, oracle::kFiveQubitLowWeightDetected);
}

TEST(Detects, DimensionMismatchThrows) {
    EXPECT_THROW(detects(testing::repetition_code(), identity(4)), std::invalid_argument);
}

TEST(CDetects, RepetitionCodeSeesSingleFlipsAsDiagonal) {
    Code c = repetition_c_code();
    ASSERT_TRUE(c.transmission_basis.has_value());
    EXPECT_TRUE(c_detects(c, pauli_operator("XII")).detected);
    EXPECT_TRUE(c_detects(c, pauli_operator("ZII")).detected);
    EXPECT_FALSE(c_detects(c, pauli_operator("XXX")).detected);
    EXPECT_THROW(c_detects(testing::repetition_code(), identity(8)), std::invalid_argument);
}

TEST(MinDistance, FullSpaceCodeIsOne) {
    GradedAlgebra g = grade(standard_interaction(2, InteractionKind::linear), 1);
    EXPECT_EQ(min_distance(testing::trivial_code(4), g), Distance::finite(1));
}

TEST(MinDistance, FiveQubitCodeMatchesStabilizerOracle) {
    GradedAlgebra g = grade(standard_interaction(5, InteractionKind::linear), 1);
    EXPECT_EQ(min_distance(testing::five_qubit_code(), g), Distance::finite(oracle::kFiveQubitDistance));
}

TEST(MinDistance, NoiselessSubsystemIsInfinite) {
    GradedAlgebra g = grade(three_qubit::interaction(), 1);
    Distance d = min_distance(collective_subsystem_code(), g);
    EXPECT_TRUE(d.infinite);
    EXPECT_EQ(d.str(), "inf");
}

TEST(MinCDistance, RepetitionCode) {
    GradedAlgebra g = grade(standard_interaction(3, InteractionKind::linear), 1);
    Code c = repetition_c_code();
    EXPECT_EQ(min_distance(c, g), Distance::finite(1));
    EXPECT_EQ(min_c_distance(c, g), Distance::finite(3));
}

TEST(TransmissionBasis, DiagonalizesCommutingCompressions) {
    OperatorSpace s = span({identity(8), pauli_operator("ZII"), pauli_operator("IZZ")});
    Code c = testing::repetition_code();
    ASSERT_TRUE(compressions_commute(c, s));
    auto basis = transmission_basis(c, s);
    ASSERT_EQ(basis.size(), 2u);
    Code cc = code_from_codewords(basis);
    for (const auto &e : s.basis()) {
        EXPECT_TRUE(c_detects(cc, e).detected);
    }
}

TEST(TransmissionBasis, RejectsNonCommutingCompressions) {
    OperatorSpace s = span({identity(2), pauli_matrix(P::X), pauli_matrix(P::Z)});
    EXPECT_THROW(transmission_basis(testing::trivial_code(2), s), std::invalid_argument);
}

TEST(Correctability, Examples) {
    EXPECT_TRUE(kl_correctable(testing::trivial_code(4), scalars(4)));
    EXPECT_TRUE(kl_correctable(testing::five_qubit_code(), standard_interaction(5, InteractionKind::linear)));
    EXPECT_FALSE(kl_correctable(testing::trivial_code(2), standard_interaction(1, InteractionKind::linear)));
}

TEST(Recovery, FiveQubitCodeIsExact) {
    Code c = testing::five_qubit_code();
    OperatorSpace j1 = standard_interaction(5, InteractionKind::linear);
    QuantumOperation r = build_recovery(c, j1);
    EXPECT_LE(r.completeness_defect(), 1e-9);
    EXPECT_LE(recovery_residual(c, r, j1, 20, 9), 1e-8);
}

TEST(Recovery, RepetitionCodeAgainstBitFlips) {
    Code c = testing::repetition_code();
    OperatorSpace je = span({identity(8), pauli_operator("XII"), pauli_operator("IXI"), pauli_operator("IIX")});
    ASSERT_TRUE(kl_correctable(c, je));
    QuantumOperation r = build_recovery(c, je);
    EXPECT_LE(r.completeness_defect(), 1e-9);
    EXPECT_LE(recovery_residual(c, r, je, 20, 10), 1e-8);
}

TEST(Recovery, RejectsUncorrectableErrors) {
    EXPECT_THROW(build_recovery(testing::trivial_code(2), standard_interaction(1, InteractionKind::linear)),
                 std::invalid_argument);
}

TEST(SubsystemCertificate, TrivialOperationOnScalars) {
    QuantumOperation id{{identity(8)}};
    auto cert = verify_as_noiseless_subsystem(testing::repetition_code(), id, scalars(8), 1);
    EXPECT_TRUE(cert.passed) << cert.message;
    EXPECT_TRUE(cert.identity_in_span);
}

TEST(SubsystemCertificate, CollectiveNoiselessSubsystem) {
    QuantumOperation id{{identity(8)}};
    auto cert = verify_as_noiseless_subsystem(collective_subsystem_code(), id, three_qubit::interaction(), 2);
    EXPECT_TRUE(cert.passed) << cert.message;
    EXPECT_GE(cert.d_z, 2u);
}

TEST(SubsystemCertificate, FiveQubitCodeWithRecovery) {
    Code c = testing::five_qubit_code();
    OperatorSpace j1 = standard_interaction(5, InteractionKind::linear);
    QuantumOperation r = build_recovery(c, j1);
    auto cert = verify_as_noiseless_subsystem(c, r, j1, 3);
    EXPECT_TRUE(cert.passed) << cert.message;
    EXPECT_TRUE(cert.identity_in_span);
    EXPECT_GE(cert.d_z, 2u);
}

TEST(SubsystemCertificate, FailsWithoutProtection) {
    QuantumOperation id{{identity(2)}};
    auto cert = verify_as_noiseless_subsystem(
        testing::trivial_code(2), id, standard_interaction(1, InteractionKind::linear), 4);
    EXPECT_FALSE(cert.passed);
}

TEST(Certify, FiveQubitReport) {
    GradedAlgebra g = grade(standard_interaction(5, InteractionKind::linear), 1);
    CodeReport rep = certify(testing::five_qubit_code(), g);
    EXPECT_EQ(rep.distance, Distance::finite(3));
    EXPECT_EQ(rep.correctable_e, Distance::finite(1));
    EXPECT_FALSE(rep.c_distance.has_value());
    EXPECT_LT(rep.isometry_defect, 1e-12);
}

TEST(CodeProperties, DistanceImpliesCorrectability) {
    struct Fixture {
        Code code;
        OperatorSpace j1;
    };
    std::vector<Fixture> fixtures{
        {testing::five_qubit_code(), standard_interaction(5, InteractionKind::linear)},
        {testing::repetition_code(), standard_interaction(3, InteractionKind::linear)},
        {testing::trivial_code(4), standard_interaction(2, InteractionKind::collective)},
        {collective_subsystem_code(), three_qubit::interaction()},
    };
    for (auto &f : fixtures) {
        GradedAlgebra g = grade(f.j1, 1);
        Distance d = min_distance(f.code, g);
        // Infinite distance: check a few degrees past saturation as well.
        for (std::size_t e = 0; e <= 3 && d.at_least(2 * e + 1); ++e) {
            extend_grading(g, std::max<std::size_t>(e, 1));
            EXPECT_TRUE(kl_correctable(f.code, g.degree(e))) << "e = " << e;
        }
    }
}

TEST(CodeProperties, CDistanceImpliesCCorrectability) {
    Code c = repetition_c_code();
    GradedAlgebra g = grade(standard_interaction(3, InteractionKind::linear), 1);
    ASSERT_TRUE(min_c_distance(c, g).at_least(3));
    OperatorSpace pairs = products(g.degree(1));
    for (const auto &e : pairs.basis()) {
        EXPECT_TRUE(c_detects(c, e).detected);
    }
}

TEST(CodeProperties, CDistanceDominatesDistance) {
    Code five = testing::five_qubit_code();
    Code five_c = code_from_codewords({five.isometry.col(0), five.isometry.col(1)});
    std::vector<std::pair<Code, OperatorSpace>> fixtures{
        {repetition_c_code(), standard_interaction(3, InteractionKind::linear)},
        {five_c, standard_interaction(5, InteractionKind::linear)},
        {repetition_c_code(), standard_interaction(3, InteractionKind::collective)},
    };
    for (auto &[code, j1] : fixtures) {
        GradedAlgebra g = grade(j1, 1);
        Distance d = min_distance(code, g);
        Distance dc = min_c_distance(code, g);
        EXPECT_TRUE(dc.infinite || (!d.infinite && dc.value >= d.value));
    }
}

TEST(CodeProperties, DetectionIsBasisIndependent) {
    Rng rng(31);
    Code c = testing::five_qubit_code();
    GradedAlgebra g = grade(standard_interaction(5, InteractionKind::linear), 2);
    for (std::size_t d : {1u, 2u, 3u}) {
        extend_grading(g, d);
        const auto &s = g.degree(d);
        bool all = detects_space(c, s).detected;
        Eigen::MatrixXcd mix = rng.matrix(s.rank());
        std::vector<Operator> rotated;
        for (Eigen::Index k = 0; k < mix.cols(); ++k) {
            rotated.push_back(s.combination(mix.col(k)));
        }
        bool all_rotated = true;
        for (const auto &e : rotated) {
            all_rotated = all_rotated && detects(c, e).detected;
        }
        EXPECT_EQ(all, all_rotated) << "degree " << d;
    }
}

}  // namespace
}  // namespace gqec
