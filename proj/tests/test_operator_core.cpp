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

#include "gqec/operator.hpp"
#include "gqec/operator_space.hpp"
#include "gqec/pauli.hpp"
#include "oracle/frozen_values.hpp"
#include "support/splitmix.hpp"

namespace gqec {
namespace {

using P = PauliLetter;

Operator diag2(double a, double b) {
    Operator m = zero_operator(2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

TEST(OpNorm, IdentityIsOne) {
    EXPECT_NEAR(op_norm(identity(5)), 1.0, 1e-14);
}

TEST(OpNorm, DiagonalTakesLargestMagnitude) {
    EXPECT_NEAR(op_norm(diag2(3.0, -1.0)), 3.0, 1e-14);
}

TEST(OpNorm, MatchesEigensolveOracle) {
    Operator a = pauli_operator("ZZ") + pauli_operator("XI", 0.5);
    EXPECT_NEAR(op_norm(a), oracle::kOpNormZZPlusHalfXI, 1e-12);
}

TEST(TraceNorm, IdentityAndProjector) {
    EXPECT_NEAR(trace_norm(identity(6)), 6.0, 1e-13);
    StateVector v = StateVector::Zero(4);
    v << 1.0, Complex(0, 1), -1.0, 0.5;
    v.normalize();
    EXPECT_NEAR(trace_norm(v * v.adjoint()), 1.0, 1e-13);
}

TEST(TraceNorm, MatchesSvdOracleOnSeededMatrix) {
    testing::SplitMix64 rng(42);
    EXPECT_NEAR(trace_norm(rng.matrix(4)), oracle::kTraceNormSplitMix42, 1e-12);
}

TEST(Span, LinearDependenceCollapses) {
    OperatorSpace s = span({identity(2), 2.0 * identity(2)});
    EXPECT_EQ(s.rank(), 1u);
}

TEST(Span, PauliBasisHasFullRank) {
    OperatorSpace s = span({pauli_matrix(P::X), pauli_matrix(P::Y), pauli_matrix(P::Z), identity(2)});
    EXPECT_EQ(s.rank(), 4u);
}

TEST(Span, EmptyInputGivesRankZero) {
    std::vector<Operator> none;
    OperatorSpace s = span(3, none);
    EXPECT_EQ(s.rank(), 0u);
    EXPECT_EQ(s.ambient_dim(), 3u);
}

TEST(Span, TwoQubitPairProductsMatchGramRank) {
    std::vector<Operator> ops{identity(4)};
    for (auto u : {P::X, P::Y, P::Z}) {
        for (auto v : {P::X, P::Y, P::Z}) {
            ops.push_back(single_qubit_pauli(2, 0, u) * single_qubit_pauli(2, 1, v));
        }
    }
    EXPECT_EQ(span(ops).rank(), oracle::kRankTwoQubitPairProducts);
}

TEST(Span, RejectsMixedDimensions) {
    EXPECT_THROW(span({identity(2), identity(4)}), std::invalid_argument);
}

TEST(SpaceProduct, IdentityIsNeutral) {
    OperatorSpace s = span({pauli_operator("XZ"), pauli_operator("YI"), identity(4)});
    EXPECT_TRUE(same_span(space_product(scalars(4), s), s));
}

TEST(SpaceProduct, SigmaXSquaredIsScalars) {
    OperatorSpace x = span({pauli_matrix(P::X)});
    EXPECT_TRUE(same_span(space_product(x, x), scalars(2)));
}

TEST(SpaceProduct, CollectiveSquaredMatchesProductOracle) {
    std::vector<Operator> j1{identity(8)};
    for (auto u : {P::X, P::Y, P::Z}) {
        j1.push_back(collective_pauli(3, u));
    }
    OperatorSpace s = span(j1);
    EXPECT_EQ(space_product(s, s).rank(), oracle::kRankCollective3Squared);
}

TEST(SpaceProduct, DimensionMismatchThrows) {
    EXPECT_THROW(space_product(scalars(2), scalars(4)), std::invalid_argument);
}

TEST(DaggerClosure, AddsAdjointsAndIsIdempotent) {
    Operator raise = zero_operator(2);
    raise(0, 1) = 1.0;
    OperatorSpace s = span({raise});
    OperatorSpace c = dagger_closure(s);
    EXPECT_EQ(c.rank(), 2u);
    EXPECT_TRUE(contains(c, raise.adjoint()));
    EXPECT_TRUE(same_span(dagger_closure(c), c));
}

TEST(Contains, TrivialCases) {
    OperatorSpace iz = span({identity(2), pauli_matrix(P::Z)});
    EXPECT_TRUE(contains(iz, pauli_matrix(P::Z)));
    EXPECT_FALSE(contains(scalars(2), pauli_matrix(P::X)));
}

TEST(Contains, ToleranceScalesWithNorm) {
    Operator z = 1e6 * pauli_matrix(P::Z);
    Operator nudged = z;
    nudged(0, 1) = 1e-4;
    OperatorSpace s = span({pauli_matrix(P::Z)});
    EXPECT_TRUE(contains(s, nudged));
    Operator off = pauli_matrix(P::Z);
    off(0, 1) = 1e-6;
    EXPECT_FALSE(contains(s, off));
}

TEST(Pauli, StringParsingAndKron) {
    Operator xz = pauli_operator("XZ", Complex(0, 2));
    Operator expected = Complex(0, 2) * kron(pauli_matrix(P::X), pauli_matrix(P::Z));
    EXPECT_LT((xz - expected).norm(), 1e-15);
    EXPECT_EQ(PauliString::parse("IXYZ").weight(), 3u);
    EXPECT_THROW(pauli_operator("XQ"), std::invalid_argument);
}

TEST(OperatorProperties, OpNormIsSubMultiplicative) {
    Rng rng(101);
    for (int k = 0; k < 100; ++k) {
        std::size_t n = 2 + static_cast<std::size_t>(k % 5);
        Operator c = rng.matrix(n);
        Operator d = rng.matrix(n);
        EXPECT_LE(op_norm(c * d), op_norm(c) * op_norm(d) * (1.0 + 1e-12)) << "pair " << k;
    }
}

TEST(OperatorProperties, TraceNormHolderBound) {
    Rng rng(202);
    for (int k = 0; k < 100; ++k) {
        std::size_t n = 2 + static_cast<std::size_t>(k % 4);
        Operator rho = rng.pure_state(n) * 0.5 + 0.5 * rng.pure_state(n);
        Operator u = rng.matrix(n);
        EXPECT_LE(trace_norm(rho * u), trace_norm(rho) * op_norm(u) * (1.0 + 1e-12)) << "pair " << k;
    }
}

TEST(OperatorProperties, SpanBasisIsOrthonormal) {
    Rng rng(303);
    for (int k = 0; k < 20; ++k) {
        std::vector<Operator> ops;
        for (int j = 0; j < 6; ++j) {
            ops.push_back(rng.matrix(3));
        }
        ops.push_back(ops[0] + 2.0 * ops[1]);
        OperatorSpace s = span(ops);
        EXPECT_EQ(s.rank(), 6u);
        EXPECT_LT(s.orthonormality_defect(), 1e-12);
    }
}

TEST(OperatorProperties, SpanIsIdempotent) {
    Rng rng(404);
    std::vector<Operator> ops;
    for (int j = 0; j < 5; ++j) {
        ops.push_back(rng.matrix(4));
    }
    OperatorSpace s = span(ops);
    OperatorSpace again = span(s.basis());
    EXPECT_EQ(again.rank(), s.rank());
    for (const auto &a : ops) {
        EXPECT_LE(again.residual_norm(a), 1e-9);
        Operator p = s.project(a);
        EXPECT_LT((s.project(p) - p).norm(), 1e-12);
    }
}

TEST(OperatorProperties, VectorizeRoundTrip) {
    Rng rng(505);
    Operator a = rng.matrix(3);
    EXPECT_EQ(unvectorize(vectorize(a), 3), a);
    EXPECT_EQ(vectorize(a)(1), a(1, 0));
}

TEST(OperatorProperties, EvolutionOperatorIsUnitary) {
    Rng rng(606);
    Operator h = rng.hermitian(4);
    Operator u = evolution_operator(h, 0.7);
    EXPECT_LT((u * u.adjoint() - identity(4)).norm(), 1e-12);
    EXPECT_LT((evolution_operator(h, 0.3) * evolution_operator(h, 0.4) - u).norm(), 1e-12);
}

}  // namespace
}  // namespace gqec
