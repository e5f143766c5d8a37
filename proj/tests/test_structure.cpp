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

#include <algorithm>
#include <utility>
#include <vector>

#include "gqec/examples.hpp"
#include "gqec/graded_algebra.hpp"
#include "gqec/pauli.hpp"
#include "gqec/structure.hpp"
#include "oracle/frozen_values.hpp"

namespace gqec {
namespace {

using P = PauliLetter;
using Dims = std::vector<std::pair<std::size_t, std::size_t>>;

OperatorSpace matrix_algebra(std::size_t n) {
    std::vector<Operator> ops;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Operator e = zero_operator(n);
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = 1.0;
            ops.push_back(e);
        }
    }
    return span(ops);
}

OperatorSpace algebra_of(std::size_t n, InteractionKind kind) {
    return full_algebra(standard_interaction(n, kind)).algebra;
}

OperatorSpace dephasing_algebra(std::size_t n) {
    return full_algebra(span({identity(std::size_t{1} << n), collective_pauli(n, P::Z)})).algebra;
}

Dims block_dims(const AlgebraDecomposition &dec) {
    Dims out;
    for (const auto &b : dec.blocks) {
        out.emplace_back(b.d_c, b.d_z);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Operator block_projector(const DecompositionBlock &b) {
    return b.isometry * b.isometry.adjoint();
}

void expect_dimension_identities(const OperatorSpace &a, const AlgebraDecomposition &dec) {
    std::size_t sum_c = 0;
    std::size_t sum_z = 0;
    std::size_t total = 0;
    for (const auto &b : dec.blocks) {
        sum_c += b.d_c * b.d_c;
        sum_z += b.d_z * b.d_z;
        total += b.d_c * b.d_z;
    }
    EXPECT_EQ(total, a.ambient_dim());
    EXPECT_EQ(sum_c, a.rank());
    EXPECT_EQ(sum_z, commutant(a).rank());
    EXPECT_LE(verify_decomposition(dec, a), 1e-8);
}

TEST(Commutant, MatrixAlgebraHasScalarCommutant) {
    OperatorSpace c = commutant(matrix_algebra(4));
    EXPECT_EQ(c.rank(), 1u);
    EXPECT_TRUE(contains(c, identity(4)));
}

TEST(Commutant, ScalarsCommuteWithEverything) {
    EXPECT_EQ(commutant(scalars(3)).rank(), 9u);
}

TEST(Commutant, CollectiveThreeQubitsContainsExchanges) {
    OperatorSpace c = commutant(algebra_of(3, InteractionKind::collective));
    EXPECT_EQ(c.rank(), 5u);
    EXPECT_EQ(c.rank(), oracle::kCommutantDimCollective3);
    EXPECT_TRUE(contains(c, three_qubit::s1()));
    EXPECT_TRUE(contains(c, three_qubit::s2()));
}

TEST(Commutant, MatchesNullSpaceOracle) {
    EXPECT_EQ(commutant(algebra_of(2, InteractionKind::collective)).rank(), oracle::kCommutantDimCollective2);
    EXPECT_EQ(commutant(algebra_of(4, InteractionKind::collective)).rank(), oracle::kCommutantDimCollective4);
    EXPECT_EQ(commutant(algebra_of(2, InteractionKind::classical)).rank(), oracle::kCommutantDimClassical2);
    EXPECT_EQ(commutant(dephasing_algebra(4)).rank(), oracle::kCommutantDimDephasing4);
}

TEST(Commutant, RejectsNonUnitalInput) {
    EXPECT_THROW(commutant(span({pauli_matrix(P::Z)})), std::invalid_argument);
}

TEST(Center, CollectiveThreeQubitsHasTwoBlocks) {
    EXPECT_EQ(center(algebra_of(3, InteractionKind::collective)).rank(), 2u);
}

TEST(Decompose, MatrixAlgebraIsOneBlock) {
    OperatorSpace a = matrix_algebra(3);
    AlgebraDecomposition dec = decompose(a, 1);
    EXPECT_EQ(block_dims(dec), (Dims{{3, 1}}));
    expect_dimension_identities(a, dec);
    EXPECT_TRUE(noiseless_subsystems(dec).empty());
}

TEST(Decompose, ScalarsAreOneBlockWithFullMultiplicity) {
    OperatorSpace a = scalars(4);
    AlgebraDecomposition dec = decompose(a, 1);
    EXPECT_EQ(block_dims(dec), (Dims{{1, 4}}));
    expect_dimension_identities(a, dec);
}

TEST(Decompose, CollectiveThreeQubits) {
    OperatorSpace a = algebra_of(3, InteractionKind::collective);
    AlgebraDecomposition dec = decompose(a, 0x5EED);
    EXPECT_EQ(block_dims(dec), (Dims{{2, 2}, {4, 1}}));
    expect_dimension_identities(a, dec);
    // Sorted by (d_C, d_Z) descending.
    EXPECT_EQ(dec.blocks.front().d_c, 4u);

    auto subs = noiseless_subsystems(dec);
    ASSERT_EQ(subs.size(), 1u);
    EXPECT_EQ(subs[0].d_z, 2u);
    EXPECT_EQ(subs[0].d_c, 2u);
    EXPECT_FALSE(subs[0].is_subspace);
    OperatorSpace comm = commutant(a);
    for (const auto &o : subs[0].observables) {
        EXPECT_TRUE(contains(comm, o));
    }
}

TEST(Decompose, CollectiveDephasingGivesBinomialSubspaces) {
    OperatorSpace a = dephasing_algebra(4);
    AlgebraDecomposition dec = decompose(a, 3);
    EXPECT_EQ(block_dims(dec), (Dims{{1, 1}, {1, 1}, {1, 4}, {1, 4}, {1, 6}}));
    expect_dimension_identities(a, dec);
    std::vector<std::size_t> subspace_dims;
    for (const auto &s : noiseless_subsystems(dec)) {
        EXPECT_TRUE(s.is_subspace);
        subspace_dims.push_back(s.d_z);
    }
    std::sort(subspace_dims.begin(), subspace_dims.end());
    EXPECT_EQ(subspace_dims, (std::vector<std::size_t>{4, 4, 6}));
}

TEST(Decompose, RejectsSpacesThatAreNotAlgebras) {
    OperatorSpace j1 = standard_interaction(3, InteractionKind::collective);
    EXPECT_THROW(decompose(j1, 1), std::invalid_argument);
}

TEST(Decompose, FixtureAlgebrasSatisfyDimensionIdentities) {
    std::vector<OperatorSpace> fixtures{
        algebra_of(2, InteractionKind::collective),
        algebra_of(4, InteractionKind::collective),
        algebra_of(2, InteractionKind::classical),
        algebra_of(2, InteractionKind::linear),
        dephasing_algebra(3),
    };
    for (const auto &a : fixtures) {
        expect_dimension_identities(a, decompose(a, 17));
    }
}

TEST(StructureProperties, DoubleCommutantIsTheAlgebra) {
    std::vector<OperatorSpace> fixtures{
        algebra_of(3, InteractionKind::collective),
        algebra_of(2, InteractionKind::classical),
        dephasing_algebra(4),
        scalars(4),
        matrix_algebra(3),
    };
    for (const auto &a : fixtures) {
        EXPECT_TRUE(same_span(commutant(commutant(a)), a));
    }
}

TEST(StructureProperties, SeedRobustness) {
    OperatorSpace a = algebra_of(4, InteractionKind::collective);
    AlgebraDecomposition d1 = decompose(a, 1);
    AlgebraDecomposition d2 = decompose(a, 987654321);
    ASSERT_EQ(block_dims(d1), block_dims(d2));
    ASSERT_EQ(d1.blocks.size(), d2.blocks.size());
    for (std::size_t i = 0; i < d1.blocks.size(); ++i) {
        EXPECT_LT((block_projector(d1.blocks[i]) - block_projector(d2.blocks[i])).norm(), 1e-8);
    }
}

TEST(StructureProperties, SubsystemStateSurvivesAlgebraUnitaries) {
    OperatorSpace a = algebra_of(3, InteractionKind::collective);
    AlgebraDecomposition dec = decompose(a, 5);
    auto subs = noiseless_subsystems(dec);
    ASSERT_EQ(subs.size(), 1u);
    const auto &block = dec.blocks[subs[0].block];
    Rng rng(77);
    StateVector psi = block.isometry * kron(rng.unit_vector(block.d_c), rng.unit_vector(block.d_z));
    Operator rho = psi * psi.adjoint();
    Operator before = subsystem_state(block, rho);
    std::vector<Operator> gens;
    for (auto u : {P::X, P::Y, P::Z}) {
        gens.push_back(collective_pauli(3, u));
    }
    for (int k = 0; k < 100; ++k) {
        Operator u = identity(8);
        for (int f = 0; f < 3; ++f) {
            u = evolution_operator(gens[static_cast<std::size_t>(rng.uniform() * 3) % 3], rng.normal()) * u;
        }
        Operator after = subsystem_state(block, u * rho * u.adjoint());
        EXPECT_LE(trace_distance(before, after), 1e-8) << "product " << k;
    }
}

TEST(SpectralClusters, MergesDegenerateEigenvalues) {
    Operator h = zero_operator(4);
    h(0, 0) = 1.0;
    h(1, 1) = 1.0 + 1e-12;
    h(2, 2) = -2.0;
    h(3, 3) = 5.0;
    auto clusters = spectral_clusters(h, 1e-8);
    EXPECT_EQ(clusters.size(), 3u);
}

TEST(ThreeQubitExample, ReproducesBlockStructure) {
    auto r = three_qubit::run(0x5EED);
    EXPECT_EQ(r.algebra_dim, 20u);
    EXPECT_EQ(r.commutant_dim, 5u);
    EXPECT_EQ(r.center_dim, 2u);
    EXPECT_LE(r.s1_residual, 1e-9);
    EXPECT_LE(r.s2_residual, 1e-9);
    EXPECT_EQ(r.code.logical_dim(), 2u);
    EXPECT_LE(r.worst_subsystem_change, 1e-8);
}

}  // namespace
}  // namespace gqec
