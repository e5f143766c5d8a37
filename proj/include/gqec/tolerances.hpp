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

#include <array>
#include <string_view>
#include <utility>

namespace gqec {

/// Every numerical threshold used by the library, in one place.
///
/// Functions take a `const Tolerances&` defaulted to `Tolerances{}`; the CLI
/// overrides individual fields by name (`--tol containment=1e-8`) and embeds
/// the record it actually used in every report.
struct Tolerances {
    /// Relative singular-value cutoff for the rank of a spanning set.
    double rank_cutoff = 1e-10;
    /// Gram matrix of an orthonormal operator basis must be within this of identity.
    double orthonormality = 1e-10;
    /// Residual after projection, relative to 1 + |A|_HS.
    double containment = 1e-9;
    /// |tr J_i| relative to N * max|entry|.
    double traceless = 1e-9;
    /// Relative singular-value cutoff for the null space of the commutator map.
    double commutant_cutoff = 1e-9;
    /// Eigenvalue clustering gap, relative to the spectral range.
    double eigen_cluster_gap = 1e-8;
    /// Largest accepted violation of the block form of a decomposition.
    double decomposition = 1e-8;
    /// Detection residual relative to 1 + |E|_HS.
    double detection = 1e-9;
    /// HS norm of a commutator of compressed errors.
    double commutation = 1e-9;
    /// V^dagger V = I for code isometries.
    double isometry = 1e-10;
    /// |sum A_i^dagger A_i - I| for trace-preserving operations.
    double completeness = 1e-9;
    /// Recovery residual on random logical states.
    double recovery = 1e-8;
    /// Convex-partition certificate and quantum-code residuals.
    double certificate = 1e-8;
    /// Additive slack on the error bound (lambda t)^(e+1)/(e+1)!.
    double bound_slack = 1e-8;
    /// Trace preservation of channels and generators.
    double trace_preservation = 1e-9;
    /// Smallest eigenvalue accepted for a density operator.
    double psd_floor = 1e-9;
    /// Norm preservation of unitary propagation.
    double norm_preservation = 1e-10;
    /// Trace distance for subsystem-state preservation checks.
    double subsystem_state = 1e-8;
};

inline constexpr std::array<std::pair<std::string_view, double Tolerances::*>, 18> kToleranceFields{{
    {"rank_cutoff", &Tolerances::rank_cutoff},
    {"orthonormality", &Tolerances::orthonormality},
    {"containment", &Tolerances::containment},
    {"traceless", &Tolerances::traceless},
    {"commutant_cutoff", &Tolerances::commutant_cutoff},
    {"eigen_cluster_gap", &Tolerances::eigen_cluster_gap},
    {"decomposition", &Tolerances::decomposition},
    {"detection", &Tolerances::detection},
    {"commutation", &Tolerances::commutation},
    {"isometry", &Tolerances::isometry},
    {"completeness", &Tolerances::completeness},
    {"recovery", &Tolerances::recovery},
    {"certificate", &Tolerances::certificate},
    {"bound_slack", &Tolerances::bound_slack},
    {"trace_preservation", &Tolerances::trace_preservation},
    {"psd_floor", &Tolerances::psd_floor},
    {"norm_preservation", &Tolerances::norm_preservation},
    {"subsystem_state", &Tolerances::subsystem_state},
}};

}  // namespace gqec
