// Copyright 2026 The randspec developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>

namespace randspec {

/// Hard cap on matrix dimensions accepted through the scenario layer.
inline constexpr std::size_t kMaxDim = 512;

/// Weights of a sample space must sum to one within this bound.
inline constexpr double kWeightSumTol = 1e-12;

/// Default tolerances. All residuals are measured in the operator norm unless
/// a function documents otherwise. `cluster_rel` scales with the operator
/// norm of the matrix being decomposed; the rest are absolute.
struct Tolerances {
    double tol_lin = 1e-10;            // decomposition / reconstruction residuals
    double cluster_rel = 1e-9;         // eigenvalue clustering, relative to op_norm
    double proj_tol = 1e-9;            // projection and predicate checks
    double rpovm_tol = 1e-11;          // measure axiom residuals
    double pipeline_tol = 1e-8;        // end-to-end pipeline certification
    double contraction_margin = 1e-12; // margin for strict-contraction preconditions
    double null_tol = 1e-12;           // threshold below which a field/vector is null
    double im_slack = 1e-9;            // |Im| slack for real-interval cell membership
};

} // namespace randspec
