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

#include "randspec/matrix.hpp"

namespace randspec {

/// Spectral decomposition m = sum_k eigenvalues[k] * projections[k] with
/// mutually orthogonal projections summing to the identity. Eigenvalues are
/// cluster representatives, sorted ascending by (re, im).
struct EigenDecomposition {
    std::vector<Complex> eigenvalues;
    std::vector<ComplexMatrix> projections;

    std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.
/// `tol` bounds the accepted Hermiticity defect ||m - m*||_op. Eigenvalues
/// closer than `cluster_tol` are merged into one cluster; cluster_tol < 0
/// selects the default 1e-9 * op_norm(m).
EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol,
                                 double cluster_tol = -1.0);

/// Diagonalize a normal matrix via its commuting Hermitian and
/// anti-Hermitian parts, diagonalized on simultaneous eigenspaces.
/// Requires ||m m* - m* m||_op <= tol * op_norm(m)^2.
EigenDecomposition diagonalize_normal(const ComplexMatrix& m, double tol,
                                      double cluster_tol = -1.0);

/// Spectral power of a Hermitian PSD matrix; exponent must be one of
/// 1/2, -1/2, -1. Negative exponents require the smallest eigenvalue > tol.
ComplexMatrix psd_power(const ComplexMatrix& m, double exponent, double tol);

/// Operator (spectral) norm, computed from the largest eigenvalue of m* m.
double op_norm(const ComplexMatrix& m);

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm_matrix(const ComplexMatrix& m);

/// True iff m is Hermitian and idempotent within tol (operator norm).
bool is_projection(const ComplexMatrix& m, double tol);

} // namespace randspec
