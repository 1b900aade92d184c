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

#include "randspec/calculus.hpp"

namespace randspec {

/// Bounded transform of a single matrix: Z = T (I + T*T)^{-1/2} with defect
/// C = (I + T*T)^{-1}. Z is a pure contraction and I - Z*Z = C.
struct MatrixTransform {
    ComplexMatrix z;
    ComplexMatrix c;
};

MatrixTransform z_of(const ComplexMatrix& t, double tol = 1e-12);

/// Inverse transform T = Z (I - Z*Z)^{-1/2}; the scalar identity
/// z = t / sqrt(1 + t^2)  <=>  t = z / sqrt(1 - z^2) fixes the exponent.
/// Requires op_norm(z) < 1 - margin.
ComplexMatrix t_of(const ComplexMatrix& z, double margin = 1e-12);

/// Field-level transform with its defect: transformed(atom) = z_of(original(atom)).
struct TransformPair {
    OperatorField original;
    OperatorField transformed;
    OperatorField defect;
};

TransformPair bounded_transform(const OperatorField& a);

/// Atom-wise bounded transform; always defined for finite fields.
OperatorField zc_field(const OperatorField& a);

/// Atom-wise inverse; requires a pure contraction on positive-weight atoms.
/// Zero-weight atoms that are not contractive map to the zero matrix.
OperatorField tc_field(const OperatorField& b, double margin = 1e-12);

/// Scalar eigenvalue map g1(z) = z / sqrt(1 - |z|^2), inverse of
/// t -> t / sqrt(1 + |t|^2) on the open unit disc. The modulus form keeps
/// the map an inverse for complex (normal) spectra; on the real line it
/// agrees with z / sqrt(1 - z^2). Requires |z| < 1 - margin.
Complex g1_map(Complex z, double margin = 1e-12);

struct PipelineReport {
    double reconstruction_residual = 0.0; // || a - sum g1(rep) f_cell ||, worst atom
    double alignment_residual = 0.0;      // worst cell mismatch vs direct decomposition
    double alignment_rep_distance = 0.0;  // worst representative mismatch
    bool support_in_disc = false;
    bool aligned = false;
    bool pass = false;
};

/// Spectral measure of a normal field through the contractive detour:
/// decompose zc_field(a) on auto cells inside the disc, then push the
/// measure forward along g1 on cluster representatives. The report compares
/// the result against the direct decomposition of `a`.
struct PipelineResult {
    SpectralDecomposition direct;    // spectral_decompose_auto(a)
    Rpovm measure;                   // pushforward of the disc measure
    std::vector<Complex> representatives; // g1 of the disc representatives
    PipelineReport report;
};

PipelineResult spectral_theorem_pipeline(const OperatorField& a,
                                         const Tolerances& tols = {});

} // namespace randspec
