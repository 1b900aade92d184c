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

#include "randspec/measure.hpp"

namespace randspec {

/// Cell-wise value of a spectral integrand. A cell may carry the value
/// infinity; integrals then exist only where the measure vanishes there.
class MeasurableFunction {
  public:
    MeasurableFunction() = default;
    explicit MeasurableFunction(std::size_t cells);

    std::size_t size() const noexcept { return values_.size(); }

    void set(std::size_t cell, Complex value);
    void set_infinite(std::size_t cell);

    bool infinite_at(std::size_t cell) const { return infinite_[cell]; }
    Complex at(std::size_t cell) const; // throws on infinite cells

    /// Max |value| over finite cells; 0 if none.
    double max_finite_abs() const;
    bool has_infinite() const;

  private:
    CVector values_;
    std::vector<bool> infinite_;
};

/// Increasing chain of cell subsets exhausting the finite-value cells.
struct BoundingSequence {
    std::vector<std::vector<std::size_t>> stages;
};

/// Spectral integral of a bounded (everywhere finite) integrand:
/// I(f)(atom) = sum_cells f(cell) e_cell(atom). An infinite value is allowed
/// only on cells whose field is null on positive-weight atoms.
OperatorField integrate_bounded(const Rpovm& e, const MeasurableFunction& f,
                                double tol);

/// Stages sigma_n = { cell : |f(cell)| <= n } for n = 1..ceil(max finite |f|).
/// Throws not_ae_finite if f is infinite on a cell of nonnull measure.
BoundingSequence bounding_sequence_for(const MeasurableFunction& f,
                                       const Rpovm& e, double tol);

/// Domain of the extended integral at x: every infinite cell must annihilate
/// x atom-wise, ||e_cell(atom) x|| <= tol on positive-weight atoms.
bool extended_domain(const Rpovm& e, const MeasurableFunction& f,
                     std::span<const Complex> x, double tol);

/// Extended integral at a domain vector: sum over finite cells, accumulated
/// in cell-index order, so the value is independent of the bounding sequence
/// used to realize the limit.
RandomVector integrate_extended(const Rpovm& e, const MeasurableFunction& f,
                                std::span<const Complex> x, double tol);

/// Spectral measure of a normal field against explicit cells: per atom, each
/// spectral projection lands in the unique cell containing its eigenvalue.
/// An eigenvalue on a shared boundary resolves to the cell whose region has
/// the lexicographically smallest (re_lo, im_lo).
Rpovm spectral_decompose(const OperatorField& a, const MeasurableSpace& cells,
                         const Tolerances& tols = {});

/// Auto-generated cells: eigenvalues across all atoms merged by union-find
/// with link distance 2 * cluster tolerance; representatives are
/// weight-averaged; regions are half-open boxes of width twice the cluster
/// tolerance (intervals when the field is selfadjoint).
struct SpectralDecomposition {
    Rpovm measure;
    std::vector<Complex> representatives;
};

SpectralDecomposition spectral_decompose_auto(const OperatorField& a,
                                              const Tolerances& tols = {});

/// Rebuild sum_cells representative[cell] * e_cell(atom). Non-finite
/// representatives are allowed only on null cells.
OperatorField reconstruct(const Rpovm& e,
                          std::span<const Complex> representatives,
                          double tol);

} // namespace randspec
