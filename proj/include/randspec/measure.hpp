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

#include <map>
#include <optional>

#include "randspec/field.hpp"

namespace randspec {

/// Region of the complex plane attached to a cell. Boxes and intervals are
/// half-open: [re_lo, re_hi) x [im_lo, im_hi), respectively [lo, hi) on the
/// real axis with |Im| <= im_slack.
struct CellRegion {
    enum class Kind { none, box, interval };

    Kind kind = Kind::none;
    double re_lo = 0.0;
    double re_hi = 0.0;
    double im_lo = 0.0;
    double im_hi = 0.0;

    static CellRegion box(double re_lo, double re_hi, double im_lo, double im_hi);
    static CellRegion interval(double lo, double hi);

    bool contains(Complex z, double im_slack) const;
};

struct Cell {
    std::string id;
    CellRegion region;
};

/// Finite measurable space: the outcome cells of a spectral measure.
struct MeasurableSpace {
    std::vector<Cell> cells;

    std::size_t size() const noexcept { return cells.size(); }
    std::optional<std::size_t> index_of(const std::string& id) const;

    /// Throws schema_error on duplicate or empty cell ids.
    void validate() const;
};

/// Projection-valued measure on a finite cell space: one projection field per
/// cell, summing to the identity field. E(sigma) for a subset sigma is the sum
/// of its cell fields; additivity holds by construction, so validation checks
/// the per-cell projection property, completeness, and multiplicativity.
class Rpovm {
  public:
    Rpovm() = default;
    Rpovm(MeasurableSpace gamma, SpacePtr space, std::size_t dim,
          std::vector<OperatorField> cell_fields);

    const MeasurableSpace& gamma() const noexcept { return gamma_; }
    const SpacePtr& space() const noexcept { return space_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t cell_count() const noexcept { return cell_fields_.size(); }

    const OperatorField& cell_field(std::size_t cell) const {
        return cell_fields_[cell];
    }

    /// E(sigma): sum of the cell fields indexed by `subset`.
    OperatorField of_subset(std::span<const std::size_t> subset) const;

    /// E(Gamma), equal to the identity field for a valid measure.
    OperatorField total() const;

  private:
    MeasurableSpace gamma_;
    SpacePtr space_;
    std::size_t dim_ = 0;
    std::vector<OperatorField> cell_fields_;
};

struct AxiomReport {
    std::string axiom;
    bool pass = false;
    double worst_residual = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<AxiomReport> axioms;

    bool all_pass() const;
    double worst_residual() const;
};

/// Checks the measure axioms on sampled subsets: every cell field a
/// projection, pairwise products null, completeness E(Gamma) = identity,
/// E(sigma) a projection and E(sigma)E(tau) = E(sigma n tau) over sampled
/// subset pairs. All subsets are enumerated up to 12 cells; beyond that, 200
/// subsets drawn from a fixed documented seed.
ValidationReport validate_rpovm(const Rpovm& e, double tol);

/// Complex measures per cell and atom.
struct ScalarRandomMeasure {
    std::vector<RandomScalar> per_cell; // <E(cell) x, y> atom-wise
};

struct VectorRandomMeasure {
    std::vector<RandomVector> per_cell; // E(cell) x atom-wise
};

ScalarRandomMeasure scalar_measure(const Rpovm& e, std::span<const Complex> x,
                                   std::span<const Complex> y);
VectorRandomMeasure vector_measure(const Rpovm& e, std::span<const Complex> x);

/// Characterization check for a candidate family of projection fields:
/// true iff pairwise products vanish, the diagonal quadratic measures are
/// nonnegative on the standard basis, and the cells sum to the identity.
/// Equivalent to validate_rpovm(..).all_pass() on the assembled measure.
bool lemma_check(const MeasurableSpace& gamma,
                 const std::vector<OperatorField>& cell_fields, double tol);

/// Image measure under a cell map: F(target) = sum of E over the preimage.
/// `cell_map` must cover every source cell and hit only known target cells.
Rpovm pushforward(const Rpovm& e,
                  const std::map<std::string, std::string>& cell_map,
                  const MeasurableSpace& target);

} // namespace randspec
