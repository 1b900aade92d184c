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

#include "randspec/measure.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "randspec/errors.hpp"
#include "randspec/linalg.hpp"
#include "randspec/rng.hpp"

namespace randspec {

CellRegion CellRegion::box(double re_lo, double re_hi, double im_lo,
                           double im_hi) {
    CellRegion r;
    r.kind = Kind::box;
    r.re_lo = re_lo;
    r.re_hi = re_hi;
    r.im_lo = im_lo;
    r.im_hi = im_hi;
    return r;
}

CellRegion CellRegion::interval(double lo, double hi) {
    CellRegion r;
    r.kind = Kind::interval;
    r.re_lo = lo;
    r.re_hi = hi;
    return r;
}

bool CellRegion::contains(Complex z, double im_slack) const {
    switch (kind) {
    case Kind::none:
        return false;
    case Kind::box:
        return z.real() >= re_lo && z.real() < re_hi && z.imag() >= im_lo &&
               z.imag() < im_hi;
    case Kind::interval:
        return z.real() >= re_lo && z.real() < re_hi &&
               std::abs(z.imag()) <= im_slack;
    }
    return false;
}

std::optional<std::size_t>
MeasurableSpace::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

void MeasurableSpace::validate() const {
    std::unordered_set<std::string> seen;
    for (const Cell& cell : cells) {
        if (cell.id.empty()) {
            fail(ErrorCode::schema_error, "empty cell id");
        }
        if (!seen.insert(cell.id).second) {
            fail(ErrorCode::schema_error, "duplicate cell id '" + cell.id + "'");
        }
    }
}

Rpovm::Rpovm(MeasurableSpace gamma, SpacePtr space, std::size_t dim,
             std::vector<OperatorField> cell_fields)
    : gamma_(std::move(gamma)), space_(std::move(space)), dim_(dim),
      cell_fields_(std::move(cell_fields)) {
    gamma_.validate();
    if (gamma_.size() != cell_fields_.size()) {
        fail(ErrorCode::shape_error, "one field per cell required");
    }
    if (gamma_.size() == 0) {
        fail(ErrorCode::schema_error, "a measure needs at least one cell");
    }
    for (const OperatorField& f : cell_fields_) {
        if (!same_space(f.space(), space_)) {
            fail(ErrorCode::space_mismatch,
                 "cell fields live over different sample spaces");
        }
        if (f.dim_in() != dim_ || f.dim_out() != dim_) {
            fail(ErrorCode::shape_error,
                 "cell fields must be endomorphisms of dimension " +
                     std::to_string(dim_));
        }
    }
}

OperatorField Rpovm::of_subset(std::span<const std::size_t> subset) const {
    OperatorField out(space_, dim_, dim_);
    for (std::size_t cell : subset) {
        if (cell >= cell_fields_.size()) {
            fail(ErrorCode::invalid_parameter, "cell index out of range");
        }
        for (std::size_t atom = 0; atom < out.atoms(); ++atom) {
            out.at(atom) += cell_fields_[cell].at(atom);
        }
    }
    return out;
}

OperatorField Rpovm::total() const {
    std::vector<std::size_t> all(cell_count());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return of_subset(all);
}

bool ValidationReport::all_pass() const {
    return std::all_of(axioms.begin(), axioms.end(),
                       [](const AxiomReport& a) { return a.pass; });
}

double ValidationReport::worst_residual() const {
    double worst = 0.0;
    for (const AxiomReport& a : axioms) {
        worst = std::max(worst, a.worst_residual);
    }
    return worst;
}

namespace {

// Fixed seed for subset sampling beyond the exhaustive range, so validation
// verdicts are reproducible run to run.
constexpr std::uint64_t kSubsetSamplingSeed = 0x72616e6473706563ULL;
constexpr std::size_t kExhaustiveCellLimit = 12;
constexpr std::size_t kSampledSubsets = 200;

std::vector<std::vector<std::size_t>> subset_pool(std::size_t cells) {
    std::vector<std::vector<std::size_t>> pool;
    if (cells <= kExhaustiveCellLimit) {
        const std::size_t count = std::size_t{1} << cells;
        pool.reserve(count);
        for (std::size_t mask = 0; mask < count; ++mask) {
            std::vector<std::size_t> subset;
            for (std::size_t c = 0; c < cells; ++c) {
                if (mask & (std::size_t{1} << c)) {
                    subset.push_back(c);
                }
            }
            pool.push_back(std::move(subset));
        }
        return pool;
    }
    SplitMix64 rng(kSubsetSamplingSeed);
    pool.reserve(kSampledSubsets);
    for (std::size_t k = 0; k < kSampledSubsets; ++k) {
        std::vector<std::size_t> subset;
        for (std::size_t c = 0; c < cells; ++c) {
            if (rng.next() & 1U) {
                subset.push_back(c);
            }
        }
        pool.push_back(std::move(subset));
    }
    return pool;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

struct Worst {
    double residual = 0.0;
    std::string detail;

    void update(double r, const std::string& d) {
        if (r > residual) {
            residual = r;
            detail = d;
        }
    }
};

double projection_residual(const ComplexMatrix& m) {
    return std::max(op_norm(m - m.adjoint()), op_norm(m * m - m));
}

} // namespace

ValidationReport validate_rpovm(const Rpovm& e, double tol) {
    ValidationReport report;
    const SampleSpace& space = *e.space();
    const std::size_t cells = e.cell_count();

    // Each cell field is a random projection.
    {
        Worst worst;
        for (std::size_t c = 0; c < cells; ++c) {
            for (std::size_t atom = 0; atom < space.size(); ++atom) {
                if (space.weights[atom] <= 0.0) {
                    continue;
                }
                const double r = projection_residual(e.cell_field(c).at(atom));
                worst.update(r, "cell '" + e.gamma().cells[c].id + "', atom '" +
                                    space.atom_ids[atom] + "'");
            }
        }
        report.axioms.push_back({"cell fields are random projections",
                                 worst.residual <= tol, worst.residual,
                                 worst.detail});
    }

    // Distinct cells are orthogonal.
    {
        Worst worst;
        for (std::size_t c = 0; c < cells; ++c) {
            for (std::size_t d = c + 1; d < cells; ++d) {
                for (std::size_t atom = 0; atom < space.size(); ++atom) {
                    if (space.weights[atom] <= 0.0) {
                        continue;
                    }
                    const double r = op_norm(e.cell_field(c).at(atom) *
                                             e.cell_field(d).at(atom));
                    worst.update(r, "cells '" + e.gamma().cells[c].id + "' x '" +
                                        e.gamma().cells[d].id + "', atom '" +
                                        space.atom_ids[atom] + "'");
                }
            }
        }
        report.axioms.push_back({"distinct cells are orthogonal",
                                 worst.residual <= tol, worst.residual,
                                 worst.detail});
    }

    // Completeness: E(Gamma) is the identity field.
    {
        Worst worst;
        const OperatorField total = e.total();
        const ComplexMatrix eye = ComplexMatrix::identity(e.dim());
        for (std::size_t atom = 0; atom < space.size(); ++atom) {
            if (space.weights[atom] <= 0.0) {
                continue;
            }
            worst.update(op_norm(total.at(atom) - eye),
                         "atom '" + space.atom_ids[atom] + "'");
        }
        report.axioms.push_back({"E(Gamma) is the identity",
                                 worst.residual <= tol, worst.residual,
                                 worst.detail});
    }

    // Subset projections and multiplicativity over sampled sigma-sets,
    // evaluated atom-major so only one atom's subset sums live at a time.
    {
        Worst worst_proj;
        Worst worst_mult;
        const auto pool = subset_pool(cells);
        constexpr std::size_t kMaxPairChecks = 4096;
        const bool exhaustive_pairs = pool.size() * pool.size() <= kMaxPairChecks;
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        if (exhaustive_pairs) {
            for (std::size_t i = 0; i < pool.size(); ++i) {
                for (std::size_t j = 0; j < pool.size(); ++j) {
                    pairs.emplace_back(i, j);
                }
            }
        } else {
            SplitMix64 rng(kSubsetSamplingSeed ^ 0x9e3779b97f4a7c15ULL);
            for (std::size_t k = 0; k < kMaxPairChecks; ++k) {
                pairs.emplace_back(rng.next_below(pool.size()),
                                   rng.next_below(pool.size()));
            }
        }

        for (std::size_t atom = 0; atom < space.size(); ++atom) {
            if (space.weights[atom] <= 0.0) {
                continue;
            }
            const auto sum_of = [&](const std::vector<std::size_t>& subset) {
                ComplexMatrix m(e.dim(), e.dim());
                for (std::size_t c : subset) {
                    m += e.cell_field(c).at(atom);
                }
                return m;
            };
            std::vector<ComplexMatrix> sums;
            sums.reserve(pool.size());
            for (std::size_t i = 0; i < pool.size(); ++i) {
                sums.push_back(sum_of(pool[i]));
                worst_proj.update(projection_residual(sums.back()),
                                  "subset #" + std::to_string(i) + ", atom '" +
                                      space.atom_ids[atom] + "'");
            }
            for (const auto& [i, j] : pairs) {
                const ComplexMatrix inter = sum_of(intersect(pool[i], pool[j]));
                const double r = op_norm(sums[i] * sums[j] - inter);
                worst_mult.update(r, "subsets #" + std::to_string(i) + " x #" +
                                         std::to_string(j) + ", atom '" +
                                         space.atom_ids[atom] + "'");
            }
        }
        report.axioms.push_back({"sampled E(sigma) are projections",
                                 worst_proj.residual <= tol, worst_proj.residual,
                                 worst_proj.detail});
        report.axioms.push_back({"E(sigma)E(tau) = E(sigma n tau) on samples",
                                 worst_mult.residual <= tol, worst_mult.residual,
                                 worst_mult.detail});
    }

    return report;
}

ScalarRandomMeasure scalar_measure(const Rpovm& e, std::span<const Complex> x,
                                   std::span<const Complex> y) {
    if (x.size() != e.dim() || y.size() != e.dim()) {
        fail(ErrorCode::dimension_mismatch,
             "scalar_measure: probe length does not match the fibre dimension");
    }
    ScalarRandomMeasure out;
    out.per_cell.reserve(e.cell_count());
    for (std::size_t c = 0; c < e.cell_count(); ++c) {
        RandomScalar s(e.space());
        for (std::size_t atom = 0; atom < s.atoms(); ++atom) {
            s.at(atom) = vec_inner(e.cell_field(c).at(atom).apply(x), y);
        }
        out.per_cell.push_back(std::move(s));
    }
    return out;
}

VectorRandomMeasure vector_measure(const Rpovm& e, std::span<const Complex> x) {
    if (x.size() != e.dim()) {
        fail(ErrorCode::dimension_mismatch,
             "vector_measure: probe length does not match the fibre dimension");
    }
    VectorRandomMeasure out;
    out.per_cell.reserve(e.cell_count());
    for (std::size_t c = 0; c < e.cell_count(); ++c) {
        RandomVector v(e.space(), e.dim());
        for (std::size_t atom = 0; atom < v.atoms(); ++atom) {
            v.at(atom) = e.cell_field(c).at(atom).apply(x);
        }
        out.per_cell.push_back(std::move(v));
    }
    return out;
}

bool lemma_check(const MeasurableSpace& gamma,
                 const std::vector<OperatorField>& cell_fields, double tol) {
    if (cell_fields.empty() || gamma.size() != cell_fields.size()) {
        fail(ErrorCode::shape_error, "lemma_check: one field per cell required");
    }
    const SpacePtr space = cell_fields.front().space();
    const std::size_t dim = cell_fields.front().dim_in();
    for (const OperatorField& f : cell_fields) {
        if (!same_space(f.space(), space) || f.dim_in() != dim ||
            f.dim_out() != dim) {
            fail(ErrorCode::shape_error, "lemma_check: inhomogeneous cell fields");
        }
    }

    for (std::size_t atom = 0; atom < space->size(); ++atom) {
        if (space->weights[atom] <= 0.0) {
            continue;
        }
        // Multiplicativity over the generated algebra reduces to vanishing
        // pairwise products of the generators.
        for (std::size_t c = 0; c < cell_fields.size(); ++c) {
            for (std::size_t d = c + 1; d < cell_fields.size(); ++d) {
                if (op_norm(cell_fields[c].at(atom) * cell_fields[d].at(atom)) >
                    tol) {
                    return false;
                }
            }
        }
        // Diagonal quadratic measures on the standard basis: nonnegative
        // cell masses accumulating to the mass of the identity.
        ComplexMatrix total(dim, dim);
        for (const OperatorField& f : cell_fields) {
            total += f.at(atom);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            double mass = 0.0;
            for (const OperatorField& f : cell_fields) {
                const Complex diag = f.at(atom)(i, i);
                if (diag.real() < -tol || std::abs(diag.imag()) > tol) {
                    return false;
                }
                mass += diag.real();
            }
            if (std::abs(mass - 1.0) > tol * static_cast<double>(dim)) {
                return false;
            }
        }
        if (op_norm(total - ComplexMatrix::identity(dim)) >
            tol * static_cast<double>(dim)) {
            return false;
        }
    }
    return true;
}

Rpovm pushforward(const Rpovm& e,
                  const std::map<std::string, std::string>& cell_map,
                  const MeasurableSpace& target) {
    target.validate();
    std::vector<OperatorField> target_fields(
        target.size(), OperatorField(e.space(), e.dim(), e.dim()));
    for (std::size_t c = 0; c < e.cell_count(); ++c) {
        const std::string& id = e.gamma().cells[c].id;
        const auto it = cell_map.find(id);
        if (it == cell_map.end()) {
            fail(ErrorCode::incomplete_map,
                 "pushforward: source cell '" + id + "' has no image");
        }
        const auto target_index = target.index_of(it->second);
        if (!target_index) {
            fail(ErrorCode::incomplete_map,
                 "pushforward: image cell '" + it->second +
                     "' is not a target cell");
        }
        OperatorField& dst = target_fields[*target_index];
        for (std::size_t atom = 0; atom < dst.atoms(); ++atom) {
            dst.at(atom) += e.cell_field(c).at(atom);
        }
    }
    return Rpovm(target, e.space(), e.dim(), std::move(target_fields));
}

} // namespace randspec
