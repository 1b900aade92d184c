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

#include "randspec/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "randspec/errors.hpp"
#include "randspec/linalg.hpp"

namespace randspec {

MeasurableFunction::MeasurableFunction(std::size_t cells)
    : values_(cells, Complex{0.0, 0.0}), infinite_(cells, false) {}

void MeasurableFunction::set(std::size_t cell, Complex value) {
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        fail(ErrorCode::invalid_parameter,
             "finite cell values must be finite; use set_infinite");
    }
    values_[cell] = value;
    infinite_[cell] = false;
}

void MeasurableFunction::set_infinite(std::size_t cell) {
    values_[cell] = Complex{0.0, 0.0};
    infinite_[cell] = true;
}

Complex MeasurableFunction::at(std::size_t cell) const {
    if (infinite_[cell]) {
        fail(ErrorCode::invalid_parameter,
             "reading the finite value of an infinite cell");
    }
    return values_[cell];
}

double MeasurableFunction::max_finite_abs() const {
    double m = 0.0;
    for (std::size_t c = 0; c < values_.size(); ++c) {
        if (!infinite_[c]) {
            m = std::max(m, std::abs(values_[c]));
        }
    }
    return m;
}

bool MeasurableFunction::has_infinite() const {
    return std::any_of(infinite_.begin(), infinite_.end(),
                       [](bool b) { return b; });
}

namespace {

void require_aligned(const Rpovm& e, const MeasurableFunction& f) {
    if (f.size() != e.cell_count()) {
        fail(ErrorCode::shape_error,
             "integrand defined on " + std::to_string(f.size()) +
                 " cells, measure has " + std::to_string(e.cell_count()));
    }
}

// A cell is null when its field annihilates every positive-weight atom.
bool cell_is_null(const Rpovm& e, std::size_t cell, double tol) {
    for (std::size_t atom = 0; atom < e.space()->size(); ++atom) {
        if (e.space()->weights[atom] <= 0.0) {
            continue;
        }
        if (op_norm(e.cell_field(cell).at(atom)) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace

OperatorField integrate_bounded(const Rpovm& e, const MeasurableFunction& f,
                                double tol) {
    require_aligned(e, f);
    OperatorField out(e.space(), e.dim(), e.dim());
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (f.infinite_at(c)) {
            // Infinity times a null cell contributes nothing by convention.
            if (!cell_is_null(e, c, tol)) {
                fail_at(ErrorCode::unbounded_integrand,
                        "integrand is infinite on non-null cell '" +
                            e.gamma().cells[c].id + "'",
                        e.gamma().cells[c].id, 0.0);
            }
            continue;
        }
        const Complex value = f.at(c);
        for (std::size_t atom = 0; atom < out.atoms(); ++atom) {
            out.at(atom) += value * e.cell_field(c).at(atom);
        }
    }
    return out;
}

BoundingSequence bounding_sequence_for(const MeasurableFunction& f,
                                       const Rpovm& e, double tol) {
    require_aligned(e, f);
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (f.infinite_at(c) && !cell_is_null(e, c, tol)) {
            fail_at(ErrorCode::not_ae_finite,
                    "integrand is infinite on non-null cell '" +
                        e.gamma().cells[c].id + "'",
                    e.gamma().cells[c].id, 0.0);
        }
    }
    const std::size_t n0 =
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::ceil(f.max_finite_abs())));
    BoundingSequence seq;
    seq.stages.reserve(n0);
    for (std::size_t n = 1; n <= n0; ++n) {
        std::vector<std::size_t> stage;
        for (std::size_t c = 0; c < f.size(); ++c) {
            if (!f.infinite_at(c) &&
                std::abs(f.at(c)) <= static_cast<double>(n)) {
                stage.push_back(c);
            }
        }
        seq.stages.push_back(std::move(stage));
    }
    return seq;
}

bool extended_domain(const Rpovm& e, const MeasurableFunction& f,
                     std::span<const Complex> x, double tol) {
    require_aligned(e, f);
    if (x.size() != e.dim()) {
        fail(ErrorCode::dimension_mismatch,
             "extended_domain: probe length does not match the fibre dimension");
    }
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (!f.infinite_at(c)) {
            continue;
        }
        for (std::size_t atom = 0; atom < e.space()->size(); ++atom) {
            if (e.space()->weights[atom] <= 0.0) {
                continue;
            }
            if (vec_norm(e.cell_field(c).at(atom).apply(x)) > tol) {
                return false;
            }
        }
    }
    return true;
}

RandomVector integrate_extended(const Rpovm& e, const MeasurableFunction& f,
                                std::span<const Complex> x, double tol) {
    if (!extended_domain(e, f, x, tol)) {
        fail(ErrorCode::domain_violation,
             "vector lies outside the domain of the extended integral");
    }
    // Finite cells accumulate in index order; any bounding sequence realizes
    // the same sum, so the result is sequence-independent by construction.
    RandomVector out(e.space(), e.dim());
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (f.infinite_at(c)) {
            continue;
        }
        const Complex value = f.at(c);
        for (std::size_t atom = 0; atom < out.atoms(); ++atom) {
            const CVector px = e.cell_field(c).at(atom).apply(x);
            CVector& acc = out.at(atom);
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += value * px[i];
            }
        }
    }
    return out;
}

namespace {

struct AtomEigen {
    std::size_t atom;
    Complex value;
    ComplexMatrix projection;
};

void require_endomorphism(const OperatorField& a, const char* op) {
    if (a.dim_in() != a.dim_out()) {
        fail(ErrorCode::dimension_mismatch,
             std::string(op) + " requires an endomorphism field");
    }
}

// Per-atom spectral data for every atom whose matrix is usable. Zero-weight
// atoms with non-finite or non-normal entries are skipped silently; they
// cannot carry spectral mass anyway.
std::vector<AtomEigen> atomwise_spectra(const OperatorField& a,
                                        const Tolerances& tols) {
    std::vector<AtomEigen> out;
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        const double w = a.space()->weights[atom];
        const ComplexMatrix& m = a.at(atom);
        if (w <= 0.0 && !m.is_finite()) {
            continue;
        }
        EigenDecomposition dec;
        try {
            dec = diagonalize_normal(m, tols.proj_tol);
        } catch (const Error& err) {
            if (w <= 0.0) {
                continue;
            }
            if (err.code() == ErrorCode::not_normal) {
                fail_at(ErrorCode::not_normal,
                        "field is not normal at atom '" +
                            a.space()->atom_ids[atom] + "': " + err.what(),
                        a.space()->atom_ids[atom], err.residual());
            }
            throw;
        }
        for (std::size_t k = 0; k < dec.size(); ++k) {
            out.push_back(
                {atom, dec.eigenvalues[k], std::move(dec.projections[k])});
        }
    }
    return out;
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

} // namespace

Rpovm spectral_decompose(const OperatorField& a, const MeasurableSpace& cells,
                         const Tolerances& tols) {
    require_endomorphism(a, "spectral_decompose");
    cells.validate();
    if (cells.size() == 0) {
        fail(ErrorCode::schema_error, "spectral_decompose needs at least one cell");
    }
    const std::vector<AtomEigen> spectra = atomwise_spectra(a, tols);
    std::vector<OperatorField> cell_fields(
        cells.size(), OperatorField(a.space(), a.dim_in(), a.dim_in()));

    for (const AtomEigen& pair : spectra) {
        // Half-open regions make containment almost a partition; a value on
        // a shared boundary resolves to the lexicographically smallest
        // (re_lo, im_lo) among the containing cells.
        std::ptrdiff_t chosen = -1;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!cells.cells[c].region.contains(pair.value, tols.im_slack)) {
                continue;
            }
            if (chosen < 0) {
                chosen = static_cast<std::ptrdiff_t>(c);
                continue;
            }
            const CellRegion& best = cells.cells[static_cast<std::size_t>(chosen)].region;
            const CellRegion& cand = cells.cells[c].region;
            if (cand.re_lo < best.re_lo ||
                (cand.re_lo == best.re_lo && cand.im_lo < best.im_lo)) {
                chosen = static_cast<std::ptrdiff_t>(c);
            }
        }
        if (chosen < 0) {
            if (a.space()->weights[pair.atom] <= 0.0) {
                continue;
            }
            fail_at(ErrorCode::cell_coverage,
                    "eigenvalue (" + std::to_string(pair.value.real()) + ", " +
                        std::to_string(pair.value.imag()) +
                        ") at atom '" + a.space()->atom_ids[pair.atom] +
                        "' lies in no cell",
                    a.space()->atom_ids[pair.atom], std::abs(pair.value));
        }
        cell_fields[static_cast<std::size_t>(chosen)].at(pair.atom) +=
            pair.projection;
    }
    return Rpovm(cells, a.space(), a.dim_in(), std::move(cell_fields));
}

SpectralDecomposition spectral_decompose_auto(const OperatorField& a,
                                              const Tolerances& tols) {
    require_endomorphism(a, "spectral_decompose_auto");
    const std::vector<AtomEigen> spectra = atomwise_spectra(a, tols);
    if (spectra.empty()) {
        fail(ErrorCode::internal_error, "no spectral data: empty field");
    }

    double scale = 0.0;
    for (const AtomEigen& pair : spectra) {
        scale = std::max(scale, std::abs(pair.value));
    }
    const double cluster_tol = tols.cluster_rel * std::max(scale, 1.0);

    // Union-find across atoms with link distance twice the cluster
    // tolerance; chained clusters inherit the union of their members.
    const std::size_t n = spectra.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(spectra[i].value - spectra[j].value) <
                2.0 * cluster_tol) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    {
        std::vector<std::ptrdiff_t> group_of(n, -1);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t root = find(i);
            if (group_of[root] < 0) {
                group_of[root] = static_cast<std::ptrdiff_t>(groups.size());
                groups.emplace_back();
            }
            groups[static_cast<std::size_t>(group_of[root])].push_back(i);
        }
    }

    // Representative: probability-weighted mean over the members, falling
    // back to the plain mean when only null atoms contribute.
    std::vector<Complex> representatives;
    representatives.reserve(groups.size());
    for (const auto& group : groups) {
        Complex weighted{0.0, 0.0};
        double total = 0.0;
        Complex plain{0.0, 0.0};
        for (std::size_t idx : group) {
            const double w = a.space()->weights[spectra[idx].atom];
            weighted += w * spectra[idx].value;
            total += w;
            plain += spectra[idx].value;
        }
        representatives.push_back(
            total > 0.0 ? weighted / total
                        : plain / static_cast<double>(group.size()));
    }

    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return lex_less(representatives[x], representatives[y]);
    });

    const bool selfadjoint = predicates(a, tols.proj_tol).selfadjoint;
    MeasurableSpace cells;
    std::vector<OperatorField> cell_fields;
    std::vector<Complex> sorted_reps;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const std::size_t g = order[rank];
        const Complex rep = representatives[g];
        Cell cell;
        cell.id = "z" + std::to_string(rank);
        cell.region = selfadjoint
                          ? CellRegion::interval(rep.real() - cluster_tol,
                                                 rep.real() + cluster_tol)
                          : CellRegion::box(rep.real() - cluster_tol,
                                            rep.real() + cluster_tol,
                                            rep.imag() - cluster_tol,
                                            rep.imag() + cluster_tol);
        cells.cells.push_back(std::move(cell));
        OperatorField field(a.space(), a.dim_in(), a.dim_in());
        for (std::size_t idx : groups[g]) {
            field.at(spectra[idx].atom) += spectra[idx].projection;
        }
        cell_fields.push_back(std::move(field));
        sorted_reps.push_back(rep);
    }

    SpectralDecomposition out;
    out.measure =
        Rpovm(std::move(cells), a.space(), a.dim_in(), std::move(cell_fields));
    out.representatives = std::move(sorted_reps);
    return out;
}

OperatorField reconstruct(const Rpovm& e,
                          std::span<const Complex> representatives,
                          double tol) {
    if (representatives.size() != e.cell_count()) {
        fail(ErrorCode::shape_error,
             "one representative per cell required");
    }
    OperatorField out(e.space(), e.dim(), e.dim());
    for (std::size_t c = 0; c < e.cell_count(); ++c) {
        const Complex rep = representatives[c];
        if (!std::isfinite(rep.real()) || !std::isfinite(rep.imag())) {
            if (!cell_is_null(e, c, tol)) {
                fail_at(ErrorCode::unbounded_integrand,
                        "non-finite representative on non-null cell '" +
                            e.gamma().cells[c].id + "'",
                        e.gamma().cells[c].id, 0.0);
            }
            continue;
        }
        for (std::size_t atom = 0; atom < out.atoms(); ++atom) {
            out.at(atom) += rep * e.cell_field(c).at(atom);
        }
    }
    return out;
}

} // namespace randspec
