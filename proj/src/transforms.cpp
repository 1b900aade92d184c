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

#include "randspec/transforms.hpp"

#include <cmath>
#include <string>

#include "randspec/errors.hpp"
#include "randspec/linalg.hpp"

namespace randspec {

namespace {

void require_endomorphism(const OperatorField& a, const char* op) {
    if (a.dim_in() != a.dim_out()) {
        fail(ErrorCode::dimension_mismatch,
             std::string(op) + " requires an endomorphism field");
    }
}

} // namespace

MatrixTransform z_of(const ComplexMatrix& t, double tol) {
    if (!t.is_square()) {
        fail(ErrorCode::dimension_mismatch, "z_of requires a square matrix");
    }
    if (!t.is_finite()) {
        fail(ErrorCode::invalid_parameter, "z_of: non-finite entries");
    }
    const ComplexMatrix s = ComplexMatrix::identity(t.rows()) + t.adjoint() * t;
    // s >= I, so the inverse and its square root are well conditioned.
    MatrixTransform out;
    out.c = psd_power(s, -1.0, tol);
    out.z = t * psd_power(out.c, 0.5, tol);
    return out;
}

ComplexMatrix t_of(const ComplexMatrix& z, double margin) {
    if (!z.is_square()) {
        fail(ErrorCode::dimension_mismatch, "t_of requires a square matrix");
    }
    const double norm = op_norm(z);
    if (!(norm < 1.0 - margin)) {
        fail_at(ErrorCode::not_pure_contraction,
                "operator norm " + std::to_string(norm) +
                    " is not below 1 - margin",
                "", norm);
    }
    const ComplexMatrix defect =
        ComplexMatrix::identity(z.rows()) - z.adjoint() * z;
    // defect >= (1 - norm^2) I > 0; the negative-power tolerance stays
    // below that floor.
    const double floor = (1.0 - norm) * (1.0 - norm);
    return z * psd_power(defect, -0.5, std::min(1e-12, 0.5 * floor));
}

TransformPair bounded_transform(const OperatorField& a) {
    require_endomorphism(a, "bounded_transform");
    TransformPair out;
    out.original = a;
    out.transformed = OperatorField(a.space(), a.dim_in(), a.dim_in());
    out.defect = OperatorField(a.space(), a.dim_in(), a.dim_in());
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        if (a.space()->weights[atom] <= 0.0 && !a.at(atom).is_finite()) {
            continue; // null atoms may carry placeholder entries
        }
        MatrixTransform mt = z_of(a.at(atom));
        out.transformed.at(atom) = std::move(mt.z);
        out.defect.at(atom) = std::move(mt.c);
    }
    return out;
}

OperatorField zc_field(const OperatorField& a) {
    return bounded_transform(a).transformed;
}

OperatorField tc_field(const OperatorField& b, double margin) {
    require_endomorphism(b, "tc_field");
    OperatorField out(b.space(), b.dim_in(), b.dim_in());
    for (std::size_t atom = 0; atom < b.atoms(); ++atom) {
        const double w = b.space()->weights[atom];
        if (w <= 0.0) {
            // Null atoms stay zero unless the inverse happens to exist.
            if (b.at(atom).is_finite() && op_norm(b.at(atom)) < 1.0 - margin) {
                out.at(atom) = t_of(b.at(atom), margin);
            }
            continue;
        }
        try {
            out.at(atom) = t_of(b.at(atom), margin);
        } catch (const Error& err) {
            if (err.code() == ErrorCode::not_pure_contraction) {
                fail_at(ErrorCode::not_pure_contraction,
                        "field is not a pure contraction at atom '" +
                            b.space()->atom_ids[atom] + "': " + err.what(),
                        b.space()->atom_ids[atom], err.residual());
            }
            throw;
        }
    }
    return out;
}

Complex g1_map(Complex z, double margin) {
    const double mod = std::abs(z);
    if (!(mod < 1.0 - margin)) {
        fail_at(ErrorCode::out_of_disc,
                "|z| = " + std::to_string(mod) + " is not below 1 - margin", "",
                mod);
    }
    return z / std::sqrt(1.0 - mod * mod);
}

PipelineResult spectral_theorem_pipeline(const OperatorField& a,
                                         const Tolerances& tols) {
    require_endomorphism(a, "spectral_theorem_pipeline");
    if (!predicates(a, tols.proj_tol).normal) {
        fail(ErrorCode::not_normal,
             "pipeline input must be a normal field");
    }

    PipelineResult result;
    result.direct = spectral_decompose_auto(a, tols);

    // Contractive detour: decompose the bounded transform on disc cells.
    const OperatorField b = zc_field(a);
    const SpectralDecomposition disc = spectral_decompose_auto(b, tols);

    result.report.support_in_disc = true;
    std::vector<Complex> mapped;
    mapped.reserve(disc.representatives.size());
    for (const Complex& rep : disc.representatives) {
        if (!(std::abs(rep) < 1.0)) {
            // The transform of a finite field is a strict contraction; a
            // representative outside the disc means the detour itself broke.
            result.report.support_in_disc = false;
            fail_at(ErrorCode::out_of_disc,
                    "disc representative |z| = " +
                        std::to_string(std::abs(rep)) +
                        " escaped the open unit disc",
                    "", std::abs(rep));
        }
        mapped.push_back(g1_map(rep, 0.0));
    }

    // Target cells around the mapped representatives; map-side merging can
    // only join representatives that were already one cluster upstream, and
    // the pushforward absorbs it either way.
    double scale = 1.0;
    for (const Complex& rep : mapped) {
        scale = std::max(scale, std::abs(rep));
    }
    const double cluster_tol = tols.cluster_rel * scale;
    const bool selfadjoint = predicates(a, tols.proj_tol).selfadjoint;

    std::vector<std::ptrdiff_t> target_of(mapped.size(), -1);
    std::vector<Complex> target_reps;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        for (std::size_t j = 0; j < target_reps.size(); ++j) {
            if (std::abs(mapped[i] - target_reps[j]) < 2.0 * cluster_tol) {
                target_of[i] = static_cast<std::ptrdiff_t>(j);
                break;
            }
        }
        if (target_of[i] < 0) {
            target_of[i] = static_cast<std::ptrdiff_t>(target_reps.size());
            target_reps.push_back(mapped[i]);
        }
    }

    MeasurableSpace target;
    for (std::size_t j = 0; j < target_reps.size(); ++j) {
        Cell cell;
        cell.id = "g" + std::to_string(j);
        const Complex rep = target_reps[j];
        cell.region = selfadjoint
                          ? CellRegion::interval(rep.real() - cluster_tol,
                                                 rep.real() + cluster_tol)
                          : CellRegion::box(rep.real() - cluster_tol,
                                            rep.real() + cluster_tol,
                                            rep.imag() - cluster_tol,
                                            rep.imag() + cluster_tol);
        target.cells.push_back(std::move(cell));
    }
    std::map<std::string, std::string> cell_map;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        cell_map[disc.measure.gamma().cells[i].id] =
            target.cells[static_cast<std::size_t>(target_of[i])].id;
    }
    result.measure = pushforward(disc.measure, cell_map, target);
    result.representatives = target_reps;

    // Reconstruction through the detour against the field itself.
    const OperatorField rebuilt =
        reconstruct(result.measure, result.representatives, tols.null_tol);
    result.report.reconstruction_residual = field_distance(a, rebuilt);

    // Cell-by-cell alignment with the direct decomposition.
    const auto& direct_reps = result.direct.representatives;
    result.report.aligned = direct_reps.size() == target_reps.size();
    if (result.report.aligned) {
        std::vector<bool> used(target_reps.size(), false);
        for (std::size_t i = 0; i < direct_reps.size(); ++i) {
            std::ptrdiff_t best = -1;
            double best_dist = 0.0;
            for (std::size_t j = 0; j < target_reps.size(); ++j) {
                if (used[j]) {
                    continue;
                }
                const double d = std::abs(direct_reps[i] - target_reps[j]);
                if (best < 0 || d < best_dist) {
                    best = static_cast<std::ptrdiff_t>(j);
                    best_dist = d;
                }
            }
            used[static_cast<std::size_t>(best)] = true;
            result.report.alignment_rep_distance =
                std::max(result.report.alignment_rep_distance, best_dist);
            const double field_resid = field_distance(
                result.direct.measure.cell_field(i),
                result.measure.cell_field(static_cast<std::size_t>(best)));
            result.report.alignment_residual =
                std::max(result.report.alignment_residual, field_resid);
        }
    }

    result.report.pass =
        result.report.support_in_disc && result.report.aligned &&
        result.report.reconstruction_residual <= tols.pipeline_tol &&
        result.report.alignment_residual <= tols.pipeline_tol &&
        result.report.alignment_rep_distance <= tols.pipeline_tol * scale;
    return result;
}

} // namespace randspec
