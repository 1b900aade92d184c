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

#include "randspec/field.hpp"

#include <cmath>
#include <string>

#include "randspec/errors.hpp"
#include "randspec/linalg.hpp"

namespace randspec {

namespace {

void require_same(const SpacePtr& a, const SpacePtr& b, const char* op) {
    if (!same_space(a, b)) {
        fail(ErrorCode::space_mismatch,
             std::string(op) + ": operands live over different sample spaces");
    }
}

// Norm computed only where it is safe: zero-weight atoms may carry anything,
// including non-finite placeholders.
double safe_op_norm(const ComplexMatrix& m, double weight) {
    if (weight <= 0.0 && !m.is_finite()) {
        return 0.0;
    }
    return op_norm(m);
}

} // namespace

OperatorField::OperatorField(SpacePtr space, std::size_t dim_in,
                             std::size_t dim_out)
    : space_(std::move(space)), dim_in_(dim_in), dim_out_(dim_out) {
    if (!space_) {
        fail(ErrorCode::invalid_parameter, "null sample space");
    }
    if (dim_in == 0 || dim_out == 0) {
        fail(ErrorCode::invalid_parameter, "field dimensions must be positive");
    }
    matrices_.assign(space_->size(), ComplexMatrix(dim_out, dim_in));
}

OperatorField OperatorField::identity_field(SpacePtr space, std::size_t dim) {
    OperatorField f(std::move(space), dim, dim);
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        f.at(a) = ComplexMatrix::identity(dim);
    }
    return f;
}

OperatorField OperatorField::constant(SpacePtr space, const ComplexMatrix& m) {
    OperatorField f(std::move(space), m.cols(), m.rows());
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        f.at(a) = m;
    }
    return f;
}

RandomVector apply(const OperatorField& a, std::span<const Complex> x) {
    if (x.size() != a.dim_in()) {
        fail(ErrorCode::dimension_mismatch,
             "apply: vector length " + std::to_string(x.size()) +
                 " vs field input dimension " + std::to_string(a.dim_in()));
    }
    RandomVector out(a.space(), a.dim_out());
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        out.at(atom) = a.at(atom).apply(x);
    }
    return out;
}

RandomVector extend_apply(const OperatorField& a, const RandomVector& f) {
    require_same(a.space(), f.space(), "extend_apply");
    if (f.dim() != a.dim_in()) {
        fail(ErrorCode::dimension_mismatch,
             "extend_apply: fibre dimension " + std::to_string(f.dim()) +
                 " vs field input dimension " + std::to_string(a.dim_in()));
    }
    RandomVector out(a.space(), a.dim_out());
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        out.at(atom) = a.at(atom).apply(f.at(atom));
    }
    return out;
}

OperatorField adjoint(const OperatorField& a) {
    OperatorField out(a.space(), a.dim_out(), a.dim_in());
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        out.at(atom) = a.at(atom).adjoint();
    }
    return out;
}

OperatorField compose(const OperatorField& b, const OperatorField& a) {
    require_same(b.space(), a.space(), "compose");
    if (b.dim_in() != a.dim_out()) {
        fail(ErrorCode::dimension_mismatch,
             "compose: inner dimensions " + std::to_string(b.dim_in()) +
                 " vs " + std::to_string(a.dim_out()));
    }
    OperatorField out(a.space(), a.dim_in(), b.dim_out());
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        out.at(atom) = b.at(atom) * a.at(atom);
    }
    return out;
}

FieldClassification classify(const OperatorField& a) {
    FieldClassification cls;
    cls.atom_norms = RandomScalar(a.space());
    double mean_square = 0.0;
    double hs_sq = 0.0;
    double ess = 0.0;
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        const double w = a.space()->weights[atom];
        const double r = safe_op_norm(a.at(atom), w);
        cls.atom_norms.at(atom) = Complex{r, 0.0};
        if (w > 0.0) {
            const double hs = a.at(atom).frobenius_norm();
            mean_square += w * r * r;
            hs_sq += w * hs * hs;
            ess = std::max(ess, r);
        }
    }
    cls.mean_square = mean_square;
    cls.hs_norm_sq = hs_sq;
    cls.ess_sup = ess;
    // Over a finite atomic space every finite field lies in all three
    // classes; the values, not the flags, carry the information.
    cls.measurable_class = true;
    cls.mean_square_class = std::isfinite(mean_square);
    cls.hilbert_schmidt = std::isfinite(hs_sq);
    return cls;
}

bool check_intertwine(
    const std::function<RandomVector(const RandomVector&)>& map,
    const RandomScalar& phi, const std::vector<RandomVector>& probes,
    double tol) {
    for (const RandomVector& f : probes) {
        require_same(phi.space(), f.space(), "check_intertwine");
        const RandomVector lhs = map(multiply(phi, f));
        const RandomVector rhs = multiply(phi, map(f));
        if (!ae_equal(lhs, rhs, tol)) {
            return false;
        }
    }
    return true;
}

bool check_intertwine(const OperatorField& a, const RandomScalar& phi,
                      const std::vector<RandomVector>& probes, double tol) {
    return check_intertwine(
        [&a](const RandomVector& f) { return extend_apply(a, f); }, phi, probes,
        tol);
}

namespace {

void require_projection_operands(const OperatorField& p, const OperatorField& q,
                                 double tol, const char* op) {
    require_same(p.space(), q.space(), op);
    if (p.dim_in() != p.dim_out() || q.dim_in() != q.dim_out() ||
        p.dim_in() != q.dim_in()) {
        fail(ErrorCode::dimension_mismatch,
             std::string(op) + ": operands must be endomorphisms of one fibre");
    }
    for (std::size_t atom = 0; atom < p.atoms(); ++atom) {
        if (p.space()->weights[atom] <= 0.0) {
            continue;
        }
        if (!is_projection(p.at(atom), tol)) {
            fail_at(ErrorCode::hypothesis_violated,
                    std::string(op) + ": left operand is not a projection",
                    p.space()->atom_ids[atom], 0.0);
        }
        if (!is_projection(q.at(atom), tol)) {
            fail_at(ErrorCode::hypothesis_violated,
                    std::string(op) + ": right operand is not a projection",
                    q.space()->atom_ids[atom], 0.0);
        }
    }
}

} // namespace

OperatorField proj_combine(const OperatorField& p, const OperatorField& q,
                           ProjCombine mode, double tol) {
    require_projection_operands(p, q, tol, "proj_combine");
    const std::size_t dim = p.dim_in();
    OperatorField out(p.space(), dim, dim);
    for (std::size_t atom = 0; atom < p.atoms(); ++atom) {
        const double w = p.space()->weights[atom];
        const ComplexMatrix& pm = p.at(atom);
        const ComplexMatrix& qm = q.at(atom);
        const ComplexMatrix pq = pm * qm;

        if (w > 0.0) {
            const char* hypothesis = nullptr;
            double residual = 0.0;
            switch (mode) {
            case ProjCombine::product:
            case ProjCombine::sum_minus_product:
                residual = op_norm(pq - qm * pm);
                if (residual > tol) {
                    hypothesis = "pq = qp";
                }
                break;
            case ProjCombine::sum:
                residual = op_norm(pq);
                if (residual > tol) {
                    hypothesis = "pq = 0";
                }
                break;
            case ProjCombine::difference:
                residual = op_norm(pq - qm);
                if (residual > tol) {
                    hypothesis = "pq = q";
                }
                break;
            case ProjCombine::complement:
                break;
            }
            if (hypothesis != nullptr) {
                fail_at(ErrorCode::hypothesis_violated,
                        "proj_combine: hypothesis '" + std::string(hypothesis) +
                            "' fails at atom '" + p.space()->atom_ids[atom] +
                            "' with residual " + std::to_string(residual),
                        p.space()->atom_ids[atom], residual);
            }
        }

        switch (mode) {
        case ProjCombine::product:
            out.at(atom) = pq;
            break;
        case ProjCombine::sum:
            out.at(atom) = pm + qm;
            break;
        case ProjCombine::complement:
            out.at(atom) = ComplexMatrix::identity(dim) - pm;
            break;
        case ProjCombine::sum_minus_product:
            out.at(atom) = pm + qm - pq;
            break;
        case ProjCombine::difference:
            out.at(atom) = pm - qm;
            break;
        }

        if (w > 0.0 && !is_projection(out.at(atom), 8.0 * tol)) {
            fail_at(ErrorCode::hypothesis_violated,
                    "proj_combine: result fails the projection check at atom '" +
                        p.space()->atom_ids[atom] + "'",
                    p.space()->atom_ids[atom], 0.0);
        }
    }
    return out;
}

bool proj_leq(const OperatorField& p, const OperatorField& q, double tol) {
    require_projection_operands(p, q, tol, "proj_leq");
    for (std::size_t atom = 0; atom < p.atoms(); ++atom) {
        if (p.space()->weights[atom] <= 0.0) {
            continue;
        }
        // PSD test of q - p through its Hermitian spectrum.
        ComplexMatrix diff = q.at(atom) - p.at(atom);
        const EigenDecomposition dec = eig_hermitian(diff, 8.0 * tol);
        for (const Complex& lam : dec.eigenvalues) {
            if (lam.real() < -tol) {
                return false;
            }
        }
    }
    return true;
}

FieldPredicates predicates(const OperatorField& a, double tol) {
    FieldPredicates out;
    if (a.dim_in() != a.dim_out()) {
        return out; // all false: predicates concern endomorphism fields
    }
    const std::size_t dim = a.dim_in();
    out.selfadjoint = true;
    out.normal = true;
    out.unitary = true;
    out.projection = true;
    out.pure_contraction = true;
    const ComplexMatrix eye = ComplexMatrix::identity(dim);
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        if (a.space()->weights[atom] <= 0.0) {
            continue;
        }
        const ComplexMatrix& m = a.at(atom);
        const ComplexMatrix mh = m.adjoint();
        const double scale = std::max(1.0, op_norm(m));
        if (op_norm(m - mh) > tol * scale) {
            out.selfadjoint = false;
        }
        if (op_norm(m * mh - mh * m) > tol * scale * scale) {
            out.normal = false;
        }
        if (op_norm(mh * m - eye) > tol) {
            out.unitary = false;
        }
        if (!is_projection(m, tol)) {
            out.projection = false;
        }
        if (!(op_norm(m) < 1.0)) {
            out.pure_contraction = false;
        }
    }
    return out;
}

double field_distance(const OperatorField& a, const OperatorField& b) {
    require_same(a.space(), b.space(), "field_distance");
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
        fail(ErrorCode::dimension_mismatch, "field_distance: shapes differ");
    }
    double worst = 0.0;
    for (std::size_t atom = 0; atom < a.atoms(); ++atom) {
        if (a.space()->weights[atom] <= 0.0) {
            continue;
        }
        worst = std::max(worst, op_norm(a.at(atom) - b.at(atom)));
    }
    return worst;
}

} // namespace randspec
