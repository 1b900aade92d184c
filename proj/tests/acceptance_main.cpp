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

// Acceptance suite. Each criterion prints exactly one [PASS]/[FAIL] line;
// the process exits nonzero when any criterion fails. Tolerances are pinned
// here, next to the checks they govern.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "randspec/calculus.hpp"
#include "randspec/errors.hpp"
#include "randspec/linalg.hpp"
#include "randspec/scenario.hpp"
#include "randspec/transforms.hpp"
#include "testutil.hpp"

using namespace randspec;

namespace {

constexpr int kTrials = 200;

// Pinned tolerances, one constant per criterion clause.
constexpr double kTransformResidualTol = 1e-9;  // criterion 1: identities
constexpr double kTransformAnchorTol = 1e-12;   // criterion 1: scalar anchor
constexpr double kStarRepTol = 1e-12;           // criterion 3: algebra laws
constexpr double kContractSlack = 1e-13;        // criterion 3: relative slack
constexpr double kRpovmTol = 1e-11;             // criterion 4
constexpr double kRoundtripTol = 1e-8;          // criteria 5 and 6: operators
constexpr double kMultisetTol = 1e-9;           // criteria 5 and 6: spectra
constexpr double kPushforwardTol = 1e-11;       // criterion 7
constexpr double kAdjointTol = 1e-13;           // criterion 9
constexpr double kHsTol = 1e-10;                // criterion 10

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) {
            detail = why;
        }
        pass = false;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) {
            fail(why);
        }
    }
};

std::size_t draw_dim(SplitMix64& rng, std::size_t lo, std::size_t hi) {
    return lo + rng.next_below(hi - lo + 1);
}

SpacePtr draw_space(SplitMix64& rng, int trial) {
    // Mostly small spaces; every 10th trial large; every 3rd with a
    // zero-weight atom exercising the almost-everywhere semantics.
    const std::size_t atoms =
        trial % 10 == 9 ? 50 : 2 + rng.next_below(7);
    return testutil::rand_space(rng, atoms, trial % 3 == 0);
}

// ---------------------------------------------------------------- criterion 1
Outcome criterion_transform_identities() {
    Outcome out;
    SplitMix64 rng(0xA1);

    // Scalar anchor: T = [[3]] -> Z = [[3/sqrt(10)]], C = [[1/10]].
    ComplexMatrix t3(1, 1);
    t3(0, 0) = {3.0, 0.0};
    const MatrixTransform anchor = z_of(t3);
    out.require(std::abs(anchor.z(0, 0) -
                         Complex{3.0 / std::sqrt(10.0), 0.0}) <=
                    kTransformAnchorTol,
                "anchor Z != 3/sqrt(10)");
    out.require(std::abs(anchor.c(0, 0) - Complex{0.1, 0.0}) <=
                    kTransformAnchorTol,
                "anchor C != 1/10");
    out.require(std::abs(t_of(anchor.z)(0, 0) - Complex{3.0, 0.0}) <=
                    kTransformAnchorTol,
                "anchor roundtrip");

    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t dim = draw_dim(rng, 1, 8);
        OperatorField a(sp, dim, dim);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            switch (trial % 3) {
            case 0:
                a.at(atom) = testutil::rand_hermitian(rng, dim);
                break;
            case 1: {
                CVector values(dim);
                for (auto& v : values) {
                    v = rng.next_gaussian_complex();
                }
                a.at(atom) = testutil::planted_normal(rng, values);
                break;
            }
            default:
                a.at(atom) = testutil::rand_matrix(rng, dim, dim);
                break;
            }
        }
        const TransformPair pair = bounded_transform(a);
        const OperatorField back = tc_field(pair.transformed);
        const ComplexMatrix eye = ComplexMatrix::identity(dim);
        for (std::size_t atom = 0; atom < sp->size() && out.pass; ++atom) {
            if (sp->weights[atom] <= 0.0) {
                continue;
            }
            const ComplexMatrix& z = pair.transformed.at(atom);
            const ComplexMatrix& c = pair.defect.at(atom);
            out.require(testutil::mat_dist(eye - z.adjoint() * z, c) <=
                            kTransformResidualTol,
                        "I - Z*Z != C at trial " + std::to_string(trial));
            // 0 <= C <= I through the spectrum of the defect.
            const EigenDecomposition spec = eig_hermitian(c, 1e-9);
            for (const Complex& ev : spec.eigenvalues) {
                out.require(ev.real() >= -kTransformResidualTol &&
                                ev.real() <= 1.0 + kTransformResidualTol,
                            "defect spectrum outside [0,1]");
            }
            out.require(testutil::mat_dist(back.at(atom), a.at(atom)) <=
                            kTransformResidualTol,
                        "roundtrip residual at trial " +
                            std::to_string(trial));
        }
    }
    return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome criterion_pure_contraction() {
    Outcome out;
    SplitMix64 rng(0xA2);
    int violations = 0;
    for (int trial = 0; trial < kTrials; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t dim = draw_dim(rng, 1, 8);
        OperatorField a(sp, dim, dim);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            a.at(atom) = trial % 2 == 0
                             ? testutil::rand_matrix(rng, dim, dim, 3.0)
                             : testutil::rand_hermitian(rng, dim, 3.0);
        }
        const OperatorField z = zc_field(a);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            if (sp->weights[atom] <= 0.0) {
                continue;
            }
            if (!(op_norm(z.at(atom)) < 1.0)) {
                ++violations;
            }
        }
    }
    out.require(violations == 0,
                std::to_string(violations) + " strictness violations");
    return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome criterion_star_representation() {
    Outcome out;
    SplitMix64 rng(0xA3);
    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t cells = 2 + rng.next_below(5); // |Gamma| <= 6
        const std::size_t dim = draw_dim(rng, cells, 8);
        const Rpovm e = testutil::rand_rpovm(rng, sp, dim, cells);

        MeasurableFunction f(cells), g(cells), sum(cells), prod(cells),
            conj_f(cells);
        double sup_f = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
            const Complex fv = 2.0 * rng.next_gaussian_complex();
            const Complex gv = 2.0 * rng.next_gaussian_complex();
            f.set(c, fv);
            g.set(c, gv);
            sum.set(c, fv + gv);
            prod.set(c, fv * gv);
            conj_f.set(c, std::conj(fv));
            sup_f = std::max(sup_f, std::abs(fv));
        }

        const OperatorField i_f = integrate_bounded(e, f, 1e-12);
        const OperatorField i_g = integrate_bounded(e, g, 1e-12);
        const OperatorField i_sum = integrate_bounded(e, sum, 1e-12);
        const OperatorField i_prod = integrate_bounded(e, prod, 1e-12);
        const OperatorField i_conj = integrate_bounded(e, conj_f, 1e-12);

        for (std::size_t atom = 0; atom < sp->size() && out.pass; ++atom) {
            if (sp->weights[atom] <= 0.0) {
                continue;
            }
            out.require(testutil::mat_dist(i_sum.at(atom),
                                           i_f.at(atom) + i_g.at(atom)) <=
                            kStarRepTol,
                        "additivity at trial " + std::to_string(trial));
            out.require(testutil::mat_dist(i_prod.at(atom),
                                           i_f.at(atom) * i_g.at(atom)) <=
                            kStarRepTol,
                        "multiplicativity at trial " + std::to_string(trial));
            out.require(testutil::mat_dist(i_conj.at(atom),
                                           i_f.at(atom).adjoint()) <=
                            kStarRepTol,
                        "conjugation at trial " + std::to_string(trial));
        }

        // Contractivity with zero violations (kContractSlack covers only
        // floating-point roundoff at equality cases).
        CVector x(dim);
        for (auto& xi : x) {
            xi = rng.next_gaussian_complex();
        }
        const double lhs = l2_norm(randspec::apply(i_f, x));
        const double rhs = sup_f * vec_norm(x);
        out.require(lhs <= rhs * (1.0 + kContractSlack),
                    "contractivity violated at trial " +
                        std::to_string(trial));
    }
    return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome criterion_rpovm_axioms() {
    Outcome out;
    SplitMix64 rng(0xA4);
    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t cells = 2 + rng.next_below(4); // |Gamma| <= 5
        const std::size_t dim = draw_dim(rng, cells, 8);
        const Rpovm e = testutil::rand_rpovm(rng, sp, dim, cells);

        // validate_rpovm enumerates every subset for |Gamma| <= 12 and all
        // subset pairs when the pool is small, which holds for |Gamma| <= 5.
        const ValidationReport report = validate_rpovm(e, kRpovmTol);
        out.require(report.all_pass(),
                    "axioms failed at trial " + std::to_string(trial) +
                        " (worst " + format_g17(report.worst_residual()) +
                        ")");

        // Monotonicity under inclusion on a random pair sigma inside tau.
        std::vector<std::size_t> sigma, tau;
        for (std::size_t c = 0; c < cells; ++c) {
            const bool in_tau = rng.next_below(2) == 1;
            if (in_tau) {
                tau.push_back(c);
                if (rng.next_below(2) == 1) {
                    sigma.push_back(c);
                }
            }
        }
        out.require(proj_leq(e.of_subset(sigma), e.of_subset(tau), kRpovmTol),
                    "monotonicity failed at trial " + std::to_string(trial));
    }
    return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome criterion_spectral_roundtrip() {
    Outcome out;
    SplitMix64 rng(0xA5);
    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial % 10 == 9 ? 1 : trial);
        const std::size_t dim = draw_dim(rng, 2, 6);
        std::vector<CVector> spectra(sp->size());
        OperatorField a(sp, dim, dim);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            CVector values(dim);
            for (auto& v : values) {
                v = rng.next_gaussian_complex();
            }
            if (trial % 5 == 0 && dim >= 2) {
                values[1] = values[0]; // deliberate exact multiplicity
            }
            a.at(atom) = testutil::planted_normal(rng, values);
            spectra[atom] = std::move(values);
        }

        const SpectralDecomposition dec = spectral_decompose_auto(a);
        const OperatorField rebuilt =
            reconstruct(dec.measure, dec.representatives, 1e-12);
        for (std::size_t atom = 0; atom < sp->size() && out.pass; ++atom) {
            if (sp->weights[atom] <= 0.0) {
                continue;
            }
            out.require(op_norm(rebuilt.at(atom) - a.at(atom)) <=
                            kRoundtripTol,
                        "reconstruction residual at trial " +
                            std::to_string(trial));

            // Oracle: spectra are planted by construction, so the cluster
            // representatives must reproduce them with multiplicity.
            CVector found;
            for (std::size_t c = 0; c < dec.measure.cell_count(); ++c) {
                const auto copies = static_cast<std::size_t>(std::lround(
                    dec.measure.cell_field(c).at(atom).trace().real()));
                for (std::size_t k = 0; k < copies; ++k) {
                    found.push_back(dec.representatives[c]);
                }
            }
            out.require(
                testutil::multiset_close(found, spectra[atom], kMultisetTol),
                "eigenvalue multiset mismatch at trial " +
                    std::to_string(trial));
        }
    }
    return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome criterion_pipeline_equivalence() {
    Outcome out;
    SplitMix64 rng(0xA6);
    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial % 10 == 9 ? 1 : trial);
        const std::size_t dim = draw_dim(rng, 2, 6);
        OperatorField a(sp, dim, dim);
        const bool selfadjoint_case = trial % 2 == 0;
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            CVector values(dim);
            for (auto& v : values) {
                v = selfadjoint_case
                        ? Complex{1.5 * rng.next_gaussian(), 0.0}
                        : 1.5 * rng.next_gaussian_complex();
            }
            a.at(atom) = testutil::planted_normal(rng, values);
        }

        const PipelineResult pr = spectral_theorem_pipeline(a);
        out.require(pr.report.pass,
                    "pipeline verdict failed at trial " +
                        std::to_string(trial));
        out.require(pr.report.reconstruction_residual <= kRoundtripTol &&
                        pr.report.alignment_residual <= kRoundtripTol,
                    "pipeline residuals at trial " + std::to_string(trial));

        // Eigenvalue mapping: g1 applied to the disc spectrum equals the
        // plain spectrum, atom-wise as multisets.
        const OperatorField z = zc_field(a);
        for (std::size_t atom = 0; atom < sp->size() && out.pass; ++atom) {
            if (sp->weights[atom] <= 0.0) {
                continue;
            }
            const EigenDecomposition direct =
                diagonalize_normal(a.at(atom), 1e-9);
            const EigenDecomposition disc =
                diagonalize_normal(z.at(atom), 1e-9);
            CVector mapped, plain;
            for (std::size_t k = 0; k < disc.eigenvalues.size(); ++k) {
                const auto copies = static_cast<std::size_t>(std::lround(
                    disc.projections[k].trace().real()));
                for (std::size_t c = 0; c < copies; ++c) {
                    mapped.push_back(g1_map(disc.eigenvalues[k]));
                }
            }
            for (std::size_t k = 0; k < direct.eigenvalues.size(); ++k) {
                const auto copies = static_cast<std::size_t>(std::lround(
                    direct.projections[k].trace().real()));
                for (std::size_t c = 0; c < copies; ++c) {
                    plain.push_back(direct.eigenvalues[k]);
                }
            }
            out.require(testutil::multiset_close(mapped, plain, kMultisetTol),
                        "g1 mapping mismatch at trial " +
                            std::to_string(trial));
        }
    }
    return out;
}

// ---------------------------------------------------------------- criterion 7
Outcome criterion_pushforward() {
    Outcome out;
    SplitMix64 rng(0xA7);
    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t cells = 2 + rng.next_below(5);
        const std::size_t dim = draw_dim(rng, cells, 8);
        const Rpovm e = testutil::rand_rpovm(rng, sp, dim, cells);

        // Random surjection-onto-used-cells phi and target space.
        const std::size_t target_cells = 1 + rng.next_below(cells);
        MeasurableSpace target;
        for (std::size_t tcell = 0; tcell < target_cells; ++tcell) {
            target.cells.push_back({.id = "t" + std::to_string(tcell),
                                    .region = {}});
        }
        std::map<std::string, std::string> phi;
        std::vector<std::size_t> image_of(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            image_of[c] = rng.next_below(target_cells);
            phi[e.gamma().cells[c].id] = target.cells[image_of[c]].id;
        }
        const Rpovm f_measure = pushforward(e, phi, target);

        MeasurableFunction g(target_cells), g_phi(cells);
        for (std::size_t tcell = 0; tcell < target_cells; ++tcell) {
            g.set(tcell, 2.0 * rng.next_gaussian_complex());
        }
        for (std::size_t c = 0; c < cells; ++c) {
            g_phi.set(c, g.at(image_of[c]));
        }

        const OperatorField lhs = integrate_bounded(f_measure, g, 1e-12);
        const OperatorField rhs = integrate_bounded(e, g_phi, 1e-12);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            if (sp->weights[atom] <= 0.0) {
                continue;
            }
            out.require(testutil::mat_dist(lhs.at(atom), rhs.at(atom)) <=
                            kPushforwardTol,
                        "change of variables at trial " +
                            std::to_string(trial));
        }
    }
    return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome criterion_extended_integral() {
    Outcome out;
    SplitMix64 rng(0xA8);

    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t dim = draw_dim(rng, 2, 8);

        // Coordinate-style measure plus one null cell at the end.
        MeasurableSpace gamma;
        std::vector<OperatorField> fields;
        const ComplexMatrix u = testutil::rand_unitary(rng, dim);
        for (std::size_t c = 0; c < dim; ++c) {
            gamma.cells.push_back({.id = "c" + std::to_string(c),
                                   .region = {}});
            ComplexMatrix p(dim, dim);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    p(i, j) = u(i, c) * std::conj(u(j, c));
                }
            }
            fields.push_back(OperatorField::constant(sp, p));
        }
        gamma.cells.push_back({.id = "null", .region = {}});
        fields.push_back(OperatorField(sp, dim, dim));
        const Rpovm e(gamma, sp, dim, fields);

        // Unbounded-looking integrand: finite growing values, infinity on
        // the null cell.
        MeasurableFunction f(dim + 1);
        for (std::size_t c = 0; c < dim; ++c) {
            f.set(c, Complex{0.75 * static_cast<double>(c * c + 1), 0.25});
        }
        f.set_infinite(dim);

        CVector x(dim);
        for (auto& xi : x) {
            xi = rng.next_gaussian_complex();
        }
        out.require(extended_domain(e, f, x, 1e-12),
                    "domain false with infinity on a null cell");

        const RandomVector direct = integrate_extended(e, f, x, 1e-12);

        // Two distinct bounding sequences: the canonical threshold chain and
        // a coarse two-stage chain. Realizing either limit accumulates the
        // same finite cells in index order, so the results must agree
        // exactly, bit for bit.
        const BoundingSequence fine = bounding_sequence_for(f, e, 1e-12);
        BoundingSequence coarse;
        std::vector<std::size_t> all_finite(dim);
        for (std::size_t c = 0; c < dim; ++c) {
            all_finite[c] = c;
        }
        coarse.stages.push_back(all_finite); // single-stage chain
        out.require(fine.stages.size() != coarse.stages.size(),
                    "sequences failed to be distinct");

        for (const BoundingSequence& seq : {fine, coarse}) {
            RandomVector realized(sp, dim);
            for (std::size_t c : seq.stages.back()) {
                const RandomVector term =
                    randspec::apply(e.cell_field(c), x);
                for (std::size_t atom = 0; atom < sp->size(); ++atom) {
                    for (std::size_t i = 0; i < dim; ++i) {
                        realized.at(atom)[i] += f.at(c) * term.at(atom)[i];
                    }
                }
            }
            for (std::size_t atom = 0; atom < sp->size(); ++atom) {
                for (std::size_t i = 0; i < dim; ++i) {
                    out.require(realized.at(atom)[i] == direct.at(atom)[i],
                                "bounding sequences disagree at trial " +
                                    std::to_string(trial));
                }
            }
        }

        // Infinity on a supported cell excludes generic vectors.
        MeasurableFunction bad(dim + 1);
        for (std::size_t c = 1; c < dim; ++c) {
            bad.set(c, Complex{1.0, 0.0});
        }
        bad.set_infinite(0);
        bad.set(dim, Complex{0.0, 0.0});
        // x with a component in the range of the first cell projection.
        CVector witness(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            witness[i] = u(i, 0);
        }
        out.require(!extended_domain(e, bad, witness, 1e-12),
                    "domain true with infinity on a supported cell");
    }
    return out;
}

// ---------------------------------------------------------------- criterion 9
Outcome criterion_adjoint_calculus() {
    Outcome out;
    SplitMix64 rng(0xA9);
    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t dim_in = draw_dim(rng, 1, 6);
        const std::size_t dim_mid = draw_dim(rng, 1, 6);
        const std::size_t dim_out = draw_dim(rng, 1, 6);
        OperatorField a(sp, dim_in, dim_mid);
        OperatorField b(sp, dim_mid, dim_out);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            a.at(atom) = testutil::rand_matrix(rng, dim_mid, dim_in);
            b.at(atom) = testutil::rand_matrix(rng, dim_out, dim_mid);
        }

        // Defining relation <(A x)(atom), y> = <x, (adjoint(A) y)(atom)>.
        CVector x(dim_in), y(dim_mid);
        for (auto& v : x) {
            v = rng.next_gaussian_complex();
        }
        for (auto& v : y) {
            v = rng.next_gaussian_complex();
        }
        const RandomVector ax = randspec::apply(a, x);
        const RandomVector aty = randspec::apply(adjoint(a), y);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            if (sp->weights[atom] <= 0.0) {
                continue;
            }
            out.require(std::abs(vec_inner(ax.at(atom), y) -
                                 vec_inner(x, aty.at(atom))) <= kAdjointTol,
                        "defining relation at trial " + std::to_string(trial));
        }

        // Anti-homomorphism and conjugate homogeneity.
        out.require(field_distance(adjoint(compose(b, a)),
                                   compose(adjoint(a), adjoint(b))) <=
                        kAdjointTol,
                    "(BA)^adj != A^adj B^adj at trial " +
                        std::to_string(trial));
        const Complex lambda = rng.next_gaussian_complex();
        OperatorField la(sp, dim_in, dim_mid);
        OperatorField conj_la(sp, dim_mid, dim_in);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            la.at(atom) = lambda * a.at(atom);
            conj_la.at(atom) = std::conj(lambda) * adjoint(a).at(atom);
        }
        out.require(field_distance(adjoint(la), conj_la) <= kAdjointTol,
                    "conjugate homogeneity at trial " +
                        std::to_string(trial));
    }

    // Embedding J: random-adjoint-fixed, classically adjoint to expectation.
    SampleSpace two;
    two.atom_ids = {"a", "b"};
    two.weights = {0.25, 0.75};
    const SpacePtr sp2 = make_space(std::move(two));
    const OperatorField j = OperatorField::identity_field(sp2, 2);
    out.require(field_distance(adjoint(j), j) == 0.0, "J not self-adjoint");

    SplitMix64 rng2(0xA9F);
    for (int probe = 0; probe < 50; ++probe) {
        CVector y(2);
        for (auto& v : y) {
            v = rng2.next_gaussian_complex();
        }
        const RandomVector g = testutil::rand_random_vector(rng2, sp2, 2);
        // <J y, g>_{L2} = <y, E g>_H.
        const Complex lhs = l2_inner(embed(y, sp2), g);
        const Complex rhs = vec_inner(y, expectation(g));
        out.require(std::abs(lhs - rhs) <= kAdjointTol,
                    "classical adjoint of J is not the expectation");
    }

    // Pointwise witness: E g differs from g on some positive-weight atom.
    RandomVector witness(sp2, 1);
    witness.at(0)[0] = {1.0, 0.0};
    witness.at(1)[0] = {5.0, 0.0};
    const CVector mean = expectation(witness); // 0.25*1 + 0.75*5 = 4
    out.require(std::abs(mean[0] - witness.at(0)[0]) > 1.0 &&
                    std::abs(mean[0] - witness.at(1)[0]) > 0.5,
                "no pointwise witness separating E from the embedding");
    return out;
}

// --------------------------------------------------------------- criterion 10
Outcome criterion_hs_consistency() {
    Outcome out;
    SplitMix64 rng(0xAA);
    for (int trial = 0; trial < kTrials && out.pass; ++trial) {
        const SpacePtr sp = draw_space(rng, trial);
        const std::size_t dim = draw_dim(rng, 1, 8);
        OperatorField a(sp, dim, dim);
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            a.at(atom) = testutil::rand_matrix(rng, dim, dim, 2.0);
        }
        const FieldClassification cls = classify(a);

        double basis_sum = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            CVector ei(dim, Complex{0.0, 0.0});
            ei[i] = Complex{1.0, 0.0};
            const double n = l2_norm(randspec::apply(a, ei));
            basis_sum += n * n;
        }
        out.require(std::abs(cls.hs_norm_sq - basis_sum) <=
                        kHsTol * std::max(1.0, cls.hs_norm_sq),
                    "HS norm mismatch at trial " + std::to_string(trial));
        out.require(!cls.hilbert_schmidt || cls.mean_square_class,
                    "HS flag without mean-square flag at trial " +
                        std::to_string(trial));
    }
    return out;
}

// --------------------------------------------------------------- criterion 11
Outcome criterion_cli() {
    Outcome out;

    // Seeded ensemble determinism, byte for byte.
    const Scenario a =
        generate_ensemble(EnsembleKind::normal, 4, 3, 2026);
    const Scenario b =
        generate_ensemble(EnsembleKind::normal, 4, 3, 2026);
    out.require(scenario_to_json(a) == scenario_to_json(b),
                "same-seed ensembles differ");
    const Scenario c =
        generate_ensemble(EnsembleKind::normal, 4, 3, 2027);
    out.require(scenario_to_json(a) != scenario_to_json(c),
                "different-seed ensembles coincide");

    // Round-trip byte-stability across every ensemble kind.
    for (const EnsembleKind kind :
         {EnsembleKind::hermitian_gaussian, EnsembleKind::normal,
          EnsembleKind::projection_valued, EnsembleKind::anderson_tridiagonal,
          EnsembleKind::pure_contraction}) {
        const Scenario s = generate_ensemble(kind, 3, 4, 11, 1.25);
        const std::string once = scenario_to_json(s);
        const std::string twice = scenario_to_json(parse_scenario(once));
        out.require(once == twice, "serialization not byte-stable");
    }

    // Decompose CSV anchor: diag(1, 2) on a single sure atom.
    Scenario anchor;
    anchor.space = make_space(SampleSpace::uniform(1));
    anchor.hilbert_dims["H"] = 2;
    anchor.field_dims["A"] = {"H", "H"};
    OperatorField field(anchor.space, 2, 2);
    field.at(0) = ComplexMatrix::diagonal({Complex{1.0, 0.0},
                                           Complex{2.0, 0.0}});
    anchor.fields.emplace("A", std::move(field));
    const RunResult dec = run_command(anchor, "decompose", {});
    out.require(dec.exit_code == 0, "decompose failed on the anchor");
    for (const char* row : {"w0,1,z0,E_xx(e1),1,0", "w0,1,z0,E_xx(e2),0,0",
                            "w0,1,z1,E_xx(e1),0,0", "w0,1,z1,E_xx(e2),1,0",
                            "w0,1,z0,representative,1,0",
                            "w0,1,z1,representative,2,0"}) {
        out.require(dec.artifact.find(row) != std::string::npos,
                    std::string("missing CSV row ") + row);
    }
    return out;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"transform identities and scalar anchor",
         criterion_transform_identities},
        {"strict pure contraction", criterion_pure_contraction},
        {"spectral integral is a contractive *-representation",
         criterion_star_representation},
        {"measure axioms on all subset pairs with monotonicity",
         criterion_rpovm_axioms},
        {"spectral roundtrip against planted spectra",
         criterion_spectral_roundtrip},
        {"disc pipeline equivalence and eigenvalue mapping",
         criterion_pipeline_equivalence},
        {"pushforward change of variables", criterion_pushforward},
        {"extended integral: sequence independence and domain",
         criterion_extended_integral},
        {"adjoint calculus and expectation witness",
         criterion_adjoint_calculus},
        {"Hilbert-Schmidt consistency", criterion_hs_consistency},
        {"command layer determinism and anchors", criterion_cli},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].run();
        } catch (const std::exception& err) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + err.what();
        }
        if (outcome.pass) {
            std::printf("[PASS] criterion %zu: %s\n", i + 1,
                        criteria[i].name);
        } else {
            std::printf("[FAIL] criterion %zu: %s (%s)\n", i + 1,
                        criteria[i].name, outcome.detail.c_str());
            ++failures;
        }
    }
    if (failures != 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
