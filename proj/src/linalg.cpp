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

#include "randspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "randspec/config.hpp"
#include "randspec/errors.hpp"

namespace randspec {

namespace {

constexpr int kMaxJacobiSweeps = 64;

struct JacobiResult {
    std::vector<double> eigenvalues; // eigenvalues[k] belongs to column k of vectors
    ComplexMatrix vectors;           // unitary, columns are eigenvectors
};

double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                sum += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(sum);
}

// Cyclic complex Jacobi. Only the Hermitian part of the input is read; the
// caller is responsible for checking the Hermiticity defect. Rotations are
// unitary by construction, so the eigenvector basis stays orthonormal to
// machine precision regardless of eigenvalue clustering.
JacobiResult jacobi_hermitian(const ComplexMatrix& input) {
    const std::size_t n = input.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Complex{input(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex upper =
                0.5 * (input(i, j) + std::conj(input(j, i)));
            a(i, j) = upper;
            a(j, i) = std::conj(upper);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-15 * scale;

    int sweep = 0;
    for (; sweep < kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= target) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double absb = std::abs(apq);
                if (absb <= 1e-18 * scale) {
                    a(p, q) = Complex{0.0, 0.0};
                    a(q, p) = Complex{0.0, 0.0};
                    continue;
                }
                // Phase factor turning the pivot real, then a real rotation
                // zeroing it: U = diag(1, e^{-i phi}) * [[c, s], [-s, c]].
                const Complex phase = apq / absb;
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * absb);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Complex upp{c, 0.0};
                const Complex uqp = -s * std::conj(phase);
                const Complex upq{s, 0.0};
                const Complex uqq = c * std::conj(phase);

                // Columns p and q of A <- A U and V <- V U.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
                // Rows p and q of A <- U* A.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = Complex{0.0, 0.0};
                a(q, p) = Complex{0.0, 0.0};
                a(p, p) = Complex{a(p, p).real(), 0.0};
                a(q, q) = Complex{a(q, q).real(), 0.0};
            }
        }
    }
    if (sweep == kMaxJacobiSweeps && off_diagonal_norm(a) > 1e-12 * scale) {
        fail(ErrorCode::no_convergence,
             "Jacobi sweeps exhausted at off-diagonal mass " +
                 std::to_string(off_diagonal_norm(a)));
    }

    JacobiResult result;
    result.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.eigenvalues[i] = a(i, i).real();
    }
    result.vectors = std::move(v);
    return result;
}

double op_norm_via_jacobi(const ComplexMatrix& m) {
    const ComplexMatrix gram = m.adjoint() * m;
    const JacobiResult jr = jacobi_hermitian(gram);
    double lam_max = 0.0;
    for (double lam : jr.eigenvalues) {
        lam_max = std::max(lam_max, lam);
    }
    return std::sqrt(lam_max);
}

double default_cluster_tol(double cluster_tol, double scale) {
    if (cluster_tol >= 0.0) {
        return cluster_tol;
    }
    return 1e-9 * std::max(scale, 1e-30);
}

// Groups sorted values: a gap >= tol starts a new cluster (half-open
// convention, so a gap of exactly tol separates).
std::vector<std::vector<std::size_t>>
cluster_sorted(const std::vector<double>& sorted_values,
               const std::vector<std::size_t>& order, double tol) {
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || sorted_values[k] - sorted_values[k - 1] >= tol) {
            clusters.emplace_back();
        }
        clusters.back().push_back(order[k]);
    }
    return clusters;
}

ComplexMatrix projection_from_columns(const ComplexMatrix& v,
                                      const std::vector<std::size_t>& cols) {
    const std::size_t n = v.rows();
    ComplexMatrix p(n, n);
    for (std::size_t col : cols) {
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vi = v(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                p(i, j) += vi * std::conj(v(j, col));
            }
        }
    }
    return p;
}

void require_square(const ComplexMatrix& m, const char* op) {
    if (!m.is_square()) {
        fail(ErrorCode::dimension_mismatch,
             std::string(op) + " requires a square matrix");
    }
    if (m.rows() > kMaxDim) {
        fail(ErrorCode::invalid_parameter,
             std::string(op) + ": dimension " + std::to_string(m.rows()) +
                 " exceeds the cap of " + std::to_string(kMaxDim));
    }
    if (!m.is_finite()) {
        fail(ErrorCode::invalid_parameter,
             std::string(op) + ": matrix has non-finite entries");
    }
}

struct EigenPair {
    Complex value;
    std::size_t column; // column in the combined eigenvector matrix
};

// Complex eigenvalues merged by union-find: pairs closer than tol are
// linked, clusters are the connected components.
std::vector<std::vector<std::size_t>>
cluster_complex(const std::vector<Complex>& values, double tol) {
    const std::size_t n = values.size();
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
            if (std::abs(values[i] - values[j]) < tol) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::ptrdiff_t> group_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (group_of[root] < 0) {
            group_of[root] = static_cast<std::ptrdiff_t>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(group_of[root])].push_back(i);
    }
    return groups;
}

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

EigenDecomposition
decomposition_from_pairs(const std::vector<Complex>& values,
                         const ComplexMatrix& vectors, double cluster_tol) {
    const auto groups = cluster_complex(values, cluster_tol);
    EigenDecomposition dec;
    for (const auto& group : groups) {
        Complex mean{0.0, 0.0};
        for (std::size_t idx : group) {
            mean += values[idx];
        }
        mean /= static_cast<double>(group.size());
        dec.eigenvalues.push_back(mean);
        dec.projections.push_back(projection_from_columns(vectors, group));
    }
    // Sort clusters by representative, ascending in (re, im).
    std::vector<std::size_t> order(dec.eigenvalues.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(dec.eigenvalues[a], dec.eigenvalues[b]);
    });
    EigenDecomposition sorted;
    for (std::size_t idx : order) {
        sorted.eigenvalues.push_back(dec.eigenvalues[idx]);
        sorted.projections.push_back(std::move(dec.projections[idx]));
    }
    return sorted;
}

EigenDecomposition diagonalize_normal_once(const ComplexMatrix& m,
                                           double part_cluster_tol,
                                           double cluster_tol) {
    const std::size_t n = m.rows();
    const ComplexMatrix mh = m.adjoint();
    ComplexMatrix x(n, n);
    ComplexMatrix y(n, n);
    const Complex half{0.5, 0.0};
    const Complex half_over_i{0.0, -0.5}; // 1 / (2i)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            x(i, j) = half * (m(i, j) + mh(i, j));
            y(i, j) = half_over_i * (m(i, j) - mh(i, j));
        }
    }

    const JacobiResult xr = jacobi_hermitian(x);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return xr.eigenvalues[a] < xr.eigenvalues[b];
    });
    std::vector<double> sorted_x(n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted_x[k] = xr.eigenvalues[order[k]];
    }
    const auto x_clusters = cluster_sorted(sorted_x, order, part_cluster_tol);

    // Within each eigenspace of the Hermitian part, the anti-Hermitian part
    // compresses to a Hermitian block; diagonalizing it yields a joint
    // orthonormal eigenbasis of both parts, hence of m.
    std::vector<Complex> eigenvalues;
    ComplexMatrix vectors(n, n);
    std::size_t next_col = 0;
    for (const auto& cluster : x_clusters) {
        const std::size_t d = cluster.size();
        double x_mean = 0.0;
        for (std::size_t col : cluster) {
            x_mean += xr.eigenvalues[col];
        }
        x_mean /= static_cast<double>(d);

        // Basis of the eigenspace as an n x d slab.
        ComplexMatrix basis(n, d);
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                basis(i, c) = xr.vectors(i, cluster[c]);
            }
        }
        const ComplexMatrix yk = basis.adjoint() * (y * basis);
        const JacobiResult yr = jacobi_hermitian(yk);
        const ComplexMatrix combined = basis * yr.vectors;
        for (std::size_t c = 0; c < d; ++c) {
            eigenvalues.push_back(Complex{x_mean, yr.eigenvalues[c]});
            for (std::size_t i = 0; i < n; ++i) {
                vectors(i, next_col) = combined(i, c);
            }
            ++next_col;
        }
    }
    return decomposition_from_pairs(eigenvalues, vectors, cluster_tol);
}

double reconstruction_residual(const ComplexMatrix& m,
                               const EigenDecomposition& dec) {
    ComplexMatrix rebuilt(m.rows(), m.cols());
    for (std::size_t k = 0; k < dec.size(); ++k) {
        rebuilt += dec.eigenvalues[k] * dec.projections[k];
    }
    return op_norm_via_jacobi(m - rebuilt);
}

} // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol,
                                 double cluster_tol) {
    require_square(m, "eig_hermitian");
    const double defect = op_norm_via_jacobi(m - m.adjoint());
    if (defect > tol) {
        fail_at(ErrorCode::not_hermitian,
                "Hermiticity defect " + std::to_string(defect), "", defect);
    }
    const JacobiResult jr = jacobi_hermitian(m);
    const double scale = op_norm_via_jacobi(m);
    const double ctol = default_cluster_tol(cluster_tol, scale);

    const std::size_t n = m.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return jr.eigenvalues[a] < jr.eigenvalues[b];
    });
    std::vector<double> sorted(n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted[k] = jr.eigenvalues[order[k]];
    }
    EigenDecomposition dec;
    for (const auto& cluster : cluster_sorted(sorted, order, ctol)) {
        double mean = 0.0;
        for (std::size_t col : cluster) {
            mean += jr.eigenvalues[col];
        }
        mean /= static_cast<double>(cluster.size());
        dec.eigenvalues.push_back(Complex{mean, 0.0});
        dec.projections.push_back(projection_from_columns(jr.vectors, cluster));
    }
    return dec;
}

EigenDecomposition diagonalize_normal(const ComplexMatrix& m, double tol,
                                      double cluster_tol) {
    require_square(m, "diagonalize_normal");
    const double scale = op_norm_via_jacobi(m);
    const double commutator =
        op_norm_via_jacobi(m * m.adjoint() - m.adjoint() * m);
    if (commutator > tol * std::max(scale * scale, 1e-30)) {
        fail_at(ErrorCode::not_normal,
                "commutator norm " + std::to_string(commutator) +
                    " exceeds tolerance at scale " + std::to_string(scale),
                "", commutator);
    }
    const double ctol = default_cluster_tol(cluster_tol, scale);

    // Near-degenerate Hermitian-part eigenvalues leave the eigenspace split
    // ill-determined; widening the part clustering and retrying repairs the
    // joint basis when that happens.
    double part_tol = ctol;
    EigenDecomposition best;
    double best_residual = -1.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        EigenDecomposition dec = diagonalize_normal_once(m, part_tol, ctol);
        const double residual = reconstruction_residual(m, dec);
        if (best_residual < 0.0 || residual < best_residual) {
            best_residual = residual;
            best = std::move(dec);
        }
        if (best_residual <= std::max(1e-12 * std::max(scale, 1.0), 1e-14)) {
            break;
        }
        part_tol *= 100.0;
    }
    if (best_residual > 1e-8 * std::max(scale, 1.0)) {
        fail(ErrorCode::no_convergence,
             "normal diagonalization residual " + std::to_string(best_residual));
    }
    return best;
}

ComplexMatrix psd_power(const ComplexMatrix& m, double exponent, double tol) {
    require_square(m, "psd_power");
    if (exponent != 0.5 && exponent != -0.5 && exponent != -1.0) {
        fail(ErrorCode::invalid_parameter,
             "psd_power exponent must be 1/2, -1/2 or -1");
    }
    const double defect = op_norm_via_jacobi(m - m.adjoint());
    if (defect > tol) {
        fail_at(ErrorCode::not_psd,
                "matrix is not Hermitian (defect " + std::to_string(defect) + ")",
                "", defect);
    }
    const JacobiResult jr = jacobi_hermitian(m);
    double lam_min = jr.eigenvalues.empty() ? 0.0 : jr.eigenvalues[0];
    for (double lam : jr.eigenvalues) {
        lam_min = std::min(lam_min, lam);
    }
    if (lam_min < -tol) {
        fail_at(ErrorCode::not_psd,
                "smallest eigenvalue " + std::to_string(lam_min), "", -lam_min);
    }
    if (exponent < 0.0 && lam_min <= tol) {
        fail_at(ErrorCode::singular_matrix,
                "smallest eigenvalue " + std::to_string(lam_min) +
                    " too close to zero for a negative power",
                "", lam_min);
    }

    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const double lam = std::max(jr.eigenvalues[col], 0.0);
        const double powered = exponent == 0.5    ? std::sqrt(lam)
                               : exponent == -0.5 ? 1.0 / std::sqrt(lam)
                                                  : 1.0 / lam;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vi = powered * jr.vectors(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vi * std::conj(jr.vectors(j, col));
            }
        }
    }
    // Symmetrize away rounding so the result is exactly Hermitian.
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = Complex{out(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

double op_norm(const ComplexMatrix& m) {
    if (!m.is_finite()) {
        fail(ErrorCode::invalid_parameter, "op_norm of a non-finite matrix");
    }
    if (m.rows() > kMaxDim || m.cols() > kMaxDim) {
        fail(ErrorCode::invalid_parameter, "op_norm: dimension exceeds the cap");
    }
    return op_norm_via_jacobi(m);
}

double hs_norm_matrix(const ComplexMatrix& m) { return m.frobenius_norm(); }

bool is_projection(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    if (op_norm_via_jacobi(m - m.adjoint()) > tol) {
        return false;
    }
    return op_norm_via_jacobi(m * m - m) <= tol;
}

} // namespace randspec
