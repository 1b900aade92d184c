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

#include <doctest.h>

#include <algorithm>

#include "randspec/errors.hpp"
#include "randspec/linalg.hpp"
#include "testutil.hpp"

using namespace randspec;

namespace {

ComplexMatrix reconstruct_from(const EigenDecomposition& dec) {
    REQUIRE(!dec.projections.empty());
    ComplexMatrix sum(dec.projections[0].rows(), dec.projections[0].cols());
    for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
        sum = sum + dec.eigenvalues[k] * dec.projections[k];
    }
    return sum;
}

void check_resolution_of_identity(const EigenDecomposition& dec, double tol) {
    const std::size_t dim = dec.projections[0].rows();
    ComplexMatrix sum(dim, dim);
    for (std::size_t k = 0; k < dec.projections.size(); ++k) {
        const ComplexMatrix& p = dec.projections[k];
        CHECK(testutil::mat_dist(p, p.adjoint()) <= tol);
        CHECK(testutil::mat_dist(p * p, p) <= tol);
        for (std::size_t l = k + 1; l < dec.projections.size(); ++l) {
            CHECK((p * dec.projections[l]).max_abs() <= tol);
        }
        sum = sum + p;
    }
    CHECK(testutil::mat_dist(sum, ComplexMatrix::identity(dim)) <= tol);
}

} // namespace

TEST_CASE("hermitian eigendecomposition: fixed diagonal anchor") {
    const ComplexMatrix m =
        ComplexMatrix::diagonal({Complex{2.0, 0.0}, Complex{1.0, 0.0}});
    const EigenDecomposition dec = eig_hermitian(m, 1e-10);
    REQUIRE(dec.eigenvalues.size() == 2);
    // Ascending order.
    CHECK(dec.eigenvalues[0].real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1].real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(dec.projections[0](1, 1).real() ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dec.projections[1](0, 0).real() ==
          doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian eigendecomposition: exchange matrix anchor") {
    ComplexMatrix m(2, 2);
    m(0, 1) = {1.0, 0.0};
    m(1, 0) = {1.0, 0.0};
    const EigenDecomposition dec = eig_hermitian(m, 1e-10);
    REQUIRE(dec.eigenvalues.size() == 2);
    CHECK(dec.eigenvalues[0].real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dec.eigenvalues[1].real() == doctest::Approx(1.0).epsilon(1e-14));
    // Eigenprojections are (I -+ X)/2.
    ComplexMatrix minus(2, 2);
    minus(0, 0) = {0.5, 0.0};
    minus(0, 1) = {-0.5, 0.0};
    minus(1, 0) = {-0.5, 0.0};
    minus(1, 1) = {0.5, 0.0};
    CHECK(testutil::mat_dist(dec.projections[0], minus) <= 1e-14);
}

TEST_CASE("hermitian eigendecomposition: random matrices reconstruct") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t dim = 1 + rng.next_below(8);
        const ComplexMatrix m = testutil::rand_hermitian(rng, dim);
        const EigenDecomposition dec = eig_hermitian(m, 1e-10);
        check_resolution_of_identity(dec, 1e-12);
        CHECK(testutil::mat_dist(reconstruct_from(dec), m) <= 1e-12);
        CHECK(std::is_sorted(
            dec.eigenvalues.begin(), dec.eigenvalues.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); }));
    }
}

TEST_CASE("hermitian eigendecomposition: planted spectra recovered") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> planted{-3.0, -0.5, 0.25, 2.0, 11.0};
        const ComplexMatrix m = testutil::planted_hermitian(rng, planted);
        const EigenDecomposition dec = eig_hermitian(m, 1e-10);
        REQUIRE(dec.eigenvalues.size() == planted.size());
        for (std::size_t i = 0; i < planted.size(); ++i) {
            CHECK(std::abs(dec.eigenvalues[i].real() - planted[i]) <= 1e-9);
            CHECK(std::abs(dec.eigenvalues[i].imag()) <= 1e-12);
        }
    }
}

TEST_CASE("hermitian eigendecomposition: repeated eigenvalues cluster") {
    SplitMix64 rng(78);
    const ComplexMatrix m =
        testutil::planted_hermitian(rng, {1.0, 1.0, 1.0, 4.0});
    const EigenDecomposition dec = eig_hermitian(m, 1e-10);
    REQUIRE(dec.eigenvalues.size() == 2);
    CHECK(std::abs(dec.eigenvalues[0].real() - 1.0) <= 1e-10);
    CHECK(std::abs(dec.eigenvalues[1].real() - 4.0) <= 1e-10);
    CHECK(std::abs(dec.projections[0].trace().real() - 3.0) <= 1e-10);
    CHECK(std::abs(dec.projections[1].trace().real() - 1.0) <= 1e-10);
}

TEST_CASE("eig_hermitian rejects a non-hermitian input") {
    ComplexMatrix m(2, 2);
    m(0, 1) = {1.0, 0.0};
    try {
        eig_hermitian(m, 1e-10);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::not_hermitian);
        CHECK(err.residual() > 0.0);
    }
}

TEST_CASE("normal diagonalization: rotation generator anchor") {
    // [[0, -1], [1, 0]] has spectrum {-i, +i}.
    ComplexMatrix m(2, 2);
    m(0, 1) = {-1.0, 0.0};
    m(1, 0) = {1.0, 0.0};
    const EigenDecomposition dec = diagonalize_normal(m, 1e-9);
    REQUIRE(dec.eigenvalues.size() == 2);
    // Lexicographic (re, im) order puts -i first.
    CHECK(std::abs(dec.eigenvalues[0] - Complex{0.0, -1.0}) <= 1e-12);
    CHECK(std::abs(dec.eigenvalues[1] - Complex{0.0, 1.0}) <= 1e-12);
    check_resolution_of_identity(dec, 1e-12);
    CHECK(testutil::mat_dist(reconstruct_from(dec), m) <= 1e-12);
}

TEST_CASE("normal diagonalization: planted complex spectra recovered") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t dim = 2 + rng.next_below(6);
        CVector planted(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            planted[i] = Complex{rng.next_gaussian(), rng.next_gaussian()};
        }
        const ComplexMatrix m = testutil::planted_normal(rng, planted);
        const EigenDecomposition dec = diagonalize_normal(m, 1e-9);
        check_resolution_of_identity(dec, 1e-11);
        CHECK(testutil::mat_dist(reconstruct_from(dec), m) <= 1e-11);

        CVector found;
        for (std::size_t k = 0; k < dec.eigenvalues.size(); ++k) {
            const auto copies = static_cast<std::size_t>(std::lround(
                dec.projections[k].trace().real()));
            for (std::size_t c = 0; c < copies; ++c) {
                found.push_back(dec.eigenvalues[k]);
            }
        }
        CHECK(testutil::multiset_close(found, planted, 1e-9));
    }
}

TEST_CASE("normal diagonalization handles coincident hermitian parts") {
    // Distinct eigenvalues sharing a real part force the imaginary part to
    // separate them inside one cluster of the hermitian-part pass.
    SplitMix64 rng(32);
    const CVector planted{Complex{1.0, -2.0}, Complex{1.0, 0.5},
                          Complex{1.0, 3.0}};
    const ComplexMatrix m = testutil::planted_normal(rng, planted);
    const EigenDecomposition dec = diagonalize_normal(m, 1e-9);
    REQUIRE(dec.eigenvalues.size() == 3);
    CVector found = dec.eigenvalues;
    CHECK(testutil::multiset_close(found, planted, 1e-9));
}

TEST_CASE("diagonalize_normal rejects a non-normal input") {
    ComplexMatrix m(2, 2);
    m(0, 1) = {1.0, 0.0}; // nilpotent shift
    try {
        diagonalize_normal(m, 1e-9);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::not_normal);
    }
}

TEST_CASE("psd_power: fixed anchors") {
    const ComplexMatrix root = psd_power(
        ComplexMatrix::diagonal({Complex{4.0, 0.0}, Complex{9.0, 0.0}}), 0.5,
        1e-10);
    CHECK(std::abs(root(0, 0) - Complex{2.0, 0.0}) <= 1e-12);
    CHECK(std::abs(root(1, 1) - Complex{3.0, 0.0}) <= 1e-12);
    CHECK(std::abs(root(0, 1)) <= 1e-12);

    const ComplexMatrix inv =
        psd_power(ComplexMatrix::diagonal({Complex{10.0, 0.0}}), -1.0, 1e-10);
    CHECK(std::abs(inv(0, 0) - Complex{0.1, 0.0}) <= 1e-14);
}

TEST_CASE("psd_power: random roundtrips") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t dim = 1 + rng.next_below(6);
        const ComplexMatrix g = testutil::rand_matrix(rng, dim, dim);
        const ComplexMatrix s =
            g.adjoint() * g + ComplexMatrix::identity(dim) * Complex{0.1, 0.0};
        const ComplexMatrix half = psd_power(s, 0.5, 1e-10);
        CHECK(testutil::mat_dist(half * half, s) <= 1e-10);
        const ComplexMatrix inv = psd_power(s, -1.0, 1e-10);
        CHECK(testutil::mat_dist(inv * s, ComplexMatrix::identity(dim)) <=
              1e-9);
        const ComplexMatrix inv_half = psd_power(s, -0.5, 1e-10);
        CHECK(testutil::mat_dist(inv_half * inv_half * s,
                                 ComplexMatrix::identity(dim)) <= 1e-9);
    }
}

TEST_CASE("psd_power guards its hypotheses") {
    const ComplexMatrix negative =
        ComplexMatrix::diagonal({Complex{-1.0, 0.0}});
    try {
        psd_power(negative, 0.5, 1e-10);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::not_psd);
    }

    const ComplexMatrix singular =
        ComplexMatrix::diagonal({Complex{0.0, 0.0}, Complex{1.0, 0.0}});
    CHECK_NOTHROW(psd_power(singular, 0.5, 1e-10));
    try {
        psd_power(singular, -1.0, 1e-10);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::singular_matrix);
    }

    try {
        psd_power(ComplexMatrix::identity(2), 0.25, 1e-10);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::invalid_parameter);
    }
}

TEST_CASE("operator norm and Hilbert-Schmidt norm anchors") {
    const ComplexMatrix d =
        ComplexMatrix::diagonal({Complex{3.0, 0.0}, Complex{-4.0, 0.0}});
    CHECK(op_norm(d) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(hs_norm_matrix(d) == doctest::Approx(5.0).epsilon(1e-12));

    // Operator norm of a nilpotent shift is still 1.
    ComplexMatrix shift(2, 2);
    shift(0, 1) = {1.0, 0.0};
    CHECK(op_norm(shift) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("op_norm dominates the scaled frobenius norm") {
    SplitMix64 rng(56);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix m = testutil::rand_matrix(rng, 4, 4);
        const double op = op_norm(m);
        const double fro = m.frobenius_norm();
        CHECK(op <= fro + 1e-12);
        CHECK(fro <= 2.0 * op + 1e-12);
    }
}

TEST_CASE("is_projection distinguishes projections") {
    SplitMix64 rng(57);
    const ComplexMatrix p = testutil::rand_projection(rng, 4, 2);
    CHECK(is_projection(p, 1e-10));
    CHECK(!is_projection(p * Complex{0.5, 0.0}, 1e-10));
    const ComplexMatrix u = testutil::rand_unitary(rng, 3);
    CHECK(!is_projection(u, 1e-10));
    CHECK(is_projection(ComplexMatrix::identity(3), 1e-10));
}

TEST_CASE("large well-separated spectra stay accurate") {
    SplitMix64 rng(58);
    const std::vector<double> planted{-1000.0, -1.0, 0.0, 1.0, 1000.0};
    const ComplexMatrix m = testutil::planted_hermitian(rng, planted);
    const EigenDecomposition dec = eig_hermitian(m, 1e-10);
    REQUIRE(dec.eigenvalues.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(std::abs(dec.eigenvalues[i].real() - planted[i]) <= 1e-9);
    }
}
