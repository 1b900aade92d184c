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

#include "randspec/errors.hpp"
#include "randspec/measure.hpp"
#include "testutil.hpp"

using namespace randspec;

TEST_CASE("cell regions: half-open boxes and real intervals") {
    const CellRegion box = CellRegion::box(0.0, 1.0, -1.0, 1.0);
    CHECK(box.contains(Complex{0.0, 0.0}, 1e-9));
    CHECK(box.contains(Complex{0.5, 0.999}, 1e-9));
    CHECK(!box.contains(Complex{1.0, 0.0}, 1e-9)); // right edge open
    CHECK(!box.contains(Complex{-1e-12, 0.0}, 1e-9));
    CHECK(!box.contains(Complex{0.5, 1.0}, 1e-9)); // top edge open

    const CellRegion iv = CellRegion::interval(-1.0, 2.0);
    CHECK(iv.contains(Complex{-1.0, 0.0}, 1e-9));
    CHECK(iv.contains(Complex{1.9, 1e-10}, 1e-9)); // imaginary slack
    CHECK(!iv.contains(Complex{2.0, 0.0}, 1e-9));
    CHECK(!iv.contains(Complex{0.0, 1e-6}, 1e-9)); // beyond the slack
}

TEST_CASE("measurable space rejects duplicate cell ids") {
    MeasurableSpace gamma;
    gamma.cells.push_back({.id = "c", .region = {}});
    gamma.cells.push_back({.id = "c", .region = {}});
    CHECK_THROWS_AS(gamma.validate(), Error);
}

TEST_CASE("coordinate measure satisfies every axiom") {
    SplitMix64 rng(701);
    const SpacePtr sp = testutil::rand_space(rng, 3);
    const CVector points{Complex{0.0, 0.0}, Complex{1.0, 0.0},
                         Complex{2.0, 0.0}};
    const Rpovm e = testutil::coordinate_rpovm(sp, 3, points);
    const ValidationReport report = validate_rpovm(e, 1e-11);
    CHECK(report.all_pass());
    CHECK(report.worst_residual() <= 1e-14);
    REQUIRE(report.axioms.size() == 5);
}

TEST_CASE("random projection-partition measures validate") {
    SplitMix64 rng(702);
    for (int trial = 0; trial < 5; ++trial) {
        const SpacePtr sp =
            testutil::rand_space(rng, 2 + rng.next_below(3),
                                 /*with_null=*/trial % 2 == 1);
        const Rpovm e = testutil::rand_rpovm(rng, sp, 4, 3);
        const ValidationReport report = validate_rpovm(e, 1e-11);
        CHECK(report.all_pass());
    }
}

TEST_CASE("a perturbed cell breaks exactly the right axioms") {
    SplitMix64 rng(703);
    const SpacePtr sp = testutil::rand_space(rng, 2);
    Rpovm good = testutil::rand_rpovm(rng, sp, 4, 2);
    // Rebuild with one cell field damaged: no longer idempotent.
    std::vector<OperatorField> fields;
    for (std::size_t c = 0; c < good.cell_count(); ++c) {
        fields.push_back(good.cell_field(c));
    }
    fields[0].at(0) = fields[0].at(0) * Complex{0.9, 0.0};
    const Rpovm bad(good.gamma(), sp, 4, fields);
    const ValidationReport report = validate_rpovm(bad, 1e-11);
    CHECK(!report.all_pass());
    CHECK(!report.axioms[0].pass); // projections axiom
    CHECK(!report.axioms[2].pass); // completeness
    CHECK(report.axioms[0].worst_residual > 1e-3);
    CHECK(!lemma_check(bad.gamma(), fields, 1e-11));
}

TEST_CASE("overlapping cells break orthogonality") {
    const SpacePtr sp = make_space(SampleSpace::uniform(1));
    MeasurableSpace gamma;
    gamma.cells.push_back({.id = "c0", .region = {}});
    gamma.cells.push_back({.id = "c1", .region = {}});
    ComplexMatrix p(2, 2);
    p(0, 0) = {1.0, 0.0};
    std::vector<OperatorField> fields{
        OperatorField::constant(sp, p),
        OperatorField::constant(sp, p), // same projection twice: not disjoint
    };
    const Rpovm e(gamma, sp, 2, fields);
    const ValidationReport report = validate_rpovm(e, 1e-11);
    CHECK(!report.all_pass());
    CHECK(!report.axioms[1].pass); // orthogonality
    CHECK(!lemma_check(gamma, fields, 1e-11));
}

TEST_CASE("subset sums are exact structural additivity") {
    SplitMix64 rng(704);
    const SpacePtr sp = testutil::rand_space(rng, 2);
    const Rpovm e = testutil::rand_rpovm(rng, sp, 6, 3);
    const std::vector<std::size_t> subset{0, 2};
    const OperatorField sum = e.of_subset(subset);
    for (std::size_t atom = 0; atom < sp->size(); ++atom) {
        const ComplexMatrix expected =
            e.cell_field(0).at(atom) + e.cell_field(2).at(atom);
        CHECK(testutil::mat_dist(sum.at(atom), expected) == 0.0);
    }
    CHECK(field_distance(e.total(),
                         OperatorField::identity_field(sp, 6)) <= 1e-12);
}

TEST_CASE("scalar measure anchor on the coordinate measure") {
    const SpacePtr sp = make_space(SampleSpace::uniform(2));
    const CVector points{Complex{0.0, 0.0}, Complex{1.0, 0.0}};
    const Rpovm e = testutil::coordinate_rpovm(sp, 2, points);
    // x = y = (1/sqrt2, 1/sqrt2): each coordinate cell carries mass 0.5.
    const double isq = 1.0 / std::sqrt(2.0);
    const CVector x{Complex{isq, 0.0}, Complex{isq, 0.0}};
    const ScalarRandomMeasure mu = scalar_measure(e, x, x);
    REQUIRE(mu.per_cell.size() == 2);
    for (std::size_t atom = 0; atom < 2; ++atom) {
        CHECK(mu.per_cell[0].at(atom).real() ==
              doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(mu.per_cell[0].at(atom).imag()) <= 1e-15);
    }
}

TEST_CASE("vector measure is compatible with the scalar measure") {
    SplitMix64 rng(705);
    const SpacePtr sp = testutil::rand_space(rng, 3);
    const Rpovm e = testutil::rand_rpovm(rng, sp, 4, 2);
    CVector x(4), y(4);
    for (std::size_t i = 0; i < 4; ++i) {
        x[i] = rng.next_gaussian_complex();
        y[i] = rng.next_gaussian_complex();
    }
    const ScalarRandomMeasure mu = scalar_measure(e, x, y);
    const VectorRandomMeasure nu = vector_measure(e, x);
    for (std::size_t c = 0; c < e.cell_count(); ++c) {
        for (std::size_t atom = 0; atom < sp->size(); ++atom) {
            const Complex via_vector = vec_inner(nu.per_cell[c].at(atom), y);
            CHECK(std::abs(mu.per_cell[c].at(atom) - via_vector) <= 1e-12);
        }
    }
}

TEST_CASE("scalar measure is additive across cells") {
    SplitMix64 rng(706);
    const SpacePtr sp = testutil::rand_space(rng, 2);
    const Rpovm e = testutil::rand_rpovm(rng, sp, 4, 4);
    CVector x(4);
    for (std::size_t i = 0; i < 4; ++i) {
        x[i] = rng.next_gaussian_complex();
    }
    const ScalarRandomMeasure mu = scalar_measure(e, x, x);
    double norm_sq = 0.0;
    for (const Complex& xi : x) {
        norm_sq += std::norm(xi);
    }
    for (std::size_t atom = 0; atom < sp->size(); ++atom) {
        Complex sum{0.0, 0.0};
        for (std::size_t c = 0; c < e.cell_count(); ++c) {
            const Complex mass = mu.per_cell[c].at(atom);
            CHECK(mass.real() >= -1e-12); // diagonal masses are nonnegative
            sum += mass;
        }
        CHECK(std::abs(sum - Complex{norm_sq, 0.0}) <= 1e-12);
    }
}

TEST_CASE("pushforward merges preimages and preserves additivity") {
    SplitMix64 rng(707);
    const SpacePtr sp = testutil::rand_space(rng, 2);
    const Rpovm e = testutil::rand_rpovm(rng, sp, 4, 4); // cells c0..c3
    MeasurableSpace target;
    target.cells.push_back({.id = "low", .region = {}});
    target.cells.push_back({.id = "high", .region = {}});
    const std::map<std::string, std::string> cell_map{
        {"c0", "low"}, {"c1", "low"}, {"c2", "high"}, {"c3", "high"}};
    const Rpovm f = pushforward(e, cell_map, target);
    REQUIRE(f.cell_count() == 2);
    const ValidationReport report = validate_rpovm(f, 1e-11);
    CHECK(report.all_pass());
    for (std::size_t atom = 0; atom < sp->size(); ++atom) {
        const ComplexMatrix expected =
            e.cell_field(0).at(atom) + e.cell_field(1).at(atom);
        CHECK(testutil::mat_dist(f.cell_field(0).at(atom), expected) == 0.0);
    }
}

TEST_CASE("pushforward requires a total map onto known cells") {
    SplitMix64 rng(708);
    const SpacePtr sp = testutil::rand_space(rng, 1);
    const Rpovm e = testutil::rand_rpovm(rng, sp, 2, 2);
    MeasurableSpace target;
    target.cells.push_back({.id = "t", .region = {}});
    try {
        pushforward(e, {{"c0", "t"}}, target); // c1 unmapped
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::incomplete_map);
    }
    try {
        pushforward(e, {{"c0", "t"}, {"c1", "nowhere"}}, target);
        FAIL("expected a throw");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::incomplete_map);
    }
}

TEST_CASE("pushforward may leave target cells empty") {
    SplitMix64 rng(709);
    const SpacePtr sp = testutil::rand_space(rng, 1);
    const Rpovm e = testutil::rand_rpovm(rng, sp, 2, 1);
    MeasurableSpace target;
    target.cells.push_back({.id = "hit", .region = {}});
    target.cells.push_back({.id = "miss", .region = {}});
    const Rpovm f = pushforward(e, {{"c0", "hit"}}, target);
    CHECK(f.cell_field(1).at(0).max_abs() == 0.0);
    CHECK(validate_rpovm(f, 1e-11).all_pass());
}

TEST_CASE("rpovm construction validates shapes") {
    const SpacePtr sp = make_space(SampleSpace::uniform(1));
    MeasurableSpace gamma;
    gamma.cells.push_back({.id = "c0", .region = {}});
    std::vector<OperatorField> wrong_count;
    CHECK_THROWS_AS(Rpovm(gamma, sp, 2, wrong_count), Error);

    std::vector<OperatorField> wrong_dim{OperatorField(sp, 3, 3)};
    CHECK_THROWS_AS(Rpovm(gamma, sp, 2, wrong_dim), Error);
}
