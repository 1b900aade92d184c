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

#include "randspec/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "randspec/errors.hpp"
#include "randspec/linalg.hpp"
#include "randspec/rng.hpp"

namespace randspec {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormatTag = "randspec-scenario-v1";

[[noreturn]] void schema_fail(const std::string& message) {
    fail(ErrorCode::schema_error, message);
}

const Json& expect_member(const Json& obj, const char* key,
                          const char* where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        schema_fail(std::string(where) + ": missing member '" + key + "'");
    }
    return *it;
}

double expect_number(const Json& v, const std::string& where) {
    if (!v.is_number()) {
        schema_fail(where + ": expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        schema_fail(where + ": non-finite number");
    }
    return d;
}

Complex parse_complex(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) {
        schema_fail(where + ": complex values are [re, im] pairs");
    }
    return Complex{expect_number(v[0], where + "[0]"),
                   expect_number(v[1], where + "[1]")};
}

Json dump_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

ComplexMatrix parse_matrix(const Json& v, std::size_t rows, std::size_t cols,
                           const std::string& where) {
    if (!v.is_array() || v.size() != rows) {
        fail(ErrorCode::shape_error,
             where + ": expected " + std::to_string(rows) + " rows");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = v[i];
        if (!row.is_array() || row.size() != cols) {
            fail(ErrorCode::shape_error,
                 where + ": row " + std::to_string(i) + " expected " +
                     std::to_string(cols) + " entries");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = parse_complex(row[j], where + " entry");
        }
    }
    return m;
}

Json dump_matrix(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(dump_complex(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

SpacePtr parse_space(const Json& v) {
    if (!v.is_object()) {
        schema_fail("'space' must be an object");
    }
    const Json& atoms = expect_member(v, "atoms", "space");
    const Json& weights = expect_member(v, "weights", "space");
    if (!atoms.is_array() || !weights.is_array() ||
        atoms.size() != weights.size()) {
        schema_fail("space: 'atoms' and 'weights' must be aligned arrays");
    }
    SampleSpace space;
    for (const Json& id : atoms) {
        if (!id.is_string()) {
            schema_fail("space: atom ids must be strings");
        }
        space.atom_ids.push_back(id.get<std::string>());
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        space.weights.push_back(
            expect_number(weights[i], "space weight " + std::to_string(i)));
    }
    return make_space(std::move(space));
}

MeasurableSpace parse_cells(const Json& v) {
    if (!v.is_array()) {
        schema_fail("'cells' must be an array");
    }
    MeasurableSpace cells;
    for (const Json& entry : v) {
        if (!entry.is_object()) {
            schema_fail("cells: each cell is an object");
        }
        Cell cell;
        const Json& id = expect_member(entry, "id", "cell");
        if (!id.is_string()) {
            schema_fail("cells: 'id' must be a string");
        }
        cell.id = id.get<std::string>();
        const bool has_box = entry.contains("box");
        const bool has_interval = entry.contains("interval");
        if (has_box && has_interval) {
            schema_fail("cell '" + cell.id + "': 'box' and 'interval' conflict");
        }
        if (has_box) {
            const Json& box = entry["box"];
            if (!box.is_array() || box.size() != 4) {
                schema_fail("cell '" + cell.id +
                            "': 'box' is [re_lo, re_hi, im_lo, im_hi]");
            }
            cell.region = CellRegion::box(
                expect_number(box[0], "box"), expect_number(box[1], "box"),
                expect_number(box[2], "box"), expect_number(box[3], "box"));
        } else if (has_interval) {
            const Json& iv = entry["interval"];
            if (!iv.is_array() || iv.size() != 2) {
                schema_fail("cell '" + cell.id + "': 'interval' is [lo, hi]");
            }
            cell.region = CellRegion::interval(expect_number(iv[0], "interval"),
                                               expect_number(iv[1], "interval"));
        }
        cells.cells.push_back(std::move(cell));
    }
    cells.validate();
    return cells;
}

Json dump_cells(const MeasurableSpace& cells) {
    Json out = Json::array();
    for (const Cell& cell : cells.cells) {
        Json entry = Json::object();
        entry["id"] = cell.id;
        switch (cell.region.kind) {
        case CellRegion::Kind::box:
            entry["box"] = Json::array({cell.region.re_lo, cell.region.re_hi,
                                        cell.region.im_lo, cell.region.im_hi});
            break;
        case CellRegion::Kind::interval:
            entry["interval"] =
                Json::array({cell.region.re_lo, cell.region.re_hi});
            break;
        case CellRegion::Kind::none:
            break;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

struct TolKey {
    const char* name;
    double Tolerances::* member;
};

constexpr TolKey kTolKeys[] = {
    {"tol_lin", &Tolerances::tol_lin},
    {"cluster_rel", &Tolerances::cluster_rel},
    {"proj_tol", &Tolerances::proj_tol},
    {"rpovm_tol", &Tolerances::rpovm_tol},
    {"pipeline_tol", &Tolerances::pipeline_tol},
    {"contraction_margin", &Tolerances::contraction_margin},
    {"null_tol", &Tolerances::null_tol},
    {"im_slack", &Tolerances::im_slack},
};

} // namespace

Scenario parse_scenario(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& err) {
        fail(ErrorCode::parse_error,
             "invalid JSON at byte " + std::to_string(err.byte) + ": " +
                 err.what());
    }
    if (!root.is_object()) {
        schema_fail("scenario root must be an object");
    }
    if (root.contains("format") && root["format"] != kFormatTag) {
        schema_fail("unrecognized format tag");
    }

    Scenario s;
    s.space = parse_space(expect_member(root, "space", "scenario"));

    if (root.contains("hilbert_dims")) {
        const Json& dims = root["hilbert_dims"];
        if (!dims.is_object()) {
            schema_fail("'hilbert_dims' must be an object");
        }
        for (const auto& [name, value] : dims.items()) {
            if (!value.is_number_unsigned()) {
                schema_fail("hilbert_dims['" + name +
                            "'] must be a positive integer");
            }
            const std::size_t dim = value.get<std::size_t>();
            if (dim == 0 || dim > kMaxDim) {
                schema_fail("hilbert_dims['" + name + "'] must lie in 1.." +
                            std::to_string(kMaxDim));
            }
            s.hilbert_dims[name] = dim;
        }
    }

    if (root.contains("fields")) {
        const Json& fields = root["fields"];
        if (!fields.is_object()) {
            schema_fail("'fields' must be an object");
        }
        for (const auto& [name, spec] : fields.items()) {
            if (!spec.is_object()) {
                schema_fail("field '" + name + "' must be an object");
            }
            const Json& from = expect_member(spec, "from", "field");
            const Json& to = expect_member(spec, "to", "field");
            if (!from.is_string() || !to.is_string()) {
                schema_fail("field '" + name +
                            "': 'from' and 'to' name hilbert_dims entries");
            }
            const auto from_it = s.hilbert_dims.find(from.get<std::string>());
            const auto to_it = s.hilbert_dims.find(to.get<std::string>());
            if (from_it == s.hilbert_dims.end() ||
                to_it == s.hilbert_dims.end()) {
                schema_fail("field '" + name + "': unknown dimension name");
            }
            const std::size_t dim_in = from_it->second;
            const std::size_t dim_out = to_it->second;

            const Json& matrices = expect_member(spec, "matrices", "field");
            if (!matrices.is_object()) {
                schema_fail("field '" + name + "': 'matrices' keyed by atom id");
            }
            OperatorField field(s.space, dim_in, dim_out);
            std::size_t seen = 0;
            for (std::size_t atom = 0; atom < s.space->size(); ++atom) {
                const std::string& id = s.space->atom_ids[atom];
                const auto it = matrices.find(id);
                if (it == matrices.end()) {
                    schema_fail("field '" + name + "': no matrix for atom '" +
                                id + "'");
                }
                field.at(atom) = parse_matrix(*it, dim_out, dim_in,
                                              "field '" + name + "' atom '" +
                                                  id + "'");
                ++seen;
            }
            if (matrices.size() != seen) {
                schema_fail("field '" + name + "': matrices for unknown atoms");
            }
            s.field_dims[name] = {from.get<std::string>(),
                                  to.get<std::string>()};
            s.fields.emplace(name, std::move(field));
        }
    }

    if (root.contains("cells")) {
        s.cells = parse_cells(root["cells"]);
    }

    if (root.contains("functions")) {
        const Json& functions = root["functions"];
        if (!functions.is_object()) {
            schema_fail("'functions' must be an object");
        }
        if (!s.cells) {
            schema_fail("'functions' require 'cells'");
        }
        for (const auto& [name, table] : functions.items()) {
            if (!table.is_object()) {
                schema_fail("function '" + name + "' must map cell ids");
            }
            StoredFunction f;
            for (const auto& [cell_id, value] : table.items()) {
                if (!s.cells->index_of(cell_id)) {
                    schema_fail("function '" + name + "': unknown cell '" +
                                cell_id + "'");
                }
                if (value.is_string()) {
                    if (value.get<std::string>() != "inf") {
                        schema_fail("function '" + name +
                                    "': the only string value is \"inf\"");
                    }
                    f.infinite[cell_id] = true;
                } else {
                    f.values[cell_id] =
                        parse_complex(value, "function '" + name + "'");
                }
            }
            s.functions.emplace(name, std::move(f));
        }
    }

    if (root.contains("seed")) {
        const Json& seed = root["seed"];
        if (!seed.is_number_unsigned()) {
            schema_fail("'seed' must be an unsigned integer");
        }
        s.seed = seed.get<std::uint64_t>();
    }

    if (root.contains("tolerances")) {
        const Json& tols = root["tolerances"];
        if (!tols.is_object()) {
            schema_fail("'tolerances' must be an object");
        }
        for (const auto& [name, value] : tols.items()) {
            bool known = false;
            for (const TolKey& key : kTolKeys) {
                if (name == key.name) {
                    const double v = expect_number(value, "tolerances['" +
                                                              name + "']");
                    if (v <= 0.0) {
                        schema_fail("tolerances['" + name +
                                    "'] must be positive");
                    }
                    s.tolerances.*key.member = v;
                    s.tolerance_overrides[name] = v;
                    known = true;
                    break;
                }
            }
            if (!known) {
                schema_fail("unknown tolerance '" + name + "'");
            }
        }
    }

    for (const char* key : {"format", "space", "hilbert_dims", "fields",
                            "functions", "cells", "seed", "tolerances"}) {
        root.erase(key);
    }
    if (!root.empty()) {
        schema_fail("unknown top-level member '" + root.begin().key() + "'");
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::io_error, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& s) {
    Json root = Json::object();
    root["format"] = kFormatTag;

    Json space = Json::object();
    space["atoms"] = s.space->atom_ids;
    space["weights"] = s.space->weights;
    root["space"] = std::move(space);

    if (!s.hilbert_dims.empty()) {
        Json dims = Json::object();
        for (const auto& [name, dim] : s.hilbert_dims) {
            dims[name] = dim;
        }
        root["hilbert_dims"] = std::move(dims);
    }

    if (!s.fields.empty()) {
        Json fields = Json::object();
        for (const auto& [name, field] : s.fields) {
            const auto dims_it = s.field_dims.find(name);
            if (dims_it == s.field_dims.end()) {
                fail(ErrorCode::internal_error,
                     "field '" + name + "' has no dimension names");
            }
            Json spec = Json::object();
            spec["from"] = dims_it->second.first;
            spec["to"] = dims_it->second.second;
            Json matrices = Json::object();
            std::vector<std::size_t> order(s.space->size());
            for (std::size_t i = 0; i < order.size(); ++i) {
                order[i] = i;
            }
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return s.space->atom_ids[a] < s.space->atom_ids[b];
                      });
            for (std::size_t atom : order) {
                matrices[s.space->atom_ids[atom]] =
                    dump_matrix(field.at(atom));
            }
            spec["matrices"] = std::move(matrices);
            fields[name] = std::move(spec);
        }
        root["fields"] = std::move(fields);
    }

    if (!s.functions.empty()) {
        Json functions = Json::object();
        for (const auto& [name, f] : s.functions) {
            Json table = Json::object();
            std::map<std::string, Json> entries;
            for (const auto& [cell, value] : f.values) {
                entries[cell] = dump_complex(value);
            }
            for (const auto& [cell, flag] : f.infinite) {
                if (flag) {
                    entries[cell] = "inf";
                }
            }
            for (auto& [cell, value] : entries) {
                table[cell] = std::move(value);
            }
            functions[name] = std::move(table);
        }
        root["functions"] = std::move(functions);
    }

    if (s.cells) {
        root["cells"] = dump_cells(*s.cells);
    }

    root["seed"] = s.seed;

    if (!s.tolerance_overrides.empty()) {
        Json tols = Json::object();
        for (const auto& [name, value] : s.tolerance_overrides) {
            tols[name] = value;
        }
        root["tolerances"] = std::move(tols);
    }

    return root.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorCode::io_error, "cannot write '" + path + "'");
    }
    out << scenario_to_json(s);
    if (!out) {
        fail(ErrorCode::io_error, "short write to '" + path + "'");
    }
}

MeasurableSpace load_cells(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::io_error, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    Json root;
    try {
        root = Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& err) {
        fail(ErrorCode::parse_error,
             "invalid JSON at byte " + std::to_string(err.byte) + ": " +
                 err.what());
    }
    if (!root.is_object() || !root.contains("cells")) {
        schema_fail("cells file must be an object with a 'cells' array");
    }
    return parse_cells(root["cells"]);
}

MeasurableFunction materialize_function(const StoredFunction& f,
                                        const MeasurableSpace& cells) {
    MeasurableFunction out(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const std::string& id = cells.cells[c].id;
        const auto inf_it = f.infinite.find(id);
        if (inf_it != f.infinite.end() && inf_it->second) {
            out.set_infinite(c);
            continue;
        }
        const auto value_it = f.values.find(id);
        if (value_it == f.values.end()) {
            schema_fail("function has no value for cell '" + id + "'");
        }
        out.set(c, value_it->second);
    }
    return out;
}

Rpovm assemble_rpovm(const Scenario& s) {
    if (!s.cells) {
        schema_fail("scenario has no cells to assemble a measure from");
    }
    std::vector<OperatorField> cell_fields;
    std::size_t dim = 0;
    for (const Cell& cell : s.cells->cells) {
        const auto it = s.fields.find(cell.id);
        if (it == s.fields.end()) {
            schema_fail("no field named after cell '" + cell.id + "'");
        }
        const OperatorField& f = it->second;
        if (f.dim_in() != f.dim_out()) {
            fail(ErrorCode::shape_error,
                 "cell field '" + cell.id + "' is not an endomorphism");
        }
        if (dim == 0) {
            dim = f.dim_in();
        }
        cell_fields.push_back(f);
    }
    if (cell_fields.empty()) {
        schema_fail("scenario has no cells");
    }
    return Rpovm(*s.cells, s.space, dim, std::move(cell_fields));
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
    if (name == "hermitian-gaussian") {
        return EnsembleKind::hermitian_gaussian;
    }
    if (name == "normal") {
        return EnsembleKind::normal;
    }
    if (name == "projection-valued") {
        return EnsembleKind::projection_valued;
    }
    if (name == "anderson-tridiagonal") {
        return EnsembleKind::anderson_tridiagonal;
    }
    if (name == "pure-contraction") {
        return EnsembleKind::pure_contraction;
    }
    fail(ErrorCode::invalid_parameter, "unknown ensemble kind '" + name + "'");
}

namespace {

ComplexMatrix random_hermitian(SplitMix64& rng, std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = Complex{rng.next_gaussian(), 0.0};
        for (std::size_t j = i + 1; j < dim; ++j) {
            const Complex v = rng.next_gaussian_complex();
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

// Unitary drawn as the eigenbasis of a gaussian Hermitian draw.
ComplexMatrix random_unitary(SplitMix64& rng, std::size_t dim) {
    const ComplexMatrix h = random_hermitian(rng, dim);
    const EigenDecomposition dec = eig_hermitian(h, 1e-9, 0.0);
    if (dec.projections.size() != dim) {
        fail(ErrorCode::internal_error, "unitary draw: repeated eigenvalue");
    }
    ComplexMatrix u(dim, dim);
    std::size_t col = 0;
    // With clustering disabled each projection is rank one, P = v v*, so its
    // heaviest column is v scaled by a phase; normalizing recovers v.
    for (const ComplexMatrix& p : dec.projections) {
        std::size_t best = 0;
        double best_mass = -1.0;
        for (std::size_t r = 0; r < dim; ++r) {
            double mass = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                mass += std::norm(p(i, r));
            }
            if (mass > best_mass) {
                best_mass = mass;
                best = r;
            }
        }
        if (!(best_mass > 0.0)) {
            fail(ErrorCode::internal_error, "unitary draw: rank-zero cell");
        }
        const double inv = 1.0 / std::sqrt(best_mass);
        for (std::size_t i = 0; i < dim; ++i) {
            u(i, col) = p(i, best) * inv;
        }
        ++col;
    }
    return u;
}

Scenario scenario_shell(std::size_t dim, std::size_t atoms,
                        std::uint64_t seed) {
    Scenario s;
    s.space = make_space(SampleSpace::uniform(atoms));
    s.hilbert_dims["H"] = dim;
    s.seed = seed;
    return s;
}

void add_field(Scenario& s, const std::string& name, OperatorField field) {
    s.field_dims[name] = {"H", "H"};
    s.fields.emplace(name, std::move(field));
}

} // namespace

Scenario generate_ensemble(EnsembleKind kind, std::size_t dim,
                           std::size_t atoms, std::uint64_t seed,
                           double disorder) {
    if (dim == 0 || dim > kMaxDim) {
        fail(ErrorCode::invalid_parameter,
             "ensemble dimension must lie in 1.." + std::to_string(kMaxDim));
    }
    if (atoms == 0) {
        fail(ErrorCode::invalid_parameter, "ensemble needs at least one atom");
    }
    if (!(disorder >= 0.0) || !std::isfinite(disorder)) {
        fail(ErrorCode::invalid_parameter, "disorder must be finite and >= 0");
    }
    Scenario s = scenario_shell(dim, atoms, seed);
    SplitMix64 rng(seed);

    switch (kind) {
    case EnsembleKind::hermitian_gaussian: {
        OperatorField field(s.space, dim, dim);
        for (std::size_t atom = 0; atom < atoms; ++atom) {
            field.at(atom) = random_hermitian(rng, dim);
        }
        add_field(s, "A", std::move(field));
        break;
    }
    case EnsembleKind::normal: {
        OperatorField field(s.space, dim, dim);
        for (std::size_t atom = 0; atom < atoms; ++atom) {
            const ComplexMatrix u = random_unitary(rng, dim);
            CVector diag(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                diag[i] = rng.next_gaussian_complex();
            }
            field.at(atom) = u * ComplexMatrix::diagonal(diag) * u.adjoint();
        }
        add_field(s, "A", std::move(field));
        break;
    }
    case EnsembleKind::projection_valued: {
        const std::size_t cells =
            1 + rng.next_below(std::min<std::size_t>(dim, 4));
        // One fixed partition of the basis columns, random sizes.
        std::vector<std::size_t> cut_of(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            cut_of[i] = rng.next_below(cells);
        }
        MeasurableSpace gamma;
        std::vector<OperatorField> cell_fields(
            cells, OperatorField(s.space, dim, dim));
        for (std::size_t c = 0; c < cells; ++c) {
            Cell cell;
            cell.id = "c" + std::to_string(c);
            gamma.cells.push_back(std::move(cell));
        }
        for (std::size_t atom = 0; atom < atoms; ++atom) {
            const ComplexMatrix u = random_unitary(rng, dim);
            for (std::size_t c = 0; c < cells; ++c) {
                ComplexMatrix p(dim, dim);
                for (std::size_t colidx = 0; colidx < dim; ++colidx) {
                    if (cut_of[colidx] != c) {
                        continue;
                    }
                    for (std::size_t i = 0; i < dim; ++i) {
                        for (std::size_t j = 0; j < dim; ++j) {
                            p(i, j) +=
                                u(i, colidx) * std::conj(u(j, colidx));
                        }
                    }
                }
                cell_fields[c].at(atom) = std::move(p);
            }
        }
        s.cells = std::move(gamma);
        for (std::size_t c = 0; c < cells; ++c) {
            add_field(s, "c" + std::to_string(c), std::move(cell_fields[c]));
        }
        break;
    }
    case EnsembleKind::anderson_tridiagonal: {
        OperatorField field(s.space, dim, dim);
        for (std::size_t atom = 0; atom < atoms; ++atom) {
            ComplexMatrix m(dim, dim);
            for (std::size_t i = 0; i < dim; ++i) {
                m(i, i) = Complex{
                    disorder > 0.0 ? rng.next_uniform(-disorder, disorder)
                                   : 0.0,
                    0.0};
                if (i + 1 < dim) {
                    m(i, i + 1) = Complex{1.0, 0.0};
                    m(i + 1, i) = Complex{1.0, 0.0};
                }
            }
            field.at(atom) = std::move(m);
        }
        add_field(s, "A", std::move(field));
        break;
    }
    case EnsembleKind::pure_contraction: {
        OperatorField raw(s.space, dim, dim);
        for (std::size_t atom = 0; atom < atoms; ++atom) {
            const ComplexMatrix u = random_unitary(rng, dim);
            CVector diag(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                diag[i] = rng.next_gaussian_complex();
            }
            raw.at(atom) = u * ComplexMatrix::diagonal(diag) * u.adjoint();
        }
        add_field(s, "A", zc_field(raw));
        break;
    }
    }
    return s;
}

namespace {

std::string resolve_field_name(const Scenario& s, const RunOptions& options) {
    if (!options.field.empty()) {
        if (!s.fields.contains(options.field)) {
            schema_fail("no field named '" + options.field + "'");
        }
        return options.field;
    }
    if (s.fields.contains("A")) {
        return "A";
    }
    if (s.fields.size() == 1) {
        return s.fields.begin()->first;
    }
    schema_fail("ambiguous field choice; pass --field");
}

std::string dim_name(std::size_t dim) { return "d" + std::to_string(dim); }

Scenario result_scenario(const Scenario& base,
                         const std::map<std::string, OperatorField>& fields) {
    Scenario out;
    out.space = base.space;
    out.seed = base.seed;
    out.tolerance_overrides = base.tolerance_overrides;
    out.tolerances = base.tolerances;
    for (const auto& [name, field] : fields) {
        out.hilbert_dims[dim_name(field.dim_in())] = field.dim_in();
        out.hilbert_dims[dim_name(field.dim_out())] = field.dim_out();
        out.field_dims[name] = {dim_name(field.dim_in()),
                                dim_name(field.dim_out())};
        out.fields.emplace(name, field);
    }
    return out;
}

class CsvBuilder {
  public:
    CsvBuilder() { rows_ << "atom_id,weight,cell_id,quantity,value_re,value_im\n"; }

    void add(const std::string& atom, double weight, const std::string& cell,
             const std::string& quantity, Complex value) {
        rows_ << atom << ',' << format_g17(weight) << ',' << cell << ','
              << quantity << ',' << format_g17(value.real()) << ','
              << format_g17(value.imag()) << '\n';
    }

    std::string str() const { return rows_.str(); }

  private:
    std::ostringstream rows_;
};

Tolerances effective_tolerances(const Scenario& s, const RunOptions& options,
                                double Tolerances::* headline) {
    Tolerances tols = s.tolerances;
    if (options.tol > 0.0 && headline != nullptr) {
        tols.*headline = options.tol;
    }
    return tols;
}

MeasurableSpace resolve_cells(const Scenario& s, const RunOptions& options,
                              bool* auto_mode) {
    *auto_mode = false;
    if (options.cells == "auto") {
        *auto_mode = true;
        return {};
    }
    if (!options.cells.empty()) {
        return load_cells(options.cells);
    }
    if (s.cells) {
        return *s.cells;
    }
    *auto_mode = true; // no explicit cells anywhere: fall back to auto
    return {};
}

std::string pass_fail(bool pass) { return pass ? "pass" : "FAIL"; }

RunResult cmd_validate(const Scenario& s, const RunOptions& options) {
    const Tolerances tols =
        effective_tolerances(s, options, &Tolerances::rpovm_tol);
    RunResult result;
    std::ostringstream report;
    Json artifact = Json::object();

    bool has_measure = false;
    bool measure_ok = true;
    if (s.cells) {
        bool any_named = false;
        for (const Cell& cell : s.cells->cells) {
            if (s.fields.contains(cell.id)) {
                any_named = true;
                break;
            }
        }
        if (any_named) {
            has_measure = true;
            const Rpovm e = assemble_rpovm(s);
            const ValidationReport vr = validate_rpovm(e, tols.rpovm_tol);
            measure_ok = vr.all_pass();
            report << "measure: " << e.cell_count() << " cells, dimension "
                   << e.dim() << "\n";
            Json axioms = Json::array();
            for (const AxiomReport& axiom : vr.axioms) {
                report << "  " << axiom.axiom << ": " << pass_fail(axiom.pass)
                       << " (worst residual " << format_g17(axiom.worst_residual)
                       << (axiom.detail.empty() ? "" : " at " + axiom.detail)
                       << ")\n";
                Json entry = Json::object();
                entry["axiom"] = axiom.axiom;
                entry["pass"] = axiom.pass;
                entry["worst_residual"] = axiom.worst_residual;
                entry["detail"] = axiom.detail;
                axioms.push_back(std::move(entry));
            }
            std::vector<OperatorField> cell_fields;
            for (std::size_t c = 0; c < e.cell_count(); ++c) {
                cell_fields.push_back(e.cell_field(c));
            }
            const bool lemma =
                lemma_check(e.gamma(), cell_fields, tols.rpovm_tol);
            report << "  multiplicativity + positivity characterization: "
                   << pass_fail(lemma) << "\n";
            artifact["axioms"] = std::move(axioms);
            artifact["lemma_check"] = lemma;
        }
    }

    if (!s.fields.empty()) {
        Json predicates_json = Json::object();
        for (const auto& [name, field] : s.fields) {
            if (field.dim_in() != field.dim_out()) {
                report << "field " << name << ": " << field.dim_out() << "x"
                       << field.dim_in() << " (rectangular)\n";
                continue;
            }
            const FieldPredicates p = predicates(field, tols.proj_tol);
            report << "field " << name << ": selfadjoint=" << p.selfadjoint
                   << " normal=" << p.normal << " unitary=" << p.unitary
                   << " projection=" << p.projection
                   << " pure_contraction=" << p.pure_contraction << "\n";
            Json entry = Json::object();
            entry["selfadjoint"] = p.selfadjoint;
            entry["normal"] = p.normal;
            entry["unitary"] = p.unitary;
            entry["projection"] = p.projection;
            entry["pure_contraction"] = p.pure_contraction;
            predicates_json[name] = std::move(entry);
        }
        artifact["predicates"] = std::move(predicates_json);
    }

    if (!has_measure && s.fields.empty()) {
        report << "nothing to validate\n";
    }
    result.exit_code = measure_ok ? 0 : 2;
    report << "verdict: " << (measure_ok ? "ok" : "validation failed") << "\n";
    result.report = report.str();
    artifact["verdict"] = measure_ok ? "ok" : "validation failed";
    result.artifact_kind = ArtifactKind::json;
    result.artifact = artifact.dump(2) + "\n";
    return result;
}

RunResult cmd_adjoint(const Scenario& s, const RunOptions& options) {
    const std::string name = resolve_field_name(s, options);
    const OperatorField& field = s.fields.at(name);
    const OperatorField adj = adjoint(field);
    RunResult result;
    std::ostringstream report;
    report << "adjoint of " << name << ": " << adj.dim_out() << "x"
           << adj.dim_in() << " over " << adj.atoms() << " atoms\n";
    result.report = report.str();
    result.artifact_kind = ArtifactKind::json;
    result.artifact =
        scenario_to_json(result_scenario(s, {{"result", adj}}));
    return result;
}

RunResult cmd_compose(const Scenario& s, const RunOptions& options) {
    const std::string left = resolve_field_name(s, options);
    if (options.with_field.empty()) {
        schema_fail("compose needs --with naming the right factor");
    }
    if (!s.fields.contains(options.with_field)) {
        schema_fail("no field named '" + options.with_field + "'");
    }
    const OperatorField& b = s.fields.at(left);
    const OperatorField& a = s.fields.at(options.with_field);
    const OperatorField ba = compose(b, a);
    RunResult result;
    std::ostringstream report;
    report << "compose: result = " << left << " after " << options.with_field
           << ", " << ba.dim_out() << "x" << ba.dim_in() << "\n";
    result.report = report.str();
    result.artifact_kind = ArtifactKind::json;
    result.artifact = scenario_to_json(result_scenario(s, {{"result", ba}}));
    return result;
}

RunResult cmd_classify(const Scenario& s, const RunOptions& options) {
    const std::string name = resolve_field_name(s, options);
    const FieldClassification cls = classify(s.fields.at(name));
    RunResult result;
    std::ostringstream report;
    report << "classify " << name << ":\n"
           << "  E[r^2] = " << format_g17(cls.mean_square) << "\n"
           << "  HS norm^2 = " << format_g17(cls.hs_norm_sq) << "\n"
           << "  ess sup r = " << format_g17(cls.ess_sup) << "\n"
           << "  classes: measurable=" << cls.measurable_class
           << " mean_square=" << cls.mean_square_class
           << " hilbert_schmidt=" << cls.hilbert_schmidt << "\n";
    result.report = report.str();
    CsvBuilder csv;
    const SampleSpace& space = *s.space;
    for (std::size_t atom = 0; atom < space.size(); ++atom) {
        csv.add(space.atom_ids[atom], space.weights[atom], "", "r",
                cls.atom_norms.at(atom));
    }
    result.artifact_kind = ArtifactKind::csv;
    result.artifact = csv.str();
    return result;
}

RunResult cmd_transform(const Scenario& s, const RunOptions& options) {
    const std::string name = resolve_field_name(s, options);
    const OperatorField& field = s.fields.at(name);
    const Tolerances tols =
        effective_tolerances(s, options, &Tolerances::contraction_margin);
    RunResult result;
    std::ostringstream report;
    if (options.mode.empty() || options.mode == "z") {
        const TransformPair pair = bounded_transform(field);
        // Defect identity residual, atom-wise.
        double worst = 0.0;
        const ComplexMatrix eye = ComplexMatrix::identity(field.dim_in());
        for (std::size_t atom = 0; atom < field.atoms(); ++atom) {
            if (s.space->weights[atom] <= 0.0) {
                continue;
            }
            const ComplexMatrix& z = pair.transformed.at(atom);
            worst = std::max(worst, op_norm(eye - z.adjoint() * z -
                                            pair.defect.at(atom)));
        }
        report << "transform " << name
               << " -> result (contraction), defect; identity residual "
               << format_g17(worst) << "\n";
        result.artifact_kind = ArtifactKind::json;
        result.artifact = scenario_to_json(result_scenario(
            s, {{"result", pair.transformed}, {"defect", pair.defect}}));
    } else if (options.mode == "t") {
        const OperatorField t = tc_field(field, tols.contraction_margin);
        report << "inverse transform " << name << " -> result\n";
        result.artifact_kind = ArtifactKind::json;
        result.artifact =
            scenario_to_json(result_scenario(s, {{"result", t}}));
    } else {
        fail(ErrorCode::invalid_parameter,
             "transform mode must be 'z' or 't'");
    }
    result.report = report.str();
    return result;
}

void emit_measure_csv(CsvBuilder& csv, const Rpovm& e,
                      const std::vector<Complex>* representatives) {
    const SampleSpace& space = *e.space();
    for (std::size_t atom = 0; atom < space.size(); ++atom) {
        for (std::size_t c = 0; c < e.cell_count(); ++c) {
            const ComplexMatrix& p = e.cell_field(c).at(atom);
            for (std::size_t i = 0; i < e.dim(); ++i) {
                csv.add(space.atom_ids[atom], space.weights[atom],
                        e.gamma().cells[c].id,
                        "E_xx(e" + std::to_string(i + 1) + ")", p(i, i));
            }
            if (representatives != nullptr) {
                csv.add(space.atom_ids[atom], space.weights[atom],
                        e.gamma().cells[c].id, "representative",
                        (*representatives)[c]);
            }
        }
    }
}

RunResult cmd_decompose(const Scenario& s, const RunOptions& options) {
    const std::string name = resolve_field_name(s, options);
    const OperatorField& field = s.fields.at(name);
    const Tolerances tols =
        effective_tolerances(s, options, &Tolerances::cluster_rel);
    bool auto_mode = false;
    const MeasurableSpace cells = resolve_cells(s, options, &auto_mode);

    RunResult result;
    std::ostringstream report;
    CsvBuilder csv;
    if (auto_mode) {
        const SpectralDecomposition dec = spectral_decompose_auto(field, tols);
        report << "decompose " << name << ": " << dec.measure.cell_count()
               << " auto cells\n";
        for (std::size_t c = 0; c < dec.measure.cell_count(); ++c) {
            report << "  " << dec.measure.gamma().cells[c].id << ": rep ("
                   << format_g17(dec.representatives[c].real()) << ", "
                   << format_g17(dec.representatives[c].imag()) << ")\n";
        }
        emit_measure_csv(csv, dec.measure, &dec.representatives);
    } else {
        const Rpovm e = spectral_decompose(field, cells, tols);
        report << "decompose " << name << ": " << e.cell_count()
               << " cells\n";
        emit_measure_csv(csv, e, nullptr);
    }
    result.report = report.str();
    result.artifact_kind = ArtifactKind::csv;
    result.artifact = csv.str();
    return result;
}

RunResult cmd_pipeline(const Scenario& s, const RunOptions& options) {
    const std::string name = resolve_field_name(s, options);
    const Tolerances tols =
        effective_tolerances(s, options, &Tolerances::pipeline_tol);
    const PipelineResult pr =
        spectral_theorem_pipeline(s.fields.at(name), tols);
    RunResult result;
    std::ostringstream report;
    report << "pipeline " << name << ": "
           << pr.measure.cell_count() << " cells\n"
           << "  reconstruction residual "
           << format_g17(pr.report.reconstruction_residual) << "\n"
           << "  alignment residual "
           << format_g17(pr.report.alignment_residual) << "\n"
           << "  representative distance "
           << format_g17(pr.report.alignment_rep_distance) << "\n"
           << "  support in disc: " << pass_fail(pr.report.support_in_disc)
           << "\n"
           << "  cells aligned: " << pass_fail(pr.report.aligned) << "\n"
           << "  verdict: " << pass_fail(pr.report.pass) << "\n";
    result.report = report.str();
    result.exit_code = pr.report.pass ? 0 : 2;

    Json artifact = Json::object();
    artifact["cells"] = pr.measure.cell_count();
    Json reps = Json::array();
    for (const Complex& rep : pr.representatives) {
        reps.push_back(dump_complex(rep));
    }
    artifact["representatives"] = std::move(reps);
    artifact["reconstruction_residual"] = pr.report.reconstruction_residual;
    artifact["alignment_residual"] = pr.report.alignment_residual;
    artifact["representative_distance"] = pr.report.alignment_rep_distance;
    artifact["support_in_disc"] = pr.report.support_in_disc;
    artifact["aligned"] = pr.report.aligned;
    artifact["pass"] = pr.report.pass;
    result.artifact_kind = ArtifactKind::json;
    result.artifact = artifact.dump(2) + "\n";
    return result;
}

RunResult cmd_integrate(const Scenario& s, const RunOptions& options) {
    if (options.function.empty()) {
        schema_fail("integrate needs --function");
    }
    const auto fn_it = s.functions.find(options.function);
    if (fn_it == s.functions.end()) {
        schema_fail("no function named '" + options.function + "'");
    }
    const Tolerances tols =
        effective_tolerances(s, options, &Tolerances::null_tol);
    const Rpovm e = assemble_rpovm(s);
    const MeasurableFunction f = materialize_function(fn_it->second, e.gamma());

    RunResult result;
    std::ostringstream report;
    if (!f.has_infinite()) {
        const OperatorField integral = integrate_bounded(e, f, tols.null_tol);
        const FieldClassification cls = classify(integral);
        report << "integrate " << options.function << ": bounded, ess sup "
               << format_g17(cls.ess_sup) << "\n";
        result.artifact_kind = ArtifactKind::json;
        result.artifact =
            scenario_to_json(result_scenario(s, {{"result", integral}}));
    } else {
        // Extended integral on the standard basis; out-of-domain vectors are
        // reported, not fatal.
        Json artifact = Json::object();
        Json domain = Json::object();
        Json vectors = Json::object();
        for (std::size_t i = 0; i < e.dim(); ++i) {
            CVector basis(e.dim(), Complex{0.0, 0.0});
            basis[i] = Complex{1.0, 0.0};
            const std::string key = "e" + std::to_string(i + 1);
            const bool in_domain = extended_domain(e, f, basis, tols.null_tol);
            domain[key] = in_domain;
            if (in_domain) {
                const RandomVector v =
                    integrate_extended(e, f, basis, tols.null_tol);
                Json per_atom = Json::object();
                for (std::size_t atom = 0; atom < v.atoms(); ++atom) {
                    Json coords = Json::array();
                    for (const Complex& value : v.at(atom)) {
                        coords.push_back(dump_complex(value));
                    }
                    per_atom[s.space->atom_ids[atom]] = std::move(coords);
                }
                vectors[key] = std::move(per_atom);
            }
            report << "  " << key << ": "
                   << (in_domain ? "in domain" : "outside domain") << "\n";
        }
        report.str("integrate " + options.function +
                   ": extended (integrand has infinite cells)\n" +
                   report.str());
        artifact["domain"] = std::move(domain);
        artifact["vectors"] = std::move(vectors);
        result.artifact_kind = ArtifactKind::json;
        result.artifact = artifact.dump(2) + "\n";
    }
    result.report = report.str();
    return result;
}

} // namespace

RunResult run_command(const Scenario& s, const std::string& command,
                      const RunOptions& options) {
    if (command == "validate") {
        return cmd_validate(s, options);
    }
    if (command == "adjoint") {
        return cmd_adjoint(s, options);
    }
    if (command == "compose") {
        return cmd_compose(s, options);
    }
    if (command == "classify") {
        return cmd_classify(s, options);
    }
    if (command == "transform") {
        return cmd_transform(s, options);
    }
    if (command == "decompose") {
        return cmd_decompose(s, options);
    }
    if (command == "pipeline") {
        return cmd_pipeline(s, options);
    }
    if (command == "integrate") {
        return cmd_integrate(s, options);
    }
    fail(ErrorCode::invalid_parameter, "unknown command '" + command + "'");
}

std::string format_g17(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return std::string(buffer);
}

} // namespace randspec
