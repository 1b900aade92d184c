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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "randspec/transforms.hpp"

namespace randspec {

/// Cell-wise integrand as stored in a scenario: finite values plus an
/// explicit infinity marker, keyed by cell id.
struct StoredFunction {
    std::map<std::string, Complex> values;
    std::map<std::string, bool> infinite; // present and true marks "inf"
};

/// On-disk unit of work. Serialization is canonical: fixed key order,
/// shortest round-trip doubles, so save(load(s)) is byte-stable.
struct Scenario {
    SpacePtr space;
    std::map<std::string, std::size_t> hilbert_dims;
    std::map<std::string, std::pair<std::string, std::string>> field_dims; // name -> (from, to)
    std::map<std::string, OperatorField> fields;
    std::map<std::string, StoredFunction> functions;
    std::optional<MeasurableSpace> cells;
    std::uint64_t seed = 0;
    Tolerances tolerances;
    std::map<std::string, double> tolerance_overrides; // keys actually present in the file
};

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::string& path);

/// Cells-only file ({"cells": [...]}), used by --cells FILE.
MeasurableSpace load_cells(const std::string& path);

/// Align a stored function with a cell space; every cell needs a value.
MeasurableFunction materialize_function(const StoredFunction& f,
                                        const MeasurableSpace& cells);

/// Assemble the measure whose cell fields are the scenario fields named
/// exactly like the cells.
Rpovm assemble_rpovm(const Scenario& s);

enum class EnsembleKind {
    hermitian_gaussian,
    normal,
    projection_valued,
    anderson_tridiagonal,
    pure_contraction,
};

EnsembleKind ensemble_kind_from_string(const std::string& name);

/// Seed-deterministic scenario generator. `disorder` is the half-width of
/// the diagonal distribution for the tridiagonal kind and is ignored
/// elsewhere.
Scenario generate_ensemble(EnsembleKind kind, std::size_t dim,
                           std::size_t atoms, std::uint64_t seed,
                           double disorder = 1.0);

struct RunOptions {
    std::string field;      // primary field name; default "A" or the only field
    std::string with_field; // second operand for compose
    std::string function;   // integrand name for integrate
    std::string cells;      // "auto", a cells-file path, or empty (scenario cells)
    std::string mode;       // transform direction: "z" (default) or "t"
    double tol = -1.0;      // override for the headline tolerance; <= 0 keeps defaults
    std::uint64_t seed = 0; // override for the scenario seed; 0 keeps it
};

enum class ArtifactKind { none, json, csv };

struct RunResult {
    int exit_code = 0; // 0 success, 2 validation failure
    std::string report;
    ArtifactKind artifact_kind = ArtifactKind::none;
    std::string artifact;
};

/// Commands: validate, adjoint, compose, classify, transform, decompose,
/// pipeline, integrate. Errors surface as exceptions; the caller maps them
/// to exit code 1.
RunResult run_command(const Scenario& s, const std::string& command,
                      const RunOptions& options);

/// 17-significant-digit decimal, round-trip exact for doubles.
std::string format_g17(double v);

} // namespace randspec
