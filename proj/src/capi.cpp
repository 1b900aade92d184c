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

#include "randspec/randspec.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "randspec/errors.hpp"
#include "randspec/scenario.hpp"

struct rs_scenario {
    randspec::Scenario value;
};

struct rs_result {
    randspec::RunResult value;
};

namespace {

thread_local std::string g_last_error;

rs_status status_of(randspec::ErrorCode code) {
    using randspec::ErrorCode;
    switch (code) {
    case ErrorCode::dimension_mismatch: return RS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::space_mismatch: return RS_ERR_SPACE_MISMATCH;
    case ErrorCode::not_hermitian: return RS_ERR_NOT_HERMITIAN;
    case ErrorCode::not_normal: return RS_ERR_NOT_NORMAL;
    case ErrorCode::not_psd: return RS_ERR_NOT_PSD;
    case ErrorCode::singular_matrix: return RS_ERR_SINGULAR_MATRIX;
    case ErrorCode::no_convergence: return RS_ERR_NO_CONVERGENCE;
    case ErrorCode::hypothesis_violated: return RS_ERR_HYPOTHESIS_VIOLATED;
    case ErrorCode::unbounded_integrand: return RS_ERR_UNBOUNDED_INTEGRAND;
    case ErrorCode::not_ae_finite: return RS_ERR_NOT_AE_FINITE;
    case ErrorCode::domain_violation: return RS_ERR_DOMAIN_VIOLATION;
    case ErrorCode::cell_coverage: return RS_ERR_CELL_COVERAGE;
    case ErrorCode::incomplete_map: return RS_ERR_INCOMPLETE_MAP;
    case ErrorCode::not_pure_contraction: return RS_ERR_NOT_PURE_CONTRACTION;
    case ErrorCode::out_of_disc: return RS_ERR_OUT_OF_DISC;
    case ErrorCode::invalid_parameter: return RS_ERR_INVALID_PARAMETER;
    case ErrorCode::parse_error: return RS_ERR_PARSE;
    case ErrorCode::schema_error: return RS_ERR_SCHEMA;
    case ErrorCode::shape_error: return RS_ERR_SHAPE;
    case ErrorCode::io_error: return RS_ERR_IO;
    case ErrorCode::internal_error: return RS_ERR_INTERNAL;
    }
    return RS_ERR_INTERNAL;
}

template <typename Fn> rs_status guarded(Fn&& fn) {
    try {
        fn();
        return RS_OK;
    } catch (const randspec::Error& err) {
        g_last_error = err.what();
        return status_of(err.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return RS_ERR_INTERNAL;
    } catch (const std::exception& err) {
        g_last_error = err.what();
        return RS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return RS_ERR_INTERNAL;
    }
}

rs_status require(bool ok, const char* message) {
    if (ok) {
        return RS_OK;
    }
    g_last_error = message;
    return RS_ERR_INVALID_PARAMETER;
}

} // namespace

extern "C" {

const char* rs_version(void) { return "1.0.0"; }

const char* rs_status_name(rs_status status) {
    switch (status) {
    case RS_OK: return "OK";
    case RS_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case RS_ERR_SPACE_MISMATCH: return "SpaceMismatch";
    case RS_ERR_NOT_HERMITIAN: return "NotHermitian";
    case RS_ERR_NOT_NORMAL: return "NotNormal";
    case RS_ERR_NOT_PSD: return "NotPSD";
    case RS_ERR_SINGULAR_MATRIX: return "SingularMatrix";
    case RS_ERR_NO_CONVERGENCE: return "NoConvergence";
    case RS_ERR_HYPOTHESIS_VIOLATED: return "HypothesisViolated";
    case RS_ERR_UNBOUNDED_INTEGRAND: return "UnboundedIntegrand";
    case RS_ERR_NOT_AE_FINITE: return "NotAEFinite";
    case RS_ERR_DOMAIN_VIOLATION: return "DomainViolation";
    case RS_ERR_CELL_COVERAGE: return "CellCoverage";
    case RS_ERR_INCOMPLETE_MAP: return "IncompleteMap";
    case RS_ERR_NOT_PURE_CONTRACTION: return "NotPureContraction";
    case RS_ERR_OUT_OF_DISC: return "OutOfDisc";
    case RS_ERR_INVALID_PARAMETER: return "InvalidParameter";
    case RS_ERR_PARSE: return "ParseError";
    case RS_ERR_SCHEMA: return "SchemaError";
    case RS_ERR_SHAPE: return "ShapeError";
    case RS_ERR_IO: return "IoError";
    case RS_ERR_INTERNAL: return "InternalError";
    }
    return "InternalError";
}

const char* rs_last_error(void) { return g_last_error.c_str(); }

rs_status rs_scenario_load(const char* path, rs_scenario** out) {
    if (rs_status bad = require(path != nullptr && out != nullptr,
                                "rs_scenario_load: NULL argument")) {
        return bad;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<rs_scenario>();
        handle->value = randspec::load_scenario(path);
        *out = handle.release();
    });
}

rs_status rs_scenario_parse(const char* json_text, rs_scenario** out) {
    if (rs_status bad = require(json_text != nullptr && out != nullptr,
                                "rs_scenario_parse: NULL argument")) {
        return bad;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<rs_scenario>();
        handle->value = randspec::parse_scenario(json_text);
        *out = handle.release();
    });
}

rs_status rs_scenario_save(const rs_scenario* s, const char* path) {
    if (rs_status bad = require(s != nullptr && path != nullptr,
                                "rs_scenario_save: NULL argument")) {
        return bad;
    }
    return guarded([&] { randspec::save_scenario(s->value, path); });
}

rs_status rs_scenario_to_json(const rs_scenario* s, char** out_text) {
    if (rs_status bad = require(s != nullptr && out_text != nullptr,
                                "rs_scenario_to_json: NULL argument")) {
        return bad;
    }
    *out_text = nullptr;
    return guarded([&] {
        const std::string text = randspec::scenario_to_json(s->value);
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out_text = buffer;
    });
}

rs_status rs_scenario_generate(const char* kind, int dim, int atoms,
                               uint64_t seed, double disorder,
                               rs_scenario** out) {
    if (rs_status bad = require(kind != nullptr && out != nullptr,
                                "rs_scenario_generate: NULL argument")) {
        return bad;
    }
    if (rs_status bad = require(dim > 0 && atoms > 0,
                                "rs_scenario_generate: dim and atoms must be "
                                "positive")) {
        return bad;
    }
    *out = nullptr;
    return guarded([&] {
        auto handle = std::make_unique<rs_scenario>();
        handle->value = randspec::generate_ensemble(
            randspec::ensemble_kind_from_string(kind),
            static_cast<std::size_t>(dim), static_cast<std::size_t>(atoms),
            seed, disorder);
        *out = handle.release();
    });
}

void rs_scenario_free(rs_scenario* s) { delete s; }

rs_status rs_run(const rs_scenario* s, const char* command,
                 const rs_run_options* options, rs_result** out) {
    if (rs_status bad = require(s != nullptr && command != nullptr &&
                                    out != nullptr,
                                "rs_run: NULL argument")) {
        return bad;
    }
    *out = nullptr;
    return guarded([&] {
        randspec::RunOptions opts;
        if (options != nullptr) {
            if (options->field != nullptr) opts.field = options->field;
            if (options->with_field != nullptr)
                opts.with_field = options->with_field;
            if (options->function != nullptr) opts.function = options->function;
            if (options->cells != nullptr) opts.cells = options->cells;
            if (options->mode != nullptr) opts.mode = options->mode;
            opts.tol = options->tol;
            opts.seed = options->seed;
        }
        auto handle = std::make_unique<rs_result>();
        handle->value = randspec::run_command(s->value, command, opts);
        *out = handle.release();
    });
}

int rs_result_exit_code(const rs_result* r) {
    return r == nullptr ? 1 : r->value.exit_code;
}

const char* rs_result_report(const rs_result* r) {
    return r == nullptr ? "" : r->value.report.c_str();
}

const char* rs_result_artifact(const rs_result* r) {
    if (r == nullptr || r->value.artifact_kind == randspec::ArtifactKind::none) {
        return nullptr;
    }
    return r->value.artifact.c_str();
}

const char* rs_result_artifact_kind(const rs_result* r) {
    if (r == nullptr) {
        return nullptr;
    }
    switch (r->value.artifact_kind) {
    case randspec::ArtifactKind::json: return "json";
    case randspec::ArtifactKind::csv: return "csv";
    case randspec::ArtifactKind::none: return nullptr;
    }
    return nullptr;
}

void rs_result_free(rs_result* r) { delete r; }

void rs_string_free(char* text) { delete[] text; }

} // extern "C"
