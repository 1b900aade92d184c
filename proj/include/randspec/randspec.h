/* Copyright 2026 The randspec developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

/* C interface of librandspec. Objects are opaque handles created and
   released through this header; every fallible call returns an rs_status,
   and rs_last_error() describes the most recent failure on this thread. */

#ifndef RANDSPEC_RANDSPEC_H
#define RANDSPEC_RANDSPEC_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(RANDSPEC_BUILD)
#define RS_API __declspec(dllexport)
#else
#define RS_API __declspec(dllimport)
#endif
#else
#define RS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
    RS_OK = 0,
    RS_ERR_DIMENSION_MISMATCH,
    RS_ERR_SPACE_MISMATCH,
    RS_ERR_NOT_HERMITIAN,
    RS_ERR_NOT_NORMAL,
    RS_ERR_NOT_PSD,
    RS_ERR_SINGULAR_MATRIX,
    RS_ERR_NO_CONVERGENCE,
    RS_ERR_HYPOTHESIS_VIOLATED,
    RS_ERR_UNBOUNDED_INTEGRAND,
    RS_ERR_NOT_AE_FINITE,
    RS_ERR_DOMAIN_VIOLATION,
    RS_ERR_CELL_COVERAGE,
    RS_ERR_INCOMPLETE_MAP,
    RS_ERR_NOT_PURE_CONTRACTION,
    RS_ERR_OUT_OF_DISC,
    RS_ERR_INVALID_PARAMETER,
    RS_ERR_PARSE,
    RS_ERR_SCHEMA,
    RS_ERR_SHAPE,
    RS_ERR_IO,
    RS_ERR_INTERNAL
} rs_status;

typedef struct rs_scenario rs_scenario;
typedef struct rs_result rs_result;

typedef struct rs_run_options {
    const char* field;      /* primary field name, or NULL for the default */
    const char* with_field; /* second operand for compose, or NULL */
    const char* function;   /* integrand name for integrate, or NULL */
    const char* cells;      /* "auto", a cells JSON path, or NULL */
    const char* mode;       /* transform direction "z" or "t", or NULL */
    double tol;             /* headline tolerance override; <= 0 keeps defaults */
    uint64_t seed;          /* scenario seed override; 0 keeps the stored seed */
} rs_run_options;

RS_API const char* rs_version(void);
RS_API const char* rs_status_name(rs_status status);

/* Message for the last failing call on this thread; never NULL. */
RS_API const char* rs_last_error(void);

RS_API rs_status rs_scenario_load(const char* path, rs_scenario** out);
RS_API rs_status rs_scenario_parse(const char* json_text, rs_scenario** out);
RS_API rs_status rs_scenario_save(const rs_scenario* s, const char* path);

/* Canonical serialization; free with rs_string_free. */
RS_API rs_status rs_scenario_to_json(const rs_scenario* s, char** out_text);

/* Kinds: hermitian-gaussian, normal, projection-valued, anderson-tridiagonal,
   pure-contraction. `disorder` feeds the tridiagonal diagonal half-width. */
RS_API rs_status rs_scenario_generate(const char* kind, int dim, int atoms,
                                      uint64_t seed, double disorder,
                                      rs_scenario** out);

RS_API void rs_scenario_free(rs_scenario* s);

/* Commands: validate, adjoint, compose, classify, transform, decompose,
   pipeline, integrate. A non-RS_OK status means the run itself failed
   (exit code 1 semantics); validation verdicts live in the result. */
RS_API rs_status rs_run(const rs_scenario* s, const char* command,
                        const rs_run_options* options, rs_result** out);

/* 0 on success, 2 on a failed validation verdict. */
RS_API int rs_result_exit_code(const rs_result* r);

/* Human-readable report; never NULL for a live result. */
RS_API const char* rs_result_report(const rs_result* r);

/* Machine artifact of the run, or NULL when the command produces none.
   rs_result_artifact_kind returns "json" or "csv" alongside. */
RS_API const char* rs_result_artifact(const rs_result* r);
RS_API const char* rs_result_artifact_kind(const rs_result* r);

RS_API void rs_result_free(rs_result* r);
RS_API void rs_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* RANDSPEC_RANDSPEC_H */
