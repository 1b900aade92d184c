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

#include "randspec/errors.hpp"

namespace randspec {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::dimension_mismatch:
        return "DimensionMismatch";
    case ErrorCode::space_mismatch:
        return "SpaceMismatch";
    case ErrorCode::not_hermitian:
        return "NotHermitian";
    case ErrorCode::not_normal:
        return "NotNormal";
    case ErrorCode::not_psd:
        return "NotPSD";
    case ErrorCode::singular_matrix:
        return "SingularMatrix";
    case ErrorCode::no_convergence:
        return "NoConvergence";
    case ErrorCode::hypothesis_violated:
        return "HypothesisViolated";
    case ErrorCode::unbounded_integrand:
        return "UnboundedIntegrand";
    case ErrorCode::not_ae_finite:
        return "NotAEFinite";
    case ErrorCode::domain_violation:
        return "DomainViolation";
    case ErrorCode::cell_coverage:
        return "CellCoverage";
    case ErrorCode::incomplete_map:
        return "IncompleteMap";
    case ErrorCode::not_pure_contraction:
        return "NotPureContraction";
    case ErrorCode::out_of_disc:
        return "OutOfDisc";
    case ErrorCode::invalid_parameter:
        return "InvalidParameter";
    case ErrorCode::parse_error:
        return "ParseError";
    case ErrorCode::schema_error:
        return "SchemaError";
    case ErrorCode::shape_error:
        return "ShapeError";
    case ErrorCode::io_error:
        return "IoError";
    case ErrorCode::internal_error:
        return "InternalError";
    }
    return "UnknownError";
}

namespace {

std::string compose_message(ErrorCode code, const std::string& message) {
    std::string out = error_code_name(code);
    out += ": ";
    out += message;
    return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(compose_message(code, message)), code_(code) {}

Error::Error(ErrorCode code, const std::string& message,
             const std::string& where, double residual)
    : std::runtime_error(compose_message(code, message)), code_(code),
      where_(where), residual_(residual) {}

void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

void fail_at(ErrorCode code, const std::string& message,
             const std::string& where, double residual) {
    throw Error(code, message, where, residual);
}

} // namespace randspec
