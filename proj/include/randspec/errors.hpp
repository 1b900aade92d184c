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

#include <stdexcept>
#include <string>

namespace randspec {

enum class ErrorCode {
    dimension_mismatch,
    space_mismatch,
    not_hermitian,
    not_normal,
    not_psd,
    singular_matrix,
    no_convergence,
    hypothesis_violated,
    unbounded_integrand,
    not_ae_finite,
    domain_violation,
    cell_coverage,
    incomplete_map,
    not_pure_contraction,
    out_of_disc,
    invalid_parameter,
    parse_error,
    schema_error,
    shape_error,
    io_error,
    internal_error,
};

const char* error_code_name(ErrorCode code);

/// Library error. `where` names the offending atom or cell when one exists;
/// `residual` carries the measured violation for hypothesis-style failures.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message);
    Error(ErrorCode code, const std::string& message, const std::string& where,
          double residual);

    ErrorCode code() const noexcept { return code_; }
    const std::string& where() const noexcept { return where_; }
    double residual() const noexcept { return residual_; }

  private:
    ErrorCode code_;
    std::string where_;
    double residual_ = 0.0;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);
[[noreturn]] void fail_at(ErrorCode code, const std::string& message,
                          const std::string& where, double residual);

} // namespace randspec
