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

#include "randspec/matrix.hpp"

#include <cmath>
#include <string>

#include "randspec/errors.hpp"

namespace randspec {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::dimension_mismatch,
             std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                 std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                 "x" + std::to_string(b.cols()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        fail(ErrorCode::invalid_parameter, "matrix dimensions must be positive");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Complex{1.0, 0.0};
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
    ComplexMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        fail(ErrorCode::dimension_mismatch, "trace of a non-square matrix");
    }
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const Complex& v : data_) {
        sum += std::norm(v);
    }
    return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const Complex& v : data_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            return false;
        }
    }
    return true;
}

CVector ComplexMatrix::apply(std::span<const Complex> x) const {
    if (x.size() != cols_) {
        fail(ErrorCode::dimension_mismatch,
             "apply: vector length " + std::to_string(x.size()) +
                 " vs matrix columns " + std::to_string(cols_));
    }
    CVector out(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc{0.0, 0.0};
        const Complex* row = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += row[j] * x[j];
        }
        out[i] = acc;
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += rhs.data_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "subtract");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= rhs.data_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (Complex& v : data_) {
        v *= scalar;
    }
    return *this;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = a;
    out += b;
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = a;
    out -= b;
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        fail(ErrorCode::dimension_mismatch,
             "multiply: " + std::to_string(a.rows()) + "x" +
                 std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                 "x" + std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) {
    ComplexMatrix out = m;
    out *= scalar;
    return out;
}

Complex vec_inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) {
        fail(ErrorCode::dimension_mismatch, "inner product of unequal lengths");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * std::conj(y[i]);
    }
    return acc;
}

double vec_norm(std::span<const Complex> x) {
    double sum = 0.0;
    for (const Complex& v : x) {
        sum += std::norm(v);
    }
    return std::sqrt(sum);
}

CVector vec_add(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) {
        fail(ErrorCode::dimension_mismatch, "adding vectors of unequal lengths");
    }
    CVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] + y[i];
    }
    return out;
}

CVector vec_sub(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) {
        fail(ErrorCode::dimension_mismatch,
             "subtracting vectors of unequal lengths");
    }
    CVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] - y[i];
    }
    return out;
}

CVector vec_scale(Complex scalar, std::span<const Complex> x) {
    CVector out(x.begin(), x.end());
    for (Complex& v : out) {
        v *= scalar;
    }
    return out;
}

bool vec_is_finite(std::span<const Complex> x) {
    for (const Complex& v : x) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            return false;
        }
    }
    return true;
}

} // namespace randspec
