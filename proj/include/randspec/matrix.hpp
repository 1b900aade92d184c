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

#include <complex>
#include <initializer_list>
#include <cstddef>
#include <span>
#include <vector>

namespace randspec {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> entries);
    static ComplexMatrix diagonal(std::initializer_list<Complex> entries) {
        return diagonal(std::span<const Complex>(entries.begin(),
                                                 entries.size()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    Complex operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_finite() const;
    bool is_square() const noexcept { return rows_ == cols_; }

    /// Matrix-vector product; x.size() must equal cols().
    CVector apply(std::span<const Complex> x) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scalar);

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    CVector data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m);
inline ComplexMatrix operator*(const ComplexMatrix& m, Complex scalar) {
    return scalar * m;
}

/// Inner product linear in the first argument: sum_i x_i * conj(y_i).
Complex vec_inner(std::span<const Complex> x, std::span<const Complex> y);
double vec_norm(std::span<const Complex> x);
CVector vec_add(std::span<const Complex> x, std::span<const Complex> y);
CVector vec_sub(std::span<const Complex> x, std::span<const Complex> y);
CVector vec_scale(Complex scalar, std::span<const Complex> x);
bool vec_is_finite(std::span<const Complex> x);

} // namespace randspec
