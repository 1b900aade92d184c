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

#include <memory>
#include <string>

#include "randspec/matrix.hpp"

namespace randspec {

/// Finite atomic probability space. Atoms may carry zero weight; they are the
/// mechanism by which "almost everywhere" differs from "everywhere".
struct SampleSpace {
    std::vector<std::string> atom_ids;
    std::vector<double> weights;

    std::size_t size() const noexcept { return atom_ids.size(); }

    /// Uniform space with atoms w0..w{n-1}.
    static SampleSpace uniform(std::size_t n);

    /// Throws schema_error on empty space, duplicate ids, negative weights,
    /// or weights that do not sum to one within 1e-12.
    void validate() const;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

SpacePtr make_space(SampleSpace space);
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Element of L^2(p; C^dim): one C^dim value per atom.
class RandomVector {
  public:
    RandomVector() = default;
    RandomVector(SpacePtr space, std::size_t dim);

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t atoms() const noexcept { return values_.size(); }

    CVector& at(std::size_t atom) { return values_[atom]; }
    const CVector& at(std::size_t atom) const { return values_[atom]; }

  private:
    SpacePtr space_;
    std::size_t dim_ = 0;
    std::vector<CVector> values_;
};

/// Element of L^0(p; C): one scalar per atom.
class RandomScalar {
  public:
    RandomScalar() = default;
    RandomScalar(SpacePtr space, Complex fill = Complex{0.0, 0.0});

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t atoms() const noexcept { return values_.size(); }

    Complex& at(std::size_t atom) { return values_[atom]; }
    Complex at(std::size_t atom) const { return values_[atom]; }

  private:
    SpacePtr space_;
    CVector values_;
};

/// L^2 inner product: sum_atoms weight * <f(atom), g(atom)>.
Complex l2_inner(const RandomVector& f, const RandomVector& g);

double l2_norm(const RandomVector& f);

/// Seminorm of the scalar field |f|. p = 2 gives the L^2 norm; p = 0 gives
/// the bounded metric functional sum_atoms weight * min(1, |f(atom)|) that
/// metrizes convergence in probability.
double lp_seminorm(const RandomScalar& f, int p);

/// Equality off a null set: ||f(atom) - g(atom)|| <= tol on every atom of
/// positive weight.
bool ae_equal(const RandomVector& f, const RandomVector& g, double tol);

/// Expectation sum_atoms weight * f(atom); the classical adjoint of the
/// constant embedding.
CVector expectation(const RandomVector& f);

/// Constant embedding of x as an atom-wise constant random vector.
RandomVector embed(std::span<const Complex> x, SpacePtr space);

/// Pointwise module action (phi * f)(atom) = phi(atom) * f(atom).
RandomVector multiply(const RandomScalar& phi, const RandomVector& f);

} // namespace randspec
