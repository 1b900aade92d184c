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

#include <functional>

#include "randspec/config.hpp"
#include "randspec/prob.hpp"

namespace randspec {

/// Field of operators C^dim_in -> C^dim_out over a sample space: one matrix
/// per atom, acting fibrewise. Matrices on zero-weight atoms are carried but
/// never constrain any almost-everywhere property.
class OperatorField {
  public:
    OperatorField() = default;
    OperatorField(SpacePtr space, std::size_t dim_in, std::size_t dim_out);

    static OperatorField identity_field(SpacePtr space, std::size_t dim);
    static OperatorField constant(SpacePtr space, const ComplexMatrix& m);

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t dim_in() const noexcept { return dim_in_; }
    std::size_t dim_out() const noexcept { return dim_out_; }
    std::size_t atoms() const noexcept { return matrices_.size(); }

    ComplexMatrix& at(std::size_t atom) { return matrices_[atom]; }
    const ComplexMatrix& at(std::size_t atom) const { return matrices_[atom]; }

  private:
    SpacePtr space_;
    std::size_t dim_in_ = 0;
    std::size_t dim_out_ = 0;
    std::vector<ComplexMatrix> matrices_;
};

/// Integrability classes of the atom-wise operator norm r(atom), paired with
/// the topology in which plain vectors embed continuously:
///   p = 0 pairs with q = 0 (convergence in probability on both sides);
///   p = 2 pairs with q = infinity (mean-square norm against the sup norm).
enum class OperatorOrder {
    measure_topology, // p = 0
    mean_square,      // p = 2
};

struct FieldClassification {
    RandomScalar atom_norms;  // r(atom) = op_norm of the matrix at atom
    double mean_square = 0.0; // E[r^2]
    double hs_norm_sq = 0.0;  // E[ ||a(atom)||_HS^2 ]
    double ess_sup = 0.0;     // max of r over positive-weight atoms
    bool measurable_class = false;    // r in L^0
    bool mean_square_class = false;   // r in L^2
    bool hilbert_schmidt = false;     // HS norm finite
};

struct FieldPredicates {
    bool selfadjoint = false;
    bool normal = false;
    bool unitary = false;
    bool projection = false;
    bool pure_contraction = false; // op_norm < 1 strictly, atom-wise
};

enum class ProjCombine {
    product,           // pq, requires pq = qp
    sum,               // p + q, requires pq = 0
    complement,        // 1 - p
    sum_minus_product, // p + q - pq, requires pq = qp
    difference,        // p - q, requires pq = q
};

/// Fibrewise application to a plain vector: atom -> a(atom) x.
RandomVector apply(const OperatorField& a, std::span<const Complex> x);

/// Fibrewise application to a random vector: atom -> a(atom) f(atom).
RandomVector extend_apply(const OperatorField& a, const RandomVector& f);

/// Atom-wise conjugate transpose; the random adjoint. Satisfies
/// <(a f)(atom), y> = <f(atom), (adjoint(a) y)(atom)> for every atom.
OperatorField adjoint(const OperatorField& a);

/// Fibrewise product (b a)(atom) = b(atom) a(atom).
OperatorField compose(const OperatorField& b, const OperatorField& a);

FieldClassification classify(const OperatorField& a);

/// Checks that `map` commutes with the module action on every probe:
/// map(phi f) = phi map(f). Fibrewise operators pass; a genuine
/// counterexample needs a non-fibrewise map, constructible only in tests.
bool check_intertwine(const std::function<RandomVector(const RandomVector&)>& map,
                      const RandomScalar& phi,
                      const std::vector<RandomVector>& probes, double tol);

/// Convenience overload for fields, using extend_apply as the map.
bool check_intertwine(const OperatorField& a, const RandomScalar& phi,
                      const std::vector<RandomVector>& probes, double tol);

/// Algebra of random projections. Hypotheses are verified atom-wise on
/// positive-weight atoms; a violation reports the atom and residual.
OperatorField proj_combine(const OperatorField& p, const OperatorField& q,
                           ProjCombine mode, double tol);

/// Quadratic-form order: true iff q - p is PSD within tol on every
/// positive-weight atom. Both fields must be projections within tol.
bool proj_leq(const OperatorField& p, const OperatorField& q, double tol);

FieldPredicates predicates(const OperatorField& a, double tol = 1e-9);

/// Max over positive-weight atoms of op_norm(a(atom) - b(atom)).
double field_distance(const OperatorField& a, const OperatorField& b);

} // namespace randspec
