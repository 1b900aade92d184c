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

#include "randspec/prob.hpp"

#include <cmath>
#include <unordered_set>

#include "randspec/config.hpp"
#include "randspec/errors.hpp"

namespace randspec {

SampleSpace SampleSpace::uniform(std::size_t n) {
    SampleSpace s;
    s.atom_ids.reserve(n);
    s.weights.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        s.atom_ids.push_back("w" + std::to_string(i));
    }
    return s;
}

void SampleSpace::validate() const {
    if (atom_ids.empty()) {
        fail(ErrorCode::schema_error, "sample space has no atoms");
    }
    if (atom_ids.size() != weights.size()) {
        fail(ErrorCode::schema_error, "atom and weight counts differ");
    }
    std::unordered_set<std::string> seen;
    for (const std::string& id : atom_ids) {
        if (id.empty()) {
            fail(ErrorCode::schema_error, "empty atom id");
        }
        if (!seen.insert(id).second) {
            fail(ErrorCode::schema_error, "duplicate atom id '" + id + "'");
        }
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            fail(ErrorCode::schema_error, "weights must be finite and >= 0");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        fail(ErrorCode::schema_error,
             "weights sum to " + std::to_string(sum) + ", expected 1");
    }
}

SpacePtr make_space(SampleSpace space) {
    space.validate();
    return std::make_shared<const SampleSpace>(std::move(space));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    return a->atom_ids == b->atom_ids && a->weights == b->weights;
}

namespace {

void require_space(const SpacePtr& space) {
    if (!space) {
        fail(ErrorCode::invalid_parameter, "null sample space");
    }
}

void require_same(const SpacePtr& a, const SpacePtr& b, const char* op) {
    if (!same_space(a, b)) {
        fail(ErrorCode::space_mismatch,
             std::string(op) + ": operands live over different sample spaces");
    }
}

} // namespace

RandomVector::RandomVector(SpacePtr space, std::size_t dim)
    : space_(std::move(space)), dim_(dim) {
    require_space(space_);
    if (dim == 0) {
        fail(ErrorCode::invalid_parameter, "random vector dimension must be > 0");
    }
    values_.assign(space_->size(), CVector(dim, Complex{0.0, 0.0}));
}

RandomScalar::RandomScalar(SpacePtr space, Complex fill)
    : space_(std::move(space)) {
    require_space(space_);
    values_.assign(space_->size(), fill);
}

Complex l2_inner(const RandomVector& f, const RandomVector& g) {
    require_same(f.space(), g.space(), "l2_inner");
    if (f.dim() != g.dim()) {
        fail(ErrorCode::dimension_mismatch, "l2_inner: fibre dimensions differ");
    }
    Complex acc{0.0, 0.0};
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        acc += f.space()->weights[a] * vec_inner(f.at(a), g.at(a));
    }
    return acc;
}

double l2_norm(const RandomVector& f) {
    double acc = 0.0;
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        const double n = vec_norm(f.at(a));
        acc += f.space()->weights[a] * n * n;
    }
    return std::sqrt(acc);
}

double lp_seminorm(const RandomScalar& f, int p) {
    if (p != 0 && p != 2) {
        fail(ErrorCode::invalid_parameter, "lp_seminorm supports p = 0 and p = 2");
    }
    double acc = 0.0;
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        const double w = f.space()->weights[a];
        const double mag = std::abs(f.at(a));
        acc += (p == 0) ? w * std::min(1.0, mag) : w * mag * mag;
    }
    return (p == 0) ? acc : std::sqrt(acc);
}

bool ae_equal(const RandomVector& f, const RandomVector& g, double tol) {
    require_same(f.space(), g.space(), "ae_equal");
    if (f.dim() != g.dim()) {
        fail(ErrorCode::dimension_mismatch, "ae_equal: fibre dimensions differ");
    }
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        if (f.space()->weights[a] <= 0.0) {
            continue;
        }
        if (vec_norm(vec_sub(f.at(a), g.at(a))) > tol) {
            return false;
        }
    }
    return true;
}

CVector expectation(const RandomVector& f) {
    CVector out(f.dim(), Complex{0.0, 0.0});
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        const double w = f.space()->weights[a];
        if (w == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < f.dim(); ++i) {
            out[i] += w * f.at(a)[i];
        }
    }
    return out;
}

RandomVector embed(std::span<const Complex> x, SpacePtr space) {
    RandomVector out(std::move(space), x.size());
    for (std::size_t a = 0; a < out.atoms(); ++a) {
        out.at(a).assign(x.begin(), x.end());
    }
    return out;
}

RandomVector multiply(const RandomScalar& phi, const RandomVector& f) {
    require_same(phi.space(), f.space(), "multiply");
    RandomVector out(f.space(), f.dim());
    for (std::size_t a = 0; a < f.atoms(); ++a) {
        out.at(a) = vec_scale(phi.at(a), f.at(a));
    }
    return out;
}

} // namespace randspec
