// Copyright 2026 The CVAnyon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVANYON_GENERATOR_POLY_H
#define CVANYON_GENERATOR_POLY_H

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cvanyon/linear_form.h"

namespace cvanyon {

struct PhaseVar {
    size_t mode;
    Quadrature quadrature;

    auto operator<=>(const PhaseVar &) const = default;
};

/// Sorted list of phase-space variables, read as their Weyl-symmetrized
/// product. Symmetrized products of Hermitian operators are Hermitian, so a
/// polynomial with real coefficients is Hermitian.
using Monomial = std::vector<PhaseVar>;

Monomial monomial(std::initializer_list<PhaseVar> vars);

/// Polynomial of degree <= 3 in the quadratures, standing for exp(i poly).
struct GeneratorPoly {
    std::map<Monomial, cplx> terms;

    void add(Monomial m, cplx coeff);
    void prune(double tolerance = 0.0);
    cplx coeff(const Monomial &m) const;
    bool empty() const { return terms.empty(); }
    int degree() const;
    /// Highest degree carried by any single mode.
    int mode_degree(size_t mode) const;
    bool is_hermitian(double tolerance = 0.0) const;
    /// Throws if the degree exceeds 3 or two different modes reach degree 2.
    void validate() const;

    GeneratorPoly &operator+=(const GeneratorPoly &other);
    bool operator==(const GeneratorPoly &other) const = default;
};

/// `0.5*x[3]*x[3] + -1*p[2]`; `0` for the empty polynomial.
std::string to_string(const GeneratorPoly &poly);

}  // namespace cvanyon

#endif
