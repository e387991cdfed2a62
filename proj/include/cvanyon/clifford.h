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

#ifndef CVANYON_CLIFFORD_H
#define CVANYON_CLIFFORD_H

#include <string>
#include <variant>

#include "cvanyon/generator_poly.h"
#include "cvanyon/linear_form.h"

namespace cvanyon {

/// P(eta) = exp(i eta x^2 / 2).
struct SqueezeGate {
    size_t mode;
    double eta;
};

/// F = exp(i pi/4 (x^2 + p^2)); F^dag x F = -p, F^dag p F = x.
struct FourierGate {
    size_t mode;
};

/// C_Z = exp(i x_a x_b).
struct ControlledZGate {
    size_t a;
    size_t b;
};

using GaussianGate = std::variant<SqueezeGate, FourierGate, ControlledZGate>;

/// G^dag L G for a linear form L, using the Heisenberg action of the gate on
/// each quadrature. The offset is untouched.
LinearForm heisenberg(const LinearForm &form, const GaussianGate &gate);

/// G L G^dag, the action of the inverse gate.
LinearForm heisenberg_inverse(const LinearForm &form, const GaussianGate &gate);

/// The Hermitian polynomial h with G = exp(i h).
GeneratorPoly generator_of(const GaussianGate &gate);

/// V(gamma) = exp(i gamma x^3) as a polynomial.
GeneratorPoly cubic_generator(size_t mode, double gamma);

std::string to_string(const GaussianGate &gate);

}  // namespace cvanyon

#endif
