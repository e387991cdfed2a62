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

#include "cvanyon/clifford.h"

#include <numbers>

namespace cvanyon {

LinearForm heisenberg(const LinearForm &form, const GaussianGate &gate) {
    LinearForm out = form;
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SqueezeGate>) {
                // p -> p + eta x
                auto c = form.coeffs(g.mode);
                if (c.p != 0.0) {
                    out.add(g.mode, g.eta * c.p, 0.0);
                }
            } else if constexpr (std::is_same_v<T, FourierGate>) {
                // x -> -p, p -> x
                auto c = form.coeffs(g.mode);
                if (c.x != 0.0 || c.p != 0.0) {
                    out.terms[g.mode] = QuadCoeffs{c.p, -c.x};
                }
            } else {
                // p_a -> p_a + x_b, p_b -> p_b + x_a
                auto ca = form.coeffs(g.a);
                auto cb = form.coeffs(g.b);
                if (ca.p != 0.0) {
                    out.add(g.b, ca.p, 0.0);
                }
                if (cb.p != 0.0) {
                    out.add(g.a, cb.p, 0.0);
                }
            }
        },
        gate);
    return out;
}

LinearForm heisenberg_inverse(const LinearForm &form, const GaussianGate &gate) {
    return std::visit(
        [&](const auto &g) -> LinearForm {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SqueezeGate>) {
                return heisenberg(form, SqueezeGate{g.mode, -g.eta});
            } else if constexpr (std::is_same_v<T, FourierGate>) {
                return heisenberg(heisenberg(heisenberg(form, g), g), g);
            } else {
                // p_a -> p_a - x_b, p_b -> p_b - x_a
                LinearForm out = form;
                auto ca = form.coeffs(g.a);
                auto cb = form.coeffs(g.b);
                if (ca.p != 0.0) {
                    out.add(g.b, -ca.p, 0.0);
                }
                if (cb.p != 0.0) {
                    out.add(g.a, -cb.p, 0.0);
                }
                return out;
            }
        },
        gate);
}

GeneratorPoly generator_of(const GaussianGate &gate) {
    GeneratorPoly poly;
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            const auto x = Quadrature::position;
            const auto p = Quadrature::momentum;
            if constexpr (std::is_same_v<T, SqueezeGate>) {
                poly.add(monomial({{g.mode, x}, {g.mode, x}}), g.eta / 2);
            } else if constexpr (std::is_same_v<T, FourierGate>) {
                poly.add(monomial({{g.mode, x}, {g.mode, x}}), std::numbers::pi / 4);
                poly.add(monomial({{g.mode, p}, {g.mode, p}}), std::numbers::pi / 4);
            } else {
                poly.add(monomial({{g.a, x}, {g.b, x}}), 1.0);
            }
        },
        gate);
    return poly;
}

GeneratorPoly cubic_generator(size_t mode, double gamma) {
    GeneratorPoly poly;
    const auto x = Quadrature::position;
    poly.add(monomial({{mode, x}, {mode, x}, {mode, x}}), gamma);
    return poly;
}

std::string to_string(const GaussianGate &gate) {
    return std::visit(
        [](const auto &g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SqueezeGate>) {
                return "P(" + std::to_string(g.eta) + ")[" + std::to_string(g.mode) + "]";
            } else if constexpr (std::is_same_v<T, FourierGate>) {
                return "F[" + std::to_string(g.mode) + "]";
            } else {
                return "CZ[" + std::to_string(g.a) + "," + std::to_string(g.b) + "]";
            }
        },
        gate);
}

}  // namespace cvanyon
