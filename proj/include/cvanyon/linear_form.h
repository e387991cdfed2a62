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

#ifndef CVANYON_LINEAR_FORM_H
#define CVANYON_LINEAR_FORM_H

#include <complex>
#include <cstddef>
#include <map>
#include <utility>

namespace cvanyon {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

enum class Quadrature { position, momentum };

struct QuadCoeffs {
    cplx x{};  // coefficient of the position quadrature
    cplx p{};  // coefficient of the momentum quadrature
};

/// Complex affine form  offset + sum_j (x_j-coeff * x_j + p_j-coeff * p_j).
///
/// Nullifiers, stabilizer exponents and displacement exponents are all of
/// this shape. Terms are keyed by mode index and kept sorted so printing and
/// iteration are deterministic.
struct LinearForm {
    cplx offset{};
    std::map<size_t, QuadCoeffs> terms;

    void add(size_t mode, cplx x_coeff, cplx p_coeff);
    QuadCoeffs coeffs(size_t mode) const;
    /// Drops terms whose coefficients are exactly zero.
    void prune();
    bool is_constant() const;

    LinearForm &operator+=(const LinearForm &other);
    LinearForm &operator-=(const LinearForm &other);
    LinearForm &operator*=(cplx factor);
};

LinearForm operator+(LinearForm a, const LinearForm &b);
LinearForm operator-(LinearForm a, const LinearForm &b);
LinearForm operator*(cplx factor, LinearForm a);

/// Canonical pairing  sum_j (x_a p_b - p_a x_b).  Zero iff the forms commute.
cplx symplectic_pairing(const LinearForm &a, const LinearForm &b);

/// [a, b] for linear forms; always a c-number since [x, p] = i.
inline cplx commutator(const LinearForm &a, const LinearForm &b) {
    return kI * symplectic_pairing(a, b);
}

}  // namespace cvanyon

#endif
