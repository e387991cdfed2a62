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

#ifndef CVANYON_WH_ALGEBRA_H
#define CVANYON_WH_ALGEBRA_H

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cvanyon/clifford.h"
#include "cvanyon/generator_poly.h"
#include "cvanyon/linear_form.h"

namespace cvanyon {

/// Z(t) X(s) on one mode, in that order. Complex parameters are allowed.
struct ZXPair {
    cplx t{};
    cplx s{};

    bool operator==(const ZXPair &) const = default;
};

/// e^{log_scalar} prod_j Z_j(t_j) X_j(s_j) prod_k exp(i residue_k).
///
/// Modes appear in index order; within a mode Z precedes X. The scalar is
/// kept as a logarithm so large damping factors cannot overflow. Residues are
/// produced only by conjugation through a cubic gate.
struct WHWord {
    cplx log_scalar{};
    std::map<size_t, ZXPair> modes;
    std::vector<GeneratorPoly> residue;

    static WHWord identity() { return {}; }
    static WHWord z(size_t mode, cplx t);
    static WHWord x(size_t mode, cplx s);

    cplx scalar() const { return std::exp(log_scalar); }
    ZXPair at(size_t mode) const;
    bool has_residue() const;
    /// Drops modes with t = s = 0.
    void prune();
};

enum class FactorKind { Z, X };

/// One factor Z_mode(amount) or X_mode(amount) of an unordered product.
struct WHFactor {
    FactorKind kind;
    size_t mode;
    cplx amount;
};

/// Canonical form of the product factors[0] factors[1] ... (left to right).
WHWord normal_order(std::span<const WHFactor> factors);

/// Canonical form of the product a b. Throws if `a` carries a residue.
WHWord compose(const WHWord &a, const WHWord &b);

WHWord inverse(const WHWord &w);

/// c with a b = e^c b a.
cplx commutation_log(const WHWord &a, const WHWord &b);

/// The affine form L with w = exp(L) (residue-free words only).
/// exp(i t x - i s p) = e^{-i s t / 2} Z(t) X(s).
LinearForm exponent(const WHWord &w);
WHWord from_exponent(const LinearForm &form);

/// log c(param) with S(param) w = c(param) w S(param) for the stabilizer
/// S(param) = exp(-i param g). Throws std::logic_error if the word carries
/// a residue, since the commutant is then not a scalar.
cplx conjugate_by_stabilizer(const WHWord &word, const LinearForm &generator, double param);

/// G^dag w G = e^{log_scalar} residual exp(i poly), so that w G = G (that).
struct Commuted {
    WHWord residual;
    GeneratorPoly poly;
    cplx log_scalar{};
};

/// The residual keeps the incoming word's log_scalar; the ordering factor
/// produced by the conjugation is reported separately. Clifford gates map
/// displacement words to displacement words, so the polynomial is empty.
Commuted commute_through_quadratic(const WHWord &word, const GaussianGate &gate);

struct CubicCommuted : Commuted {
    /// The unsplit exponent T with V^dag w V = e^{T}: its linear part and
    /// the coefficient of x^2 on the cubic mode. `log_scalar` above is the
    /// BCH scalar relative to the incoming word.
    LinearForm linear_exponent;
    cplx x2_coefficient{};
};

/// V(gamma) = exp(i gamma x^3) on `mode`:
///   V^dag e^{l} Z(t) X(s) V = e^{l + 2 i gamma s^3} Z(t - 3 gamma s^2) X(s) exp(-3 i gamma s x^2).
/// Throws if the word already carries a residue on `mode`.
CubicCommuted commute_through_cubic(const WHWord &word, double gamma, size_t mode);

/// Element c + a x + b p + q x^2 of the solvable single-mode algebra.
struct SolvableElement {
    cplx c{};
    cplx a{};
    cplx b{};
    cplx q{};
};

SolvableElement commutator(const SolvableElement &u, const SolvableElement &v);
/// log(e^u e^v); the series terminates at third order in this algebra.
SolvableElement bch(const SolvableElement &u, const SolvableElement &v);

/// Compares fields with absolute tolerance; the scalar logarithms are
/// compared modulo 2 pi i.
bool equivalent(const WHWord &a, const WHWord &b, double tolerance = 0.0);

/// `exp(<c>) * Z[3](1.5) X[3](2) * expi(<poly>)`; parameters use the shortest
/// round-trip representation, so parse(print(w)) == w bit-exact.
std::string to_string(const WHWord &w);
WHWord parse_word(const std::string &text);
std::string format_complex(cplx z);
cplx parse_complex(const std::string &text);

}  // namespace cvanyon

#endif
