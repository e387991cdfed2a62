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

#include "cvanyon/generator_poly.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

namespace cvanyon {

Monomial monomial(std::initializer_list<PhaseVar> vars) {
    Monomial m(vars);
    std::sort(m.begin(), m.end());
    return m;
}

void GeneratorPoly::add(Monomial m, cplx c) {
    std::sort(m.begin(), m.end());
    terms[m] += c;
}

void GeneratorPoly::prune(double tolerance) {
    std::erase_if(terms, [&](const auto &kv) { return std::abs(kv.second) <= tolerance; });
}

cplx GeneratorPoly::coeff(const Monomial &m) const {
    Monomial sorted = m;
    std::sort(sorted.begin(), sorted.end());
    auto it = terms.find(sorted);
    return it == terms.end() ? cplx{} : it->second;
}

int GeneratorPoly::degree() const {
    int d = 0;
    for (const auto &[m, c] : terms) {
        if (c != 0.0) {
            d = std::max(d, static_cast<int>(m.size()));
        }
    }
    return d;
}

int GeneratorPoly::mode_degree(size_t mode) const {
    int d = 0;
    for (const auto &[m, c] : terms) {
        if (c == 0.0) {
            continue;
        }
        int k = static_cast<int>(std::count_if(m.begin(), m.end(), [&](const PhaseVar &v) { return v.mode == mode; }));
        d = std::max(d, k);
    }
    return d;
}

bool GeneratorPoly::is_hermitian(double tolerance) const {
    return std::all_of(terms.begin(), terms.end(), [&](const auto &kv) {
        return std::abs(kv.second.imag()) <= tolerance;
    });
}

void GeneratorPoly::validate() const {
    if (degree() > 3) {
        throw std::invalid_argument("generator polynomial exceeds degree 3");
    }
    std::set<size_t> heavy;
    for (const auto &[m, c] : terms) {
        for (const auto &v : m) {
            if (mode_degree(v.mode) >= 2) {
                heavy.insert(v.mode);
            }
        }
    }
    if (heavy.size() > 1) {
        throw std::invalid_argument("generator polynomial has degree >= 2 on more than one mode");
    }
}

GeneratorPoly &GeneratorPoly::operator+=(const GeneratorPoly &other) {
    for (const auto &[m, c] : other.terms) {
        terms[m] += c;
    }
    return *this;
}

std::string to_string(const GeneratorPoly &poly) {
    if (poly.terms.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[m, c] : poly.terms) {
        if (!out.empty()) {
            out += " + ";
        }
        char buf[64];
        auto r = std::to_chars(buf, buf + sizeof(buf), c.real());
        out += "(" + std::string(buf, r.ptr);
        if (c.imag() != 0.0) {
            r = std::to_chars(buf, buf + sizeof(buf), c.imag());
            out += (c.imag() >= 0 ? "+" : "") + std::string(buf, r.ptr) + "i";
        }
        out += ")";
        for (const auto &v : m) {
            out += std::string("*") + (v.quadrature == Quadrature::position ? "x[" : "p[") +
                   std::to_string(v.mode) + "]";
        }
    }
    return out;
}

}  // namespace cvanyon
