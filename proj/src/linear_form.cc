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

#include "cvanyon/linear_form.h"

namespace cvanyon {

void LinearForm::add(size_t mode, cplx x_coeff, cplx p_coeff) {
    auto &c = terms[mode];
    c.x += x_coeff;
    c.p += p_coeff;
}

QuadCoeffs LinearForm::coeffs(size_t mode) const {
    auto it = terms.find(mode);
    return it == terms.end() ? QuadCoeffs{} : it->second;
}

void LinearForm::prune() {
    std::erase_if(terms, [](const auto &kv) { return kv.second.x == 0.0 && kv.second.p == 0.0; });
}

bool LinearForm::is_constant() const {
    for (const auto &[mode, c] : terms) {
        if (c.x != 0.0 || c.p != 0.0) {
            return false;
        }
    }
    return true;
}

LinearForm &LinearForm::operator+=(const LinearForm &other) {
    offset += other.offset;
    for (const auto &[mode, c] : other.terms) {
        add(mode, c.x, c.p);
    }
    return *this;
}

LinearForm &LinearForm::operator-=(const LinearForm &other) {
    offset -= other.offset;
    for (const auto &[mode, c] : other.terms) {
        add(mode, -c.x, -c.p);
    }
    return *this;
}

LinearForm &LinearForm::operator*=(cplx factor) {
    offset *= factor;
    for (auto &[mode, c] : terms) {
        c.x *= factor;
        c.p *= factor;
    }
    return *this;
}

LinearForm operator+(LinearForm a, const LinearForm &b) {
    a += b;
    return a;
}

LinearForm operator-(LinearForm a, const LinearForm &b) {
    a -= b;
    return a;
}

LinearForm operator*(cplx factor, LinearForm a) {
    a *= factor;
    return a;
}

cplx symplectic_pairing(const LinearForm &a, const LinearForm &b) {
    cplx total{};
    // Walk the smaller map and probe the larger one.
    const auto &small = a.terms.size() <= b.terms.size() ? a.terms : b.terms;
    const bool a_is_small = &small == &a.terms;
    const auto &large = a_is_small ? b.terms : a.terms;
    for (const auto &[mode, cs] : small) {
        auto it = large.find(mode);
        if (it == large.end()) {
            continue;
        }
        const auto &ca = a_is_small ? cs : it->second;
        const auto &cb = a_is_small ? it->second : cs;
        total += ca.x * cb.p - ca.p * cb.x;
    }
    return total;
}

}  // namespace cvanyon
