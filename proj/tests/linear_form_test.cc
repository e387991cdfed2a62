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

#include "gtest/gtest.h"

using namespace cvanyon;

TEST(linear_form, arithmetic) {
    LinearForm a;
    a.offset = 2.0;
    a.add(0, 1.0, 0.0);
    a.add(3, 0.0, kI);
    LinearForm b;
    b.add(0, 0.5, 2.0);

    LinearForm c = a + b;
    ASSERT_EQ(c.offset, cplx(2.0));
    ASSERT_EQ(c.coeffs(0).x, cplx(1.5));
    ASSERT_EQ(c.coeffs(0).p, cplx(2.0));
    ASSERT_EQ(c.coeffs(3).p, kI);
    ASSERT_EQ(c.coeffs(7).x, cplx(0.0));

    LinearForm d = c - b;
    d.prune();
    ASSERT_EQ(d.terms.size(), 2u);
    LinearForm z = a - a;
    z.prune();
    ASSERT_TRUE(z.is_constant());

    LinearForm e = cplx(2.0) * a;
    ASSERT_EQ(e.offset, cplx(4.0));
    ASSERT_EQ(e.coeffs(3).p, 2.0 * kI);
}

TEST(linear_form, pairing_is_canonical) {
    LinearForm x;
    x.add(1, 1.0, 0.0);
    LinearForm p;
    p.add(1, 0.0, 1.0);
    ASSERT_EQ(symplectic_pairing(x, p), cplx(1.0));
    ASSERT_EQ(symplectic_pairing(p, x), cplx(-1.0));
    ASSERT_EQ(commutator(x, p), kI);

    LinearForm other_mode;
    other_mode.add(2, 0.0, 1.0);
    ASSERT_EQ(symplectic_pairing(x, other_mode), cplx(0.0));
}

TEST(linear_form, pairing_is_antisymmetric_and_bilinear) {
    LinearForm a;
    LinearForm b;
    LinearForm c;
    for (size_t k = 0; k < 6; k++) {
        a.add(k, cplx(k + 1.0, 0.5), cplx(-1.0, k));
        b.add(k + 2, cplx(0.25 * k, 1.0), cplx(2.0, -0.5 * k));
        c.add(2 * k, cplx(1.0, 1.0), cplx(k, 0.0));
    }
    ASSERT_EQ(symplectic_pairing(a, b), -symplectic_pairing(b, a));
    cplx lhs = symplectic_pairing(a + c, b);
    cplx rhs = symplectic_pairing(a, b) + symplectic_pairing(c, b);
    ASSERT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
}
