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

#include "cvanyon/wh_algebra.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvanyon {

WHWord WHWord::z(size_t mode, cplx t) {
    WHWord w;
    w.modes[mode] = ZXPair{t, 0.0};
    return w;
}

WHWord WHWord::x(size_t mode, cplx s) {
    WHWord w;
    w.modes[mode] = ZXPair{0.0, s};
    return w;
}

ZXPair WHWord::at(size_t mode) const {
    auto it = modes.find(mode);
    return it == modes.end() ? ZXPair{} : it->second;
}

bool WHWord::has_residue() const {
    for (const auto &r : residue) {
        if (!r.empty()) {
            return true;
        }
    }
    return false;
}

void WHWord::prune() {
    std::erase_if(modes, [](const auto &kv) { return kv.second.t == 0.0 && kv.second.s == 0.0; });
    std::erase_if(residue, [](const GeneratorPoly &p) { return p.empty(); });
}

WHWord compose(const WHWord &a, const WHWord &b) {
    if (a.has_residue()) {
        throw std::logic_error("compose: left word carries a non-displacement residue");
    }
    WHWord out = a;
    out.log_scalar += b.log_scalar;
    cplx swap{};
    for (const auto &[mode, pb] : b.modes) {
        auto it = out.modes.find(mode);
        if (it == out.modes.end()) {
            out.modes[mode] = pb;
            continue;
        }
        // X(s_a) Z(t_b) = e^{-i s_a t_b} Z(t_b) X(s_a)
        swap += it->second.s * pb.t;
        it->second.t += pb.t;
        it->second.s += pb.s;
    }
    out.log_scalar += -kI * swap;
    out.residue.insert(out.residue.end(), b.residue.begin(), b.residue.end());
    return out;
}

WHWord normal_order(std::span<const WHFactor> factors) {
    WHWord w;
    for (const auto &f : factors) {
        w = compose(w, f.kind == FactorKind::Z ? WHWord::z(f.mode, f.amount) : WHWord::x(f.mode, f.amount));
    }
    return w;
}

WHWord inverse(const WHWord &w) {
    if (w.has_residue()) {
        throw std::logic_error("inverse: word carries a non-displacement residue");
    }
    WHWord out;
    cplx st{};
    for (const auto &[mode, p] : w.modes) {
        out.modes[mode] = ZXPair{-p.t, -p.s};
        st += p.s * p.t;
    }
    // X(-s) Z(-t) = e^{-i s t} Z(-t) X(-s)
    out.log_scalar = -w.log_scalar - kI * st;
    return out;
}

cplx commutation_log(const WHWord &a, const WHWord &b) {
    cplx acc{};
    for (const auto &[mode, pa] : a.modes) {
        ZXPair pb = b.at(mode);
        acc += pa.s * pb.t - pb.s * pa.t;
    }
    return -kI * acc;
}

LinearForm exponent(const WHWord &w) {
    if (w.has_residue()) {
        throw std::logic_error("exponent: word carries a non-displacement residue");
    }
    LinearForm form;
    cplx st{};
    for (const auto &[mode, p] : w.modes) {
        form.add(mode, kI * p.t, -kI * p.s);
        st += p.s * p.t;
    }
    form.offset = w.log_scalar + kI * st / 2.0;
    return form;
}

WHWord from_exponent(const LinearForm &form) {
    WHWord w;
    cplx st{};
    for (const auto &[mode, c] : form.terms) {
        ZXPair p{-kI * c.x, kI * c.p};
        if (p.t == 0.0 && p.s == 0.0) {
            continue;
        }
        w.modes[mode] = p;
        st += p.s * p.t;
    }
    w.log_scalar = form.offset - kI * st / 2.0;
    return w;
}

cplx conjugate_by_stabilizer(const WHWord &word, const LinearForm &generator, double param) {
    if (word.has_residue()) {
        throw std::logic_error("conjugate_by_stabilizer: the commutant of a residue word is not a scalar");
    }
    // S w S^dag = exp([-i param g, L]) w with [g, L] = sum_j (g_x s_j + g_p t_j).
    cplx delta{};
    for (const auto &[mode, c] : generator.terms) {
        ZXPair p = word.at(mode);
        delta += c.x * p.s + c.p * p.t;
    }
    return -kI * param * delta;
}

Commuted commute_through_quadratic(const WHWord &word, const GaussianGate &gate) {
    LinearForm conj = heisenberg(exponent(word), gate);
    WHWord moved = from_exponent(conj);
    Commuted out;
    out.log_scalar = moved.log_scalar - word.log_scalar;
    moved.log_scalar = word.log_scalar;
    out.residual = std::move(moved);
    return out;
}

SolvableElement commutator(const SolvableElement &u, const SolvableElement &v) {
    // [x, p] = i, [p, x^2] = -2 i x
    SolvableElement out;
    out.c = kI * (u.a * v.b - u.b * v.a);
    out.a = 2.0 * kI * (u.q * v.b - u.b * v.q);
    return out;
}

namespace {

SolvableElement operator+(SolvableElement u, const SolvableElement &v) {
    u.c += v.c;
    u.a += v.a;
    u.b += v.b;
    u.q += v.q;
    return u;
}

SolvableElement operator-(SolvableElement u, const SolvableElement &v) {
    u.c -= v.c;
    u.a -= v.a;
    u.b -= v.b;
    u.q -= v.q;
    return u;
}

SolvableElement operator*(cplx k, SolvableElement u) {
    u.c *= k;
    u.a *= k;
    u.b *= k;
    u.q *= k;
    return u;
}

}  // namespace

SolvableElement bch(const SolvableElement &u, const SolvableElement &v) {
    SolvableElement uv = commutator(u, v);
    return u + v + 0.5 * uv + (1.0 / 12.0) * (commutator(u, uv) + commutator(v, commutator(v, u)));
}

CubicCommuted commute_through_cubic(const WHWord &word, double gamma, size_t mode) {
    for (const auto &r : word.residue) {
        if (r.mode_degree(mode) > 0) {
            throw std::invalid_argument("commute_through_cubic: word already carries a residue on the cubic mode");
        }
    }
    WHWord plain = word;
    plain.residue.clear();
    LinearForm lin = exponent(plain);

    // V^dag p V = p + 3 gamma x^2, so the exponent gains -i s 3 gamma x^2.
    const ZXPair zx = plain.at(mode);
    const cplx q = -3.0 * kI * gamma * zx.s;

    // Split exp(L + q x^2) = exp(L') exp(q x^2). The BCH correction of
    // (L, q x^2) depends only on the momentum coefficient, which L' shares
    // with L, so subtracting it once gives the exact split.
    const QuadCoeffs on_mode = lin.coeffs(mode);
    SolvableElement l{lin.offset, on_mode.x, on_mode.p, 0.0};
    SolvableElement y{0.0, 0.0, 0.0, q};
    SolvableElement correction = bch(l, y) - (l + y);
    SolvableElement l_split = l - correction;

    LinearForm split = lin;
    split.offset = l_split.c;
    if (on_mode.x != 0.0 || on_mode.p != 0.0 || l_split.a != 0.0) {
        split.terms[mode] = QuadCoeffs{l_split.a, l_split.b};
    }

    CubicCommuted out;
    WHWord moved = from_exponent(split);
    out.log_scalar = moved.log_scalar - word.log_scalar;
    moved.log_scalar = word.log_scalar;
    if (q != 0.0) {
        // exp(q x^2) = exp(i (-i q) x^2)
        out.poly.add(monomial({{mode, Quadrature::position}, {mode, Quadrature::position}}), -kI * q);
        moved.residue.push_back(out.poly);
    }
    moved.residue.insert(moved.residue.end(), word.residue.begin(), word.residue.end());
    out.residual = std::move(moved);
    out.linear_exponent = lin;
    out.x2_coefficient = q;
    return out;
}

namespace {

double wrap_phase(double d) {
    d = std::remainder(d, 2 * std::numbers::pi);
    return d;
}

bool near(cplx a, cplx b, double tol) {
    return std::abs(a - b) <= tol;
}

}  // namespace

bool equivalent(const WHWord &a, const WHWord &b, double tolerance) {
    cplx d = a.log_scalar - b.log_scalar;
    if (std::abs(d.real()) > tolerance || std::abs(wrap_phase(d.imag())) > tolerance) {
        return false;
    }
    WHWord pa = a;
    WHWord pb = b;
    pa.prune();
    pb.prune();
    if (pa.modes.size() != pb.modes.size() || pa.residue.size() != pb.residue.size()) {
        return false;
    }
    for (auto ia = pa.modes.begin(), ib = pb.modes.begin(); ia != pa.modes.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !near(ia->second.t, ib->second.t, tolerance) ||
            !near(ia->second.s, ib->second.s, tolerance)) {
            return false;
        }
    }
    for (size_t k = 0; k < pa.residue.size(); k++) {
        const auto &ra = pa.residue[k].terms;
        const auto &rb = pb.residue[k].terms;
        if (ra.size() != rb.size()) {
            return false;
        }
        for (auto ia = ra.begin(), ib = rb.begin(); ia != ra.end(); ++ia, ++ib) {
            if (ia->first != ib->first || !near(ia->second, ib->second, tolerance)) {
                return false;
            }
        }
    }
    return true;
}

std::string format_complex(cplx z) {
    char buf[64];
    auto num = [&](double v) {
        auto r = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, r.ptr);
    };
    if (z.imag() == 0.0) {
        return num(z.real());
    }
    std::string im = num(z.imag()) + "i";
    if (z.real() == 0.0) {
        return im;
    }
    return num(z.real()) + (z.imag() < 0 ? "" : "+") + im;
}

namespace {

double parse_real(std::string_view text, const std::string &full) {
    if (text == "inf" || text == "+inf") {
        return INFINITY;
    }
    if (text == "-inf") {
        return -INFINITY;
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double v = 0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || r.ec != std::errc() || r.ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad complex number '" + full + "'");
    }
    return v;
}

}  // namespace

cplx parse_complex(const std::string &text) {
    std::string_view s(text);
    if (s.empty()) {
        throw std::invalid_argument("empty complex number");
    }
    if (s.back() != 'i') {
        return {parse_real(s, text), 0.0};
    }
    s.remove_suffix(1);
    size_t split = std::string_view::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_of = [&](std::string_view im) -> double {
        if (im.empty() || im == "+") {
            return 1.0;
        }
        if (im == "-") {
            return -1.0;
        }
        return parse_real(im, text);
    };
    if (split == std::string_view::npos) {
        return {0.0, imag_of(s)};
    }
    return {parse_real(s.substr(0, split), text), imag_of(s.substr(split))};
}

std::string to_string(const WHWord &w) {
    std::string out = "exp(" + format_complex(w.log_scalar) + ")";
    bool first = true;
    for (const auto &[mode, p] : w.modes) {
        out += first ? " * " : " ";
        first = false;
        out += "Z[" + std::to_string(mode) + "](" + format_complex(p.t) + ") X[" + std::to_string(mode) + "](" +
               format_complex(p.s) + ")";
    }
    for (const auto &r : w.residue) {
        out += " * expi(" + to_string(r) + ")";
    }
    return out;
}

namespace {

class WordParser {
   public:
    explicit WordParser(const std::string &text) : text_(text) {}

    WHWord parse() {
        WHWord w;
        skip_space();
        if (peek_word("exp(")) {
            pos_ += 4;
            w.log_scalar = parse_complex(until(')'));
            expect(')');
        }
        std::vector<WHFactor> factors;
        while (true) {
            skip_space();
            if (at_end()) {
                break;
            }
            if (text_[pos_] == '*') {
                pos_++;
                continue;
            }
            if (peek_word("expi(")) {
                pos_ += 5;
                w.residue.push_back(parse_poly());
                continue;
            }
            char kind = text_[pos_];
            if (kind != 'Z' && kind != 'X') {
                fail("expected Z[..](..), X[..](..) or expi(..)");
            }
            pos_++;
            expect('[');
            size_t mode = parse_index();
            expect(']');
            expect('(');
            cplx amount = parse_complex(until(')'));
            expect(')');
            factors.push_back({kind == 'Z' ? FactorKind::Z : FactorKind::X, mode, amount});
        }
        WHWord ordered = normal_order(factors);
        ordered.log_scalar = w.log_scalar + ordered.log_scalar;
        ordered.residue = std::move(w.residue);
        return ordered;
    }

   private:
    GeneratorPoly parse_poly() {
        GeneratorPoly poly;
        skip_space();
        if (peek_word("0)")) {
            pos_ += 2;
            return poly;
        }
        while (true) {
            skip_space();
            expect('(');
            cplx c = parse_complex(until(')'));
            expect(')');
            Monomial m;
            while (!at_end() && text_[pos_] == '*') {
                pos_++;
                char q = at_end() ? '\0' : text_[pos_++];
                if (q != 'x' && q != 'p') {
                    fail("expected x[..] or p[..] in polynomial");
                }
                expect('[');
                size_t mode = parse_index();
                expect(']');
                m.push_back({mode, q == 'x' ? Quadrature::position : Quadrature::momentum});
            }
            poly.add(m, c);
            skip_space();
            if (!at_end() && text_[pos_] == '+') {
                pos_++;
                continue;
            }
            expect(')');
            return poly;
        }
    }

    size_t parse_index() {
        size_t v = 0;
        auto r = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (r.ec != std::errc()) {
            fail("expected a mode index");
        }
        pos_ = static_cast<size_t>(r.ptr - text_.data());
        return v;
    }

    std::string until(char c) {
        size_t end = text_.find(c, pos_);
        if (end == std::string::npos) {
            fail(std::string("missing '") + c + "'");
        }
        std::string out = text_.substr(pos_, end - pos_);
        pos_ = end;
        return out;
    }

    void expect(char c) {
        if (at_end() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        pos_++;
    }

    bool peek_word(const char *w) const {
        return text_.compare(pos_, std::char_traits<char>::length(w), w) == 0;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            pos_++;
        }
    }

    bool at_end() const { return pos_ >= text_.size(); }

    [[noreturn]] void fail(const std::string &msg) const {
        throw std::invalid_argument("word parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    const std::string &text_;
    size_t pos_ = 0;
};

}  // namespace

WHWord parse_word(const std::string &text) {
    return WordParser(text).parse();
}

}  // namespace cvanyon
