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


#include "cvanyon/anyons.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>

#include "cvanyon/kernels.h"

namespace cvanyon {

namespace {

std::string num(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

SiteKind site_kind_of(GeneratorKind kind) {
    return kind == GeneratorKind::star ? SiteKind::vertex : SiteKind::face;
}

bool touches(const LatticeSpec &spec, SiteKind kind, size_t edge, size_t site) {
    auto sites = spec.sites_of_edge(kind, edge);
    return std::find(sites.begin(), sites.end(), site) != sites.end();
}

size_t site_at(const LatticeSpec &spec, SiteKind kind, int x, int y) {
    auto s = kind == SiteKind::vertex ? spec.vertex_at(x, y) : spec.face_at(x, y);
    if (!s) {
        throw std::invalid_argument("site (" + std::to_string(x) + ", " + std::to_string(y) +
                                    ") lies outside the patch");
    }
    return *s;
}

// Edge crossed by a unit step (dx, dy) from the site at (x, y).
size_t step_edge(const LatticeSpec &spec, SiteKind kind, int x, int y, int dx, int dy) {
    std::optional<size_t> e;
    if (kind == SiteKind::vertex) {
        if (dx == 1) {
            e = spec.horizontal_edge(x, y);
        } else if (dx == -1) {
            e = spec.horizontal_edge(x - 1, y);
        } else if (dy == 1) {
            e = spec.vertical_edge(x, y);
        } else if (dy == -1) {
            e = spec.vertical_edge(x, y - 1);
        }
    } else {
        if (dx == 1) {
            e = spec.vertical_edge(x + 1, y);
        } else if (dx == -1) {
            e = spec.vertical_edge(x, y);
        } else if (dy == 1) {
            e = spec.horizontal_edge(x, y + 1);
        } else if (dy == -1) {
            e = spec.horizontal_edge(x, y);
        }
    }
    if (!e) {
        throw std::invalid_argument("step from (" + std::to_string(x) + ", " + std::to_string(y) +
                                    ") leaves the patch");
    }
    return *e;
}

int shortest(int d, int period, bool wrap) {
    if (!wrap) {
        return d;
    }
    d = ((d % period) + period) % period;
    if (2 * d > period) {
        d -= period;
    }
    return d;
}

// Closed ring of coordinates around the block, counterclockwise from the
// lower-left corner.
std::vector<std::pair<int, int>> ring_coords(AnyonKind moving, int x0, int y0, int w, int h) {
    if (w < 1 || h < 1) {
        throw std::invalid_argument("loop block must be at least 1 x 1");
    }
    int bx = moving == AnyonKind::m ? x0 - 1 : x0;
    int by = moving == AnyonKind::m ? y0 - 1 : y0;
    std::vector<std::pair<int, int>> out;
    for (int x = bx; x < bx + w; x++) {
        out.emplace_back(x, by);
    }
    for (int y = by; y < by + h; y++) {
        out.emplace_back(bx + w, y);
    }
    for (int x = bx + w; x > bx; x--) {
        out.emplace_back(x, by + h);
    }
    for (int y = by + h; y > by; y--) {
        out.emplace_back(bx, y);
    }
    out.emplace_back(bx, by);
    return out;
}

std::vector<size_t> ring_edges(const LatticeSpec &spec, SiteKind kind, const std::vector<std::pair<int, int>> &ring) {
    std::vector<size_t> edges;
    for (size_t k = 0; k + 1 < ring.size(); k++) {
        auto [x, y] = ring[k];
        edges.push_back(step_edge(spec, kind, x, y, ring[k + 1].first - x, ring[k + 1].second - y));
    }
    return edges;
}

// Sites visited by `path` from `start`; throws on a disconnected path.
std::vector<size_t> walk(const LatticeSpec &spec, SiteKind kind, size_t start, std::span<const size_t> path) {
    std::vector<size_t> sites{start};
    size_t cur = start;
    for (size_t k = 0; k < path.size(); k++) {
        if (path[k] >= spec.num_modes()) {
            throw std::invalid_argument("path step " + std::to_string(k) + ": no edge " + std::to_string(path[k]));
        }
        if (!touches(spec, kind, path[k], cur)) {
            throw std::invalid_argument("path step " + std::to_string(k) + ": edge " + std::to_string(path[k]) +
                                        " does not touch site " + std::to_string(cur));
        }
        cur = spec.across(kind, path[k], cur);
        sites.push_back(cur);
    }
    return sites;
}

cplx median_gauge(std::vector<cplx> v) {
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::vector<double> re, im;
    for (auto z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    std::nth_element(re.begin(), re.begin() + (mid - v.begin()), re.end());
    std::nth_element(im.begin(), im.begin() + (mid - v.begin()), im.end());
    return {re[static_cast<size_t>(mid - v.begin())], im[static_cast<size_t>(mid - v.begin())]};
}

}  // namespace

std::string to_string(AnyonKind kind) {
    return kind == AnyonKind::e ? "e" : "m";
}

std::string to_string(EngineMode mode) {
    switch (mode) {
        case EngineMode::symbolic:
            return "symbolic";
        case EngineMode::numeric:
            return "numeric";
        case EngineMode::both:
            return "both";
    }
    return "?";
}

EngineMode parse_engine(const std::string &text) {
    if (text == "symbolic") {
        return EngineMode::symbolic;
    }
    if (text == "numeric") {
        return EngineMode::numeric;
    }
    if (text == "both") {
        return EngineMode::both;
    }
    throw std::invalid_argument("unknown engine '" + text + "' (expected symbolic, numeric or both)");
}

int SymbolicTrace::max_degree() const {
    int d = 1;
    for (const auto &g : gates) {
        d = std::max(d, g.degree());
    }
    for (const auto &r : word.residue) {
        d = std::max(d, r.degree());
    }
    return d;
}

const SiteViolation &ViolationTable::at(GeneratorKind kind, size_t site) const {
    for (const auto &e : entries) {
        if (e.kind == kind && e.site == site) {
            return e;
        }
    }
    throw std::out_of_range("no generator at site " + std::to_string(site));
}

size_t ViolationTable::count_nonzero(double tolerance) const {
    return static_cast<size_t>(std::count_if(entries.begin(), entries.end(),
                                             [&](const SiteViolation &e) { return std::abs(e.raw) > tolerance; }));
}

// ---------------------------------------------------------------------------
// AnyonContext

AnyonContext::AnyonContext(LatticeSpec spec, SqueezingMap squeezing, EngineMode engine)
    : spec_(std::move(spec)), squeezing_(std::move(squeezing)), engine_(engine) {
    if (!spec_.bipartite()) {
        throw std::invalid_argument("anyon labels need a bipartite lattice (even torus or planar patch)");
    }
    base_finite_ = code_generators(spec_, squeezing_);
    base_ideal_ = code_generators(spec_, SqueezingMap{});
    if (engine_ != EngineMode::symbolic) {
        if (!squeezing_.all_finite(spec_.num_modes())) {
            throw std::invalid_argument("numeric engine needs finite squeezing on every mode");
        }
        numeric_ = prepare_code_state(spec_, squeezing_);
    }
    refresh_generators();
}

const GaussianGraphState &AnyonContext::numeric_state() const {
    if (!numeric_) {
        throw std::logic_error("numeric engine is not active");
    }
    return *numeric_;
}

const std::vector<StabilizerGen> &AnyonContext::generators() const {
    if (!cubic_modes_.empty()) {
        throw std::logic_error("stabilizers after a cubic gate are not linear nullifiers");
    }
    return finite_;
}

const std::vector<StabilizerGen> &AnyonContext::ideal_generators() const {
    if (!cubic_modes_.empty()) {
        throw std::logic_error("stabilizers after a cubic gate are not linear nullifiers");
    }
    return ideal_;
}

const AnyonRecord &AnyonContext::record(size_t id) const {
    auto it = records_.find(id);
    if (it == records_.end()) {
        throw std::invalid_argument("no anyon record " + std::to_string(id));
    }
    return it->second;
}

AnyonRecord &AnyonContext::record(size_t id) {
    auto it = records_.find(id);
    if (it == records_.end()) {
        throw std::invalid_argument("no anyon record " + std::to_string(id));
    }
    return it->second;
}

size_t AnyonContext::add_record(AnyonRecord r) {
    r.id = next_id_++;
    records_[r.id] = r;
    return r.id;
}

void AnyonContext::erase_record(size_t id) {
    record(id);
    records_.erase(id);
}

void AnyonContext::refresh_generators() {
    finite_ = base_finite_;
    ideal_ = base_ideal_;
    for (const auto &g : ground_gates_) {
        for (auto &s : finite_) {
            s.form = heisenberg_inverse(s.form, g);
        }
        for (auto &s : ideal_) {
            s.form = heisenberg_inverse(s.form, g);
        }
    }
}

void AnyonContext::numeric_displace(const WHWord &word) {
    for (const auto &[mode, zx] : word.modes) {
        if (zx.s.imag() != 0.0 || zx.t.imag() != 0.0) {
            throw std::invalid_argument("numeric engine needs real displacement amounts (mode " +
                                        std::to_string(mode) + ")");
        }
    }
    for (const auto &[mode, zx] : word.modes) {
        displace(*numeric_, mode, DisplacementKind::X, zx.s.real());
        displace(*numeric_, mode, DisplacementKind::Z, zx.t.real());
    }
    numeric_->log_scalar += word.log_scalar;
}

void AnyonContext::apply_displacement(const WHWord &word) {
    if (word.has_residue()) {
        throw std::invalid_argument("apply_displacement: word carries a residue");
    }
    for (const auto &[mode, zx] : word.modes) {
        if (mode >= spec_.num_modes()) {
            throw std::invalid_argument("no mode " + std::to_string(mode));
        }
    }
    if (numeric_) {
        numeric_displace(word);
    }
    trace_.word = compose(word, trace_.word);
}

void AnyonContext::apply_ground_gate(const GaussianGate &gate) {
    if (!cubic_modes_.empty()) {
        throw std::logic_error("cannot insert a ground-state gate below a cubic gate");
    }
    if (numeric_) {
        numeric_displace(inverse(trace_.word));
        cvanyon::apply_gate(*numeric_, gate);
        numeric_displace(trace_.word);
    }
    trace_.gates.insert(trace_.gates.begin(), generator_of(gate));
    ground_gates_.insert(ground_gates_.begin(), gate);
    refresh_generators();
}

void AnyonContext::apply_gate(const GaussianGate &gate) {
    if (!cubic_modes_.empty()) {
        throw std::logic_error("Gaussian gates after a cubic gate are not tracked");
    }
    // G w G^dag = exp(G L G^dag)
    trace_.word = from_exponent(heisenberg_inverse(exponent(trace_.word), gate));
    if (numeric_) {
        cvanyon::apply_gate(*numeric_, gate);
    }
    trace_.gates.push_back(generator_of(gate));
    ground_gates_.push_back(gate);
    refresh_generators();
}

CubicCommuted AnyonContext::apply_cubic(size_t mode, double gamma) {
    if (engine_ == EngineMode::numeric) {
        throw std::logic_error("cubic gates are symbolic only; the numeric engine cannot represent them");
    }
    if (mode >= spec_.num_modes()) {
        throw std::invalid_argument("no mode " + std::to_string(mode));
    }
    if (!std::isfinite(gamma)) {
        throw std::invalid_argument("cubic strength must be finite");
    }
    // V w V^dag = V(-gamma)^dag w V(-gamma)
    CubicCommuted c = commute_through_cubic(trace_.word, -gamma, mode);
    trace_.word = c.residual;
    trace_.word.log_scalar += c.log_scalar;
    trace_.gates.push_back(cubic_generator(mode, gamma));
    cubic_modes_.push_back(mode);
    numeric_.reset();
    return c;
}

bool AnyonContext::mode_has_cubic(size_t mode) const {
    if (std::find(cubic_modes_.begin(), cubic_modes_.end(), mode) != cubic_modes_.end()) {
        return true;
    }
    return std::any_of(trace_.word.residue.begin(), trace_.word.residue.end(),
                       [&](const GeneratorPoly &r) { return r.mode_degree(mode) > 0; });
}

Commuted AnyonContext::through_ground_gates(const WHWord &word) const {
    if (!cubic_modes_.empty()) {
        throw std::logic_error("cannot commute through a cubic gate here");
    }
    Commuted acc{word, {}, 0.0};
    // ground_gates_ is stored leftmost first.
    for (const auto &g : ground_gates_) {
        Commuted step = commute_through_quadratic(acc.residual, g);
        acc.residual = step.residual;
        acc.log_scalar += step.log_scalar;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Operations

std::vector<AnyonRecord> create_pair(AnyonContext &ctx, AnyonKind kind, size_t edge, cplx amount) {
    const LatticeSpec &spec = ctx.lattice();
    if (edge >= spec.num_modes()) {
        throw std::invalid_argument("create_pair: no edge " + std::to_string(edge));
    }
    if (ctx.mode_has_cubic(edge)) {
        throw std::logic_error("create_pair: mode " + std::to_string(edge) + " hosts an unresolved cubic residue");
    }
    ctx.apply_displacement(kind == AnyonKind::e ? WHWord::z(edge, amount) : WHWord::x(edge, amount));

    const SiteKind sk = site_kind(kind);
    auto sites = spec.sites_of_edge(sk, edge);
    std::stable_sort(sites.begin(), sites.end(),
                     [&](size_t a, size_t b) { return spec.parity(sk, a) > spec.parity(sk, b); });
    std::vector<AnyonRecord> out;
    for (size_t site : sites) {
        cplx raw = kind == AnyonKind::e ? amount : static_cast<double>(spec.face_sign(site, edge)) * amount;
        AnyonRecord r;
        r.kind = kind;
        r.site = site;
        r.label = static_cast<double>(spec.parity(sk, site)) * raw;
        r.creation_edge = edge;
        r.orientation = spec.edge(edge).orientation;
        r.id = ctx.add_record(r);
        out.push_back(r);
    }
    return out;
}

WHWord step_word(const LatticeSpec &spec, AnyonKind kind, size_t site, size_t edge, cplx label) {
    const SiteKind sk = site_kind(kind);
    if (!touches(spec, sk, edge, site)) {
        throw std::invalid_argument("edge " + std::to_string(edge) + " does not touch site " + std::to_string(site));
    }
    const double chi = spec.parity(sk, site);
    if (kind == AnyonKind::e) {
        return WHWord::z(edge, -chi * label);
    }
    return WHWord::x(edge, -chi * label / static_cast<double>(spec.face_sign(site, edge)));
}

ViolationTable detect(const AnyonContext &ctx, DetectEngine engine) {
    const auto &gens = ctx.generators();
    const auto &ideal = ctx.ideal_generators();
    std::vector<cplx> raw(gens.size()), raw_ideal(gens.size());
    if (engine == DetectEngine::symbolic) {
        const WHWord &w = ctx.trace().word;
        for (size_t k = 0; k < gens.size(); k++) {
            raw[k] = kI * conjugate_by_stabilizer(w, gens[k].form, 1.0);
            raw_ideal[k] = kI * conjugate_by_stabilizer(w, ideal[k].form, 1.0);
        }
    } else {
        const GaussianGraphState &state = ctx.numeric_state();
        std::vector<LinearForm> forms, ideal_forms;
        for (size_t k = 0; k < gens.size(); k++) {
            forms.push_back(gens[k].form);
            ideal_forms.push_back(ideal[k].form);
        }
        auto stats = nullifier_stats(state, forms);
        auto stats_ideal = nullifier_stats(state, ideal_forms);
        for (size_t k = 0; k < gens.size(); k++) {
            raw[k] = stats[k].expectation;
            raw_ideal[k] = stats_ideal[k].expectation;
        }
    }
    ViolationTable table;
    for (size_t k = 0; k < gens.size(); k++) {
        const double chi = ctx.lattice().parity(site_kind_of(gens[k].kind), gens[k].site);
        table.entries.push_back({gens[k].kind, gens[k].site, raw[k], chi * raw[k], chi * raw_ideal[k]});
    }
    return table;
}

double ledger_mismatch(const AnyonContext &ctx, const ViolationTable &table) {
    std::map<std::pair<int, size_t>, cplx> sums;
    for (const auto &[id, r] : ctx.records()) {
        sums[{static_cast<int>(site_kind(r.kind)), r.site}] += r.label;
    }
    double worst = 0.0;
    for (const auto &e : table.entries) {
        cplx expect{};
        auto it = sums.find({static_cast<int>(site_kind_of(e.kind)), e.site});
        if (it != sums.end()) {
            expect = it->second;
        }
        worst = std::max(worst, std::abs(expect - e.charge));
    }
    return worst;
}

AnyonRecord move(AnyonContext &ctx, size_t id, std::span<const size_t> path) {
    AnyonRecord rec = ctx.record(id);
    const LatticeSpec &spec = ctx.lattice();
    auto sites = walk(spec, site_kind(rec.kind), rec.site, path);
    for (size_t k = 0; k < path.size(); k++) {
        ctx.apply_displacement(step_word(spec, rec.kind, sites[k], path[k], rec.label));
    }
    rec.site = sites.back();
    ctx.record(id) = rec;
    return rec;
}

std::vector<size_t> staircase_path(const LatticeSpec &spec, SiteKind kind, size_t from, size_t to) {
    auto [x, y] = spec.coords(kind, from);
    auto [tx, ty] = spec.coords(kind, to);
    const bool torus = spec.boundary() == Boundary::toroidal;
    int dx = shortest(tx - x, spec.width(), torus);
    int dy = shortest(ty - y, spec.height(), torus);
    std::vector<size_t> path;
    while (dx != 0 || dy != 0) {
        const int sx = dx > 0 ? 1 : -1;
        const int sy = dy > 0 ? 1 : -1;
        std::optional<size_t> ex, ey;
        if (dx != 0) {
            ex = step_edge(spec, kind, x, y, sx, 0);
        }
        if (dy != 0) {
            ey = step_edge(spec, kind, x, y, 0, sy);
        }
        if (ex && (!ey || *ex < *ey)) {
            path.push_back(*ex);
            x += sx;
            dx -= sx;
        } else {
            path.push_back(*ey);
            y += sy;
            dy -= sy;
        }
    }
    return path;
}

std::vector<size_t> edges_along(const LatticeSpec &spec, SiteKind kind, std::span<const size_t> sites) {
    std::vector<size_t> edges;
    for (size_t k = 0; k + 1 < sites.size(); k++) {
        auto e = spec.edge_between(kind, sites[k], sites[k + 1]);
        if (!e) {
            throw std::invalid_argument("sites " + std::to_string(sites[k]) + " and " + std::to_string(sites[k + 1]) +
                                        " are not adjacent");
        }
        edges.push_back(*e);
    }
    return edges;
}

size_t ring_start(const LatticeSpec &spec, AnyonKind moving, int x0, int y0) {
    auto ring = ring_coords(moving, x0, y0, 1, 1);
    return site_at(spec, site_kind(moving), ring[0].first, ring[0].second);
}

std::vector<size_t> rectangle_loop(const LatticeSpec &spec, AnyonKind moving, int x0, int y0, int w, int h) {
    return ring_edges(spec, site_kind(moving), ring_coords(moving, x0, y0, w, h));
}

std::vector<size_t> unit_loop(const LatticeSpec &spec, AnyonKind moving, size_t start, size_t center) {
    const SiteKind sk = site_kind(moving);
    auto [cx, cy] = spec.coords(moving == AnyonKind::e ? SiteKind::face : SiteKind::vertex, center);
    auto ring = ring_coords(moving, cx, cy, 1, 1);
    ring.pop_back();
    for (size_t k = 0; k < ring.size(); k++) {
        if (site_at(spec, sk, ring[k].first, ring[k].second) == start) {
            std::rotate(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(k), ring.end());
            ring.push_back(ring.front());
            return ring_edges(spec, sk, ring);
        }
    }
    throw std::invalid_argument("site " + std::to_string(start) + " is not adjacent to site " + std::to_string(center));
}

AnyonRecord fuse(AnyonContext &ctx, size_t keep, size_t other) {
    if (keep == other) {
        throw std::invalid_argument("fuse: a record cannot fuse with itself");
    }
    const AnyonRecord a = ctx.record(keep);
    const AnyonRecord b = ctx.record(other);
    if (a.kind != b.kind) {
        throw std::invalid_argument("fuse: cannot fuse an e-anyon with an m-anyon");
    }
    auto path = staircase_path(ctx.lattice(), site_kind(a.kind), b.site, a.site);
    move(ctx, other, path);
    AnyonRecord &merged = ctx.record(keep);
    merged.label += b.label;
    ctx.erase_record(other);
    return merged;
}

BraidResult braid(AnyonContext &ctx, size_t id, std::span<const size_t> loop) {
    const LatticeSpec &spec = ctx.lattice();
    const AnyonRecord rec = ctx.record(id);
    auto sites = walk(spec, site_kind(rec.kind), rec.site, loop);
    if (sites.back() != rec.site) {
        throw std::invalid_argument("braid: the loop does not return to site " + std::to_string(rec.site));
    }
    const WHWord &before = ctx.trace().word;
    if (before.has_residue()) {
        throw std::logic_error("braid: the state carries a non-displacement residue");
    }

    std::vector<WHWord> steps;
    WHWord loop_word;
    for (size_t k = 0; k < loop.size(); k++) {
        steps.push_back(step_word(spec, rec.kind, sites[k], loop[k], rec.label));
        loop_word = compose(steps.back(), loop_word);
    }
    loop_word.prune();

    BraidResult out;
    // L w |g> = e^{c} w L |g>
    out.log_scalar = commutation_log(loop_word, before) + loop_word.log_scalar;

    // L = exp(A + R): A a combination of stabilizer exponents of the ground
    // state, R what finite squeezing leaves over.
    const LinearForm lambda = exponent(loop_word);
    const auto &gens = ctx.generators();
    const auto &ideal = ctx.ideal_generators();
    const size_t n = spec.num_modes();
    const Eigen::Index g = static_cast<Eigen::Index>(gens.size());
    Eigen::MatrixXcd basis(static_cast<Eigen::Index>(2 * n), g);
    for (Eigen::Index k = 0; k < g; k++) {
        basis.col(k) = -kI * kernels::to_dense(ideal[static_cast<size_t>(k)].form, n);
    }
    const Eigen::VectorXcd target = kernels::to_dense(lambda, n);
    Eigen::VectorXcd coeff = basis.completeOrthogonalDecomposition().solve(target);

    for (GeneratorKind kind : {GeneratorKind::star, GeneratorKind::plaquette}) {
        Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(g);
        std::vector<cplx> gauged;
        for (Eigen::Index k = 0; k < g; k++) {
            const auto &gen = gens[static_cast<size_t>(k)];
            if (gen.kind == kind) {
                chi(k) = spec.parity(site_kind_of(kind), gen.site);
                gauged.push_back(coeff(k) * chi(k));
            }
        }
        if (gauged.empty() || (basis * chi).norm() > 1e-9) {
            continue;
        }
        coeff -= median_gauge(gauged) * chi;
    }
    const double scale = std::max(1.0, target.norm());
    if ((basis * coeff - target).norm() > 1e-9 * scale) {
        throw std::invalid_argument("braid: the loop is not a product of code stabilizers (it wraps the torus or crosses a gate-deformed edge)");
    }

    LinearForm stab;
    for (Eigen::Index k = 0; k < g; k++) {
        cplx c = coeff(k);
        if (std::abs(c) <= 1e-12 * scale) {
            continue;
        }
        const auto &gen = gens[static_cast<size_t>(k)];
        out.enclosed_sites.emplace_back(gen.site, c);
        LinearForm term = gen.form;
        term *= -kI * c;
        stab += term;
        for (const auto &[rid, r] : ctx.records()) {
            if (rid != id && site_kind(r.kind) == site_kind_of(gen.kind) && r.site == gen.site) {
                out.enclosed.push_back(r);
            }
        }
    }
    LinearForm rest = lambda;
    rest -= stab;
    for (auto &[mode, c] : rest.terms) {
        if (std::abs(c.x) <= 1e-14 * scale) {
            c.x = 0.0;
        }
        if (std::abs(c.p) <= 1e-14 * scale) {
            c.p = 0.0;
        }
    }
    rest.prune();
    rest.offset = 0.0;
    // e^{A + R} = e^{R} e^{A} e^{[A, R] / 2}, and e^{A} fixes the ground state.
    out.log_scalar += commutator(stab, rest) / 2.0;
    WHWord leftover = from_exponent(rest);
    out.log_scalar += leftover.log_scalar;
    for (const auto &[mode, zx] : leftover.modes) {
        if (zx.t != 0.0) {
            out.residual_displacements.push_back({mode, FactorKind::Z, zx.t});
        }
        if (zx.s != 0.0) {
            out.residual_displacements.push_back({mode, FactorKind::X, zx.s});
        }
    }
    out.phase = std::exp(cplx{0.0, out.log_scalar.imag()});
    out.damping = -out.log_scalar.real();

    for (const auto &w : steps) {
        ctx.apply_displacement(w);
    }
    out.moved = ctx.record(id);
    return out;
}

cplx topological_factor(cplx s, double t, std::span<const double, 4> r) {
    double sum = 0.0;
    for (size_t j = 0; j < 4; j++) {
        sum += (j % 2 == 0 ? 1.0 : -1.0) * squeezing_damping(r[j]);
    }
    return kI * (s + kI * t * sum) * t;
}

void write_violation_csv(std::ostream &out, const ViolationTable &table) {
    out << "kind,site,re,im,label_re,label_im\n";
    for (const auto &e : table.entries) {
        out << (e.kind == GeneratorKind::star ? "star" : "plaquette") << ',' << e.site << ',' << num(e.raw.real())
            << ',' << num(e.raw.imag()) << ',' << num(e.label.real()) << ',' << num(e.label.imag()) << '\n';
    }
}

void write_braid_csv(std::ostream &out, const BraidResult &result) {
    out << "quantity,re,im\n";
    out << "phase," << num(result.phase.real()) << ',' << num(result.phase.imag()) << '\n';
    out << "damping," << num(result.damping) << ",0\n";
    out << "log_scalar," << num(result.log_scalar.real()) << ',' << num(result.log_scalar.imag()) << '\n';
    for (const auto &d : result.residual_displacements) {
        out << (d.kind == FactorKind::X ? "X[" : "Z[") << d.mode << "]," << num(d.amount.real()) << ','
            << num(d.amount.imag()) << '\n';
    }
}

}  // namespace cvanyon
