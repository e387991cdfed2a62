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


#include "cvanyon/gates.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cvanyon {

namespace {

CovarianceMoments coherent_moments(double x, double p) {
    CovarianceMoments m;
    m.sigma = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    m.mean = Eigen::VectorXd(2);
    m.mean << x, p;
    return m;
}

void sync_means(LogicalRegister &reg) {
    if (reg.basis == Quadrature::position) {
        reg.moments.mean << reg.value.real(), 0.0;
    } else {
        reg.moments.mean << 0.0, reg.value.real();
    }
}

std::set<size_t> occupied(const AnyonContext &ctx, AnyonKind kind) {
    std::set<size_t> out;
    for (const auto &[id, r] : ctx.records()) {
        if (r.kind == kind) {
            out.insert(r.site);
        }
    }
    return out;
}

// Label a record at `site` gets from a unit creation amount on `edge`.
double unit_label(const LatticeSpec &spec, AnyonKind kind, size_t edge, size_t site) {
    const SiteKind sk = site_kind(kind);
    double raw = kind == AnyonKind::e ? 1.0 : static_cast<double>(spec.face_sign(site, edge));
    return spec.parity(sk, site) * raw;
}

size_t record_at(const std::vector<AnyonRecord> &recs, size_t site) {
    for (const auto &r : recs) {
        if (r.site == site) {
            return r.id;
        }
    }
    throw std::logic_error("pair creation did not produce a record at site " + std::to_string(site));
}

void refresh_value(const AnyonContext &ctx, LogicalRegister &reg) {
    reg.value = ctx.record(reg.primary).label;
    sync_means(reg);
}

}  // namespace

std::string to_string(EncodingKind kind) {
    return kind == EncodingKind::vertex ? "VERTEX" : "FACE";
}

EncodingKind parse_encoding(const std::string &text) {
    if (text == "VERTEX" || text == "vertex") {
        return EncodingKind::vertex;
    }
    if (text == "FACE" || text == "face") {
        return EncodingKind::face;
    }
    throw std::invalid_argument("unknown encoding '" + text + "' (expected VERTEX or FACE)");
}

LogicalRegister encode(AnyonContext &ctx, const std::string &name, cplx value, EncodingKind kind, size_t edge) {
    const LatticeSpec &spec = ctx.lattice();
    const AnyonKind ak = anyon_kind(kind);
    if (edge >= spec.num_modes()) {
        throw std::invalid_argument("encode " + name + ": no edge " + std::to_string(edge));
    }
    auto sites = spec.sites_of_edge(site_kind(ak), edge);
    if (sites.size() != 2) {
        throw std::invalid_argument("encode " + name + ": edge " + std::to_string(edge) +
                                    " has only one adjacent site");
    }
    auto busy = occupied(ctx, ak);
    for (size_t s : sites) {
        if (busy.count(s)) {
            throw std::invalid_argument("encode " + name + ": site " + std::to_string(s) + " is occupied");
        }
    }
    const double u = unit_label(spec, ak, edge, sites[0]);
    auto recs = create_pair(ctx, ak, edge, value / u);

    LogicalRegister reg;
    reg.name = name;
    reg.kind = kind;
    reg.edge = edge;
    reg.sites = {sites[0], sites[1]};
    reg.primary = record_at(recs, sites[0]);
    reg.partner = record_at(recs, sites[1]);
    reg.moments = coherent_moments(0.0, 0.0);
    refresh_value(ctx, reg);
    return reg;
}

size_t allocate_edge(const AnyonContext &ctx, EncodingKind kind) {
    const LatticeSpec &spec = ctx.lattice();
    const AnyonKind ak = anyon_kind(kind);
    const SiteKind sk = site_kind(ak);
    auto busy = occupied(ctx, ak);
    auto crowded = [&](size_t site) {
        if (busy.count(site)) {
            return true;
        }
        for (size_t e : spec.edges_of_site(sk, site)) {
            for (size_t other : spec.sites_of_edge(sk, e)) {
                if (other != site && busy.count(other)) {
                    return true;
                }
            }
        }
        return false;
    };
    std::optional<size_t> fallback;
    for (const auto &e : spec.edges()) {
        if (e.orientation != Orientation::horizontal) {
            continue;
        }
        auto sites = spec.sites_of_edge(sk, e.index);
        if (sites.size() != 2 || busy.count(sites[0]) || busy.count(sites[1])) {
            continue;
        }
        if (!crowded(sites[0]) && !crowded(sites[1])) {
            return e.index;
        }
        if (!fallback) {
            fallback = e.index;
        }
    }
    if (!fallback) {
        throw std::invalid_argument("no free site pair left for a " + to_string(kind) + " register");
    }
    return *fallback;
}

void gate_displace(AnyonContext &ctx, LogicalRegister &reg, cplx s) {
    const LatticeSpec &spec = ctx.lattice();
    const AnyonKind ak = anyon_kind(reg.kind);
    const size_t primary_site = ctx.record(reg.primary).site;
    auto recs = create_pair(ctx, ak, reg.edge, s / unit_label(spec, ak, reg.edge, primary_site));
    size_t with_primary = record_at(recs, primary_site);
    size_t other = recs[0].id == with_primary ? recs.back().id : recs[0].id;
    fuse(ctx, reg.primary, with_primary);
    if (reg.partner) {
        fuse(ctx, *reg.partner, other);
    } else {
        reg.spectators.push_back(other);
    }
    refresh_value(ctx, reg);
}

void gate_sum(AnyonContext &ctx, LogicalRegister &control, LogicalRegister &target) {
    if (control.kind != target.kind) {
        throw std::invalid_argument("SUM " + control.name + " " + target.name + ": registers have different kinds");
    }
    if (&control == &target || control.primary == target.primary) {
        throw std::invalid_argument("SUM needs two distinct registers");
    }
    if (!control.partner) {
        throw std::logic_error("SUM " + control.name + " " + target.name + ": control " + control.name +
                               " holds a single anyon; re-encode it first");
    }
    fuse(ctx, target.primary, control.primary);
    if (target.partner) {
        target.spectators.push_back(*target.partner);
        target.partner.reset();
    }
    control.primary = *control.partner;
    control.partner.reset();
    refresh_value(ctx, control);
    refresh_value(ctx, target);
}

BraidResult gate_cz(AnyonContext &ctx, const LogicalRegister &reg_e, const LogicalRegister &reg_m) {
    if (reg_e.kind != EncodingKind::vertex || reg_m.kind != EncodingKind::face) {
        throw std::invalid_argument("CZ " + reg_e.name + " " + reg_m.name +
                                    ": needs a VERTEX register and a FACE register, in that order");
    }
    const LatticeSpec &spec = ctx.lattice();
    const AnyonRecord &m = ctx.record(reg_m.primary);
    auto [fx, fy] = spec.coords(SiteKind::face, m.site);
    const size_t corner = ring_start(spec, AnyonKind::e, fx, fy);
    const size_t id = reg_e.primary;
    auto there = staircase_path(spec, SiteKind::vertex, ctx.record(id).site, corner);
    move(ctx, id, there);
    BraidResult r = braid(ctx, id, rectangle_loop(spec, AnyonKind::e, fx, fy, 1, 1));
    std::vector<size_t> back(there.rbegin(), there.rend());
    r.moved = move(ctx, id, back);
    return r;
}

void gate_squeeze(AnyonContext &ctx, size_t mode, double eta) {
    if (!std::isfinite(eta)) {
        throw std::invalid_argument("squeeze strength must be finite");
    }
    if (mode >= ctx.lattice().num_modes()) {
        throw std::invalid_argument("no mode " + std::to_string(mode));
    }
    ctx.apply_ground_gate(SqueezeGate{mode, eta});
}

FourierResult fourier_protocol(const CovarianceMoments &input, double ancilla_r, std::optional<double> outcome,
                               std::mt19937_64 &rng) {
    if (input.num_modes() != 1) {
        throw std::invalid_argument("fourier_protocol: input must be a single mode");
    }
    if (!std::isfinite(ancilla_r) || ancilla_r < 0) {
        throw std::invalid_argument("fourier_protocol: missing ancilla (needs finite squeezing r >= 0)");
    }
    // Layout [x_in, x_anc, p_in, p_anc].
    CovarianceMoments joint;
    joint.sigma = Eigen::MatrixXd::Zero(4, 4);
    joint.mean = Eigen::VectorXd::Zero(4);
    joint.sigma(0, 0) = input.sigma(0, 0);
    joint.sigma(0, 2) = joint.sigma(2, 0) = input.sigma(0, 1);
    joint.sigma(2, 2) = input.sigma(1, 1);
    joint.sigma(1, 1) = 0.5 * std::exp(2 * ancilla_r);
    joint.sigma(3, 3) = 0.5 * std::exp(-2 * ancilla_r);
    joint.mean(0) = input.mean(0);
    joint.mean(2) = input.mean(1);

    apply_gate(joint, ControlledZGate{0, 1});
    double m = 0.0;
    if (outcome) {
        m = *outcome;
    } else {
        std::normal_distribution<double> dist(joint.mean(2), std::sqrt(joint.sigma(2, 2)));
        m = dist(rng);
    }
    condition_moments(joint, 0, Quadrature::momentum, m);

    FourierResult out;
    out.output = joint;
    out.correction = MeasurementRecord{0, Quadrature::momentum, m};
    out.corrected = joint;
    out.corrected.mean(0) -= m;
    return out;
}

FourierResult gate_fourier(AnyonContext &ctx, LogicalRegister &reg, double ancilla_r,
                           std::optional<double> outcome, std::mt19937_64 &rng) {
    FourierResult r = fourier_protocol(reg.moments, ancilla_r, outcome, rng);
    ctx.apply_gate(FourierGate{reg.edge});
    reg.moments.sigma = r.corrected.sigma;
    reg.basis = reg.basis == Quadrature::position ? Quadrature::momentum : Quadrature::position;
    reg.moments.mean = r.corrected.mean;
    return r;
}

CubicCommuted gate_cubic_symbolic(cplx s, cplx t, double gamma) {
    std::vector<WHFactor> factors{{FactorKind::X, 0, s}, {FactorKind::Z, 0, t}};
    return commute_through_cubic(normal_order(factors), gamma, 0);
}

cplx decode(const AnyonContext &ctx, const LogicalRegister &reg) {
    return ctx.record(reg.primary).label;
}

cplx decode_numeric(const AnyonContext &ctx, const LogicalRegister &reg) {
    const AnyonRecord &r = ctx.record(reg.primary);
    auto table = detect(ctx, DetectEngine::numeric);
    return table.at(r.kind == AnyonKind::e ? GeneratorKind::star : GeneratorKind::plaquette, r.site).charge;
}

std::pair<cplx, cplx> annihilate_all(AnyonContext &ctx) {
    cplx totals[2];
    for (AnyonKind kind : {AnyonKind::e, AnyonKind::m}) {
        std::vector<size_t> ids;
        for (const auto &[id, r] : ctx.records()) {
            if (r.kind == kind) {
                ids.push_back(id);
            }
        }
        for (size_t k = 1; k < ids.size(); k++) {
            fuse(ctx, ids[0], ids[k]);
        }
        totals[kind == AnyonKind::e ? 0 : 1] = ids.empty() ? cplx{} : ctx.record(ids[0]).label;
    }
    return {totals[0], totals[1]};
}

}  // namespace cvanyon
