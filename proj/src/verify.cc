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


#include "cvanyon/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "cvanyon/anyons.h"
#include "cvanyon/circuit.h"
#include "cvanyon/gates.h"
#include "cvanyon/gaussian.h"
#include "cvanyon/wh_algebra.h"

namespace cvanyon {

namespace {

using Rng = std::mt19937_64;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Check {
    std::string name;
    std::function<std::vector<CheckRow>(Rng &)> run;
};

double uniform(Rng &g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Multiples of 1/16 in [-4, 4]; sums and products of these stay exact.
double dyadic(Rng &g) {
    return std::uniform_int_distribution<int>(-64, 64)(g) / 16.0;
}

CheckRow row(std::string name, double error, double tolerance, std::string detail = {}) {
    CheckRow r;
    r.name = std::move(name);
    r.error = error;
    r.tolerance = tolerance;
    r.pass = !std::isnan(error) && error <= tolerance;
    r.detail = std::move(detail);
    return r;
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string count_detail(size_t n, const char *what) {
    return std::to_string(n) + " " + what;
}

LatticeSpec lattice(const VerifyOptions &o) {
    return build_lattice(o.width, o.height, o.boundary);
}

std::string at(int x, int y) {
    return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

size_t h_edge(const LatticeSpec &spec, int x, int y) {
    auto e = spec.horizontal_edge(x, y);
    if (!e) {
        throw std::invalid_argument("no horizontal edge at " + at(x, y));
    }
    return *e;
}

size_t vertex(const LatticeSpec &spec, int x, int y) {
    auto v = spec.vertex_at(x, y);
    if (!v) {
        throw std::invalid_argument("no vertex at " + at(x, y));
    }
    return *v;
}

size_t face(const LatticeSpec &spec, int x, int y) {
    auto f = spec.face_at(x, y);
    if (!f) {
        throw std::invalid_argument("no face at " + at(x, y));
    }
    return *f;
}

WHWord random_word(Rng &g, size_t modes, int factors) {
    std::vector<WHFactor> fs;
    for (int k = 0; k < factors; k++) {
        auto kind = std::uniform_int_distribution<int>(0, 1)(g) == 0 ? FactorKind::X : FactorKind::Z;
        auto mode = static_cast<size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(modes) - 1)(g));
        fs.push_back({kind, mode, uniform(g, -3, 3)});
    }
    return normal_order(fs);
}

double word_distance(const WHWord &a, const WHWord &b) {
    double d = std::abs(a.log_scalar - b.log_scalar);
    for (const auto &[m, zx] : a.modes) {
        d += std::abs(zx.s - b.at(m).s) + std::abs(zx.t - b.at(m).t);
    }
    for (const auto &[m, zx] : b.modes) {
        if (!a.modes.count(m)) {
            d += std::abs(zx.s) + std::abs(zx.t);
        }
    }
    return d;
}

// ---------------------------------------------------------------- wh-identity

std::vector<Check> wh_identity_checks() {
    std::vector<Check> checks;
    checks.push_back({"normal order of X(s) Z(t) has scalar e^{-ist}", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 1000; k++) {
                              const double s = uniform(g, -5, 5);
                              const double t = uniform(g, -5, 5);
                              std::vector<WHFactor> xz{{FactorKind::X, 0, s}, {FactorKind::Z, 0, t}};
                              WHWord w = normal_order(xz);
                              err = std::max(err, std::abs(w.scalar() - std::exp(-kI * s * t)));
                              err = std::max(err, std::abs(w.at(0).s - s) + std::abs(w.at(0).t - t));
                          }
                          return std::vector{row("normal order of X(s) Z(t) has scalar e^{-ist}", err, 1e-12,
                                                 count_detail(1000, "random pairs"))};
                      }});
    checks.push_back({"X(s) Z(t) = e^{-ist} Z(t) X(s)", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 1000; k++) {
                              const double s = uniform(g, -5, 5);
                              const double t = uniform(g, -5, 5);
                              cplx c = commutation_log(WHWord::x(0, s), WHWord::z(0, t));
                              err = std::max(err, std::abs(c + kI * s * t));
                          }
                          return std::vector{row("X(s) Z(t) = e^{-ist} Z(t) X(s)", err, 1e-12,
                                                 count_detail(1000, "random pairs"))};
                      }});
    checks.push_back({"compose is associative", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 200; k++) {
                              WHWord a = random_word(g, 4, 5);
                              WHWord b = random_word(g, 4, 5);
                              WHWord c = random_word(g, 4, 5);
                              err = std::max(err, word_distance(compose(compose(a, b), c), compose(a, compose(b, c))));
                          }
                          return std::vector{row("compose is associative", err, 1e-12, count_detail(200, "triples"))};
                      }});
    checks.push_back({"w inverse(w) is the identity", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 200; k++) {
                              WHWord w = random_word(g, 4, 8);
                              err = std::max(err, word_distance(compose(w, inverse(w)), WHWord::identity()));
                          }
                          return std::vector{
                              row("w inverse(w) is the identity", err, 1e-12, count_detail(200, "random words"))};
                      }});
    checks.push_back({"single exponential reproduces the word", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 200; k++) {
                              WHWord w = random_word(g, 4, 8);
                              err = std::max(err, word_distance(from_exponent(exponent(w)), w));
                          }
                          return std::vector{row("single exponential reproduces the word", err, 1e-12,
                                                 count_detail(200, "random words"))};
                      }});
    return checks;
}

// ---------------------------------------------------------------- braiding

/// e(s) at vertex (1, 1) with its partner parked at the far corner, and an
/// m(t) pair whose first record sits on the face south-west of the e.
struct BraidSetup {
    AnyonRecord e;
    AnyonRecord m;
};

BraidSetup place_pair(AnyonContext &ctx, double s, double t) {
    const auto &spec = ctx.lattice();
    auto e = create_pair(ctx, AnyonKind::e, h_edge(spec, 1, 1), s);
    auto far = vertex(spec, spec.width() - 1, spec.height() - 1);
    move(ctx, e[1].id, staircase_path(spec, SiteKind::vertex, e[1].site, far));
    auto m = create_pair(ctx, AnyonKind::m, h_edge(spec, 0, 0), t);
    return {e[0], m[0]};
}

std::vector<Check> braiding_checks(const VerifyOptions &opts) {
    std::vector<Check> checks;
    checks.push_back({"m(t) around e(s) gives e^{-ist}", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          size_t bad_enclosure = 0;
                          for (int k = 0; k < 100; k++) {
                              const double s = uniform(g, -3, 3);
                              const double t = uniform(g, -3, 3);
                              AnyonContext ctx(spec, SqueezingMap{});
                              auto [e, m] = place_pair(ctx, s, t);
                              BraidResult r = braid(ctx, m.id, unit_loop(spec, AnyonKind::m, m.site, e.site));
                              err = std::max(err, std::abs(r.scalar() - std::exp(-kI * s * t)));
                              bad_enclosure += r.enclosed.size() == 1 && r.enclosed[0].id == e.id ? 0 : 1;
                          }
                          if (bad_enclosure > 0) {
                              err = kInf;
                          }
                          return std::vector{
                              row("m(t) around e(s) gives e^{-ist}", err, 1e-12, count_detail(100, "random (s, t)"))};
                      }});
    checks.push_back({"clockwise loop gives the conjugate phase", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 100; k++) {
                              const double s = uniform(g, -3, 3);
                              const double t = uniform(g, -3, 3);
                              AnyonContext ctx(spec, SqueezingMap{});
                              auto [e, m] = place_pair(ctx, s, t);
                              auto loop = unit_loop(spec, AnyonKind::m, m.site, e.site);
                              std::reverse(loop.begin(), loop.end());
                              err = std::max(err, std::abs(braid(ctx, m.id, loop).scalar() - std::exp(kI * s * t)));
                          }
                          return std::vector{row("clockwise loop gives the conjugate phase", err, 1e-12,
                                                 count_detail(100, "random (s, t)"))};
                      }});
    checks.push_back({"e around m gives e^{-i l_m l_e}", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          const size_t f = face(spec, 1, 1);
                          double err = 0.0;
                          for (int k = 0; k < 100; k++) {
                              const double s = uniform(g, -3, 3);
                              const double t = uniform(g, -3, 3);
                              AnyonContext ctx(spec, SqueezingMap{});
                              auto m = create_pair(ctx, AnyonKind::m, spec.face(f).boundary[3], s);
                              auto e = create_pair(ctx, AnyonKind::e, h_edge(spec, 0, 1), t);
                              const AnyonRecord &mover = e[0].site == vertex(spec, 1, 1) ? e[0] : e[1];
                              const AnyonRecord &inside = m[0].site == f ? m[0] : m[1];
                              BraidResult r = braid(ctx, mover.id, unit_loop(spec, AnyonKind::e, mover.site, f));
                              err = std::max(err, std::abs(r.scalar() - std::exp(-kI * inside.label * mover.label)));
                          }
                          return std::vector{row("e around m gives e^{-i l_m l_e}", err, 1e-12,
                                                 count_detail(100, "random (s, t)"))};
                      }});
    checks.push_back({"homotopic loops give identical scalars", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          const int wmax = std::min(spec.width(), spec.height()) - 2;
                          const int lo = spec.boundary() == Boundary::planar ? 1 : 0;
                          double err = 0.0;
                          double phase = 0.0;
                          size_t loops = 0;
                          size_t pairs = 0;
                          for (int trial = 0; trial < 10; trial++) {
                              const double s = dyadic(g);
                              const double t = dyadic(g);
                              std::vector<cplx> logs;
                              for (int w = 1; w <= wmax; w++) {
                                  for (int h = 1; h <= wmax; h++) {
                                      for (int x0 = std::max(lo, 2 - w); x0 <= 1 && x0 + w - 1 <= spec.width() - 2;
                                           x0++) {
                                          for (int y0 = std::max(lo, 2 - h);
                                               y0 <= 1 && y0 + h - 1 <= spec.height() - 2; y0++) {
                                              AnyonContext ctx(spec, SqueezingMap{});
                                              place_pair(ctx, s, 0.5);
                                              auto m = create_pair(ctx, AnyonKind::m,
                                                                   h_edge(spec, spec.width() - 2, spec.height() - 2), t);
                                              size_t start = ring_start(spec, AnyonKind::m, x0, y0);
                                              move(ctx, m[0].id,
                                                   staircase_path(spec, SiteKind::face, m[0].site, start));
                                              auto loop = rectangle_loop(spec, AnyonKind::m, x0, y0, w, h);
                                              logs.push_back(braid(ctx, m[0].id, loop).log_scalar);
                                          }
                                      }
                                  }
                              }
                              for (const auto &c : logs) {
                                  err = std::max(err, std::abs(c - logs.front()));
                              }
                              phase = std::max(phase, std::abs(std::exp(logs.front()) - std::exp(-kI * s * t)));
                              loops = logs.size();
                              pairs += logs.size() * (logs.size() - 1) / 2;
                          }
                          if (loops < 2) {
                              err = kInf;
                          }
                          return std::vector{row("homotopic loops give identical scalars", err, 0.0,
                                                 count_detail(loops, "loops per trial, ") +
                                                     count_detail(pairs, "loop pairs")),
                                             row("their common scalar is e^{-ist}", phase, 1e-12)};
                      }});
    checks.push_back({"loop enclosing no anyon gives 1", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 20; k++) {
                              AnyonContext ctx(spec, SqueezingMap::uniform(opts.r));
                              place_pair(ctx, dyadic(g), dyadic(g));
                              const int x0 = spec.width() - 2;
                              auto m = create_pair(ctx, AnyonKind::m, h_edge(spec, x0, 2), dyadic(g));
                              move(ctx, m[0].id,
                                   staircase_path(spec, SiteKind::face, m[0].site, ring_start(spec, AnyonKind::m, x0, 1)));
                              BraidResult r = braid(ctx, m[0].id, rectangle_loop(spec, AnyonKind::m, x0, 1, 1, 1));
                              err = std::max(err, std::abs(r.log_scalar) + static_cast<double>(r.enclosed.size()));
                          }
                          return std::vector{row("loop enclosing no anyon gives 1", err, 0.0)};
                      }});
    checks.push_back({"numeric moments follow the symbolic trace", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 5; k++) {
                              AnyonContext ctx(spec, SqueezingMap::uniform(opts.r), EngineMode::both);
                              auto [e, m] = place_pair(ctx, uniform(g, -2, 2), uniform(g, -2, 2));
                              braid(ctx, m.id, unit_loop(spec, AnyonKind::m, m.site, e.site));
                              const auto &state = ctx.numeric_state();
                              const auto &w = ctx.trace().word;
                              for (size_t j = 0; j < spec.num_modes(); j++) {
                                  ZXPair zx = w.at(j);
                                  const auto i = static_cast<Eigen::Index>(j);
                                  err = std::max(err, std::abs(state.mean_x(i) - zx.s.real()));
                                  err = std::max(err, std::abs(state.mean_p(i) - zx.t.real()));
                              }
                              err = std::max(err, std::abs(state.log_scalar - w.log_scalar));
                          }
                          return std::vector{row("numeric moments follow the symbolic trace", err, 1e-6,
                                                 "r = " + number(opts.r))};
                      }});
    return checks;
}

// ---------------------------------------------------------------- violations

SqueezingMap random_map(Rng &g, const LatticeSpec &spec) {
    SqueezingMap sq = SqueezingMap::uniform(1.0);
    for (size_t e = 0; e < spec.num_modes(); e++) {
        sq.overrides[e] = uniform(g, 0.1, 2.0);
    }
    return sq;
}

bool touches(const LatticeSpec &spec, SiteKind kind, size_t site, size_t edge) {
    auto edges = spec.edges_of_site(kind, site);
    return std::find(edges.begin(), edges.end(), edge) != edges.end();
}

/// Expected raw violation of `gen` at `site` after a single displacement.
using Expectation = std::function<cplx(const LatticeSpec &, const SqueezingMap &, GeneratorKind, size_t, size_t, double)>;

std::vector<CheckRow> violation_case(Rng &g, const VerifyOptions &opts, FactorKind kind, GeneratorKind gen,
                                     const std::string &name, double symbolic_tolerance, const Expectation &expect) {
    auto spec = lattice(opts);
    double sym = 0.0;
    double num = 0.0;
    const int trials = 25;
    for (int k = 0; k < trials; k++) {
        SqueezingMap sq = random_map(g, spec);
        AnyonContext ctx(spec, sq, EngineMode::both);
        const auto edge =
            static_cast<size_t>(std::uniform_int_distribution<int>(0, static_cast<int>(spec.num_modes()) - 1)(g));
        const double t = uniform(g, -5, 5);
        ctx.apply_displacement(kind == FactorKind::Z ? WHWord::z(edge, t) : WHWord::x(edge, t));
        auto symbolic = detect(ctx, DetectEngine::symbolic);
        auto numeric = detect(ctx, DetectEngine::numeric);
        const size_t sites = gen == GeneratorKind::star ? spec.num_vertices() : spec.num_faces();
        for (size_t site = 0; site < sites; site++) {
            const cplx want = expect(spec, sq, gen, site, edge, t);
            sym = std::max(sym, std::abs(symbolic.at(gen, site).raw - want));
            num = std::max(num, std::abs(numeric.at(gen, site).raw - want));
        }
    }
    return {row(name + " (symbolic)", sym, symbolic_tolerance, count_detail(trials, "random (r, t, edge)")),
            row(name + " (numeric)", num, 1e-6, count_detail(trials, "random (r, t, edge)"))};
}

std::vector<Check> violation_checks(const VerifyOptions &opts) {
    std::vector<Check> checks;
    checks.push_back({"Z excitation, star", [opts](Rng &g) {
                          return violation_case(g, opts, FactorKind::Z, GeneratorKind::star,
                                                "Z excitation, star violation = t", 0.0,
                                                [](const LatticeSpec &spec, const SqueezingMap &, GeneratorKind,
                                                   size_t v, size_t e, double t) {
                                                    return touches(spec, SiteKind::vertex, v, e) ? cplx(t) : cplx{};
                                                });
                      }});
    checks.push_back({"Z excitation, plaquette", [opts](Rng &g) {
                          return violation_case(
                              g, opts, FactorKind::Z, GeneratorKind::plaquette,
                              "Z excitation, plaquette violation = i t e^{-2r}", 1e-14,
                              [](const LatticeSpec &spec, const SqueezingMap &sq, GeneratorKind, size_t f, size_t e,
                                 double t) {
                                  return static_cast<double>(spec.face_sign(f, e)) * kI * t * std::exp(-2 * sq.at(e));
                              });
                      }});
    checks.push_back({"X excitation, star", [opts](Rng &g) {
                          return violation_case(g, opts, FactorKind::X, GeneratorKind::star,
                                                "X excitation, star violation = 0", 0.0,
                                                [](const LatticeSpec &, const SqueezingMap &, GeneratorKind, size_t,
                                                   size_t, double) { return cplx{}; });
                      }});
    checks.push_back({"X excitation, plaquette", [opts](Rng &g) {
                          return violation_case(g, opts, FactorKind::X, GeneratorKind::plaquette,
                                                "X excitation, plaquette violation = +-t", 0.0,
                                                [](const LatticeSpec &spec, const SqueezingMap &, GeneratorKind,
                                                   size_t f, size_t e, double t) {
                                                    return cplx(static_cast<double>(spec.face_sign(f, e)) * t);
                                                });
                      }});
    return checks;
}

// ---------------------------------------------------------------- finite squeezing

/// e(t) loop around face (1, 1), which holds one end of an X(s) pair.
struct PlaquetteLoop {
    BraidResult result;
    const Face *face = nullptr;
};

PlaquetteLoop plaquette_loop(const LatticeSpec &spec, const SqueezingMap &sq, double s, double t) {
    AnyonContext ctx(spec, sq);
    const size_t f = face(spec, 1, 1);
    create_pair(ctx, AnyonKind::m, spec.face(f).boundary[3], s);
    auto e = create_pair(ctx, AnyonKind::e, h_edge(spec, 0, 1), t);
    const AnyonRecord &mover = e[0].site == vertex(spec, 1, 1) ? e[0] : e[1];
    return {braid(ctx, mover.id, unit_loop(spec, AnyonKind::e, mover.site, f)), &spec.face(f)};
}

std::vector<Check> finite_squeezing_checks(const VerifyOptions &opts) {
    std::vector<Check> checks;
    checks.push_back({"plaquette loop damping", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double damping = 0.0;
                          double residue = 0.0;
                          for (int k = 0; k < 10; k++) {
                              SqueezingMap sq = random_map(g, spec);
                              const double t = uniform(g, -2, 2);
                              auto [r, f] = plaquette_loop(spec, sq, uniform(g, -2, 2), t);
                              // The loop is unitary: |scalar|^2 <g| exp(2R) |g> = 1 for
                              // the leftover momentum form R.
                              LinearForm rest;
                              for (const auto &d : r.residual_displacements) {
                                  rest.add(d.mode, 0.0, -kI * d.amount);
                              }
                              std::vector<LinearForm> forms{rest};
                              auto stats = nullifier_stats(to_covariance(prepare_code_state(spec, sq)), forms);
                              damping = std::max(damping, std::abs(-2.0 * r.damping + 2.0 * stats[0].variance.real()));
                              double sum_eps = 0.0;
                              for (size_t j = 0; j < 4; j++) {
                                  const double sigma = j % 2 == 0 ? 1.0 : -1.0;
                                  const double eps = std::exp(-2 * sq.at(f->boundary[j]));
                                  sum_eps += eps;
                                  cplx found = kInf;
                                  for (const auto &d : r.residual_displacements) {
                                      if (d.mode == f->boundary[j] && d.kind == FactorKind::X) {
                                          found = d.amount;
                                      }
                                  }
                                  residue = std::max(residue, std::abs(found - (-kI * t * sigma * eps)));
                              }
                              damping = std::max(damping, std::abs(r.damping - t * t * sum_eps / 2));
                              if (r.residual_displacements.size() != 4) {
                                  residue = kInf;
                              }
                          }
                          return std::vector{
                              row("plaquette loop damping = t^2 sum_j e^{-2r_j} / 2 (unitarity oracle)", damping,
                                  1e-10, count_detail(10, "random squeezing maps")),
                              row("residue = prod_j X_j(-i t (-1)^j e^{-2r_j})", residue, 1e-12)};
                      }});
    checks.push_back({"phase is independent of squeezing", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 10; k++) {
                              const double s = uniform(g, -2, 2);
                              const double t = uniform(g, -2, 2);
                              auto ideal = plaquette_loop(spec, SqueezingMap{}, s, t).result;
                              auto finite = plaquette_loop(spec, random_map(g, spec), s, t).result;
                              err = std::max(err, std::abs(finite.phase - ideal.phase));
                          }
                          return std::vector{row("braid phase is independent of squeezing", err, 1e-12)};
                      }});
    checks.push_back({"star loops are undamped", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 10; k++) {
                              AnyonContext ctx(spec, random_map(g, spec));
                              auto [e, m] = place_pair(ctx, uniform(g, -2, 2), uniform(g, -2, 2));
                              BraidResult r = braid(ctx, m.id, unit_loop(spec, AnyonKind::m, m.site, e.site));
                              err = std::max(err, std::abs(r.damping) + static_cast<double>(r.residual_displacements.size()));
                          }
                          return std::vector{row("m loops around e are undamped", err, 0.0)};
                      }});
    checks.push_back({"closed form", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          const Face &f = spec.face(face(spec, 1, 1));
                          double single = 0.0;
                          double uniform_err = 0.0;
                          double phase = 0.0;
                          for (int k = 0; k < 20; k++) {
                              const double s = uniform(g, -2, 2);
                              const double t = uniform(g, -2, 2);
                              const double r1 = uniform(g, 0.1, 2.0);
                              SqueezingMap one{kInfiniteSqueezing, {{f.boundary[0], r1}}};
                              cplx want = std::exp(kI * s * t - t * t * std::exp(-2 * r1));
                              auto lone = plaquette_loop(spec, one, s, t).result;
                              single = std::max(single, std::abs(lone.scalar() - want));
                              phase = std::max(phase, std::abs(lone.phase - std::exp(kI * s * t)));
                              auto r = plaquette_loop(spec, SqueezingMap::uniform(r1), s, t).result;
                              uniform_err = std::max(uniform_err, std::abs(r.scalar() - std::exp(kI * s * t)));
                          }
                          return std::vector{
                              row("r = (r1, inf, inf, inf): phase part = e^{ist}", phase, 1e-12),
                              row("r = (r1, inf, inf, inf): scalar = exp[ist - t^2 e^{-2r1}]", single, 1e-12),
                              row("uniform r: scalar = e^{ist}", uniform_err, 1e-12)};
                      }});
    checks.push_back({"topological factor", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 100; k++) {
                              const double s = uniform(g, -2, 2);
                              const double t = uniform(g, -2, 2);
                              std::array<double, 4> r{uniform(g, 0.1, 2), uniform(g, 0.1, 2), uniform(g, 0.1, 2),
                                                      uniform(g, 0.1, 2)};
                              double alt = 0.0;
                              for (size_t j = 0; j < 4; j++) {
                                  alt += (j % 2 == 0 ? 1.0 : -1.0) * std::exp(-2 * r[j]);
                              }
                              err = std::max(err, std::abs(topological_factor(s, t, r) - (kI * s * t - t * t * alt)));
                          }
                          return std::vector{row("i(s + i t sum_j s_j e^{-2r_j}) t closed form", err, 1e-12)};
                      }});
    return checks;
}

// ---------------------------------------------------------------- gates

CovarianceMoments single_mode(double x, double p) {
    CovarianceMoments m;
    m.sigma = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    m.mean = Eigen::VectorXd(2);
    m.mean << x, p;
    return m;
}

std::vector<Check> gate_checks(const VerifyOptions &opts) {
    std::vector<Check> checks;
    checks.push_back({"SUM ledger", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 20; k++) {
                              const double s = dyadic(g);
                              const double t = dyadic(g);
                              AnyonContext ctx(spec, SqueezingMap{});
                              auto c = encode(ctx, "c", s, EncodingKind::vertex, allocate_edge(ctx, EncodingKind::vertex));
                              auto q = encode(ctx, "t", t, EncodingKind::vertex, allocate_edge(ctx, EncodingKind::vertex));
                              gate_sum(ctx, c, q);
                              err = std::max(err, std::abs(c.value + s) + std::abs(q.value - (s + t)));
                              err = std::max(err, std::abs(decode(ctx, c) + s) + std::abs(decode(ctx, q) - (s + t)));
                          }
                          return std::vector{row("SUM maps (s, t) to (-s, s + t) on the ledger", err, 0.0)};
                      }});
    checks.push_back({"SUM numeric", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 3; k++) {
                              const double s = uniform(g, -2, 2);
                              const double t = uniform(g, -2, 2);
                              AnyonContext ctx(spec, SqueezingMap::uniform(opts.r), EngineMode::both);
                              auto c = encode(ctx, "c", s, EncodingKind::face, allocate_edge(ctx, EncodingKind::face));
                              auto q = encode(ctx, "t", t, EncodingKind::face, allocate_edge(ctx, EncodingKind::face));
                              gate_sum(ctx, c, q);
                              err = std::max(err, std::abs(decode_numeric(ctx, c) + s));
                              err = std::max(err, std::abs(decode_numeric(ctx, q) - (s + t)));
                          }
                          return std::vector{row("SUM on numeric moments", err, 1e-6, "r = " + number(opts.r))};
                      }});
    checks.push_back({"CZ phase", [opts](Rng &g) {
                          auto spec = lattice(opts);
                          double err = 0.0;
                          for (int k = 0; k < 20; k++) {
                              const double s = uniform(g, -2, 2);
                              const double t = uniform(g, -2, 2);
                              AnyonContext ctx(spec, SqueezingMap::uniform(k % 2 == 0 ? kInfiniteSqueezing : opts.r));
                              auto e = encode(ctx, "e", s, EncodingKind::vertex, allocate_edge(ctx, EncodingKind::vertex));
                              auto m = encode(ctx, "m", t, EncodingKind::face, allocate_edge(ctx, EncodingKind::face));
                              err = std::max(err, std::abs(gate_cz(ctx, e, m).phase - std::exp(-kI * s * t)));
                          }
                          return std::vector{row("CZ braid phase = e^{-ist}", err, 1e-12)};
                      }});
    for (double r : {2.0, 3.0, 4.0}) {
        std::string name = "Fourier rotates means, r = " + std::to_string(static_cast<int>(r));
        checks.push_back({name, [r, name](Rng &g) {
                              const double eps = std::exp(-2 * r);
                              double err = 0.0;
                              for (int k = 0; k < 50; k++) {
                                  const double x = uniform(g, -2, 2);
                                  const double p = uniform(g, -2, 2);
                                  const double m = p + uniform(g, -4, 4);
                                  FourierResult f = fourier_protocol(single_mode(x, p), r, m, g);
                                  err = std::max(err, std::abs(f.corrected.mean(0) + p));
                                  err = std::max(err, std::abs(f.corrected.mean(1) - x));
                              }
                              return std::vector{row(name + " (|m - p| <= 4)", err, 5 * eps)};
                          }});
    }
    checks.push_back({"cubic residue exponent", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 100; k++) {
                              const double s = uniform(g, -2, 2);
                              const double t = uniform(g, -2, 2);
                              const double gamma = uniform(g, -1, 1);
                              CubicCommuted c = gate_cubic_symbolic(s, t, gamma);
                              const QuadCoeffs q = c.linear_exponent.coeffs(0);
                              err = std::max(err, std::abs(q.p + kI * s) + std::abs(q.x - kI * t));
                              err = std::max(err, std::abs(c.x2_coefficient + 3.0 * kI * gamma * s));
                              if (!std::isfinite(std::abs(c.log_scalar))) {
                                  err = kInf;
                              }
                          }
                          return std::vector{row("cubic residue exponent = -i(s p - t x + 3 gamma s x^2)", err, 1e-12)};
                      }});
    checks.push_back({"cubic gamma = 0", [](Rng &g) {
                          double err = 0.0;
                          for (int k = 0; k < 100; k++) {
                              const double s = uniform(g, -2, 2);
                              const double t = uniform(g, -2, 2);
                              CubicCommuted c = gate_cubic_symbolic(s, t, 0.0);
                              err = std::max(err, std::abs(c.residual.scalar() - std::exp(-kI * s * t)));
                              err = std::max(err, std::abs(c.log_scalar) + (c.residual.has_residue() ? kInf : 0.0));
                          }
                          return std::vector{row("cubic with gamma = 0 reduces to X(s) Z(t)", err, 1e-12)};
                      }});
    checks.push_back({"classification", [opts](Rng &) {
                          RunConfig config;
                          config.spec = lattice(opts);
                          config.squeezing = SqueezingMap::uniform(opts.r);
                          struct Case {
                              const char *text;
                              const char *expect;
                          };
                          const Case cases[] = {
                              {"ENCODE a VERTEX 1\nENCODE b FACE 2\nCZ a b\nDISPLACE a 1\n", "topological"},
                              {"ENCODE a FACE 1\nENCODE b FACE 2\nSUM a b\n", "topological"},
                              {"ENCODE a VERTEX 1\nSQUEEZE a 0.3\n", "gaussian"},
                              {"ENCODE a VERTEX 1\nFOURIER a OUTCOME 0\n", "gaussian"},
                              {"ENCODE a FACE 1\nCUBIC a 0.2\n", "non-gaussian"},
                          };
                          size_t wrong = 0;
                          for (const auto &c : cases) {
                              wrong += classify(run_circuit(parse_circuit_text(c.text), config)) == c.expect ? 0 : 1;
                          }
                          return std::vector{row("trace degree: topological 1, SQUEEZE/FOURIER 2, CUBIC 3",
                                                 static_cast<double>(wrong), 0.0, count_detail(5, "circuits"))};
                      }});
    return checks;
}

std::vector<Check> checks_for(const std::string &name, const VerifyOptions &opts) {
    if (name == "wh-identity") {
        return wh_identity_checks();
    }
    if (name == "braiding") {
        return braiding_checks(opts);
    }
    if (name == "violations") {
        return violation_checks(opts);
    }
    if (name == "finite-squeezing") {
        return finite_squeezing_checks(opts);
    }
    if (name == "gates") {
        return gate_checks(opts);
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow &r) { return r.pass; });
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"wh-identity", "braiding", "violations", "finite-squeezing", "gates"};
    return names;
}

SuiteReport run_suite(const std::string &name, const VerifyOptions &options) {
    const std::vector<Check> checks = checks_for(name, options);
    std::vector<std::vector<CheckRow>> rows(checks.size());
    const auto n = static_cast<long>(checks.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; k++) {
        const auto &check = checks[static_cast<size_t>(k)];
        std::seed_seq seq{options.seed, static_cast<std::uint64_t>(k)};
        Rng gen(seq);
        try {
            rows[static_cast<size_t>(k)] = check.run(gen);
        } catch (const std::exception &e) {
            rows[static_cast<size_t>(k)] = {row(check.name, kInf, 0.0, std::string("error: ") + e.what())};
        }
    }
    SuiteReport report;
    report.suite = name;
    for (auto &r : rows) {
        report.rows.insert(report.rows.end(), r.begin(), r.end());
    }
    return report;
}

void write_suite_table(std::ostream &out, const SuiteReport &report) {
    size_t width = 5;
    for (const auto &r : report.rows) {
        width = std::max(width, r.name.size());
    }
    out << "suite " << report.suite << "\n";
    out << "status  " << std::string("check") << std::string(width - 5, ' ') << "  error      tolerance  detail\n";
    size_t passed = 0;
    for (const auto &r : report.rows) {
        passed += r.pass ? 1 : 0;
        out << (r.pass ? "PASS    " : "FAIL    ") << r.name << std::string(width - r.name.size(), ' ') << "  "
            << sci(r.error) << "  " << sci(r.tolerance) << "  " << r.detail << "\n";
    }
    out << passed << "/" << report.rows.size() << " checks passed\n";
}

void write_suite_csv(std::ostream &out, const SuiteReport &report) {
    out << "suite,check,pass,error,tolerance,detail\n";
    for (const auto &r : report.rows) {
        out << report.suite << ",\"" << r.name << "\"," << (r.pass ? 1 : 0) << "," << sci(r.error) << ","
            << sci(r.tolerance) << ",\"" << r.detail << "\"\n";
    }
}

}  // namespace cvanyon
