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

#include "cvanyon/lattice.h"

#include <set>
#include <sstream>

#include "gtest/gtest.h"

using namespace cvanyon;

TEST(lattice, torus_counts) {
    for (int w = 2; w <= 7; w++) {
        for (int h = 2; h <= 7; h++) {
            auto spec = build_lattice(w, h, Boundary::toroidal);
            ASSERT_EQ(spec.num_modes(), static_cast<size_t>(2 * w * h));
            ASSERT_EQ(spec.num_vertices(), static_cast<size_t>(w * h));
            ASSERT_EQ(spec.num_faces(), static_cast<size_t>(w * h));
        }
    }
    auto spec = build_lattice(4, 4, Boundary::toroidal);
    ASSERT_EQ(spec.num_modes(), 32u);
}

TEST(lattice, rejects_degenerate_sizes) {
    ASSERT_THROW(build_lattice(1, 1, Boundary::toroidal), std::invalid_argument);
    ASSERT_THROW(build_lattice(1, 4, Boundary::toroidal), std::invalid_argument);
    ASSERT_THROW(build_lattice(3, 0, Boundary::planar), std::invalid_argument);
}

TEST(lattice, torus_mode_indexing) {
    auto spec = build_lattice(3, 4, Boundary::toroidal);
    for (int y = 0; y < 4; y++) {
        for (int x = 0; x < 3; x++) {
            ASSERT_EQ(*spec.horizontal_edge(x, y), static_cast<size_t>(2 * (y * 3 + x)));
            ASSERT_EQ(*spec.vertical_edge(x, y), static_cast<size_t>(2 * (y * 3 + x) + 1));
            ASSERT_EQ(spec.edge(2 * (y * 3 + x)).orientation, Orientation::horizontal);
            ASSERT_EQ(spec.edge(2 * (y * 3 + x) + 1).orientation, Orientation::vertical);
        }
    }
    ASSERT_EQ(*spec.horizontal_edge(-1, 0), *spec.horizontal_edge(2, 0));
    ASSERT_EQ(*spec.vertical_edge(0, 4), *spec.vertical_edge(0, 0));
}

TEST(lattice, every_torus_edge_in_two_stars_and_two_plaquettes) {
    auto spec = build_lattice(4, 3, Boundary::toroidal);
    std::vector<int> stars(spec.num_modes());
    std::vector<int> plaqs(spec.num_modes());
    for (const auto &v : spec.vertices()) {
        ASSERT_EQ(v.edges.size(), 4u);
        for (size_t e : v.edges) {
            stars[e]++;
        }
    }
    for (const auto &f : spec.faces()) {
        std::set<size_t> distinct(f.boundary.begin(), f.boundary.end());
        ASSERT_EQ(distinct.size(), 4u);
        for (size_t e : f.boundary) {
            plaqs[e]++;
        }
    }
    for (size_t e = 0; e < spec.num_modes(); e++) {
        ASSERT_EQ(stars[e], 2);
        ASSERT_EQ(plaqs[e], 2);
        ASSERT_EQ(spec.edge(e).faces.size(), 2u);
    }
}

TEST(lattice, face_boundary_order_and_signs) {
    auto spec = build_lattice(4, 4, Boundary::toroidal);
    const auto &f = spec.face(*spec.face_at(1, 2));
    ASSERT_EQ(f.boundary[0], *spec.horizontal_edge(1, 3));
    ASSERT_EQ(f.boundary[1], *spec.vertical_edge(1, 2));
    ASSERT_EQ(f.boundary[2], *spec.horizontal_edge(1, 2));
    ASSERT_EQ(f.boundary[3], *spec.vertical_edge(2, 2));
    ASSERT_EQ(spec.face_sign(f.index, f.boundary[0]), +1);
    ASSERT_EQ(spec.face_sign(f.index, f.boundary[1]), -1);
    ASSERT_EQ(spec.face_sign(f.index, f.boundary[2]), +1);
    ASSERT_EQ(spec.face_sign(f.index, f.boundary[3]), -1);
    ASSERT_EQ(spec.face_sign(f.index, *spec.horizontal_edge(3, 3)), 0);
}

TEST(lattice, adjacency_helpers) {
    auto spec = build_lattice(4, 4, Boundary::toroidal);
    size_t v0 = *spec.vertex_at(1, 1);
    size_t v1 = *spec.vertex_at(2, 1);
    size_t e = *spec.edge_between(SiteKind::vertex, v0, v1);
    ASSERT_EQ(e, *spec.horizontal_edge(1, 1));
    ASSERT_EQ(spec.across(SiteKind::vertex, e, v0), v1);
    ASSERT_EQ(spec.parity(SiteKind::vertex, v0), +1);
    ASSERT_EQ(spec.parity(SiteKind::vertex, v1), -1);
    ASSERT_FALSE(spec.edge_between(SiteKind::vertex, v0, *spec.vertex_at(3, 3)).has_value());
    ASSERT_TRUE(spec.bipartite());
    ASSERT_FALSE(build_lattice(3, 4, Boundary::toroidal).bipartite());
}

TEST(lattice, planar_geometry) {
    auto spec = build_lattice(4, 3, Boundary::planar);
    ASSERT_EQ(spec.num_vertices(), 12u);
    ASSERT_EQ(spec.num_faces(), 6u);
    ASSERT_EQ(spec.num_modes(), static_cast<size_t>(3 * 3 + 4 * 2));
    ASSERT_EQ(spec.vertex(*spec.vertex_at(0, 0)).edges.size(), 2u);
    ASSERT_EQ(spec.vertex(*spec.vertex_at(1, 0)).edges.size(), 3u);
    ASSERT_EQ(spec.vertex(*spec.vertex_at(1, 1)).edges.size(), 4u);
    ASSERT_EQ(spec.edge(*spec.horizontal_edge(0, 0)).faces.size(), 1u);
    ASSERT_FALSE(spec.horizontal_edge(3, 0).has_value());
}

TEST(lattice, cluster_graph_shape) {
    auto spec = build_lattice(2, 2, Boundary::toroidal);
    auto cluster = cluster_graph(spec);
    ASSERT_EQ(cluster.adjacency.size(), 16u);
    ASSERT_EQ(cluster.pattern.measured.size(), 8u);
    ASSERT_EQ(cluster.pattern.surviving.size(), 8u);
    ASSERT_TRUE(cluster.pattern.fourier_on_survivors);
    cluster.adjacency.validate();

    std::set<size_t> all;
    for (auto m : cluster.pattern.measured) {
        ASSERT_TRUE(all.insert(m.mode).second);
        ASSERT_GE(m.mode, spec.num_modes());
    }
    for (size_t e : cluster.pattern.surviving) {
        ASSERT_TRUE(all.insert(e).second);
        ASSERT_LT(e, spec.num_modes());
    }
    ASSERT_EQ(all.size(), 16u);

    for (size_t e : cluster.pattern.surviving) {
        bool has_measured_neighbor = false;
        for (auto m : cluster.pattern.measured) {
            has_measured_neighbor |= cluster.adjacency.weights(e, m.mode) == 1.0;
        }
        ASSERT_TRUE(has_measured_neighbor);
    }
}

TEST(lattice, adjacency_validation) {
    AdjacencyMatrix a{Eigen::MatrixXd::Zero(2, 2)};
    a.weights(0, 1) = 1;
    ASSERT_THROW(a.validate(), std::invalid_argument);
    a.weights(1, 0) = 1;
    a.validate();
    a.weights(0, 0) = 1;
    ASSERT_THROW(a.validate(), std::invalid_argument);
}

TEST(lattice, ideal_generators) {
    auto spec = build_lattice(3, 3, Boundary::toroidal);
    auto gens = code_generators(spec, SqueezingMap{});
    ASSERT_EQ(gens.size(), 18u);
    for (const auto &g : gens) {
        if (g.kind == GeneratorKind::star) {
            ASSERT_EQ(g.form.terms.size(), 4u);
            for (const auto &[mode, c] : g.form.terms) {
                ASSERT_EQ(c.x, cplx(0.0));
                ASSERT_EQ(c.p, cplx(1.0));
            }
        } else {
            const auto &f = spec.face(g.site);
            ASSERT_EQ(g.form.coeffs(f.boundary[0]).x, cplx(1.0));
            ASSERT_EQ(g.form.coeffs(f.boundary[1]).x, cplx(-1.0));
            ASSERT_EQ(g.form.coeffs(f.boundary[2]).x, cplx(1.0));
            ASSERT_EQ(g.form.coeffs(f.boundary[3]).x, cplx(-1.0));
            for (size_t e : f.boundary) {
                ASSERT_EQ(g.form.coeffs(e).p, cplx(0.0));
            }
        }
    }
}

TEST(lattice, finite_generators) {
    auto spec = build_lattice(4, 4, Boundary::toroidal);
    SqueezingMap sq{1.5, {{3, 0.7}, {10, 2.5}}};
    auto gens = code_generators(spec, sq);
    auto low = code_generators(spec, SqueezingMap::uniform(0.1));
    auto high = code_generators(spec, SqueezingMap::uniform(10));
    for (size_t k = 0; k < gens.size(); k++) {
        if (gens[k].kind == GeneratorKind::star) {
            for (const auto &[mode, c] : low[k].form.terms) {
                ASSERT_EQ(c.x, high[k].form.coeffs(mode).x);
                ASSERT_EQ(c.p, high[k].form.coeffs(mode).p);
            }
            continue;
        }
        const auto &f = spec.face(gens[k].site);
        for (size_t j = 0; j < 4; j++) {
            size_t e = f.boundary[j];
            double sign = j % 2 == 0 ? 1 : -1;
            cplx beta = gens[k].form.coeffs(e).p;
            ASSERT_EQ(beta.real(), 0.0);
            ASSERT_NEAR(std::abs(beta.imag()), std::exp(-2 * sq.at(e)), 1e-15);
            ASSERT_EQ(beta, kI * sign * std::exp(-2 * sq.at(e)));
        }
    }
}

TEST(lattice, generator_errors) {
    auto spec = build_lattice(2, 2, Boundary::toroidal);
    ASSERT_THROW(code_generators(spec, SqueezingMap{1.0, {{8, 1.0}}}), std::invalid_argument);
    ASSERT_THROW(code_generators(spec, SqueezingMap{-1.0, {}}), std::invalid_argument);
}

TEST(lattice, code_is_valid_up_to_6x6) {
    for (auto boundary : {Boundary::toroidal, Boundary::planar}) {
        for (int w = 2; w <= 6; w++) {
            for (int h = 2; h <= 6; h++) {
                auto spec = build_lattice(w, h, boundary);
                SqueezingMap sq{1.0, {}};
                for (size_t e = 0; e < spec.num_modes(); e += 3) {
                    sq.overrides[e] = 0.1 + 0.05 * static_cast<double>(e);
                }
                for (const auto &map : {SqueezingMap{}, sq}) {
                    auto report = validate_code(spec, code_generators(spec, map));
                    ASSERT_TRUE(report.commuting()) << w << "x" << h << " max " << report.max_abs;
                    ASSERT_EQ(report.max_abs, 0.0);
                }
            }
        }
    }
}

TEST(lattice, flipped_plaquette_is_detected) {
    auto spec = build_lattice(3, 3, Boundary::toroidal);
    auto gens = code_generators(spec, SqueezingMap{});
    size_t k = spec.num_vertices() + 4;
    size_t e = spec.face(gens[k].site).boundary[1];
    gens[k].form.terms[e].x = -gens[k].form.terms[e].x;
    auto report = validate_code(spec, gens);
    ASSERT_FALSE(report.commuting());
    // The flipped edge touches two stars; each now pairs to +-2.
    ASSERT_EQ(report.nonzero_pairs.size(), 2u);
    ASSERT_EQ(report.max_abs, 2.0);
}

TEST(lattice, file_round_trip) {
    auto spec = build_lattice(5, 3, Boundary::planar);
    SqueezingMap sq{2.25, {{0, kInfiniteSqueezing}, {4, 0.1}}};
    std::stringstream ss;
    write_lattice_file(ss, spec, sq);
    auto back = read_lattice_file(ss);
    ASSERT_EQ(back.spec.width(), 5);
    ASSERT_EQ(back.spec.height(), 3);
    ASSERT_EQ(back.spec.boundary(), Boundary::planar);
    ASSERT_EQ(back.squeezing.default_r, 2.25);
    ASSERT_EQ(back.squeezing.overrides, sq.overrides);
}

TEST(lattice, file_errors_name_the_line) {
    std::stringstream ss("width 4\nheight 4\nboundry toroidal\n");
    try {
        read_lattice_file(ss, "demo.lat");
        FAIL();
    } catch (const std::invalid_argument &ex) {
        ASSERT_NE(std::string(ex.what()).find("demo.lat:3"), std::string::npos);
    }
    std::stringstream missing("width 4\n");
    ASSERT_THROW(read_lattice_file(missing), std::invalid_argument);
    std::stringstream bad_mode("width 2\nheight 2\nr[99] 1\n");
    ASSERT_THROW(read_lattice_file(bad_mode), std::invalid_argument);
}

TEST(lattice, describe_modes_is_deterministic) {
    auto spec = build_lattice(2, 2, Boundary::toroidal);
    auto text = describe_modes(spec);
    ASSERT_EQ(text, describe_modes(build_lattice(2, 2, Boundary::toroidal)));
    ASSERT_NE(text.find("0,0,0,horizontal,2,0,1,"), std::string::npos);
    ASSERT_NE(text.find("1,0,0,vertical,1,0,2,"), std::string::npos);
}
