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

#ifndef CVANYON_LATTICE_H
#define CVANYON_LATTICE_H

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvanyon/linear_form.h"

namespace cvanyon {

enum class Boundary { toroidal, planar };

/// Edge orientation. The numeric values are the `d` used in the m-anyon
/// sign rule m((-1)^d t).
enum class Orientation : int { vertical = 1, horizontal = 2 };

enum class SiteKind { vertex, face };

enum class GeneratorKind { star, plaquette };

inline constexpr double kInfiniteSqueezing = std::numeric_limits<double>::infinity();

struct EdgeMode {
    size_t index;
    int x;
    int y;
    Orientation orientation;
    /// Origin vertex (x, y) first.
    std::array<size_t, 2> vertices;
    /// One face on a planar boundary edge, two otherwise.
    std::vector<size_t> faces;
};

struct Vertex {
    size_t index;
    int x;
    int y;
    /// Incident edges ordered east, north, west, south (missing ones skipped).
    std::vector<size_t> edges;
};

struct Face {
    size_t index;
    int x;
    int y;
    /// Boundary traversed counterclockwise from the top edge: top, left,
    /// bottom, right. The j-th edge carries sign (-1)^j (0-based).
    std::array<size_t, 4> boundary;
};

/// Square lattice geometry with qumodes on the edges.
///
/// Vertex (x, y) has x in [0, width), y in [0, height), y increasing upward.
/// Horizontal edge h(x, y) joins (x, y) to (x+1, y); vertical edge v(x, y)
/// joins (x, y) to (x, y+1). Face (x, y) has (x, y) as its lower-left corner.
/// On the torus mode h(x, y) = 2 (y W + x) and v(x, y) = 2 (y W + x) + 1.
class LatticeSpec {
   public:
    LatticeSpec(int width, int height, Boundary boundary);

    int width() const { return width_; }
    int height() const { return height_; }
    Boundary boundary() const { return boundary_; }

    size_t num_modes() const { return edges_.size(); }
    size_t num_vertices() const { return vertices_.size(); }
    size_t num_faces() const { return faces_.size(); }
    size_t num_sites(SiteKind kind) const { return kind == SiteKind::vertex ? num_vertices() : num_faces(); }

    const EdgeMode &edge(size_t mode) const { return edges_.at(mode); }
    const Vertex &vertex(size_t v) const { return vertices_.at(v); }
    const Face &face(size_t f) const { return faces_.at(f); }
    const std::vector<EdgeMode> &edges() const { return edges_; }
    const std::vector<Vertex> &vertices() const { return vertices_; }
    const std::vector<Face> &faces() const { return faces_; }

    std::optional<size_t> horizontal_edge(int x, int y) const;
    std::optional<size_t> vertical_edge(int x, int y) const;
    std::optional<size_t> vertex_at(int x, int y) const;
    std::optional<size_t> face_at(int x, int y) const;

    /// Sign of `mode` in the ordered boundary of `face`; 0 if not on it.
    int face_sign(size_t face, size_t mode) const;

    /// Sites of `kind` touched by an edge: its endpoints or its faces.
    std::vector<size_t> sites_of_edge(SiteKind kind, size_t mode) const;
    /// Edges through which an anyon of site-kind `kind` can leave `site`.
    std::vector<size_t> edges_of_site(SiteKind kind, size_t site) const;
    std::optional<size_t> edge_between(SiteKind kind, size_t a, size_t b) const;
    /// The site on the other side of `mode` from `site`.
    size_t across(SiteKind kind, size_t mode, size_t site) const;

    /// (-1)^(x+y) of a vertex or face.
    int parity(SiteKind kind, size_t site) const;
    std::pair<int, int> coords(SiteKind kind, size_t site) const;
    /// True when every edge joins sites of opposite parity, which makes the
    /// staggered anyon labels conserved (even torus or any planar patch).
    bool bipartite() const;

   private:
    int wrap_x(int x) const;
    int wrap_y(int y) const;

    int width_;
    int height_;
    Boundary boundary_;
    std::vector<EdgeMode> edges_;
    std::vector<Vertex> vertices_;
    std::vector<Face> faces_;
    // (y * width + x) * 2 + {0 horizontal, 1 vertical} -> mode, or npos.
    std::vector<size_t> edge_lookup_;
};

/// Rejects degenerate sizes: width, height >= 2 on the torus (smaller tori
/// produce doubled edges), and on planar patches (no face otherwise).
LatticeSpec build_lattice(int width, int height, Boundary boundary);

std::string to_string(Boundary b);
Boundary parse_boundary(const std::string &text);

/// Per-mode squeezing parameter r; infinity is the ideal code.
struct SqueezingMap {
    double default_r = kInfiniteSqueezing;
    std::map<size_t, double> overrides;

    double at(size_t mode) const;
    bool all_finite(size_t num_modes) const;
    static SqueezingMap uniform(double r) { return SqueezingMap{r, {}}; }
};

/// e^{-2r}, with the infinite case mapped to exactly zero.
double squeezing_damping(double r);

struct AdjacencyMatrix {
    Eigen::MatrixXd weights;

    size_t size() const { return static_cast<size_t>(weights.rows()); }
    /// Throws unless square, symmetric, zero-diagonal.
    void validate() const;
};

struct MeasuredMode {
    size_t mode;
    Quadrature basis;
};

struct MeasurementPattern {
    std::vector<MeasuredMode> measured;
    std::vector<size_t> surviving;
    /// A Fourier transform on every surviving mode completes the pattern.
    bool fourier_on_survivors = true;
};

/// Cluster precursor: modes [0, E) are the lattice edges, [E, E+V) vertex
/// ancillas, [E+V, E+V+F) face ancillas. Vertex ancillas are measured in
/// momentum and face ancillas in position.
struct ClusterGraph {
    AdjacencyMatrix adjacency;
    MeasurementPattern pattern;
    size_t num_edge_modes;
};

ClusterGraph cluster_graph(const LatticeSpec &spec);

struct StabilizerGen {
    GeneratorKind kind;
    size_t site;
    /// The nullifier; the stabilizer is exp(-i param form).
    LinearForm form;
};

/// One star per vertex then one plaquette per face.
///
/// Star:       sum of momenta over the incident edges.
/// Plaquette:  sum_j s_j (x_j + i e^{-2 r_j} p_j) over the ordered boundary,
///             s_j = (-1)^j; the momentum part vanishes for infinite r.
std::vector<StabilizerGen> code_generators(const LatticeSpec &spec, const SqueezingMap &squeezing);

struct CommutationReport {
    /// pairing(i, j) for every generator pair.
    Eigen::MatrixXcd pairing;
    double max_abs = 0.0;
    std::vector<std::pair<size_t, size_t>> nonzero_pairs;

    bool commuting() const { return nonzero_pairs.empty(); }
};

CommutationReport validate_code(const LatticeSpec &spec, const std::vector<StabilizerGen> &generators,
                                double tolerance = 1e-12);

struct LatticeFile {
    LatticeSpec spec;
    SqueezingMap squeezing;
};

/// Text format, one `key value` per line, `#` comments:
///   width 4
///   height 4
///   boundary toroidal
///   r 3            (default squeezing, `inf` allowed)
///   r[5] 1.25      (per-mode override)
void write_lattice_file(std::ostream &out, const LatticeSpec &spec, const SqueezingMap &squeezing);
LatticeFile read_lattice_file(std::istream &in, const std::string &source_name = "<input>");

/// Table of every mode with its coordinates, orientation, vertices and faces.
std::string describe_modes(const LatticeSpec &spec);

}  // namespace cvanyon

#endif
