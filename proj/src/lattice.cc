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

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cvanyon/kernels.h"

namespace cvanyon {

namespace {

constexpr size_t kNoEdge = static_cast<size_t>(-1);

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &text, const std::string &where) {
    if (text == "inf" || text == "infinity") {
        return kInfiniteSqueezing;
    }
    double v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument(where + ": expected a number, got '" + text + "'");
    }
    return v;
}

long parse_int(const std::string &text, const std::string &where) {
    long v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument(where + ": expected an integer, got '" + text + "'");
    }
    return v;
}

}  // namespace

LatticeSpec::LatticeSpec(int width, int height, Boundary boundary)
    : width_(width), height_(height), boundary_(boundary) {
    if (width < 2 || height < 2) {
        throw std::invalid_argument(
            "lattice needs width and height >= 2, got " + std::to_string(width) + "x" + std::to_string(height));
    }
    const bool torus = boundary == Boundary::toroidal;
    edge_lookup_.assign(static_cast<size_t>(width) * height * 2, kNoEdge);

    for (int y = 0; y < height; y++) {
        for (int x = 0; x < width; x++) {
            vertices_.push_back(Vertex{vertices_.size(), x, y, {}});
        }
    }
    const int face_w = torus ? width : width - 1;
    const int face_h = torus ? height : height - 1;
    for (int y = 0; y < face_h; y++) {
        for (int x = 0; x < face_w; x++) {
            faces_.push_back(Face{faces_.size(), x, y, {}});
        }
    }

    for (int y = 0; y < height; y++) {
        for (int x = 0; x < width; x++) {
            if (torus || x + 1 < width) {
                size_t m = edges_.size();
                edge_lookup_[(y * width + x) * 2] = m;
                edges_.push_back(EdgeMode{
                    m, x, y, Orientation::horizontal,
                    {*vertex_at(x, y), *vertex_at(wrap_x(x + 1), y)}, {}});
            }
            if (torus || y + 1 < height) {
                size_t m = edges_.size();
                edge_lookup_[(y * width + x) * 2 + 1] = m;
                edges_.push_back(EdgeMode{
                    m, x, y, Orientation::vertical,
                    {*vertex_at(x, y), *vertex_at(x, wrap_y(y + 1))}, {}});
            }
        }
    }

    for (auto &f : faces_) {
        f.boundary = {
            *horizontal_edge(f.x, wrap_y(f.y + 1)),
            *vertical_edge(f.x, f.y),
            *horizontal_edge(f.x, f.y),
            *vertical_edge(wrap_x(f.x + 1), f.y),
        };
        for (size_t e : f.boundary) {
            edges_[e].faces.push_back(f.index);
        }
    }

    for (auto &v : vertices_) {
        // east, north, west, south
        std::optional<size_t> candidates[4] = {
            horizontal_edge(v.x, v.y),
            vertical_edge(v.x, v.y),
            (torus || v.x > 0) ? horizontal_edge(wrap_x(v.x - 1), v.y) : std::nullopt,
            (torus || v.y > 0) ? vertical_edge(v.x, wrap_y(v.y - 1)) : std::nullopt,
        };
        for (auto &c : candidates) {
            if (c.has_value()) {
                v.edges.push_back(*c);
            }
        }
    }
}

int LatticeSpec::wrap_x(int x) const {
    return boundary_ == Boundary::toroidal ? ((x % width_) + width_) % width_ : x;
}

int LatticeSpec::wrap_y(int y) const {
    return boundary_ == Boundary::toroidal ? ((y % height_) + height_) % height_ : y;
}

std::optional<size_t> LatticeSpec::horizontal_edge(int x, int y) const {
    x = wrap_x(x);
    y = wrap_y(y);
    if (x < 0 || y < 0 || x >= width_ || y >= height_) {
        return std::nullopt;
    }
    size_t m = edge_lookup_[(y * width_ + x) * 2];
    return m == kNoEdge ? std::nullopt : std::optional<size_t>(m);
}

std::optional<size_t> LatticeSpec::vertical_edge(int x, int y) const {
    x = wrap_x(x);
    y = wrap_y(y);
    if (x < 0 || y < 0 || x >= width_ || y >= height_) {
        return std::nullopt;
    }
    size_t m = edge_lookup_[(y * width_ + x) * 2 + 1];
    return m == kNoEdge ? std::nullopt : std::optional<size_t>(m);
}

std::optional<size_t> LatticeSpec::vertex_at(int x, int y) const {
    x = wrap_x(x);
    y = wrap_y(y);
    if (x < 0 || y < 0 || x >= width_ || y >= height_) {
        return std::nullopt;
    }
    return static_cast<size_t>(y * width_ + x);
}

std::optional<size_t> LatticeSpec::face_at(int x, int y) const {
    x = wrap_x(x);
    y = wrap_y(y);
    const bool torus = boundary_ == Boundary::toroidal;
    const int fw = torus ? width_ : width_ - 1;
    const int fh = torus ? height_ : height_ - 1;
    if (x < 0 || y < 0 || x >= fw || y >= fh) {
        return std::nullopt;
    }
    return static_cast<size_t>(y * fw + x);
}

int LatticeSpec::face_sign(size_t face, size_t mode) const {
    const auto &b = faces_.at(face).boundary;
    for (size_t j = 0; j < 4; j++) {
        if (b[j] == mode) {
            return j % 2 == 0 ? +1 : -1;
        }
    }
    return 0;
}

std::vector<size_t> LatticeSpec::sites_of_edge(SiteKind kind, size_t mode) const {
    const auto &e = edges_.at(mode);
    if (kind == SiteKind::vertex) {
        return {e.vertices[0], e.vertices[1]};
    }
    return e.faces;
}

std::vector<size_t> LatticeSpec::edges_of_site(SiteKind kind, size_t site) const {
    if (kind == SiteKind::vertex) {
        return vertices_.at(site).edges;
    }
    const auto &b = faces_.at(site).boundary;
    return {b.begin(), b.end()};
}

std::optional<size_t> LatticeSpec::edge_between(SiteKind kind, size_t a, size_t b) const {
    for (size_t e : edges_of_site(kind, a)) {
        auto sites = sites_of_edge(kind, e);
        if (sites.size() == 2 && ((sites[0] == a && sites[1] == b) || (sites[0] == b && sites[1] == a))) {
            return e;
        }
    }
    return std::nullopt;
}

size_t LatticeSpec::across(SiteKind kind, size_t mode, size_t site) const {
    auto sites = sites_of_edge(kind, mode);
    if (sites.size() != 2) {
        throw std::invalid_argument("edge " + std::to_string(mode) + " lies on the boundary; nothing across it");
    }
    if (sites[0] == site) {
        return sites[1];
    }
    if (sites[1] == site) {
        return sites[0];
    }
    throw std::invalid_argument(
        "edge " + std::to_string(mode) + " does not touch site " + std::to_string(site));
}

std::pair<int, int> LatticeSpec::coords(SiteKind kind, size_t site) const {
    if (kind == SiteKind::vertex) {
        const auto &v = vertices_.at(site);
        return {v.x, v.y};
    }
    const auto &f = faces_.at(site);
    return {f.x, f.y};
}

int LatticeSpec::parity(SiteKind kind, size_t site) const {
    auto [x, y] = coords(kind, site);
    return (x + y) % 2 == 0 ? +1 : -1;
}

bool LatticeSpec::bipartite() const {
    return boundary_ == Boundary::planar || (width_ % 2 == 0 && height_ % 2 == 0);
}

LatticeSpec build_lattice(int width, int height, Boundary boundary) {
    return LatticeSpec(width, height, boundary);
}

std::string to_string(Boundary b) {
    return b == Boundary::toroidal ? "toroidal" : "planar";
}

Boundary parse_boundary(const std::string &text) {
    if (text == "toroidal" || text == "torus") {
        return Boundary::toroidal;
    }
    if (text == "planar") {
        return Boundary::planar;
    }
    throw std::invalid_argument("unknown boundary '" + text + "' (expected toroidal or planar)");
}

double SqueezingMap::at(size_t mode) const {
    auto it = overrides.find(mode);
    return it == overrides.end() ? default_r : it->second;
}

bool SqueezingMap::all_finite(size_t num_modes) const {
    for (size_t m = 0; m < num_modes; m++) {
        if (!std::isfinite(at(m))) {
            return false;
        }
    }
    return true;
}

double squeezing_damping(double r) {
    if (std::isinf(r) && r > 0) {
        return 0.0;
    }
    return std::exp(-2.0 * r);
}

void AdjacencyMatrix::validate() const {
    if (weights.rows() != weights.cols()) {
        throw std::invalid_argument("adjacency matrix is not square");
    }
    for (Eigen::Index i = 0; i < weights.rows(); i++) {
        if (weights(i, i) != 0.0) {
            throw std::invalid_argument("adjacency matrix has a self loop at " + std::to_string(i));
        }
        for (Eigen::Index j = i + 1; j < weights.cols(); j++) {
            if (weights(i, j) != weights(j, i)) {
                throw std::invalid_argument(
                    "adjacency matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        }
    }
}

ClusterGraph cluster_graph(const LatticeSpec &spec) {
    const size_t ne = spec.num_modes();
    const size_t nv = spec.num_vertices();
    const size_t nf = spec.num_faces();
    const size_t n = ne + nv + nf;
    ClusterGraph out;
    out.num_edge_modes = ne;
    out.adjacency.weights = Eigen::MatrixXd::Zero(n, n);
    auto link = [&](size_t a, size_t b) {
        out.adjacency.weights(a, b) = 1.0;
        out.adjacency.weights(b, a) = 1.0;
    };
    for (size_t v = 0; v < nv; v++) {
        for (size_t e : spec.vertex(v).edges) {
            link(ne + v, e);
        }
        out.pattern.measured.push_back({ne + v, Quadrature::momentum});
    }
    for (size_t f = 0; f < nf; f++) {
        for (size_t e : spec.face(f).boundary) {
            link(ne + nv + f, e);
        }
        out.pattern.measured.push_back({ne + nv + f, Quadrature::position});
    }
    for (size_t e = 0; e < ne; e++) {
        out.pattern.surviving.push_back(e);
    }
    out.pattern.fourier_on_survivors = true;
    return out;
}

std::vector<StabilizerGen> code_generators(const LatticeSpec &spec, const SqueezingMap &squeezing) {
    for (const auto &[mode, r] : squeezing.overrides) {
        if (mode >= spec.num_modes()) {
            throw std::invalid_argument("squeezing map names unknown mode " + std::to_string(mode));
        }
        if (std::isnan(r) || r < 0) {
            throw std::invalid_argument("squeezing for mode " + std::to_string(mode) + " must be >= 0");
        }
    }
    if (std::isnan(squeezing.default_r) || squeezing.default_r < 0) {
        throw std::invalid_argument("default squeezing must be >= 0");
    }

    std::vector<StabilizerGen> out;
    out.reserve(spec.num_vertices() + spec.num_faces());
    for (const auto &v : spec.vertices()) {
        StabilizerGen g{GeneratorKind::star, v.index, {}};
        for (size_t e : v.edges) {
            g.form.add(e, 0.0, 1.0);
        }
        out.push_back(std::move(g));
    }
    for (const auto &f : spec.faces()) {
        StabilizerGen g{GeneratorKind::plaquette, f.index, {}};
        for (size_t j = 0; j < 4; j++) {
            size_t e = f.boundary[j];
            double sign = j % 2 == 0 ? 1.0 : -1.0;
            g.form.add(e, sign, kI * sign * squeezing_damping(squeezing.at(e)));
        }
        out.push_back(std::move(g));
    }
    return out;
}

CommutationReport validate_code(
    const LatticeSpec &spec, const std::vector<StabilizerGen> &generators, double tolerance) {
    const size_t n = spec.num_modes();
    Eigen::MatrixXcd forms(generators.size(), 2 * n);
    for (size_t k = 0; k < generators.size(); k++) {
        forms.row(k) = kernels::to_dense(generators[k].form, n).transpose();
    }
    CommutationReport report;
    report.pairing = kernels::omp::pairing_matrix(forms);
    for (Eigen::Index i = 0; i < report.pairing.rows(); i++) {
        for (Eigen::Index j = i + 1; j < report.pairing.cols(); j++) {
            double a = std::abs(report.pairing(i, j));
            report.max_abs = std::max(report.max_abs, a);
            if (a > tolerance) {
                report.nonzero_pairs.emplace_back(i, j);
            }
        }
    }
    return report;
}

void write_lattice_file(std::ostream &out, const LatticeSpec &spec, const SqueezingMap &squeezing) {
    out << "# cvanyon lattice\n";
    out << "width " << spec.width() << "\n";
    out << "height " << spec.height() << "\n";
    out << "boundary " << to_string(spec.boundary()) << "\n";
    out << "r " << format_double(squeezing.default_r) << "\n";
    for (const auto &[mode, r] : squeezing.overrides) {
        out << "r[" << mode << "] " << format_double(r) << "\n";
    }
}

LatticeFile read_lattice_file(std::istream &in, const std::string &source_name) {
    std::optional<long> width;
    std::optional<long> height;
    Boundary boundary = Boundary::toroidal;
    SqueezingMap squeezing;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream words(line);
        std::string key;
        std::string value;
        std::string extra;
        if (!(words >> key)) {
            continue;
        }
        const std::string where = source_name + ":" + std::to_string(line_no);
        if (!(words >> value) || (words >> extra)) {
            throw std::invalid_argument(where + ": expected '<key> <value>'");
        }
        if (key == "width") {
            width = parse_int(value, where);
        } else if (key == "height") {
            height = parse_int(value, where);
        } else if (key == "boundary") {
            try {
                boundary = parse_boundary(value);
            } catch (const std::invalid_argument &ex) {
                throw std::invalid_argument(where + ": " + ex.what());
            }
        } else if (key == "r") {
            squeezing.default_r = parse_double(value, where);
        } else if (key.size() > 3 && key.starts_with("r[") && key.back() == ']') {
            long mode = parse_int(key.substr(2, key.size() - 3), where);
            if (mode < 0) {
                throw std::invalid_argument(where + ": negative mode index");
            }
            squeezing.overrides[static_cast<size_t>(mode)] = parse_double(value, where);
        } else {
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
        }
    }
    if (!width || !height) {
        throw std::invalid_argument(source_name + ": width and height are required");
    }
    LatticeFile result{build_lattice(static_cast<int>(*width), static_cast<int>(*height), boundary), squeezing};
    for (const auto &[mode, r] : squeezing.overrides) {
        if (mode >= result.spec.num_modes()) {
            throw std::invalid_argument(source_name + ": squeezing override for unknown mode " + std::to_string(mode));
        }
    }
    return result;
}

std::string describe_modes(const LatticeSpec &spec) {
    std::ostringstream out;
    out << "# " << spec.width() << "x" << spec.height() << " " << to_string(spec.boundary()) << ", "
        << spec.num_modes() << " modes, " << spec.num_vertices() << " vertices, " << spec.num_faces() << " faces\n";
    out << "mode,x,y,orientation,d,vertex_a,vertex_b,faces\n";
    for (const auto &e : spec.edges()) {
        out << e.index << "," << e.x << "," << e.y << ","
            << (e.orientation == Orientation::horizontal ? "horizontal" : "vertical") << ","
            << static_cast<int>(e.orientation) << "," << e.vertices[0] << "," << e.vertices[1] << ",";
        for (size_t k = 0; k < e.faces.size(); k++) {
            out << (k ? ";" : "") << e.faces[k];
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace cvanyon
