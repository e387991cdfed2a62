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

#include "cvanyon/gaussian.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "cvanyon/kernels.h"

namespace cvanyon {

namespace {

void check_mode(const GaussianGraphState &state, size_t mode) {
    if (mode >= state.num_modes()) {
        throw std::invalid_argument(
            "mode " + std::to_string(mode) + " out of range for a " + std::to_string(state.num_modes()) +
            "-mode state");
    }
}

double mean_product_sum(const GaussianGraphState &s) {
    return s.mean_x.dot(s.mean_p);
}

Eigen::MatrixXcd remove_index(const Eigen::MatrixXcd &m, Eigen::Index k) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXcd out(n - 1, n - 1);
    for (Eigen::Index i = 0, a = 0; i < n; i++) {
        if (i == k) {
            continue;
        }
        for (Eigen::Index j = 0, b = 0; j < n; j++) {
            if (j == k) {
                continue;
            }
            out(a, b++) = m(i, j);
        }
        a++;
    }
    return out;
}

Eigen::MatrixXd omega(size_t n) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    w.topRightCorner(n, n).setIdentity();
    w.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return w;
}

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string &tok) {
    double v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("snapshot: bad number '" + tok + "'");
    }
    return v;
}

}  // namespace

void GaussianGraphState::validate(double tolerance) const {
    const Eigen::Index n = graph.rows();
    if (graph.cols() != n || mean_x.size() != n || mean_p.size() != n) {
        throw std::invalid_argument("gaussian state: inconsistent dimensions");
    }
    if ((graph - graph.transpose()).cwiseAbs().maxCoeff() > tolerance * (1 + graph.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("gaussian state: graph is not symmetric");
    }
    if (n > 0) {
        Eigen::LLT<Eigen::MatrixXd> llt(graph.imag());
        if (llt.info() != Eigen::Success) {
            throw std::invalid_argument("gaussian state: Im(Z) is not positive definite");
        }
    }
}

GaussianGraphState graph_from_cluster(const AdjacencyMatrix &adjacency, std::span<const double> squeezing) {
    adjacency.validate();
    const size_t n = adjacency.size();
    if (squeezing.size() != n) {
        throw std::invalid_argument("graph_from_cluster: one squeezing value per node required");
    }
    GaussianGraphState s;
    s.graph = adjacency.weights.cast<cplx>();
    for (size_t k = 0; k < n; k++) {
        double r = squeezing[k];
        if (!std::isfinite(r) || r < 0) {
            throw std::invalid_argument("graph_from_cluster: squeezing must be finite and >= 0");
        }
        s.graph(k, k) += kI * std::exp(-2 * r);
    }
    s.mean_x = Eigen::VectorXd::Zero(n);
    s.mean_p = Eigen::VectorXd::Zero(n);
    return s;
}

GaussianGraphState vacuum_state(size_t num_modes) {
    GaussianGraphState s;
    s.graph = kI * Eigen::MatrixXcd::Identity(num_modes, num_modes);
    s.mean_x = Eigen::VectorXd::Zero(num_modes);
    s.mean_p = Eigen::VectorXd::Zero(num_modes);
    return s;
}

CovarianceMoments to_covariance(const GaussianGraphState &state) {
    const size_t n = state.num_modes();
    CovarianceMoments m;
    m.sigma = n ? kernels::omp::covariance_from_graph(state.graph) : Eigen::MatrixXd(0, 0);
    m.mean.resize(2 * n);
    m.mean << state.mean_x, state.mean_p;
    return m;
}

GaussianGraphState from_covariance(const CovarianceMoments &moments, cplx log_scalar) {
    const Eigen::Index n = static_cast<Eigen::Index>(moments.num_modes());
    if (moments.sigma.rows() != 2 * n || moments.sigma.cols() != 2 * n) {
        throw std::invalid_argument("from_covariance: dimension mismatch");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(moments.sigma.topLeftCorner(n, n));
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("from_covariance: position block is not positive definite");
    }
    Eigen::MatrixXd sxx_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::MatrixXd u = 0.5 * sxx_inv;
    Eigen::MatrixXd v = sxx_inv * moments.sigma.topRightCorner(n, n);
    GaussianGraphState s;
    s.graph = Eigen::MatrixXcd(n, n);
    s.graph.real() = 0.5 * (v + v.transpose());
    s.graph.imag() = 0.5 * (u + u.transpose());
    s.mean_x = moments.mean.head(n);
    s.mean_p = moments.mean.tail(n);
    s.log_scalar = log_scalar;
    return s;
}

void displace(GaussianGraphState &state, size_t mode, DisplacementKind kind, double amount) {
    check_mode(state, mode);
    if (!std::isfinite(amount)) {
        throw std::invalid_argument("displacement amount must be finite");
    }
    if (kind == DisplacementKind::X) {
        // X(s) Z(t) X(s0) = e^{-ist} Z(t) X(s + s0)
        state.log_scalar += -kI * amount * state.mean_p(mode);
        state.mean_x(mode) += amount;
    } else {
        state.mean_p(mode) += amount;
    }
}

Eigen::MatrixXd symplectic_matrix(const GaussianGate &gate, size_t n) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SqueezeGate>) {
                s(n + g.mode, g.mode) = g.eta;
            } else if constexpr (std::is_same_v<T, FourierGate>) {
                s(g.mode, g.mode) = 0;
                s(n + g.mode, n + g.mode) = 0;
                s(g.mode, n + g.mode) = -1;
                s(n + g.mode, g.mode) = 1;
            } else {
                s(n + g.a, g.b) = 1;
                s(n + g.b, g.a) = 1;
            }
        },
        gate);
    return s;
}

void apply_gate(GaussianGraphState &state, const GaussianGate &gate) {
    const double before = mean_product_sum(state);
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, SqueezeGate>) {
                check_mode(state, g.mode);
                if (!std::isfinite(g.eta)) {
                    throw std::invalid_argument("squeeze strength must be finite");
                }
                state.graph(g.mode, g.mode) += g.eta;
                state.mean_p(g.mode) += g.eta * state.mean_x(g.mode);
            } else if constexpr (std::is_same_v<T, FourierGate>) {
                check_mode(state, g.mode);
                const Eigen::Index k = static_cast<Eigen::Index>(g.mode);
                const cplx pivot = state.graph(k, k);
                // Im Z_kk > 0 for any valid state, so the pivot never vanishes.
                Eigen::VectorXcd col = state.graph.col(k);
                Eigen::MatrixXcd &z = state.graph;
                z -= col * col.transpose() / pivot;
                z.col(k) = -col / pivot;
                z.row(k) = -col.transpose() / pivot;
                z(k, k) = -1.0 / pivot;
                double x = state.mean_x(k);
                state.mean_x(k) = -state.mean_p(k);
                state.mean_p(k) = x;
            } else {
                check_mode(state, g.a);
                check_mode(state, g.b);
                if (g.a == g.b) {
                    throw std::invalid_argument("C_Z needs two distinct modes");
                }
                state.graph(g.a, g.b) += 1.0;
                state.graph(g.b, g.a) += 1.0;
                state.mean_p(g.a) += state.mean_x(g.b);
                state.mean_p(g.b) += state.mean_x(g.a);
            }
        },
        gate);
    const double after = mean_product_sum(state);
    state.log_scalar += 0.5 * kI * (before - after);
}

void apply_gate(CovarianceMoments &moments, const GaussianGate &gate) {
    Eigen::MatrixXd s = symplectic_matrix(gate, moments.num_modes());
    moments.sigma = s * moments.sigma * s.transpose();
    moments.mean = s * moments.mean;
}

namespace {

MeasurementRecord measure_impl(
    GaussianGraphState &state, size_t mode, Quadrature basis, std::mt19937_64 *rng, double forced) {
    check_mode(state, mode);
    const Eigen::Index n = static_cast<Eigen::Index>(state.num_modes());
    const Eigen::Index k = static_cast<Eigen::Index>(mode);
    const Eigen::Index q = basis == Quadrature::position ? k : n + k;
    CovarianceMoments m = to_covariance(state);
    double outcome = forced;
    if (rng != nullptr) {
        std::normal_distribution<double> dist(m.mean(q), std::sqrt(m.sigma(q, q)));
        outcome = dist(*rng);
    }
    if (!std::isfinite(outcome)) {
        throw std::invalid_argument("homodyne outcome must be finite");
    }
    auto cond = kernels::omp::condition_on_quadrature(m.sigma, m.mean, q, outcome);

    if (basis == Quadrature::position) {
        state.graph = remove_index(state.graph, k);
    } else {
        const cplx pivot = state.graph(k, k);
        Eigen::VectorXcd col = state.graph.col(k);
        Eigen::MatrixXcd z = state.graph - col * col.transpose() / pivot;
        state.graph = remove_index(z, k);
    }
    state.mean_x = cond.mean.head(n - 1);
    state.mean_p = cond.mean.tail(n - 1);
    return MeasurementRecord{mode, basis, outcome};
}

}  // namespace

MeasurementRecord measure_homodyne(GaussianGraphState &state, size_t mode, Quadrature basis, std::mt19937_64 &rng) {
    return measure_impl(state, mode, basis, &rng, 0.0);
}

MeasurementRecord measure_homodyne(GaussianGraphState &state, size_t mode, Quadrature basis, double outcome) {
    if (!std::isfinite(outcome)) {
        throw std::invalid_argument("forced homodyne outcome must be finite");
    }
    return measure_impl(state, mode, basis, nullptr, outcome);
}

void condition_moments(CovarianceMoments &moments, size_t mode, Quadrature basis, double outcome) {
    const Eigen::Index n = static_cast<Eigen::Index>(moments.num_modes());
    const Eigen::Index q = static_cast<Eigen::Index>(mode) + (basis == Quadrature::momentum ? n : 0);
    auto cond = kernels::omp::condition_on_quadrature(moments.sigma, moments.mean, q, outcome);
    moments.sigma = std::move(cond.sigma);
    moments.mean = std::move(cond.mean);
}

std::vector<NullifierStats> nullifier_stats(const CovarianceMoments &moments, std::span<const LinearForm> forms) {
    const size_t n = moments.num_modes();
    Eigen::MatrixXcd dense(forms.size(), 2 * n);
    std::vector<cplx> offsets;
    offsets.reserve(forms.size());
    for (size_t a = 0; a < forms.size(); a++) {
        dense.row(a) = kernels::to_dense(forms[a], n).transpose();
        offsets.push_back(forms[a].offset);
    }
    auto batch = kernels::omp::nullifier_moments(moments.sigma, moments.mean, dense, offsets);
    std::vector<NullifierStats> out(forms.size());
    for (size_t a = 0; a < forms.size(); a++) {
        out[a] = {batch.expectation[a], batch.variance[a]};
    }
    return out;
}

std::vector<NullifierStats> nullifier_stats(const GaussianGraphState &state, std::span<const LinearForm> forms) {
    return nullifier_stats(to_covariance(state), forms);
}

NullifierStats nullifier_stats(const GaussianGraphState &state, const LinearForm &form) {
    return nullifier_stats(state, std::span<const LinearForm>(&form, 1))[0];
}

double purity_log_det(const CovarianceMoments &moments) {
    Eigen::LLT<Eigen::MatrixXd> llt(2.0 * moments.sigma);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("covariance is not positive definite");
    }
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

double min_uncertainty_eigenvalue(const CovarianceMoments &moments) {
    const size_t n = moments.num_modes();
    Eigen::MatrixXcd h = moments.sigma.cast<cplx>() + 0.5 * kI * omega(n).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

std::vector<double> symplectic_eigenvalues(const CovarianceMoments &moments) {
    const size_t n = moments.num_modes();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> root(moments.sigma);
    Eigen::MatrixXd half = root.operatorSqrt();
    Eigen::MatrixXcd h = kI * (half * omega(n) * half).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    // Eigenvalues come in +-nu pairs, sorted ascending; keep the upper half.
    std::vector<double> out;
    for (Eigen::Index i = static_cast<Eigen::Index>(n); i < static_cast<Eigen::Index>(2 * n); i++) {
        out.push_back(es.eigenvalues()(i));
    }
    return out;
}

GaussianGraphState prepare_code_state(const LatticeSpec &spec, const SqueezingMap &squeezing, double ancilla_r) {
    const ClusterGraph cluster = cluster_graph(spec);
    const size_t total = cluster.adjacency.size();
    std::vector<double> r(total, ancilla_r);
    for (size_t e = 0; e < cluster.num_edge_modes; e++) {
        r[e] = squeezing.at(e);
    }
    for (size_t k = 0; k < total; k++) {
        if (!std::isfinite(r[k])) {
            throw std::invalid_argument(
                "the numeric engine needs finite squeezing; mode " + std::to_string(k) + " has r = inf");
        }
    }
    GaussianGraphState state = graph_from_cluster(cluster.adjacency, r);
    if (cluster.pattern.fourier_on_survivors) {
        for (size_t e : cluster.pattern.surviving) {
            apply_gate(state, FourierGate{e});
        }
    }
    // Ancillas sit above every edge index; removing the highest first keeps
    // the remaining indices valid.
    auto measured = cluster.pattern.measured;
    std::sort(measured.begin(), measured.end(), [](const auto &a, const auto &b) { return a.mode > b.mode; });
    for (const auto &m : measured) {
        measure_homodyne(state, m.mode, m.basis, 0.0);
    }
    return state;
}

void write_snapshot(std::ostream &out, const GaussianGraphState &state) {
    const size_t n = state.num_modes();
    out << "# cvanyon gaussian state\n";
    out << "modes " << n << "\n";
    out << "log_scalar " << fmt(state.log_scalar.real()) << " " << fmt(state.log_scalar.imag()) << "\n";
    out << "mean_x";
    for (size_t i = 0; i < n; i++) {
        out << " " << fmt(state.mean_x(i));
    }
    out << "\nmean_p";
    for (size_t i = 0; i < n; i++) {
        out << " " << fmt(state.mean_p(i));
    }
    out << "\ngraph\n";
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            out << (j ? " " : "") << fmt(state.graph(i, j).real()) << " " << fmt(state.graph(i, j).imag());
        }
        out << "\n";
    }
}

GaussianGraphState read_snapshot(std::istream &in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            tokens.push_back(tok);
        }
    }
    size_t pos = 0;
    auto next = [&]() -> const std::string & {
        if (pos >= tokens.size()) {
            throw std::invalid_argument("snapshot: unexpected end of input");
        }
        return tokens[pos++];
    };
    auto expect = [&](const char *key) {
        if (next() != key) {
            throw std::invalid_argument(std::string("snapshot: expected '") + key + "'");
        }
    };
    expect("modes");
    double nd = parse_number(next());
    if (nd < 0 || nd != std::floor(nd)) {
        throw std::invalid_argument("snapshot: bad mode count");
    }
    const size_t n = static_cast<size_t>(nd);
    GaussianGraphState s;
    expect("log_scalar");
    double re = parse_number(next());
    s.log_scalar = cplx(re, parse_number(next()));
    s.mean_x.resize(n);
    s.mean_p.resize(n);
    s.graph.resize(n, n);
    expect("mean_x");
    for (size_t i = 0; i < n; i++) {
        s.mean_x(i) = parse_number(next());
    }
    expect("mean_p");
    for (size_t i = 0; i < n; i++) {
        s.mean_p(i) = parse_number(next());
    }
    expect("graph");
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            double a = parse_number(next());
            s.graph(i, j) = cplx(a, parse_number(next()));
        }
    }
    if (pos != tokens.size()) {
        throw std::invalid_argument("snapshot: trailing data");
    }
    s.validate();
    return s;
}

void write_moments_csv(std::ostream &out, const CovarianceMoments &moments) {
    const size_t n = moments.num_modes();
    auto name = [&](size_t i) { return (i < n ? "x" : "p") + std::to_string(i % n); };
    out << "quadrature,mean";
    for (size_t j = 0; j < 2 * n; j++) {
        out << "," << name(j);
    }
    out << "\n";
    for (size_t i = 0; i < 2 * n; i++) {
        out << name(i) << "," << fmt(moments.mean(i));
        for (size_t j = 0; j < 2 * n; j++) {
            out << "," << fmt(moments.sigma(i, j));
        }
        out << "\n";
    }
}

}  // namespace cvanyon
