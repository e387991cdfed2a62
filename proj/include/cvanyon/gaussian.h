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

#ifndef CVANYON_GAUSSIAN_H
#define CVANYON_GAUSSIAN_H

#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cvanyon/clifford.h"
#include "cvanyon/lattice.h"
#include "cvanyon/linear_form.h"

namespace cvanyon {

/// Pure Gaussian state
///
///     e^{log_scalar} prod_j Z_j(mean_p[j]) X_j(mean_x[j]) |phi_Z>
///
/// where |phi_Z> is the zero-mean state annihilated by p - Z x, Z = V + iU,
/// U positive definite. log_scalar is the scalar of that canonical form and
/// picks up the phases produced by reordering displacements and gates.
struct GaussianGraphState {
    Eigen::MatrixXcd graph;
    Eigen::VectorXd mean_x;
    Eigen::VectorXd mean_p;
    cplx log_scalar{};

    size_t num_modes() const { return static_cast<size_t>(graph.rows()); }
    /// Throws when dimensions disagree, Z is not symmetric, or Im Z is not
    /// positive definite.
    void validate(double tolerance = 1e-9) const;
};

/// Ordering x_0..x_{n-1}, p_0..p_{n-1}; vacuum variance 1/2.
struct CovarianceMoments {
    Eigen::MatrixXd sigma;
    Eigen::VectorXd mean;

    size_t num_modes() const { return static_cast<size_t>(mean.size() / 2); }
};

struct MeasurementRecord {
    size_t mode;
    Quadrature basis;
    double outcome;
};

enum class DisplacementKind { X, Z };


/// Z = A + i diag(e^{-2 r_k}); means and log_scalar zero.
GaussianGraphState graph_from_cluster(const AdjacencyMatrix &adjacency, std::span<const double> squeezing);
GaussianGraphState vacuum_state(size_t num_modes);

CovarianceMoments to_covariance(const GaussianGraphState &state);
/// Inverse of to_covariance for pure states: U = sigma_xx^-1 / 2,
/// V = sigma_xx^-1 sigma_xp.
GaussianGraphState from_covariance(const CovarianceMoments &moments, cplx log_scalar = {});

void displace(GaussianGraphState &state, size_t mode, DisplacementKind kind, double amount);

void apply_gate(GaussianGraphState &state, const GaussianGate &gate);

/// Heisenberg action on the quadrature vector: after the gate,
/// (x, p) -> S (x, p) for the first moments and sigma -> S sigma S^T.
Eigen::MatrixXd symplectic_matrix(const GaussianGate &gate, size_t num_modes);

/// Covariance-domain reference for apply_gate.
void apply_gate(CovarianceMoments &moments, const GaussianGate &gate);

/// Samples the outcome from the Born distribution.
MeasurementRecord measure_homodyne(GaussianGraphState &state, size_t mode, Quadrature basis, std::mt19937_64 &rng);
MeasurementRecord measure_homodyne(GaussianGraphState &state, size_t mode, Quadrature basis, double outcome);

/// Covariance-domain reference for measure_homodyne.
void condition_moments(CovarianceMoments &moments, size_t mode, Quadrature basis, double outcome);

struct NullifierStats {
    cplx expectation;
    cplx variance;
};

NullifierStats nullifier_stats(const GaussianGraphState &state, const LinearForm &form);
std::vector<NullifierStats> nullifier_stats(const GaussianGraphState &state, std::span<const LinearForm> forms);
std::vector<NullifierStats> nullifier_stats(const CovarianceMoments &moments, std::span<const LinearForm> forms);

/// log det(2 sigma); zero for a pure state.
double purity_log_det(const CovarianceMoments &moments);
/// Smallest eigenvalue of sigma + (i/2) Omega.
double min_uncertainty_eigenvalue(const CovarianceMoments &moments);
std::vector<double> symplectic_eigenvalues(const CovarianceMoments &moments);

/// The code ground state on the edge modes.
///
/// Builds the cluster of cluster_graph(spec) with edge squeezing from
/// `squeezing` and ancilla squeezing `ancilla_r`, Fourier transforms the
/// edges, then measures the ancillas with all outcomes forced to zero. The
/// Fourier gates act on modes disjoint from the measured ones, so this
/// equals measuring first; this order keeps every Schur pivot away from zero.
GaussianGraphState prepare_code_state(const LatticeSpec &spec, const SqueezingMap &squeezing, double ancilla_r);
inline GaussianGraphState prepare_code_state(const LatticeSpec &spec, const SqueezingMap &squeezing) {
    return prepare_code_state(spec, squeezing, squeezing.default_r);
}

/// Text snapshot: `modes N`, `log_scalar re im`, `mean_x ...`, `mean_p ...`,
/// then `graph` followed by N rows of re/im pairs. Round-trips exactly.
void write_snapshot(std::ostream &out, const GaussianGraphState &state);
GaussianGraphState read_snapshot(std::istream &in);

/// One row per quadrature: name, mean, then the covariance row.
void write_moments_csv(std::ostream &out, const CovarianceMoments &moments);

}  // namespace cvanyon

#endif
