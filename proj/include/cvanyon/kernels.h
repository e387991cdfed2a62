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

#ifndef CVANYON_KERNELS_H
#define CVANYON_KERNELS_H

#include <vector>

#include <Eigen/Dense>

#include "cvanyon/linear_form.h"

/// Dense data-parallel kernels. Each exists as a plain serial reference and
/// an OpenMP version with the same summation order, so the two agree to the
/// last bit on any thread count.
namespace cvanyon::kernels {

/// Coefficient vector [x_0 .. x_{n-1}, p_0 .. p_{n-1}]. Throws when the form
/// touches a mode >= n.
Eigen::VectorXcd to_dense(const LinearForm &form, size_t n);

struct MomentBatch {
    std::vector<cplx> expectation;
    std::vector<cplx> variance;
};

/// Conditioned moments after measuring one quadrature. The measured mode is
/// removed from both the covariance and the mean.
struct Conditioned {
    Eigen::MatrixXd sigma;
    Eigen::VectorXd mean;
};

namespace serial {

/// pairing(a, b) = sum_j (x_a p_b - p_a x_b) over rows of `forms`.
Eigen::MatrixXcd pairing_matrix(const Eigen::MatrixXcd &forms);

/// For each row f: expectation offset + f . mean, variance f^T sigma f
/// (complex-bilinear, no conjugation).
MomentBatch nullifier_moments(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, const Eigen::MatrixXcd &forms,
    const std::vector<cplx> &offsets);

/// Pure-state covariance of the graph Z = V + iU.
Eigen::MatrixXd covariance_from_graph(const Eigen::MatrixXcd &z);

/// Gaussian conditioning on quadrature index q (q < n: position of mode q,
/// else momentum of mode q - n) taking value `outcome`.
Conditioned condition_on_quadrature(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, Eigen::Index q, double outcome);

}  // namespace serial

namespace omp {

Eigen::MatrixXcd pairing_matrix(const Eigen::MatrixXcd &forms);
MomentBatch nullifier_moments(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, const Eigen::MatrixXcd &forms,
    const std::vector<cplx> &offsets);
Eigen::MatrixXd covariance_from_graph(const Eigen::MatrixXcd &z);
Conditioned condition_on_quadrature(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, Eigen::Index q, double outcome);

}  // namespace omp

}  // namespace cvanyon::kernels

#endif
