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

#include "cvanyon/kernels.h"

#include <stdexcept>
#include <string>

namespace cvanyon::kernels {

Eigen::VectorXcd to_dense(const LinearForm &form, size_t n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n);
    for (const auto &[mode, c] : form.terms) {
        if (mode >= n) {
            throw std::invalid_argument("form touches mode " + std::to_string(mode) + " outside a " +
                                        std::to_string(n) + "-mode state");
        }
        v(mode) = c.x;
        v(n + mode) = c.p;
    }
    return v;
}

namespace {

template <bool Parallel>
Eigen::MatrixXcd pairing_matrix_impl(const Eigen::MatrixXcd &forms) {
    const Eigen::Index g = forms.rows();
    const Eigen::Index n = forms.cols() / 2;
    Eigen::MatrixXcd out(g, g);
#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (Eigen::Index a = 0; a < g; a++) {
        for (Eigen::Index b = 0; b < g; b++) {
            cplx acc{};
            for (Eigen::Index j = 0; j < n; j++) {
                acc += forms(a, j) * forms(b, n + j) - forms(a, n + j) * forms(b, j);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

template <bool Parallel>
MomentBatch nullifier_moments_impl(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, const Eigen::MatrixXcd &forms,
    const std::vector<cplx> &offsets) {
    const Eigen::Index g = forms.rows();
    const Eigen::Index d = forms.cols();
    if (sigma.rows() != d || mean.size() != d || static_cast<Eigen::Index>(offsets.size()) != g) {
        throw std::invalid_argument("nullifier_moments: dimension mismatch");
    }
    MomentBatch out;
    out.expectation.resize(g);
    out.variance.resize(g);
#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (Eigen::Index a = 0; a < g; a++) {
        // Only the nonzero coefficients matter; forms are sparse in practice.
        std::vector<Eigen::Index> support;
        for (Eigen::Index j = 0; j < d; j++) {
            if (forms(a, j) != 0.0) {
                support.push_back(j);
            }
        }
        cplx e = offsets[a];
        cplx v{};
        for (Eigen::Index j : support) {
            e += forms(a, j) * mean(j);
            cplx row{};
            for (Eigen::Index k : support) {
                row += sigma(j, k) * forms(a, k);
            }
            v += forms(a, j) * row;
        }
        out.expectation[a] = e;
        out.variance[a] = v;
    }
    return out;
}

template <bool Parallel>
Eigen::MatrixXd covariance_from_graph_impl(const Eigen::MatrixXcd &z) {
    const Eigen::Index n = z.rows();
    if (z.cols() != n) {
        throw std::invalid_argument("graph matrix is not square");
    }
    const Eigen::MatrixXd v = z.real();
    const Eigen::MatrixXd u = z.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(u);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("Im(Z) is not positive definite");
    }
    const Eigen::MatrixXd u_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));

    Eigen::MatrixXd w(n, n);  // U^-1 V
#pragma omp parallel for if (Parallel)
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            double acc = 0;
            for (Eigen::Index k = 0; k < n; k++) {
                acc += u_inv(i, k) * v(k, j);
            }
            w(i, j) = acc;
        }
    }

    Eigen::MatrixXd sigma(2 * n, 2 * n);
#pragma omp parallel for if (Parallel)
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            double vuv = 0;
            for (Eigen::Index k = 0; k < n; k++) {
                vuv += v(i, k) * w(k, j);
            }
            sigma(i, j) = 0.5 * u_inv(i, j);
            sigma(i, n + j) = 0.5 * w(i, j);
            sigma(n + j, i) = 0.5 * w(i, j);
            sigma(n + i, n + j) = 0.5 * (u(i, j) + vuv);
        }
    }
    // Symmetrize the blocks that are symmetric only up to rounding.
    Eigen::MatrixXd sym = 0.5 * (sigma + sigma.transpose());
    return sym;
}

template <bool Parallel>
Conditioned condition_impl(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, Eigen::Index q, double outcome) {
    const Eigen::Index d = sigma.rows();
    const Eigen::Index n = d / 2;
    if (q < 0 || q >= d || mean.size() != d) {
        throw std::invalid_argument("condition_on_quadrature: bad index or dimensions");
    }
    const Eigen::Index mode = q % n;
    const double s_qq = sigma(q, q);
    if (!(s_qq > 0)) {
        throw std::invalid_argument("measured quadrature has non-positive variance");
    }
    std::vector<Eigen::Index> keep;
    keep.reserve(d - 2);
    for (Eigen::Index i = 0; i < d; i++) {
        if (i != mode && i != n + mode) {
            keep.push_back(i);
        }
    }
    const Eigen::Index k = static_cast<Eigen::Index>(keep.size());
    Conditioned out{Eigen::MatrixXd(k, k), Eigen::VectorXd(k)};
    const double shift = outcome - mean(q);
#pragma omp parallel for if (Parallel)
    for (Eigen::Index a = 0; a < k; a++) {
        const Eigen::Index i = keep[a];
        out.mean(a) = mean(i) + sigma(i, q) / s_qq * shift;
        for (Eigen::Index b = 0; b < k; b++) {
            const Eigen::Index j = keep[b];
            out.sigma(a, b) = sigma(i, j) - sigma(i, q) * sigma(q, j) / s_qq;
        }
    }
    return out;
}

}  // namespace

namespace serial {

Eigen::MatrixXcd pairing_matrix(const Eigen::MatrixXcd &forms) {
    return pairing_matrix_impl<false>(forms);
}

MomentBatch nullifier_moments(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, const Eigen::MatrixXcd &forms,
    const std::vector<cplx> &offsets) {
    return nullifier_moments_impl<false>(sigma, mean, forms, offsets);
}

Eigen::MatrixXd covariance_from_graph(const Eigen::MatrixXcd &z) {
    return covariance_from_graph_impl<false>(z);
}

Conditioned condition_on_quadrature(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, Eigen::Index q, double outcome) {
    return condition_impl<false>(sigma, mean, q, outcome);
}

}  // namespace serial

namespace omp {

Eigen::MatrixXcd pairing_matrix(const Eigen::MatrixXcd &forms) {
    return pairing_matrix_impl<true>(forms);
}

MomentBatch nullifier_moments(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, const Eigen::MatrixXcd &forms,
    const std::vector<cplx> &offsets) {
    return nullifier_moments_impl<true>(sigma, mean, forms, offsets);
}

Eigen::MatrixXd covariance_from_graph(const Eigen::MatrixXcd &z) {
    return covariance_from_graph_impl<true>(z);
}

Conditioned condition_on_quadrature(
    const Eigen::MatrixXd &sigma, const Eigen::VectorXd &mean, Eigen::Index q, double outcome) {
    return condition_impl<true>(sigma, mean, q, outcome);
}

}  // namespace omp

}  // namespace cvanyon::kernels
