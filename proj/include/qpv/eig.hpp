// Copyright 2026 The qpv-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Hermitian eigendecomposition by cyclic Jacobi rotations. At the dimensions
 * this library works with (side <= 64) Jacobi is accurate, simple and fast
 * enough that no external solver is needed.
 */

#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qpv/matrix.hpp"

namespace qpv {

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    CMat eigenvectors;                // columns; h = V diag(eigenvalues) V^dagger
};

namespace detail {

inline double off_diag_fro(const CMat &h) {
    double s = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) {
            if (i != j) {
                s += std::norm(h(i, j));
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace detail

/**
 * Eigendecomposition of a Hermitian matrix. The input must be Hermitian to
 * within 1e-10 (max entrywise deviation, relative to max(1, |h|_max));
 * otherwise std::invalid_argument is thrown. Sweeps run until the
 * off-diagonal Frobenius mass drops below 1e-13 * |h|_F.
 */
inline HermitianEigen hermitian_eigen(const CMat &h) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("hermitian_eigen: matrix not square");
    }
    if (!h.is_hermitian(1e-10 * std::max(1.0, h.max_abs()))) {
        throw std::invalid_argument("hermitian_eigen: matrix not Hermitian");
    }
    const std::size_t n = h.rows();
    CMat a = h.hermitized();
    CMat v = CMat::identity(n);

    const double fro = a.fro_norm();
    const double stop = std::max(1e-13 * fro, 1e-300);
    for (int sweep = 0; sweep < 64 && detail::off_diag_fro(a) > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx g = a(p, q);
                const double absg = std::abs(g);
                if (absg <= 1e-300) {
                    continue;
                }
                // Phase out g, then apply the standard real Jacobi rotation.
                const cplx f = g / absg;
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * absg);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx fbar = std::conj(f);

                // Columns: a <- a J with J(p,p)=c, J(p,q)=s, J(q,p)=-s fbar, J(q,q)=c fbar.
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx hp = a(r, p), hq = a(r, q);
                    a(r, p) = c * hp - s * fbar * hq;
                    a(r, q) = s * hp + c * fbar * hq;
                }
                // Rows: a <- J^dagger a.
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx hp = a(p, col), hq = a(q, col);
                    a(p, col) = c * hp - s * f * hq;
                    a(q, col) = s * hp + c * f * hq;
                }
                // Accumulate eigenvectors.
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vp = v(r, p), vq = v(r, q);
                    v(r, p) = c * vp - s * fbar * vq;
                    v(r, q) = s * vp + c * fbar * vq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i).real();
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

inline double min_eigenvalue(const CMat &h) {
    return hermitian_eigen(h).eigenvalues.front();
}

inline double max_eigenvalue(const CMat &h) {
    return hermitian_eigen(h).eigenvalues.back();
}

/// Projection onto the positive semidefinite cone (negative eigenvalues clipped).
inline CMat psd_clip(const CMat &h) {
    const HermitianEigen e = hermitian_eigen(h);
    const std::size_t n = h.rows();
    CMat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = e.eigenvalues[k];
        if (lam <= 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = e.eigenvectors(i, k) * lam;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vik * std::conj(e.eigenvectors(j, k));
            }
        }
    }
    return out;
}

}  // namespace qpv
