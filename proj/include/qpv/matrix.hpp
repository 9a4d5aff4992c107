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
 * Dense complex matrices and tensor-factor bookkeeping. CMat is a plain
 * row-major rectangular matrix; Operator refines it to a square matrix
 * tagged with an ordered list of tensor-factor dimensions, which is the
 * carrier for states, measurement elements and certificates throughout
 * the library.
 */

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpv {

using cplx = std::complex<double>;

class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx> &data() const { return a_; }

    CMat adjoint() const {
        CMat m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(j, i) = std::conj((*this)(i, j));
            }
        }
        return m;
    }

    CMat transpose() const {
        CMat m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(j, i) = (*this)(i, j);
            }
        }
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx &v : a_) {
            m = std::max(m, std::abs(v));
        }
        return m;
    }

    double fro_norm() const {
        double s = 0.0;
        for (const cplx &v : a_) {
            s += std::norm(v);
        }
        return std::sqrt(s);
    }

    bool is_hermitian(double tol) const {
        if (rows_ != cols_) {
            return false;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i; j < cols_; ++j) {
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    /// (A + A^dagger)/2. Requires a square matrix.
    CMat hermitized() const {
        CMat m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(i, j) = ((*this)(i, j) + std::conj((*this)(j, i))) * 0.5;
            }
        }
        return m;
    }

    CMat &operator+=(const CMat &o) {
        for (std::size_t i = 0; i < a_.size(); ++i) {
            a_[i] += o.a_[i];
        }
        return *this;
    }
    CMat &operator-=(const CMat &o) {
        for (std::size_t i = 0; i < a_.size(); ++i) {
            a_[i] -= o.a_[i];
        }
        return *this;
    }
    CMat &operator*=(cplx s) {
        for (cplx &v : a_) {
            v *= s;
        }
        return *this;
    }

    friend CMat operator+(CMat a, const CMat &b) { return a += b; }
    friend CMat operator-(CMat a, const CMat &b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat &a, const CMat &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("CMat multiply: shape mismatch");
        }
        CMat c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    /// Determinant via LU with partial pivoting.
    cplx det() const {
        if (rows_ != cols_) {
            throw std::invalid_argument("det: matrix not square");
        }
        CMat lu = *this;
        const std::size_t n = rows_;
        cplx d = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) {
                    piv = i;
                }
            }
            if (std::abs(lu(piv, k)) == 0.0) {
                return 0.0;
            }
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(lu(k, j), lu(piv, j));
                }
                d = -d;
            }
            d *= lu(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const cplx f = lu(i, k) / lu(k, k);
                for (std::size_t j = k; j < n; ++j) {
                    lu(i, j) -= f * lu(k, j);
                }
            }
        }
        return d;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

inline CMat kron(const CMat &a, const CMat &b) {
    CMat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return c;
}

inline double max_abs_diff(const CMat &a, const CMat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

/// Real part of the Hilbert-Schmidt inner product <a,b> = tr(a^dagger b).
inline double hs_inner(const CMat &a, const CMat &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            s += (std::conj(a(i, j)) * b(i, j)).real();
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Multi-index helpers (row-major: the last factor varies fastest).

inline std::vector<std::size_t> unravel(std::size_t idx, const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> digits(dims.size());
    for (std::size_t f = dims.size(); f-- > 0;) {
        digits[f] = idx % dims[f];
        idx /= dims[f];
    }
    return digits;
}

inline std::size_t ravel(const std::vector<std::size_t> &digits, const std::vector<std::size_t> &dims) {
    std::size_t idx = 0;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        idx = idx * dims[f] + digits[f];
    }
    return idx;
}

/**
 * A square complex matrix together with the ordered list of tensor-factor
 * dimensions whose product equals the matrix side.
 */
class Operator {
  public:
    Operator() = default;

    Operator(CMat m, std::vector<std::size_t> dims) : mat_(std::move(m)), dims_(std::move(dims)) {
        if (mat_.rows() != mat_.cols()) {
            throw std::invalid_argument("Operator: matrix must be square");
        }
        if (dims_.empty()) {
            throw std::invalid_argument("Operator: factor list must be non-empty");
        }
        std::size_t prod = 1;
        for (std::size_t d : dims_) {
            if (d < 1) {
                throw std::invalid_argument("Operator: factors must be >= 1");
            }
            prod *= d;
        }
        if (prod != mat_.rows()) {
            throw std::invalid_argument("Operator: product of dims (" + std::to_string(prod) +
                                        ") != matrix side (" + std::to_string(mat_.rows()) + ")");
        }
    }

    const CMat &mat() const { return mat_; }
    CMat &mat() { return mat_; }
    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t dim() const { return mat_.rows(); }
    std::size_t num_factors() const { return dims_.size(); }

    cplx operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  private:
    CMat mat_;
    std::vector<std::size_t> dims_;
};

inline Operator kron(const Operator &a, const Operator &b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return Operator(kron(a.mat(), b.mat()), std::move(dims));
}

inline void check_factor_indices(const Operator &op, const std::vector<std::size_t> &fs) {
    for (std::size_t f : fs) {
        if (f >= op.num_factors()) {
            throw std::out_of_range("factor index " + std::to_string(f) + " out of range");
        }
    }
}

/**
 * Trace out every factor not listed in `keep`. Kept factors stay in their
 * original order; `keep` must be a non-empty subset of the factor indices.
 */
inline Operator partial_trace(const Operator &op, std::vector<std::size_t> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set must be non-empty");
    }
    check_factor_indices(op, keep);

    const auto &dims = op.dims();
    std::vector<std::size_t> traced;
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (!std::binary_search(keep.begin(), keep.end(), f)) {
            traced.push_back(f);
        }
    }
    std::vector<std::size_t> kept_dims, traced_dims;
    for (std::size_t f : keep) {
        kept_dims.push_back(dims[f]);
    }
    for (std::size_t f : traced) {
        traced_dims.push_back(dims[f]);
    }
    const std::size_t kd = std::accumulate(kept_dims.begin(), kept_dims.end(), std::size_t{1},
                                           std::multiplies<>());
    const std::size_t td = std::accumulate(traced_dims.begin(), traced_dims.end(), std::size_t{1},
                                           std::multiplies<>());

    CMat out(kd, kd);
    std::vector<std::size_t> row(dims.size()), col(dims.size());
    for (std::size_t i = 0; i < kd; ++i) {
        const auto ki = unravel(i, kept_dims);
        for (std::size_t j = 0; j < kd; ++j) {
            const auto kj = unravel(j, kept_dims);
            cplx s = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                const auto tt = unravel(t, traced_dims);
                for (std::size_t f = 0; f < keep.size(); ++f) {
                    row[keep[f]] = ki[f];
                    col[keep[f]] = kj[f];
                }
                for (std::size_t f = 0; f < traced.size(); ++f) {
                    row[traced[f]] = tt[f];
                    col[traced[f]] = tt[f];
                }
                s += op.mat()(ravel(row, dims), ravel(col, dims));
            }
            out(i, j) = s;
        }
    }
    return Operator(std::move(out), std::move(kept_dims));
}

/// Transpose a single tensor factor.
inline Operator partial_transpose(const Operator &op, std::size_t sys) {
    check_factor_indices(op, {sys});
    const auto &dims = op.dims();
    const std::size_t n = op.dim();
    CMat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto ri = unravel(i, dims);
        for (std::size_t j = 0; j < n; ++j) {
            auto rj = unravel(j, dims);
            std::swap(ri[sys], rj[sys]);
            out(ravel(ri, dims), ravel(rj, dims)) = op.mat()(i, j);
            std::swap(ri[sys], rj[sys]);
        }
    }
    return Operator(std::move(out), dims);
}

/// Transpose a set of tensor factors (e.g. one whole side of a bipartition).
inline Operator partial_transpose(const Operator &op, const std::vector<std::size_t> &sys) {
    Operator out = op;
    for (std::size_t s : sys) {
        out = partial_transpose(out, s);
    }
    return out;
}

/**
 * Reorder tensor factors: result factor j is original factor perm[j].
 * perm must be a permutation of 0..num_factors-1.
 */
inline Operator permute_factors(const Operator &op, const std::vector<std::size_t> &perm) {
    if (perm.size() != op.num_factors()) {
        throw std::invalid_argument("permute_factors: permutation size mismatch");
    }
    check_factor_indices(op, perm);
    const auto &dims = op.dims();
    std::vector<std::size_t> new_dims(perm.size());
    for (std::size_t f = 0; f < perm.size(); ++f) {
        new_dims[f] = dims[perm[f]];
    }
    const std::size_t n = op.dim();
    CMat out(n, n);
    std::vector<std::size_t> row(dims.size()), col(dims.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto ni = unravel(i, new_dims);
        for (std::size_t j = 0; j < n; ++j) {
            const auto nj = unravel(j, new_dims);
            for (std::size_t f = 0; f < perm.size(); ++f) {
                row[perm[f]] = ni[f];
                col[perm[f]] = nj[f];
            }
            out(i, j) = op.mat()(ravel(row, dims), ravel(col, dims));
        }
    }
    return Operator(std::move(out), std::move(new_dims));
}

}  // namespace qpv
