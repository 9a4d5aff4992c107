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
 * Exact rational matrices for certificate verification. The dual certificates
 * this library ships have small rational entries, and verifying them exactly
 * removes every numerical question from the golden tests. Entries are real;
 * none of the certified matrices need complex parts.
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpv/matrix.hpp"

namespace qpv {

using Rational = boost::multiprecision::cpp_rational;

class RMat {
  public:
    RMat() = default;
    RMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    /// Build from integer entries scaled by 1/den.
    static RMat from_ints(const std::vector<std::vector<long>> &num, long den) {
        RMat m(num.size(), num.empty() ? 0 : num.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            for (std::size_t j = 0; j < m.cols_; ++j) {
                m(i, j) = Rational(num[i][j], den);
            }
        }
        return m;
    }

    static RMat identity(std::size_t n) {
        RMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Rational trace() const {
        Rational t = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    bool is_zero() const {
        for (const Rational &v : a_) {
            if (v != 0) {
                return false;
            }
        }
        return true;
    }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i + 1; j < cols_; ++j) {
                if ((*this)(i, j) != (*this)(j, i)) {
                    return false;
                }
            }
        }
        return true;
    }

    RMat &operator+=(const RMat &o) {
        for (std::size_t i = 0; i < a_.size(); ++i) {
            a_[i] += o.a_[i];
        }
        return *this;
    }
    RMat &operator-=(const RMat &o) {
        for (std::size_t i = 0; i < a_.size(); ++i) {
            a_[i] -= o.a_[i];
        }
        return *this;
    }
    RMat &operator*=(const Rational &s) {
        for (Rational &v : a_) {
            v *= s;
        }
        return *this;
    }

    friend RMat operator+(RMat a, const RMat &b) { return a += b; }
    friend RMat operator-(RMat a, const RMat &b) { return a -= b; }
    friend RMat operator*(RMat a, const Rational &s) { return a *= s; }
    friend RMat operator*(const Rational &s, RMat a) { return a *= s; }
    friend bool operator==(const RMat &a, const RMat &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    /// Floating-point image, for spectral checks that do not need exactness.
    CMat to_cmat() const {
        CMat m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(i, j) = static_cast<double>((*this)(i, j));
            }
        }
        return m;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

inline RMat rkron(const RMat &a, const RMat &b) {
    RMat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return c;
}

/// Transpose the listed tensor factors of a square matrix with the given dims.
inline RMat rpartial_transpose(const RMat &m, const std::vector<std::size_t> &dims,
                               const std::vector<std::size_t> &sys) {
    RMat out = m;
    for (std::size_t s : sys) {
        RMat next(out.rows(), out.cols());
        for (std::size_t i = 0; i < out.rows(); ++i) {
            auto ri = unravel(i, dims);
            for (std::size_t j = 0; j < out.cols(); ++j) {
                auto rj = unravel(j, dims);
                std::swap(ri[s], rj[s]);
                next(ravel(ri, dims), ravel(rj, dims)) = out(i, j);
                std::swap(ri[s], rj[s]);
            }
        }
        out = next;
    }
    return out;
}

/**
 * Exact PSD test for a symmetric rational matrix, by fraction-free-ish LDL
 * elimination: at each step the leading diagonal entry of the Schur
 * complement must be positive (eliminate) or zero with a zero row (skip);
 * anything else is a witness of indefiniteness.
 */
inline bool rational_is_psd(RMat m) {
    if (m.rows() != m.cols() || !m.is_symmetric()) {
        throw std::invalid_argument("rational_is_psd: matrix must be symmetric");
    }
    const std::size_t n = m.rows();
    for (std::size_t k = 0; k < n; ++k) {
        const Rational d = m(k, k);
        if (d < 0) {
            return false;
        }
        if (d == 0) {
            // A PSD matrix with zero diagonal entry has a zero row there.
            for (std::size_t j = k + 1; j < n; ++j) {
                if (m(k, j) != 0) {
                    return false;
                }
            }
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) {
                continue;
            }
            const Rational f = m(i, k) / d;
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) -= f * m(k, j);
            }
        }
    }
    return true;
}

inline std::string rational_to_string(const Rational &r) {
    return r.str();
}

}  // namespace qpv
