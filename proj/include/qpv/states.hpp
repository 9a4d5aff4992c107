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
 * Standard states and measurements: computational/Bell kets, Pauli matrices,
 * the SWAP gate, validated density matrices and POVMs.
 */

#pragma once

#include <optional>

#include "qpv/eig.hpp"
#include "qpv/matrix.hpp"

namespace qpv {

// Bell labels: 0 = Phi+, 1 = Phi-, 2 = Psi+, 3 = Psi-.
enum BellLabel : int {
    kPhiPlus = 0,
    kPhiMinus = 1,
    kPsiPlus = 2,
    kPsiMinus = 3,
};

inline CMat basis_ket(std::size_t dim, std::size_t idx) {
    if (idx >= dim) {
        throw std::out_of_range("basis_ket: index out of range");
    }
    CMat k(dim, 1);
    k(idx, 0) = 1.0;
    return k;
}

inline CMat bell_ket(int label) {
    const double s = 1.0 / std::sqrt(2.0);
    CMat k(4, 1);
    switch (label) {
        case kPhiPlus:
            k(0, 0) = s;
            k(3, 0) = s;
            break;
        case kPhiMinus:
            k(0, 0) = s;
            k(3, 0) = -s;
            break;
        case kPsiPlus:
            k(1, 0) = s;
            k(2, 0) = s;
            break;
        case kPsiMinus:
            k(1, 0) = s;
            k(2, 0) = -s;
            break;
        default:
            throw std::out_of_range("bell_ket: label must be in 0..3");
    }
    return k;
}

/// |psi><psi| as an Operator with the given factor dimensions.
inline Operator projector(const CMat &ket, std::vector<std::size_t> dims) {
    return Operator(ket * ket.adjoint(), std::move(dims));
}

/// Projector onto a Bell state, dims {2,2}.
inline Operator bell_state(int label) {
    return projector(bell_ket(label), {2, 2});
}

/// Pauli matrices, 0 = identity, 1 = X, 2 = Y, 3 = Z.
inline Operator pauli(int which) {
    CMat m(2, 2);
    switch (which) {
        case 0:
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case 1:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 2:
            m(0, 1) = cplx(0.0, -1.0);
            m(1, 0) = cplx(0.0, 1.0);
            break;
        case 3:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw std::out_of_range("pauli: index must be in 0..3");
    }
    return Operator(std::move(m), {2});
}

/// SWAP on two d-dimensional factors: |ij> -> |ji>.
inline Operator swap_gate(std::size_t d = 2) {
    CMat m(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            m(j * d + i, i * d + j) = 1.0;
        }
    }
    return Operator(std::move(m), {d, d});
}

/// Canonical maximally entangled ket sum_i |ii>/sqrt(d).
inline CMat max_entangled_ket(std::size_t d) {
    CMat k(d * d, 1);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        k(i * d + i, 0) = s;
    }
    return k;
}

inline Operator identity_operator(std::vector<std::size_t> dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) {
        n *= d;
    }
    return Operator(CMat::identity(n), std::move(dims));
}

// ---------------------------------------------------------------------------

/**
 * A validated quantum state. Construction checks Hermiticity
 * (max|H - H^dagger| <= 1e-12), unit trace (+-1e-10) and positivity
 * (lambda_min >= -1e-9 * max(1, lambda_max)).
 */
class DensityMatrix {
  public:
    static constexpr double kHermTol = 1e-12;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdTol = 1e-9;

    explicit DensityMatrix(Operator op) : op_(std::move(op)) {
        CMat diff = op_.mat() - op_.mat().adjoint();
        if (diff.max_abs() > kHermTol) {
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        }
        const double tr = op_.mat().trace().real();
        if (std::abs(tr - 1.0) > kTraceTol) {
            throw std::invalid_argument("DensityMatrix: trace != 1");
        }
        const HermitianEigen e = hermitian_eigen(op_.mat());
        if (e.eigenvalues.front() < -kPsdTol * std::max(1.0, e.eigenvalues.back())) {
            throw std::invalid_argument("DensityMatrix: negative eigenvalue");
        }
    }

    DensityMatrix(CMat m, std::vector<std::size_t> dims)
        : DensityMatrix(Operator(std::move(m), std::move(dims))) {}

    const Operator &op() const { return op_; }
    const CMat &mat() const { return op_.mat(); }
    const std::vector<std::size_t> &dims() const { return op_.dims(); }
    std::size_t dim() const { return op_.dim(); }

  private:
    Operator op_;
};

/**
 * A POVM: positive elements summing to the identity (entrywise within 1e-10).
 * `inconclusive`, when set, marks the designated no-answer element.
 */
struct Povm {
    std::vector<Operator> elements;
    std::optional<std::size_t> inconclusive;

    std::size_t size() const { return elements.size(); }
    std::size_t dim() const { return elements.empty() ? 0 : elements.front().dim(); }

    void validate() const {
        if (elements.empty()) {
            throw std::invalid_argument("Povm: no elements");
        }
        CMat sum(dim(), dim());
        for (const Operator &e : elements) {
            if (e.dim() != dim()) {
                throw std::invalid_argument("Povm: element dimension mismatch");
            }
            const HermitianEigen eg = hermitian_eigen(e.mat());
            if (eg.eigenvalues.front() <
                -DensityMatrix::kPsdTol * std::max(1.0, eg.eigenvalues.back())) {
                throw std::invalid_argument("Povm: element not PSD");
            }
            sum += e.mat();
        }
        if (max_abs_diff(sum, CMat::identity(dim())) > 1e-10) {
            throw std::invalid_argument("Povm: elements do not sum to identity");
        }
        if (inconclusive && *inconclusive >= elements.size()) {
            throw std::invalid_argument("Povm: inconclusive index out of range");
        }
    }
};

/// Computational-basis POVM on the given factor dims.
inline Povm computational_povm(std::vector<std::size_t> dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) {
        n *= d;
    }
    Povm p;
    for (std::size_t i = 0; i < n; ++i) {
        p.elements.push_back(projector(basis_ket(n, i), dims));
    }
    return p;
}

/// The four Bell projectors, outcome i = BellLabel i.
inline Povm bell_povm() {
    Povm p;
    for (int i = 0; i < 4; ++i) {
        p.elements.push_back(bell_state(i));
    }
    return p;
}

/// SWAP test as a projective measurement: outcome 0 = symmetric, 1 = antisymmetric.
inline Povm swap_test_povm(std::size_t d = 2) {
    const Operator s = swap_gate(d);
    const CMat id = CMat::identity(d * d);
    Povm p;
    p.elements.push_back(Operator((id + s.mat()) * cplx(0.5), {d, d}));
    p.elements.push_back(Operator((id - s.mat()) * cplx(0.5), {d, d}));
    return p;
}

}  // namespace qpv
