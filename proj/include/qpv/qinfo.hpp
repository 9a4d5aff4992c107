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
 * Entropic and entanglement-related primitives: von Neumann entropy, the
 * Werner twirl, maximally entangled fraction, coherent information, support
 * orthogonality, POVM sampling and Haar-random unitaries.
 */

#pragma once

#include "qpv/rng.hpp"
#include "qpv/states.hpp"

namespace qpv {

/// Von Neumann entropy in bits: -sum lambda log2 lambda over eigenvalues > 1e-12.
inline double von_neumann_entropy(const DensityMatrix &rho) {
    const HermitianEigen e = hermitian_eigen(rho.mat());
    double s = 0.0;
    for (double lam : e.eigenvalues) {
        if (lam > 1e-12) {
            s -= lam * std::log2(lam);
        }
    }
    return std::max(s, 0.0);
}

/**
 * Werner twirling channel on a two-qubit state, evaluated by its projector
 * form rather than Haar integration: with P = |Psi-><Psi-| and
 * a = <Psi-|rho|Psi->, the image is a P + (1-a) (I-P)/3. The overlap with
 * Psi- is preserved and the output commutes with every U (x) U.
 */
inline DensityMatrix werner_twirl(const DensityMatrix &rho) {
    if (rho.dims() != std::vector<std::size_t>{2, 2}) {
        throw std::invalid_argument("werner_twirl: expects a two-qubit state");
    }
    const Operator p = bell_state(kPsiMinus);
    const double a = hs_inner(p.mat(), rho.mat());
    CMat out = p.mat() * cplx(a) + (CMat::identity(4) - p.mat()) * cplx((1.0 - a) / 3.0);
    return DensityMatrix(std::move(out), {2, 2});
}

/// Overlap with the canonical maximally entangled state of local dimension d.
inline double entangled_fraction(const DensityMatrix &rho, std::size_t d) {
    if (rho.dims() != std::vector<std::size_t>{d, d}) {
        throw std::invalid_argument("entangled_fraction: state must live on dims [d,d]");
    }
    const CMat phi = max_entangled_ket(d);
    const CMat v = phi.adjoint() * rho.mat() * phi;
    return v(0, 0).real();
}

/// Coherent information S(B) - S(AB) of a bipartite state on dims [d_A, d_B].
inline double coherent_information(const DensityMatrix &rho) {
    if (rho.dims().size() != 2) {
        throw std::invalid_argument("coherent_information: state must be bipartite");
    }
    const Operator b = partial_trace(rho.op(), {1});
    return von_neumann_entropy(DensityMatrix(b)) - von_neumann_entropy(rho);
}

/**
 * True iff the supports of the two states are orthogonal, i.e. tr(rho sigma)
 * <= 1e-10. For PSD operators this is necessary and sufficient, and it is
 * exactly the condition under which the pair admits perfect discrimination
 * that is both never wrong and always conclusive.
 */
inline bool supports_orthogonal(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dims() != sigma.dims()) {
        throw std::invalid_argument("supports_orthogonal: dimension mismatch");
    }
    return hs_inner(rho.mat(), sigma.mat()) <= 1e-10;
}

/**
 * Sample a POVM outcome on the given state. Outcome probabilities
 * tr(E_i rho) are clipped at zero; their total must lie in
 * [1 - 1e-8, 1 + 1e-8] and is renormalized before inversion sampling.
 */
inline std::size_t sample_povm(const DensityMatrix &rho, const Povm &m, SplitMix64 &rng) {
    if (m.dim() != rho.dim()) {
        throw std::invalid_argument("sample_povm: dimension mismatch");
    }
    std::vector<double> probs(m.size());
    double total = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        probs[i] = std::max(0.0, hs_inner(m.elements[i].mat(), rho.mat()));
        total += probs[i];
    }
    if (total < 1.0 - 1e-8 || total > 1.0 + 1e-8) {
        throw std::runtime_error("sample_povm: outcome probabilities sum to " +
                                 std::to_string(total));
    }
    const double u = rng.next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) {
            return i;
        }
    }
    return probs.size() - 1;
}

/**
 * Haar-distributed d x d unitary: a complex Ginibre matrix orthonormalized by
 * modified Gram-Schmidt. With the positive-diagonal QR convention the Q
 * factor of a Ginibre matrix is exactly Haar (Mezzadri 2007).
 */
inline Operator random_local_unitary(std::size_t d, SplitMix64 &rng) {
    if (d < 2) {
        throw std::invalid_argument("random_local_unitary: d must be >= 2");
    }
    CMat g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            g(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
        }
    }
    // Modified Gram-Schmidt over columns.
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t prev = 0; prev < k; ++prev) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                dot += std::conj(g(i, prev)) * g(i, k);
            }
            for (std::size_t i = 0; i < d; ++i) {
                g(i, k) -= dot * g(i, prev);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            nrm += std::norm(g(i, k));
        }
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < d; ++i) {
            g(i, k) /= nrm;
        }
    }
    return Operator(std::move(g), {d});
}

/// Conjugate rho by u: u rho u^dagger (dims preserved).
inline Operator conjugate(const Operator &u, const Operator &rho) {
    return Operator(u.mat() * rho.mat() * u.mat().adjoint(), rho.dims());
}

/// Random full-rank state G G^dagger / tr(G G^dagger) with Ginibre G.
inline DensityMatrix random_density_matrix(const std::vector<std::size_t> &dims,
                                           SplitMix64 &rng) {
    std::size_t n = 1;
    for (std::size_t d : dims) {
        n *= d;
    }
    CMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
        }
    }
    CMat rho = g * g.adjoint();
    rho *= cplx(1.0 / rho.trace().real());
    return DensityMatrix(rho.hermitized(), dims);
}

}  // namespace qpv
