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
 * PPT-constrained multi-hypothesis state discrimination:
 *
 *   maximize   sum_i p_i tr(Pi_i rho_i)
 *   subject to sum_i Pi_i = I,  Pi_i >= 0,  Pi_i^{T_B} >= 0.
 *
 * The solver is a consensus operator-splitting scheme: one copy of the
 * variables per cone plus the affine completeness constraint, alternating
 * projections with running correction terms, and a linear objective step
 * folded into the affine update. Every reported optimum carries a certified
 * upper bound built from a feasible point of the dual
 *
 *   minimize   tr(Y)
 *   subject to Y - Q_i^{T_B} - p_i rho_i >= 0,  Q_i >= 0,
 *
 * so the duality gap at termination is rigorous, not estimated. The known
 * optimal dual certificates for the symmetric/antisymmetric protocols are
 * shipped in exact rational arithmetic and verified exactly.
 */

#pragma once

#include "qpv/protocols.hpp"
#include "qpv/rational.hpp"

namespace qpv {

struct SdpProblem {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> b_factors;  // partial transposition side
    std::vector<double> priors;
    std::vector<Operator> states;

    std::size_t dim() const { return states.empty() ? 0 : states.front().dim(); }
    std::size_t size() const { return states.size(); }
};

/// Hypotheses and cut of a concrete protocol, one POVM element per label.
inline SdpProblem build(const ProtocolSpec &spec) {
    if (spec.abstract || spec.hypotheses.empty()) {
        throw std::invalid_argument("sdp::build: abstract protocol");
    }
    SdpProblem p;
    p.dims = spec.dims;
    p.b_factors = spec.b_factors();
    for (const Hypothesis &h : spec.hypotheses) {
        p.priors.push_back(h.prior);
        p.states.push_back(h.state.op());
    }
    return p;
}

struct PrimalSolution {
    std::vector<Operator> povm;
    double value = 0.0;                  // sum_i p_i tr(Pi_i rho_i) at the returned POVM
    double certified_upper_bound = 0.0;  // tr(Y) of a feasible dual point
    double gap = 0.0;                    // certified_upper_bound - value
    double completeness_residual = 0.0;
    double psd_residual = 0.0;
    double ppt_residual = 0.0;
    std::size_t iterations = 0;
};

struct VerifyPrimal {
    bool feasible = false;
    double value = 0.0;
    double completeness_residual = 0.0;
    double psd_residual = 0.0;
    double ppt_residual = 0.0;
};

struct DualCertificate {
    Operator y;
    std::vector<Operator> q;
};

struct VerifyDual {
    bool valid = false;
    double bound = 0.0;              // tr(Y)
    double min_constraint_eig = 0.0; // over all i: lambda_min(Y - Q_i^TB - p_i rho_i)
    double min_q_eig = 0.0;
};

class SolveFailure : public std::runtime_error {
  public:
    SolveFailure(const std::string &msg, double completeness, double psd, double ppt, double gap)
        : std::runtime_error(msg + " (residuals: completeness=" + std::to_string(completeness) +
                             " psd=" + std::to_string(psd) + " ppt=" + std::to_string(ppt) +
                             " gap=" + std::to_string(gap) + ")"),
          completeness_residual(completeness),
          psd_residual(psd),
          ppt_residual(ppt),
          gap(gap) {}

    double completeness_residual, psd_residual, ppt_residual, gap;
};

namespace detail {

inline CMat pt_b(const CMat &m, const SdpProblem &p) {
    return partial_transpose(Operator(m, p.dims), p.b_factors).mat();
}

inline CMat ppt_clip(const CMat &m, const SdpProblem &p) {
    return pt_b(psd_clip(pt_b(m.hermitized(), p)), p);
}

/// Smallest Y' >= base with Y' >= M for every M: fold in the positive parts.
inline CMat dominating_fold(CMat base, const std::vector<CMat> &ms) {
    for (const CMat &m : ms) {
        base += psd_clip(m - base);
    }
    return base;
}

}  // namespace detail

/**
 * Feasibility and objective value of a candidate POVM at tolerance `tol`
 * (completeness entrywise, PSD and PPT by smallest eigenvalue).
 */
inline VerifyPrimal verify_primal(const SdpProblem &p, const std::vector<Operator> &povm,
                                  double tol = 1e-7) {
    if (povm.size() != p.size()) {
        throw std::invalid_argument("verify_primal: element count mismatch");
    }
    VerifyPrimal r;
    CMat sum(p.dim(), p.dim());
    for (std::size_t i = 0; i < povm.size(); ++i) {
        if (povm[i].dim() != p.dim()) {
            throw std::invalid_argument("verify_primal: dimension mismatch");
        }
        sum += povm[i].mat();
        r.psd_residual = std::max(r.psd_residual,
                                  -std::min(0.0, min_eigenvalue(povm[i].mat().hermitized())));
        r.ppt_residual = std::max(
            r.ppt_residual,
            -std::min(0.0, min_eigenvalue(detail::pt_b(povm[i].mat(), p).hermitized())));
        r.value += p.priors[i] * hs_inner(povm[i].mat(), p.states[i].mat());
    }
    r.completeness_residual = max_abs_diff(sum, CMat::identity(p.dim()));
    r.feasible =
        r.completeness_residual <= tol && r.psd_residual <= tol && r.ppt_residual <= tol;
    return r;
}

/**
 * Check a dual point by eigenvalue tests at tolerance 1e-9. When valid,
 * tr(Y) upper-bounds every primal (attack) value by weak duality.
 */
inline VerifyDual verify_dual(const SdpProblem &p, const DualCertificate &cert,
                              double tol = 1e-9) {
    if (cert.q.size() != p.size() || cert.y.dim() != p.dim()) {
        throw std::invalid_argument("verify_dual: shape mismatch");
    }
    VerifyDual r;
    r.bound = cert.y.mat().trace().real();
    r.min_constraint_eig = std::numeric_limits<double>::infinity();
    r.min_q_eig = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const CMat constraint = cert.y.mat() - detail::pt_b(cert.q[i].mat(), p) -
                                p.states[i].mat() * cplx(p.priors[i]);
        r.min_constraint_eig =
            std::min(r.min_constraint_eig, min_eigenvalue(constraint.hermitized()));
        r.min_q_eig = std::min(r.min_q_eig, min_eigenvalue(cert.q[i].mat().hermitized()));
    }
    r.valid = cert.y.mat().is_hermitian(1e-10) && r.min_constraint_eig >= -tol &&
              r.min_q_eig >= -tol;
    return r;
}

/**
 * Solve to duality gap <= tol (certified) and consensus residual <= 1e-9.
 * Deterministic given (problem, tol, iteration budget). Throws SolveFailure
 * with the residuals if the 200000-iteration budget runs out.
 */
inline PrimalSolution solve(const SdpProblem &p, double tol = 1e-7,
                            std::size_t max_iterations = 200000) {
    const std::size_t m = p.size();
    const std::size_t n = p.dim();
    if (m == 0 || n > 64) {
        throw std::invalid_argument("sdp::solve: needs 1..64 dimensional problems");
    }
    const double feas_tol = 1e-9;

    std::vector<CMat> g(m);
    for (std::size_t i = 0; i < m; ++i) {
        g[i] = p.states[i].mat() * cplx(p.priors[i]);
    }
    const CMat id = CMat::identity(n);

    // One consensus copy per cone; u, v are the running corrections.
    std::vector<CMat> pi(m), x(m), z(m), u(m, CMat(n, n)), v(m, CMat(n, n));
    for (std::size_t i = 0; i < m; ++i) {
        pi[i] = id * cplx(1.0 / static_cast<double>(m));
        x[i] = pi[i];
        z[i] = pi[i];
    }

    const auto primal_value = [&] {
        double val = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            val += hs_inner(g[i], pi[i]);
        }
        return val;
    };

    // Dual candidate from the correction terms, repaired to strict
    // feasibility; its trace is a valid upper bound whatever the iterate.
    const auto certified_bound = [&] {
        std::vector<CMat> constraint_rhs;
        CMat y_est(n, n);
        for (std::size_t i = 0; i < m; ++i) {
            const CMat q = psd_clip(detail::pt_b(v[i], p) * cplx(-1.0));
            constraint_rhs.push_back(detail::pt_b(q, p) + g[i]);
            y_est += g[i] - u[i] - v[i];
        }
        y_est *= cplx(1.0 / static_cast<double>(m));
        const CMat y = detail::dominating_fold(y_est.hermitized(), constraint_rhs);
        return y.trace().real();
    };

    double residual = std::numeric_limits<double>::infinity();
    double bound = std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    std::size_t iter = 0;
    for (; iter < max_iterations; ++iter) {
        // Affine + objective step.
        CMat defect(n, n);
        for (std::size_t i = 0; i < m; ++i) {
            pi[i] = (x[i] - u[i] + z[i] - v[i]) * cplx(0.5) + g[i] * cplx(0.5);
            defect += pi[i];
        }
        defect -= id;
        defect *= cplx(1.0 / static_cast<double>(m));
        for (std::size_t i = 0; i < m; ++i) {
            pi[i] -= defect;
        }
        // Cone projections and corrections.
        residual = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = psd_clip((pi[i] + u[i]).hermitized());
            z[i] = detail::ppt_clip(pi[i] + v[i], p);
            const CMat rx = pi[i] - x[i];
            const CMat rz = pi[i] - z[i];
            u[i] += rx;
            v[i] += rz;
            residual = std::max({residual, rx.max_abs(), rz.max_abs()});
        }
        if (residual <= feas_tol && (iter % 25 == 0 || iter < 50)) {
            bound = certified_bound();
            gap = bound - primal_value();
            if (std::abs(gap) <= tol) {
                ++iter;
                break;
            }
        }
    }

    PrimalSolution sol;
    sol.iterations = iter;
    sol.value = primal_value();
    sol.certified_upper_bound = bound;
    sol.gap = gap;
    for (std::size_t i = 0; i < m; ++i) {
        sol.povm.emplace_back(pi[i].hermitized(), p.dims);
    }
    const VerifyPrimal vp = verify_primal(p, sol.povm, 1e-7);
    sol.completeness_residual = vp.completeness_residual;
    sol.psd_residual = vp.psd_residual;
    sol.ppt_residual = vp.ppt_residual;
    if (iter >= max_iterations && (residual > feas_tol || std::abs(gap) > tol)) {
        throw SolveFailure("sdp::solve: iteration budget exhausted", vp.completeness_residual,
                           vp.psd_residual, vp.ppt_residual, gap);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Lossy variant: an inconclusive element with pinned conclusive probability.

/**
 * Optimal conclusive success at answering rate exactly `a`: an extra element
 * Pi_empty joins the completeness constraint, every element stays PSD and
 * PPT, and tr(F Pi_empty) = 1 - a where F is the average input state.
 * Returns the unconditioned value sum_i p_i tr(Pi_i rho_i).
 */
inline double solve_loss_at(const SdpProblem &p, double a, double tol = 1e-7,
                            std::size_t max_iterations = 200000) {
    if (a <= 0.0 || a > 1.0) {
        throw std::invalid_argument("solve_loss_at: answering rate must be in (0,1]");
    }
    const std::size_t m = p.size();
    const std::size_t k = m + 1;  // element m is the inconclusive one
    const std::size_t n = p.dim();
    const double feas_tol = 1e-9;
    const double c = 1.0 - a;

    std::vector<CMat> g(k, CMat(n, n));
    CMat f(n, n);
    for (std::size_t i = 0; i < m; ++i) {
        g[i] = p.states[i].mat() * cplx(p.priors[i]);
        f += g[i];
    }
    const double ff = hs_inner(f, f);
    const CMat id = CMat::identity(n);

    // Projection onto {sum = I, <F, element_m> = c}.
    const auto affine_project = [&](std::vector<CMat> &w) {
        CMat s(n, n);
        for (const CMat &wi : w) {
            s += wi;
        }
        const CMat s_minus_id = s - id;
        const double km = static_cast<double>(k);
        const double mu =
            -(km / (static_cast<double>(m) * ff)) *
            (c - hs_inner(f, w[m]) + hs_inner(f, s_minus_id) / km);
        CMat lambda = (s_minus_id - f * cplx(mu)) * cplx(1.0 / km);
        for (std::size_t e = 0; e < k; ++e) {
            w[e] -= lambda;
        }
        w[m] -= f * cplx(mu);
    };

    std::vector<CMat> pi(k), x(k), z(k), u(k, CMat(n, n)), v(k, CMat(n, n));
    for (std::size_t e = 0; e < k; ++e) {
        pi[e] = id * cplx(1.0 / static_cast<double>(k));
    }
    affine_project(pi);
    x = pi;
    z = pi;

    const auto primal_value = [&] {
        double val = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            val += hs_inner(g[i], pi[i]);
        }
        return val;
    };

    // Dual: Y - Q_i^TB - g_i >= 0 for conclusive i, Y + nu F - Q_m^TB >= 0,
    // objective tr(Y) + nu (1 - a). Built from the corrections and repaired.
    const auto certified_bound = [&] {
        CMat y_est(n, n);
        for (std::size_t i = 0; i < m; ++i) {
            y_est += g[i] - u[i] - v[i];
        }
        y_est *= cplx(1.0 / static_cast<double>(m));
        y_est = y_est.hermitized();
        std::vector<CMat> qtb(k);
        for (std::size_t e = 0; e < k; ++e) {
            qtb[e] = detail::pt_b(psd_clip(detail::pt_b(v[e], p) * cplx(-1.0)), p);
        }
        const double nu = hs_inner(f, (u[m] * cplx(-1.0)) - y_est + qtb[m]) / ff;
        std::vector<CMat> constraint_rhs;
        for (std::size_t i = 0; i < m; ++i) {
            constraint_rhs.push_back(qtb[i] + g[i]);
        }
        constraint_rhs.push_back(qtb[m] - f * cplx(nu));
        const CMat y = detail::dominating_fold(y_est, constraint_rhs);
        return y.trace().real() + nu * c;
    };

    double residual = std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        for (std::size_t e = 0; e < k; ++e) {
            pi[e] = (x[e] - u[e] + z[e] - v[e]) * cplx(0.5) + g[e] * cplx(0.5);
        }
        affine_project(pi);
        residual = 0.0;
        for (std::size_t e = 0; e < k; ++e) {
            x[e] = psd_clip((pi[e] + u[e]).hermitized());
            z[e] = detail::ppt_clip(pi[e] + v[e], p);
            const CMat rx = pi[e] - x[e];
            const CMat rz = pi[e] - z[e];
            u[e] += rx;
            v[e] += rz;
            residual = std::max({residual, rx.max_abs(), rz.max_abs()});
        }
        if (residual <= feas_tol) {
            gap = certified_bound() - primal_value();
            if (std::abs(gap) <= 10.0 * tol) {
                return primal_value();
            }
        }
    }
    throw SolveFailure("solve_loss_at: iteration budget exhausted", 0.0, residual, residual, gap);
}

/**
 * Best conditional success available to a lossy PPT attacker who must answer
 * at rate at least eta: max over a in [eta, 1] of value(a)/a, taken over a
 * short grid (the ratio is nonincreasing in a because value(a) is concave
 * with value(0) = 0, so a coarse grid is exact up to solver tolerance).
 */
inline double solve_with_loss(const SdpProblem &p, double eta, double tol = 1e-6) {
    if (eta <= 0.0 || eta > 1.0) {
        throw std::invalid_argument("solve_with_loss: eta must be in (0,1]");
    }
    double best = 0.0;
    const int grid = 5;
    double prev_a = -1.0;
    for (int i = 0; i < grid; ++i) {
        const double a = eta + (1.0 - eta) * static_cast<double>(i) / (grid - 1);
        if (a - prev_a < 1e-12) {
            continue;
        }
        prev_a = a;
        best = std::max(best, solve_loss_at(p, a, tol) / a);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Known optimal dual certificates, in exact rational arithmetic.

struct RationalSdp {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> b_factors;
    std::vector<Rational> priors;
    std::vector<RMat> states;
};

struct RationalCertificate {
    RMat y;
    std::vector<RMat> q;
};

namespace certificates {

/// rho_sym: uniform mixture of the three symmetric Bell projectors.
inline RMat rho_sym() {
    return RMat::from_ints({{2, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 2}}, 6);
}

/// rho_antisym: the antisymmetric Bell projector.
inline RMat rho_antisym() {
    return RMat::from_ints({{0, 0, 0, 0}, {0, 1, -1, 0}, {0, -1, 1, 0}, {0, 0, 0, 0}}, 2);
}

inline RationalSdp sym_antisym_problem() {
    RationalSdp p;
    p.dims = {2, 2};
    p.b_factors = {1};
    p.priors = {Rational(1, 2), Rational(1, 2)};
    p.states = {rho_sym(), rho_antisym()};
    return p;
}

inline RationalSdp sym_antisym_two_round_problem() {
    RationalSdp p;
    p.dims = {2, 2, 2, 2};
    p.b_factors = {1, 3};
    p.priors = {Rational(1, 2), Rational(1, 2)};
    p.states = {rkron(rho_sym(), rho_sym()), rkron(rho_antisym(), rho_antisym())};
    return p;
}

/// Certifies the single-round PPT optimum 5/6.
inline RationalCertificate sym_antisym_certificate() {
    RationalCertificate c;
    c.y = RMat::from_ints({{2, 0, 0, 0}, {0, 3, -1, 0}, {0, -1, 3, 0}, {0, 0, 0, 2}}, 12);
    c.q.push_back(RMat(4, 4));  // Q_0 = 0
    c.q.push_back(RMat::from_ints({{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}}, 6));
    return c;
}

/// Certifies the two-round PPT optimum 17/18.
inline RationalCertificate sym_antisym_two_round_certificate() {
    const RMat r00 = rkron(rho_sym(), rho_sym());
    const RMat r11 = rkron(rho_antisym(), rho_antisym());
    const RMat r0tb = rpartial_transpose(rho_sym(), {2, 2}, {1});
    const RMat r1tb = rpartial_transpose(rho_antisym(), {2, 2}, {1});
    RationalCertificate c;
    c.y = Rational(1, 18) * (Rational(9) * r00 + Rational(8) * r11);
    c.q.push_back(RMat(16, 16));  // Q_0 = 0
    c.q.push_back(Rational(1, 18) *
                  (rkron(Rational(3) * r0tb, Rational(3) * r0tb) - rkron(r1tb, r1tb)));
    return c;
}

}  // namespace certificates

/**
 * Exact verification of a rational dual certificate: every constraint matrix
 * is checked PSD in rational arithmetic, and the returned bound tr(Y) is an
 * exact rational.
 */
inline std::pair<bool, Rational> verify_dual_exact(const RationalSdp &p,
                                                   const RationalCertificate &cert) {
    bool ok = cert.y.is_symmetric();
    for (std::size_t i = 0; i < p.states.size(); ++i) {
        ok = ok && rational_is_psd(cert.q[i]);
        const RMat constraint =
            cert.y - rpartial_transpose(cert.q[i], p.dims, p.b_factors) - p.priors[i] * p.states[i];
        ok = ok && rational_is_psd(constraint);
    }
    return {ok, cert.y.trace()};
}

/// Floating-point image of a rational certificate, for the spectral checks.
inline DualCertificate to_float_certificate(const RationalCertificate &rc,
                                            const std::vector<std::size_t> &dims) {
    DualCertificate c;
    c.y = Operator(rc.y.to_cmat(), dims);
    for (const RMat &q : rc.q) {
        c.q.emplace_back(q.to_cmat(), dims);
    }
    return c;
}

}  // namespace qpv
