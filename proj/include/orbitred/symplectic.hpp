#pragma once

#include <utility>
#include <vector>

#include "orbitred/reduction.hpp"

namespace orbitred {

template <class S>
SquareMatrix<S> momentum(const FuchsTuple<S>& tuple) {
    return tuple.momentum();
}

// Lie-Poisson form on an orbit at A: omega(xi, eta) = -tr(U_xi * eta) with
// [A, U_xi] = xi.  The value does not depend on the bracket representative.
template <class S>
S lie_poisson(const SquareMatrix<S>& a, const SquareMatrix<S>& xi, const SquareMatrix<S>& eta,
              double tol = kDefaultTol) {
    SquareMatrix<S> u = solve_bracket(a, xi, tol);
    return -trace(u * eta);
}

// Tangent vector to the zero-momentum level: per-orbit directions in the
// ad-image, certified by stored bracket potentials, summing to zero.
template <class S>
struct TangentTuple {
    std::vector<SquareMatrix<S>> xi;
    std::vector<SquareMatrix<S>> u;  // [A^(n), u[n]] = xi[n]
};

// Draw a level tangent: random potentials, then one joint echelon solve
// removes the sum defect.
template <class S>
TangentTuple<S> sample_tangent(const FuchsTuple<S>& tuple, Rng& rng, double tol = kDefaultTol) {
    const int n = tuple.n_orbits();
    const int m = tuple.dim();
    TangentTuple<S> t;
    for (int k = 0; k < n; ++k) {
        t.u.push_back(random_integer_matrix<S>(m, rng));
        t.xi.push_back(commutator(tuple.matrices[k], t.u.back()));
    }
    SquareMatrix<S> defect(m);
    for (const auto& x : t.xi) defect += x;
    if (!is_zero_matrix(defect, kIsExact<S> ? 0.0 : tol)) {
        // solve sum_n [A^(n), V^(n)] = -defect
        const int mm = m * m;
        RowMatrix<S> rows(mm, Vector<S>(static_cast<size_t>(n) * mm, S(0L)));
        Vector<S> rhs(mm, S(0L));
        auto eq = [m](int i, int j) { return i * m + j; };
        for (int q = 0; q < n; ++q) {
            const SquareMatrix<S>& a = tuple.matrices[q];
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k) {
                        rows[eq(i, j)][q * mm + eq(k, j)] += a.at(i, k);
                        rows[eq(i, j)][q * mm + eq(i, k)] -= a.at(k, j);
                    }
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) rhs[eq(i, j)] = -defect.at(i, j);
        auto sol = solve_rect(std::move(rows), rhs, tol);
        if (!sol) throw CorrectionUnsolvable();
        for (int q = 0; q < n; ++q) {
            SquareMatrix<S> v(m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) v.at(i, j) = (*sol)[q * mm + eq(i, j)];
            t.u[q] += v;
            t.xi[q] = commutator(tuple.matrices[q], t.u[q]);
        }
    }
    return t;
}

template <class S>
std::pair<TangentTuple<S>, TangentTuple<S>> sample_tangent_pair(const FuchsTuple<S>& tuple, Rng& rng,
                                                                double tol = kDefaultTol) {
    return {sample_tangent(tuple, rng, tol), sample_tangent(tuple, rng, tol)};
}

// Gauge direction: one common conjugation generator acting on every orbit.
template <class S>
TangentTuple<S> gauge_tangent(const FuchsTuple<S>& tuple, const SquareMatrix<S>& x) {
    TangentTuple<S> t;
    for (const auto& a : tuple.matrices) {
        t.u.push_back(x);
        t.xi.push_back(commutator(a, x));
    }
    return t;
}

template <class S>
S total_form(const FuchsTuple<S>& base, const TangentTuple<S>& xi, const TangentTuple<S>& eta,
             double tol = kDefaultTol) {
    S s(0L);
    for (int n = 0; n < base.n_orbits(); ++n)
        s += lie_poisson(base.matrices[n], xi.xi[n], eta.xi[n], tol);
    return s;
}

// --- dual-number pushforwards ---------------------------------------------

template <class S>
FuchsTuple<DualScalar<S>> dualize_tuple(const FuchsTuple<S>& base,
                                        const std::vector<SquareMatrix<S>>& dir) {
    FuchsTuple<DualScalar<S>> d;
    for (const auto& sp : base.specs) {
        OrbitSpec<DualScalar<S>> dsp;
        dsp.m = sp.m;
        for (const auto& [lam, k] : sp.eigs) dsp.eigs.emplace_back(DualScalar<S>(lam, S(0L)), k);
        d.specs.push_back(std::move(dsp));
    }
    for (int n = 0; n < base.n_orbits(); ++n) d.matrices.push_back(dualize(base.matrices[n], dir[n]));
    for (const auto& p : base.poles) d.poles.emplace_back(p, S(0L));
    return d;
}

template <class S>
DiscreteData<DualScalar<S>> dualize_data(const DiscreteData<S>& data) {
    DiscreteData<DualScalar<S>> d;
    d.anchor_n = data.anchor_n;
    d.anchor_up = data.anchor_up;
    d.anchor_low = data.anchor_low;
    d.lambda_n = DualScalar<S>(data.lambda_n, S(0L));
    for (const auto& s : data.ordering_up.slots) d.ordering_up.slots.emplace_back(s, S(0L));
    for (const auto& s : data.ordering_low.slots) d.ordering_low.slots.emplace_back(s, S(0L));
    return d;
}

// Differential of the canonical section along a level tangent, computed by
// evaluating the section over dual numbers.
template <class S>
std::vector<SquareMatrix<S>> pushforward_section(const FuchsTuple<S>& tuple,
                                                 const DiscreteData<S>& data,
                                                 const std::vector<SquareMatrix<S>>& dir,
                                                 double tol = kDefaultTol) {
    auto ds = canonical_section(dualize_tuple(tuple, dir), dualize_data(data), tol);
    std::vector<SquareMatrix<S>> out;
    for (const auto& a : ds.matrices) out.push_back(deriv_part(a));
    return out;
}

template <class S>
struct ReducedTangent {
    SquareMatrix<S> a_hat_dot;
    std::vector<SquareMatrix<S>> tail_dot;
};

template <class S>
ReducedTangent<S> pushforward_reduce_dual(const FuchsTuple<S>& tuple, const DiscreteData<S>& data,
                                          const std::vector<SquareMatrix<S>>& dir,
                                          double tol = kDefaultTol) {
    auto dp = reduce(dualize_tuple(tuple, dir), dualize_data(data), tol);
    ReducedTangent<S> t;
    t.a_hat_dot = deriv_part(dp.a_hat);
    for (const auto& a : dp.tail) t.tail_dot.push_back(deriv_part(a));
    return t;
}

// Central finite differences; floating mode only.  Probes that leave the
// domain surface as StepThroughBoundary.
//
// The probe points are produced by conjugation, not by a straight-line step.
// A matrix shifted linearly to A + h*xi sits O(h) off its orbit stratum, so
// (A + h*xi - lambda) is genuinely full rank there (determinant of order h^2)
// and its approximate kernel is ill-posed at every tolerance: pivot scales
// and residual scales are both O(h).  Instead, each direction xi_n = [A_n, U_n]
// is integrated as the curve C_n(h) = (I - h U_n) A_n (I - h U_n)^{-1}, which
// has C_n'(0) = xi_n and stays exactly on the orbit for every h, preserving
// all rank structure; the momentum level is kept to O(h^2), inside the
// working tolerance.  The direction is normalized to unit max-entry first so
// the step size has a uniform meaning.
inline ReducedTangent<FloatingComplex> pushforward_reduce_fd(
    const FuchsTuple<FloatingComplex>& tuple, const DiscreteData<FloatingComplex>& data,
    const std::vector<SquareMatrix<FloatingComplex>>& dir, double tol = kDefaultTol,
    double step = 2e-5) {
    double dir_scale = 0.0;
    for (const auto& a : dir) dir_scale = std::max(dir_scale, max_abs(a));
    if (dir_scale == 0.0) dir_scale = 1.0;
    FloatingComplex inv_scale(1.0 / dir_scale, 0.0);
    std::vector<SquareMatrix<FloatingComplex>> u;
    try {
        for (int n = 0; n < tuple.n_orbits(); ++n)
            u.push_back(solve_bracket(tuple.matrices[n], inv_scale * dir[n], tol));
    } catch (const Error& e) {
        throw StepThroughBoundary(std::string("finite-difference probe failed: ") + e.what());
    }
    const int m = tuple.dim();
    auto shifted = [&](double h) {
        FuchsTuple<FloatingComplex> t = tuple;
        for (int n = 0; n < t.n_orbits(); ++n) {
            SquareMatrix<FloatingComplex> g =
                SquareMatrix<FloatingComplex>::identity(m) - FloatingComplex(h, 0.0) * u[n];
            t.matrices[n] = g * tuple.matrices[n] * inverse(g, tol);
        }
        return t;
    };
    ReducedPoint<FloatingComplex> plus, minus;
    try {
        plus = reduce(shifted(step), data, tol);
        minus = reduce(shifted(-step), data, tol);
    } catch (const Error& e) {
        throw StepThroughBoundary(std::string("finite-difference probe failed: ") + e.what());
    }
    FloatingComplex inv2h(dir_scale / (2.0 * step), 0.0);
    ReducedTangent<FloatingComplex> t;
    t.a_hat_dot = inv2h * (plus.a_hat - minus.a_hat);
    for (size_t k = 0; k < plus.tail.size(); ++k)
        t.tail_dot.push_back(inv2h * (plus.tail[k] - minus.tail[k]));
    return t;
}

template <class S>
ReducedTangent<S> pushforward_reduce(const FuchsTuple<S>& tuple, const DiscreteData<S>& data,
                                     const std::vector<SquareMatrix<S>>& dir,
                                     double tol = kDefaultTol) {
    if constexpr (std::is_same_v<S, FloatingComplex>)
        return pushforward_reduce_fd(tuple, data, dir, tol);
    else
        return pushforward_reduce_dual(tuple, data, dir, tol);
}

// --- pullback verification -------------------------------------------------

struct PullbackReport {
    int trials = 0;
    int failures = 0;
    int domain_errors = 0;
    double max_residual_a = 0.0;
    double max_residual_b = 0.0;
    double max_residual_c = 0.0;
    bool exact_mode = false;
    bool all_exact_zero = true;  // meaningful in exact mode only

    bool ok() const { return failures == 0; }
};

// Check the three pullback identities of the main theorem over random level
// tangents pushed to the section: (a) the total form equals the product form
// on the target, (b) the two triangular-anchor summands vanish, (c) the
// row-sum anchor's summand equals the deflated orbit's summand.
template <class S>
PullbackReport verify_pullback(const FuchsTuple<S>& tuple, const DiscreteData<S>& data, int trials,
                               Rng& rng, double tol = kDefaultTol) {
    PullbackReport rep;
    rep.exact_mode = kIsExact<S>;
    FuchsTuple<S> section = canonical_section(tuple, data, tol);
    std::vector<int> tail_idx = data.tail_indices(tuple.n_orbits());
    for (int trial = 0; trial < trials; ++trial) {
        ++rep.trials;
        try {
            TangentTuple<S> xi = sample_tangent(tuple, rng, tol);
            TangentTuple<S> eta = sample_tangent(tuple, rng, tol);
            auto xi_s = pushforward_section(tuple, data, xi.xi, tol);
            auto eta_s = pushforward_section(tuple, data, eta.xi, tol);
            auto xi_r = pushforward_reduce_dual(tuple, data, xi.xi, tol);
            auto eta_r = pushforward_reduce_dual(tuple, data, eta.xi, tol);

            std::vector<S> omega(tuple.n_orbits(), S(0L));
            for (int n = 0; n < tuple.n_orbits(); ++n)
                omega[n] = lie_poisson(section.matrices[n], xi_s[n], eta_s[n], tol);
            ReducedPoint<S> rp = reduce(tuple, data, tol);
            S omega_hat = rp.a_hat.dim() == 0
                              ? S(0L)
                              : lie_poisson(rp.a_hat, xi_r.a_hat_dot, eta_r.a_hat_dot, tol);

            S total(0L);
            for (const auto& w : omega) total += w;
            S product_form = omega_hat;
            for (int idx : tail_idx) product_form += omega[idx];

            S res_a = total - product_form;
            S res_b_up = omega[data.anchor_up];
            S res_b_low = omega[data.anchor_low];
            S res_c = omega[data.anchor_n] - omega_hat;

            double scale = std::max(1.0, std::abs(abs_of(total)));
            rep.max_residual_a = std::max(rep.max_residual_a, abs_of(res_a) / scale);
            rep.max_residual_b =
                std::max({rep.max_residual_b, abs_of(res_b_up) / scale, abs_of(res_b_low) / scale});
            rep.max_residual_c = std::max(rep.max_residual_c, abs_of(res_c) / scale);

            bool pass;
            if constexpr (kIsExact<S>) {
                pass = is_zero(res_a) && is_zero(res_b_up) && is_zero(res_b_low) && is_zero(res_c);
                if (!pass) rep.all_exact_zero = false;
            } else {
                double rtol = 1e-7;
                pass = abs_of(res_a) / scale <= rtol && abs_of(res_b_up) / scale <= rtol &&
                       abs_of(res_b_low) / scale <= rtol && abs_of(res_c) / scale <= rtol;
            }
            if (!pass) ++rep.failures;
        } catch (const Error&) {
            ++rep.domain_errors;
        }
    }
    return rep;
}

}  // namespace orbitred
