#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "orbitred/jordan.hpp"
#include "orbitred/linalg.hpp"
#include "orbitred/orbits.hpp"

namespace orbitred {

// Ordered tuple of residue matrices on declared orbits with zero total sum.
template <class S>
struct FuchsTuple {
    std::vector<OrbitSpec<S>> specs;
    std::vector<SquareMatrix<S>> matrices;
    std::vector<S> poles;  // inert metadata, may be empty

    int n_orbits() const { return static_cast<int>(specs.size()); }
    int dim() const { return specs.empty() ? 0 : specs.front().m; }

    SquareMatrix<S> momentum() const {
        SquareMatrix<S> s(dim());
        for (const auto& a : matrices) s += a;
        return s;
    }

    MembershipReport validate(double tol = kDefaultTol) const {
        MembershipReport rep;
        if (n_orbits() < 3) rep.fail("need at least 3 orbits");
        if (specs.size() != matrices.size()) rep.fail("specs/matrices length mismatch");
        for (int n = 0; n < n_orbits(); ++n) {
            if (specs[n].m != dim()) rep.fail("orbit " + std::to_string(n) + ": dimension mismatch");
            auto r = check_membership(matrices[n], specs[n], tol);
            if (!r.ok) rep.fail("orbit " + std::to_string(n) + ": " + r.summary());
        }
        if (!rep.ok) return rep;
        double scale = 1.0;
        for (const auto& a : matrices) scale = std::max(scale, max_abs(a));
        if (!is_zero_matrix(momentum(), kIsExact<S> ? 0.0 : tol * scale)) rep.fail("momentum is not zero");
        return rep;
    }
};

// Anchor roles and eigenvalue choices fixing the section.  anchor_n plays
// the paper's N (equal row sums), anchor_up its N-1 (upper-triangular),
// anchor_low its N-2 (lower-triangular).
template <class S>
struct DiscreteData {
    int anchor_n = 0;
    int anchor_up = 0;
    int anchor_low = 0;
    S lambda_n{};
    EigenOrdering<S> ordering_up;
    EigenOrdering<S> ordering_low;

    std::vector<int> tail_indices(int n_orbits) const {
        std::vector<int> t;
        for (int i = 0; i < n_orbits; ++i)
            if (i != anchor_n && i != anchor_up && i != anchor_low) t.push_back(i);
        return t;
    }
};

// Default discrete data: anchors are the last three indices in the paper's
// roles, lambda_N the first listed eigenvalue, orderings the spec order.
template <class S>
DiscreteData<S> default_discrete(const std::vector<OrbitSpec<S>>& specs) {
    const int n = static_cast<int>(specs.size());
    DiscreteData<S> d;
    d.anchor_n = n - 1;
    d.anchor_up = n - 2;
    d.anchor_low = n - 3;
    d.lambda_n = specs[d.anchor_n].eigs.front().first;
    d.ordering_up = EigenOrdering<S>::from_spec(specs[d.anchor_up]);
    d.ordering_low = EigenOrdering<S>::from_spec(specs[d.anchor_low]);
    return d;
}

template <class S>
DiscreteData<S> default_discrete(const FuchsTuple<S>& tuple) {
    return default_discrete(tuple.specs);
}

template <class S>
void validate_discrete(const FuchsTuple<S>& tuple, const DiscreteData<S>& data,
                       double tol = kDefaultTol) {
    const int n = tuple.n_orbits();
    auto in_range = [n](int i) { return i >= 0 && i < n; };
    if (!in_range(data.anchor_n) || !in_range(data.anchor_up) || !in_range(data.anchor_low) ||
        data.anchor_n == data.anchor_up || data.anchor_n == data.anchor_low ||
        data.anchor_up == data.anchor_low)
        throw Error("anchor indices must be three distinct valid indices");
    if (!tuple.specs[data.anchor_n].has_eigenvalue(data.lambda_n, tol))
        throw EigenvalueMismatch("lambda_N is not an eigenvalue of the row-sum anchor's spec");
    if (!ordering_matches_spec(data.ordering_up, tuple.specs[data.anchor_up], tol))
        throw InvalidOrdering("ordering_up does not match the upper anchor's spec");
    if (!ordering_matches_spec(data.ordering_low, tuple.specs[data.anchor_low], tol))
        throw InvalidOrdering("ordering_low does not match the lower anchor's spec");
}

// The constant matrix Xi: identity with an all-ones last column.
template <class S>
SquareMatrix<S> xi_matrix(int m) {
    SquareMatrix<S> x = SquareMatrix<S>::identity(m);
    for (int i = 0; i < m; ++i) x.at(i, m - 1) = S(1L);
    return x;
}

template <class S>
SquareMatrix<S> xi_matrix_inverse(int m) {
    SquareMatrix<S> x = SquareMatrix<S>::identity(m);
    for (int i = 0; i + 1 < m; ++i) x.at(i, m - 1) = S(-1L);
    return x;
}

template <class S>
OrbitSpec<S> quotient_spec(const OrbitSpec<S>& spec, const S& lambda, double tol = kDefaultTol) {
    const double eff = kIsExact<S> ? 0.0 : tol;
    OrbitSpec<S> q;
    q.m = spec.m - 1;
    bool found = false;
    for (const auto& [lam, k] : spec.eigs) {
        if (!found && is_zero(lam - lambda, eff)) {
            found = true;
            if (k > 1) q.eigs.emplace_back(lam, k - 1);
        } else {
            q.eigs.emplace_back(lam, k);
        }
    }
    if (!found) throw EigenvalueMismatch("lambda is not an eigenvalue of the spec");
    return q;
}

// The unique conjugacy-class representative with: upper anchor
// upper-triangular (diagonal = ordering_up), lower anchor lower-triangular
// (diagonal = ordering_low), and every row of the third anchor summing to
// lambda_N.  Unique up to an overall scalar, which conjugation cancels.
template <class S>
FuchsTuple<S> canonical_section(const FuchsTuple<S>& tuple, const DiscreteData<S>& data,
                                double tol = kDefaultTol) {
    validate_discrete(tuple, data, tol);
    const int m = tuple.dim();
    auto [p_up, j_up] = jordan_basis(tuple.matrices[data.anchor_up], tuple.specs[data.anchor_up],
                                     data.ordering_up, TriangularFlavor::upper, tol);
    auto [p_low, j_low] = jordan_basis(tuple.matrices[data.anchor_low], tuple.specs[data.anchor_low],
                                       data.ordering_low, TriangularFlavor::lower, tol);
    SquareMatrix<S> phi_ul = inverse(p_up, tol) * p_low;
    auto [phi_plus, phi_minus] = gauss_ul_decompose(phi_ul, tol);
    (void)phi_minus;
    SquareMatrix<S> g0 = p_up * phi_plus;
    SquareMatrix<S> c = inverse(g0, tol) * tuple.matrices[data.anchor_n] * g0;
    auto eig = eigenspace_basis(c, data.lambda_n, 1, tol);
    if (eig.empty()) throw EigenvalueMismatch("lambda_N is not an eigenvalue of the anchor matrix");
    Vector<S> f = eig.front();
    const double eff = kIsExact<S> ? 0.0 : tol;
    int lead = -1;
    for (int i = 0; i < m; ++i)
        if (!is_zero(f[i], eff)) {
            lead = i;
            break;
        }
    S scale = f[lead];
    for (int i = 0; i < m; ++i) f[i] = f[i] / scale;
    for (int i = 0; i < m; ++i)
        if (is_zero(f[i], eff))
            throw ZeroEigenvectorComponent("component " + std::to_string(i) +
                                           " of the condition-(3) eigenvector vanishes");
    SquareMatrix<S> g = g0 * diag_from(f);
    SquareMatrix<S> g_inv = inverse(g, tol);
    FuchsTuple<S> out = tuple;
    for (auto& a : out.matrices) a = g_inv * a * g;
    return out;
}

// Coordinates on the product of N-2 orbits: the deflated block plus the
// untouched non-anchor matrices of the section representative.
template <class S>
struct ReducedPoint {
    std::vector<OrbitSpec<S>> specs;  // all N original specs, echoed
    DiscreteData<S> data;
    SquareMatrix<S> a_hat;
    std::vector<SquareMatrix<S>> tail;  // non-anchor indices, ascending

    friend bool operator==(const ReducedPoint& a, const ReducedPoint& b) {
        return a.a_hat == b.a_hat && a.tail == b.tail;
    }
};

template <class S>
ReducedPoint<S> reduce(const FuchsTuple<S>& tuple, const DiscreteData<S>& data,
                       double tol = kDefaultTol) {
    FuchsTuple<S> s = canonical_section(tuple, data, tol);
    const int m = s.dim();
    SquareMatrix<S> b = xi_matrix_inverse<S>(m) * s.matrices[data.anchor_n] * xi_matrix<S>(m);
    const double eff = kIsExact<S> ? 0.0 : tol * std::max(1.0, max_abs(b));
    for (int i = 0; i + 1 < m; ++i)
        if (!is_zero(b.at(i, m - 1), eff))
            throw Error("block-triangular form violated: last column not (0,...,0,lambda)");
    if (!is_zero(b.at(m - 1, m - 1) - data.lambda_n, eff))
        throw Error("block-triangular form violated: corner is not lambda_N");
    ReducedPoint<S> p;
    p.specs = s.specs;
    p.data = data;
    p.a_hat = SquareMatrix<S>(m - 1);
    for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j + 1 < m; ++j) p.a_hat.at(i, j) = b.at(i, j);
    for (int idx : data.tail_indices(s.n_orbits())) p.tail.push_back(s.matrices[idx]);
    return p;
}

template <class S>
struct LiftResult {
    FuchsTuple<S> tuple;
    MembershipReport report;  // anchor membership; failures mark the birational boundary
    bool ok = true;
};

// Explicit inverse: border a_hat with a zero row/column, restore the
// prescribed diagonals, rebuild the row-sum anchor from the bordered block,
// and fill the anchors' strict triangles from the zero-momentum constraint.
template <class S>
LiftResult<S> lift(const ReducedPoint<S>& point, double tol = kDefaultTol) {
    const int n = static_cast<int>(point.specs.size());
    const int m = point.specs.front().m;
    const DiscreteData<S>& data = point.data;
    std::vector<int> tail_idx = data.tail_indices(n);
    if (tail_idx.size() != point.tail.size()) throw Error("tail length mismatch");

    std::vector<SquareMatrix<S>> mats(n, SquareMatrix<S>(m));
    for (size_t t = 0; t < tail_idx.size(); ++t) mats[tail_idx[t]] = point.tail[t];

    // bordered block: a_hat plus a zero last row and column
    SquareMatrix<S> ring(m);
    for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j + 1 < m; ++j) ring.at(i, j) = point.a_hat.at(i, j);

    // prescribed diagonals of the triangular anchors
    SquareMatrix<S>& up = mats[data.anchor_up];
    SquareMatrix<S>& low = mats[data.anchor_low];
    for (int i = 0; i < m; ++i) {
        up.at(i, i) = data.ordering_up.slots[i];
        low.at(i, i) = data.ordering_low.slots[i];
    }

    // diagonal of the row-sum anchor from the zero-momentum constraint
    Vector<S> d(m, S(0L));
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < n; ++k)
            if (k != data.anchor_n) d[i] -= mats[k].at(i, i);
    }

    // A^(N) = ring + (1 (x) 1)(D - ring_diag) - (0...01) (x) (ring * 1)
    Vector<S> row_sums(m, S(0L));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) row_sums[i] += ring.at(i, j);
    SquareMatrix<S>& an = mats[data.anchor_n];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            an.at(i, j) = ring.at(i, j) + (d[j] - ring.at(j, j));
            if (j == m - 1) an.at(i, j) -= row_sums[i];
        }

    // strict triangles of the anchors from the zero-momentum constraint
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i < j) {
                S s(0L);
                for (int k = 0; k < n; ++k)
                    if (k != data.anchor_up) s += mats[k].at(i, j);
                up.at(i, j) = -s;
            } else if (i > j) {
                S s(0L);
                for (int k = 0; k < n; ++k)
                    if (k != data.anchor_low) s += mats[k].at(i, j);
                low.at(i, j) = -s;
            }
        }

    LiftResult<S> out;
    out.tuple.specs = point.specs;
    out.tuple.matrices = std::move(mats);
    for (int a : {data.anchor_n, data.anchor_up, data.anchor_low}) {
        auto r = check_membership(out.tuple.matrices[a], point.specs[a], tol);
        if (!r.ok) out.report.fail("anchor " + std::to_string(a) + " off its orbit: " + r.summary());
    }
    out.ok = out.report.ok;
    return out;
}

// Lift that insists the result is on-orbit.
template <class S>
FuchsTuple<S> lift_strict(const ReducedPoint<S>& point, double tol = kDefaultTol) {
    LiftResult<S> r = lift(point, tol);
    if (!r.ok) throw LiftedOffOrbit(r.report.summary());
    return std::move(r.tuple);
}

template <class S>
OrbitSpec<FloatingComplex> to_floating_spec(const OrbitSpec<S>& spec) {
    OrbitSpec<FloatingComplex> f;
    f.m = spec.m;
    for (const auto& [lam, k] : spec.eigs) f.eigs.emplace_back(to_floating(lam), k);
    return f;
}

template <class S>
FuchsTuple<FloatingComplex> to_floating_tuple(const FuchsTuple<S>& t) {
    FuchsTuple<FloatingComplex> f;
    for (const auto& sp : t.specs) f.specs.push_back(to_floating_spec(sp));
    for (const auto& a : t.matrices) f.matrices.push_back(to_floating(a));
    for (const auto& p : t.poles) f.poles.push_back(to_floating(p));
    return f;
}

template <class S>
DiscreteData<FloatingComplex> to_floating_data(const DiscreteData<S>& d) {
    DiscreteData<FloatingComplex> f;
    f.anchor_n = d.anchor_n;
    f.anchor_up = d.anchor_up;
    f.anchor_low = d.anchor_low;
    f.lambda_n = to_floating(d.lambda_n);
    for (const auto& s : d.ordering_up.slots) f.ordering_up.slots.push_back(to_floating(s));
    for (const auto& s : d.ordering_low.slots) f.ordering_low.slots.push_back(to_floating(s));
    return f;
}

// Random tuple generator: sample the reduced coordinates, lift, then move
// off the section by a random conjugation.  Retries when the lifted anchors
// fall off their orbits.
template <class S>
FuchsTuple<S> sample_tuple(const std::vector<OrbitSpec<S>>& specs, const DiscreteData<S>& data,
                           Rng& rng, double tol = kDefaultTol, int max_retries = 64) {
    S total(0L);
    for (const auto& sp : specs) total += sp.trace_value();
    if (!is_zero(total, kIsExact<S> ? 0.0 : tol))
        throw Error("orbit traces do not sum to zero; no zero-momentum tuple exists");
    OrbitSpec<S> qspec = quotient_spec(specs[data.anchor_n], data.lambda_n, tol);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        ReducedPoint<S> p;
        p.specs = specs;
        p.data = data;
        p.a_hat = qspec.m == 0 ? SquareMatrix<S>(0) : sample_point(qspec, rng, tol);
        for (int idx : data.tail_indices(static_cast<int>(specs.size())))
            p.tail.push_back(sample_point(specs[idx], rng, tol));
        LiftResult<S> lr = lift(p, tol);
        if (!lr.ok) continue;
        SquareMatrix<S> g = random_invertible<S>(specs.front().m, rng, tol);
        SquareMatrix<S> gi = inverse(g, tol);
        for (auto& a : lr.tuple.matrices) a = gi * a * g;
        return std::move(lr.tuple);
    }
    throw Error("could not sample an on-orbit tuple after bounded retries");
}

}  // namespace orbitred
