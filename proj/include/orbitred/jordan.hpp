#pragma once

#include <utility>
#include <vector>

#include "orbitred/linalg.hpp"
#include "orbitred/orbits.hpp"

namespace orbitred {

// Sequence of m eigenvalue slots; the multiset must match the spec and
// repeated eigenvalues must sit in contiguous runs.
template <class S>
struct EigenOrdering {
    std::vector<S> slots;

    static EigenOrdering from_spec(const OrbitSpec<S>& spec) {
        EigenOrdering o;
        for (const auto& [lam, k] : spec.eigs)
            for (int i = 0; i < k; ++i) o.slots.push_back(lam);
        return o;
    }
};

template <class S>
bool ordering_matches_spec(const EigenOrdering<S>& ordering, const OrbitSpec<S>& spec,
                           double tol = kDefaultTol) {
    if (static_cast<int>(ordering.slots.size()) != spec.m) return false;
    const double eff = kIsExact<S> ? 0.0 : tol;
    // contiguity: each eigenvalue occurs in exactly one run
    for (size_t i = 0; i < ordering.slots.size(); ++i)
        for (size_t j = i + 2; j < ordering.slots.size(); ++j)
            if (is_zero(ordering.slots[i] - ordering.slots[j], eff) &&
                !is_zero(ordering.slots[j - 1] - ordering.slots[j], eff))
                return false;
    // multiset equality against the spec
    for (const auto& [lam, k] : spec.eigs) {
        int count = 0;
        for (const auto& s : ordering.slots)
            if (is_zero(s - lam, eff)) ++count;
        if (count != k) return false;
    }
    return true;
}

// Contiguous runs (start index, length, eigenvalue) of an ordering.
template <class S>
std::vector<std::tuple<int, int, S>> ordering_runs(const EigenOrdering<S>& ordering,
                                                   double tol = kDefaultTol) {
    const double eff = kIsExact<S> ? 0.0 : tol;
    std::vector<std::tuple<int, int, S>> runs;
    const int m = static_cast<int>(ordering.slots.size());
    for (int i = 0; i < m;) {
        int j = i + 1;
        while (j < m && is_zero(ordering.slots[j] - ordering.slots[i], eff)) ++j;
        runs.emplace_back(i, j - i, ordering.slots[i]);
        i = j;
    }
    return runs;
}

template <class S>
struct OrderedJordanForm {
    SquareMatrix<S> matrix;
    TriangularFlavor flavor = TriangularFlavor::upper;
    EigenOrdering<S> ordering;
};

// Ordered Jordan matrix: assigned diagonal, chain-link 1s on the first
// super- (upper) or sub-diagonal (lower) inside each eigenvalue run.
template <class S>
OrderedJordanForm<S> jordan_seed(const OrbitSpec<S>& spec, const EigenOrdering<S>& ordering,
                                 TriangularFlavor flavor, double tol = kDefaultTol) {
    if (!ordering_matches_spec(ordering, spec, tol))
        throw InvalidOrdering("ordering does not match spec (multiset or contiguity)");
    const int m = spec.m;
    const double eff = kIsExact<S> ? 0.0 : tol;
    SquareMatrix<S> j(m);
    for (int i = 0; i < m; ++i) j.at(i, i) = ordering.slots[i];
    for (int i = 0; i + 1 < m; ++i) {
        if (!is_zero(ordering.slots[i] - ordering.slots[i + 1], eff)) continue;
        if (flavor == TriangularFlavor::upper)
            j.at(i, i + 1) = S(1L);
        else
            j.at(i + 1, i) = S(1L);
    }
    return {std::move(j), flavor, ordering};
}

template <class S>
SquareMatrix<S> jordan_seed_matrix(const OrbitSpec<S>& spec) {
    return jordan_seed(spec, EigenOrdering<S>::from_spec(spec), TriangularFlavor::upper).matrix;
}

template <class S>
bool vector_is_zero(const Vector<S>& v, double tol) {
    for (const auto& x : v)
        if (!is_zero(x, tol)) return false;
    return true;
}

// Jordan basis for one eigenvalue run: lead vector is the first echelon
// kernel-basis vector of ker(A - lambda I)^k outside ker(A - lambda I)^{k-1};
// the chain is lead, (A - lambda I) lead, ... down to the eigenvector.
template <class S>
std::vector<Vector<S>> jordan_chain(const SquareMatrix<S>& a, const S& lambda, int k,
                                    double tol = kDefaultTol) {
    const int m = a.dim();
    SquareMatrix<S> b = a;
    for (int i = 0; i < m; ++i) b.at(i, i) -= lambda;
    const double eff = kIsExact<S> ? 0.0 : tol * std::max(1.0, max_abs(a));
    auto eig = kernel_basis_expected(to_rows(b), 1, tol);
    if (eig.size() != 1)
        throw MembershipViolation("eigenvalue " + to_string(lambda) + " has geometric multiplicity " +
                                  std::to_string(eig.size()));
    Vector<S> lead;
    if (k == 1) {
        lead = eig[0];
    } else {
        SquareMatrix<S> bk1 = matrix_power(b, k - 1);
        auto ker = kernel_basis_expected(to_rows(matrix_power(b, k)), k, tol);
        if (static_cast<int>(ker.size()) != k)
            throw MembershipViolation("ker(A-lambda I)^k has dimension " + std::to_string(ker.size()) +
                                      ", expected " + std::to_string(k));
        for (const auto& v : ker) {
            if (!vector_is_zero(bk1 * v, eff)) {
                lead = v;
                break;
            }
        }
        if (lead.empty()) throw MembershipViolation("no lead vector for Jordan chain");
    }
    std::vector<Vector<S>> chain{lead};
    for (int t = 1; t < k; ++t) chain.push_back(b * chain.back());
    return chain;  // chain[0] = lead, chain[k-1] = eigenvector
}

// Jordan basis P with P^{-1} A P = J for the assigned ordering and flavor.
// Upper flavor lists each chain from eigenvector up to the lead vector;
// lower flavor reverses the chain direction.
template <class S>
std::pair<SquareMatrix<S>, OrderedJordanForm<S>> jordan_basis(const SquareMatrix<S>& a,
                                                              const OrbitSpec<S>& spec,
                                                              const EigenOrdering<S>& ordering,
                                                              TriangularFlavor flavor,
                                                              double tol = kDefaultTol) {
    OrderedJordanForm<S> j = jordan_seed(spec, ordering, flavor, tol);
    const int m = spec.m;
    SquareMatrix<S> p(m);
    for (const auto& [start, len, lam] : ordering_runs(ordering, tol)) {
        auto chain = jordan_chain(a, lam, len, tol);
        for (int t = 0; t < len; ++t) {
            // column start+t gets chain position per flavor
            const Vector<S>& col =
                (flavor == TriangularFlavor::upper) ? chain[len - 1 - t] : chain[t];
            for (int i = 0; i < m; ++i) p.at(i, start + t) = col[i];
        }
    }
    if (rank(p, tol) != m) throw MembershipViolation("Jordan chains do not span");
    return {std::move(p), std::move(j)};
}

// Prop.-style triangular specialization: a triangular input with the ordered
// diagonal is brought to Jordan form by a triangular change of basis of the
// same flavor.
template <class S>
std::pair<SquareMatrix<S>, OrderedJordanForm<S>> triangular_to_jordan(const SquareMatrix<S>& t,
                                                                      const OrbitSpec<S>& spec,
                                                                      const EigenOrdering<S>& ordering,
                                                                      TriangularFlavor flavor,
                                                                      double tol = kDefaultTol) {
    const double eff = kIsExact<S> ? 0.0 : tol * std::max(1.0, max_abs(t));
    if (!is_triangular(t, flavor, eff)) throw InvalidOrdering("input matrix is not triangular of the given flavor");
    for (int i = 0; i < t.dim(); ++i)
        if (!is_zero(t.at(i, i) - ordering.slots[i], eff))
            throw InvalidOrdering("diagonal does not equal the assigned ordering");
    auto [p, j] = jordan_basis(t, spec, ordering, flavor, tol);
    if (!is_triangular(p, flavor, eff))
        throw MembershipViolation("triangular closure failed: change of basis not triangular");
    return {std::move(p), std::move(j)};
}

}  // namespace orbitred
