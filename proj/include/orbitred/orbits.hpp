#pragma once

#include <random>
#include <string>
#include <vector>

#include "orbitred/linalg.hpp"
#include "orbitred/matrix.hpp"

namespace orbitred {

// Conjugacy class O(chi) of matrices with one-dimensional eigenspaces,
// stored as eigenvalues with multiplicities (one Jordan block per
// eigenvalue).  Eigenvalues are data; polynomial coefficients never appear.
template <class S>
struct OrbitSpec {
    int m = 0;
    std::vector<std::pair<S, int>> eigs;  // (eigenvalue, multiplicity)

    bool valid(double tol = kDefaultTol) const {
        int total = 0;
        for (const auto& [lam, k] : eigs) {
            if (k < 1) return false;
            total += k;
        }
        if (total != m) return false;
        const double eff = kIsExact<S> ? 0.0 : tol;
        for (size_t i = 0; i < eigs.size(); ++i)
            for (size_t j = i + 1; j < eigs.size(); ++j)
                if (is_zero(eigs[i].first - eigs[j].first, eff)) return false;
        return true;
    }

    S trace_value() const {
        S t(0L);
        for (const auto& [lam, k] : eigs)
            for (int i = 0; i < k; ++i) t += lam;
        return t;
    }

    bool has_eigenvalue(const S& lambda, double tol = kDefaultTol) const {
        const double eff = kIsExact<S> ? 0.0 : tol;
        for (const auto& [lam, k] : eigs)
            if (is_zero(lam - lambda, eff)) return true;
        return false;
    }
};

inline int orbit_dimension(int m) { return m * (m - 1); }
template <class S>
int orbit_dimension(const OrbitSpec<S>& spec) {
    return orbit_dimension(spec.m);
}

struct MembershipReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string why) {
        ok = false;
        failures.push_back(std::move(why));
    }
    std::string summary() const {
        if (ok) return "ok";
        std::string s;
        for (const auto& f : failures) s += (s.empty() ? "" : "; ") + f;
        return s;
    }
};

// A is on O(chi) iff for each (lambda_i, k_i): rank(A - lambda_i I) = m-1
// (geometric multiplicity one) and rank((A - lambda_i I)^{k_i}) = m - k_i,
// with the multiplicities exhausting the spectrum.
template <class S>
MembershipReport check_membership(const SquareMatrix<S>& a, const OrbitSpec<S>& spec,
                                  double tol = kDefaultTol) {
    MembershipReport rep;
    const int m = spec.m;
    if (a.dim() != m) {
        rep.fail("dimension mismatch: matrix " + std::to_string(a.dim()) + " vs spec " + std::to_string(m));
        return rep;
    }
    if (!spec.valid(tol)) {
        rep.fail("invalid orbit spec");
        return rep;
    }
    for (const auto& [lam, k] : spec.eigs) {
        SquareMatrix<S> b = a;
        for (int i = 0; i < m; ++i) b.at(i, i) -= lam;
        int r1 = rank(b, tol);
        if (r1 != m - 1)
            rep.fail("eigenvalue " + to_string(lam) + ": rank(A-lambda I) = " + std::to_string(r1) +
                     ", expected " + std::to_string(m - 1));
        if (k > 1) {
            int rk = rank(matrix_power(b, k), tol);
            if (rk != m - k)
                rep.fail("eigenvalue " + to_string(lam) + ": rank((A-lambda I)^" + std::to_string(k) +
                         ") = " + std::to_string(rk) + ", expected " + std::to_string(m - k));
        }
    }
    return rep;
}

// Seeded randomness; small integers keep exact-mode entry growth manageable
// and floating-mode conditioning sane.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}
    int small_int(int lo = -3, int hi = 3) {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }
    uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

template <class S>
SquareMatrix<S> random_integer_matrix(int m, Rng& rng, int lo = -3, int hi = 3) {
    SquareMatrix<S> g(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g.at(i, j) = S(static_cast<long>(rng.small_int(lo, hi)));
    return g;
}

template <class S>
SquareMatrix<S> random_invertible(int m, Rng& rng, double tol = kDefaultTol) {
    for (;;) {
        SquareMatrix<S> g = random_integer_matrix<S>(m, rng);
        if (rank(g, tol) == m) return g;
    }
}

// forward declaration; the seed matrix comes from the jordan module
template <class S>
SquareMatrix<S> jordan_seed_matrix(const OrbitSpec<S>& spec);

// A random point of the orbit: conjugate the ordered Jordan seed by a random
// small-integer invertible matrix.
template <class S>
SquareMatrix<S> sample_point(const OrbitSpec<S>& spec, Rng& rng, double tol = kDefaultTol) {
    SquareMatrix<S> j = jordan_seed_matrix(spec);
    SquareMatrix<S> g = random_invertible<S>(spec.m, rng, tol);
    return inverse(g, tol) * j * g;
}

}  // namespace orbitred
