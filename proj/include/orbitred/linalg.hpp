#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "orbitred/errors.hpp"
#include "orbitred/matrix.hpp"

namespace orbitred {

// Default tolerance for floating-mode zero decisions; scaled by the largest
// entry of the system it is applied to.
inline constexpr double kDefaultTol = 1e-10;

// Rectangular systems are a vector of rows.
template <class S>
using RowMatrix = std::vector<Vector<S>>;

template <class S>
double row_matrix_max_abs(const RowMatrix<S>& rows) {
    double r = 0.0;
    for (const auto& row : rows)
        for (const auto& x : row) r = std::max(r, abs_of(x));
    return r;
}

// Reduced row echelon form in place.  Pivot selection is deterministic: in
// exact mode, the first row (top to bottom) with a nonzero entry in the
// current column; in floating mode, the row with the largest entry, accepted
// only if it clears the tolerance.  The tolerance gates rank decisions, not
// elimination: once a pivot is accepted, every other row is cleared in the
// pivot column, so small entries never accumulate as residue.  Returns the
// pivot columns in order.
template <class S>
std::vector<int> rref_in_place(RowMatrix<S>& rows, double tol = kDefaultTol) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    const int nrows = static_cast<int>(rows.size());
    const int ncols = static_cast<int>(rows[0].size());
    const double eff = kIsExact<S> ? 0.0 : tol * std::max(1.0, row_matrix_max_abs(rows));
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int p = -1;
        if constexpr (kIsExact<S>) {
            for (int i = r; i < nrows; ++i)
                if (!is_zero(rows[i][c], eff)) {
                    p = i;
                    break;
                }
        } else {
            double best = 0.0;
            for (int i = r; i < nrows; ++i) {
                double a = abs_of(rows[i][c]);
                if (a > best) {
                    best = a;
                    p = i;
                }
            }
            if (p >= 0 && is_zero(rows[p][c], eff)) p = -1;
        }
        if (p < 0) continue;
        std::swap(rows[r], rows[p]);
        S inv = S(1L) / rows[r][c];
        for (int j = c; j < ncols; ++j) rows[r][j] = rows[r][j] * inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || !elimination_nonzero(rows[i][c], kIsExact<S> ? eff : 0.0)) continue;
            S f = rows[i][c];
            for (int j = c; j < ncols; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Solve rows * x = rhs; underdetermined systems get free variables set to
// zero, inconsistent systems yield nullopt.
template <class S>
std::optional<Vector<S>> solve_rect(RowMatrix<S> rows, const Vector<S>& rhs, double tol = kDefaultTol) {
    const int nrows = static_cast<int>(rows.size());
    const int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    for (int i = 0; i < nrows; ++i) rows[i].push_back(rhs[i]);
    std::vector<int> pivots = rref_in_place(rows, tol);
    for (int p : pivots)
        if (p == ncols) return std::nullopt;
    Vector<S> x(ncols, S(0L));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r][ncols];
    return x;
}

// Basis of the kernel, one vector per free column, in ascending column order.
template <class S>
std::vector<Vector<S>> kernel_basis_rect(RowMatrix<S> rows, double tol = kDefaultTol) {
    const int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    std::vector<int> pivots = rref_in_place(rows, tol);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<Vector<S>> basis;
    for (int c = 0; c < ncols; ++c) {
        if (is_pivot[c]) continue;
        Vector<S> v(ncols, S(0L));
        v[c] = S(1L);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Dual-number kernels need care: the base point's pivot pattern may hold
// only at the point, not identically along the derivative direction, so
// differentiating the echelon formula would follow the wrong branch.
// Instead: take the value kernel with its free-component normalization
// (v[c_i] = 1, other free components 0) and solve the linearized system
// V vdot = -E v for the derivative slots over the pivot columns.
template <class B>
std::vector<Vector<DualScalar<B>>> kernel_basis_rect(const RowMatrix<DualScalar<B>>& rows,
                                                     double tol = kDefaultTol) {
    const int nrows = static_cast<int>(rows.size());
    const int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    RowMatrix<B> value(nrows, Vector<B>(ncols, B(0L))), deriv(nrows, Vector<B>(ncols, B(0L)));
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) {
            value[i][j] = rows[i][j].value;
            deriv[i][j] = rows[i][j].deriv;
        }
    RowMatrix<B> echelon = value;
    std::vector<int> pivots = rref_in_place(echelon, tol);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<Vector<B>> base = kernel_basis_rect(value, tol);
    std::vector<Vector<DualScalar<B>>> out;
    for (const auto& v0 : base) {
        Vector<B> rhs(nrows, B(0L));
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) rhs[i] -= deriv[i][j] * v0[j];
        RowMatrix<B> sys(nrows, Vector<B>(pivots.size(), B(0L)));
        for (int i = 0; i < nrows; ++i)
            for (size_t p = 0; p < pivots.size(); ++p) sys[i][p] = value[i][pivots[p]];
        auto w = solve_rect(std::move(sys), rhs, tol);
        if (!w) throw NotInTangentSpace("derivative direction leaves the rank stratum");
        Vector<DualScalar<B>> v(ncols);
        for (int j = 0; j < ncols; ++j) v[j] = DualScalar<B>(v0[j], B(0L));
        for (size_t p = 0; p < pivots.size(); ++p) v[pivots[p]].deriv = (*w)[p];
        out.push_back(std::move(v));
    }
    return out;
}

// Kernel with a caller-known dimension.  In floating mode the rank cut is
// escalated (decade steps) until the kernel reaches the expected dimension:
// probe points reached by on-orbit perturbation keep the exact rank profile,
// but the near-null pivots they produce can sit anywhere between roundoff
// and the perturbation scale, so no single threshold classifies them.  The
// tolerance only gates pivot acceptance, never elimination, so escalation
// costs no accuracy in the returned vectors.  Returns whatever the last cut
// produced; the caller checks the dimension.
template <class S>
std::vector<Vector<S>> kernel_basis_expected(const RowMatrix<S>& rows, int expected,
                                             double tol = kDefaultTol) {
    auto ker = kernel_basis_rect(rows, tol);
    if constexpr (!kIsExact<S>) {
        double t = tol;
        while (static_cast<int>(ker.size()) < expected && t < 1e-4) {
            t *= 10.0;
            ker = kernel_basis_rect(rows, t);
        }
    }
    return ker;
}

template <class S>
RowMatrix<S> to_rows(const SquareMatrix<S>& a) {
    RowMatrix<S> rows(a.dim(), Vector<S>(a.dim(), S(0L)));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) rows[i][j] = a.at(i, j);
    return rows;
}

template <class S>
int rank(const SquareMatrix<S>& a, double tol = kDefaultTol) {
    RowMatrix<S> rows = to_rows(a);
    return static_cast<int>(rref_in_place(rows, tol).size());
}

template <class S>
Vector<S> linear_solve(const SquareMatrix<S>& a, const Vector<S>& b, double tol = kDefaultTol) {
    if (rank(a, tol) < a.dim()) throw SingularMatrix();
    auto x = solve_rect(to_rows(a), b, tol);
    if (!x) throw SingularMatrix();
    return *x;
}

template <class S>
SquareMatrix<S> inverse(const SquareMatrix<S>& a, double tol = kDefaultTol) {
    const int m = a.dim();
    RowMatrix<S> rows(m, Vector<S>(2 * m, S(0L)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) rows[i][j] = a.at(i, j);
        rows[i][m + i] = S(1L);
    }
    std::vector<int> pivots = rref_in_place(rows, tol);
    if (static_cast<int>(pivots.size()) != m || pivots.back() != m - 1) throw SingularMatrix();
    SquareMatrix<S> r(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r.at(i, j) = rows[i][m + j];
    return r;
}

// Inverse of a triangular matrix by substitution; preserves the flavor.
template <class S>
SquareMatrix<S> triangular_inverse(const SquareMatrix<S>& t, TriangularFlavor flavor,
                                   double tol = kDefaultTol) {
    const int m = t.dim();
    const double eff = kIsExact<S> ? 0.0 : tol * std::max(1.0, max_abs(t));
    for (int i = 0; i < m; ++i)
        if (is_zero(t.at(i, i), eff)) throw SingularMatrix("triangular matrix has zero diagonal");
    SquareMatrix<S> r(m);
    if (flavor == TriangularFlavor::lower) {
        for (int j = 0; j < m; ++j) {
            r.at(j, j) = S(1L) / t.at(j, j);
            for (int i = j + 1; i < m; ++i) {
                S s(0L);
                for (int k = j; k < i; ++k) s += t.at(i, k) * r.at(k, j);
                r.at(i, j) = -s / t.at(i, i);
            }
        }
    } else {
        for (int j = m - 1; j >= 0; --j) {
            r.at(j, j) = S(1L) / t.at(j, j);
            for (int i = j - 1; i >= 0; --i) {
                S s(0L);
                for (int k = i + 1; k <= j; ++k) s += t.at(i, k) * r.at(k, j);
                r.at(i, j) = -s / t.at(i, i);
            }
        }
    }
    return r;
}

// UL ("Gauss") decomposition M = Phi_plus * Phi_minus with Phi_plus upper
// triangular and Phi_minus lower triangular with unit diagonal.  Strictly
// pivot free: a vanishing pivot is a domain-boundary certificate, not a
// numerical event to repair, so no row exchanges happen here.  The pivots
// U_kk are exactly the factors of the trailing principal minors of M.
template <class S>
std::pair<SquareMatrix<S>, SquareMatrix<S>> gauss_ul_decompose(const SquareMatrix<S>& mat,
                                                               double tol = kDefaultTol) {
    const int m = mat.dim();
    const double eff = kIsExact<S> ? 0.0 : tol * std::max(1.0, max_abs(mat));
    SquareMatrix<S> u(m), l = SquareMatrix<S>::identity(m);
    for (int k = m - 1; k >= 0; --k) {
        for (int i = 0; i <= k; ++i) {
            S s = mat.at(i, k);
            for (int t = k + 1; t < m; ++t) s -= u.at(i, t) * l.at(t, k);
            u.at(i, k) = s;
        }
        if (is_zero(u.at(k, k), eff)) throw GaussObstruction("zero pivot in UL schedule at index " + std::to_string(k));
        for (int j = 0; j < k; ++j) {
            S s = mat.at(k, j);
            for (int t = k + 1; t < m; ++t) s -= u.at(k, t) * l.at(t, j);
            l.at(k, j) = s / u.at(k, k);
        }
    }
    return {u, l};
}

// Basis of ker(A - lambda I); eigenvalues are caller-supplied data, never
// computed as polynomial roots.
template <class S>
std::vector<Vector<S>> eigenspace_basis(const SquareMatrix<S>& a, const S& lambda,
                                        double tol = kDefaultTol) {
    SquareMatrix<S> b = a;
    for (int i = 0; i < a.dim(); ++i) b.at(i, i) -= lambda;
    return kernel_basis_rect(to_rows(b), tol);
}

// Variant with a caller-known eigenspace dimension; see kernel_basis_expected.
template <class S>
std::vector<Vector<S>> eigenspace_basis(const SquareMatrix<S>& a, const S& lambda, int expected,
                                        double tol = kDefaultTol) {
    SquareMatrix<S> b = a;
    for (int i = 0; i < a.dim(); ++i) b.at(i, i) -= lambda;
    return kernel_basis_expected(to_rows(b), expected, tol);
}

template <class S>
SquareMatrix<S> matrix_power(const SquareMatrix<S>& a, int k) {
    SquareMatrix<S> r = SquareMatrix<S>::identity(a.dim());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

// Solve [A, U] = xi for U.  The m^2 x m^2 system for ad_A is solved by a
// deterministic echelon pass with free variables set to zero; any solution
// gives the same Lie-Poisson value.
template <class S>
SquareMatrix<S> solve_bracket(const SquareMatrix<S>& a, const SquareMatrix<S>& xi,
                              double tol = kDefaultTol) {
    const int m = a.dim();
    const int n = m * m;
    RowMatrix<S> rows(n, Vector<S>(n, S(0L)));
    Vector<S> rhs(n, S(0L));
    auto idx = [m](int i, int j) { return i * m + j; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            // ([A,U])_{ij} = sum_k A_ik U_kj - U_ik A_kj
            for (int k = 0; k < m; ++k) {
                rows[idx(i, j)][idx(k, j)] += a.at(i, k);
                rows[idx(i, j)][idx(i, k)] -= a.at(k, j);
            }
            rhs[idx(i, j)] = xi.at(i, j);
        }
    auto x = solve_rect(std::move(rows), rhs, tol);
    if (!x) throw NotInTangentSpace();
    SquareMatrix<S> u(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) u.at(i, j) = (*x)[idx(i, j)];
    return u;
}

}  // namespace orbitred
