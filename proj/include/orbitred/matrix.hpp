#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "orbitred/errors.hpp"
#include "orbitred/scalar.hpp"

namespace orbitred {

template <class S>
using Vector = std::vector<S>;

// Dense square matrix over one scalar mode, row-major.
template <class S>
class SquareMatrix {
public:
    SquareMatrix() : m_(0) {}
    explicit SquareMatrix(int m) : m_(m), e_(static_cast<size_t>(m) * m, S(0L)) {}

    static SquareMatrix identity(int m) {
        SquareMatrix a(m);
        for (int i = 0; i < m; ++i) a.at(i, i) = S(1L);
        return a;
    }
    static SquareMatrix zero(int m) { return SquareMatrix(m); }

    int dim() const { return m_; }
    S& at(int i, int j) { return e_[static_cast<size_t>(i) * m_ + j]; }
    const S& at(int i, int j) const { return e_[static_cast<size_t>(i) * m_ + j]; }

    friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix r(a.m_);
        for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
        return r;
    }
    friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix r(a.m_);
        for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
        return r;
    }
    friend SquareMatrix operator-(const SquareMatrix& a) {
        SquareMatrix r(a.m_);
        for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = -a.e_[k];
        return r;
    }
    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix r(a.m_);
        for (int i = 0; i < a.m_; ++i)
            for (int k = 0; k < a.m_; ++k) {
                const S& aik = a.at(i, k);
                for (int j = 0; j < a.m_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }
    friend SquareMatrix operator*(const S& c, const SquareMatrix& a) {
        SquareMatrix r(a.m_);
        for (size_t k = 0; k < a.e_.size(); ++k) r.e_[k] = c * a.e_[k];
        return r;
    }
    friend Vector<S> operator*(const SquareMatrix& a, const Vector<S>& v) {
        Vector<S> r(a.m_, S(0L));
        for (int i = 0; i < a.m_; ++i)
            for (int j = 0; j < a.m_; ++j) r[i] += a.at(i, j) * v[j];
        return r;
    }
    friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
        return a.m_ == b.m_ && a.e_ == b.e_;
    }
    friend bool operator!=(const SquareMatrix& a, const SquareMatrix& b) { return !(a == b); }

    SquareMatrix& operator+=(const SquareMatrix& b) { return *this = *this + b; }
    SquareMatrix& operator-=(const SquareMatrix& b) { return *this = *this - b; }

    template <class F>
    auto map(F&& f) const {
        using T = decltype(f(e_[0]));
        SquareMatrix<T> r(m_);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) r.at(i, j) = f(at(i, j));
        return r;
    }

private:
    int m_;
    std::vector<S> e_;
};

template <class S>
SquareMatrix<S> diag_from(const Vector<S>& d) {
    SquareMatrix<S> r(static_cast<int>(d.size()));
    for (int i = 0; i < r.dim(); ++i) r.at(i, i) = d[i];
    return r;
}

// Entrywise projections onto the diagonal, strictly-lower and strictly-upper
// subalgebras; the three parts sum back to the matrix.
template <class S>
SquareMatrix<S> part_diagonal(const SquareMatrix<S>& a) {
    SquareMatrix<S> r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r.at(i, i) = a.at(i, i);
    return r;
}
template <class S>
SquareMatrix<S> part_strict_lower(const SquareMatrix<S>& a) {
    SquareMatrix<S> r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < i; ++j) r.at(i, j) = a.at(i, j);
    return r;
}
template <class S>
SquareMatrix<S> part_strict_upper(const SquareMatrix<S>& a) {
    SquareMatrix<S> r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) r.at(i, j) = a.at(i, j);
    return r;
}

template <class S>
SquareMatrix<S> commutator(const SquareMatrix<S>& a, const SquareMatrix<S>& b) {
    return a * b - b * a;
}

template <class S>
S trace(const SquareMatrix<S>& a) {
    S t(0L);
    for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
    return t;
}

template <class S>
double max_abs(const SquareMatrix<S>& a) {
    double r = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r = std::max(r, abs_of(a.at(i, j)));
    return r;
}

template <class S>
bool is_zero_matrix(const SquareMatrix<S>& a, double tol = 0.0) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (!is_zero(a.at(i, j), tol)) return false;
    return true;
}

enum class TriangularFlavor { upper, lower, diagonal };

template <class S>
bool is_triangular(const SquareMatrix<S>& a, TriangularFlavor flavor, double tol = 0.0) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            bool off = (flavor == TriangularFlavor::upper && i > j) ||
                       (flavor == TriangularFlavor::lower && i < j) ||
                       (flavor == TriangularFlavor::diagonal && i != j);
            if (off && !is_zero(a.at(i, j), tol)) return false;
        }
    return true;
}

// Seed a dual-valued matrix: value slot from `base`, derivative slot from `dir`.
template <class S>
SquareMatrix<DualScalar<S>> dualize(const SquareMatrix<S>& base, const SquareMatrix<S>& dir) {
    SquareMatrix<DualScalar<S>> r(base.dim());
    for (int i = 0; i < base.dim(); ++i)
        for (int j = 0; j < base.dim(); ++j) r.at(i, j) = DualScalar<S>(base.at(i, j), dir.at(i, j));
    return r;
}

template <class S>
SquareMatrix<S> value_part(const SquareMatrix<DualScalar<S>>& a) {
    return a.map([](const DualScalar<S>& x) { return x.value; });
}
template <class S>
SquareMatrix<S> deriv_part(const SquareMatrix<DualScalar<S>>& a) {
    return a.map([](const DualScalar<S>& x) { return x.deriv; });
}

template <class S>
SquareMatrix<FloatingComplex> to_floating(const SquareMatrix<S>& a) {
    return a.map([](const S& x) { return to_floating(x); });
}

}  // namespace orbitred
