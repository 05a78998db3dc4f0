#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include "orbitred/errors.hpp"

namespace orbitred {

// Exact element of Q(i).  Both parts are arbitrary-precision rationals kept
// in canonical form by gmp (positive denominator, reduced).
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}  // NOLINT: implicit by intent
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}
    static GaussianRational from_parts(const std::string& re_num, const std::string& re_den,
                                       const std::string& im_num, const std::string& im_den) {
        mpq_class re{mpz_class(re_num), mpz_class(re_den)};
        mpq_class im{mpz_class(im_num), mpz_class(im_den)};
        re.canonicalize();
        im.canonicalize();
        return {re, im};
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.re_ == 0 && b.im_ == 0) throw DivisionByZero();
        mpq_class n = b.re_ * b.re_ + b.im_ * b.im_;
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

private:
    mpq_class re_, im_;
};

// Complex double with all zero decisions delegated to an explicit tolerance.
struct FloatingComplex {
    double re = 0.0;
    double im = 0.0;

    FloatingComplex() = default;
    FloatingComplex(long n) : re(static_cast<double>(n)), im(0.0) {}  // NOLINT
    FloatingComplex(double r, double i) : re(r), im(i) {}

    friend FloatingComplex operator+(FloatingComplex a, FloatingComplex b) { return {a.re + b.re, a.im + b.im}; }
    friend FloatingComplex operator-(FloatingComplex a, FloatingComplex b) { return {a.re - b.re, a.im - b.im}; }
    friend FloatingComplex operator-(FloatingComplex a) { return {-a.re, -a.im}; }
    friend FloatingComplex operator*(FloatingComplex a, FloatingComplex b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend FloatingComplex operator/(FloatingComplex a, FloatingComplex b) {
        double n = b.re * b.re + b.im * b.im;
        if (n == 0.0) throw DivisionByZero();
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    FloatingComplex& operator+=(FloatingComplex b) { return *this = *this + b; }
    FloatingComplex& operator-=(FloatingComplex b) { return *this = *this - b; }
    FloatingComplex& operator*=(FloatingComplex b) { return *this = *this * b; }
    FloatingComplex& operator/=(FloatingComplex b) { return *this = *this / b; }

    friend bool operator==(FloatingComplex a, FloatingComplex b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(FloatingComplex a, FloatingComplex b) { return !(a == b); }
};

// Forward-mode dual number over a base scalar.  One derivative slot; the
// value slot drives every branch decision.
template <class B>
struct DualScalar {
    B value{};
    B deriv{};

    DualScalar() = default;
    DualScalar(long n) : value(n), deriv(0L) {}  // NOLINT
    DualScalar(B v, B d) : value(std::move(v)), deriv(std::move(d)) {}

    friend DualScalar operator+(const DualScalar& a, const DualScalar& b) {
        return {a.value + b.value, a.deriv + b.deriv};
    }
    friend DualScalar operator-(const DualScalar& a, const DualScalar& b) {
        return {a.value - b.value, a.deriv - b.deriv};
    }
    friend DualScalar operator-(const DualScalar& a) { return {-a.value, -a.deriv}; }
    friend DualScalar operator*(const DualScalar& a, const DualScalar& b) {
        return {a.value * b.value, a.value * b.deriv + a.deriv * b.value};
    }
    friend DualScalar operator/(const DualScalar& a, const DualScalar& b) {
        B v = a.value / b.value;
        return {v, (a.deriv - v * b.deriv) / b.value};
    }
    DualScalar& operator+=(const DualScalar& b) { return *this = *this + b; }
    DualScalar& operator-=(const DualScalar& b) { return *this = *this - b; }
    DualScalar& operator*=(const DualScalar& b) { return *this = *this * b; }
    DualScalar& operator/=(const DualScalar& b) { return *this = *this / b; }

    friend bool operator==(const DualScalar& a, const DualScalar& b) {
        return a.value == b.value && a.deriv == b.deriv;
    }
    friend bool operator!=(const DualScalar& a, const DualScalar& b) { return !(a == b); }
};

// --- zero tests ------------------------------------------------------------
// Exact types ignore the tolerance; floating types must be given one.

inline bool is_zero(const GaussianRational& a, double /*tol*/ = 0.0) {
    return a.re() == 0 && a.im() == 0;
}
inline bool is_zero(const FloatingComplex& a, double tol) {
    return std::hypot(a.re, a.im) <= tol;
}
template <class B>
bool is_zero(const DualScalar<B>& a, double tol = 0.0) {
    return is_zero(a.value, tol);
}

// Elimination predicate for echelon passes: branch decisions (pivot choice)
// look at the value part only, but a dual entry with zero value and nonzero
// derivative still needs its row operation or the derivative flow is lost.
template <class S>
bool elimination_nonzero(const S& a, double tol) {
    return !is_zero(a, tol);
}
template <class B>
bool elimination_nonzero(const DualScalar<B>& a, double tol) {
    return !is_zero(a.value, tol) || !is_zero(a.deriv, tol);
}

// --- magnitudes (for tolerance scaling and reporting) ----------------------

inline double abs_of(const GaussianRational& a) {
    return std::hypot(a.re().get_d(), a.im().get_d());
}
inline double abs_of(const FloatingComplex& a) { return std::hypot(a.re, a.im); }
template <class B>
double abs_of(const DualScalar<B>& a) {
    return abs_of(a.value);
}

// --- traits ----------------------------------------------------------------

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool is_exact = true;
    using Base = GaussianRational;
    static const char* mode_name() { return "exact"; }
};

template <>
struct ScalarTraits<FloatingComplex> {
    static constexpr bool is_exact = false;
    using Base = FloatingComplex;
    static const char* mode_name() { return "float"; }
};

template <class B>
struct ScalarTraits<DualScalar<B>> {
    static constexpr bool is_exact = ScalarTraits<B>::is_exact;
    using Base = B;
    static const char* mode_name() { return "dual"; }
};

template <class S>
inline constexpr bool kIsExact = ScalarTraits<S>::is_exact;

// --- conversions -----------------------------------------------------------

inline FloatingComplex to_floating(const GaussianRational& a) {
    return {a.re().get_d(), a.im().get_d()};
}
inline FloatingComplex to_floating(const FloatingComplex& a) { return a; }
template <class B>
FloatingComplex to_floating(const DualScalar<B>& a) {
    return to_floating(a.value);
}

template <class B>
DualScalar<B> dual_seed(const B& value, const B& deriv) {
    return {value, deriv};
}
template <class B>
const B& value_part(const DualScalar<B>& a) {
    return a.value;
}
template <class B>
const B& deriv_part(const DualScalar<B>& a) {
    return a.deriv;
}

inline GaussianRational inverse(const GaussianRational& a) { return GaussianRational(1L) / a; }
inline FloatingComplex inverse(const FloatingComplex& a) { return FloatingComplex(1L) / a; }
template <class B>
DualScalar<B> inverse(const DualScalar<B>& a) {
    return DualScalar<B>(1L) / a;
}

inline std::string to_string(const GaussianRational& a) {
    return a.re().get_str() + (sgn(a.im()) < 0 ? "" : "+") + a.im().get_str() + "i";
}
inline std::string to_string(const FloatingComplex& a) {
    return std::to_string(a.re) + (a.im < 0 ? "" : "+") + std::to_string(a.im) + "i";
}
template <class B>
std::string to_string(const DualScalar<B>& a) {
    return to_string(a.value) + " + eps*(" + to_string(a.deriv) + ")";
}

}  // namespace orbitred
