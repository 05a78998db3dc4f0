#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace orbitred;
using namespace orbitred::testing;

TEST_CASE("conjugate product (1+2i)(1-2i) = 5") {
    CHECK(qi(1, 2) * qi(1, -2) == q(5));
}

TEST_CASE("inverse of 1/2 is 2") {
    CHECK(inverse(q(1, 2)) == q(2));
}

TEST_CASE("dual square at 3 carries derivative 6") {
    DualScalar<GR> x(q(3), q(1));
    CHECK(x * x == DualScalar<GR>(q(9), q(6)));
}

TEST_CASE("exact scalars stay canonical") {
    GR a = GR::from_parts("2", "4", "-6", "9");
    CHECK(a == GR(mpq_class(1, 2), mpq_class(-2, 3)));
    CHECK(a.re().get_den() == 2);
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(q(1) / q(0), DivisionByZero);
    CHECK_THROWS_AS(FloatingComplex(1L) / FloatingComplex(0L), DivisionByZero);
}

TEST_CASE("field axioms on randomized exact triples") {
    Rng rng(11);
    auto draw = [&rng]() {
        long den = 0;
        while (den == 0) den = rng.small_int(-5, 5);
        return q(rng.small_int(-9, 9), den) + qi(0, 1) * q(rng.small_int(-9, 9), den);
    };
    for (int t = 0; t < 200; ++t) {
        GR a = draw(), b = draw(), c = draw();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == q(0));
        if (!is_zero(a)) CHECK(a * inverse(a) == q(1));
    }
}

TEST_CASE("dual derivative matches the finite-difference estimate") {
    // f(x) = (x^2 + 3) / (x - 1), a rational function with a pole off the path
    auto f = [](auto x) {
        using T = decltype(x);
        return (x * x + T(3L)) / (x - T(1L));
    };
    double x0 = 2.5;
    DualScalar<FloatingComplex> d = f(DualScalar<FloatingComplex>({x0, 0.0}, {1.0, 0.0}));
    double h = 1e-7;
    FloatingComplex fd = (f(FloatingComplex(x0 + h, 0.0)) - f(FloatingComplex(x0 - h, 0.0))) /
                         FloatingComplex(2.0 * h, 0.0);
    CHECK(abs_of(d.deriv - fd) / std::max(1.0, abs_of(d.deriv)) < 1e-6);
}

TEST_CASE("dual division undoes dual multiplication") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        DualScalar<GR> a(q(rng.small_int(-9, 9)), q(rng.small_int(-9, 9)));
        DualScalar<GR> b(q(rng.small_int(1, 9)), q(rng.small_int(-9, 9)));
        CHECK((a * b) / b == a);
    }
}

TEST_CASE("elimination predicate sees hidden derivative mass") {
    DualScalar<GR> ghost(q(0), q(3));
    CHECK(is_zero(ghost));                       // branch decisions: value only
    CHECK(elimination_nonzero(ghost, 0.0));      // row operations: value or deriv
    CHECK_FALSE(elimination_nonzero(DualScalar<GR>(q(0), q(0)), 0.0));
}

TEST_CASE("floating zero test uses the explicit tolerance") {
    CHECK(is_zero(FloatingComplex{1e-12, 0.0}, 1e-10));
    CHECK_FALSE(is_zero(FloatingComplex{1e-8, 0.0}, 1e-10));
}

TEST_CASE("mode names and exactness flags") {
    CHECK(std::string(ScalarTraits<GR>::mode_name()) == "exact");
    CHECK(std::string(ScalarTraits<FloatingComplex>::mode_name()) == "float");
    CHECK(kIsExact<GR>);
    CHECK_FALSE(kIsExact<FloatingComplex>);
    CHECK(kIsExact<DualScalar<GR>>);
}

TEST_CASE("exact scalar JSON round trip is lossless") {
    GR a(mpq_class(-7, 3), mpq_class(22, 5));
    CHECK(scalar_from_json<GR>(scalar_to_json(a)) == a);
    FloatingComplex f{0.125, -3.5};
    CHECK(scalar_from_json<FloatingComplex>(scalar_to_json(f)) == f);
}
