#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace orbitred;
using namespace orbitred::testing;

TEST_CASE("xi matrix and its inverse") {
    CHECK(xi_matrix<GR>(3) == mat({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}));
    CHECK(xi_matrix<GR>(2) == mat({{1, 1}, {0, 1}}));
    for (int m : {2, 3, 4, 5}) {
        CHECK(xi_matrix<GR>(m) * xi_matrix_inverse<GR>(m) == SquareMatrix<GR>::identity(m));
        for (int i = 0; i + 1 < m; ++i) CHECK(xi_matrix_inverse<GR>(m).at(i, m - 1) == q(-1));
    }
}

TEST_CASE("quotient spec decrements the chosen eigenvalue") {
    OrbitSpec<GR> sp = spec_of(3, {{5, 2}, {7, 1}});
    OrbitSpec<GR> qs = quotient_spec(sp, q(5));
    CHECK(qs.m == 2);
    CHECK(qs.eigs == std::vector<std::pair<GR, int>>{{q(5), 1}, {q(7), 1}});
    OrbitSpec<GR> nil = quotient_spec(spec_of(2, {{0, 2}}), q(0));
    CHECK(nil.m == 1);
    CHECK(nil.eigs == std::vector<std::pair<GR, int>>{{q(0), 1}});
    CHECK_THROWS_AS(quotient_spec(sp, q(9)), EigenvalueMismatch);
}

TEST_CASE("canonical section lands in section position and is idempotent") {
    Rng rng(201);
    for (int m : {2, 3}) {
        for (int n : {3, 4}) {
            FuchsTuple<GR> x = sample_distinct_tuple(m, n, rng);
            DiscreteData<GR> d = default_discrete(x);
            FuchsTuple<GR> s = canonical_section(x, d);
            CHECK(is_triangular(s.matrices[d.anchor_up], TriangularFlavor::upper));
            CHECK(is_triangular(s.matrices[d.anchor_low], TriangularFlavor::lower));
            for (int i = 0; i < m; ++i) {
                CHECK(s.matrices[d.anchor_up].at(i, i) == d.ordering_up.slots[i]);
                CHECK(s.matrices[d.anchor_low].at(i, i) == d.ordering_low.slots[i]);
                GR row_sum = q(0);
                for (int j = 0; j < m; ++j) row_sum += s.matrices[d.anchor_n].at(i, j);
                CHECK(row_sum == d.lambda_n);
            }
            CHECK(is_zero_matrix(s.momentum()));
            CHECK(canonical_section(s, d).matrices == s.matrices);  // fixed point
        }
    }
}

TEST_CASE("canonical section is gauge invariant") {
    Rng rng(202);
    FuchsTuple<GR> x = sample_distinct_tuple(3, 4, rng);
    DiscreteData<GR> d = default_discrete(x);
    FuchsTuple<GR> s = canonical_section(x, d);
    for (int t = 0; t < 10; ++t) {
        SquareMatrix<GR> g = random_invertible<GR>(3, rng);
        SquareMatrix<GR> gi = inverse(g);
        FuchsTuple<GR> y = x;
        for (auto& a : y.matrices) a = gi * a * g;
        CHECK(canonical_section(y, d).matrices == s.matrices);
    }
}

TEST_CASE("reduce exposes the block-triangular form") {
    Rng rng(203);
    FuchsTuple<GR> x = sample_distinct_tuple(3, 4, rng);
    DiscreteData<GR> d = default_discrete(x);
    ReducedPoint<GR> p = reduce(x, d);
    CHECK(p.a_hat.dim() == 2);
    CHECK(p.tail.size() == 1);
    // trace bookkeeping: tr(A_hat) = tr(A^(N)) - lambda_N
    GR tr_n = x.specs[d.anchor_n].trace_value();
    CHECK(trace(p.a_hat) == tr_n - d.lambda_n);
    // quotient membership (one-dimensional eigenspaces downstairs)
    OrbitSpec<GR> qs = quotient_spec(x.specs[d.anchor_n], d.lambda_n);
    CHECK(check_membership(p.a_hat, qs).ok);
    CHECK(check_membership(p.tail[0], x.specs[0]).ok);
}

TEST_CASE("reduce is gauge invariant") {
    Rng rng(204);
    FuchsTuple<GR> x = sample_distinct_tuple(2, 4, rng);
    DiscreteData<GR> d = default_discrete(x);
    ReducedPoint<GR> p = reduce(x, d);
    for (int t = 0; t < 10; ++t) {
        SquareMatrix<GR> g = random_invertible<GR>(2, rng);
        SquareMatrix<GR> gi = inverse(g);
        FuchsTuple<GR> y = x;
        for (auto& a : y.matrices) a = gi * a * g;
        CHECK(reduce(y, d) == p);
    }
}

TEST_CASE("round trips are exact") {
    Rng rng(205);
    for (int m : {2, 3}) {
        for (int n : {3, 4, 5}) {
            for (int t = 0; t < 5; ++t) {
                FuchsTuple<GR> x = sample_distinct_tuple(m, n, rng);
                DiscreteData<GR> d = default_discrete(x);
                FuchsTuple<GR> s = canonical_section(x, d);
                ReducedPoint<GR> p = reduce(x, d);
                FuchsTuple<GR> lifted = lift_strict(p);
                CHECK(lifted.matrices == s.matrices);
                CHECK(reduce(lifted, d) == p);
            }
        }
    }
}

TEST_CASE("lifted tuples satisfy the structural constraints") {
    Rng rng(206);
    FuchsTuple<GR> x = sample_distinct_tuple(3, 4, rng);
    DiscreteData<GR> d = default_discrete(x);
    FuchsTuple<GR> lifted = lift_strict(reduce(x, d));
    CHECK(is_zero_matrix(lifted.momentum()));
    for (int i = 0; i < 3; ++i) {
        GR row_sum = q(0);
        for (int j = 0; j < 3; ++j) row_sum += lifted.matrices[d.anchor_n].at(i, j);
        CHECK(row_sum == d.lambda_n);
    }
    CHECK(lifted.validate().ok);
}

TEST_CASE("smallest case m=2, N=3 reduces to a point") {
    Rng rng(207);
    FuchsTuple<GR> x = sample_distinct_tuple(2, 3, rng);
    DiscreteData<GR> d = default_discrete(x);
    ReducedPoint<GR> p = reduce(x, d);
    CHECK(p.a_hat.dim() == 1);
    CHECK(p.tail.empty());
    // the 1x1 block is pinned to the leftover eigenvalue: zero-dimensional target
    OrbitSpec<GR> qs = quotient_spec(x.specs[d.anchor_n], d.lambda_n);
    CHECK(p.a_hat.at(0, 0) == qs.eigs.front().first);
    CHECK(reduce(lift_strict(p), d) == p);
}

TEST_CASE("discrete data validation rejects inconsistent choices") {
    Rng rng(208);
    FuchsTuple<GR> x = sample_distinct_tuple(2, 4, rng);
    DiscreteData<GR> d = default_discrete(x);
    SUBCASE("bad lambda") {
        d.lambda_n = q(999);
        CHECK_THROWS_AS(canonical_section(x, d), EigenvalueMismatch);
    }
    SUBCASE("bad ordering") {
        d.ordering_up.slots[0] = q(999);
        CHECK_THROWS_AS(canonical_section(x, d), InvalidOrdering);
    }
    SUBCASE("colliding anchors") {
        d.anchor_up = d.anchor_low;
        CHECK_THROWS_AS(canonical_section(x, d), Error);
    }
}

TEST_CASE("non-default anchor assignment works") {
    Rng rng(209);
    auto specs = distinct_specs<GR>(2, 4);
    DiscreteData<GR> d;
    d.anchor_n = 0;
    d.anchor_up = 2;
    d.anchor_low = 1;
    d.lambda_n = specs[0].eigs.front().first;
    d.ordering_up = EigenOrdering<GR>::from_spec(specs[2]);
    d.ordering_low = EigenOrdering<GR>::from_spec(specs[1]);
    FuchsTuple<GR> x = sample_tuple(specs, d, rng);
    ReducedPoint<GR> p = reduce(x, d);
    CHECK(p.tail.size() == 1);  // index 3 is the only non-anchor
    CHECK(reduce(lift_strict(p), d) == p);
}

TEST_CASE("sampled tuples validate") {
    Rng rng(210);
    for (int m : {2, 3}) {
        FuchsTuple<GR> x = sample_distinct_tuple(m, 4, rng);
        CHECK(x.validate().ok);
    }
}

TEST_CASE("sampling rejects trace-unbalanced specs") {
    Rng rng(211);
    std::vector<OrbitSpec<GR>> specs = {spec_of(2, {{1, 1}, {2, 1}}), spec_of(2, {{3, 1}, {4, 1}}),
                                        spec_of(2, {{5, 1}, {6, 1}})};
    CHECK_THROWS_AS(sample_tuple(specs, default_discrete(specs), rng), Error);
}

TEST_CASE("tuple and reduced-point JSON round trips are lossless") {
    Rng rng(212);
    FuchsTuple<GR> x = sample_distinct_tuple(2, 4, rng);
    x.poles = {q(0), q(1), q(2), q(7, 3)};
    FuchsTuple<GR> back = tuple_from_json<GR>(tuple_to_json(x));
    CHECK(back.matrices == x.matrices);
    CHECK(back.poles == x.poles);
    ReducedPoint<GR> p = reduce(x, default_discrete(x));
    ReducedPoint<GR> pback = reduced_from_json<GR>(reduced_to_json(p));
    CHECK(pback == p);
    CHECK(pback.data.lambda_n == p.data.lambda_n);
    // mode mismatch is a parse error
    CHECK_THROWS_AS(tuple_from_json<FloatingComplex>(tuple_to_json(x)), ParseError);
}

TEST_CASE("floating mode reduces and round trips within tolerance") {
    Rng rng(213);
    FuchsTuple<GR> xe = sample_distinct_tuple(3, 4, rng);
    FuchsTuple<FloatingComplex> x = to_floating_tuple(xe);
    DiscreteData<FloatingComplex> d = to_floating_data(default_discrete(xe));
    ReducedPoint<FloatingComplex> p = reduce(x, d);
    LiftResult<FloatingComplex> lr = lift(p);
    CHECK(lr.ok);
    ReducedPoint<FloatingComplex> p2 = reduce(lr.tuple, d);
    double scale = std::max(1.0, max_abs(p.a_hat));
    CHECK(max_abs(p.a_hat - p2.a_hat) <= 1e-8 * scale);
}
