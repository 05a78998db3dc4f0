#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace orbitred;
using namespace orbitred::testing;

namespace {
EigenOrdering<GR> order(std::initializer_list<long> xs) {
    EigenOrdering<GR> o;
    for (long x : xs) o.slots.push_back(q(x));
    return o;
}
}  // namespace

TEST_CASE("jordan seeds for a nilpotent block") {
    OrbitSpec<GR> sp = spec_of(2, {{0, 2}});
    CHECK(jordan_seed(sp, order({0, 0}), TriangularFlavor::upper).matrix == mat({{0, 1}, {0, 0}}));
    CHECK(jordan_seed(sp, order({0, 0}), TriangularFlavor::lower).matrix == mat({{0, 0}, {1, 0}}));
}

TEST_CASE("jordan seed respects an assigned diagonal order") {
    OrbitSpec<GR> sp = spec_of(2, {{1, 1}, {2, 1}});
    CHECK(jordan_seed(sp, order({2, 1}), TriangularFlavor::upper).matrix == mat({{2, 0}, {0, 1}}));
}

TEST_CASE("orderings must match the spec multiset and be contiguous") {
    OrbitSpec<GR> sp = spec_of(3, {{1, 2}, {2, 1}});
    CHECK(ordering_matches_spec(order({1, 1, 2}), sp));
    CHECK(ordering_matches_spec(order({2, 1, 1}), sp));
    CHECK_FALSE(ordering_matches_spec(order({1, 2, 1}), sp));  // split run
    CHECK_FALSE(ordering_matches_spec(order({1, 2, 2}), sp));  // wrong multiset
    CHECK_THROWS_AS(jordan_seed(sp, order({1, 2, 1}), TriangularFlavor::upper), InvalidOrdering);
}

TEST_CASE("jordan basis of a matrix already in ordered form is the identity") {
    OrbitSpec<GR> sp = spec_of(2, {{0, 2}});
    auto [p, j] = jordan_basis(mat({{0, 1}, {0, 0}}), sp, order({0, 0}), TriangularFlavor::upper);
    CHECK(p == SquareMatrix<GR>::identity(2));
    CHECK(j.matrix == mat({{0, 1}, {0, 0}}));
}

TEST_CASE("jordan basis recovers the form after random conjugation") {
    Rng rng(31);
    OrbitSpec<GR> sp = spec_of(2, {{0, 2}});
    for (int t = 0; t < 20; ++t) {
        SquareMatrix<GR> g = random_invertible<GR>(2, rng);
        SquareMatrix<GR> a = inverse(g) * mat({{0, 1}, {0, 0}}) * g;
        auto [p, j] = jordan_basis(a, sp, order({0, 0}), TriangularFlavor::upper);
        CHECK(inverse(p) * a * p == mat({{0, 1}, {0, 0}}));
    }
}

TEST_CASE("reordering distinct eigenvalues uses a permutation-shaped basis") {
    OrbitSpec<GR> sp = spec_of(2, {{1, 1}, {2, 1}});
    auto [p, j] = jordan_basis(mat({{2, 0}, {0, 1}}), sp, order({1, 2}), TriangularFlavor::upper);
    CHECK(j.matrix == mat({{1, 0}, {0, 2}}));
    CHECK(p == mat({{0, 1}, {1, 0}}));
    CHECK(inverse(p) * mat({{2, 0}, {0, 1}}) * p == j.matrix);
}

TEST_CASE("both flavors conjugate correctly on random orbit points") {
    Rng rng(77);
    std::vector<OrbitSpec<GR>> specs = {
        spec_of(3, {{1, 1}, {2, 1}, {3, 1}}),
        spec_of(3, {{4, 2}, {-1, 1}}),
        spec_of(3, {{0, 3}}),
        spec_of(4, {{2, 2}, {5, 2}}),
    };
    for (const auto& sp : specs) {
        EigenOrdering<GR> o = EigenOrdering<GR>::from_spec(sp);
        for (int t = 0; t < 5; ++t) {
            SquareMatrix<GR> a = sample_point(sp, rng);
            for (auto flavor : {TriangularFlavor::upper, TriangularFlavor::lower}) {
                auto [p, j] = jordan_basis(a, sp, o, flavor, kDefaultTol);
                CHECK(inverse(p) * a * p == j.matrix);
                CHECK(is_triangular(j.matrix, flavor));
            }
        }
    }
}

TEST_CASE("jordan basis detects geometric multiplicity above one") {
    OrbitSpec<GR> sp = spec_of(2, {{0, 2}});
    CHECK_THROWS_AS(jordan_basis(SquareMatrix<GR>(2), sp, order({0, 0}), TriangularFlavor::upper),
                    MembershipViolation);
}

TEST_CASE("triangular inputs get triangular bases of the same flavor") {
    OrbitSpec<GR> nil = spec_of(2, {{0, 2}});
    auto [p1, j1] = triangular_to_jordan(mat({{0, 5}, {0, 0}}), nil, order({0, 0}), TriangularFlavor::upper);
    CHECK(is_triangular(p1, TriangularFlavor::upper));
    CHECK(inverse(p1) * mat({{0, 5}, {0, 0}}) * p1 == j1.matrix);
    CHECK(j1.matrix == mat({{0, 1}, {0, 0}}));

    auto [p2, j2] = triangular_to_jordan(mat({{0, 1}, {0, 0}}), nil, order({0, 0}), TriangularFlavor::upper);
    CHECK(p2 == SquareMatrix<GR>::identity(2));

    OrbitSpec<GR> sp = spec_of(2, {{1, 1}, {2, 1}});
    auto [p3, j3] = triangular_to_jordan(mat({{1, 7}, {0, 2}}), sp, order({1, 2}), TriangularFlavor::upper);
    CHECK(j3.matrix == mat({{1, 0}, {0, 2}}));
    CHECK(is_triangular(p3, TriangularFlavor::upper));
    CHECK(inverse(p3) * mat({{1, 7}, {0, 2}}) * p3 == j3.matrix);
}

TEST_CASE("basis ambiguity commutes with the Jordan form") {
    Rng rng(55);
    OrbitSpec<GR> sp = spec_of(3, {{4, 2}, {-1, 1}});
    EigenOrdering<GR> o = EigenOrdering<GR>::from_spec(sp);
    SquareMatrix<GR> a = sample_point(sp, rng);
    auto [p1, j] = jordan_basis(a, sp, o, TriangularFlavor::upper);
    // any commutant factor produces an equally valid basis; the quotient of
    // two bases must commute with J (Prop.-style ambiguity characterization)
    SquareMatrix<GR> c = q(3) * SquareMatrix<GR>::identity(3) + q(1, 2) * j.matrix;  // polynomial in J
    SquareMatrix<GR> p2 = p1 * c;
    CHECK(inverse(p2) * a * p2 == j.matrix);
    SquareMatrix<GR> ratio = inverse(p1) * p2;
    CHECK(commutator(ratio, j.matrix) == SquareMatrix<GR>(3));
}

TEST_CASE("diagonalizable ambiguity is diagonal") {
    Rng rng(56);
    OrbitSpec<GR> sp = spec_of(3, {{1, 1}, {2, 1}, {3, 1}});
    EigenOrdering<GR> o = EigenOrdering<GR>::from_spec(sp);
    SquareMatrix<GR> a = sample_point(sp, rng);
    auto [p1, j] = jordan_basis(a, sp, o, TriangularFlavor::upper);
    SquareMatrix<GR> d = diag_from(Vector<GR>{q(2), q(-1), q(5)});
    SquareMatrix<GR> p2 = p1 * d;
    CHECK(inverse(p2) * a * p2 == j.matrix);
    CHECK(is_triangular(inverse(p1) * p2, TriangularFlavor::diagonal));
}
