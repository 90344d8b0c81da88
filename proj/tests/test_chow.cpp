#include <doctest.h>

#include "logchi/chow.hpp"

using namespace logchi;

namespace {

Space p2_toric() {
    Space X({2});
    X.add_toric_boundary();
    return X;
}

Space p1_points(int m) {
    Space X({1});
    // 0 and infinity first, then finite points 1, 2, ...
    if (m >= 1) X.add_p1_point(0, Rational(0));
    if (m >= 2) X.add_p1_infinity(0);
    for (int i = 3; i <= m; ++i) X.add_p1_point(0, Rational(i - 2));
    return X;
}

} // namespace

TEST_CASE("chern: P^2 with the full toric boundary has trivial log cotangent class") {
    // (1 - 3h + 3h^2)(1 + h + h^2)^3 = 1 mod h^3
    ChowClass c = chern_log_cotangent(p2_toric());
    CHECK(c == ChowClass::one(p2_toric()));
    CHECK(c.str() == "1");
}

TEST_CASE("chern: P^1 with m points") {
    for (int m = 0; m <= 4; ++m) {
        Space X = p1_points(m);
        ChowClass c = chern_log_cotangent(X);
        // (1 - h)^2 (1 + h)^m = 1 + (m - 2) h mod h^2
        ChowClass expect = ChowClass::one(X) + ChowClass::hyperplane(X, 0) * (m - 2);
        CHECK(c == expect);
    }
}

TEST_CASE("chern: bare P^2 keeps the classical class") {
    Space X({2});
    ChowClass c = chern_log_cotangent(X);
    ChowClass h = ChowClass::hyperplane(X, 0);
    CHECK(c == ChowClass::one(X) - h * 3 + h * h * 3);
    CHECK(c.str() == "1 - 3*h + 3*h^2");
}

TEST_CASE("euler_open: spec values") {
    CHECK(euler_open(p2_toric()) == 0); // chi of the 2-torus
    for (int m = 0; m <= 4; ++m) CHECK(euler_open(p1_points(m)) == 2 - m);
    CHECK(euler_open(Space({2})) == 3); // chi(P^2)
}

TEST_CASE("chow multiplication and degree") {
    Space X({2});
    ChowClass h = ChowClass::hyperplane(X, 0);
    ChowClass h2 = h * h;
    CHECK(h2.degree_of_top() == 1);
    CHECK((h2 * h) == ChowClass::zero(X)); // truncation
    CHECK_THROWS_AS(h.degree_of_top(), input_error);

    Space XY({1, 1});
    ChowClass s = ChowClass::hyperplane(XY, 0) + ChowClass::hyperplane(XY, 1);
    ChowClass s2 = s * s; // h_i^2 dies, cross term doubles
    CHECK(s2.degree_of_top() == 2);
}

TEST_CASE("euler_open without boundary is multiplicative over factors") {
    for (auto dims : {std::vector<std::size_t>{1}, {2}, {3}, {1, 1}, {2, 1}, {2, 2}}) {
        Space X(dims);
        long long expect = 1;
        for (std::size_t d : dims) expect *= static_cast<long long>(d + 1);
        CHECK(euler_open(X) == expect);
    }
}

TEST_CASE("full toric boundary trivializes the class on any product") {
    for (auto dims : {std::vector<std::size_t>{1}, {2}, {1, 1}, {2, 1}, {3}}) {
        Space X(dims);
        X.add_toric_boundary();
        CHECK(chern_log_cotangent(X) == ChowClass::one(X));
        CHECK(euler_open(X) == 0);
    }
}

TEST_CASE("puncturing one P^1 factor is multiplicative on the open parts") {
    // chi(U1 x U2) = chi(U1) chi(U2): adding a point component to the first
    // P^1 factor changes chi by -(chi of the second open factor).
    for (int m1 = 0; m1 <= 3; ++m1) {
        for (int m2 = 0; m2 <= 3; ++m2) {
            Space X({1, 1});
            for (int i = 0; i < m1; ++i)
                (i == 0) ? X.add_p1_point(0, Rational(0))
                         : (i == 1 ? X.add_p1_infinity(0) : X.add_p1_point(0, Rational(i - 1)));
            for (int i = 0; i < m2; ++i)
                (i == 0) ? X.add_p1_point(1, Rational(0))
                         : (i == 1 ? X.add_p1_infinity(1) : X.add_p1_point(1, Rational(i - 1)));
            CHECK(euler_open(X) == static_cast<long long>(2 - m1) * (2 - m2));
        }
    }
}
