#include <doctest.h>

#include "logchi/chow.hpp"
#include "logchi/parse.hpp"
#include "logchi/sscycle.hpp"

using namespace logchi;

namespace {

Space p2_toric() {
    Space X({2});
    X.add_toric_boundary();
    return X;
}

Space p1_with(std::vector<std::string> points) {
    Space X({1});
    for (const auto& p : points) {
        if (p == "inf") X.add_p1_infinity(0);
        else X.add_p1_point(0, rational_from_string(p));
    }
    return X;
}

Space p1xp1_toric() {
    Space X({1, 1});
    X.add_toric_boundary();
    return X;
}

Ideal ideal_of(const ContextPtr& ctx, std::initializer_list<std::string> gens) {
    std::vector<Poly> g;
    for (const auto& s : gens) g.push_back(parse_poly(s, ctx));
    return Ideal(ctx, std::move(g));
}

// (cycle component, chart) -> closure ideal displayed in the toric frame.
Ideal toric_closure(const Space& X, const LagCycle& cycle, std::size_t chart,
                    std::size_t comp = 0) {
    ChartGeometry g = make_chart_geometry(X, chart);
    Ideal cl = cycle.closure_ideal(X, g, comp);
    auto [ctx, gens] = toric_display(g, cl.gens());
    return Ideal(ctx, gens);
}

const StratumEntry* find_stratum(const CountReport& r, const std::vector<std::string>& labels,
                                 std::size_t comp = 0) {
    for (const auto& s : r.components.at(comp).strata)
        if (s.stratum == labels) return &s;
    return nullptr;
}

std::string point_value(const PointRecord& p, const std::string& name) {
    for (const auto& [n, v] : p.coordinates)
        if (n == name) return v;
    return "<missing>";
}

} // namespace

TEST_CASE("conormal closure in the full log frame matches the worked example") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - x*(1-x)", g.base));

    Ideal shown = toric_closure(X, cn, z_chart);
    // y = x(1-x) and (1-x) eta_x = (-1+2x) eta_y
    Ideal expect = ideal_of(shown.context(),
                            {"y - x + x^2", "(1-x)*eta_x - (-1+2*x)*eta_y"});
    CHECK(ideal_equal(shown, expect));
}

TEST_CASE("conormal of a line avoiding direction x is eta_x-free") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - 1", g.base));
    Ideal shown = toric_closure(X, cn, z_chart);
    CHECK(ideal_equal(shown, ideal_of(shown.context(), {"y - 1", "eta_x"})));
}

TEST_CASE("zero section ideal per chart") {
    Space X = p2_toric();
    LagCycle z = LagCycle::zero_section(X);
    Ideal in_x = toric_closure(X, z, 0); // chart X has coordinates y, z
    CHECK(ideal_equal(in_x, ideal_of(in_x.context(), {"eta_y", "eta_z"})));
    Ideal in_z = toric_closure(X, z, X.default_chart());
    CHECK(ideal_equal(in_z, ideal_of(in_z.context(), {"eta_x", "eta_y"})));
}

TEST_CASE("conormal rejects singular or U-avoiding hypersurfaces") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    // nodal cubic: singular point (0,0) lies on D here, so it is fine;
    // shift it into the torus to trigger the failure
    CHECK_THROWS_AS(LagCycle::conormal(
                        X, z_chart, parse_poly("(y-1)^2 - (x-1)^2*(x+1)", g.base)),
                    input_error);
    CHECK_THROWS_AS(LagCycle::conormal(X, z_chart, parse_poly("0", g.base)), input_error);
    // x = 0 lies on the boundary: no hypersurface in U
    CHECK_THROWS_AS(LagCycle::conormal(X, z_chart, parse_poly("x", g.base)), input_error);
}

TEST_CASE("sections: exponent extraction and per-chart values") {
    Space X = p2_toric();
    SUBCASE("homogeneous spelling") {
        LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
        CHECK(s.exponents() == std::vector<long long>{1, -1, 0});
        ChartGeometry g = make_chart_geometry(X, X.default_chart());
        RatFunc vx = s.xi_value(g, 0);
        CHECK(vx.num() == parse_poly("1", g.base));
        CHECK(vx.den() == parse_poly("x", g.base));
        RatFunc vy = s.xi_value(g, 1);
        CHECK(vy.num() == parse_poly("-1", g.base));
        CHECK(vy.den() == parse_poly("y", g.base));
    }
    SUBCASE("affine spelling homogenizes against the default chart") {
        LogSection s = LogSection::from_expression(X, "x/y", Rational(1));
        CHECK(s.exponents() == std::vector<long long>{1, -1, 0});
    }
    SUBCASE("chart where f becomes a single coordinate") {
        LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
        // chart Y != 0 has coordinates x = X/Y, z = Z/Y and f = x there
        std::size_t y_chart = 1;
        ChartGeometry g = make_chart_geometry(X, y_chart);
        REQUIRE(g.label == "Y");
        RatFunc vx = s.xi_value(g, 0);
        CHECK(vx.num() == parse_poly("1", g.base));
        CHECK(vx.den() == parse_poly("x", g.base));
        CHECK(s.xi_value(g, 1).is_zero());
    }
    SUBCASE("degree balance and boundary support are enforced") {
        CHECK_THROWS_AS(LogSection::from_expression(X, "X", Rational(1)), input_error);
        CHECK_THROWS_AS(LogSection::from_expression(X, "(X+Y)/Z", Rational(1)), input_error);
        Space partial({2});
        partial.add_coordinate_component(0, 0);
        partial.add_coordinate_component(0, 1);
        CHECK_THROWS_AS(LogSection::from_expression(partial, "X/Z", Rational(1)), input_error);
    }
    SUBCASE("P^1 point divisors in affine spelling") {
        Space P = p1_with({"0", "1", "inf"});
        LogSection s = LogSection::from_expression(P, "x/(x-1)", Rational(1));
        CHECK(s.exponents() == std::vector<long long>{1, -1, 0});
    }
    SUBCASE("scale zero is the zero section") {
        LogSection s = LogSection::from_expression(X, "X/Y", Rational(0));
        ChartGeometry g = make_chart_geometry(X, X.default_chart());
        CHECK(s.xi_value(g, 0).is_zero());
        CHECK(s.xi_value(g, 1).is_zero());
    }
}

TEST_CASE("worked example: conormal of y = x(1-x) against dlog(X/Y)") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - x*(1-x)", g.base));
    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));

    CountReport r = intersect_count(X, cn, s);
    CHECK(r.total == 1);
    CHECK(r.warnings.empty());

    // the single point sits over the deepest stratum X = Y = 0, in chart Z
    const StratumEntry* e = find_stratum(r, {"X", "Y"});
    REQUIRE(e != nullptr);
    CHECK(e->chart == "Z");
    CHECK(e->count == 1);
    REQUIRE(e->points.size() == 1);
    CHECK(point_value(e->points[0], "x") == "0");
    CHECK(point_value(e->points[0], "y") == "0");
    CHECK(point_value(e->points[0], "eta_x") == "1");
    CHECK(point_value(e->points[0], "eta_y") == "-1");

    // every other stratum is empty
    for (const auto& st : r.components[0].strata)
        if (st.stratum != std::vector<std::string>{"X", "Y"}) CHECK(st.count == 0);
}

TEST_CASE("zero-section counts equal (-1)^n euler_open across the supported spaces") {
    struct Case {
        Space X;
        std::string f;
    };
    std::vector<Case> cases;
    cases.push_back({p1_with({"0", "inf"}), "X/Y"});
    cases.push_back({p1_with({"0", "1", "inf"}), "x/(x-1)"});
    cases.push_back({p1_with({"0", "1", "-1", "inf"}), "x/(x-1)"});
    cases.push_back({p2_toric(), "X/Y"});
    cases.push_back({p1xp1_toric(), "X/Y"});
    for (auto& c : cases) {
        long long n = static_cast<long long>(c.X.dim());
        long long chi_top = euler_open(c.X);
        long long expected = (n % 2 == 0 ? 1 : -1) * chi_top;
        LogSection s = LogSection::from_expression(c.X, c.f, Rational(1));
        long long got = euler_char(c.X, {{LagCycle::zero_section(c.X), 1}}, s);
        CHECK(got == expected);
    }
}

TEST_CASE("P^1 minus three points: one intersection over infinity") {
    Space X = p1_with({"0", "1", "inf"});
    LogSection s = LogSection::from_expression(X, "x/(x-1)", Rational(1));
    CountReport r = intersect_count(X, LagCycle::zero_section(X), s);
    CHECK(r.total == 1);
    const StratumEntry* e = find_stratum(r, {"Y"}); // infinity component
    REQUIRE(e != nullptr);
    CHECK(e->count == 1);
}

TEST_CASE("generic line in the torus against the topological oracle") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    Poly line = parse_poly("y - 2*x - 3", g.base);
    LagCycle cn = LagCycle::conormal(X, z_chart, line);

    // Independent oracle: S is a line, so S-bar is P^1; chi(S) =
    // chi(P^1) - #(S-bar on D), counted as distinct points by elimination.
    Poly hom = homogenize(X, g, line);
    long long boundary_points = 0;
    for (std::size_t c = 0; c < X.boundary().size(); ++c) {
        // count in the first chart seeing the component, saturating the rest
        bool counted = false;
        for (std::size_t k = 0; k < X.chart_count() && !counted; ++k) {
            ChartGeometry gk = make_chart_geometry(X, k);
            auto vis = gk.visible_index_of(c);
            if (!vis) continue;
            Ideal I(gk.base, {dehomogenize(X, gk, hom), gk.visible[*vis].affine_form});
            QuotientDim q = quotient_dim(I);
            REQUIRE(q.finite);
            REQUIRE(is_radical_zero_dimensional(I));
            boundary_points += static_cast<long long>(q.dim);
            counted = true;
        }
    }
    // boundary points counted once per component; the three intersection
    // points here are distinct and each lies on exactly one component
    long long chi_S = 2 - boundary_points;
    CHECK(chi_S == -1);

    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
    long long chi = euler_char(X, {{cn, 1}}, s);
    CHECK(chi == -chi_S); // chi(C_S[1]) = (-1)^1 chi_top(S)
    CHECK(chi == 1);
}

TEST_CASE("interior intersections only: total equals the U-stratum count") {
    // f = XY/Z^2 has nonzero residues on all three components; the single
    // intersection with the parabola conormal happens inside the torus.
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - x*(1-x)", g.base));
    LogSection s = LogSection::from_expression(X, "X*Y/Z^2", Rational(1));
    CountReport r = intersect_count(X, cn, s);
    CHECK(r.total == 1);
    const StratumEntry* u = find_stratum(r, {});
    REQUIRE(u != nullptr);
    CHECK(u->count == 1);
    REQUIRE(u->points.size() == 1);
    // U is counted in the first chart (X != 0), whose coordinates are
    // y = Y/X and z = Z/X; the point (x, y) = (2/3, 2/9) becomes (1/3, 3/2).
    CHECK(u->chart == "X");
    CHECK(point_value(u->points[0], "y") == "1/3");
    CHECK(point_value(u->points[0], "z") == "3/2");
    for (const auto& st : r.components[0].strata)
        if (!st.stratum.empty()) CHECK(st.count == 0);
}

TEST_CASE("scale invariance of every count (conic cycles)") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    for (const char* expr : {"y - x*(1-x)", "y - 2*x - 3"}) {
        LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly(expr, g.base));
        for (const char* f : {"X/Y", "X*Y/Z^2"}) {
            CountReport r1 =
                intersect_count(X, cn, LogSection::from_expression(X, f, Rational(1)));
            CountReport r2 =
                intersect_count(X, cn, LogSection::from_expression(X, f, Rational(2)));
            CHECK(r1.total == r2.total);
        }
    }
    Space P = p1_with({"0", "1", "inf"});
    for (int sc : {1, 2}) {
        CountReport r = intersect_count(
            P, LagCycle::zero_section(P),
            LogSection::from_expression(P, "x/(x-1)", Rational(sc)));
        CHECK(r.total == 1);
    }
}

TEST_CASE("chart rotation does not change totals") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - x*(1-x)", g.base));
    for (const char* f : {"X/Y", "X*Y/Z^2"}) {
        LogSection s = LogSection::from_expression(X, f, Rational(1));
        long long base_total = intersect_count(X, cn, s).total;
        for (std::size_t rot = 1; rot < X.chart_count(); ++rot) {
            CountOptions o;
            o.chart_rotation = rot;
            CHECK(intersect_count(X, cn, s, o).total == base_total);
        }
    }
}

TEST_CASE("partial boundary: point visible in two charts is counted once") {
    // D = {2, 1, -1} on P^1 (no coordinate points); f = (x-1)/(x+1) has a
    // zero residue exactly at x = 2, a point both charts can see.
    Space X = p1_with({"2", "1", "-1"});
    LogSection s = LogSection::from_expression(X, "(x-1)/(x+1)", Rational(1));
    CountReport r = intersect_count(X, LagCycle::zero_section(X), s);
    CHECK(r.total == 1);
    // chi check: U = P^1 minus three points
    CHECK(r.total == -euler_open(X));
    for (std::size_t rot = 0; rot < X.chart_count(); ++rot) {
        CountOptions o;
        o.chart_rotation = rot;
        CHECK(intersect_count(X, LagCycle::zero_section(X), s, o).total == 1);
    }
}

TEST_CASE("raw cycles transition between charts like intrinsic ones") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry gz = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - x*(1-x)", gz.base));
    LagCycle rw = LagCycle::raw(X, z_chart,
                                {"y - x + x^2", "(1-x)*eta_x - (-1+2*x)*eta_y"}, 1, "raw");
    for (std::size_t k = 0; k < X.chart_count(); ++k) {
        ChartGeometry g = make_chart_geometry(X, k);
        CHECK(ideal_equal(cn.closure_ideal(X, g, 0), rw.closure_ideal(X, g, 0)));
    }
    // and the counts agree
    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
    CHECK(intersect_count(X, rw, s).total == 1);
}

TEST_CASE("raw cycles must be conic in the fiber variables") {
    Space X = p2_toric();
    CHECK_THROWS_AS(LagCycle::raw(X, X.default_chart(), {"eta_x - 1"}, 1, "bad"), input_error);
}

TEST_CASE("multiplicities scale the total") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - x*(1-x)", g.base));
    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
    CHECK(euler_char(X, {{cn, 3}}, s) == 3);
    CHECK(euler_char(X, {{cn, 1}, {LagCycle::zero_section(X), 2}}, s) == 1);
}

TEST_CASE("non-reduced intersections are counted by length and flagged") {
    // Doubled point-conormal (the fiber over x = 3 with a length-2 scheme
    // structure): the count sees scheme length 2 at one point and warns.
    Space X = p1_with({"0", "1", "inf"});
    LagCycle doubled = LagCycle::raw(X, X.default_chart(), {"(x-3)^2"}, 1, "doubled-fiber");
    LogSection s = LogSection::from_expression(X, "x/(x-1)", Rational(1));
    CountReport r = intersect_count(X, doubled, s);
    CHECK(r.total == 2);
    CHECK_FALSE(r.warnings.empty());

    // the reduced fiber is the conormal of the point x = 3 and counts once
    ChartGeometry g = make_chart_geometry(X, X.default_chart());
    LagCycle point_conormal = LagCycle::conormal(X, X.default_chart(),
                                                 parse_poly("x - 3", g.base));
    CountReport r1 = intersect_count(X, point_conormal, s);
    CHECK(r1.total == 1);
    CHECK(r1.warnings.empty());
}

TEST_CASE("cubic in the torus: chi = 9 along both routes") {
    // S = {x^3 + y^3 = 7}: a smooth plane cubic whose closure meets the
    // boundary in nine distinct points, so chi(S) = 0 - 9 and
    // chi(C_S[1]) = 9.
    Space X = p2_toric();
    std::size_t zc = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, zc);
    Poly cubic = parse_poly("x^3 + y^3 - 7", g.base);
    LagCycle cn = LagCycle::conormal(X, zc, cubic);

    // independent oracle: count distinct boundary points by elimination
    Poly hom = homogenize(X, g, cubic);
    long long boundary_points = 0;
    for (std::size_t c = 0; c < X.boundary().size(); ++c) {
        for (std::size_t k = 0; k < X.chart_count(); ++k) {
            ChartGeometry gk = make_chart_geometry(X, k);
            auto vis = gk.visible_index_of(c);
            if (!vis) continue;
            Ideal I(gk.base, {dehomogenize(X, gk, hom), gk.visible[*vis].affine_form});
            QuotientDim q = quotient_dim(I);
            REQUIRE(q.finite);
            REQUIRE(is_radical_zero_dimensional(I));
            boundary_points += static_cast<long long>(q.dim);
            break;
        }
    }
    CHECK(boundary_points == 9);
    long long chi_S = 0 - boundary_points; // chi of a smooth cubic is 0

    SUBCASE("a generic monomial section meets the conormal in nine torus points") {
        LogSection s = LogSection::from_expression(X, "X^2/(Y*Z)", Rational(1));
        CountReport r = intersect_count(X, cn, s);
        CHECK(r.total == -chi_S);
        CHECK(r.warnings.empty());
        const StratumEntry* u = find_stratum(r, {});
        REQUIRE(u != nullptr);
        CHECK(u->count == 9);
    }
    SUBCASE("a degenerate section pushes all mass to three fat boundary points") {
        LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
        CountReport r = intersect_count(X, cn, s);
        CHECK(r.total == -chi_S);
        CHECK_FALSE(r.warnings.empty()); // length 3 at each of three points
        const StratumEntry* z = find_stratum(r, {"Z"});
        REQUIRE(z != nullptr);
        CHECK(z->count == 9);
        // scale invariance holds for the fat case too
        CountReport r2 = intersect_count(X, cn, LogSection::from_expression(X, "X/Y", Rational(2)));
        CHECK(r2.total == 9);
    }
}

TEST_CASE("curve tangent to the diagonal at a corner: fat depth-2 stratum") {
    // S = {y = x + x^3} is tangent to first order to the eta_x+eta_y=0
    // direction at the corner; with f = X/Y the whole Euler characteristic
    // sits there as one point of length 2. S is C minus {0, i, -i}, so
    // chi(S) = -2 and chi(C_S[1]) = 2.
    Space X = p2_toric();
    std::size_t zc = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, zc);
    LagCycle cn = LagCycle::conormal(X, zc, parse_poly("y - x - x^3", g.base));

    CountReport fat = intersect_count(X, cn, LogSection::from_expression(X, "X/Y", Rational(1)));
    CHECK(fat.total == 2);
    CHECK_FALSE(fat.warnings.empty());
    const StratumEntry* corner = find_stratum(fat, {"X", "Y"});
    REQUIRE(corner != nullptr);
    CHECK(corner->count == 2);

    // generic route: two simple interior points, no warning
    CountReport generic =
        intersect_count(X, cn, LogSection::from_expression(X, "X*Y/Z^2", Rational(1)));
    CHECK(generic.total == 2);
    CHECK(generic.warnings.empty());
    const StratumEntry* u = find_stratum(generic, {});
    REQUIRE(u != nullptr);
    CHECK(u->count == 2);
}

TEST_CASE("diagonal of P1 x P1 and the torus hyperbola have chi 0") {
    SUBCASE("diagonal") {
        Space X = p1xp1_toric();
        std::size_t dc = X.default_chart();
        ChartGeometry g = make_chart_geometry(X, dc);
        // x = X/Y, u = U/V: the diagonal is x = u, a torus curve isomorphic
        // to C^* (chi 0)
        LagCycle cn = LagCycle::conormal(X, dc, parse_poly("x - u", g.base));
        for (const char* f : {"X/Y", "U/V"}) {
            LogSection s = LogSection::from_expression(X, f, Rational(1));
            CHECK(euler_char(X, {{cn, 1}}, s) == 0);
        }
    }
    SUBCASE("hyperbola") {
        Space X = p2_toric();
        std::size_t zc = X.default_chart();
        ChartGeometry g = make_chart_geometry(X, zc);
        LagCycle cn = LagCycle::conormal(X, zc, parse_poly("x*y - 1", g.base));
        for (const char* f : {"X/Y", "X^2/(Y*Z)"}) {
            LogSection s = LogSection::from_expression(X, f, Rational(1));
            CHECK(euler_char(X, {{cn, 1}}, s) == 0);
        }
    }
}

TEST_CASE("degenerate sections report NON_TRANSVERSE") {
    Space X = p2_toric();
    LogSection zero_section_gamma = LogSection::from_expression(X, "X/Y", Rational(0));
    CHECK_THROWS_AS(
        intersect_count(X, LagCycle::zero_section(X), zero_section_gamma),
        nontransverse_error);
}

TEST_CASE("three-dimensional spaces: zero section route still closes") {
    // (C^*)^3 via P2 x P1 and (P1)^3, both with chi_top = 0
    for (auto dims : {std::vector<std::size_t>{2, 1}, {1, 1, 1}}) {
        Space X(dims);
        X.add_toric_boundary();
        // a degree-zero monomial on the first factor
        std::string f = dims.size() == 2 ? "X/Y" : "Z0_0/Z0_1";
        LogSection s = LogSection::from_expression(X, f, Rational(1));
        long long got = euler_char(X, {{LagCycle::zero_section(X), 1}}, s);
        long long n = static_cast<long long>(X.dim());
        CHECK(got == (n % 2 == 0 ? 1 : -1) * euler_open(X));
        CHECK(got == 0);
    }
}

TEST_CASE("multi-factor raw transition agrees with the intrinsic conormal") {
    Space X = p1xp1_toric();
    std::size_t dc = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, dc);
    LagCycle cn = LagCycle::conormal(X, dc, parse_poly("x - u", g.base));
    // the diagonal's conormal in the toric frame: u eta_x + x eta_u
    LagCycle rw = LagCycle::raw(X, dc, {"x - u", "u*eta_x + x*eta_u"}, 1, "raw-diagonal");
    for (std::size_t k = 0; k < X.chart_count(); ++k) {
        ChartGeometry gk = make_chart_geometry(X, k);
        CHECK(ideal_equal(cn.closure_ideal(X, gk, 0), rw.closure_ideal(X, gk, 0)));
    }
    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
    CHECK(euler_char(X, {{rw, 1}}, s) == 0);
}

TEST_CASE("mixed divisor on P1 x P1") {
    // full toric boundary on the first factor, three points on the second:
    // U = C^* x (P^1 minus three points), chi_top = 0
    Space X({1, 1});
    X.add_coordinate_component(0, 0);
    X.add_coordinate_component(0, 1);
    X.add_p1_point(1, Rational(0));
    X.add_p1_point(1, Rational(1));
    X.add_p1_infinity(1);
    for (const char* f : {"X/Y", "X*U/(Y*(U-V))"}) {
        LogSection s = LogSection::from_expression(X, f, Rational(1));
        CHECK(euler_char(X, {{LagCycle::zero_section(X), 1}}, s) == 0);
    }
    // f = U/(U-V) is flat along the infinity stratum of the second factor:
    // the section coincides with the zero section there, a genuine
    // transversality failure
    LogSection bad = LogSection::from_expression(X, "U/(U-V)", Rational(1));
    CHECK_THROWS_AS(intersect_count(X, LagCycle::zero_section(X), bad), nontransverse_error);
}

TEST_CASE("ruling curve on P1 x P1: chi 0 for good f, NON_TRANSVERSE for bad f") {
    // S = {x = 2} meets U in a copy of C^*, so chi vanishes; a section with
    // no component along the second factor meets its conormal in a curve.
    Space X = p1xp1_toric();
    std::size_t dc = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, dc);
    LagCycle cn = LagCycle::conormal(X, dc, parse_poly("x - 2", g.base));
    LogSection good = LogSection::from_expression(X, "X*U/(Y*V)", Rational(1));
    CHECK(euler_char(X, {{cn, 1}}, good) == 0);
    LogSection bad = LogSection::from_expression(X, "X/Y", Rational(1));
    CHECK_THROWS_AS(intersect_count(X, cn, bad), nontransverse_error);
}

TEST_CASE("(1,1)-curve on P1 x P1: chi = 2 concentrated on residue-zero strata") {
    // S-bar = {xu = x + u + 1} is rational and meets the boundary in four
    // distinct points (one per component, none at corners), so
    // chi(S) = 2 - 4 and chi(C_S[1]) = 2. With f = X/Y the residues vanish
    // exactly on the second factor's components, one point over each.
    Space X = p1xp1_toric();
    std::size_t dc = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, dc);
    LagCycle cn = LagCycle::conormal(X, dc, parse_poly("x*u - x - u - 1", g.base));
    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
    CountReport r = intersect_count(X, cn, s);
    CHECK(r.total == 2);
    CHECK(r.warnings.empty());
    const StratumEntry* at_u = find_stratum(r, {"U"});
    const StratumEntry* at_v = find_stratum(r, {"V"});
    REQUIRE(at_u != nullptr);
    REQUIRE(at_v != nullptr);
    CHECK(at_u->count == 1);
    CHECK(at_v->count == 1);
    // scale invariance and a second valid f
    CHECK(euler_char(X, {{cn, 1}}, LogSection::from_expression(X, "X/Y", Rational(2))) == 2);
    CHECK(euler_char(X, {{cn, 1}}, LogSection::from_expression(X, "U/V", Rational(1))) == 2);
}

TEST_CASE("sharp family: shear of the zero section and fiber recovery") {
    Space X = p2_toric();
    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
    LagCycle zero = LagCycle::zero_section(X);
    SharpFamily fam(X, zero, s);

    SUBCASE("displayed family ideal on the standard chart") {
        std::size_t z_chart = X.default_chart();
        ChartGeometry g = make_chart_geometry(X, z_chart);
        auto [ctx, gens] = toric_display(g, fam.gens(z_chart, 0));
        Ideal shown(ctx, gens);
        Ideal expect = ideal_of(ctx, {"eta_x - s", "eta_y + s"});
        CHECK(ideal_equal(shown, expect));
    }

    SUBCASE("fiber at s = 0 equals the input cycle, chart by chart") {
        LagCycle fib = fam.fiber(Rational(0));
        for (std::size_t k = 0; k < X.chart_count(); ++k) {
            ChartGeometry g = make_chart_geometry(X, k);
            CHECK(ideal_equal(fib.closure_ideal(X, g, 0), zero.closure_ideal(X, g, 0)));
        }
    }
}

TEST_CASE("sharp family with a list of f's: independent parameters") {
    Space X = p2_toric();
    LagCycle zero = LagCycle::zero_section(X);
    std::vector<LogSection> fs{LogSection::from_expression(X, "X/Y", Rational(1)),
                               LogSection::from_expression(X, "Y/Z", Rational(1))};
    SharpFamily fam(X, zero, fs);
    CHECK(fam.parameter_count() == 2);

    std::size_t zc = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, zc);
    auto [ctx, gens] = toric_display(g, fam.gens(zc, 0));
    // dlog(X/Y) has residues (1,-1,0); dlog(Y/Z) has (0,1,-1)
    Ideal shown(ctx, gens);
    Ideal expect = ideal_of(ctx, {"eta_x - s1", "eta_y + s1 - s2"});
    CHECK(ideal_equal(shown, expect));

    // fiber at the origin of the parameter space is the input cycle
    LagCycle fib = fam.fiber(std::vector<Rational>{Rational(0), Rational(0)});
    for (std::size_t k = 0; k < X.chart_count(); ++k) {
        ChartGeometry gk = make_chart_geometry(X, k);
        CHECK(ideal_equal(fib.closure_ideal(X, gk, 0), zero.closure_ideal(X, gk, 0)));
    }
    // specializing the second parameter to zero recovers the single-f family
    SharpFamily single(X, zero, fs[0]);
    LagCycle f10 = fam.fiber(std::vector<Rational>{Rational(1), Rational(0)});
    LagCycle f1 = single.fiber(Rational(1));
    for (std::size_t k = 0; k < X.chart_count(); ++k) {
        ChartGeometry gk = make_chart_geometry(X, k);
        CHECK(ideal_equal(f10.closure_ideal(X, gk, 0), f1.closure_ideal(X, gk, 0)));
    }
}

TEST_CASE("sharp family of the conormal: fiber at s=1 against the zero section") {
    Space X = p2_toric();
    std::size_t z_chart = X.default_chart();
    ChartGeometry g = make_chart_geometry(X, z_chart);
    LagCycle cn = LagCycle::conormal(X, z_chart, parse_poly("y - x*(1-x)", g.base));
    LogSection s = LogSection::from_expression(X, "X/Y", Rational(1));
    SharpFamily fam(X, cn, s);

    // fiber at 0 is the conormal itself
    LagCycle fib0 = fam.fiber(Rational(0));
    for (std::size_t k = 0; k < X.chart_count(); ++k) {
        ChartGeometry gk = make_chart_geometry(X, k);
        CHECK(ideal_equal(fib0.closure_ideal(X, gk, 0), cn.closure_ideal(X, gk, 0)));
    }

    // the sheared cycle meets the *zero* section in the same count as the
    // original cycle meets dlog f
    LagCycle fib1 = fam.fiber(Rational(1));
    LogSection zero_gamma(X, std::vector<long long>(X.boundary().size(), 0), Rational(0));
    CountReport sheared = intersect_count(X, fib1, zero_gamma);
    CountReport direct = intersect_count(X, cn, s);
    CHECK(sheared.total == direct.total);
    CHECK(sheared.total == 1);
}
