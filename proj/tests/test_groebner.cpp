#include <doctest.h>

#include <random>

#include "logchi/ideal.hpp"
#include "logchi/parse.hpp"

using namespace logchi;

namespace {

Poly P(const ContextPtr& ctx, const std::string& s) { return parse_poly(s, ctx); }

Ideal I(const ContextPtr& ctx, std::initializer_list<std::string> gens) {
    std::vector<Poly> g;
    for (const auto& s : gens) g.push_back(P(ctx, s));
    return Ideal(ctx, std::move(g));
}

ExpVec leading_monomial(const Poly& p, const MonomialOrder& ord) {
    const ExpVec* best = nullptr;
    for (const auto& [e, c] : p.terms())
        if (!best || ord.compare(e, *best) > 0) best = &e;
    return *best;
}

bool lm_divides(const ExpVec& a, const ExpVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Poly random_poly(const ContextPtr& ctx, std::mt19937_64& rng, int max_terms = 3,
                 int max_exp = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms), expo(0, max_exp), coeff(-3, 3);
    Poly p = Poly::zero(ctx);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        ExpVec e(ctx->size());
        for (auto& x : e) x = static_cast<unsigned>(expo(rng));
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("groebner: already-reduced basis is returned as-is") {
    auto ctx = make_context({"x", "y"});
    auto gb = I(ctx, {"x", "y"}).groebner();
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == P(ctx, "x")); // grevlex: x > y, descending presentation
    CHECK(gb[1] == P(ctx, "y"));
}

TEST_CASE("groebner: lex with y ahead of x, hand-checked bases") {
    // lex priority comes from the context order
    auto ctx = make_context({"y", "x"});
    SUBCASE("monomial-ish ideal keeps x^2") {
        auto gb = I(ctx, {"x^2", "x*y", "y^2 - x"}).groebner(MonomialOrder::lex());
        // Buchberger by hand: all S-polynomials reduce to zero, basis already
        // reduced: {x^2, x*y, y^2 - x}.
        REQUIRE(gb.size() == 3);
        CHECK(gb[0] == P(ctx, "y^2 - x")); // descending in lex(y > x)
        CHECK(gb[1] == P(ctx, "x*y"));
        CHECK(gb[2] == P(ctx, "x^2"));
    }
    SUBCASE("substitution y = x^2 exposes x^3 - 1") {
        Ideal id = I(ctx, {"y - x^2", "x*y - 1"});
        auto gb = id.groebner(MonomialOrder::lex());
        REQUIRE(gb.size() == 2);
        CHECK(gb[0] == P(ctx, "y - x^2"));
        CHECK(gb[1] == P(ctx, "x^3 - 1"));
        CHECK(ideal_contains(id, P(ctx, "x^3 - 1")));
    }
}

TEST_CASE("reduce: membership and normal forms") {
    auto ctx = make_context({"x", "y"});
    Ideal ix = I(ctx, {"x"});
    CHECK(reduce(P(ctx, "x"), ix).is_zero());
    CHECK(reduce(P(ctx, "x+1"), ix) == P(ctx, "1"));
    Ideal curve = I(ctx, {"y - x^2", "x*y - 1"});
    CHECK(reduce(P(ctx, "x^3"), curve) == P(ctx, "1"));
}

TEST_CASE("saturate: component removal") {
    auto ctx3 = make_context({"x", "y", "z"});
    SUBCASE("removes the x = 0 sheet") {
        Ideal s = saturate(I(ctx3, {"x*y", "x*z"}), P(ctx3, "x"));
        CHECK(ideal_equal(s, I(ctx3, {"y", "z"})));
    }
    SUBCASE("nonzerodivisor changes nothing") {
        auto ctx = make_context({"x", "y"});
        Ideal s = saturate(I(ctx, {"x"}), P(ctx, "y"));
        CHECK(ideal_equal(s, I(ctx, {"x"})));
    }
    SUBCASE("x-primary part dissolves") {
        auto ctx = make_context({"x", "y"});
        Ideal s = saturate(I(ctx, {"x^2*y"}), P(ctx, "x"));
        CHECK(ideal_equal(s, I(ctx, {"y"})));
    }
    SUBCASE("saturation by zero is rejected") {
        auto ctx = make_context({"x", "y"});
        CHECK_THROWS_AS(saturate(I(ctx, {"x"}), Poly::zero(ctx)), input_error);
    }
}

TEST_CASE("quotient_dim: staircases and non-zero-dimensional input") {
    auto ctx = make_context({"x", "y"});
    SUBCASE("monomial staircase") {
        QuotientDim q = quotient_dim(I(ctx, {"x^2", "y^2"}));
        REQUIRE(q.finite);
        CHECK(q.dim == 4); // 1, x, y, xy
    }
    SUBCASE("point count over the closure") {
        QuotientDim q = quotient_dim(I(ctx, {"x^2 - 1", "y^3 - 1"}));
        REQUIRE(q.finite);
        CHECK(q.dim == 6); // 2 * 3 points
    }
    SUBCASE("a free variable means INFINITE") {
        CHECK_FALSE(quotient_dim(I(ctx, {"x"})).finite);
    }
    SUBCASE("the unit ideal has an empty variety") {
        QuotientDim q = quotient_dim(I(ctx, {"x", "x + 1"}));
        REQUIRE(q.finite);
        CHECK(q.dim == 0);
    }
}

TEST_CASE("eliminate: block-order projections") {
    SUBCASE("plain projection") {
        auto ctx = make_context({"x", "y"});
        Ideal e = eliminate(I(ctx, {"y - x^2", "x - 1"}), {0});
        auto sub = make_context({"x"});
        CHECK(ideal_equal(e, Ideal(sub, {P(sub, "x - 1")})));
    }
    SUBCASE("inconsistency survives projection") {
        auto ctx = make_context({"w", "x"});
        Ideal e = eliminate(I(ctx, {"w*x - 1", "x"}), {1});
        auto sub = make_context({"x"});
        CHECK(ideal_equal(e, Ideal(sub, {P(sub, "1")})));
    }
    SUBCASE("fiber equations project to the base point") {
        auto ctx = make_context({"x", "y", "eta_x", "eta_y"});
        Ideal e = eliminate(I(ctx, {"eta_x - 1", "eta_y + 1", "x", "y - x + x^2"}), {0, 1});
        auto sub = make_context({"x", "y"});
        CHECK(ideal_equal(e, Ideal(sub, {P(sub, "x"), P(sub, "y")})));
    }
}

TEST_CASE("membership soundness on randomized ideals") {
    auto ctx = make_context({"x", "y", "z"});
    std::mt19937_64 rng(20250811);
    int done = 0;
    while (done < 50) {
        std::vector<Poly> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(random_poly(ctx, rng));
        Ideal id(ctx, gens);
        // random ideal elements reduce to zero (closure under addition too)
        Poly p = Poly::zero(ctx);
        for (const Poly& g : id.gens()) p = p + random_poly(ctx, rng) * g;
        Poly q = Poly::zero(ctx);
        for (const Poly& g : id.gens()) q = q + random_poly(ctx, rng) * g;
        CHECK(reduce(p, id).is_zero());
        CHECK(reduce(p + q, id).is_zero());
        ++done;
    }
}

TEST_CASE("reduced bases are order-reduced") {
    auto ctx = make_context({"x", "y", "z"});
    std::mt19937_64 rng(424242);
    MonomialOrder ord = MonomialOrder::grevlex();
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Poly> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(random_poly(ctx, rng));
        auto gb = Ideal(ctx, gens).groebner(ord);
        std::vector<ExpVec> lms;
        for (const Poly& g : gb) lms.push_back(leading_monomial(g, ord));
        for (std::size_t i = 0; i < gb.size(); ++i) {
            for (std::size_t j = 0; j < gb.size(); ++j)
                if (i != j) CHECK_FALSE(lm_divides(lms[j], lms[i]));
            // monic, tail reduced
            for (const auto& [e, c] : gb[i].terms()) {
                if (e == lms[i]) {
                    CHECK(c == 1);
                    continue;
                }
                for (std::size_t j = 0; j < gb.size(); ++j)
                    CHECK_FALSE(lm_divides(lms[j], e));
            }
        }
    }
}

TEST_CASE("Bezout count for dense complete intersections, degrees <= 3") {
    auto ctx = make_context({"x", "y"});
    std::mt19937_64 rng(1618);
    std::uniform_int_distribution<int> coeff(1, 19);
    auto dense = [&](unsigned d) {
        Poly p = Poly::zero(ctx);
        for (unsigned i = 0; i <= d; ++i)
            for (unsigned j = 0; i + j <= d; ++j)
                p.add_term(ExpVec{i, j}, Rational(coeff(rng)) / Rational(coeff(rng)));
        return p;
    };
    for (unsigned d1 = 1; d1 <= 3; ++d1) {
        for (unsigned d2 = 1; d2 <= 3; ++d2) {
            QuotientDim q = quotient_dim(Ideal(ctx, {dense(d1), dense(d2)}));
            REQUIRE(q.finite);
            CHECK(q.dim == d1 * d2);
        }
    }
}

TEST_CASE("a reduced basis generates the same ideal (two-sided membership)") {
    auto ctx = make_context({"x", "y", "z"});
    std::mt19937_64 rng(20250101);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<Poly> gens;
        for (int i = 0; i < 3; ++i) gens.push_back(random_poly(ctx, rng));
        Ideal original(ctx, gens);
        Ideal regenerated(ctx, original.groebner());
        for (const Poly& g : original.gens()) CHECK(reduce(g, regenerated).is_zero());
        for (const Poly& h : regenerated.gens()) CHECK(reduce(h, original).is_zero());
    }
}

TEST_CASE("saturation is idempotent") {
    auto ctx = make_context({"x", "y"});
    std::mt19937_64 rng(31337);
    int done = 0;
    while (done < 20) {
        std::vector<Poly> gens{random_poly(ctx, rng), random_poly(ctx, rng)};
        Poly g = random_poly(ctx, rng);
        if (g.is_zero()) continue;
        Ideal id(ctx, gens);
        Ideal once = saturate(id, g);
        Ideal twice = saturate(once, g);
        CHECK(ideal_equal(once, twice));
        ++done;
    }
}

TEST_CASE("step budget aborts runaway computations as a resource error") {
    auto ctx = make_context({"x", "y", "z"});
    GbOptions tiny;
    tiny.budget = 3;
    Ideal id(ctx, {P(ctx, "x^3 + y^2*z - 1"), P(ctx, "x*y*z - x - 2"), P(ctx, "y^3 - z^2 + x")});
    CHECK_THROWS_AS(id.groebner(MonomialOrder::grevlex(), tiny), resource_error);
}

TEST_CASE("radicality detection for zero-dimensional ideals") {
    auto ctx = make_context({"x", "y"});
    CHECK(is_radical_zero_dimensional(I(ctx, {"x^2 - 1", "y"})));
    CHECK_FALSE(is_radical_zero_dimensional(I(ctx, {"x^2", "y"})));
    CHECK_FALSE(is_radical_zero_dimensional(I(ctx, {"x^2 - 2*x + 1", "y - 1"})));
}

TEST_CASE("rational point extraction from triangular-linear bases") {
    auto ctx = make_context({"x", "y"});
    auto pt = try_rational_point(I(ctx, {"x - 2", "y + x"}));
    REQUIRE(pt.has_value());
    CHECK((*pt)[0] == Rational(2));
    CHECK((*pt)[1] == Rational(-2));
    CHECK_FALSE(try_rational_point(I(ctx, {"x^2 - 2", "y"})).has_value());
}
