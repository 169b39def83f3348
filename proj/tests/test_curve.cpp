#include <doctest.h>

#include <set>

#include "lincount/curve.hpp"

using namespace lincount;

namespace {

FieldCtxPtr F7() {
    static FieldCtxPtr ctx = FieldCtx::create(7, 1, 1);
    return ctx;
}

} // namespace

TEST_CASE("curve text grammar") {
    auto C = parse_curve(" x^2 + y^2 - z^2 ", F7());
    CHECK(C.d == 2);
    CHECK(C.terms.size() == 3);
    CHECK(curve_to_string(C) == "x^2 + y^2 + 6*z^2");
    // coefficient accumulation and implicit exponent 1
    auto D = parse_curve("2*x*y + 3*y*x + z^2", F7());
    CHECK(D.terms.at(ExpTriple{1, 1, 0}) == F7()->bfrom_int(5));

    CHECK_THROWS_AS(parse_curve("x^2 + y", F7()), NotHomogeneousError);
    CHECK_THROWS_AS(parse_curve("7*x^2", F7()), ZeroPolynomialError);
    CHECK_THROWS_AS(parse_curve("x^2 + w^2", F7()), ParseError);
    CHECK_THROWS_AS(parse_curve("", F7()), ParseError);
    CHECK_THROWS_AS(parse_curve("x^", F7()), ParseError);
    // text input needs a prime base
    CHECK_THROWS_AS(parse_curve("x + y", FieldCtx::create(7, 2, 1)), ParseError);
}

TEST_CASE("Euler identity sum x_i dF/dx_i = d*F at random points") {
    TrialRng rng(21);
    auto ext = FieldCtx::create(7, 1, 2);
    for (const char* eq : {"x^2 + y^2 - z^2", "x^3 + x^2*z - y^2*z", "x^4 - x^2*y^2 + y^3*z + z^4"}) {
        auto C = parse_curve(eq, F7());
        auto dC = partials(C);
        for (int t = 0; t < 30; ++t) {
            FieldElement a = ext->random_element(rng), b = ext->random_element(rng),
                         c = ext->random_element(rng);
            if (ext->is_zero(a) && ext->is_zero(b) && ext->is_zero(c)) continue;
            ProjPoint P = make_point(*ext, a, b, c);
            FieldElement lhs = ext->zero();
            for (int v = 0; v < 3; ++v)
                lhs = ext->add(lhs, ext->mul(P.x[v], evaluate(dC[v], P, *ext)));
            FieldElement rhs = ext->mul(ext->from_int(C.d), evaluate(C, P, *ext));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("point_count matches the naive reference and the genus-0 formula") {
    auto conic = parse_curve("x^2 + y^2 - z^2", F7());
    for (int N = 1; N <= 3; ++N) {
        std::uint64_t qn = 1;
        for (int i = 0; i < N; ++i) qn *= 7;
        CHECK(point_count(conic, N) == qn + 1);
    }
    for (const char* eq : {"x^3 + x^2*z - y^2*z", "x^4 - x^2*y^2 + y^3*z + z^4",
                           "x^3 + x*y^2 - x*z^2"}) {
        auto C = parse_curve(eq, F7());
        for (int N = 1; N <= 2; ++N) CHECK(point_count(C, N) == point_count_reference(C, N));
    }
}

TEST_CASE("enumerate_points lists exactly the rational points") {
    auto C = parse_curve("x^3 + x^2*z - y^2*z", F7());
    auto ext = FieldCtx::create(7, 1, 2);
    auto T = FieldTable::build(ext);
    auto pts = enumerate_points(C, *T);
    CHECK(pts.size() == point_count(C, 2));
    std::set<std::array<FIdx, 3>> uniq(pts.begin(), pts.end());
    CHECK(uniq.size() == pts.size());
    for (const auto& p : pts) {
        ProjPoint P = make_point(*ext, T->to_element(p[0]), T->to_element(p[1]),
                                 T->to_element(p[2]));
        CHECK(ext->is_zero(evaluate(C, P, *ext)));
    }
}

TEST_CASE("restriction to a line matches direct substitution") {
    auto conic = parse_curve("x^2 + y^2 - z^2", F7());
    auto ctx = F7();
    // line z = 0 restricts to +-(s^2 + t^2): no projective roots over F_7
    auto Bz = restrict_to_line(conic, make_line(*ctx, ctx->zero(), ctx->zero(), ctx->one()), ctx);
    CHECK(projective_root_count(Bz) == 0);
    // line y = 0 restricts to +-(s^2 - t^2): two roots
    auto By = restrict_to_line(conic, make_line(*ctx, ctx->zero(), ctx->one(), ctx->zero()), ctx);
    CHECK(projective_root_count(By) == 2);
    // a line on the curve restricts to zero
    auto split = parse_curve("x^2 - y^2", F7());  // two lines x = +-y
    auto B0 = restrict_to_line(split, make_line(*ctx, ctx->one(), ctx->neg(ctx->one()), ctx->zero()),
                               ctx);
    CHECK(B0.is_zero());
}

TEST_CASE("line_basis spans the line") {
    TrialRng rng(22);
    auto ext = FieldCtx::create(7, 1, 2);
    for (int t = 0; t < 100; ++t) {
        FieldElement a, b, c;
        do {
            a = ext->random_element(rng);
            b = ext->random_element(rng);
            c = ext->random_element(rng);
        } while (ext->is_zero(a) && ext->is_zero(b) && ext->is_zero(c));
        ProjLine l = make_line(*ext, a, b, c);
        auto [P0, P1] = line_basis(l, *ext);
        for (const auto& P : {P0, P1}) {
            FieldElement dot = ext->zero();
            for (int v = 0; v < 3; ++v) dot = ext->add(dot, ext->mul(l.dual.x[v], P.x[v]));
            CHECK(ext->is_zero(dot));
        }
        CHECK(!(P0 == P1));
    }
}

TEST_CASE("singular points of the standard fixtures") {
    auto ctx = F7();
    CHECK(singular_points(parse_curve("x^2 + y^2 - z^2", F7())).empty());
    CHECK(singular_points(parse_curve("x^4 - x^2*y^2 + y^3*z + z^4", F7())).empty());

    auto nodal = singular_points(parse_curve("x^3 + x^2*z - y^2*z", F7()));
    REQUIRE(nodal.size() == 1);
    CHECK(nodal[0].ext_degree == 1);
    CHECK(nodal[0].P == make_point(*ctx, ctx->zero(), ctx->zero(), ctx->one()));

    auto cusp = singular_points(parse_curve("x^3 - y^2*z", F7()));
    REQUIRE(cusp.size() == 1);
    CHECK(cusp[0].P == make_point(*ctx, ctx->zero(), ctx->zero(), ctx->one()));

    // conic times a chord: the two intersection points are the nodes
    auto red = singular_points(parse_curve("x^3 + x*y^2 - x*z^2", F7()));
    REQUIRE(red.size() == 2);
    for (const auto& s : red) CHECK(s.ext_degree == 1);

    // conic times the line z = 0: conjugate nodes x^2 + y^2 = 0 of degree 2
    auto conj = singular_points(parse_curve("x^2*z + y^2*z - z^3", F7()));
    // z(x^2+y^2-z^2): nodes where z=0 meets the conic, i.e. x^2+y^2=0
    REQUIRE(conj.size() == 2);
    for (const auto& s : conj) CHECK(s.ext_degree == 2);
}

TEST_CASE("non-reduced curves are rejected as degenerate") {
    CHECK_THROWS_AS(singular_points(parse_curve("x^2", F7())), DegenerateError);
    CHECK_THROWS_AS(singular_points(parse_curve("x^2*y^2", F7())), DegenerateError);
}

TEST_CASE("component count estimator (Lang-Weil at N = 4)") {
    auto conic = parse_curve("x^2 + y^2 - z^2", F7());
    auto v1 = is_absolutely_irreducible(conic, {1, 2});
    CHECK(v1.kind == IrredKind::ProvenYes);

    auto nodal = is_absolutely_irreducible(parse_curve("x^3 + x^2*z - y^2*z", F7()), {1, 2, 3, 4});
    CHECK(nodal.kind == IrredKind::LikelyYes);
    CHECK(nodal.components == 1);

    auto red = is_absolutely_irreducible(parse_curve("x^3 + x*y^2 - x*z^2", F7()), {1, 2, 3, 4});
    CHECK(red.kind == IrredKind::LikelyNo);
    CHECK(red.components == 2);
}

TEST_CASE("simple tangency witnesses") {
    auto conic = parse_curve("x^2 + y^2 - z^2", F7());
    auto w = simple_tangency_witness(conic, 2);
    REQUIRE(w.has_value());
    CHECK(w->N == 1);
    // witness property: restriction has one double and d-2 simple closure points
    auto B = restrict_to_line(conic, w->line, w->ext);
    auto pat = form_multiplicity_pattern(B);
    REQUIRE(pat.size() == 1);
    CHECK(pat[0] == std::pair<int, int>{2, 1});

    auto quartic = parse_curve("x^4 - x^2*y^2 + y^3*z + z^4", F7());
    auto wq = simple_tangency_witness(quartic, 3);
    REQUIRE(wq.has_value());
    CHECK(wq->N == 1);
    auto Bq = restrict_to_line(quartic, wq->line, wq->ext);
    auto patq = form_multiplicity_pattern(Bq);
    REQUIRE(patq.size() == 2);
    CHECK(patq[0] == std::pair<int, int>{1, 2});
    CHECK(patq[1] == std::pair<int, int>{2, 1});

    // determinism: the search returns the same witness twice
    auto wq2 = simple_tangency_witness(quartic, 3);
    CHECK(wq->line.dual == wq2->line.dual);
}

TEST_CASE("field homomorphisms embed subfields consistently") {
    TrialRng rng(23);
    auto src = FieldCtx::create(7, 1, 2);
    auto dst = FieldCtx::create(7, 1, 4);
    FieldHom h = make_hom(src, dst);
    for (int t = 0; t < 100; ++t) {
        auto a = src->random_element(rng);
        auto b = src->random_element(rng);
        CHECK(h.apply(src->add(a, b)) == dst->add(h.apply(a), h.apply(b)));
        CHECK(h.apply(src->mul(a, b)) == dst->mul(h.apply(a), h.apply(b)));
    }
    CHECK(h.apply(src->one()) == dst->one());
    CHECK_THROWS_AS(make_hom(FieldCtx::create(7, 1, 3), dst), ContextMismatchError);
}
