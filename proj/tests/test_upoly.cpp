#include <doctest.h>

#include "lincount/upoly.hpp"

using namespace lincount;

namespace {

UPoly random_poly(const FieldCtxPtr& ctx, int deg, TrialRng& rng) {
    std::vector<FieldElement> c;
    for (int i = 0; i <= deg; ++i) c.push_back(ctx->random_element(rng));
    if (ctx->is_zero(c.back())) c.back() = ctx->one();
    return upoly_from_elems(ctx, std::move(c));
}

} // namespace

TEST_CASE("divmod invariant a = q*b + r with deg r < deg b") {
    TrialRng rng(11);
    auto ctx = FieldCtx::create(7, 1, 2);
    for (int t = 0; t < 200; ++t) {
        UPoly a = random_poly(ctx, 1 + static_cast<int>(rng.below(6)), rng);
        UPoly b = random_poly(ctx, 1 + static_cast<int>(rng.below(4)), rng);
        auto [q, r] = upoly_divmod(a, b);
        CHECK(upoly_add(upoly_mul(q, b), r) == a);
        CHECK(r.degree() < b.degree());
    }
}

TEST_CASE("gcd divides both arguments and is monic") {
    TrialRng rng(12);
    auto ctx = FieldCtx::create(5, 1, 1);
    for (int t = 0; t < 200; ++t) {
        UPoly a = random_poly(ctx, static_cast<int>(rng.below(5)), rng);
        UPoly b = random_poly(ctx, static_cast<int>(rng.below(5)), rng);
        UPoly g = upoly_gcd(a, b);
        if (g.is_zero()) continue;
        CHECK(ctx->is_one(g.leading()));
        CHECK(upoly_rem(a, g).is_zero());
        CHECK(upoly_rem(b, g).is_zero());
    }
}

TEST_CASE("resultant vanishes exactly on common roots") {
    auto ctx = FieldCtx::create(7, 1, 1);
    auto lin = [&](std::int64_t root) {
        return upoly_from_ints(ctx, {-root, 1});  // x - root
    };
    CHECK(!ctx->is_zero(upoly_resultant(lin(2), lin(3))));
    CHECK(ctx->is_zero(upoly_resultant(upoly_mul(lin(2), lin(5)), lin(2))));
    // resultant of (x-a)(x-b) against (x-c): (a-c)(b-c) up to sign
    UPoly f = upoly_mul(lin(1), lin(4));
    CHECK(upoly_resultant(f, lin(2)) == ctx->from_int((2 - 1) * (2 - 4)));
}

TEST_CASE("discriminant of a quadratic is b^2 - 4c") {
    auto ctx = FieldCtx::create(7, 1, 1);
    for (std::int64_t b = 0; b < 7; ++b)
        for (std::int64_t c = 0; c < 7; ++c) {
            UPoly f = upoly_from_ints(ctx, {c, b, 1});
            CHECK(upoly_discriminant(f) == ctx->from_int(b * b - 4 * c));
        }
    CHECK(ctx->is_zero(upoly_discriminant(upoly_from_ints(ctx, {1, -2, 1}))));  // (x-1)^2
}

TEST_CASE("squarefree decomposition handles wild multiplicities") {
    auto ctx = FieldCtx::create(7, 1, 1);
    // x^7 - 1 = (x - 1)^7 in characteristic 7
    UPoly f = upoly_from_ints(ctx, {-1, 0, 0, 0, 0, 0, 0, 1});
    auto sfd = squarefree_decomposition(f);
    REQUIRE(sfd.size() == 1);
    CHECK(sfd[0].second == 7);
    CHECK(sfd[0].first == upoly_from_ints(ctx, {-1, 1}));

    TrialRng rng(13);
    for (int t = 0; t < 100; ++t) {
        UPoly g = upoly_monic(random_poly(ctx, 1 + static_cast<int>(rng.below(3)), rng));
        UPoly h = upoly_monic(random_poly(ctx, 1 + static_cast<int>(rng.below(3)), rng));
        UPoly prod = upoly_mul(upoly_mul(g, g), h);  // g^2 h
        UPoly back = upoly_one(ctx);
        for (const auto& [s, e] : squarefree_decomposition(prod))
            for (int i = 0; i < e; ++i) back = upoly_mul(back, s);
        CHECK(back == prod);
    }
}

TEST_CASE("count_roots matches a naive scan for every poly of degree <= 4 over F_5") {
    auto ctx = FieldCtx::create(5, 1, 1);
    for (std::uint64_t code = 5; code < 5ull * 5 * 5 * 5 * 5; ++code) {
        std::uint64_t c = code;
        std::vector<std::int64_t> cs;
        while (c) {
            cs.push_back(static_cast<std::int64_t>(c % 5));
            c /= 5;
        }
        UPoly f = upoly_from_ints(ctx, cs);
        if (f.degree() < 1) continue;
        int naive = 0;
        for (std::uint64_t x = 0; x < 5; ++x)
            if (ctx->is_zero(upoly_eval(f, ctx->element_at(x)))) ++naive;
        CHECK(count_roots(f) == naive);
    }
}

TEST_CASE("upoly_roots returns exactly the zeros, sorted by element index") {
    TrialRng rng(14);
    auto ctx = FieldCtx::create(7, 1, 2);
    for (int t = 0; t < 50; ++t) {
        UPoly f = random_poly(ctx, 1 + static_cast<int>(rng.below(5)), rng);
        auto roots = upoly_roots(f, rng);
        std::vector<FieldElement> naive;
        for (std::uint64_t x = 0; x < ctx->card(); ++x) {
            auto e = ctx->element_at(x);
            if (ctx->is_zero(upoly_eval(f, e))) naive.push_back(e);
        }
        CHECK(roots == naive);  // element_at order is index order
    }
}

TEST_CASE("factor round-trips on 1000 random polynomials") {
    TrialRng rng(15);
    for (auto pr : {std::pair<int, int>{5, 1}, {7, 2}}) {
        auto ctx = FieldCtx::create(pr.first, pr.second, 1);
        for (int t = 0; t < 500; ++t) {
            UPoly f = random_poly(ctx, 1 + static_cast<int>(rng.below(6)), rng);
            auto fac = factor(f, rng);
            UPoly prod = upoly_one(ctx);
            int degsum = 0;
            for (const auto& [g, e] : fac) {
                CHECK(ctx->is_one(g.leading()));
                CHECK(g.degree() >= 1);
                degsum += g.degree() * e;
                for (int i = 0; i < e; ++i) prod = upoly_mul(prod, g);
            }
            CHECK(degsum == f.degree());
            CHECK(upoly_scale(prod, f.leading()) == f);
        }
    }
}

TEST_CASE("factorization_type is deterministic DDF and rejects repeated roots") {
    auto ctx = FieldCtx::create(7, 1, 1);
    CHECK(factorization_type(upoly_from_ints(ctx, {1, 0, 1})) == Partition({2}));
    // x(x-1)(x^2+1)
    UPoly f = upoly_mul(upoly_mul(upoly_from_ints(ctx, {0, 1}), upoly_from_ints(ctx, {-1, 1})),
                        upoly_from_ints(ctx, {1, 0, 1}));
    CHECK(factorization_type(f) == Partition({1, 1, 2}));
    CHECK_THROWS_AS(factorization_type(upoly_from_ints(ctx, {1, -2, 1})), NotSquarefreeError);
}

TEST_CASE("binary form basics on the conic restrictions") {
    auto ctx = FieldCtx::create(7, 1, 1);
    // s^2 + t^2 has no projective roots over F_7; s^2 - t^2 has two
    CHECK(projective_root_count(binary_form_from_ints(ctx, 2, {1, 0, 1})) == 0);
    CHECK(projective_root_count(binary_form_from_ints(ctx, 2, {-1, 0, 1})) == 2);
    // s^2 t: double root (0:1) and simple root (1:0)
    auto B = binary_form_from_ints(ctx, 3, {0, 0, 1, 0});
    CHECK(projective_root_count(B) == 2);
    CHECK(!form_squarefree(B));
    CHECK(infinity_multiplicity(binary_form_from_ints(ctx, 2, {0, 1, 0})) == 1);
}

TEST_CASE("form squarefreeness and type are GL2-invariant") {
    TrialRng rng(16);
    auto ctx = FieldCtx::create(7, 1, 2);
    for (int t = 0; t < 100; ++t) {
        std::vector<FieldElement> cs;
        int d = 2 + static_cast<int>(rng.below(4));
        bool nz = false;
        for (int i = 0; i <= d; ++i) {
            cs.push_back(ctx->random_element(rng));
            nz = nz || !ctx->is_zero(cs.back());
        }
        if (!nz) cs[0] = ctx->one();
        BinaryForm B = binary_form(ctx, d, cs);
        FieldElement a, b, c, e;
        do {
            a = ctx->random_element(rng);
            b = ctx->random_element(rng);
            c = ctx->random_element(rng);
            e = ctx->random_element(rng);
        } while (ctx->mul(a, e) == ctx->mul(b, c));
        BinaryForm B2 = form_compose(B, a, b, c, e);
        CHECK(projective_root_count(B) == projective_root_count(B2));
        CHECK(form_squarefree(B) == form_squarefree(B2));
        if (form_squarefree(B)) CHECK(form_factorization_type(B) == form_factorization_type(B2));
    }
}

TEST_CASE("multiplicity pattern counts closure points by contact order") {
    auto ctx = FieldCtx::create(7, 1, 1);
    // s^2 t (s - t): roots (0:1) double, (1:0) and (1:1) simple
    auto B = binary_form_from_ints(ctx, 4, {0, 0, -1, 1, 0});
    auto pat = form_multiplicity_pattern(B);
    REQUIRE(pat.size() == 2);
    CHECK(pat[0] == std::pair<int, int>{1, 2});
    CHECK(pat[1] == std::pair<int, int>{2, 1});
}
