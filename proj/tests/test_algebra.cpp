#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epwsym/matrix.hpp"
#include "epwsym/solve.hpp"

using namespace epwsym;

static FieldCtx paper_ctx() { return validate_root(65521, 420, -18153); }

TEST_CASE("validate_root accepts the paper constant and rejects non-primitive roots") {
    FieldCtx ctx = paper_ctx();
    CHECK(ctx.f.pow(ctx.zeta, 420) == 1);
    CHECK_THROWS_WITH_AS(validate_root(65521, 420, 1), doctest::Contains("NotPrimitive"), Error);
    // the square has order 210
    int64_t sq = (int64_t)ctx.f.mul(ctx.zeta, ctx.zeta);
    CHECK_THROWS_WITH_AS(validate_root(65521, 420, sq), doctest::Contains("NotPrimitive"), Error);
    // oracle: repeated squaring shows zeta^2 has order 210
    uint64_t x = ctx.f.mul(ctx.zeta, ctx.zeta);
    uint64_t e = 1;
    uint64_t cur = x;
    while (cur != 1) {
        cur = ctx.f.mul(cur, x);
        ++e;
    }
    CHECK(e == 210);
}

TEST_CASE("Fermat: a^(p-1) = 1 for sampled elements") {
    FieldCtx ctx = paper_ctx();
    Prng rng(1);
    for (int i = 0; i < 10000; ++i) {
        uint64_t a = rng.field_nonzero(ctx.f);
        CHECK(ctx.f.pow(a, ctx.f.p - 1) == 1);
    }
}

TEST_CASE("derived roots of the 420th root") {
    FieldCtx ctx = paper_ctx();
    for (uint64_t m : {2, 3, 4, 5, 6, 7, 420}) {
        uint64_t r = ctx.root_of_order(m);
        CHECK(ctx.f.pow(r, m) == 1);
        for (uint64_t q : prime_factors(m)) CHECK(ctx.f.pow(r, m / q) != 1);
    }
    CHECK(ctx.root_of_order(2) == ctx.f.p - 1);
}

TEST_CASE("univariate factorization and roots") {
    FieldCtx ctx = paper_ctx();
    FpK k(ctx.f);
    Prng rng(7);

    SUBCASE("x^6 factors as a 6-fold root at 0") {
        FpPoly f;
        f.c = {0, 0, 0, 0, 0, 0, 1};
        auto fac = factor_poly(k, f, rng);
        REQUIRE(fac.size() == 1);
        CHECK(fac[0].poly.deg() == 1);
        CHECK(fac[0].poly.c[0] == 0);
        CHECK(fac[0].mult == 6);
    }

    SUBCASE("(x^2 - zeta)(x^4 + 1): roots verified by evaluation in extensions") {
        FpPoly f1;
        f1.c = {ctx.f.neg(ctx.zeta), 0, 1};
        FpPoly f2;
        f2.c = {1, 0, 0, 0, 1};
        FpPoly f = poly_mul(k, f1, f2);
        auto fac = factor_poly(k, f, rng);
        int degsum = 0;
        for (auto& fc : fac) {
            degsum += fc.poly.deg() * fc.mult;
            // each irreducible factor's roots satisfy f = 0 in its field
            FqCtx Q(ctx.f, fc.poly);
            FqK kq(Q);
            auto root = kq.gen();
            Poly<FqK> lifted = lift_poly(kq, f);
            CHECK(kq.is_zero(poly_eval(kq, lifted, root)));
            // Frobenius orbit gives deg distinct roots
            auto r2 = root;
            for (int i = 1; i < fc.poly.deg(); ++i) {
                r2 = kq.frobenius(r2);
                CHECK(!kq.eq(r2, root));
            }
        }
        CHECK(degsum == 6);
    }

    SUBCASE("random product reconstructs (degree bookkeeping exact)") {
        for (int trial = 0; trial < 20; ++trial) {
            FpPoly f = FpPoly::constant(k, 1 + rng.below(100));
            int target = 1 + (int)rng.below(6);
            for (int i = 0; i < target; ++i) {
                FpPoly lin;
                lin.c = {rng.field(ctx.f), 1};
                f = poly_mul(k, f, lin);
            }
            auto fac = factor_poly(k, f, rng);
            int degsum = 0;
            FpPoly recon = FpPoly::constant(k, f.c.back());
            for (auto& fc : fac) {
                degsum += fc.poly.deg() * fc.mult;
                for (int i = 0; i < fc.mult; ++i) recon = poly_mul(k, recon, fc.poly);
            }
            CHECK(degsum == target);
            CHECK(poly_sub(k, recon, f).is_zero());
        }
    }
}

TEST_CASE("extension field arithmetic is a field with Frobenius automorphism") {
    FieldCtx ctx = paper_ctx();
    FpK k(ctx.f);
    FpPoly mod = smallest_irreducible(k, 3);
    CHECK(mod.deg() == 3);
    FqCtx Q(ctx.f, mod);
    FqK kq(Q);
    Prng rng(3);
    for (int t = 0; t < 50; ++t) {
        FqK::Elem a = kq.zero(), b = kq.zero();
        for (auto& v : a) v = rng.field(ctx.f);
        for (auto& v : b) v = rng.field(ctx.f);
        if (!kq.is_zero(a)) CHECK(kq.eq(kq.mul(a, kq.inv(a)), kq.one()));
        // Frobenius is additive and multiplicative
        CHECK(kq.eq(kq.frobenius(kq.add(a, b)), kq.add(kq.frobenius(a), kq.frobenius(b))));
        CHECK(kq.eq(kq.frobenius(kq.mul(a, b)), kq.mul(kq.frobenius(a), kq.frobenius(b))));
    }
}

TEST_CASE("exact multivariate division") {
    FieldCtx ctx = paper_ctx();
    Prng rng(17);
    auto random_poly = [&](int nvars, int deg, int nterms) {
        MultiPoly p = MultiPoly::zero(nvars);
        for (int t = 0; t < nterms; ++t) {
            Mono m;
            int left = deg;
            for (int v = 0; v < nvars; ++v) {
                m.e[v] = (uint16_t)rng.below(left + 1);
                left -= m.e[v];
            }
            p.terms.push_back({m, rng.field_nonzero(ctx.f)});
        }
        p.normalize(ctx.f);
        return p;
    };
    for (int trial = 0; trial < 100; ++trial) {
        MultiPoly q = random_poly(4, 2, 5);
        MultiPoly r = random_poly(4, 4, 8);
        if (q.is_zero() || r.is_zero()) continue;
        MultiPoly prod = mp_mul(ctx.f, q, r);
        MultiPoly back = mp_exact_divide(ctx.f, prod, q);
        CHECK(mp_sub(ctx.f, back, r).is_zero());
    }
    // x^2 + 1 by x + 3: divisible iff -3 is a root
    MultiPoly f = MultiPoly::zero(1);
    f.terms = {{Mono{{2}}, 1}, {Mono{}, 1}};
    f.normalize(ctx.f);
    MultiPoly d = MultiPoly::zero(1);
    d.terms = {{Mono{{1}}, 1}, {Mono{}, 3}};
    d.normalize(ctx.f);
    uint64_t val = mp_eval_fp(ctx.f, f, {ctx.f.from_int(-3)});
    if (val != 0) CHECK_THROWS_AS(mp_exact_divide(ctx.f, f, d), Error);
}

TEST_CASE("det_interpolated matches cofactor expansion on random matrices") {
    FieldCtx ctx = paper_ctx();
    Prng rng(23);
    // cofactor oracle over the polynomial ring
    std::function<MultiPoly(const std::vector<std::vector<MultiPoly>>&)> cof =
        [&](const std::vector<std::vector<MultiPoly>>& m) -> MultiPoly {
        int n = (int)m.size();
        if (n == 1) return m[0][0];
        MultiPoly acc = MultiPoly::zero(m[0][0].nvars);
        for (int j = 0; j < n; ++j) {
            std::vector<std::vector<MultiPoly>> minor;
            for (int r = 1; r < n; ++r) {
                std::vector<MultiPoly> row;
                for (int c = 0; c < n; ++c)
                    if (c != j) row.push_back(m[r][c]);
                minor.push_back(row);
            }
            MultiPoly t = mp_mul(ctx.f, m[0][j], cof(minor));
            if (j % 2) t = mp_scale(ctx.f, t, ctx.f.neg(1));
            acc = mp_add(ctx.f, acc, t);
        }
        return acc;
    };
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + (int)rng.below(4);  // up to 5x5
        int nv = 2 + (int)rng.below(2);
        std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                MultiPoly e = MultiPoly::constant(nv, rng.field(ctx.f));
                for (int v = 0; v < nv; ++v)
                    e = mp_add(ctx.f, e, MultiPoly::var(nv, v, rng.field(ctx.f)));
                m[i][j] = e;
            }
        MultiPoly expect = cof(m);
        MultiPoly got = det_interpolated(ctx.f, m, n, rng);
        CHECK(mp_sub(ctx.f, got, expect).is_zero());
    }
    // identity 10x10 -> constant 1
    std::vector<std::vector<MultiPoly>> id(10, std::vector<MultiPoly>(10, MultiPoly::zero(3)));
    for (int i = 0; i < 10; ++i) id[i][i] = MultiPoly::constant(3, 1);
    MultiPoly d = det_interpolated(ctx.f, id, 10, rng);
    CHECK(d.total_degree() == 0);
    CHECK(d.terms[0].second == 1);
}

TEST_CASE("zero_dim_solve: Bezout counts for random transverse pairs") {
    FieldCtx ctx = paper_ctx();
    Prng rng(31);
    auto random_form = [&](int deg) {
        MultiPoly p = MultiPoly::zero(3);
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j) {
                Mono m;
                m.e[0] = (uint16_t)i;
                m.e[1] = (uint16_t)j;
                m.e[2] = (uint16_t)(deg - i - j);
                p.terms.push_back({m, rng.field(ctx.f)});
            }
        p.normalize(ctx.f);
        return p;
    };
    SUBCASE("two random conics meet in 4 points with multiplicity") {
        for (int t = 0; t < 5; ++t) {
            SolveResult r = zero_dim_solve(ctx.f, random_form(2), random_form(2), rng);
            CHECK(r.with_mult == 4);
        }
    }
    SUBCASE("multiplicity sum equals the Bezout number on 50 random pairs") {
        for (int t = 0; t < 50; ++t) {
            int d1 = 1 + (int)rng.below(3), d2 = 1 + (int)rng.below(3);
            SolveResult r = zero_dim_solve(ctx.f, random_form(d1), random_form(d2), rng);
            CHECK(r.with_mult == d1 * d2);
        }
    }
    SUBCASE("common component is detected") {
        MultiPoly q = random_form(1);
        MultiPoly f = mp_mul(ctx.f, q, random_form(1));
        MultiPoly g = mp_mul(ctx.f, q, random_form(2));
        CHECK_THROWS_WITH_AS(zero_dim_solve(ctx.f, f, g, rng),
                             doctest::Contains("CommonComponent"), Error);
    }
    SUBCASE("brute force agreement on a conic pair") {
        MultiPoly f = random_form(2), g = random_form(2);
        SolveResult r = zero_dim_solve(ctx.f, f, g, rng);
        // count points over GF(p) by brute force on the affine chart z=1 and
        // compare with the clusters of degree 1
        long rational = 0;
        for (auto& sp : r.points)
            if (sp.pt.degree() == 1) ++rational;
        long brute = 0;
        MultiPoly fa = mp_substitute(ctx.f, f, 2, 1);
        MultiPoly ga = mp_substitute(ctx.f, g, 2, 1);
        for (uint64_t x = 0; x < ctx.f.p && brute <= 10; ++x) {
            // solve g(x, y) = 0 for y cheaply via the 1-d restriction
            std::vector<uint64_t> vals = {x, 0, 1};
            FpPoly fy, gy;
            {
                FpK k(ctx.f);
                MultiPoly fx = mp_substitute(ctx.f, fa, 0, x);
                MultiPoly gx = mp_substitute(ctx.f, ga, 0, x);
                fy = mp_to_unipoly(ctx.f, fx, 1);
                gy = mp_to_unipoly(ctx.f, gx, 1);
                FpPoly gg = poly_gcd(k, fy, gy);
                brute += gg.deg() > 0 ? (long)roots_in_fp(k, gg, rng).size() : 0;
            }
        }
        // also the line at infinity
        {
            FpK k(ctx.f);
            MultiPoly f0 = mp_substitute(ctx.f, f, 2, 0);
            MultiPoly g0 = mp_substitute(ctx.f, g, 2, 0);
            FpPoly fu = mp_dehomogenize(ctx.f, f0, 0, 1);
            FpPoly gu = mp_dehomogenize(ctx.f, g0, 0, 1);
            FpPoly gg = poly_gcd(k, fu, gu);
            brute += gg.deg() > 0 ? (long)roots_in_fp(k, gg, rng).size() : 0;
        }
        CHECK(rational == brute);
    }
}

TEST_CASE("eigenspaces of finite-order matrices") {
    FieldCtx ctx = paper_ctx();
    Prng rng(41);
    Mat m = Mat::identity(6);
    auto es = eigenspaces(ctx.f, m, rng);
    REQUIRE(es.size() == 1);
    CHECK(es[0].eigenvalue_fp == 1);
    CHECK(es[0].geometric_dim == 6);
}
