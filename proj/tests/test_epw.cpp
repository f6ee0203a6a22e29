#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epwsym/epw.hpp"

using namespace epwsym;

static const EpwPipeline& pipeline() {
    static std::shared_ptr<EpwPipeline> P =
        build_epw_pipeline(load_group_file(data_dir() + "/l3_4.json"), 42);
    return *P;
}

TEST_CASE("EPW sextic: degree 6, invariant under both generators") {
    const EpwPipeline& P = pipeline();
    const Fp& F = P.input.ctx.f;
    CHECK(P.Y.f.total_degree() == 6);
    CHECK(P.Y.f.is_homogeneous());
    CHECK(P.invariance_scalars.size() == 2);
    MESSAGE("action uses transposed matrices: ", P.transposed_action);
    MESSAGE("invariance scalars: ", P.invariance_scalars[0], ", ", P.invariance_scalars[1]);
    CHECK(P.geometric.order() == 20160);
    // identity gives lambda = 1
    CHECK(invariance_check(F, P.Y.f, Mat::identity(6)) == 1);
    // a random invertible matrix is not a symmetry
    Prng rng(5);
    Mat r(6, 6);
    for (auto& v : r.a) v = rng.field(F);
    CHECK_THROWS_AS(invariance_check(F, P.Y.f, r), Error);
}

TEST_CASE("Euler relation and the x = 0 hyperplane") {
    const EpwPipeline& P = pipeline();
    const Fp& F = P.input.ctx.f;
    MultiPoly acc = MultiPoly::zero(6);
    for (int v = 0; v < 6; ++v)
        acc = mp_add(F, acc, mp_mul(F, MultiPoly::var(6, v), P.Y.partials[v]));
    CHECK(mp_sub(F, acc, mp_scale(F, P.Y.f, 6)).is_zero());
    // Y does not contain the hyperplane x = 0 (the homogenization chart)
    CHECK(!mp_substitute(F, P.Y.f, 0, 0).is_zero());
}

TEST_CASE("restriction to generic lines and planes") {
    const EpwPipeline& P = pipeline();
    const Fp& F = P.input.ctx.f;
    Prng rng(9);
    FpK k(F);
    // generic line: binary sextic with 6 distinct roots
    Mat line = random_subspace(F, 2, 6, rng);
    MultiPoly r = restrict_sextic(F, P.Y, line);
    CHECK(r.total_degree() == 6);
    std::vector<uint64_t> vals = {0, 1};
    FpPoly u = [&] {
        FpPoly out;
        for (auto& [m, c] : r.terms) {
            if ((int)out.c.size() <= m.e[0]) out.c.resize(m.e[0] + 1, 0);
            out.c[m.e[0]] = F.add(out.c[m.e[0]], c);
        }
        out.trim(k);
        return out;
    }();
    (void)vals;
    FpPoly d = poly_derivative(k, u);
    CHECK(poly_gcd(k, u, d).deg() == 0);  // squarefree: 6 distinct roots
    // random point lies off Y
    PointCluster pt = rational_point(F, {1, rng.field(F), rng.field(F), rng.field(F),
                                         rng.field(F), rng.field(F)});
    CHECK(point_classify(F, P.Y, pt) == PointClass::Off);
}

TEST_CASE("singular locus degree is 40") {
    const EpwPipeline& P = pipeline();
    Prng rng(77);
    SingLocusReport rep = sing_locus_degree(P.input.ctx.f, P.Y, rng);
    CHECK(rep.degree == 40);
    CHECK(rep.dim == 2);
    CHECK(!rep.non_reduced);
    for (long c : rep.slice_counts) CHECK(c == 40);
}

TEST_CASE("quadric-quartic split inside an involution P^3") {
    const EpwPipeline& P = pipeline();
    const Fp& F = P.input.ctx.f;
    Prng rng(13);
    // the involution's invariant P^3: 4-dimensional eigenspace
    int invol = -1;
    for (size_t i = 1; i < P.geometric.order(); ++i)
        if (element_order(P.geometric, (int)i) == 2) { invol = (int)i; break; }
    REQUIRE(invol > 0);
    auto es = eigenspaces(F, P.geometric.lift(invol), rng);
    Mat p3;
    bool found = false;
    for (auto& e : es)
        if (e.degree == 1 && e.geometric_dim == 4) {
            p3 = e.basis;
            found = true;
        }
    REQUIRE(found);
    QuadricQuarticSplit S = quadric_split(F, P.Y, p3, rng);
    CHECK(S.quadric.total_degree() == 2);
    CHECK(S.quartic.total_degree() == 4);
    CHECK(S.curve_degree == 8);
    CHECK(S.node_count == 16);
    CHECK(mp_sub(F, mp_mul(F, S.quadric, S.quartic), S.restricted).is_zero());
    // the nodes are not on the quadric
    for (auto& n : S.nodes) {
        FqK kq(*n.field);
        CHECK(!kq.is_zero(mp_eval(kq, F, S.quadric, n.coords)));
    }
}

TEST_CASE("constructed quadric*quartic split recovers the factors") {
    const Fp F(65521);
    Prng rng(21);
    auto random_form4 = [&](int deg) {
        MultiPoly p = MultiPoly::zero(4);
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; a + b <= deg; ++b)
                for (int c = 0; a + b + c <= deg; ++c) {
                    Mono m;
                    m.e[0] = (uint16_t)a;
                    m.e[1] = (uint16_t)b;
                    m.e[2] = (uint16_t)c;
                    m.e[3] = (uint16_t)(deg - a - b - c);
                    p.terms.push_back({m, rng.field(F)});
                }
        p.normalize(F);
        return p;
    };
    MultiPoly q0 = random_form4(2), k0 = random_form4(4);
    // view the product as a sextic in 6 variables supported on the first 4
    MultiPoly prod4 = mp_mul(F, q0, k0);
    EpwSextic fake;
    fake.f = MultiPoly::zero(6);
    for (auto& [m, c] : prod4.terms) fake.f.terms.push_back({m, c});
    fake.f.normalize(F);
    for (int v = 0; v < 6; ++v) fake.partials.push_back(mp_derivative(F, fake.f, v));
    Mat p3(4, 6);
    for (int i = 0; i < 4; ++i) p3.at(i, i) = 1;
    QuadricQuarticSplit S = quadric_split(F, fake, p3, rng);
    // recovered quadric is a scalar multiple of q0
    uint64_t lambda = F.mul(S.quadric.terms[0].second, F.inv(q0.terms[0].second));
    CHECK(mp_sub(F, S.quadric, mp_scale(F, q0, lambda)).is_zero());
}

TEST_CASE("cube of a quadric is flagged positive-dimensional") {
    const Fp F(65521);
    Prng rng(31);
    // q generic quadric in 6 variables; f = q^3
    MultiPoly q = MultiPoly::zero(6);
    for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b) {
            Mono m;
            m.e[a] += 1;
            m.e[b] += 1;
            q.terms.push_back({m, rng.field_nonzero(F)});
        }
    q.normalize(F);
    EpwSextic cube;
    cube.f = mp_mul(F, q, mp_mul(F, q, q));
    for (int v = 0; v < 6; ++v) cube.partials.push_back(mp_derivative(F, cube.f, v));
    SingLocusReport rep = sing_locus_degree(F, cube, rng);
    CHECK(rep.dim > 2);
    CHECK(rep.non_reduced);
}
