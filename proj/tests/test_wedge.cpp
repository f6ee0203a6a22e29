#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epwsym/io.hpp"
#include "epwsym/wedge.hpp"

using namespace epwsym;

static const GroupInput& l34_input() {
    static GroupInput gi = load_group_file(data_dir() + "/l3_4.json");
    return gi;
}

static const MatGroup& l34_linear() {
    static MatGroup G = close_group(l34_input().ctx.f, l34_input().generators, false);
    return G;
}

TEST_CASE("induced_wedge3 basics") {
    const Fp& F = l34_input().ctx.f;
    CHECK(induced_wedge3(F, Mat::identity(6)) == Mat::identity(20));

    // diag(l,1,1,1,1,1) scales exactly the ten triples containing index 0
    uint64_t lambda = 7;
    Mat d = Mat::identity(6);
    d.at(0, 0) = lambda;
    Mat w = induced_wedge3(F, d);
    auto& T = wedge_triples();
    for (int i = 0; i < 20; ++i) {
        bool has0 = T[i][0] == 0;
        CHECK(w.at(i, i) == (has0 ? lambda : 1));
        for (int j = 0; j < 20; ++j)
            if (i != j) CHECK(w.at(i, j) == 0);
    }
}

TEST_CASE("wedge homomorphism on random group pairs") {
    const MatGroup& G = l34_linear();
    const Fp& F = *G.F;
    Prng rng(101);
    for (int t = 0; t < 100; ++t) {
        const Mat& a = G.elems[rng.below(G.order())];
        const Mat& b = G.elems[rng.below(G.order())];
        CHECK(induced_wedge3(F, mat_mul(F, a, b)) ==
              mat_mul(F, induced_wedge3(F, a), induced_wedge3(F, b)));
    }
}

TEST_CASE("symplectic pairing values and covariance") {
    const Fp& F = l34_input().ctx.f;
    Mat omega = symplectic_form20(F);
    CHECK(omega.at(wedge_index(0, 1, 2), wedge_index(3, 4, 5)) == 1);
    CHECK(omega.at(wedge_index(0, 1, 2), wedge_index(0, 3, 4)) == 0);
    CHECK(mat_add(F, omega, mat_transpose(omega)) == Mat(20, 20));
    CHECK(mat_rank(F, omega) == 20);

    // F_v = v wedge (wedge^2 W) is isotropic for sampled v
    Prng rng(7);
    for (int t = 0; t < 10; ++t) {
        std::vector<uint64_t> v(6);
        for (auto& x : v) x = rng.field(F);
        std::vector<std::vector<uint64_t>> basis;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j) {
                std::vector<uint64_t> w(20, 0);
                for (int k = 0; k < 6; ++k) {
                    if (k == i || k == j || !v[k]) continue;
                    std::array<int, 3> tr = {k, i, j};
                    int sign = 1;
                    if (tr[0] > tr[1]) { std::swap(tr[0], tr[1]); sign = -sign; }
                    if (tr[1] > tr[2]) { std::swap(tr[1], tr[2]); sign = -sign; }
                    if (tr[0] > tr[1]) { std::swap(tr[0], tr[1]); sign = -sign; }
                    int idx = wedge_index(tr[0], tr[1], tr[2]);
                    w[idx] = F.add(w[idx], sign == 1 ? v[k] : F.neg(v[k]));
                }
                basis.push_back(w);
            }
        for (auto& a : basis)
            for (auto& b : basis) {
                uint64_t pair = 0;
                for (int i = 0; i < 20; ++i)
                    for (int j = 0; j < 20; ++j)
                        pair = F.add(pair, F.mul(a[i], F.mul(omega.at(i, j), b[j])));
                CHECK(pair == 0);
            }
    }

    // covariance: Omega(Wa, Wb) = det(m) Omega(a,b) on random group elements
    const MatGroup& G = l34_linear();
    for (int t = 0; t < 100; ++t) {
        const Mat& m = G.elems[rng.below(G.order())];
        Mat W = induced_wedge3(F, m);
        uint64_t det = mat_det(F, m);
        Mat lhs = mat_mul(F, mat_transpose(W), mat_mul(F, omega, W));
        Mat rhs = mat_scale(F, omega, det);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("trace-weighted projector and the invariant Lagrangian") {
    const GroupInput& gi = l34_input();
    const Fp& F = gi.ctx.f;
    const MatGroup& G = l34_linear();
    MESSAGE("linear closure order: ", G.order());
    MESSAGE("scalar subgroup order: ", G.scalar_subgroup.size());
    int mu3 = 0;
    for (uint64_t s : G.scalar_subgroup)
        if (F.mul(F.mul(s, s), s) == 1) ++mu3;
    CHECK(G.order() % 20160 == 0);

    WedgeClassData wcd = wedge_class_data(F, G);
    CHECK(wcd.kernel_order == mu3);
    long total = 0;
    for (long s : wcd.sizes) total += s;
    CHECK((size_t)total * wcd.kernel_order == G.order());

    // weight-1 average over all classes commutes with the generators
    std::vector<std::pair<int, uint64_t>> unit;
    for (size_t i = 0; i < wcd.sizes.size(); ++i) unit.push_back({(int)i, 1});
    Mat avg = isotypic_projector(F, wcd, unit);
    std::vector<Mat> gens20 = {induced_wedge3(F, gi.generators[0]),
                               induced_wedge3(F, gi.generators[1])};
    for (auto& g : gens20) CHECK(mat_mul(F, g, avg) == mat_mul(F, avg, g));

    // the trace weighting yields the 10-dimensional invariant Lagrangian
    auto weights = isotypic_weights(gi.ctx, wcd);
    Mat P1 = isotypic_projector(F, wcd, weights);
    std::vector<uint64_t> v1(P1.a.begin(), P1.a.begin() + 20);  // e1 * P1
    Mat A = invariant_lagrangian(F, gens20, v1);
    CHECK(A.rows == 10);

    // setwise G-invariance
    for (auto& g : gens20) {
        Mat AW = mat_mul(F, A, g);
        Mat stacked(20, 20);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 20; ++j) {
                stacked.at(i, j) = A.at(i, j);
                stacked.at(10 + i, j) = AW.at(i, j);
            }
        CHECK(mat_rank(F, stacked) == 10);
    }

    CHECK_THROWS_WITH_AS(invariant_lagrangian(F, gens20, std::vector<uint64_t>(20, 0)),
                         doctest::Contains("WrongDimension"), Error);

    Prng rng(3);
    std::vector<uint64_t> rnd(20);
    for (auto& x : rnd) x = rng.field(F);
    Mat span = orbit_row_span(F, gens20, rnd);
    CHECK(span.rows != 10);
}

TEST_CASE("wedge image closure order matches the source modulo the cube-root kernel") {
    const GroupInput& gi = l34_input();
    const Fp& F = gi.ctx.f;
    const MatGroup& G = l34_linear();
    std::vector<Mat> gens20 = {induced_wedge3(F, gi.generators[0]),
                               induced_wedge3(F, gi.generators[1])};
    MatGroup W = close_group(F, gens20, false);
    int mu3 = 0;
    for (uint64_t s : G.scalar_subgroup)
        if (F.mul(F.mul(s, s), s) == 1) ++mu3;
    CHECK(W.order() * (size_t)mu3 == G.order());
    MESSAGE("wedge image order: ", W.order());
}
