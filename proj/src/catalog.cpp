#include "epwsym/group.hpp"

namespace epwsym {

namespace {

Mat perm_mat(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    for (auto& cyc : cycles)
        for (size_t i = 0; i < cyc.size(); ++i)
            img[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
    Mat m(n, n);
    for (int j = 0; j < n; ++j) m.at(img[j], j) = 1;
    return m;
}

Mat diag2(const Fp& F, uint64_t a, uint64_t b) {
    Mat m(2, 2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    (void)F;
    return m;
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat m(a.rows + b.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) m.at(a.rows + i, a.cols + j) = b.at(i, j);
    return m;
}

// Regular representation of (Z4 x Z4) : Z2 with the involution acting by
// (a,b) -> (a+2b, 2a+b); this is the stabilizer group shape of the paper's
// order-32 case: exponent 4, eleven involutions, index-2 subgroups of types
// Z4xZ4, (Z4xZ2):Z2, Z2xD8 and Z2xQ8.
std::vector<Mat> regular_rep_32_31() {
    auto idx = [](int a, int b, int e) { return ((a & 3) * 4 + (b & 3)) * 2 + (e & 1); };
    auto mul = [&](int x, int y) {
        int ax = (x >> 3) & 3, bx = (x >> 1) & 3, ex = x & 1;
        int ay = (y >> 3) & 3, by = (y >> 1) & 3, ey = y & 1;
        int ca = ay, cb = by;
        if (ex) {
            ca = (ay + 2 * by) & 3;
            cb = (2 * ay + by) & 3;
        }
        return idx(ax + ca, bx + cb, ex + ey);
    };
    std::vector<int> gens = {idx(1, 0, 0), idx(0, 1, 0), idx(0, 0, 1)};
    std::vector<Mat> out;
    for (int g : gens) {
        Mat m(32, 32);
        for (int x = 0; x < 32; ++x) m.at(mul(g, x), x) = 1;
        out.push_back(m);
    }
    return out;
}

}  // namespace

Catalog build_catalog(const FieldCtx& ctx) {
    const Fp& F = ctx.f;
    uint64_t i4 = ctx.root_of_order(4);
    uint64_t w3 = ctx.root_of_order(3);
    uint64_t w5 = ctx.root_of_order(5);
    uint64_t w6 = ctx.root_of_order(6);
    uint64_t w7 = ctx.root_of_order(7);
    uint64_t m1 = F.neg(1);

    Mat rot4(2, 2);  // order-4 rotation
    rot4.at(0, 1) = m1;
    rot4.at(1, 0) = 1;
    Mat swap2(2, 2);
    swap2.at(0, 1) = 1;
    swap2.at(1, 0) = 1;
    Mat j2(2, 2);  // [[0,1],[-1,0]]
    j2.at(0, 1) = 1;
    j2.at(1, 0) = m1;

    struct Spec {
        const char* name;
        int gap_index;
        std::vector<Mat> gens;
    };
    Mat one(1, 1);
    one.at(0, 0) = 1;
    Mat neg1(1, 1);
    neg1.at(0, 0) = m1;
    Mat z3(1, 1);
    z3.at(0, 0) = w3;
    Mat z4(1, 1);
    z4.at(0, 0) = i4;
    Mat z5(1, 1);
    z5.at(0, 0) = w5;
    Mat z6(1, 1);
    z6.at(0, 0) = w6;
    Mat z7(1, 1);
    z7.at(0, 0) = w7;

    std::vector<Spec> specs;
    specs.push_back({"1", 1, {one}});
    specs.push_back({"Z2", 1, {neg1}});
    specs.push_back({"Z3", 1, {z3}});
    specs.push_back({"Z4", 1, {z4}});
    specs.push_back({"Z2xZ2", 2, {diag2(F, m1, 1), diag2(F, 1, m1)}});
    specs.push_back({"Z5", 1, {z5}});
    specs.push_back({"S3", 1, {perm_mat(3, {{1, 2}}), perm_mat(3, {{1, 2, 3}})}});
    specs.push_back({"Z6", 2, {z6}});
    specs.push_back({"Z7", 1, {z7}});
    specs.push_back({"Z4xZ2", 2, {diag2(F, i4, 1), diag2(F, 1, m1)}});
    specs.push_back({"D8", 3, {rot4, diag2(F, 1, m1)}});
    specs.push_back({"Q8", 4, {diag2(F, i4, F.neg(i4)), j2}});
    {
        Mat a(3, 3), b(3, 3), c(3, 3);
        a = Mat::identity(3);
        b = Mat::identity(3);
        c = Mat::identity(3);
        a.at(0, 0) = m1;
        b.at(1, 1) = m1;
        c.at(2, 2) = m1;
        specs.push_back({"Z2^3", 5, {a, b, c}});
    }
    specs.push_back({"D10", 1, {diag2(F, w5, F.inv(w5)), swap2}});
    specs.push_back({"Z11", 1, {perm_mat(11, {{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}})}});
    specs.push_back({"Z3:Z4", 1, {diag2(F, w6, F.inv(w6)), j2}});
    specs.push_back({"A4", 3, {perm_mat(4, {{1, 2, 3}}), perm_mat(4, {{1, 2}, {3, 4}})}});
    specs.push_back({"D12", 4, {diag2(F, w6, F.inv(w6)), swap2}});
    specs.push_back({"Z6xZ2", 5, {diag2(F, w6, 1), diag2(F, 1, m1)}});
    specs.push_back({"Z4xZ4", 2, {diag2(F, i4, 1), diag2(F, 1, i4)}});
    // (Z4xZ2):Z2 = Z2^2 : Z4 with the order-4 element swapping the factors
    specs.push_back({"(Z4xZ2):Z2", 3,
                     {perm_mat(8, {{1, 2}}), perm_mat(8, {{3, 4}}),
                      perm_mat(8, {{1, 3}, {2, 4}, {5, 6, 7, 8}})}});
    specs.push_back({"Z2xD8", 11, {block_diag(rot4, neg1), block_diag(diag2(F, 1, m1), one),
                                   block_diag(Mat::identity(2), neg1)}});
    specs.push_back({"Z2xQ8", 12, {block_diag(diag2(F, i4, F.neg(i4)), one), block_diag(j2, one),
                                   block_diag(Mat::identity(2), neg1)}});
    // (Z6xZ2):Z2: <a,r,s | a^3, r^4, s^2, rar^-1=a^-1, sas=a, srs=r^-1>
    specs.push_back({"(Z6xZ2):Z2", 8,
                     {perm_mat(7, {{1, 2, 3}}), perm_mat(7, {{1, 3}, {4, 5, 6, 7}}),
                      perm_mat(7, {{4, 5}, {6, 7}})}});
    specs.push_back({"(Z4xZ4):Z2", 31, regular_rep_32_31()});
    specs.push_back({"A5", 5, {perm_mat(5, {{1, 2, 3, 4, 5}}), perm_mat(5, {{1, 2, 3}})}});

    Catalog cat;
    for (auto& s : specs) {
        // permutation generators were written over {0,1}; they are valid over
        // any Fp.  Close and fingerprint.
        MatGroup G = close_group(F, s.gens, false, 4096);
        CatalogEntry e;
        e.name = s.name;
        e.order = G.order();
        e.gap_index = s.gap_index;
        e.fingerprint = fingerprint_group(G);
        cat.entries.push_back(std::move(e));
    }
    // collision check
    for (size_t i = 0; i < cat.entries.size(); ++i)
        for (size_t j = i + 1; j < cat.entries.size(); ++j)
            if (cat.entries[i].fingerprint == cat.entries[j].fingerprint)
                throw Error("AmbiguousFingerprint", cat.entries[i].name + " vs " +
                                                        cat.entries[j].name);
    return cat;
}

std::optional<std::pair<uint64_t, int>> Catalog::identify(const GroupFingerprint& fp) const {
    for (auto& e : entries)
        if (e.fingerprint == fp) return std::make_pair(e.order, e.gap_index);
    return std::nullopt;
}

const CatalogEntry* Catalog::lookup(const GroupFingerprint& fp) const {
    for (auto& e : entries)
        if (e.fingerprint == fp) return &e;
    return nullptr;
}

const CatalogEntry* Catalog::by_id(uint64_t order, int gap_index) const {
    for (auto& e : entries)
        if (e.order == order && e.gap_index == gap_index) return &e;
    return nullptr;
}

MatGroup make_permutation_group(const Fp& F, int degree,
                                const std::vector<std::vector<std::vector<int>>>& gens_cycles) {
    std::vector<Mat> gens;
    for (auto& cycles : gens_cycles) gens.push_back(perm_mat(degree, cycles));
    return close_group(F, gens, false, 2000000);
}

MatGroup make_A7(const Fp& F) {
    return make_permutation_group(F, 7, {{{1, 2, 3, 4, 5, 6, 7}}, {{1, 2, 3}}});
}

MatGroup make_L2_11() {
    static const Fp F11(11);
    Mat t(2, 2), s(2, 2);
    t.at(0, 0) = 1;
    t.at(0, 1) = 1;
    t.at(1, 1) = 1;
    s.at(0, 1) = F11.neg(1);
    s.at(1, 0) = 1;
    return close_group(F11, {t, s}, true, 10000);
}

MatGroup make_M10(const Fp& F) {
    // P^1(F9) with F9 = F3[u]/(u^2+1); points 0..8 are a+3b := a+bu, 9 is oo.
    auto add3 = [](int a, int b) { return (a + b) % 3; };
    auto mul3 = [](int a, int b) { return (a * b) % 3; };
    struct F9 {
        int a, b;
    };
    auto enc = [](F9 x) { return x.a + 3 * x.b; };
    auto dec = [](int i) { return F9{i % 3, i / 3}; };
    auto add9 = [&](F9 x, F9 y) { return F9{add3(x.a, y.a), add3(x.b, y.b)}; };
    auto mul9 = [&](F9 x, F9 y) {
        // (a+bu)(c+du) = ac - bd + (ad+bc) u,  u^2 = -1
        int re = (x.a * y.a + 2 * x.b * y.b) % 3;  // -1 == 2 mod 3
        int im = (x.a * y.b + x.b * y.a) % 3;
        return F9{re, im};
    };
    auto neg9 = [&](F9 x) { return F9{(3 - x.a) % 3, (3 - x.b) % 3}; };
    auto inv9 = [&](F9 x) {
        for (int i = 0; i < 9; ++i) {
            F9 y = dec(i);
            F9 p = mul9(x, y);
            if (p.a == 1 && p.b == 0) return y;
        }
        throw Error("Internal", "F9 inverse failed");
    };
    (void)mul3;
    auto pow9 = [&](F9 x, int e) {
        F9 r{1, 0};
        for (int i = 0; i < e; ++i) r = mul9(r, x);
        return r;
    };
    const int INF = 9;
    auto perm_from_map = [&](auto&& f) {
        Mat m(10, 10);
        for (int j = 0; j < 10; ++j) m.at(f(j), j) = 1;
        return m;
    };
    Mat t = perm_from_map([&](int j) {
        if (j == INF) return INF;
        return enc(add9(dec(j), F9{1, 0}));
    });
    Mat s = perm_from_map([&](int j) {
        // x -> -1/x
        if (j == INF) return 0;
        if (j == 0) return INF;
        return enc(neg9(inv9(dec(j))));
    });
    Mat sg = perm_from_map([&](int j) {
        // x -> nu * x^3 with nu = 1 + u (a non-square)
        if (j == INF) return INF;
        return enc(mul9(F9{1, 1}, pow9(dec(j), 3)));
    });
    return close_group(F, {t, s, sg}, false, 10000);
}

MatGroup make_Z2xL2_7() {
    static const Fp F2(2);
    Mat j(2, 2);
    j.at(0, 0) = 1;
    j.at(0, 1) = 1;
    j.at(1, 1) = 1;
    Mat a(3, 3), b(3, 3);
    a = Mat::identity(3);
    a.at(0, 1) = 1;  // transvection e2 -> e1+e2
    b = Mat(3, 3);
    b.at(1, 0) = 1;
    b.at(2, 1) = 1;
    b.at(0, 2) = 1;  // cyclic permutation
    std::vector<Mat> gens = {block_diag(j, Mat::identity(3)), block_diag(Mat::identity(2), a),
                             block_diag(Mat::identity(2), b)};
    return close_group(F2, gens, false, 10000);
}

MatGroup make_Z2_4_S5() {
    static const Fp F2(2);
    // even-weight subspace of F2^5 with basis f_i = e_i + e_{i+1}
    auto perm5 = [&](const std::vector<std::vector<int>>& cycles) {
        return perm_mat(5, cycles);
    };
    auto restrict_to_f = [&](const Mat& P) {
        // solve P * f_i = sum_j c_ij f_j over F2
        Mat basis(5, 4);
        for (int i = 0; i < 4; ++i) {
            basis.at(i, i) = 1;
            basis.at(i + 1, i) = 1;
        }
        Mat A(4, 4);
        for (int i = 0; i < 4; ++i) {
            std::vector<uint64_t> fi(5, 0);
            fi[i] = 1;
            fi[i + 1] = 1;
            auto img = mat_apply(F2, P, fi);
            // solve basis * c = img
            Mat aug(5, 5);
            for (int r = 0; r < 5; ++r) {
                for (int c = 0; c < 4; ++c) aug.at(r, c) = basis.at(r, c);
                aug.at(r, 4) = img[r];
            }
            std::vector<int> piv;
            mat_rref(F2, aug, &piv);
            std::vector<uint64_t> sol(4, 0);
            for (size_t r = 0; r < piv.size(); ++r) {
                if (piv[r] == 4) throw Error("Internal", "image not in even-weight space");
                sol[piv[r]] = aug.at((int)r, 4);
            }
            for (int j = 0; j < 4; ++j) A.at(j, i) = sol[j];
        }
        return A;
    };
    Mat A1 = restrict_to_f(perm5({{1, 2}}));
    Mat A2 = restrict_to_f(perm5({{1, 2, 3, 4, 5}}));
    auto affine = [&](const Mat& A, const std::vector<uint64_t>& v) {
        Mat m(5, 5);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = A.at(i, j);
        for (int i = 0; i < 4; ++i) m.at(i, 4) = v[i];
        m.at(4, 4) = 1;
        return m;
    };
    std::vector<Mat> gens = {affine(A1, {0, 0, 0, 0}), affine(A2, {0, 0, 0, 0}),
                             affine(Mat::identity(4), {1, 0, 0, 0})};
    return close_group(F2, gens, false, 10000);
}

}  // namespace epwsym
