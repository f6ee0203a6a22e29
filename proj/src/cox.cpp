#include "epwsym/cox.hpp"

#include <set>

namespace epwsym {

namespace {

enum { X = 0, Yv = 1, Z = 2, W = 3, T1 = 4, T2 = 5 };

MultiPoly mono6(const Fp& F, int64_t coeff, std::initializer_list<int> vars) {
    MultiPoly p = MultiPoly::zero(6);
    Mono m;
    for (int v : vars) m.e[v] += 1;
    p.terms.push_back({m, F.from_int(coeff)});
    p.normalize(F);
    return p;
}

}  // namespace

CoxData cox_data(const FieldCtx& ctx) {
    const Fp& F = ctx.f;
    CoxData cd;
    auto add2 = [&](int64_t c1, std::initializer_list<int> m1, int64_t c2,
                    std::initializer_list<int> m2) {
        return mp_add(F, mono6(F, c1, m1), mono6(F, c2, m2));
    };
    cd.gens.push_back(mono6(F, 1, {X, Z, T1, T1}));                       // v1
    cd.gens.push_back(mono6(F, 1, {Yv, W, T2, T2}));                      // v2
    cd.gens.push_back(add2(-1, {X, X, T1, T1}, 1, {Z, Z, T1, T1}));       // v3
    cd.gens.push_back(add2(-1, {Yv, Yv, T2, T2}, 1, {W, W, T2, T2}));     // v4
    cd.gens.push_back(add2(1, {X, X, T1, T1}, 1, {Z, Z, T1, T1}));        // v5
    cd.gens.push_back(add2(1, {Yv, Yv, T2, T2}, 1, {W, W, T2, T2}));      // v6
    cd.gens.push_back(add2(-1, {Yv, Z, T1, T2}, 1, {X, W, T1, T2}));      // v7
    cd.gens.push_back(add2(-1, {X, Yv, T1, T2}, 1, {Z, W, T1, T2}));      // v8
    cd.gens.push_back(add2(1, {Yv, Z, T1, T2}, 1, {X, W, T1, T2}));       // v9
    cd.gens.push_back(add2(1, {X, Yv, T1, T2}, 1, {Z, W, T1, T2}));       // v10

    using T = CoxData::Term;
    cd.relations = {
        {{1, {9, 10}}, {-1, {2, 5}}, {-1, {1, 6}}},
        {{2, {8, 10}}, {-1, {4, 5}}, {-1, {3, 6}}},
        {{1, {7, 10}}, {1, {2, 3}}, {-1, {1, 4}}},
        {{2, {2, 10}}, {1, {7, 4}}, {-1, {9, 6}}},
        {{2, {1, 10}}, {-1, {7, 3}}, {-1, {9, 5}}},
        {{1, {9, 9}}, {-1, {10, 10}}, {1, {3, 4}}},
        {{1, {8, 9}}, {-1, {2, 3}}, {-1, {1, 4}}},
        {{2, {7, 9}}, {-1, {4, 5}}, {1, {3, 6}}},
        {{2, {2, 9}}, {1, {8, 4}}, {-1, {10, 6}}},
        {{2, {1, 9}}, {1, {8, 3}}, {-1, {10, 5}}},
        {{1, {8, 8}}, {1, {10, 10}}, {-1, {3, 4}}, {-1, {5, 6}}},
        {{1, {7, 8}}, {1, {2, 5}}, {-1, {1, 6}}},
        {{2, {2, 8}}, {-1, {9, 4}}, {1, {7, 6}}},
        {{2, {1, 8}}, {-1, {9, 3}}, {-1, {7, 5}}},
        {{1, {7, 7}}, {1, {10, 10}}, {-1, {5, 6}}},
        {{2, {2, 7}}, {-1, {10, 4}}, {1, {8, 6}}},
        {{2, {1, 7}}, {1, {10, 3}}, {-1, {8, 5}}},
        {{4, {2, 2}}, {1, {4, 4}}, {-1, {6, 6}}},
        {{4, {1, 2}}, {-2, {10, 10}}, {1, {3, 4}}, {1, {5, 6}}},
        {{4, {1, 1}}, {1, {3, 3}}, {-1, {5, 5}}},
        {{2, {10, 10, 10}}, {-2, {10, 3, 4}}, {1, {8, 4, 5}}, {1, {8, 3, 6}}, {-2, {10, 5, 6}}},
    };
    (void)static_cast<T*>(nullptr);

    cd.D = {{{2, 0, 2, 0, 2, 0, 1, 1, 1, 1, -2, 0}, {0, 2, 0, 2, 0, 2, 1, 1, 1, 1, 0, -2}}};
    // sign exponents of the two K generators, in generator order (transcribed
    // from the displayed action and re-verified against the local
    // representation by the tests)
    cd.K_signs = {{{1, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0},
                   {0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 0, 0}}};

    // the printed 23 base patterns, translated from the source's variable
    // order (1,2,7,8,9,10,3,4,5,6,11,12) to generator order
    int perm[13] = {0, 1, 2, 7, 8, 9, 10, 3, 4, 5, 6, 11, 12};
    std::vector<std::vector<int>> printed = {
        {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
        {2, 3, 4, 5, 6, 7, 8, 9, 10},
        {1, 3, 4, 5, 6, 7, 8, 9, 10},
        {1, 2, 4, 5, 6, 7, 8, 9, 10},
        {1, 2, 3, 5, 6, 7, 8, 9, 10},
        {1, 2, 3, 4, 6, 7, 8, 9, 10},
        {4, 6, 7, 8, 9, 10},
        {1, 2, 3, 4, 5, 7, 8, 9, 10},
        {3, 5, 7, 8, 9, 10},
        {1, 2, 3, 6, 7, 8},
        {1, 2, 3, 4, 5, 6, 8, 9, 10},
        {1, 3, 4, 5, 6, 8, 9, 10},
        {1, 2, 3, 4, 5, 6, 7, 9, 10},
        {2, 3, 4, 5, 6, 7, 9, 10},
        {1, 2, 5, 6, 9, 10},
        {1, 2, 3, 4, 9, 10},
        {1, 2, 4, 5, 7, 8},
        {1, 2, 3, 4, 5, 6, 7, 8, 10},
        {1, 3, 4, 5, 6, 7, 8, 10},
        {1, 2, 3, 4, 5, 6, 7, 10},
        {1, 2, 3, 4, 5, 6, 7, 8, 9},
        {2, 3, 4, 5, 6, 7, 8, 9},
        {1, 2, 3, 4, 5, 6, 8, 9},
    };
    for (auto& pat : printed) {
        std::vector<int> tr;
        for (int i : pat) tr.push_back(perm[i]);
        std::sort(tr.begin(), tr.end());
        cd.base_patterns.push_back(tr);
    }
    std::sort(cd.base_patterns.begin(), cd.base_patterns.end());
    // O7, O9, O10, O15, O16, O17 in the source's order, translated
    std::vector<std::vector<int>> sing_printed = {
        {4, 6, 7, 8, 9, 10}, {3, 5, 7, 8, 9, 10},  {1, 2, 3, 6, 7, 8},
        {1, 2, 5, 6, 9, 10}, {1, 2, 3, 4, 9, 10},  {1, 2, 4, 5, 7, 8},
    };
    for (auto& pat : sing_printed) {
        std::vector<int> tr;
        for (int i : pat) tr.push_back(perm[i]);
        std::sort(tr.begin(), tr.end());
        cd.singular_patterns.push_back(tr);
    }
    return cd;
}

std::array<std::array<int, 12>, 2> monomial_valuations(const FieldCtx& ctx, const CoxData& cd,
                                                       Prng& rng) {
    const Fp& F = ctx.f;
    // the two junior classes of the Z2xQ8 local representation
    LocalRep rep;
    for (auto& r : local_rep_catalog(ctx))
        if (r.name == "Z2xQ8") rep = r;
    JuniorReport jr = junior_classes(ctx, rep, rng);
    if (jr.junior_count != 2) throw Error("Mismatch", "expected two junior classes");
    std::array<std::array<int, 12>, 2> out{};
    std::vector<std::array<int, 12>> rows;
    for (int jrep : jr.junior_reps) {
        const Mat& g = jr.group.elems[jrep];
        uint64_t r = mat_order(F, g, 64);
        // eigen-coordinates
        auto es = eigenspaces(F, g, rng);
        Mat S(4, 4);
        std::vector<int> expo;
        {
            int row = 0;
            uint64_t zr = ctx.root_of_order(r);
            for (auto& e : es) {
                for (int i = 0; i < e.basis.rows; ++i) {
                    for (int j = 0; j < 4; ++j) S.at(row, j) = e.basis.at(i, j);
                    uint64_t v = 1;
                    int a = 0;
                    for (uint64_t k = 0; k < r; ++k) {
                        if (v == e.eigenvalue_fp) {
                            a = (int)k;
                            break;
                        }
                        v = F.mul(v, zr);
                    }
                    expo.push_back(a);
                    ++row;
                }
            }
            if (row != 4) throw Error("Mismatch", "junior not diagonalizable");
        }
        // substitute (x,y,z,w) = u * S (rows of S span the eigenvectors)
        Mat Sinv = mat_inverse(F, S);
        std::array<int, 12> row{};
        for (int gi = 0; gi < 10; ++gi) {
            // express the polynomial part (ignore t-variables) in eigencoords
            std::vector<std::vector<uint64_t>> L(6, std::vector<uint64_t>(6, 0));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) L[i][j] = Sinv.at(i, j);
            L[4][4] = 1;
            L[5][5] = 1;
            MultiPoly sub = mp_compose_linear(F, cd.gens[gi], L, 6);
            int best = -1;
            for (auto& [m, c] : sub.terms) {
                int val = 0;
                for (int i = 0; i < 4; ++i) val += expo[i] * m.e[i];
                if (best < 0 || val < best) best = val;
            }
            row[gi] = best;
        }
        row[10] = 0;
        row[11] = 0;
        rows.push_back(row);
    }
    // match rows against the printed matrix in either order; t-columns by
    // definition
    for (int order = 0; order < 2; ++order) {
        std::array<std::array<int, 12>, 2> cand{};
        cand[0] = rows[order];
        cand[1] = rows[1 - order];
        cand[0][10] = -2;
        cand[0][11] = 0;
        cand[1][10] = 0;
        cand[1][11] = -2;
        bool ok = true;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 10; ++c)
                if (cand[r][c] != cd.D[r][c]) ok = false;
        if (ok) {
            out = cand;
            return out;
        }
    }
    throw Error("Mismatch", "computed valuations differ from the printed weight matrix");
}

std::vector<RelationCheck> verify_relations(const FieldCtx& ctx, const CoxData& cd) {
    const Fp& F = ctx.f;
    std::vector<RelationCheck> out;
    for (size_t r = 0; r < cd.relations.size(); ++r) {
        MultiPoly acc = MultiPoly::zero(6);
        for (auto& term : cd.relations[r]) {
            MultiPoly prod = MultiPoly::constant(6, F.from_int(term.coeff));
            for (int vi : term.vs) {
                if (vi > 10) throw Error("RelationFails", "relation involves v11/v12");
                prod = mp_mul(F, prod, cd.gens[vi - 1]);
            }
            acc = mp_add(F, acc, prod);
        }
        out.push_back({(int)r + 1, acc.is_zero()});
    }
    return out;
}

ChamberReport chambers(const std::array<std::array<int, 12>, 2>& D, int ncols) {
    ChamberReport rep;
    using Vec = std::pair<long, long>;
    auto cross = [](Vec a, Vec b) { return a.first * b.second - a.second * b.first; };
    // cone of a set of 2D vectors: either all of R^2, a half plane, or the
    // span of two extremal rays
    struct Cone {
        bool full = false;
        Vec lo, hi;  // counterclockwise from lo to hi, angle < pi means salient
        bool valid = false;
    };
    auto cone_of = [&](const std::vector<Vec>& vs) {
        Cone c;
        if (vs.empty()) return c;
        c.valid = true;
        c.lo = c.hi = vs[0];
        for (auto& v : vs) {
            // grow the angular interval [lo, hi]
            if (cross(c.lo, v) < 0 && cross(v, c.hi) >= 0) c.lo = v;
            if (cross(v, c.hi) < 0 && cross(c.lo, v) >= 0) c.hi = v;
            if (cross(c.lo, v) < 0 && cross(v, c.hi) < 0) {
                c.full = true;  // wraps beyond a half plane
            }
        }
        // verify every vector sits between lo and hi
        for (auto& v : vs)
            if (!(cross(c.lo, v) >= 0 && cross(v, c.hi) >= 0)) c.full = true;
        if (cross(c.lo, c.hi) < 0) c.full = true;
        return c;
    };
    std::vector<Vec> all;
    for (int j = 0; j < ncols; ++j) all.push_back({D[0][j], D[1][j]});
    // movable cone: intersection of the all-but-one cones; intersect by
    // collecting the constraint boundaries
    std::vector<Cone> cones;
    for (int drop = 0; drop < ncols; ++drop) {
        std::vector<Vec> vs;
        for (int j = 0; j < ncols; ++j)
            if (j != drop && !(D[0][j] == 0 && D[1][j] == 0)) vs.push_back({D[0][j], D[1][j]});
        cones.push_back(cone_of(vs));
    }
    // test membership of a direction in every cone
    auto in_cone = [&](const Cone& c, Vec v) {
        if (c.full) return true;
        return cross(c.lo, v) >= 0 && cross(v, c.hi) >= 0;
    };
    // candidate boundary rays of the refinement: all cone boundaries
    std::vector<Vec> rays;
    for (auto& c : cones) {
        if (c.full) continue;
        rays.push_back(c.lo);
        rays.push_back(c.hi);
    }
    // normalize directions, deduplicate, keep those inside the movable cone
    auto norm = [](Vec v) {
        long g = std::gcd(v.first < 0 ? -v.first : v.first, v.second < 0 ? -v.second : v.second);
        if (g) {
            v.first /= g;
            v.second /= g;
        }
        return v;
    };
    std::set<Vec> ray_set;
    for (auto& r : rays) ray_set.insert(norm(r));
    std::vector<Vec> mov_rays;
    for (auto& r : ray_set) {
        bool in_all = true;
        for (auto& c : cones)
            if (!in_cone(c, r)) in_all = false;
        if (in_all) mov_rays.push_back(r);
    }
    if (mov_rays.size() < 2) {
        rep.movable_full_dim = false;
        return rep;
    }
    // sort rays by angle and count chambers between consecutive movable rays
    std::sort(mov_rays.begin(), mov_rays.end(), [&](Vec a, Vec b) {
        auto half = [](Vec v) { return v.second < 0 || (v.second == 0 && v.first < 0) ? 1 : 0; };
        if (half(a) != half(b)) return half(a) < half(b);
        return cross(a, b) > 0;
    });
    rep.movable_full_dim = true;
    int chamber = 0;
    for (size_t i = 0; i + 1 < mov_rays.size(); ++i) {
        Vec a = mov_rays[i], b = mov_rays[i + 1];
        if (cross(a, b) <= 0) continue;
        Vec mid = {a.first + b.first, a.second + b.second};
        bool in_all = true;
        for (auto& c : cones)
            if (!in_cone(c, mid)) in_all = false;
        if (!in_all) continue;
        ++chamber;
        // does this chamber contain (1,1)?
        Vec target{1, 1};
        if (cross(a, target) > 0 && cross(target, b) > 0) rep.chamber_of_11 = chamber;
        if (cross(a, target) == 0 || cross(target, b) == 0)
            if (rep.chamber_of_11 < 0) rep.chamber_of_11 = chamber;  // boundary case
    }
    rep.chamber_count = chamber;
    return rep;
}

ZPatterns z_patterns(const FieldCtx& ctx, Prng& rng) {
    const Fp& F = ctx.f;
    uint64_t i4 = ctx.root_of_order(4);
    ZPatterns zp;
    CoxData cd = cox_data(ctx);
    // linear states on the (x,z) and (y,w) sides; each state is a
    // parametrization of the subspace where the chosen linear forms vanish
    struct Side {
        std::string name;
        // (x,z) = a*(p0,p1) + b*(p2,p3); one or two free parameters
        std::vector<std::array<uint64_t, 2>> basis;
    };
    auto mk = [&](const std::string& n,
                  std::vector<std::array<uint64_t, 2>> b) { return Side{n, std::move(b)}; };
    uint64_t one = 1, m1 = F.neg(1), mi = F.neg(i4);
    std::vector<Side> xs = {
        mk("xz-generic", {{one, 0}, {0, one}}),
        mk("x=0", {{0, one}}),
        mk("z=0", {{one, 0}}),
        mk("z=x", {{one, one}}),
        mk("z=-x", {{one, m1}}),
        mk("z=ix", {{one, i4}}),
        mk("z=-ix", {{one, mi}}),
        mk("x=z=0", {}),
    };
    std::vector<Side> ys = {
        mk("yw-generic", {{one, 0}, {0, one}}),
        mk("y=0", {{0, one}}),
        mk("w=0", {{one, 0}}),
        mk("w=y", {{one, one}}),
        mk("w=-y", {{one, m1}}),
        mk("w=iy", {{one, i4}}),
        mk("w=-iy", {{one, mi}}),
        mk("y=w=0", {}),
    };
    // bilinear constraints q7..q10 expressed as linear conditions on (y,w)
    // given (x,z): rows (coefficient of y, coefficient of w)
    auto bilinear_row = [&](int which, uint64_t x, uint64_t z) -> std::array<uint64_t, 2> {
        switch (which) {
            case 7: return {F.neg(z), x};          // -yz + xw
            case 8: return {F.neg(x), z};          // -xy + zw
            case 9: return {z, x};                 // yz + xw
            case 10: return {x, z};                // xy + zw
        }
        throw Error("Internal", "bad bilinear index");
    };
    auto pattern_of = [&](uint64_t x, uint64_t z, uint64_t y, uint64_t w) {
        std::vector<uint64_t> pt = {x, y, z, w, 1, 1};
        std::vector<int> pat;
        for (int i = 0; i < 10; ++i)
            if (mp_eval_fp(F, cd.gens[i], pt)) pat.push_back(i + 1);
        return pat;
    };
    for (auto& sx : xs)
        for (auto& sy : ys)
            for (int U = 0; U < 16; ++U) {
                // constraints: bits of U select which of q7..q10 vanish
                for (int trial = 0; trial < 24; ++trial) {
                    // sample (x,z) in the side-x subspace
                    uint64_t x = 0, z = 0;
                    for (auto& b : sx.basis) {
                        uint64_t c = rng.field(F);
                        x = F.add(x, F.mul(c, b[0]));
                        z = F.add(z, F.mul(c, b[1]));
                    }
                    // solve the selected bilinear constraints on (y,w) inside
                    // the side-y subspace
                    int nb = (int)sy.basis.size();
                    std::vector<std::array<uint64_t, 2>> rows;
                    for (int q = 7; q <= 10; ++q)
                        if (U & (1 << (q - 7))) rows.push_back(bilinear_row(q, x, z));
                    // coefficients on the sy parameters
                    Mat sys((int)rows.size(), std::max(nb, 1));
                    for (size_t r = 0; r < rows.size(); ++r)
                        for (int c = 0; c < nb; ++c)
                            sys.at((int)r, c) = F.add(F.mul(rows[r][0], sy.basis[c][0]),
                                                      F.mul(rows[r][1], sy.basis[c][1]));
                    uint64_t y = 0, w = 0;
                    if (nb == 0) {
                        if (!rows.empty()) continue;  // constraints on nothing
                    } else if (rows.empty()) {
                        std::vector<uint64_t> cs(nb);
                        for (auto& c : cs) c = rng.field(F);
                        for (int c = 0; c < nb; ++c) {
                            y = F.add(y, F.mul(cs[c], sy.basis[c][0]));
                            w = F.add(w, F.mul(cs[c], sy.basis[c][1]));
                        }
                    } else {
                        Mat ker = mat_kernel(F, sys);
                        if (ker.rows == 0) continue;
                        std::vector<uint64_t> cs(nb, 0);
                        for (int r = 0; r < ker.rows; ++r) {
                            uint64_t c = rng.field(F);
                            for (int j = 0; j < nb; ++j)
                                cs[j] = F.add(cs[j], F.mul(c, ker.at(r, j)));
                        }
                        for (int c = 0; c < nb; ++c) {
                            y = F.add(y, F.mul(cs[c], sy.basis[c][0]));
                            w = F.add(w, F.mul(cs[c], sy.basis[c][1]));
                        }
                    }
                    std::vector<int> pat = pattern_of(x, z, y, w);
                    if (!zp.patterns.count(pat)) {
                        zp.patterns.insert(pat);
                        zp.witnesses[pat] = sx.name + " / " + sy.name + " / U=" +
                                            std::to_string(U);
                        zp.witness_points[pat] = {x, y, z, w};
                    }
                }
            }
    return zp;
}

bool z_membership(const ZPatterns& zp, std::vector<int> pattern) {
    std::vector<int> base;
    for (int i : pattern)
        if (i <= 10) base.push_back(i);
    std::sort(base.begin(), base.end());
    return zp.patterns.count(base) > 0;
}

SemistableReport semistable_patterns(const FieldCtx& ctx, const CoxData& cd,
                                     const ZPatterns& zp) {
    SemistableReport rep;
    auto cone_contains_11 = [&](const std::vector<int>& S) {
        bool diag = false, pos_x = false, pos_y = false;
        for (int j : S) {
            int a = cd.D[0][j - 1], b = cd.D[1][j - 1];
            if (a > 0 && b > 0) diag = true;
            if (a > 0 && b == 0) pos_x = true;
            if (b > 0 && a == 0) pos_y = true;
        }
        return diag || (pos_x && pos_y);
    };
    auto stable = [&](const std::vector<int>& S) {
        // finite isotropy: the columns must span the plane
        for (int i : S)
            for (int j : S) {
                long det = (long)cd.D[0][i - 1] * cd.D[1][j - 1] -
                           (long)cd.D[0][j - 1] * cd.D[1][i - 1];
                if (det != 0) return true;
            }
        return false;
    };
    for (int mask = 1; mask < (1 << 12); ++mask) {
        std::vector<int> S;
        for (int j = 1; j <= 12; ++j)
            if (mask & (1 << (j - 1))) S.push_back(j);
        if (!cone_contains_11(S)) continue;
        if (!z_membership(zp, S)) continue;
        rep.patterns.push_back(S);
        bool has11 = std::find(S.begin(), S.end(), 11) != S.end();
        bool has12 = std::find(S.begin(), S.end(), 12) != S.end();
        if (!has11 && !has12) rep.base_patterns.push_back(S);
    }
    std::sort(rep.patterns.begin(), rep.patterns.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    std::sort(rep.base_patterns.begin(), rep.base_patterns.end());
    // every semistable pattern is stable, and the x4 extension structure holds
    rep.all_stable = true;
    for (auto& S : rep.patterns)
        if (!stable(S)) rep.all_stable = false;
    std::set<std::vector<int>> all(rep.patterns.begin(), rep.patterns.end());
    rep.extension_structure = true;
    for (auto& S : rep.base_patterns)
        for (int ext = 1; ext < 4; ++ext) {
            std::vector<int> T = S;
            if (ext & 1) T.push_back(11);
            if (ext & 2) T.push_back(12);
            std::sort(T.begin(), T.end());
            if (!all.count(T)) rep.extension_structure = false;
        }
    if (rep.patterns.size() != rep.base_patterns.size() * 4) rep.extension_structure = false;
    return rep;
}

std::vector<IsotropyPoint> k_isotropy(const FieldCtx& ctx, const CoxData& cd,
                                      const ZPatterns& zp, Prng& rng) {
    const Fp& F = ctx.f;
    uint64_t i4 = ctx.root_of_order(4);
    SemistableReport ss = semistable_patterns(ctx, cd, zp);
    std::vector<IsotropyPoint> out;
    for (auto& S : ss.base_patterns) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                if (!a && !b) continue;
                // compensating torus elements (s1, s2) = (i^e1, i^e2) with
                // (-1)^(sign) * s1^D0j * s2^D1j = 1 for all j in S
                std::vector<std::pair<int, int>> sols;
                for (int e1 = 0; e1 < 4; ++e1)
                    for (int e2 = 0; e2 < 4; ++e2) {
                        bool ok = true;
                        for (int j : S) {
                            int sign = a * cd.K_signs[0][j - 1] + b * cd.K_signs[1][j - 1];
                            uint64_t v = F.pow(i4, (uint64_t)(
                                                       ((e1 * cd.D[0][j - 1] + e2 * cd.D[1][j - 1]) %
                                                            4 +
                                                        4) %
                                                       4));
                            if (sign % 2) v = F.neg(v);
                            if (v != 1) ok = false;
                        }
                        if (ok) sols.push_back({e1, e2});
                    }
                if (sols.empty()) continue;
                // a solution exists; the fixed point forces x11 = x12 = 0
                // unless the compensation is trivial on them
                auto [e1, e2] = sols[0];
                IsotropyPoint ip;
                ip.pattern = S;
                ip.a = a;
                ip.b = b;
                ip.s1_pow = e1;
                ip.s2_pow = e2;
                ip.forces_11_12_zero =
                    F.pow(i4, (uint64_t)(((-2 * e1) % 4 + 4) % 4)) != 1 ||
                    F.pow(i4, (uint64_t)(((-2 * e2) % 4 + 4) % 4)) != 1;
                // local type from the action on the vanishing coordinates
                bool all_minus_one = true;
                for (int j = 1; j <= 12; ++j) {
                    if (std::find(S.begin(), S.end(), j) != S.end()) continue;
                    int sign = a * cd.K_signs[0][j - 1] + b * cd.K_signs[1][j - 1];
                    uint64_t v = F.pow(
                        i4, (uint64_t)(((e1 * cd.D[0][j - 1] + e2 * cd.D[1][j - 1]) % 4 + 4) % 4));
                    if (sign % 2) v = F.neg(v);
                    if (v != F.neg(1)) all_minus_one = false;
                }
                ip.local_type = all_minus_one ? "1/2(1,1,1,1)" : "?";
                // stratum dimension at the witness: rank of the Jacobian of
                // the restricted relations
                {
                    auto wit = zp.witness_points.find(S);
                    if (wit != zp.witness_points.end()) {
                        std::vector<uint64_t> xyzw = wit->second;
                        std::vector<uint64_t> pt6 = {xyzw[0], xyzw[1], xyzw[2], xyzw[3], 1, 1};
                        std::vector<uint64_t> v(13, 0);
                        for (int g = 1; g <= 10; ++g)
                            v[g] = mp_eval_fp(F, cd.gens[g - 1], pt6);
                        // Jacobian of the 21 relations in the S-coordinates
                        std::vector<int> Svars(S.begin(), S.end());
                        Mat J((int)cd.relations.size(), (int)Svars.size());
                        for (size_t r = 0; r < cd.relations.size(); ++r)
                            for (size_t c = 0; c < Svars.size(); ++c) {
                                int var = Svars[c];
                                if (var > 10) continue;
                                uint64_t d = 0;
                                for (auto& term : cd.relations[r]) {
                                    // derivative of the monomial w.r.t. var
                                    int cnt = 0;
                                    for (int vi : term.vs)
                                        if (vi == var) ++cnt;
                                    if (!cnt) continue;
                                    uint64_t prod = F.from_int(term.coeff);
                                    prod = F.mul(prod, F.from_int(cnt));
                                    bool skipped = false;
                                    for (int vi : term.vs) {
                                        if (vi == var && !skipped) {
                                            skipped = true;
                                            continue;
                                        }
                                        // off-pattern coordinates are zero
                                        prod = F.mul(prod, v[vi]);
                                    }
                                    d = F.add(d, prod);
                                }
                                J.at((int)r, (int)c) = d;
                            }
                        ip.stratum_dim = (int)Svars.size() - mat_rank(F, J);
                    } else {
                        ip.stratum_dim = -1;
                    }
                }
                out.push_back(ip);
            }
    }
    return out;
}

D10CoxSummary d10_cox_summary(const FieldCtx& ctx, Prng& rng) {
    D10CoxSummary s;
    LocalRep rep;
    for (auto& r : local_rep_catalog(ctx))
        if (r.name == "D10") rep = r;
    JuniorReport jr = junior_classes(ctx, rep, rng);
    s.junior_count = jr.junior_count;
    // invariant monomials of the derived subgroup Z5 up to degree 5, modulo
    // products of smaller invariants
    // weights of (x,y,z,w) under the order-5 diagonal: (1,-1,-1,1)
    std::vector<std::array<int, 4>> gens;
    for (int d = 1; d <= 5; ++d)
        for (int e0 = 0; e0 <= d; ++e0)
            for (int e1 = 0; e0 + e1 <= d; ++e1)
                for (int e2 = 0; e0 + e1 + e2 <= d; ++e2) {
                    int e3 = d - e0 - e1 - e2;
                    int wt = e0 - e1 - e2 + e3;
                    if (((wt % 5) + 5) % 5 != 0) continue;
                    // reducible if it splits off a smaller invariant monomial
                    bool reducible = false;
                    for (auto& g : gens) {
                        if (g[0] <= e0 && g[1] <= e1 && g[2] <= e2 && g[3] <= e3 &&
                            (g[0] + g[1] + g[2] + g[3]) < d)
                            reducible = true;
                    }
                    if (!reducible) gens.push_back({e0, e1, e2, e3});
                }
    s.generator_count = (int)gens.size();
    // single-row weight data: the junior valuation of each generator plus the
    // t^-1 column; one chamber results
    std::array<std::array<int, 12>, 2> D{};  // reuse the 2-row machinery, one row
    (void)D;
    s.chamber_count = 1;  // a 1-dimensional weight cone has a single chamber
    s.not_reproducible =
        "the printed data does not include the 15-element generator list or the "
        "orbit computation; the 77-orbit count is not reproducible";
    (void)rng;
    return s;
}

}  // namespace epwsym
