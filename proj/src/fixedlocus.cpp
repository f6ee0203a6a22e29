#include "epwsym/fixedlocus.hpp"

#include <deque>
#include <set>

namespace epwsym {

namespace {

std::vector<int> minimal_gens_of(const MatGroup& G, const Subgroup& H) {
    if (H.size() == 1) return {H[0]};
    for (int a : H)
        if (subgroup_closure(G, {a}).size() == H.size()) return {a};
    for (int a : H)
        for (int b : H) {
            if (b <= a) continue;
            if (subgroup_closure(G, {a, b}).size() == H.size()) return {a, b};
        }
    for (int a : H)
        for (int b : H) {
            if (b <= a) continue;
            for (int c : H) {
                if (c <= b) continue;
                if (subgroup_closure(G, {a, b, c}).size() == H.size()) return {a, b, c};
            }
        }
    throw Error("Internal", "subgroup needs more than three generators");
}

}  // namespace

std::vector<Mat> invariant_subspaces(const Fp& F, const MatGroup& G, const Subgroup& H,
                                     Prng& rng) {
    if (H.size() == 1) return {Mat::identity(G.dim)};
    std::vector<int> gens = minimal_gens_of(G, H);
    // eigenvalues over Fp of each generator's stored linear lift
    std::vector<std::vector<uint64_t>> eigvals;
    for (int g : gens) {
        std::vector<uint64_t> vals;
        for (auto& es : eigenspaces(F, G.lift(g), rng)) {
            if (es.degree != 1)
                throw Error("Internal", "in-group lift has an irrational eigenvalue");
            vals.push_back(es.eigenvalue_fp);
        }
        eigvals.push_back(vals);
    }
    std::vector<Mat> spaces;
    std::vector<size_t> idx(gens.size(), 0);
    while (true) {
        // kernel of stacked (g - lambda I)
        Mat stack((int)gens.size() * G.dim, G.dim);
        for (size_t t = 0; t < gens.size(); ++t) {
            const Mat& g = G.lift(gens[t]);
            uint64_t lam = eigvals[t][idx[t]];
            for (int i = 0; i < G.dim; ++i)
                for (int j = 0; j < G.dim; ++j)
                    stack.at((int)t * G.dim + i, j) =
                        i == j ? F.sub(g.at(i, j), lam) : g.at(i, j);
        }
        Mat ker = mat_kernel(F, stack);
        if (ker.rows > 0) {
            mat_rref(F, ker);
            spaces.push_back(ker);
        }
        // next tuple
        size_t t = 0;
        while (t < idx.size()) {
            if (++idx[t] < eigvals[t].size()) break;
            idx[t] = 0;
            ++t;
        }
        if (t == idx.size()) break;
    }
    // drop non-maximal subspaces (contained in another)
    std::vector<Mat> maximal;
    for (size_t i = 0; i < spaces.size(); ++i) {
        bool contained = false;
        for (size_t j = 0; j < spaces.size() && !contained; ++j) {
            if (i == j || spaces[j].rows < spaces[i].rows) continue;
            if (i < j && spaces[j].rows == spaces[i].rows && spaces[i].a == spaces[j].a) continue;
            if (spaces[i].a == spaces[j].a && i > j) {
                contained = true;
                break;
            }
            if (spaces[j].rows == spaces[i].rows && !(spaces[i].a == spaces[j].a)) continue;
            // rank test: rows of spaces[i] inside row span of spaces[j]
            Mat stacked(spaces[j].rows + spaces[i].rows, G.dim);
            for (int r = 0; r < spaces[j].rows; ++r)
                for (int c = 0; c < G.dim; ++c) stacked.at(r, c) = spaces[j].at(r, c);
            for (int r = 0; r < spaces[i].rows; ++r)
                for (int c = 0; c < G.dim; ++c)
                    stacked.at(spaces[j].rows + r, c) = spaces[i].at(r, c);
            if (mat_rank(F, stacked) == spaces[j].rows &&
                !(spaces[i].a == spaces[j].a && i <= j))
                contained = true;
        }
        if (!contained) maximal.push_back(spaces[i]);
    }
    std::sort(maximal.begin(), maximal.end(), [](const Mat& a, const Mat& b) {
        if (a.rows != b.rows) return a.rows > b.rows;
        return a.a < b.a;
    });
    maximal.erase(std::unique(maximal.begin(), maximal.end(),
                              [](const Mat& a, const Mat& b) { return a.a == b.a; }),
                  maximal.end());
    return maximal;
}

const ConjClassTable& FixedLocusAnalyzer::classes() {
    if (!classes_) classes_ = conjugacy_classes(P_.geometric);
    return *classes_;
}

const InvolutionGeometry& FixedLocusAnalyzer::involution_geometry(int invol_idx) {
    const MatGroup& G = P_.geometric;
    const Fp& F = *G.F;
    auto& T = classes();
    int rep = T.classes[T.class_of[invol_idx]].rep;
    invol_rep_of_[invol_idx] = rep;
    auto it = invol_cache_.find(rep);
    if (it == invol_cache_.end()) {
        InvolutionGeometry ig;
        auto es = eigenspaces(F, G.lift(rep), rng_);
        for (auto& e : es) {
            if (e.degree != 1) continue;
            if (e.geometric_dim == 4) ig.p3 = e.basis;
            if (e.geometric_dim == 2) ig.p1 = e.basis;
        }
        if (ig.p3.rows != 4 || ig.p1.rows != 2)
            throw Error("RuleMiss", "involution eigenspaces are not 4+2");
        ig.split = quadric_split(F, P_.Y, ig.p3, rng_);
        it = invol_cache_.emplace(rep, std::move(ig)).first;
    }
    return it->second;
}

bool FixedLocusAnalyzer::point_in_subspace(const Mat& basis, const PointCluster& pt) {
    const Fp& F = *P_.geometric.F;
    FqK kq(*pt.field);
    // rank of [basis; pt] equals rank of basis iff pt is in the row span;
    // reduce pt against the echelon basis over Fq
    std::vector<FqK::Elem> v = pt.coords;
    for (int r = 0; r < basis.rows; ++r) {
        int piv = -1;
        for (int c = 0; c < basis.cols; ++c)
            if (basis.at(r, c)) { piv = c; break; }
        if (piv < 0) continue;
        FqK::Elem f = v[piv];
        if (kq.is_zero(f)) continue;
        for (int c = 0; c < basis.cols; ++c) {
            if (!basis.at(r, c)) continue;
            FqK::Elem t = f;
            for (auto& x : t) x = F.mul(x, basis.at(r, c));
            v[c] = kq.sub(v[c], t);
        }
    }
    for (auto& x : v)
        if (!kq.is_zero(x)) return false;
    return true;
}

bool FixedLocusAnalyzer::point_on_quadric(const InvolutionGeometry& ig, const PointCluster& pt,
                                          int witness) {
    // move the point back to the class representative's chart
    const MatGroup& G = P_.geometric;
    const Fp& F = *G.F;
    FqK kq(*pt.field);
    ProjPoint pp{pt.field, pt.coords};
    ProjPoint back = act_point(G, G.inv(witness), pp);
    PointCluster moved{pt.field, back.coords, 1};
    if (!point_in_subspace(ig.p3, moved)) return false;
    // solve for the P^3 coordinates over Fq: moved = c * p3 (row combination)
    std::vector<FqK::Elem> c(4, kq.zero());
    {
        // p3 is in reduced echelon form: coefficients read off at the pivots
        std::vector<FqK::Elem> v = moved.coords;
        for (int r = 0; r < 4; ++r) {
            int piv = -1;
            for (int col = 0; col < 6; ++col)
                if (ig.p3.at(r, col)) { piv = col; break; }
            c[r] = v[piv];
            for (int col = 0; col < 6; ++col) {
                if (!ig.p3.at(r, col)) continue;
                FqK::Elem t = c[r];
                for (auto& x : t) x = F.mul(x, ig.p3.at(r, col));
                v[col] = kq.sub(v[col], t);
            }
        }
    }
    return kq.is_zero(mp_eval(kq, F, ig.split.quadric, c));
}

void FixedLocusAnalyzer::lift_point(SpecialPoint& sp) {
    const MatGroup& G = P_.geometric;
    const Fp& F = *G.F;
    sp.lifted = true;
    auto& T = classes();
    std::vector<int> invols;
    for (int x : sp.stab_y)
        if (x != 0 && T.classes[T.class_of[x]].element_order == 2) invols.push_back(x);
    // involution bits: the lift fixes the fiber iff the point lies on the
    // involution's quadric or on its invariant line
    std::map<int, bool> fixing;
    for (int i : invols) {
        const InvolutionGeometry& ig = involution_geometry(i);
        int w = T.witness_of[i];
        ProjPoint pp{sp.pt.field, sp.pt.coords};
        ProjPoint back = act_point(G, G.inv(w), pp);
        PointCluster moved{sp.pt.field, back.coords, 1};
        bool on_p1 = point_in_subspace(ig.p1, moved);
        bool on_q = point_on_quadric(ig, sp.pt, w);
        fixing[i] = on_p1 || on_q;
        if (on_q) sp.on_fixed_surface = true;
    }
    if (sp.cls == PointClass::Singular) {
        sp.fiber = FiberBehavior::Branch;
        sp.stab_x = sp.stab_y;
        sp.stab_x_fp = sp.stab_y_fp;
        sp.rule = "branch point: the cover is 1:1 over the singular locus";
        return;
    }
    bool odd = true;
    for (int x : sp.stab_y)
        if (T.classes[T.class_of[x]].element_order % 2 == 0) odd = false;
    if (odd) {
        sp.fiber = FiberBehavior::FixedPair;
        sp.stab_x = sp.stab_y;
        sp.stab_x_fp = sp.stab_y_fp;
        sp.rule = "odd-order stabilizer: both preimages fixed";
        return;
    }
    // candidate kernels: the whole stabilizer or an index-2 subgroup,
    // consistent with the involution bits
    std::vector<Subgroup> candidates;
    {
        bool all_fix = true;
        for (auto& [i, b] : fixing)
            if (!b) all_fix = false;
        if (all_fix) candidates.push_back(sp.stab_y);
        for (auto& K : all_subgroups(G, sp.stab_y)) {
            if (K.size() * 2 != sp.stab_y.size()) continue;
            std::set<int> ks(K.begin(), K.end());
            bool ok = true;
            for (auto& [i, b] : fixing)
                if ((ks.count(i) > 0) != b) ok = false;
            if (ok) candidates.push_back(K);
        }
    }
    // does the subgroup generated by its involutions already span it?
    bool invol_generated = !invols.empty() &&
                           subgroup_closure(G, invols).size() == sp.stab_y.size();
    if (invol_generated) {
        if (candidates.size() != 1)
            throw Error("RuleMiss", "involution bits did not determine the descent");
        sp.rule = "fiber action determined by quadric/line membership of the involutions";
    } else if (candidates.size() == 1) {
        sp.rule = "unique index-2 descent consistent with the involution bits";
    } else {
        // case rules from the paper's lifting analysis
        GroupFingerprint fp32, fp16;
        auto* e32 = cat_.by_id(32, 31);
        auto* e16 = cat_.by_id(16, 12);
        if (e32 && e16 && sp.stab_y_fp == e32->fingerprint) {
            std::vector<Subgroup> filt;
            for (auto& K : candidates)
                if (fingerprint_subgroup(G, K) == e16->fingerprint) filt.push_back(K);
            if (filt.size() == 1) {
                candidates = filt;
                sp.rule = "order-32 stabilizer descends to Z2xQ8 on the cover";
            }
        }
        if (candidates.size() != 1 && sp.stab_y.size() == 4 && invols.size() == 1) {
            // cyclic of order 4: the lift fixes iff the point lies on the
            // central involution's quadric or on an invariant line of the
            // order-4 element
            int h = -1;
            for (int x : sp.stab_y)
                if (T.classes[T.class_of[x]].element_order == 4) { h = x; break; }
            bool fixes = fixing.begin()->second;
            if (!fixes && h >= 0) {
                for (auto& es : eigenspaces(F, G.lift(h), rng_)) {
                    if (es.degree != 1 || es.geometric_dim < 2) continue;
                    if (point_in_subspace(es.basis, sp.pt)) fixes = true;
                }
            }
            std::vector<Subgroup> filt;
            for (auto& K : candidates)
                if ((K.size() == sp.stab_y.size()) == fixes) filt.push_back(K);
            if (filt.size() == 1) {
                candidates = filt;
                sp.rule = "order-4 stabilizer: fiber fixed iff the point lies on the "
                          "central quadric or an invariant line of the generator";
            }
        }
        if (candidates.size() != 1)
            throw Error("RuleMiss", "no lifting rule for this stabilizer/stratum");
    }
    const Subgroup& K = candidates[0];
    sp.stab_x = K;
    sp.stab_x_fp = K.size() == sp.stab_y.size() ? sp.stab_y_fp : fingerprint_subgroup(G, K);
    sp.fiber = K.size() == sp.stab_y.size() ? FiberBehavior::FixedPair
                                            : FiberBehavior::SwappedPair;
}

bool FixedLocusAnalyzer::same_orbit(const PointCluster& a, const PointCluster& b) {
    const MatGroup& G = P_.geometric;
    const Fp& F = *G.F;
    if (a.field->k != b.field->k) return false;
    bool same_field = a.field->modulus.c == b.field->modulus.c;
    FqK kqb(*b.field);
    std::set<std::vector<FqK::Elem>> bfrob;
    {
        std::vector<FqK::Elem> cur = b.coords;
        for (int j = 0; j < b.field->k; ++j) {
            bfrob.insert(cur);
            for (auto& c : cur) c = kqb.frobenius(c);
        }
    }
    std::optional<ClusterKey> kb;
    ProjPoint pa{a.field, a.coords};
    for (size_t g = 0; g < G.order(); ++g) {
        ProjPoint moved = act_point(G, (int)g, pa);
        if (same_field) {
            if (bfrob.count(moved.coords)) return true;
            continue;
        }
        // cheap necessary test first: minimal polynomial of a fixed functional
        if (!kb) kb = cluster_key(F, b);
        PointCluster mc{a.field, moved.coords, 1};
        FqK kq(*a.field);
        Prng fixed(0xC0FFEE ^ (uint64_t)moved.coords.size());
        FqK::Elem s = kq.zero();
        for (size_t i = 0; i < moved.coords.size(); ++i) {
            FqK::Elem t = moved.coords[i];
            uint64_t lf = fixed.field(F);
            for (auto& v : t) v = F.mul(v, lf);
            s = kq.add(s, t);
        }
        if (fq_minpoly(F, *a.field, s).c != kb->l1) continue;
        if (cluster_key(F, mc) == *kb) return true;
    }
    return false;
}

namespace {

// rank of the symmetric matrix of a ternary conic
int conic_rank(const Fp& F, const MultiPoly& q) {
    Mat m(3, 3);
    uint64_t inv2 = F.inv(2);
    for (auto& [mono, c] : q.terms) {
        int idx[2], n = 0;
        for (int v = 0; v < 3; ++v)
            for (int rep = 0; rep < mono.e[v]; ++rep) idx[n++] = v;
        if (n != 2) throw Error("DegreeMismatch", "not a conic");
        if (idx[0] == idx[1])
            m.at(idx[0], idx[0]) = c;
        else {
            m.at(idx[0], idx[1]) = F.mul(c, inv2);
            m.at(idx[1], idx[0]) = F.mul(c, inv2);
        }
    }
    return mat_rank(F, m);
}

// roots of a binary form restricted to a line parametrized by two rows,
// returned as P^5 point clusters with multiplicities
struct LineRoots {
    std::vector<std::pair<PointCluster, int>> roots;  // cluster, multiplicity
    long distinct = 0, with_mult = 0;
};

LineRoots line_roots(const Fp& F, const MultiPoly& restricted, const Mat& param, Prng& rng) {
    FpK k(F);
    LineRoots out;
    // as univariate in t at s=1 (variables: 0 = s, 1 = t)
    FpPoly u;
    int d = restricted.total_degree();
    for (auto& [m, c] : restricted.terms) {
        if ((int)u.c.size() <= m.e[1]) u.c.resize(m.e[1] + 1, 0);
        u.c[m.e[1]] = F.add(u.c[m.e[1]], c);
    }
    u.trim(k);
    auto push_point = [&](std::shared_ptr<FqCtx> field, const FqK::Elem& s0,
                          const FqK::Elem& t0, int mult) {
        FqK kq(*field);
        std::vector<FqK::Elem> coords(param.cols, kq.zero());
        for (int j = 0; j < param.cols; ++j) {
            FqK::Elem a = s0, b = t0;
            for (auto& v : a) v = F.mul(v, param.at(0, j));
            for (auto& v : b) v = F.mul(v, param.at(1, j));
            coords[j] = kq.add(a, b);
        }
        normalize_projective(kq, coords);
        PointCluster pc{field, coords, mult};
        out.roots.push_back({pc, mult});
        out.distinct += field->k;
        out.with_mult += (long)field->k * mult;
    };
    if (u.deg() < d) {
        // the point (0:1) is a root of multiplicity d - deg
        auto field = fp_as_fq(F);
        FqK kq(*field);
        push_point(field, kq.zero(), kq.one(), d - u.deg());
    }
    if (u.deg() >= 1)
        for (auto& fac : factor_poly(k, u, rng)) {
            auto field = std::make_shared<FqCtx>(F, fac.poly);
            FqK kq(*field);
            push_point(field, kq.one(), kq.gen(), fac.mult);
        }
    return out;
}

}  // namespace

// Builds the census rows for one subgroup class and collects special points.
struct CensusBuilder {
    FixedLocusAnalyzer& A;
    Census& census;
    std::map<std::vector<std::vector<uint64_t>>, int> point_index;  // by cluster key payload

    const Fp& F() { return *A.P_.geometric.F; }

    int intern_point(const PointCluster& pc, PointClass cls) {
        ClusterKey key = cluster_key(F(), pc);
        std::vector<std::vector<uint64_t>> payload = key.coord_minpolys;
        payload.push_back(key.l1);
        payload.push_back(key.l2);
        auto it = point_index.find(payload);
        if (it != point_index.end()) return it->second;
        SpecialPoint sp;
        sp.pt = pc;
        sp.cls = cls;
        sp.stab_y = stabilizer(A.P_.geometric, ProjPoint{pc.field, pc.coords});
        sp.stab_y_fp = fingerprint_subgroup(A.P_.geometric, sp.stab_y);
        census.points.push_back(std::move(sp));
        point_index[payload] = (int)census.points.size() - 1;
        return (int)census.points.size() - 1;
    }

    CensusRow analyze(const Subgroup& H) {
        const MatGroup& G = A.P_.geometric;
        const EpwSextic& Y = A.P_.Y;
        auto& T = A.classes();
        CensusRow row;
        row.subgroup = H;
        row.fingerprint = fingerprint_subgroup(G, H);
        row.order = H.size();
        if (auto* e = A.cat_.lookup(row.fingerprint)) {
            row.gap_order = (int)e->order;
            row.gap_index = e->gap_index;
            row.name = e->name;
        }
        std::vector<Mat> subs = invariant_subspaces(F(), G, H, A.rng_);
        std::set<int> y_points, sing_points;  // indices into census.points
        for (auto& sub : subs) {
            int k = sub.rows - 1;
            row.fix_p5_dims.push_back(k);
            if (k == 5) {
                // the trivial group: the whole of Y and its singular surface
                row.fix_y.push_back({4, 6, 0, 0, false});
                row.fix_y_sing.push_back({2, 40, 0, 0, false});
                continue;
            }
            if (k == 0) {
                std::vector<uint64_t> coords(6);
                for (int j = 0; j < 6; ++j) coords[j] = sub.at(0, j);
                PointCluster pc = rational_point(F(), coords);
                PointClass cls = point_classify(F(), Y, pc);
                if (cls == PointClass::Off) continue;
                int id = intern_point(pc, cls);
                y_points.insert(id);
                if (cls == PointClass::Singular) sing_points.insert(id);
                continue;
            }
            if (k == 1) {
                MultiPoly r = restrict_sextic(F(), Y, sub);
                if (r.is_zero()) {
                    row.fix_y.push_back({1, 1, 0, 0, false});
                    // singular points of Y along the line: gcd of the
                    // restricted partials
                    FpK kk(F());
                    MultiPoly acc_poly = MultiPoly::zero(2);
                    FpPoly acc;
                    bool first = true;
                    for (auto& dpart : Y.partials) {
                        MultiPoly rp = restrict_to_subspace(F(), dpart, sub);
                        FpPoly u;
                        int dd = 5;
                        for (auto& [m, c] : rp.terms) {
                            if ((int)u.c.size() <= m.e[1]) u.c.resize(m.e[1] + 1, 0);
                            u.c[m.e[1]] = F().add(u.c[m.e[1]], c);
                        }
                        u.trim(kk);
                        (void)dd;
                        if (first) {
                            acc = u;
                            first = false;
                        } else
                            acc = poly_gcd(kk, acc, u);
                        (void)acc_poly;
                    }
                    if (acc.deg() >= 1) {
                        Prng& rng = A.rng_;
                        for (auto& fac : factor_poly(kk, acc, rng)) {
                            auto field = std::make_shared<FqCtx>(F(), fac.poly);
                            FqK kq(*field);
                            std::vector<FqK::Elem> coords(6, kq.zero());
                            FqK::Elem t0 = kq.gen();
                            for (int j = 0; j < 6; ++j) {
                                FqK::Elem a = kq.from_fp(sub.at(0, j));
                                FqK::Elem b = t0;
                                for (auto& v : b) v = F().mul(v, sub.at(1, j));
                                coords[j] = kq.add(a, b);
                            }
                            normalize_projective(kq, coords);
                            PointCluster pc{field, coords, fac.mult};
                            int id = intern_point(pc, PointClass::Singular);
                            sing_points.insert(id);  // on the line component of Y
                        }
                        // the direction (0:1) too
                        bool inf_sing = true;
                        for (auto& dpart : Y.partials) {
                            MultiPoly rp = restrict_to_subspace(F(), dpart, sub);
                            uint64_t top = 0;
                            for (auto& [m, c] : rp.terms)
                                if (m.e[1] == 5 && m.e[0] == 0) top = c;
                            if (top) inf_sing = false;
                        }
                        if (inf_sing) {
                            std::vector<uint64_t> coords(6);
                            for (int j = 0; j < 6; ++j) coords[j] = sub.at(1, j);
                            PointCluster pc = rational_point(F(), coords);
                            int id = intern_point(pc, PointClass::Singular);
                            sing_points.insert(id);
                        }
                    }
                    continue;
                }
                LineRoots lr = line_roots(F(), r, sub, A.rng_);
                for (auto& [pc, mult] : lr.roots) {
                    PointClass cls = point_classify(F(), Y, pc);
                    int id = intern_point(pc, cls);
                    y_points.insert(id);
                    if (cls == PointClass::Singular) sing_points.insert(id);
                }
                continue;
            }
            if (k == 2) {
                MultiPoly r = restrict_sextic(F(), Y, sub);
                // peel off conics of involutions whose P^3 contains the plane
                MultiPoly rest = r;
                std::vector<MultiPoly> conics;
                for (int x : H) {
                    if (x == 0 || T.classes[T.class_of[x]].element_order != 2) continue;
                    const InvolutionGeometry& ig = A.involution_geometry(x);
                    int w = T.witness_of[x];
                    const Mat& W = G.elems[w];
                    Mat p3x = mat_mul(F(), ig.p3, mat_transpose(W));
                    mat_rref(F(), p3x);
                    // is the plane inside this involution's P^3?
                    Mat stacked(4 + 3, 6);
                    for (int rr = 0; rr < 4; ++rr)
                        for (int c = 0; c < 6; ++c) stacked.at(rr, c) = p3x.at(rr, c);
                    for (int rr = 0; rr < 3; ++rr)
                        for (int c = 0; c < 6; ++c) stacked.at(4 + rr, c) = sub.at(rr, c);
                    if (mat_rank(F(), stacked) != 4) continue;
                    // express the plane in the P^3 chart of the class rep:
                    // rows of (sub * W^-T) in coordinates of ig.p3
                    Mat Winv = mat_inverse(F(), W);
                    Mat moved = mat_mul(F(), sub, mat_transpose(Winv));
                    Mat plane3(3, 4);
                    for (int rr = 0; rr < 3; ++rr) {
                        std::vector<uint64_t> v(6);
                        for (int c = 0; c < 6; ++c) v[c] = moved.at(rr, c);
                        for (int r4 = 0; r4 < 4; ++r4) {
                            int piv = -1;
                            for (int col = 0; col < 6; ++col)
                                if (ig.p3.at(r4, col)) { piv = col; break; }
                            plane3.at(rr, r4) = v[piv];
                            for (int col = 0; col < 6; ++col)
                                v[col] = F().sub(v[col],
                                                 F().mul(plane3.at(rr, r4), ig.p3.at(r4, col)));
                        }
                    }
                    MultiPoly conic = restrict_to_subspace(F(), ig.split.quadric, plane3);
                    if (conic.is_zero()) continue;
                    bool dup = false;
                    for (auto& c0 : conics) {
                        uint64_t lam = F().mul(conic.terms[0].second,
                                               F().inv(c0.terms[0].second));
                        if (mp_sub(F(), conic, mp_scale(F(), c0, lam)).is_zero()) dup = true;
                    }
                    if (dup) continue;
                    MultiPoly q2;
                    try {
                        q2 = mp_exact_divide(F(), rest, conic);
                    } catch (const Error&) {
                        continue;
                    }
                    conics.push_back(conic);
                    rest = q2;
                    int rank = conic_rank(F(), conic);
                    if (rank >= 3)
                        row.fix_y.push_back({1, 2, 0, 0, false});
                    else
                        for (int t = 0; t < 2; ++t) row.fix_y.push_back({1, 1, 0, 0, false});
                }
                if (rest.total_degree() > 0)
                    row.fix_y.push_back({1, rest.total_degree(), 0, 0, true});
                // singular points in the plane
                std::vector<MultiPoly> sys;
                sys.push_back(r);
                for (auto& dpart : Y.partials)
                    sys.push_back(restrict_to_subspace(F(), dpart, sub));
                SolveResult sr = plane_system_solve(F(), sys, A.rng_);
                if (sr.dim == 0)
                    for (auto& sp : sr.points) {
                        // lift to P^5
                        FqK kq(*sp.pt.field);
                        std::vector<FqK::Elem> c6(6, kq.zero());
                        for (int j = 0; j < 6; ++j)
                            for (int rr = 0; rr < 3; ++rr) {
                                if (!sub.at(rr, j)) continue;
                                FqK::Elem t = sp.pt.coords[rr];
                                for (auto& v : t) v = F().mul(v, sub.at(rr, j));
                                c6[j] = kq.add(c6[j], t);
                            }
                        normalize_projective(kq, c6);
                        PointCluster pc{sp.pt.field, c6, sp.mult};
                        int id = intern_point(pc, PointClass::Singular);
                        sing_points.insert(id);
                    }
                continue;
            }
            if (k == 3) {
                // an involution's invariant P^3?
                bool is_invol_p3 = false;
                for (int x : H) {
                    if (x == 0 || T.classes[T.class_of[x]].element_order != 2) continue;
                    const InvolutionGeometry& ig = A.involution_geometry(x);
                    int w = T.witness_of[x];
                    Mat p3x = mat_mul(F(), ig.p3, mat_transpose(G.elems[w]));
                    mat_rref(F(), p3x);
                    if (p3x.a == sub.a) {
                        is_invol_p3 = true;
                        row.fix_y.push_back({2, 2, 0, 0, false});
                        row.fix_y.push_back({2, 4, 0, 0, false});
                        row.fix_y_sing.push_back({1, ig.split.curve_degree, 0, 0, false});
                        census.quartic_nodes = ig.split.node_count;
                        // nodes as special points (singular, in P^5 coords)
                        for (auto& node : ig.split.nodes) {
                            FqK kq(*node.field);
                            std::vector<FqK::Elem> c6(6, kq.zero());
                            for (int j = 0; j < 6; ++j)
                                for (int rr = 0; rr < 4; ++rr) {
                                    if (!ig.p3.at(rr, j)) continue;
                                    FqK::Elem t = node.coords[rr];
                                    for (auto& v : t) v = F().mul(v, ig.p3.at(rr, j));
                                    c6[j] = kq.add(c6[j], t);
                                }
                            normalize_projective(kq, c6);
                            // move to this involution's chart
                            ProjPoint moved =
                                act_point(G, w, ProjPoint{node.field, c6});
                            PointCluster pc{node.field, moved.coords, 1};
                            intern_point(pc, PointClass::Singular);
                        }
                        break;
                    }
                }
                if (!is_invol_p3) row.fix_y.push_back({2, 6, 0, 0, true});
                continue;
            }
        }
        // aggregate point components
        auto add_points = [&](std::vector<Component>& comps, const std::set<int>& ids) {
            long distinct = 0, mult = 0;
            for (int id : ids) {
                distinct += census.points[id].pt.degree();
                mult += (long)census.points[id].pt.degree() * census.points[id].pt.mult;
            }
            if (distinct) comps.push_back({0, 0, distinct, mult, false});
        };
        add_points(row.fix_y, y_points);
        add_points(row.fix_y_sing, sing_points);
        for (int id : y_points) row.point_ids.push_back(id);
        for (int id : sing_points)
            if (!y_points.count(id)) row.point_ids.push_back(id);
        std::sort(row.fix_p5_dims.rbegin(), row.fix_p5_dims.rend());
        auto comp_less = [](const Component& a, const Component& b) {
            return std::tie(b.dim, b.degree, b.count) < std::tie(a.dim, a.degree, a.count);
        };
        std::sort(row.fix_y.begin(), row.fix_y.end(), comp_less);
        std::sort(row.fix_y_sing.begin(), row.fix_y_sing.end(), comp_less);
        return row;
    }
};

Census FixedLocusAnalyzer::census() {
    const MatGroup& G = P_.geometric;
    auto& T = classes();
    Census out;
    CensusBuilder builder{*this, out, {}};

    std::vector<Subgroup> reps;          // subgroup-class representatives seen
    std::vector<GroupFingerprint> fps;   // their fingerprints
    std::deque<Subgroup> work;
    auto try_insert = [&](const Subgroup& H) {
        if (H.size() > 64 && H.size() != 1) return;  // catalog scope
        GroupFingerprint fp = fingerprint_subgroup(G, H);
        for (size_t i = 0; i < reps.size(); ++i) {
            if (!(fps[i] == fp)) continue;
            if (conjugate_subgroup_fast(G, T, reps[i], H)) return;
        }
        reps.push_back(H);
        fps.push_back(fp);
        work.push_back(H);
    };

    try_insert({0});  // the trivial group
    for (auto& c : T.classes) {
        if (c.element_order == 1) continue;
        try_insert(subgroup_closure(G, {c.rep}));
    }
    for (auto& tic : two_involution_subgroups(G)) try_insert(tic.subgroup);
    // all 2-subgroup classes, via the subgroups of one Sylow 2-subgroup
    // (grown through normalizers: a proper p-subgroup is proper in the
    // normalizer's Sylow too)
    {
        uint64_t two_part = 1;
        while (G.order() % (two_part * 2) == 0) two_part *= 2;
        Subgroup syl;
        for (auto& c : T.classes) {
            if (c.element_order != 2) continue;
            syl = subgroup_closure(G, {c.rep});
            break;
        }
        while (!syl.empty() && syl.size() < two_part) {
            std::set<int> in(syl.begin(), syl.end());
            std::vector<int> gens2(syl.begin(), syl.end());
            bool grew = false;
            for (size_t g = 1; g < G.order() && !grew; ++g) {
                if (in.count((int)g)) continue;
                // g must normalize syl
                int gi = G.inv((int)g);
                bool norm = true;
                for (int x : syl)
                    if (!in.count(G.mul((int)g, G.mul(x, gi)))) {
                        norm = false;
                        break;
                    }
                if (!norm) continue;
                uint64_t o = element_order(G, (int)g);
                if (o % 2) continue;
                gens2.push_back((int)g);
                Subgroup bigger = subgroup_closure(G, gens2);
                if ((bigger.size() & (bigger.size() - 1)) == 0 && bigger.size() <= two_part) {
                    syl = bigger;
                    grew = true;
                } else {
                    gens2.pop_back();
                }
            }
            if (!grew) break;
        }
        if (syl.size() == two_part)
            for (auto& sub : all_subgroups(G, syl)) try_insert(sub);
    }

    std::vector<CensusRow> rows;
    std::set<size_t> processed;
    while (!work.empty()) {
        Subgroup H = work.front();
        work.pop_front();
        CensusRow row = builder.analyze(H);
        bool nonempty = !row.fix_y.empty();
        if (nonempty) rows.push_back(row);
        // refine: stabilizers of the points found, and their subgroups
        size_t before = reps.size();
        for (int id : row.point_ids) {
            const Subgroup& st = out.points[id].stab_y;
            if (st.size() <= 64) {
                try_insert(st);
                for (auto& sub : all_subgroups(G, st)) try_insert(sub);
            }
        }
        (void)before;
    }
    // order rows canonically
    std::sort(rows.begin(), rows.end(), [](const CensusRow& a, const CensusRow& b) {
        if (a.order != b.order) return a.order < b.order;
        if (a.gap_index != b.gap_index) return a.gap_index < b.gap_index;
        return std::tie(a.fix_p5_dims, a.fingerprint.order_histogram) <
               std::tie(b.fix_p5_dims, b.fingerprint.order_histogram);
    });
    out.rows = std::move(rows);
    return out;
}

long FixedLocusAnalyzer::frobenius_orbit_split(const PointCluster& pt) {
    // the k geometric points of the cluster fall into k / |J| distinct
    // G-orbits, where J = { j : Frob^j(P) lies in the G-orbit of P }
    const MatGroup& G = P_.geometric;
    int k = pt.field->k;
    if (k == 1) return 1;
    FqK kq(*pt.field);
    std::set<std::vector<FqK::Elem>> frob;
    {
        std::vector<FqK::Elem> cur = pt.coords;
        for (int j = 0; j < k; ++j) {
            for (auto& c : cur) c = kq.frobenius(c);
            std::vector<FqK::Elem> norm = cur;
            normalize_projective(kq, norm);
            if (norm == pt.coords) break;  // true residue degree reached
            frob.insert(norm);
        }
    }
    int true_deg = (int)frob.size() + 1;
    std::set<std::vector<FqK::Elem>> hit;
    ProjPoint pa{pt.field, pt.coords};
    for (size_t g = 0; g < G.order() && hit.size() < frob.size(); ++g) {
        ProjPoint moved = act_point(G, (int)g, pa);
        if (frob.count(moved.coords)) hit.insert(moved.coords);
    }
    long subgroup = (long)hit.size() + 1;
    return true_deg / subgroup;
}

FixedLocusAnalyzer::OrbitReport FixedLocusAnalyzer::special_orbits(Census& census) {
    const MatGroup& G = P_.geometric;
    OrbitReport rep;
    // lift everything with a stabilizer beyond the generic involution
    std::vector<int> special;
    for (size_t i = 0; i < census.points.size(); ++i) {
        SpecialPoint& sp = census.points[i];
        if (sp.stab_y.size() < 3) continue;
        if (!sp.lifted) lift_point(sp);
        special.push_back((int)i);
    }
    // group by (stab order, fingerprint, class) and merge G-orbit clusters
    std::vector<bool> seen(census.points.size(), false);
    for (size_t ii = 0; ii < special.size(); ++ii) {
        int i = special[ii];
        if (seen[i]) continue;
        seen[i] = true;
        SpecialPoint& a = census.points[i];
        long merged = a.pt.degree();
        for (size_t jj = ii + 1; jj < special.size(); ++jj) {
            int j = special[jj];
            if (seen[j]) continue;
            SpecialPoint& b = census.points[j];
            if (a.stab_y.size() != b.stab_y.size() || !(a.stab_y_fp == b.stab_y_fp) ||
                a.cls != b.cls || a.on_fixed_surface != b.on_fixed_surface)
                continue;
            if (same_orbit(a.pt, b.pt)) {
                seen[j] = true;
                merged += b.pt.degree();
            }
        }
        if (a.stab_x.size() <= 2) continue;  // generic surface stratum
        // the cluster family may split into several geometric G-orbits
        long y_orbits = frobenius_orbit_split(a.pt);
        long xorbits = (a.fiber == FiberBehavior::FixedPair ? 2 : 1) * y_orbits;
        std::string name = "?";
        if (auto* e = cat_.lookup(a.stab_x_fp)) name = e->name;
        std::string where = a.on_fixed_surface ? "surface" : "isolated";
        if (a.on_fixed_surface)
            rep.surface_counts[name] += xorbits;
        else
            rep.isolated_counts[name] += xorbits;
        char buf[256];
        std::string sy = "?";
        if (auto* e = cat_.lookup(a.stab_y_fp)) sy = e->name;
        snprintf(buf, sizeof(buf),
                 "orbit: stabY=%s %s %s -> stabX=%s, %ld merged pts, %ld Y-orbits, %ld "
                 "X-orbits, %s",
                 sy.c_str(), a.cls == PointClass::Singular ? "sing" : "reg",
                 a.fiber == FiberBehavior::Branch       ? "branch"
                 : a.fiber == FiberBehavior::FixedPair ? "fixed-pair"
                                                        : "swapped-pair",
                 name.c_str(), merged, y_orbits, xorbits, where.c_str());
        rep.notes.push_back(buf);
    }
    return rep;
}

long FixedLocusAnalyzer::fixed_points_on_cover(int elem_idx) {
    const MatGroup& G = P_.geometric;
    const Fp& F = *G.F;
    auto& T = classes();
    Subgroup H = subgroup_closure(G, {elem_idx});
    uint64_t order = T.classes[T.class_of[elem_idx]].element_order;
    // collect the isolated fixed points of the element on Y
    std::vector<Mat> subs = invariant_subspaces(F, G, H, rng_);
    std::vector<PointCluster> pts;
    std::vector<PointClass> cls;
    for (auto& sub : subs) {
        int k = sub.rows - 1;
        if (k == 0) {
            std::vector<uint64_t> coords(6);
            for (int j = 0; j < 6; ++j) coords[j] = sub.at(0, j);
            PointCluster pc = rational_point(F, coords);
            PointClass c = point_classify(F, P_.Y, pc);
            if (c != PointClass::Off) {
                pts.push_back(pc);
                cls.push_back(c);
            }
        } else if (k == 1) {
            MultiPoly r = restrict_sextic(F, P_.Y, sub);
            if (r.is_zero()) continue;  // a curve of fixed points, not isolated
            LineRoots lr = line_roots(F, r, sub, rng_);
            for (auto& [pc, mult] : lr.roots) {
                pts.push_back(pc);
                cls.push_back(point_classify(F, P_.Y, pc));
            }
        }
        // higher-dimensional fixed subspaces contribute fixed surfaces/curves,
        // not isolated points
    }
    long count = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (cls[i] == PointClass::Singular) {
            count += pts[i].degree();
            continue;
        }
        // regular: both preimages fixed iff the element lies in the descent
        // kernel of the point's full stabilizer
        SpecialPoint sp;
        sp.pt = pts[i];
        sp.cls = cls[i];
        sp.stab_y = stabilizer(G, ProjPoint{pts[i].field, pts[i].coords});
        sp.stab_y_fp = fingerprint_subgroup(G, sp.stab_y);
        lift_point(sp);
        std::set<int> kern(sp.stab_x.begin(), sp.stab_x.end());
        if (kern.count(elem_idx)) count += 2 * pts[i].degree();
    }
    // for an involution, points on its own quadric sit on the fixed K3
    // surface and are not isolated; exclude them
    if (order == 2) {
        long on_surface = 0;
        const InvolutionGeometry& ig = involution_geometry(elem_idx);
        int w = T.witness_of[elem_idx];
        for (size_t i = 0; i < pts.size(); ++i)
            if (point_on_quadric(ig, pts[i], w)) {
                // it counted 1 (branch) or 2 (fixed pair)
                SpecialPoint sp;
                sp.pt = pts[i];
                if (cls[i] == PointClass::Singular)
                    on_surface += pts[i].degree();
                else
                    on_surface += 2 * pts[i].degree();
            }
        count -= on_surface;
        // the sixteen nodes of the quartic are isolated fixed points of the
        // cover over this involution's P^3
        count += ig.split.node_count;
    }
    return count;
}

}  // namespace epwsym

