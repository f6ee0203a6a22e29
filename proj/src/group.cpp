#include "epwsym/group.hpp"

#include <deque>
#include <numeric>
#include <set>

namespace epwsym {

uint64_t mat_hash(const Mat& m) {
    uint64_t h = 1469598103934665603ull;
    for (auto v : m.a) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return h;
}

Mat MatGroup::canonical(Mat m) const {
    if (!projective) return m;
    for (auto v : m.a) {
        if (!v) continue;
        if (v != 1) {
            uint64_t inv = F->inv(v);
            for (auto& w : m.a) w = F->mul(w, inv);
        }
        return m;
    }
    throw Error("ZeroMatrix", "cannot canonicalize the zero matrix");
}

int MatGroup::find(const Mat& canonical_m) const {
    auto it = index_.find(mat_hash(canonical_m));
    if (it == index_.end()) return -1;
    for (int i : it->second)
        if (elems[i] == canonical_m) return i;
    return -1;
}

int MatGroup::mul(int a, int b) const {
    int i = find(canonical(mat_mul(*F, elems[a], elems[b])));
    if (i < 0) throw Error("Internal", "product left the group");
    return i;
}

int MatGroup::inv(int a) const {
    int i = find(canonical(mat_inverse(*F, elems[a])));
    if (i < 0) throw Error("Internal", "inverse left the group");
    return i;
}

MatGroup close_group(const Fp& F, const std::vector<Mat>& gens, bool projective, size_t cap) {
    MatGroup G;
    G.F = &F;
    G.projective = projective;
    if (gens.empty()) throw Error("NoGenerators", "empty generator list");
    G.dim = gens[0].rows;
    for (auto& g : gens) {
        if (g.rows != G.dim || g.cols != G.dim)
            throw Error("DimMismatch", "generator dimensions differ");
        mat_inverse(F, g);  // throws if singular
    }

    std::set<uint64_t> scalar_defects;
    auto insert = [&](const Mat& m, const Mat& lift) -> int {
        int i = G.find(m);
        if (i >= 0) return -1;
        G.elems.push_back(m);
        if (projective) G.lifts.push_back(lift);
        G.index_[mat_hash(m)].push_back((int)G.elems.size() - 1);
        return (int)G.elems.size() - 1;
    };

    insert(Mat::identity(G.dim), Mat::identity(G.dim));
    std::vector<Mat> cgens;
    for (auto& g : gens) {
        Mat c = G.canonical(g);
        cgens.push_back(c);
        insert(c, g);
    }
    G.gens = cgens;

    std::deque<int> queue;
    for (size_t i = 0; i < G.elems.size(); ++i) queue.push_back((int)i);
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (size_t gi = 0; gi < cgens.size(); ++gi) {
            Mat prod = mat_mul(F, G.elems[i], cgens[gi]);
            if (projective) {
                // record the scaling defect: it generates the scalar kernel
                for (auto v : prod.a) {
                    if (!v) continue;
                    scalar_defects.insert(v);
                    break;
                }
            }
            Mat c = G.canonical(prod);
            Mat lift = projective ? mat_mul(F, G.lifts[i], gens[gi]) : Mat();
            int idx = insert(c, lift);
            if (idx >= 0) {
                if (G.elems.size() > cap) throw Error("Explosion", "group order exceeds cap");
                queue.push_back(idx);
            }
        }
    }

    if (projective) {
        // multiplicative closure of the collected defects
        std::set<uint64_t> sub = {1};
        std::deque<uint64_t> q(scalar_defects.begin(), scalar_defects.end());
        for (auto v : q) sub.insert(v);
        while (!q.empty()) {
            uint64_t v = q.front();
            q.pop_front();
            for (auto w : std::vector<uint64_t>(sub.begin(), sub.end())) {
                uint64_t t = F.mul(v, w);
                if (sub.insert(t).second) q.push_back(t);
            }
        }
        G.scalar_subgroup.assign(sub.begin(), sub.end());
    } else {
        for (auto& m : G.elems) {
            bool scal = true;
            uint64_t d = m.at(0, 0);
            for (int i = 0; scal && i < G.dim; ++i)
                for (int j = 0; scal && j < G.dim; ++j)
                    if (m.at(i, j) != (i == j ? d : 0)) scal = false;
            if (scal) G.scalar_subgroup.push_back(d);
        }
        std::sort(G.scalar_subgroup.begin(), G.scalar_subgroup.end());
    }
    return G;
}

ConjClassTable conjugacy_classes(const MatGroup& G) {
    ConjClassTable T;
    size_t n = G.order();
    T.class_of.assign(n, -1);
    T.witness_of.assign(n, 0);
    std::vector<int> gen_idx, gen_inv_idx;
    for (auto& g : G.gens) {
        int i = G.find(g);
        gen_idx.push_back(i);
        gen_inv_idx.push_back(G.inv(i));
    }
    for (size_t start = 0; start < n; ++start) {
        if (T.class_of[start] >= 0) continue;
        int cid = (int)T.classes.size();
        ConjClass cls;
        cls.rep = (int)start;
        T.class_of[start] = cid;
        T.witness_of[start] = 0;
        std::deque<int> q{(int)start};
        cls.members.push_back((int)start);
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (size_t gi = 0; gi < gen_idx.size(); ++gi) {
                Mat conj = mat_mul(*G.F, G.elems[gen_idx[gi]],
                                   mat_mul(*G.F, G.elems[x], G.elems[gen_inv_idx[gi]]));
                int y = G.find(G.canonical(conj));
                if (y < 0) throw Error("Internal", "conjugate left the group");
                if (T.class_of[y] < 0) {
                    T.class_of[y] = cid;
                    T.witness_of[y] = G.mul(gen_idx[gi], T.witness_of[x]);
                    cls.members.push_back(y);
                    q.push_back(y);
                }
            }
        }
        cls.element_order = element_order(G, (int)start);
        T.classes.push_back(std::move(cls));
    }
    return T;
}

uint64_t element_order(const MatGroup& G, int idx) {
    int x = idx;
    uint64_t n = 1;
    int id = G.find(Mat::identity(G.dim));
    while (x != id) {
        x = G.mul(x, idx);
        ++n;
        if (n > G.order()) throw Error("Internal", "order computation ran away");
    }
    return n;
}

std::map<uint64_t, long> element_orders(const MatGroup& G) {
    std::map<uint64_t, long> hist;
    ConjClassTable T = conjugacy_classes(G);
    for (auto& c : T.classes) {
        if (c.element_order == 1) continue;
        hist[c.element_order] += (long)c.members.size();
    }
    return hist;
}

Subgroup subgroup_closure(const MatGroup& G, const std::vector<int>& generators) {
    std::set<int> seen;
    int id = G.find(Mat::identity(G.dim));
    seen.insert(id);
    std::deque<int> q;
    for (int g : generators)
        if (seen.insert(g).second) q.push_back(g);
    std::vector<int> gens = generators;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int g : gens) {
            int y = G.mul(x, g);
            if (seen.insert(y).second) q.push_back(y);
            int z = G.mul(g, x);
            if (seen.insert(z).second) q.push_back(z);
        }
    }
    return Subgroup(seen.begin(), seen.end());
}

Subgroup whole_subgroup(const MatGroup& G) {
    Subgroup s(G.order());
    for (size_t i = 0; i < G.order(); ++i) s[i] = (int)i;
    return s;
}

std::vector<Subgroup> all_subgroups(const MatGroup& G, const Subgroup& H) {
    std::set<Subgroup> out;
    int id = G.find(Mat::identity(G.dim));
    out.insert({id});
    for (int a : H)
        for (int b : H) {
            if (b < a) continue;
            Subgroup s = subgroup_closure(G, {a, b});
            bool fresh = out.insert(s).second;
            (void)fresh;
            if (s.size() < H.size())
                for (int c : H) {
                    if (c < b) continue;
                    out.insert(subgroup_closure(G, {a, b, c}));
                }
        }
    // keep only subgroups of H
    std::set<int> hs(H.begin(), H.end());
    std::vector<Subgroup> res;
    for (auto& s : out) {
        bool ok = true;
        for (int x : s)
            if (!hs.count(x)) { ok = false; break; }
        if (ok) res.push_back(s);
    }
    return res;
}

Subgroup conjugated_subgroup(const MatGroup& G, const Subgroup& A, int g) {
    int gi = G.inv(g);
    Subgroup out;
    out.reserve(A.size());
    for (int x : A) out.push_back(G.mul(g, G.mul(x, gi)));
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<int> conjugate_subgroup_witness(const MatGroup& G, const Subgroup& A,
                                              const Subgroup& B) {
    if (A.size() != B.size()) return std::nullopt;
    std::set<int> bs(B.begin(), B.end());
    for (size_t g = 0; g < G.order(); ++g) {
        int gi = G.inv((int)g);
        bool ok = true;
        for (int x : A) {
            int y = G.mul((int)g, G.mul(x, gi));
            if (!bs.count(y)) { ok = false; break; }
        }
        if (ok) return (int)g;
    }
    return std::nullopt;
}

Subgroup centralizer(const MatGroup& G, int x) {
    Subgroup out;
    const Mat& mx = G.elems[x];
    for (size_t g = 0; g < G.order(); ++g)
        if (G.canonical(mat_mul(*G.F, G.elems[g], mx)) ==
            G.canonical(mat_mul(*G.F, mx, G.elems[g])))
            out.push_back((int)g);
    return out;
}

std::optional<int> conjugate_subgroup_fast(const MatGroup& G, const ConjClassTable& T,
                                           const Subgroup& A, const Subgroup& B) {
    if (A.size() != B.size()) return std::nullopt;
    if (A == B) return 0;
    // class-size multiset must match
    {
        std::map<int, int> ca, cb;
        for (int x : A) ca[T.class_of[x]]++;
        for (int x : B) cb[T.class_of[x]]++;
        if (ca != cb) return std::nullopt;
    }
    // pick the element of A whose class has the fewest members inside B
    int a = -1;
    long best = -1;
    std::map<int, std::vector<int>> b_by_class;
    for (int x : B) b_by_class[T.class_of[x]].push_back(x);
    for (int x : A) {
        if (x == 0) continue;
        long cand = (long)b_by_class[T.class_of[x]].size() * (long)T.classes[T.class_of[x]].members.size();
        if (best < 0 || cand < best) {
            best = cand;
            a = x;
        }
    }
    if (a < 0) return A == B ? std::optional<int>(0) : std::nullopt;
    Subgroup cent = centralizer(G, a);
    std::set<int> bs(B.begin(), B.end());
    int wa_inv = G.inv(T.witness_of[a]);
    for (int b : b_by_class[T.class_of[a]]) {
        // g0 conjugates a to b
        int g0 = G.mul(T.witness_of[b], wa_inv);
        for (int c : cent) {
            int g = G.mul(g0, c);
            int gi = G.inv(g);
            bool ok = true;
            for (int x : A)
                if (!bs.count(G.mul(g, G.mul(x, gi)))) {
                    ok = false;
                    break;
                }
            if (ok) return g;
        }
    }
    return std::nullopt;
}

namespace {

// Abelian invariants of a quotient H/N given by coset structure; returns
// (order, exponent).
std::pair<uint64_t, uint64_t> abelian_quotient_invariants(const MatGroup& G, const Subgroup& H,
                                                          const Subgroup& N) {
    std::set<int> ns(N.begin(), N.end());
    // coset representative map
    std::map<int, int> coset_of;  // element -> coset id
    std::vector<int> reps;
    for (int h : H) {
        if (coset_of.count(h)) continue;
        int cid = (int)reps.size();
        reps.push_back(h);
        for (int n : N) coset_of[G.mul(h, n)] = cid;
    }
    size_t q = reps.size();
    // exponent: lcm of coset orders in the quotient
    uint64_t expo = 1;
    for (size_t i = 0; i < q; ++i) {
        int x = reps[i];
        uint64_t o = 1;
        int cur = x;
        while (!ns.count(cur)) {
            cur = G.mul(cur, x);
            ++o;
        }
        expo = std::lcm(expo, o);
    }
    return {q, expo};
}

}  // namespace

GroupFingerprint fingerprint_subgroup(const MatGroup& G, const Subgroup& H) {
    GroupFingerprint fp;
    fp.order = H.size();
    // order histogram and class count via conjugation orbits inside H
    std::map<uint64_t, long> hist;
    std::map<int, uint64_t> ord;
    std::set<int> hs(H.begin(), H.end());
    int id = G.find(Mat::identity(G.dim));
    for (int x : H) {
        uint64_t o = 1;
        int cur = x;
        while (cur != id) {
            cur = G.mul(cur, x);
            ++o;
        }
        ord[x] = o;
        if (o > 1) hist[o]++;
    }
    fp.order_histogram.assign(hist.begin(), hist.end());
    // conjugacy classes of H (brute force orbits)
    std::set<int> unseen(H.begin(), H.end());
    long classes = 0;
    while (!unseen.empty()) {
        int x = *unseen.begin();
        std::set<int> orb;
        for (int g : H) orb.insert(G.mul(g, G.mul(x, G.inv(g))));
        for (int y : orb) unseen.erase(y);
        ++classes;
    }
    fp.class_count = classes;
    // center
    long center = 0;
    for (int x : H) {
        bool c = true;
        for (int g : H)
            if (G.mul(x, g) != G.mul(g, x)) { c = false; break; }
        if (c) ++center;
    }
    fp.center_order = center;
    // derived subgroup: closure of commutators
    std::vector<int> comms;
    {
        std::set<int> cs;
        for (int a : H)
            for (int b : H) {
                int c = G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b));
                cs.insert(c);
            }
        comms.assign(cs.begin(), cs.end());
    }
    Subgroup derived = subgroup_closure(G, comms);
    fp.derived_order = derived.size();
    auto [q, expo] = abelian_quotient_invariants(G, H, derived);
    fp.abelianization_order = q;
    fp.abelianization_exponent = expo;
    return fp;
}

GroupFingerprint fingerprint_group(const MatGroup& G) {
    return fingerprint_subgroup(G, whole_subgroup(G));
}

ProjPoint act_point(const MatGroup& G, int g, const ProjPoint& pt) {
    FqK kq(*pt.field);
    const Mat& m = G.elems[g];
    std::vector<FqK::Elem> out(m.rows, kq.zero());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            uint64_t c = m.at(i, j);
            if (!c) continue;
            FqK::Elem t = pt.coords[j];
            for (auto& v : t) v = G.F->mul(v, c);
            out[i] = kq.add(out[i], t);
        }
    normalize_projective(kq, out);
    return ProjPoint{pt.field, std::move(out)};
}

bool same_point(const ProjPoint& a, const ProjPoint& b) { return a.coords == b.coords; }

Subgroup stabilizer(const MatGroup& G, const ProjPoint& pt) {
    Subgroup out;
    for (size_t g = 0; g < G.order(); ++g)
        if (act_point(G, (int)g, pt).coords == pt.coords) out.push_back((int)g);
    return out;
}

std::vector<ProjPoint> orbit_of_point(const MatGroup& G, const ProjPoint& pt) {
    std::vector<ProjPoint> orb{pt};
    std::set<std::vector<FqK::Elem>> seen{pt.coords};
    std::vector<int> gen_idx;
    for (auto& g : G.gens) gen_idx.push_back(G.find(g));
    std::deque<int> q{0};
    while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        for (int g : gen_idx) {
            ProjPoint np = act_point(G, g, orb[i]);
            if (seen.insert(np.coords).second) {
                orb.push_back(np);
                q.push_back((int)orb.size() - 1);
            }
        }
    }
    return orb;
}

long orbit_size(const MatGroup& G, const ProjPoint& pt) {
    return (long)orbit_of_point(G, pt).size();
}

std::vector<TwoInvolutionClass> two_involution_subgroups(const MatGroup& G) {
    ConjClassTable T = conjugacy_classes(G);
    std::vector<int> invol;
    std::set<int> first_reps;
    for (auto& c : T.classes)
        if (c.element_order == 2) {
            first_reps.insert(c.rep);
            invol.insert(invol.end(), c.members.begin(), c.members.end());
        }
    if (invol.empty()) return {};
    std::set<Subgroup> distinct;
    for (int i0 : first_reps)
        for (int i1 : invol) {
            if (i1 == i0) continue;
            distinct.insert(subgroup_closure(G, {i0, i1}));
        }
    std::vector<TwoInvolutionClass> out;
    std::vector<Subgroup> reps;
    for (auto& s : distinct) {
        bool dup = false;
        for (auto& r : reps)
            if (r.size() == s.size() && conjugate_subgroup_fast(G, T, r, s)) {
                dup = true;
                break;
            }
        if (dup) continue;
        reps.push_back(s);
        out.push_back({s, fingerprint_subgroup(G, s)});
    }
    std::sort(out.begin(), out.end(), [](const TwoInvolutionClass& a, const TwoInvolutionClass& b) {
        return a.fingerprint < b.fingerprint;
    });
    return out;
}

long involution_class_count(const MatGroup& G) {
    ConjClassTable T = conjugacy_classes(G);
    long n = 0;
    for (auto& c : T.classes)
        if (c.element_order == 2) ++n;
    return n;
}

}  // namespace epwsym
