#include "epwsym/wedge.hpp"

namespace epwsym {

const std::array<std::array<int, 3>, 20>& wedge_triples() {
    static const std::array<std::array<int, 3>, 20> T = [] {
        std::array<std::array<int, 3>, 20> t{};
        int n = 0;
        for (int i = 0; i < 6; ++i)
            for (int j = i + 1; j < 6; ++j)
                for (int k = j + 1; k < 6; ++k) t[n++] = {i, j, k};
        return t;
    }();
    return T;
}

int wedge_index(int i, int j, int k) {
    auto& T = wedge_triples();
    std::array<int, 3> key = {i, j, k};
    std::sort(key.begin(), key.end());
    for (int n = 0; n < 20; ++n)
        if (T[n] == key) return n;
    throw Error("BadTriple", "invalid wedge index triple");
}

Mat induced_wedge3(const Fp& F, const Mat& m) {
    if (m.rows != 6 || m.cols != 6) throw Error("DimMismatch", "wedge of a non-6x6 matrix");
    auto& T = wedge_triples();
    Mat w(20, 20);
    for (int col = 0; col < 20; ++col) {
        auto [a, b, c] = T[col];
        for (int row = 0; row < 20; ++row) {
            auto [i, j, k] = T[row];
            // 3x3 minor with rows (i,j,k), columns (a,b,c)
            uint64_t m00 = m.at(i, a), m01 = m.at(i, b), m02 = m.at(i, c);
            uint64_t m10 = m.at(j, a), m11 = m.at(j, b), m12 = m.at(j, c);
            uint64_t m20 = m.at(k, a), m21 = m.at(k, b), m22 = m.at(k, c);
            uint64_t pos = F.add(F.add(F.mul(m00, F.mul(m11, m22)), F.mul(m01, F.mul(m12, m20))),
                                 F.mul(m02, F.mul(m10, m21)));
            uint64_t neg = F.add(F.add(F.mul(m02, F.mul(m11, m20)), F.mul(m01, F.mul(m10, m22))),
                                 F.mul(m00, F.mul(m12, m21)));
            w.at(row, col) = F.sub(pos, neg);
        }
    }
    return w;
}

namespace {

int permutation_sign(std::array<int, 6> perm) {
    int sign = 1;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

}  // namespace

Mat symplectic_form20(const Fp& F) {
    auto& T = wedge_triples();
    Mat omega(20, 20);
    for (int r = 0; r < 20; ++r)
        for (int c = 0; c < 20; ++c) {
            // nonzero only when the triples are complementary
            std::array<bool, 6> used{};
            bool overlap = false;
            for (int v : T[r]) used[v] = true;
            for (int v : T[c])
                if (used[v]) overlap = true;
            if (overlap) continue;
            std::array<int, 6> perm = {T[r][0], T[r][1], T[r][2], T[c][0], T[c][1], T[c][2]};
            omega.at(r, c) = permutation_sign(perm) == 1 ? 1 : F.neg(1);
        }
    return omega;
}

WedgeClassData wedge_class_data(const Fp& F, const MatGroup& linear6) {
    if (linear6.projective) throw Error("InputError", "need the linear (non-projective) closure");
    ConjClassTable T = conjugacy_classes(linear6);
    // kernel of wedge^3 on scalars: cube roots of unity present in the group
    std::vector<uint64_t> kernel;
    for (uint64_t s : linear6.scalar_subgroup)
        if (F.mul(F.mul(s, s), s) == 1) kernel.push_back(s);
    // merge classes along the kernel scalars
    int nc = (int)T.classes.size();
    std::vector<int> merged_id(nc, -1);
    std::vector<std::vector<int>> groups;
    for (int c = 0; c < nc; ++c) {
        if (merged_id[c] >= 0) continue;
        std::vector<int> grp{c};
        merged_id[c] = (int)groups.size();
        for (uint64_t z : kernel) {
            if (z == 1) continue;
            Mat zm = mat_scale(F, linear6.elems[T.classes[c].rep], z);
            int idx = linear6.find(zm);
            if (idx < 0) throw Error("Internal", "scalar multiple left the group");
            int c2 = T.class_of[idx];
            if (merged_id[c2] < 0) {
                merged_id[c2] = merged_id[c];
                grp.push_back(c2);
            }
        }
        groups.push_back(grp);
    }

    WedgeClassData out;
    out.kernel_order = (int)kernel.size();
    out.class_sums20.assign(groups.size(), Mat(20, 20));
    for (size_t g = 0; g < groups.size(); ++g) {
        long size = 0;
        for (int c : groups[g]) size += (long)T.classes[c].members.size();
        out.sizes.push_back(size / out.kernel_order);
        out.reps6.push_back(linear6.elems[T.classes[groups[g][0]].rep]);
    }
    // accumulate wedge images once over the whole group
    std::vector<int> merged_of_elem(linear6.order());
    for (size_t e = 0; e < linear6.order(); ++e) merged_of_elem[e] = merged_id[T.class_of[e]];
    for (size_t e = 0; e < linear6.order(); ++e) {
        Mat w = induced_wedge3(F, linear6.elems[e]);
        Mat& acc = out.class_sums20[merged_of_elem[e]];
        for (size_t i = 0; i < acc.a.size(); ++i) acc.a[i] = F.add(acc.a[i], w.a[i]);
    }
    uint64_t kinv = F.inv(out.kernel_order % F.p);
    for (auto& m : out.class_sums20)
        for (auto& v : m.a) v = F.mul(v, kinv);
    for (size_t g = 0; g < groups.size(); ++g) {
        Mat w = induced_wedge3(F, out.reps6[g]);
        out.traces20.push_back(mat_trace(F, w));
        out.orders.push_back(mat_order(F, w, 10000));
    }
    return out;
}

std::vector<std::pair<int, uint64_t>> isotypic_weights(const FieldCtx& ctx,
                                                       const WedgeClassData& wcd) {
    const Fp& F = ctx.f;
    // canonical order of the merged classes: element order, trace (as small
    // integer when recognizable), size
    std::vector<int> order_ids(wcd.reps6.size());
    for (size_t i = 0; i < order_ids.size(); ++i) order_ids[i] = (int)i;
    auto key = [&](int i) {
        int64_t t;
        bool small = F.as_small_int(wcd.traces20[i], 20, t);
        return std::tuple(wcd.orders[i], small ? t : (int64_t)1 << 40, wcd.sizes[i], (long)i);
    };
    std::sort(order_ids.begin(), order_ids.end(), [&](int a, int b) { return key(a) < key(b); });

    uint64_t z7 = ctx.root_of_order(7);
    uint64_t b = F.add(F.add(z7, F.pow(z7, 2)), F.pow(z7, 4));
    uint64_t B = F.sub(F.neg(1), b);
    uint64_t inv2 = F.inv(2);

    std::vector<std::pair<int, uint64_t>> weights;
    std::vector<int> trace_one;
    for (int i : order_ids) {
        int64_t t;
        if (!F.as_small_int(wcd.traces20[i], 20, t) || t <= 0) continue;
        if (t == 1)
            trace_one.push_back(i);
        else
            weights.push_back({i, F.mul(F.from_int(t), inv2)});
    }
    if (trace_one.size() != 2)
        throw Error("ClassMismatch",
                    "expected exactly two trace-1 classes, found " +
                        std::to_string(trace_one.size()));
    weights.push_back({trace_one[0], F.neg(b)});
    weights.push_back({trace_one[1], F.neg(B)});
    return weights;
}

Mat isotypic_projector(const Fp& F, const WedgeClassData& wcd,
                       const std::vector<std::pair<int, uint64_t>>& weights) {
    Mat P(20, 20);
    for (auto& [cid, w] : weights) {
        if (cid < 0 || cid >= (int)wcd.class_sums20.size())
            throw Error("ClassMismatch", "weight refers to an unknown class");
        const Mat& s = wcd.class_sums20[cid];
        for (size_t i = 0; i < P.a.size(); ++i) P.a[i] = F.add(P.a[i], F.mul(w, s.a[i]));
    }
    return P;
}

Mat orbit_row_span(const Fp& F, const std::vector<Mat>& gens20,
                   const std::vector<uint64_t>& seed) {
    // incremental reduced echelon basis
    Mat basis(0, 20);
    std::vector<std::vector<uint64_t>> queue;
    auto reduce_insert = [&](std::vector<uint64_t> v) -> bool {
        // reduce against basis rows
        for (int r = 0; r < basis.rows; ++r) {
            int piv = -1;
            for (int c = 0; c < 20; ++c)
                if (basis.at(r, c)) { piv = c; break; }
            if (piv >= 0 && v[piv]) {
                uint64_t f = v[piv];
                for (int c = 0; c < 20; ++c) v[c] = F.sub(v[c], F.mul(f, basis.at(r, c)));
            }
        }
        bool nonzero = false;
        for (auto x : v)
            if (x) nonzero = true;
        if (!nonzero) return false;
        basis.a.insert(basis.a.end(), v.begin(), v.end());
        basis.rows += 1;
        mat_rref(F, basis);
        return true;
    };
    if (reduce_insert(seed)) queue.push_back(seed);
    while (!queue.empty()) {
        auto v = queue.back();
        queue.pop_back();
        for (auto& g : gens20) {
            // row vector times matrix
            std::vector<uint64_t> w(20, 0);
            for (int i = 0; i < 20; ++i) {
                if (!v[i]) continue;
                for (int j = 0; j < 20; ++j) w[j] = F.add(w[j], F.mul(v[i], g.at(i, j)));
            }
            if (reduce_insert(w)) queue.push_back(w);
        }
    }
    mat_rref(F, basis);
    return basis;
}

Mat invariant_lagrangian(const Fp& F, const std::vector<Mat>& gens20,
                         const std::vector<uint64_t>& seed) {
    Mat B = orbit_row_span(F, gens20, seed);
    if (B.rows != 10)
        throw Error("WrongDimension",
                    "orbit span has dimension " + std::to_string(B.rows) + ", expected 10");
    Mat omega = symplectic_form20(F);
    Mat test = mat_mul(F, B, mat_mul(F, omega, mat_transpose(B)));
    for (auto v : test.a)
        if (v) throw Error("NotLagrangian", "the form does not vanish on the span");
    return B;
}

}  // namespace epwsym
