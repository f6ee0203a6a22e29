#include "epwsym/matrix.hpp"

namespace epwsym {

std::vector<Eigenspace> eigenspaces(const Fp& F, const Mat& m, Prng& rng) {
    if (m.rows != m.cols) throw Error("DimMismatch", "eigenspaces of non-square matrix");
    mat_order(F, m);  // throws NotFiniteOrder if unbounded
    FpK k(F);
    FpPoly cp = mat_charpoly(F, m);
    std::vector<Eigenspace> out;
    for (auto& fac : factor_poly(k, cp, rng)) {
        Eigenspace e;
        e.min_poly = fac.poly;
        e.degree = fac.poly.deg();
        e.multiplicity = fac.mult;
        if (e.degree == 1) {
            e.eigenvalue_fp = F.neg(fac.poly.c[0]);
            Mat shifted = m;
            for (int i = 0; i < m.rows; ++i)
                shifted.at(i, i) = F.sub(shifted.at(i, i), e.eigenvalue_fp);
            e.basis = mat_kernel(F, shifted);
            mat_rref(F, e.basis);
            e.geometric_dim = e.basis.rows;
        } else {
            // geometric dim over the extension = dim ker(minpoly-companion block)
            // computed via rank of fac.poly(m) : nullity / degree
            Mat acc(m.rows, m.cols);
            Mat pw = Mat::identity(m.rows);
            for (size_t i = 0; i < fac.poly.c.size(); ++i) {
                if (fac.poly.c[i]) acc = mat_add(F, acc, mat_scale(F, pw, fac.poly.c[i]));
                if (i + 1 < fac.poly.c.size()) pw = mat_mul(F, pw, m);
            }
            int nullity = m.rows - mat_rank(F, acc);
            e.eigenvalue_fp = 0;
            e.geometric_dim = nullity / e.degree;
        }
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const Eigenspace& a, const Eigenspace& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.degree == 1 && a.eigenvalue_fp != b.eigenvalue_fp)
            return a.eigenvalue_fp < b.eigenvalue_fp;
        return a.min_poly.c < b.min_poly.c;
    });
    return out;
}

namespace {

// Interpolate coefficients of a degree <= D polynomial from values at nodes
// 0,1,...,D (Newton's divided differences, then expansion).
void newton_to_coeffs(const Fp& F, std::vector<uint64_t>& v) {
    int n = (int)v.size();
    // divided differences in place: v[i] becomes f[x0..xi]; nodes are 0..n-1
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i)
            v[i] = F.mul(F.sub(v[i], v[i - 1]), F.inv(F.from_int(j)));
    // expand: poly = sum v[i] * prod_{t<i} (x - t)
    std::vector<uint64_t> coeffs(n, 0), basis(n, 0);
    basis[0] = 1;
    int basis_deg = 0;
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d <= basis_deg; ++d)
            coeffs[d] = F.add(coeffs[d], F.mul(v[i], basis[d]));
        if (i + 1 < n) {
            // basis *= (x - i)
            for (int d = basis_deg + 1; d >= 1; --d)
                basis[d] = F.sub(d - 1 <= basis_deg ? basis[d - 1] : 0,
                                 F.mul(basis[d], F.from_int(i)));
            basis[0] = F.mul(basis[0], F.neg(F.from_int(i)));
            ++basis_deg;
        }
    }
    v = coeffs;
}

}  // namespace

MultiPoly det_interpolated(const Fp& F, const std::vector<std::vector<MultiPoly>>& m,
                           int degree_bound, Prng& rng) {
    int n = (int)m.size();
    for (auto& row : m)
        if ((int)row.size() != n) throw Error("DimMismatch", "det of non-square matrix");
    int nv = n ? m[0][0].nvars : 0;
    for (auto& row : m)
        for (auto& e : row) {
            if (e.nvars != nv) throw Error("DimMismatch", "inconsistent variable counts");
            if (e.total_degree() > 1)
                throw Error("DegreeMismatch", "entries must be affine-linear");
        }
    int D = degree_bound;
    // entry = const + sum coef[v] x_v; precompute for fast evaluation
    struct Lin {
        uint64_t c0;
        std::vector<uint64_t> cv;
    };
    std::vector<Lin> lin((size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Lin l;
            l.c0 = 0;
            l.cv.assign(nv, 0);
            for (auto& [mono, c] : m[i][j].terms) {
                int tv = -1;
                for (int v = 0; v < nv; ++v)
                    if (mono.e[v]) tv = v;
                if (tv < 0)
                    l.c0 = c;
                else
                    l.cv[tv] = c;
            }
            lin[(size_t)i * n + j] = std::move(l);
        }

    size_t grid = 1;
    for (int v = 0; v < nv; ++v) grid *= (size_t)(D + 1);
    std::vector<uint64_t> vals(grid);
    std::vector<uint64_t> pt(nv, 0);
    Mat num(n, n);
    for (size_t idx = 0; idx < grid; ++idx) {
        size_t t = idx;
        for (int v = 0; v < nv; ++v) {
            pt[v] = (uint64_t)(t % (size_t)(D + 1));
            t /= (size_t)(D + 1);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Lin& l = lin[(size_t)i * n + j];
                uint64_t s = l.c0;
                for (int v = 0; v < nv; ++v)
                    if (l.cv[v]) s = F.add(s, F.mul(l.cv[v], pt[v]));
                num.at(i, j) = s;
            }
        vals[idx] = mat_det(F, num);
    }

    // axis-by-axis interpolation on the tensor
    size_t stride = 1;
    for (int v = 0; v < nv; ++v) {
        size_t block = stride * (size_t)(D + 1);
        std::vector<uint64_t> line(D + 1);
        for (size_t base = 0; base < grid; base += block)
            for (size_t off = 0; off < stride; ++off) {
                for (int t = 0; t <= D; ++t) line[t] = vals[base + off + stride * t];
                newton_to_coeffs(F, line);
                for (int t = 0; t <= D; ++t) vals[base + off + stride * t] = line[t];
            }
        stride = block;
    }

    MultiPoly out = MultiPoly::zero(nv);
    for (size_t idx = 0; idx < grid; ++idx) {
        if (!vals[idx]) continue;
        size_t t = idx;
        Mono mono;
        int total = 0;
        for (int v = 0; v < nv; ++v) {
            mono.e[v] = (uint16_t)(t % (size_t)(D + 1));
            total += mono.e[v];
            t /= (size_t)(D + 1);
        }
        if (total > D) throw Error("BoundTooLow", "interpolated degree exceeds bound");
        out.terms.push_back({mono, vals[idx]});
    }
    out.normalize(F);

    // verification at fresh random points
    for (int trial = 0; trial < 16; ++trial) {
        std::vector<uint64_t> rp(nv);
        for (auto& v : rp) v = rng.field(F);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Lin& l = lin[(size_t)i * n + j];
                uint64_t s = l.c0;
                for (int v = 0; v < nv; ++v)
                    if (l.cv[v]) s = F.add(s, F.mul(l.cv[v], rp[v]));
                num.at(i, j) = s;
            }
        if (mat_det(F, num) != mp_eval_fp(F, out, rp))
            throw Error("BoundTooLow", "verification evaluation disagrees");
    }
    return out;
}

}  // namespace epwsym
