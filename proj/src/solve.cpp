#include "epwsym/solve.hpp"

namespace epwsym {

namespace {

// Newton interpolation at arbitrary distinct nodes.
FpPoly interp_coeffs(const Fp& F, const std::vector<uint64_t>& nodes,
                     const std::vector<uint64_t>& values) {
    FpK k(F);
    int n = (int)nodes.size();
    std::vector<uint64_t> dd = values;
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i)
            dd[i] = F.mul(F.sub(dd[i], dd[i - 1]), F.inv(F.sub(nodes[i], nodes[i - j])));
    std::vector<uint64_t> coeffs(n, 0), basis(n, 0);
    basis[0] = 1;
    int bdeg = 0;
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d <= bdeg; ++d) coeffs[d] = F.add(coeffs[d], F.mul(dd[i], basis[d]));
        if (i + 1 < n) {
            for (int d = bdeg + 1; d >= 1; --d)
                basis[d] = F.sub(basis[d - 1], F.mul(basis[d], nodes[i]));
            basis[0] = F.mul(basis[0], F.neg(nodes[i]));
            ++bdeg;
        }
    }
    FpPoly r;
    r.c = coeffs;
    r.trim(k);
    return r;
}

Mat random_invertible(const Fp& F, int n, Prng& rng) {
    while (true) {
        Mat m(n, n);
        for (auto& v : m.a) v = rng.field(F);
        if (mat_rank(F, Mat(m)) == n) return m;
    }
}

// f composed with x := M y (square change of coordinates).
MultiPoly change_coords(const Fp& F, const MultiPoly& f, const Mat& M) {
    std::vector<std::vector<uint64_t>> L(f.nvars, std::vector<uint64_t>(f.nvars));
    for (int i = 0; i < f.nvars; ++i)
        for (int j = 0; j < f.nvars; ++j) L[i][j] = M.at(i, j);
    return mp_compose_linear(F, f, L, f.nvars);
}

uint64_t pure_power_coeff(const MultiPoly& f, int var, int deg) {
    for (auto& [m, c] : f.terms) {
        bool ok = m.e[var] == (uint16_t)deg;
        for (int i = 0; ok && i < f.nvars; ++i)
            if (i != var && m.e[i]) ok = false;
        if (ok) return c;
    }
    return 0;
}

// Univariate in `var` after substituting all other variables with given values.
FpPoly specialize_to_var(const Fp& F, const MultiPoly& f, int var,
                         const std::vector<uint64_t>& vals) {
    FpK k(F);
    FpPoly r;
    for (auto& [m, c] : f.terms) {
        uint64_t coef = c;
        for (int i = 0; i < f.nvars; ++i)
            if (i != var && m.e[i]) coef = F.mul(coef, F.pow(vals[i], m.e[i]));
        if ((int)r.c.size() <= m.e[var]) r.c.resize(m.e[var] + 1, 0);
        r.c[m.e[var]] = F.add(r.c[m.e[var]], coef);
    }
    r.trim(k);
    return r;
}

Poly<FqK> specialize_to_var_fq(const Fp& F, const FqK& kq, const MultiPoly& f, int var,
                               const std::vector<FqK::Elem>& vals) {
    Poly<FqK> r;
    for (auto& [m, c] : f.terms) {
        FqK::Elem coef = kq.from_fp(c);
        for (int i = 0; i < f.nvars; ++i)
            if (i != var && m.e[i]) coef = kq.mul(coef, kq.pow(vals[i], m.e[i]));
        if ((int)r.c.size() <= m.e[var]) r.c.resize(m.e[var] + 1, kq.zero());
        r.c[m.e[var]] = kq.add(r.c[m.e[var]], coef);
    }
    r.trim(kq);
    return r;
}

// Lift a chart-affine solution (coords in y with last = 1) back to x.
PointCluster unchart_point(const Fp& F, const Mat& M, std::shared_ptr<FqCtx> field,
                           std::vector<FqK::Elem> ycoords) {
    FqK kq(*field);
    int n = M.rows;
    std::vector<FqK::Elem> x(n, kq.zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!M.at(i, j)) continue;
            FqK::Elem t = ycoords[j];
            for (auto& v : t) v = F.mul(v, M.at(i, j));
            x[i] = kq.add(x[i], t);
        }
    normalize_projective(kq, x);
    PointCluster pc;
    pc.field = std::move(field);
    pc.coords = std::move(x);
    return pc;
}

}  // namespace

ClusterKey cluster_key(const Fp& F, const PointCluster& pc) {
    FqK kq(*pc.field);
    ClusterKey key;
    key.degree = 0;
    // true residue degree: smallest j with Frob^j fixing the normalized point
    {
        std::vector<FqK::Elem> cur = pc.coords;
        for (int j = 1; j <= pc.field->k; ++j) {
            for (auto& c : cur) c = kq.frobenius(c);
            std::vector<FqK::Elem> norm = cur;
            normalize_projective(kq, norm);
            if (norm == pc.coords) {
                key.degree = j;
                break;
            }
        }
        if (key.degree == 0) throw Error("Internal", "Frobenius orbit did not close");
    }
    for (auto& c : pc.coords) key.coord_minpolys.push_back(fq_minpoly(F, *pc.field, c).c);
    // two fixed functionals (independent of the run seed)
    Prng fixed(0xC0FFEE ^ (uint64_t)pc.coords.size());
    std::vector<uint64_t> f1, f2;
    for (size_t i = 0; i < pc.coords.size(); ++i) f1.push_back(fixed.field(F));
    for (size_t i = 0; i < pc.coords.size(); ++i) f2.push_back(fixed.field(F));
    auto apply = [&](const std::vector<uint64_t>& lf) {
        FqK::Elem s = kq.zero();
        for (size_t i = 0; i < pc.coords.size(); ++i) {
            FqK::Elem t = pc.coords[i];
            for (auto& v : t) v = F.mul(v, lf[i]);
            s = kq.add(s, t);
        }
        return fq_minpoly(F, *pc.field, s).c;
    };
    key.l1 = apply(f1);
    key.l2 = apply(f2);
    return key;
}

MultiPoly restrict_to_subspace(const Fp& F, const MultiPoly& f, const Mat& param) {
    std::vector<std::vector<uint64_t>> L(f.nvars, std::vector<uint64_t>(param.rows));
    for (int i = 0; i < f.nvars; ++i)
        for (int j = 0; j < param.rows; ++j) L[i][j] = param.at(j, i);
    return mp_compose_linear(F, f, L, param.rows);
}

Mat random_subspace(const Fp& F, int k_plus_1, int n, Prng& rng) {
    while (true) {
        Mat m(k_plus_1, n);
        for (auto& v : m.a) v = rng.field(F);
        if (mat_rank(F, Mat(m)) == k_plus_1) return m;
    }
}

// ---- the bivariate core -----------------------------------------------------

namespace {

// Resultant in variable vb of two polynomials in exactly two variables (va,vb),
// as a univariate in va.  Requires the vb-leading coefficients to be constants.
FpPoly resultant_eliminate(const Fp& F, const MultiPoly& f, const MultiPoly& g, int va, int vb) {
    FpK k(F);
    int df = f.total_degree(), dg = g.total_degree();
    int bound = df * dg;
    std::vector<uint64_t> nodes, values;
    std::vector<uint64_t> vals(f.nvars, 0);
    int dbf = 0, dbg = 0;
    for (auto& [m, c] : f.terms) dbf = std::max(dbf, (int)m.e[vb]);
    for (auto& [m, c] : g.terms) dbg = std::max(dbg, (int)m.e[vb]);
    for (uint64_t node = 0; (int)nodes.size() <= bound; ++node) {
        if (node >= F.p) throw Error("DegenerateChart", "ran out of interpolation nodes");
        vals[va] = node;
        FpPoly fu = specialize_to_var(F, f, vb, vals);
        FpPoly gu = specialize_to_var(F, g, vb, vals);
        if (fu.deg() != dbf || gu.deg() != dbg) continue;  // degree drop at this node
        nodes.push_back(node);
        values.push_back(poly_resultant(k, fu, gu));
    }
    return interp_coeffs(F, nodes, values);
}

struct FiberPoint {
    std::shared_ptr<FqCtx> field;
    FqK::Elem alpha, beta;
};

// Roots in Fq of the gcd of the fiber system {gens(alpha, b, 1)}.  Returns
// false if some root lies outside Fq (caller retries with a new chart).
bool fiber_roots(const Fp& F, const std::vector<MultiPoly>& gens, std::shared_ptr<FqCtx> field,
                 const FqK::Elem& alpha, int va, int vb, Prng& rng,
                 std::vector<FiberPoint>& out) {
    FqK kq(*field);
    std::vector<FqK::Elem> vals(gens[0].nvars, kq.zero());
    // all other variables are at their chart value 1 except va=alpha
    for (int i = 0; i < gens[0].nvars; ++i) vals[i] = kq.one();
    vals[va] = alpha;
    Poly<FqK> g;
    bool first = true;
    for (auto& f : gens) {
        if (f.is_zero()) continue;
        Poly<FqK> u = specialize_to_var_fq(F, kq, f, vb, vals);
        if (first) {
            g = u;
            first = false;
        } else
            g = poly_gcd(kq, g, u);
        if (g.deg() == 0) return true;  // empty fiber
    }
    if (first || g.is_zero()) return false;  // undetermined fiber
    if (g.deg() == 0) return true;
    // squarefree part
    Poly<FqK> sf = g;
    Poly<FqK> d = poly_derivative(kq, g);
    if (!d.is_zero()) {
        Poly<FqK> q, r;
        poly_divmod(kq, g, poly_gcd(kq, g, d), q, r);
        sf = q;
    }
    auto roots = fq_roots(kq, sf, rng);
    if ((int)roots.size() != sf.deg()) return false;
    for (auto& b : roots) out.push_back({field, alpha, b});
    return true;
}

}  // namespace

SolveResult zero_dim_solve(const Fp& F, const MultiPoly& f, const MultiPoly& g, Prng& rng) {
    if (f.nvars != 3 || g.nvars != 3) throw Error("DimMismatch", "zero_dim_solve expects 3 variables");
    if (f.is_zero() || g.is_zero()) throw Error("CommonComponent", "zero input polynomial");
    int d1 = f.total_degree(), d2 = g.total_degree();
    // a common component meets every line; finite intersections miss random ones
    {
        FpK k(F);
        int hits = 0;
        for (int t = 0; t < 2; ++t) {
            Mat line = random_subspace(F, 2, 3, rng);
            MultiPoly fr = restrict_to_subspace(F, f, line);
            MultiPoly gr = restrict_to_subspace(F, g, line);
            std::vector<uint64_t> vals = {0, 1};
            FpPoly fu = specialize_to_var(F, fr, 0, vals);
            FpPoly gu = specialize_to_var(F, gr, 0, vals);
            if (fu.deg() == d1 && gu.deg() == d2 && poly_gcd(k, fu, gu).deg() > 0) ++hits;
        }
        if (hits == 2) throw Error("CommonComponent", "curves share a component");
    }
    int zero_resultants = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Mat M = random_invertible(F, 3, rng);
        MultiPoly fc = change_coords(F, f, M);
        MultiPoly gc = change_coords(F, g, M);
        if (!pure_power_coeff(fc, 1, d1) || !pure_power_coeff(gc, 1, d2)) continue;
        // no common zeros on the line y2 = 0
        {
            FpK k(F);
            MultiPoly f0 = mp_substitute(F, fc, 2, 0), g0 = mp_substitute(F, gc, 2, 0);
            std::vector<uint64_t> vals(3, 0);
            vals[1] = 1;
            FpPoly fu = specialize_to_var(F, f0, 0, vals);
            FpPoly gu = specialize_to_var(F, g0, 0, vals);
            FpPoly gg = poly_gcd(k, fu, gu);
            bool inf_pt = gg.deg() > 0;
            if (!inf_pt) {
                // the point (1:0:0)
                if (pure_power_coeff(fc, 0, d1) == 0 && pure_power_coeff(gc, 0, d2) == 0)
                    inf_pt = true;
            }
            if (inf_pt) continue;
        }
        MultiPoly fa = mp_substitute(F, fc, 2, 1), ga = mp_substitute(F, gc, 2, 1);
        FpPoly R = resultant_eliminate(F, fa, ga, 0, 1);
        if (R.is_zero()) {
            if (++zero_resultants >= 2)
                throw Error("CommonComponent", "resultant identically zero");
            continue;
        }
        FpK k(F);
        auto factors = factor_poly(k, R, rng);
        SolveResult res;
        res.dim = factors.empty() ? -1 : 0;
        bool ok = true;
        long bez = 0;
        for (auto& fac : factors) {
            auto field = std::make_shared<FqCtx>(F, fac.poly);
            FqK kq(*field);
            FqK::Elem alpha = kq.gen();
            std::vector<FiberPoint> fps;
            if (!fiber_roots(F, {fa, ga}, field, alpha, 0, 1, rng, fps)) {
                ok = false;
                break;
            }
            if (fps.size() != 1) {
                ok = false;  // same-alpha distinct points: non-generic chart
                break;
            }
            std::vector<FqK::Elem> y = {fps[0].alpha, fps[0].beta, kq.one()};
            SolvedPoint sp;
            sp.pt = unchart_point(F, M, field, y);
            sp.pt.mult = fac.mult;
            sp.mult = fac.mult;
            res.points.push_back(std::move(sp));
            res.distinct += fac.poly.deg();
            res.with_mult += (long)fac.poly.deg() * fac.mult;
            bez += (long)fac.poly.deg() * fac.mult;
        }
        if (!ok) continue;
        if (bez != (long)d1 * d2) continue;  // lost multiplicity somewhere: retry
        return res;
    }
    throw Error("DegenerateChart", "no generic chart found in 8 attempts");
}

namespace {

// Core of the plane/space solvers: given the affine generators (still with
// nvars variables; chart variable last set to 1 implicitly via substitution),
// find isolated solutions.  Returns false on a non-generic chart.
bool solve_affine_system(const Fp& F, const std::vector<MultiPoly>& affine, const Mat& M,
                         Prng& rng, SolveResult& res, bool& positive_dim) {
    positive_dim = false;
    // two independent elimination rounds
    auto combo = [&](int n) {
        std::vector<MultiPoly> out;
        for (int t = 0; t < n; ++t) {
            MultiPoly h = MultiPoly::zero(affine[0].nvars);
            for (auto& gpoly : affine)
                h = mp_add(F, h, mp_scale(F, gpoly, rng.field_nonzero(F)));
            out.push_back(h);
        }
        return out;
    };
    auto hs = combo(4);
    for (auto& h : hs)
        if (h.is_zero()) return false;
    FpPoly R1, R2;
    {
        MultiPoly h1 = hs[0], h2 = hs[1], h3 = hs[2], h4 = hs[3];
        int db1 = 0;
        for (auto& [m, c] : h1.terms) db1 = std::max(db1, (int)m.e[1]);
        if (db1 == 0) return false;
        R1 = resultant_eliminate(F, h1, h2, 0, 1);
        R2 = resultant_eliminate(F, h3, h4, 0, 1);
    }
    if (R1.is_zero() && R2.is_zero()) {
        positive_dim = true;
        return true;
    }
    if (R1.is_zero() || R2.is_zero()) return false;  // suspicious: retry
    FpK k(F);
    FpPoly g = poly_gcd(k, R1, R2);
    if (g.deg() == 0) {
        res.dim = -1;
        return true;
    }
    // multiplicity of each factor of g inside R1
    auto factors = factor_poly(k, g, rng);
    res.dim = 0;
    for (auto& fac : factors) {
        // multiplicity in R1
        int mult = 0;
        {
            FpPoly rem = R1, q, r;
            while (true) {
                poly_divmod(k, rem, fac.poly, q, r);
                if (!r.is_zero()) break;
                rem = q;
                ++mult;
            }
        }
        auto field = std::make_shared<FqCtx>(F, fac.poly);
        FqK kq(*field);
        FqK::Elem alpha = kq.gen();
        std::vector<FiberPoint> fps;
        if (!fiber_roots(F, affine, field, alpha, 0, 1, rng, fps)) return false;
        for (auto& fp : fps) {
            std::vector<FqK::Elem> y(affine[0].nvars, kq.one());
            y[0] = fp.alpha;
            y[1] = fp.beta;
            SolvedPoint sp;
            sp.pt = unchart_point(F, M, field, y);
            sp.pt.mult = mult;
            sp.mult = mult;
            res.points.push_back(std::move(sp));
            res.distinct += fac.poly.deg();
            res.with_mult += (long)fac.poly.deg() * mult;
        }
    }
    if (res.points.empty()) res.dim = -1;
    return true;
}

}  // namespace

SolveResult plane_system_solve(const Fp& F, const std::vector<MultiPoly>& gens_in, Prng& rng) {
    std::vector<MultiPoly> gens;
    for (auto& g : gens_in)
        if (!g.is_zero()) gens.push_back(g);
    SolveResult res;
    if (gens.empty()) {
        res.dim = 2;
        return res;
    }
    if (gens[0].nvars != 3) throw Error("DimMismatch", "plane system expects 3 variables");
    int pos_dim_votes = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Mat M = random_invertible(F, 3, rng);
        std::vector<MultiPoly> tg, affine;
        for (auto& g : gens) tg.push_back(change_coords(F, g, M));
        bool lc_ok = true;
        for (auto& g : tg)
            if (!pure_power_coeff(g, 1, g.total_degree())) lc_ok = false;
        if (!lc_ok) continue;
        for (auto& g : tg) affine.push_back(mp_substitute(F, g, 2, 1));
        SolveResult out;
        bool posdim = false;
        if (!solve_affine_system(F, affine, M, rng, out, posdim)) continue;
        if (!posdim) {
            // finite: the chart's infinity line y2 = 0 must carry no common zero
            FpK k(F);
            FpPoly acc;
            bool first = true;
            for (auto& g : tg) {
                MultiPoly g0 = mp_substitute(F, g, 2, 0);
                std::vector<uint64_t> vals(3, 0);
                vals[1] = 1;
                FpPoly u = specialize_to_var(F, g0, 0, vals);
                if (first) {
                    acc = u;
                    first = false;
                } else
                    acc = poly_gcd(k, acc, u);
            }
            bool pt10 = true;  // the point (1:0:0)
            for (auto& g : tg)
                if (pure_power_coeff(g, 0, g.total_degree())) pt10 = false;
            if (acc.deg() > 0 || pt10) continue;
        }
        if (posdim) {
            if (++pos_dim_votes < 2) continue;
            // positive-dimensional: measure the degree of a generic line slice
            res.dim = 1;
            Mat line = random_subspace(F, 2, 3, rng);
            FpK k(F);
            FpPoly acc;
            bool first = true;
            for (auto& g : gens) {
                MultiPoly r = restrict_to_subspace(F, g, line);
                std::vector<uint64_t> vals(2, 1);
                FpPoly u = specialize_to_var(F, r, 0, vals);
                if (first) {
                    acc = u;
                    first = false;
                } else
                    acc = poly_gcd(k, acc, u);
            }
            res.slice_degree = acc.deg() > 0 ? acc.deg() : 0;
            return res;
        }
        return out;
    }
    throw Error("DegenerateChart", "no generic chart found for the plane system");
}

SolveResult space_system_solve(const Fp& F, const std::vector<MultiPoly>& gens_in, Prng& rng) {
    std::vector<MultiPoly> gens;
    for (auto& g : gens_in)
        if (!g.is_zero()) gens.push_back(g);
    SolveResult res;
    if (gens.empty()) {
        res.dim = 3;
        return res;
    }
    if (gens[0].nvars != 4) throw Error("DimMismatch", "space system expects 4 variables");
    int pos_dim_votes = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Mat M = random_invertible(F, 4, rng);
        std::vector<MultiPoly> tg;
        for (auto& g : gens) tg.push_back(change_coords(F, g, M));
        bool lc_ok = true;
        for (auto& g : tg)
            if (!pure_power_coeff(g, 2, g.total_degree())) lc_ok = false;
        if (!lc_ok) continue;
        std::vector<MultiPoly> affine;
        for (auto& g : tg) affine.push_back(mp_substitute(F, g, 3, 1));
        auto make_combo = [&]() {
            MultiPoly h = MultiPoly::zero(4);
            for (auto& gpoly : affine) h = mp_add(F, h, mp_scale(F, gpoly, rng.field_nonzero(F)));
            return h;
        };
        // Res_c of two affine combos as a polynomial in (y0,y1), by grid
        // interpolation; throws DegenerateChart on leading-coefficient drops.
        auto elim_pair = [&](const MultiPoly& a, const MultiPoly& b) {
            int bound = a.total_degree() * b.total_degree();
            int n = bound + 1;
            FpK k(F);
            int da = 0, db = 0;
            for (auto& [m, c] : a.terms) da = std::max(da, (int)m.e[2]);
            for (auto& [m, c] : b.terms) db = std::max(db, (int)m.e[2]);
            if (da == 0 || db == 0) throw Error("DegenerateChart", "combo lost the eliminated variable");
            std::vector<uint64_t> grid((size_t)n * n);
            std::vector<uint64_t> vals(4, 1);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    vals[0] = i;
                    vals[1] = j;
                    FpPoly au = specialize_to_var(F, a, 2, vals);
                    FpPoly bu = specialize_to_var(F, b, 2, vals);
                    if (au.deg() != da || bu.deg() != db)
                        throw Error("DegenerateChart", "leading drop on grid");
                    grid[(size_t)i * n + j] = poly_resultant(k, au, bu);
                }
            std::vector<uint64_t> nodes(n);
            for (int i = 0; i < n; ++i) nodes[i] = i;
            std::vector<std::vector<uint64_t>> rows(n);
            for (int i = 0; i < n; ++i) {
                std::vector<uint64_t> line(grid.begin() + (size_t)i * n,
                                           grid.begin() + (size_t)(i + 1) * n);
                FpPoly pr = interp_coeffs(F, nodes, line);
                pr.c.resize(n, 0);
                rows[i] = pr.c;
            }
            MultiPoly out = MultiPoly::zero(4);
            for (int j = 0; j < n; ++j) {
                std::vector<uint64_t> col(n);
                for (int i = 0; i < n; ++i) col[i] = rows[i][j];
                FpPoly pc = interp_coeffs(F, nodes, col);
                for (int i = 0; i <= pc.deg(); ++i) {
                    if (!pc.c[i]) continue;
                    Mono m;
                    m.e[0] = (uint16_t)i;
                    m.e[1] = (uint16_t)j;
                    out.terms.push_back({m, pc.c[i]});
                }
            }
            out.normalize(F);
            return out;
        };
        MultiPoly e1, e2, e3, e4;
        try {
            e1 = elim_pair(make_combo(), make_combo());
            e2 = elim_pair(make_combo(), make_combo());
            e3 = elim_pair(make_combo(), make_combo());
            e4 = elim_pair(make_combo(), make_combo());
        } catch (const Error& err) {
            if (err.code == "DegenerateChart") continue;
            throw;
        }
        if (e1.is_zero() && e2.is_zero() && e3.is_zero() && e4.is_zero()) {
            if (++pos_dim_votes < 2) continue;
            // positive dimensional: slice with a random plane inside P^3
            Mat plane = random_subspace(F, 3, 4, rng);
            std::vector<MultiPoly> sliced;
            for (auto& g : gens) sliced.push_back(restrict_to_subspace(F, g, plane));
            SolveResult sub = plane_system_solve(F, sliced, rng);
            res.dim = sub.dim >= 0 ? sub.dim + 1 : 1;
            res.slice_degree = sub.dim == 0 ? (int)sub.distinct : sub.slice_degree;
            res.points = sub.points;
            for (auto& sp : res.points) {
                FqK kq(*sp.pt.field);
                std::vector<FqK::Elem> x(4, kq.zero());
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 3; ++j) {
                        if (!plane.at(j, i)) continue;
                        FqK::Elem t = sp.pt.coords[j];
                        for (auto& v : t) v = F.mul(v, plane.at(j, i));
                        x[i] = kq.add(x[i], t);
                    }
                normalize_projective(kq, x);
                sp.pt.coords = std::move(x);
            }
            return res;
        }
        if (e1.is_zero() || e2.is_zero() || e3.is_zero() || e4.is_zero()) continue;
        FpK k(F);
        FpPoly R1 = resultant_eliminate(F, e1, e2, 0, 1);
        FpPoly R2 = resultant_eliminate(F, e3, e4, 0, 1);
        if (R1.is_zero() || R2.is_zero()) continue;  // shared spurious projection
        FpPoly g = poly_gcd(k, R1, R2);
        SolveResult out;
        out.dim = -1;
        if (g.deg() == 0) return out;  // empty
        auto factors = factor_poly(k, g, rng);
        out.dim = 0;
        bool ok = true;
        for (auto& fac : factors) {
            int mult = 0;
            {
                FpPoly rem = R1, q, r;
                while (true) {
                    poly_divmod(k, rem, fac.poly, q, r);
                    if (!r.is_zero()) break;
                    rem = q;
                    ++mult;
                }
            }
            auto field = std::make_shared<FqCtx>(F, fac.poly);
            FqK kq(*field);
            FqK::Elem alpha = kq.gen();
            Poly<FqK> u1, u2;
            {
                std::vector<FqK::Elem> vals(4, kq.one());
                vals[0] = alpha;
                u1 = specialize_to_var_fq(F, kq, e1, 1, vals);
                u2 = specialize_to_var_fq(F, kq, e2, 1, vals);
            }
            Poly<FqK> gb = poly_gcd(kq, u1, u2);
            if (gb.is_zero()) {
                ok = false;
                break;
            }
            if (gb.deg() == 0) continue;  // spurious alpha
            Poly<FqK> sf = gb;
            {
                Poly<FqK> d = poly_derivative(kq, gb);
                if (!d.is_zero()) {
                    Poly<FqK> q, r;
                    poly_divmod(kq, gb, poly_gcd(kq, gb, d), q, r);
                    sf = q;
                }
            }
            auto betas = fq_roots(kq, sf, rng);
            if ((int)betas.size() != sf.deg()) {
                ok = false;
                break;
            }
            for (auto& beta : betas) {
                std::vector<FqK::Elem> vals(4, kq.one());
                vals[0] = alpha;
                vals[1] = beta;
                Poly<FqK> gc;
                bool first = true;
                for (auto& gpoly : affine) {
                    Poly<FqK> u = specialize_to_var_fq(F, kq, gpoly, 2, vals);
                    if (first) {
                        gc = u;
                        first = false;
                    } else
                        gc = poly_gcd(kq, gc, u);
                    if (gc.deg() == 0) break;
                }
                if (first || gc.is_zero()) {
                    ok = false;
                    break;
                }
                if (gc.deg() == 0) continue;  // fails the full system
                Poly<FqK> csf = gc;
                {
                    Poly<FqK> d = poly_derivative(kq, gc);
                    if (!d.is_zero()) {
                        Poly<FqK> q, r;
                        poly_divmod(kq, gc, poly_gcd(kq, gc, d), q, r);
                        csf = q;
                    }
                }
                auto gammas = fq_roots(kq, csf, rng);
                if ((int)gammas.size() != csf.deg()) {
                    ok = false;
                    break;
                }
                for (auto& gamma : gammas) {
                    std::vector<FqK::Elem> y = {alpha, beta, gamma, kq.one()};
                    SolvedPoint sp;
                    sp.pt = unchart_point(F, M, field, y);
                    sp.pt.mult = mult;
                    sp.mult = mult;
                    out.points.push_back(std::move(sp));
                    out.distinct += fac.poly.deg();
                    out.with_mult += (long)fac.poly.deg() * mult;
                }
            }
            if (!ok) break;
        }
        if (!ok) continue;
        // the chart's infinity plane y3 = 0 must carry no common zero
        {
            std::vector<MultiPoly> inf3;
            for (auto& g : tg) {
                MultiPoly g0 = mp_substitute(F, g, 3, 0);
                MultiPoly h = MultiPoly::zero(3);
                for (auto& [m, c] : g0.terms) {
                    Mono mm;
                    mm.e[0] = m.e[0];
                    mm.e[1] = m.e[1];
                    mm.e[2] = m.e[2];
                    h.terms.push_back({mm, c});
                }
                h.normalize(F);
                inf3.push_back(h);
            }
            SolveResult infres = plane_system_solve(F, inf3, rng);
            if (infres.dim != -1) continue;  // chart hits the locus at infinity
        }
        if (out.points.empty()) out.dim = -1;
        return out;
    }
    throw Error("DegenerateChart", "no generic chart found for the space system");
}

}  // namespace epwsym
