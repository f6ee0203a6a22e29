#include "epwsym/epw.hpp"

namespace epwsym {

Mat symmetric_matrix(const Fp& F, const Mat& A) {
    if (A.rows != 10 || A.cols != 20) throw Error("DimMismatch", "expected a 10x20 basis");
    static const int mult[10] = {1, -1, 1, -1, 1, -1, 1, 1, -1, 1};
    Mat dom(10, 10), cod(10, 10);
    for (int r = 0; r < 10; ++r)
        for (int i = 0; i < 10; ++i) {
            dom.at(r, i) = A.at(r, i);
            uint64_t v = A.at(r, 10 + (9 - i));
            cod.at(r, i) = mult[i] == 1 ? v : F.neg(v);
        }
    // M1 = inverse(transpose(dom)), M2 = transpose(cod); Mat1 = M2 * M1
    Mat m1 = mat_inverse(F, mat_transpose(dom));
    Mat mat1 = mat_mul(F, mat_transpose(cod), m1);
    if (!(mat1 == mat_transpose(mat1)))
        throw Error("NotSymmetric", "graph matrix of the Lagrangian is not symmetric");
    return mat1;
}

std::vector<std::vector<MultiPoly>> lambda_matrix(const Fp& F, const Mat& mat1) {
    // variables in the affine chart: (y,z,u,v,w) = 0..4
    enum { Y = 0, Z = 1, U = 2, V = 3, W = 4 };
    struct Entry {
        int r, c, var, sign;
    };
    // the upper-triangular matrix M as printed; MM = M + M^T
    static const Entry M[] = {
        {0, 7, W, +1}, {0, 8, V, -1}, {0, 9, U, +1},
        {1, 5, W, -1}, {1, 6, V, +1}, {1, 9, Z, -1},
        {2, 4, W, +1}, {2, 6, U, -1}, {2, 8, Z, +1},
        {3, 4, V, -1}, {3, 5, U, +1}, {3, 7, Z, -1},
        {4, 9, Y, +1}, {5, 8, Y, -1}, {6, 7, Y, +1},
    };
    std::vector<std::vector<MultiPoly>> lam(10, std::vector<MultiPoly>(10, MultiPoly::zero(5)));
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) lam[i][j] = MultiPoly::constant(5, mat1.at(i, j));
    for (auto& e : M) {
        uint64_t c = e.sign == 1 ? 1 : F.neg(1);
        // Lambda = Mat1 - MM
        lam[e.r][e.c] = mp_add(F, lam[e.r][e.c], MultiPoly::var(5, e.var, F.neg(c)));
        lam[e.c][e.r] = mp_add(F, lam[e.c][e.r], MultiPoly::var(5, e.var, F.neg(c)));
    }
    return lam;
}

EpwSextic epw_polynomial(const Fp& F, const std::vector<std::vector<MultiPoly>>& lambda,
                         uint64_t seed, Prng& rng) {
    MultiPoly d1 = det_interpolated(F, lambda, 10, rng);
    if (d1.total_degree() != 6)
        throw Error("DegreeMismatch",
                    "affine determinant has degree " + std::to_string(d1.total_degree()));
    // move to 6 variables (x,y,z,u,v,w) and homogenize by x
    MultiPoly f6 = MultiPoly::zero(6);
    for (auto& [m, c] : d1.terms) {
        Mono mm;
        for (int v = 0; v < 5; ++v) mm.e[v + 1] = m.e[v];
        f6.terms.push_back({mm, c});
    }
    f6.normalize(F);
    EpwSextic Y;
    Y.f = mp_homogenize(F, f6, 0, 6);
    for (int v = 0; v < 6; ++v) Y.partials.push_back(mp_derivative(F, Y.f, v));
    Y.prime = F.p;
    Y.seed = seed;
    return Y;
}

uint64_t invariance_check(const Fp& F, const MultiPoly& f, const Mat& g) {
    std::vector<std::vector<uint64_t>> L(6, std::vector<uint64_t>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) L[i][j] = g.at(i, j);
    MultiPoly fg = mp_compose_linear(F, f, L, 6);
    if (fg.terms.size() != f.terms.size())
        throw Error("NotInvariant", "composed polynomial has a different support");
    // lambda from the leading terms, then coefficient-wise comparison
    if (!(fg.terms[0].first == f.terms[0].first))
        throw Error("NotInvariant", "leading monomials differ");
    uint64_t lambda = F.mul(fg.terms[0].second, F.inv(f.terms[0].second));
    MultiPoly diff = mp_sub(F, fg, mp_scale(F, f, lambda));
    if (!diff.is_zero()) throw Error("NotInvariant", "not a scalar multiple");
    return lambda;
}

PointClass point_classify(const Fp& F, const EpwSextic& Y, const PointCluster& pt) {
    FqK kq(*pt.field);
    if (!kq.is_zero(mp_eval(kq, F, Y.f, pt.coords))) return PointClass::Off;
    for (auto& d : Y.partials)
        if (!kq.is_zero(mp_eval(kq, F, d, pt.coords))) return PointClass::Regular;
    return PointClass::Singular;
}

std::shared_ptr<EpwPipeline> build_epw_pipeline(const GroupInput& gi, uint64_t seed) {
    auto ptr = std::make_shared<EpwPipeline>(EpwPipeline{gi});
    EpwPipeline& P = *ptr;
    const Fp& F = P.input.ctx.f;  // lives inside the heap object
    Prng rng(seed);
    P.seed = seed;
    P.linear6 = close_group(F, P.input.generators, false);
    std::vector<Mat> gens20;
    for (auto& g : P.input.generators) gens20.push_back(induced_wedge3(F, g));
    WedgeClassData wcd = wedge_class_data(F, P.linear6);
    auto weights = isotypic_weights(P.input.ctx, wcd);
    Mat P1 = isotypic_projector(F, wcd, weights);
    std::vector<uint64_t> v1(P1.a.begin(), P1.a.begin() + 20);
    P.lagrangian = invariant_lagrangian(F, gens20, v1);
    P.mat1 = symmetric_matrix(F, P.lagrangian);
    P.Y = epw_polynomial(F, lambda_matrix(F, P.mat1), seed, rng);
    P.Y.group_name = P.input.name;

    // determine the action convention: the sextic must be invariant under
    // either the printed matrices or their transposes
    bool plain_ok = true;
    std::vector<uint64_t> scal;
    try {
        for (auto& g : P.input.generators) scal.push_back(invariance_check(F, P.Y.f, g));
    } catch (const Error&) {
        plain_ok = false;
        scal.clear();
    }
    if (!plain_ok) {
        for (auto& g : P.input.generators)
            scal.push_back(invariance_check(F, P.Y.f, mat_transpose(g)));
        P.transposed_action = true;
    }
    P.invariance_scalars = scal;
    std::vector<Mat> geom_gens;
    for (auto& g : P.input.generators)
        geom_gens.push_back(P.transposed_action ? mat_transpose(g) : g);
    P.geometric = close_group(F, geom_gens, true);
    return ptr;
}

MultiPoly restrict_sextic(const Fp& F, const EpwSextic& Y, const Mat& param) {
    return restrict_to_subspace(F, Y.f, param);
}

SolveResult singular_points_on_subspace(const Fp& F, const EpwSextic& Y, const Mat& param,
                                        Prng& rng) {
    std::vector<MultiPoly> gens;
    gens.push_back(restrict_to_subspace(F, Y.f, param));
    for (auto& d : Y.partials) gens.push_back(restrict_to_subspace(F, d, param));
    int k1 = param.rows;
    if (k1 == 4) return space_system_solve(F, gens, rng);
    if (k1 == 3) return plane_system_solve(F, gens, rng);
    throw Error("DimMismatch", "singular_points_on_subspace expects a P^2 or P^3");
}

QuadricQuarticSplit quadric_split(const Fp& F, const EpwSextic& Y, const Mat& p3, Prng& rng) {
    QuadricQuarticSplit S;
    S.p3 = p3;
    S.restricted = restrict_sextic(F, Y, p3);
    if (S.restricted.total_degree() != 6)
        throw Error("NoQuadric", "restriction is not a sextic surface");

    // sample the singular curve by random plane sections; clusters of degree
    // k contribute k geometric points, and >= 12 on the curve pin the quadric
    std::vector<PointCluster> samples;
    std::vector<ClusterKey> keys;
    int geom_points = 0;
    std::vector<long> plane_counts;
    static const int nq = 10;
    std::vector<std::array<int, 4>> qmons;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            std::array<int, 4> e{};
            e[a] += 1;
            e[b] += 1;
            qmons.push_back(e);
        }
    std::vector<std::vector<uint64_t>> rows;
    auto add_plane = [&]() {
        Mat plane3 = random_subspace(F, 3, 4, rng);  // P^2 inside the P^3
        Mat plane6 = mat_mul(F, plane3, p3);         // the same plane inside P^5
        SolveResult sr = singular_points_on_subspace(F, Y, plane6, rng);
        if (sr.dim != 0) return;
        plane_counts.push_back(sr.distinct);
        for (auto& sp : sr.points) {
            FqK kq(*sp.pt.field);
            std::vector<FqK::Elem> c3(4, kq.zero());
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (!plane3.at(j, i)) continue;
                    FqK::Elem t = sp.pt.coords[j];
                    for (auto& v : t) v = F.mul(v, plane3.at(j, i));
                    c3[i] = kq.add(c3[i], t);
                }
            normalize_projective(kq, c3);
            PointCluster pc;
            pc.field = sp.pt.field;
            pc.coords = c3;
            ClusterKey ck = cluster_key(F, pc);
            bool dup = false;
            for (auto& kk : keys)
                if (kk == ck) dup = true;
            if (dup) continue;
            keys.push_back(ck);
            // rows of the quadric system: one per field component
            FqK kq2(*pc.field);
            std::vector<FqK::Elem> vals;
            for (auto& e : qmons) {
                FqK::Elem t = kq2.one();
                for (int v = 0; v < 4; ++v)
                    for (int rep = 0; rep < e[v]; ++rep) t = kq2.mul(t, pc.coords[v]);
                vals.push_back(t);
            }
            for (int comp = 0; comp < pc.field->k; ++comp) {
                std::vector<uint64_t> row(nq);
                for (int j = 0; j < nq; ++j) row[j] = vals[j][comp];
                rows.push_back(row);
            }
            samples.push_back(pc);
            geom_points += pc.degree();
        }
    };
    Mat ker(0, nq);
    int planes_used = 0;
    while (planes_used < 10) {
        add_plane();
        ++planes_used;
        if (planes_used < 3 || geom_points < 12) continue;
        Mat sys((int)rows.size(), nq);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < nq; ++j) sys.at((int)i, j) = rows[i][j];
        ker = mat_kernel(F, sys);
        if (ker.rows == 1) break;
    }
    if (ker.rows != 1)
        throw Error("NoQuadric",
                    "quadric system has kernel of rank " + std::to_string(ker.rows));
    if (!plane_counts.empty()) S.curve_degree = (int)plane_counts[0];
    S.quadric = MultiPoly::zero(4);
    for (int j = 0; j < nq; ++j) {
        if (!ker.at(0, j)) continue;
        Mono m;
        for (int v = 0; v < 4; ++v) m.e[v] = (uint16_t)qmons[j][v];
        S.quadric.terms.push_back({m, ker.at(0, j)});
    }
    S.quadric.normalize(F);

    S.quartic = mp_exact_divide(F, S.restricted, S.quadric);
    if (S.quartic.total_degree() != 4)
        throw Error("DivisionFailed", "cofactor of the quadric is not a quartic");

    // nodes of the quartic
    std::vector<MultiPoly> ksys{S.quartic};
    for (int v = 0; v < 4; ++v) ksys.push_back(mp_derivative(F, S.quartic, v));
    SolveResult nodes = space_system_solve(F, ksys, rng);
    if (nodes.dim == 0) {
        S.node_count = nodes.distinct;
        for (auto& sp : nodes.points) S.nodes.push_back(sp.pt);
    }
    return S;
}

SingLocusReport sing_locus_degree(const Fp& F, const EpwSextic& Y, Prng& rng) {
    SingLocusReport rep;
    for (int s = 0; s < 3; ++s) {
        Mat slice = random_subspace(F, 4, 6, rng);
        SolveResult sr = singular_points_on_subspace(F, Y, slice, rng);
        if (sr.dim != 0) {
            rep.dim = 2 + sr.dim;  // the slice met positive-dimensionally
            rep.non_reduced = true;
            rep.slice_counts.push_back(sr.slice_degree);
            continue;
        }
        rep.slice_counts.push_back(sr.distinct);
        if (sr.with_mult != sr.distinct) rep.non_reduced = true;
    }
    rep.dim = rep.dim ? rep.dim : 2;
    for (size_t i = 1; i < rep.slice_counts.size(); ++i)
        if (rep.slice_counts[i] != rep.slice_counts[0])
            throw Error("SliceDisagreement",
                        "slice counts " + std::to_string(rep.slice_counts[0]) + " vs " +
                            std::to_string(rep.slice_counts[i]));
    rep.degree = rep.slice_counts.empty() ? 0 : rep.slice_counts[0];
    return rep;
}

}  // namespace epwsym
