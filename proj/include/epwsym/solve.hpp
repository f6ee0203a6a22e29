#pragma once

#include <memory>

#include "epwsym/matrix.hpp"

namespace epwsym {

// A Frobenius orbit of projective points over a common extension field,
// represented by one point with normalized homogeneous coordinates.  A
// cluster of field degree k accounts for k geometric points.
struct PointCluster {
    std::shared_ptr<FqCtx> field;
    std::vector<FqK::Elem> coords;  // first nonzero coordinate scaled to 1
    int mult = 1;

    int degree() const { return field->k; }
};

inline std::shared_ptr<FqCtx> fp_as_fq(const Fp& F) {
    FpK k(F);
    return std::make_shared<FqCtx>(F, smallest_irreducible(k, 1));
}

inline PointCluster rational_point(const Fp& F, const std::vector<uint64_t>& coords) {
    PointCluster pc;
    pc.field = fp_as_fq(F);
    FqK kq(*pc.field);
    for (auto v : coords) pc.coords.push_back(kq.from_fp(v));
    return pc;
}

inline void normalize_projective(const FqK& kq, std::vector<FqK::Elem>& v) {
    for (auto& c : v)
        if (!kq.is_zero(c)) {
            FqK::Elem inv = kq.inv(c);
            for (auto& d : v) d = kq.mul(d, inv);
            return;
        }
    throw Error("ZeroVector", "cannot normalize the zero vector");
}

// Minimal polynomial of an element of GF(p^k) over GF(p).
inline FpPoly fq_minpoly(const Fp& F, const FqCtx& Q, const FqK::Elem& a) {
    FpK k(F);
    FqK kq(Q);
    Mat pw(Q.k + 1, Q.k);
    FqK::Elem cur = kq.one();
    for (int i = 0; i <= Q.k; ++i) {
        for (int j = 0; j < Q.k; ++j) pw.at(i, j) = cur[j];
        cur = kq.mul(cur, a);
    }
    // smallest linear relation among rows 0..d
    for (int d = 1; d <= Q.k; ++d) {
        Mat sub(d + 1, Q.k);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j < Q.k; ++j) sub.at(i, j) = pw.at(i, j);
        Mat ker = mat_kernel(F, mat_transpose(sub));
        if (ker.rows > 0) {
            // pick the kernel row with nonzero last coordinate
            for (int r = 0; r < ker.rows; ++r) {
                if (!ker.at(r, d)) continue;
                FpPoly mp;
                mp.c.resize(d + 1);
                uint64_t inv = F.inv(ker.at(r, d));
                for (int i = 0; i <= d; ++i) mp.c[i] = F.mul(ker.at(r, i), inv);
                mp.trim(k);
                return mp;
            }
        }
    }
    throw Error("Internal", "minimal polynomial not found");
}

// Signature identifying a geometric point cluster independently of its
// construction: field degree, coordinate minimal polynomials, and the minimal
// polynomials of two fixed random linear functionals.
struct ClusterKey {
    int degree;
    std::vector<std::vector<uint64_t>> coord_minpolys;
    std::vector<uint64_t> l1, l2;

    bool operator<(const ClusterKey& o) const {
        return std::tie(degree, coord_minpolys, l1, l2) <
               std::tie(o.degree, o.coord_minpolys, o.l1, o.l2);
    }
    bool operator==(const ClusterKey& o) const {
        return degree == o.degree && coord_minpolys == o.coord_minpolys && l1 == o.l1 &&
               l2 == o.l2;
    }
};

ClusterKey cluster_key(const Fp& F, const PointCluster& pc);

struct SolvedPoint {
    PointCluster pt;
    int mult;
};

struct SolveResult {
    int dim = -1;  // -1 empty, 0 finite, >=1 positive-dimensional
    std::vector<SolvedPoint> points;
    long distinct = 0;   // geometric point count (sum of cluster degrees)
    long with_mult = 0;  // sum of degree * multiplicity
    int slice_degree = 0;  // for dim>=1: point count of a generic linear slice
};

// Common zeros of two plane curves (homogeneous, 3 variables), by resultant
// elimination.  Throws CommonComponent / DegenerateChart per the contract.
SolveResult zero_dim_solve(const Fp& F, const MultiPoly& f, const MultiPoly& g, Prng& rng);

// Common zeros of a system of forms in 3 variables (a P^2 system).  Detects
// positive-dimensional loci and reports a generic slice degree for them.
SolveResult plane_system_solve(const Fp& F, const std::vector<MultiPoly>& gens, Prng& rng);

// Common zeros of a system of forms in 4 variables (a P^3 system).
SolveResult space_system_solve(const Fp& F, const std::vector<MultiPoly>& gens, Prng& rng);

// Restrict forms in n variables to a parametrized subspace: rows of param are
// the spanning points, new variables are the parameters.
MultiPoly restrict_to_subspace(const Fp& F, const MultiPoly& f, const Mat& param);

// Random full-rank (k+1) x n parametrization of a linear subspace of P^(n-1).
Mat random_subspace(const Fp& F, int k_plus_1, int n, Prng& rng);

}  // namespace epwsym
