#pragma once

#include "epwsym/io.hpp"
#include "epwsym/wedge.hpp"

namespace epwsym {

// The EPW sextic with its gradient cache and provenance.
struct EpwSextic {
    MultiPoly f;                      // 6 variables (x,y,z,u,v,w), homogeneous of degree 6
    std::vector<MultiPoly> partials;  // the six degree-5 partials
    uint64_t prime = 0;
    uint64_t seed = 0;
    std::string group_name;
};

// The symmetric matrix of the Lagrangian in the split basis: rows are divided
// into their first and last 10 coordinates, the last 10 reordered into the
// dual basis by the sign vector (1,-1,1,-1,1,-1,1,1,-1,1); returns M2 * M1^-1
// and insists on symmetry.
Mat symmetric_matrix(const Fp& F, const Mat& lagrangian_rows);

// The linear family Lambda(y,z,u,v,w) = Mat1 - (M + M^T) in the affine chart
// x = 1, as affine-linear entries in 5 variables.
std::vector<std::vector<MultiPoly>> lambda_matrix(const Fp& F, const Mat& mat1);

// det(Lambda) via interpolation, homogenized by x to degree 6.
EpwSextic epw_polynomial(const Fp& F, const std::vector<std::vector<MultiPoly>>& lambda,
                         uint64_t seed, Prng& rng);

// f(g x) == lambda f(x); returns lambda or throws NotInvariant.
uint64_t invariance_check(const Fp& F, const MultiPoly& f, const Mat& g);

enum class PointClass { Off, Regular, Singular };
PointClass point_classify(const Fp& F, const EpwSextic& Y, const PointCluster& pt);

// Everything the rest of the pipeline needs, with the action convention that
// leaves the sextic invariant fixed once at construction.
struct EpwPipeline {
    GroupInput input;
    MatGroup linear6;     // linear closure of the action matrices
    MatGroup geometric;   // projective closure; acts on P^5 preserving Y
    Mat lagrangian;       // 10 x 20 reduced echelon rows
    Mat mat1;
    EpwSextic Y;
    std::vector<uint64_t> invariance_scalars;
    bool transposed_action = false;
    uint64_t seed = 0;
};

std::shared_ptr<EpwPipeline> build_epw_pipeline(const GroupInput& gi, uint64_t seed);

// Restriction to a parametrized subspace; zero means the subspace lies in Y.
MultiPoly restrict_sextic(const Fp& F, const EpwSextic& Y, const Mat& param);

// The quadric/quartic split of Y inside an involution-invariant P^3.
struct QuadricQuarticSplit {
    Mat p3;              // the 4 x 6 parametrization used
    MultiPoly restricted;  // Y restricted to the P^3 (4 variables)
    MultiPoly quadric;     // degree 2
    MultiPoly quartic;     // degree 4
    int curve_degree = 0;  // degree of the singular curve Q cap K
    std::vector<PointCluster> nodes;  // singular points of the quartic (P^3 coords)
    long node_count = 0;
};

QuadricQuarticSplit quadric_split(const Fp& F, const EpwSextic& Y, const Mat& p3, Prng& rng);

// Degree of the singular surface by three independent random P^3 slices.
struct SingLocusReport {
    int dim = 0;             // expected 2 (surface); deviations are flagged
    long degree = 0;         // the agreed slice count
    std::vector<long> slice_counts;
    bool non_reduced = false;
};
SingLocusReport sing_locus_degree(const Fp& F, const EpwSextic& Y, Prng& rng);

// Common zeros of Y and its gradient on a parametrized subspace of P^5,
// via the elimination machinery in the right ambient dimension.
SolveResult singular_points_on_subspace(const Fp& F, const EpwSextic& Y, const Mat& param,
                                        Prng& rng);

}  // namespace epwsym
