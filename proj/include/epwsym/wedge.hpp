#pragma once

#include "epwsym/group.hpp"

namespace epwsym {

// Lexicographically ordered index triples of {0..5}; the shared basis of
// wedge^3 of the 6-dimensional space.  Position i pairs with position 19-i
// under the wedge product.
const std::array<std::array<int, 3>, 20>& wedge_triples();
int wedge_index(int i, int j, int k);

// Matrix of wedge^3(m) in the triple basis.
Mat induced_wedge3(const Fp& F, const Mat& m);

// The symplectic form (a,b) -> a wedge b / vol as a 20x20 matrix with
// entries 0, +-1.
Mat symplectic_form20(const Fp& F);

// Conjugacy data of the 20-dimensional linear image of the 6-dimensional
// linear group, with classes merged along the wedge kernel (cube-root
// scalars).  Class sums are taken in the image group.
struct WedgeClassData {
    int kernel_order = 1;
    std::vector<Mat> reps6;          // one 6-dim representative per merged class
    std::vector<long> sizes;         // merged class size in the image group
    std::vector<uint64_t> traces20;  // trace of the wedge image of the representative
    std::vector<uint64_t> orders;    // element order of the image (projective-20 order)
    std::vector<Mat> class_sums20;
};

WedgeClassData wedge_class_data(const Fp& F, const MatGroup& linear6);

// The trace-derived weighting of the projector: classes with positive
// rational trace enter with weight trace/2, except the two trace-1 classes
// which are weighted by -b and -B, b = z7 + z7^2 + z7^4, B = -1 - b.
// Returned as (class id, weight); throws ClassMismatch when the expected
// trace pattern is absent.
std::vector<std::pair<int, uint64_t>> isotypic_weights(const FieldCtx& ctx,
                                                       const WedgeClassData& wcd);

Mat isotypic_projector(const Fp& F, const WedgeClassData& wcd,
                       const std::vector<std::pair<int, uint64_t>>& weights);

// Row span of the orbit of a row vector under the images of the generators;
// returns the reduced echelon basis.
Mat orbit_row_span(const Fp& F, const std::vector<Mat>& gens20,
                   const std::vector<uint64_t>& seed);

// Orbit span of the seed with the Lagrangian checks: dimension exactly 10 and
// B * Omega * B^T = 0.  Throws WrongDimension / NotLagrangian.
Mat invariant_lagrangian(const Fp& F, const std::vector<Mat>& gens20,
                         const std::vector<uint64_t>& seed);

}  // namespace epwsym
