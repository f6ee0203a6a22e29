#pragma once

#include "epwsym/epw.hpp"

namespace epwsym {

// Maximal projective subspaces on which every element of H acts by a scalar,
// as reduced-echelon parametrizations, sorted by descending dimension.
std::vector<Mat> invariant_subspaces(const Fp& F, const MatGroup& G, const Subgroup& H,
                                     Prng& rng);

// Data of one involution needed by the lifting rules: the invariant P^3 and
// P^1 and the quadric component of Y inside the P^3.
struct InvolutionGeometry {
    Mat p3;  // 4 x 6
    Mat p1;  // 2 x 6
    QuadricQuarticSplit split;
};

// One component of an intersection with Y or Y^sing.
struct Component {
    int dim = 0;       // 0 points, 1 curve, 2 surface
    int degree = 0;    // for dim >= 1
    long count = 0;    // for dim == 0: distinct geometric points
    long count_mult = 0;  // scheme-theoretic count where available
    bool unsplit = false;  // degree reported without a component split
};

enum class FiberBehavior { Branch, FixedPair, SwappedPair };

struct SpecialPoint {
    PointCluster pt;  // P^5 coordinates
    PointClass cls = PointClass::Regular;
    Subgroup stab_y;
    GroupFingerprint stab_y_fp;
    // lift data
    bool lifted = false;
    FiberBehavior fiber = FiberBehavior::Branch;
    Subgroup stab_x;
    GroupFingerprint stab_x_fp;
    std::string rule;  // provenance of the lifting decision
    bool on_fixed_surface = false;  // lies on a quadric of an involution in its stabilizer
};

struct CensusRow {
    Subgroup subgroup;
    GroupFingerprint fingerprint;
    uint64_t order = 0;
    int gap_order = 0;
    int gap_index = -1;
    std::string name = "?";
    std::vector<int> fix_p5_dims;
    std::vector<Component> fix_y;
    std::vector<Component> fix_y_sing;
    std::vector<int> point_ids;  // indices into Census::points
};

struct Census {
    std::vector<CensusRow> rows;
    std::vector<SpecialPoint> points;  // deduplicated isolated points
    long quartic_nodes = 0;            // per involution class
};

class FixedLocusAnalyzer {
  public:
    FixedLocusAnalyzer(const EpwPipeline& P, const Catalog& cat, uint64_t seed)
        : P_(P), cat_(cat), rng_(seed ^ 0x9e3779b9ull) {}

    Census census();

    // involution geometry, cached per element index (transported from the
    // class representative)
    const InvolutionGeometry& involution_geometry(int invol_idx);

    // Lifting of a special point to the double cover; fills the lift fields.
    void lift_point(SpecialPoint& sp);

    // G-orbit merge of the lifted points: (stab_x name, X-orbit count).
    struct OrbitReport {
        std::map<std::string, long> surface_counts;   // points on the singular surface
        std::map<std::string, long> isolated_counts;  // isolated points, keyed by order
        std::vector<std::string> notes;
    };
    OrbitReport special_orbits(Census& census);

    // Per-element fixed-point counts on the cover (natural-action checks).
    long fixed_points_on_cover(int elem_idx);

    const ConjClassTable& classes();

  private:
    const EpwPipeline& P_;
    const Catalog& cat_;
    Prng rng_;
    std::optional<ConjClassTable> classes_;
    std::map<int, InvolutionGeometry> invol_cache_;
    std::map<int, int> invol_rep_of_;  // involution index -> class rep index

    bool same_orbit(const PointCluster& a, const PointCluster& b);
    long frobenius_orbit_split(const PointCluster& pt);
    std::vector<int> minimal_generators(const Subgroup& H);
    bool point_in_subspace(const Mat& basis, const PointCluster& pt);
    bool point_on_quadric(const InvolutionGeometry& ig, const PointCluster& pt, int witness);
    friend struct CensusBuilder;
};

}  // namespace epwsym
