#pragma once

#include <set>

#include "epwsym/termin.hpp"

namespace epwsym {

// The Cox-ring data of the Z2xQ8 terminalisation: twelve generators (ten
// degree-2 polynomials times monomials in t1, t2, plus the two inverse
// squares), the 21 relations, the torus weight matrix and the finite-part
// sign action.
struct CoxData {
    // generators 1..10 as polynomials in (x,y,z,w,t1,t2) = variables 0..5;
    // generators 11, 12 are t1^-2, t2^-2 and carried symbolically
    std::vector<MultiPoly> gens;
    // relations: list of (coefficient, monomial in v_1..v_10 as index list)
    struct Term {
        int64_t coeff;
        std::vector<int> vs;  // 1-based generator indices
    };
    std::vector<std::vector<Term>> relations;
    // torus weights, 2 x 12
    std::array<std::array<int, 12>, 2> D;
    // sign exponents of the two K-generators on each coordinate
    std::array<std::array<int, 12>, 2> K_signs;
    // the printed 23 base patterns (translated to generator order)
    std::vector<std::vector<int>> base_patterns;
    // the six singular patterns named in the proof (translated)
    std::vector<std::vector<int>> singular_patterns;
};

CoxData cox_data(const FieldCtx& ctx);

// Valuations of the generators under the two junior classes of the Z2xQ8
// local representation; must reproduce the printed weight matrix.
std::array<std::array<int, 12>, 2> monomial_valuations(const FieldCtx& ctx, const CoxData& cd,
                                                       Prng& rng);

// Substitute the generator polynomials into each relation; all must vanish.
struct RelationCheck {
    int relation;  // 1-based
    bool ok;
};
std::vector<RelationCheck> verify_relations(const FieldCtx& ctx, const CoxData& cd);

// 2D chamber decomposition: movable cone as the intersection of the
// all-but-one-column cones, refined by their boundary rays.
struct ChamberReport {
    bool movable_full_dim = false;
    int chamber_count = 0;
    int chamber_of_11 = -1;  // index of the chamber containing (1,1), interior
};
ChamberReport chambers(const std::array<std::array<int, 12>, 2>& D, int ncols = 12);

// Support patterns of points of Spec R(W), by exhaustive stratified sampling
// of the parametrizing map (all vanishing patterns of the ten quadrics).
struct ZPatterns {
    std::set<std::vector<int>> patterns;                 // subsets of {1..10}
    std::map<std::vector<int>, std::string> witnesses;   // stratum description
    std::map<std::vector<int>, std::vector<uint64_t>> witness_points;  // (x,y,z,w)
};
ZPatterns z_patterns(const FieldCtx& ctx, Prng& rng);

bool z_membership(const ZPatterns& zp, std::vector<int> pattern);

struct SemistableReport {
    std::vector<std::vector<int>> patterns;       // all semistable, sorted
    std::vector<std::vector<int>> base_patterns;  // those without 11, 12
    bool extension_structure = false;             // each base extends by 11/12/both
    bool all_stable = false;
};
SemistableReport semistable_patterns(const FieldCtx& ctx, const CoxData& cd,
                                     const ZPatterns& zp);

// Finite-part isotropy: patterns admitting a torus-compensated fixed point of
// a nontrivial element of K, with the local type from the tangent signs.
struct IsotropyPoint {
    std::vector<int> pattern;
    int a, b;                  // the K element
    int s1_pow, s2_pow;        // compensating torus element as powers of i
    int stratum_dim;           // dim of (pattern-stratum cap Z) at the witness
    bool forces_11_12_zero;
    std::string local_type;    // "1/2(1,1,1,1)"
};
std::vector<IsotropyPoint> k_isotropy(const FieldCtx& ctx, const CoxData& cd,
                                      const ZPatterns& zp, Prng& rng);

// The D10 side: one junior class, a single chamber; the 77-orbit claim is
// not reproducible from printed data.
struct D10CoxSummary {
    long junior_count = 0;
    int chamber_count = 0;
    int generator_count = 0;  // invariant monomial generators found (degree <= 5)
    std::string not_reproducible;
};
D10CoxSummary d10_cox_summary(const FieldCtx& ctx, Prng& rng);

}  // namespace epwsym
