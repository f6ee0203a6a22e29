#pragma once

#include <optional>
#include <unordered_map>

#include "epwsym/solve.hpp"

namespace epwsym {

// Fully enumerated matrix group over GF(p).  In projective mode every element
// is canonicalized by scaling its first nonzero entry to 1 and the scalar
// subgroup that was quotiented out is reported in scalar_subgroup.
struct MatGroup {
    const Fp* F = nullptr;
    int dim = 0;
    bool projective = false;
    std::vector<Mat> gens;   // canonical forms
    std::vector<Mat> elems;  // canonical forms, elems[0] == identity
    // linear lifts: products of the original generator matrices, projecting to
    // elems[i].  Finite-order bookkeeping (eigenvalues) must use these, not
    // the canonical rescalings, so that eigenvalues stay in the prime field.
    std::vector<Mat> lifts;
    std::vector<uint64_t> scalar_subgroup;  // scalars merged into each element (projective)

    std::unordered_map<uint64_t, std::vector<int>> index_;

    size_t order() const { return elems.size(); }
    const Mat& identity_elem() const { return elems[0]; }

    int find(const Mat& canonical) const;
    int mul(int a, int b) const;  // index of elems[a]*elems[b]
    int inv(int a) const;
    Mat canonical(Mat m) const;
    const Mat& lift(int i) const { return projective ? lifts[i] : elems[i]; }
};

uint64_t mat_hash(const Mat& m);

// Breadth-first closure from generators.  Throws Explosion beyond the cap.
MatGroup close_group(const Fp& F, const std::vector<Mat>& gens, bool projective,
                     size_t cap = 1000000);

struct ConjClass {
    int rep;                   // element index of the representative
    std::vector<int> members;  // element indices
    uint64_t element_order;
};

struct ConjClassTable {
    std::vector<ConjClass> classes;
    std::vector<int> class_of;    // element index -> class id
    std::vector<int> witness_of;  // element index w with elems[w] * rep * elems[w]^-1 = elem
};

ConjClassTable conjugacy_classes(const MatGroup& G);

uint64_t element_order(const MatGroup& G, int idx);

// Multiset of orders of nontrivial elements.
std::map<uint64_t, long> element_orders(const MatGroup& G);

// Subgroups are sorted index vectors into G.elems.
using Subgroup = std::vector<int>;

Subgroup subgroup_closure(const MatGroup& G, const std::vector<int>& generators);
Subgroup whole_subgroup(const MatGroup& G);

// All subgroups of the subgroup H (|H| small), via closures of <=3 generators.
std::vector<Subgroup> all_subgroups(const MatGroup& G, const Subgroup& H);

// Conjugacy of subgroups inside G; returns a conjugating element index.
std::optional<int> conjugate_subgroup_witness(const MatGroup& G, const Subgroup& A,
                                              const Subgroup& B);

// Centralizer of an element, as a subgroup.
Subgroup centralizer(const MatGroup& G, int x);

// Fast subgroup-conjugacy test using class witnesses: candidates for g are a
// coset of the centralizer of a representative element.
std::optional<int> conjugate_subgroup_fast(const MatGroup& G, const ConjClassTable& T,
                                           const Subgroup& A, const Subgroup& B);

Subgroup conjugated_subgroup(const MatGroup& G, const Subgroup& A, int g);

// Isomorphism-invariant fingerprint used for small-group identification.
struct GroupFingerprint {
    uint64_t order = 0;
    std::vector<std::pair<uint64_t, long>> order_histogram;  // element order -> count
    uint64_t abelianization_order = 0;
    uint64_t abelianization_exponent = 0;
    uint64_t center_order = 0;
    uint64_t derived_order = 0;
    long class_count = 0;

    bool operator==(const GroupFingerprint& o) const = default;
    bool operator<(const GroupFingerprint& o) const {
        return std::tie(order, order_histogram, abelianization_order, abelianization_exponent,
                        center_order, derived_order, class_count) <
               std::tie(o.order, o.order_histogram, o.abelianization_order,
                        o.abelianization_exponent, o.center_order, o.derived_order,
                        o.class_count);
    }
};

GroupFingerprint fingerprint_subgroup(const MatGroup& G, const Subgroup& H);
GroupFingerprint fingerprint_group(const MatGroup& G);

// Orbit/stabilizer machinery on projective points over extension fields.
struct ProjPoint {
    std::shared_ptr<FqCtx> field;
    std::vector<FqK::Elem> coords;  // normalized
};

ProjPoint act_point(const MatGroup& G, int g, const ProjPoint& pt);
bool same_point(const ProjPoint& a, const ProjPoint& b);
Subgroup stabilizer(const MatGroup& G, const ProjPoint& pt);
std::vector<ProjPoint> orbit_of_point(const MatGroup& G, const ProjPoint& pt);
long orbit_size(const MatGroup& G, const ProjPoint& pt);

// Representatives of the G-classes of subgroups generated by two involutions.
struct TwoInvolutionClass {
    Subgroup subgroup;
    GroupFingerprint fingerprint;
};
std::vector<TwoInvolutionClass> two_involution_subgroups(const MatGroup& G);

// Small-group catalog: fingerprint -> (order, GAP index, name).
struct CatalogEntry {
    std::string name;
    uint64_t order;
    int gap_index;
    GroupFingerprint fingerprint;
};

struct Catalog {
    std::vector<CatalogEntry> entries;

    // (order, gap index) or nullopt.
    std::optional<std::pair<uint64_t, int>> identify(const GroupFingerprint& fp) const;
    const CatalogEntry* lookup(const GroupFingerprint& fp) const;
    const CatalogEntry* by_id(uint64_t order, int gap_index) const;
};

// Built from standard concrete realizations of every group appearing in the
// paper's tables; fingerprints are field-independent.
Catalog build_catalog(const FieldCtx& ctx);

// Concrete auxiliary groups used by the b2 checks (abstract presentations).
MatGroup make_permutation_group(const Fp& F, int degree,
                                const std::vector<std::vector<std::vector<int>>>& gens_cycles);
MatGroup make_A7(const Fp& F);
MatGroup make_L2_11();   // over GF(11), projective
MatGroup make_M10(const Fp& F);
MatGroup make_Z2xL2_7();  // over GF(2)
MatGroup make_Z2_4_S5();  // over GF(2)

long involution_class_count(const MatGroup& G);

}  // namespace epwsym
