#pragma once

#include "epwsym/fixedlocus.hpp"

namespace epwsym {

// Exact rationals over int64 (the Lefschetz sums live in characteristic 0).
struct Rational {
    long long num = 0, den = 1;
    Rational() = default;
    Rational(long long n, long long d = 1);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_zero() const { return num == 0; }
};

// Elements of Q(zeta_7) in the power basis 1, z, ..., z^5 (z^6 reduced by the
// cyclotomic relation).
struct Cyc7 {
    std::array<Rational, 6> c{};
    static Cyc7 zero() { return {}; }
    static Cyc7 one();
    static Cyc7 zeta_pow(int k);  // zeta^k, k mod 7
    Cyc7 operator+(const Cyc7& o) const;
    Cyc7 operator-(const Cyc7& o) const;
    Cyc7 scale(const Rational& r) const;
    bool operator==(const Cyc7& o) const { return c == o.c; }
};

// 4x4 local representations over GF(p), realized through the distinguished
// root of unity.
struct LocalRep {
    std::string name;           // catalog name of the group
    std::vector<Mat> gens;      // 4x4 matrices over GF(p)
};

// The catalog of local representations from the quotient-singularity
// analysis: Z4, S3/D8/D10 (zeta = third/fourth/fifth root with the swap), and
// Z2xQ8.
std::vector<LocalRep> local_rep_catalog(const FieldCtx& ctx);

// Age of a finite-order element of SL4: diagonalize, write the eigenvalues as
// zeta_r^{a_i} with 0 <= a_i < r, return (sum a_i)/r.  Junior means age 1.
int age(const FieldCtx& ctx, const Mat& g, Prng& rng);

struct JuniorReport {
    long class_count = 0;
    long junior_count = 0;
    std::vector<int> junior_reps;  // element indices in the closed group
    MatGroup group;
    Subgroup junior_span;          // subgroup generated by the juniors
    bool juniors_generate = false;
};

JuniorReport junior_classes(const FieldCtx& ctx, const LocalRep& rep, Prng& rng);

// Cl(W) = Z^m + Ab(G/H)^dual: rank and torsion invariant factors.
struct ClassGroup {
    int rank = 0;
    std::vector<uint64_t> torsion;  // invariant factors of Ab(G/H)
};
ClassGroup class_group(const FieldCtx& ctx, const LocalRep& rep, Prng& rng);

// b2 of the terminalized quotient: rank of the invariant part plus the number
// of conjugacy classes with codimension-2 fixed locus.
long b2_quotient(long rk_invariant, long codim2_classes);

// The order-7 Lefschetz solver: coefficient tables c_j for a_1..a_3, b_1..b_3,
// summands -sum c_j zeta^j / 7; solve 3 = sum n_i a_i + m_i b_i over
// nonnegative integers with sum n + sum m = total.
struct LefschetzTable {
    std::array<std::array<int, 6>, 3> a_rows;
    std::array<std::array<int, 6>, 3> b_rows;
};
LefschetzTable paper_lefschetz_table();

struct LefschetzSolution {
    std::array<int, 3> n;
    std::array<int, 3> m;
};
std::vector<LefschetzSolution> lefschetz7_solve(const LefschetzTable& table, int target,
                                                int total_points);

// Symbolic quotient-singularity descriptor.
struct SingularityType {
    std::string kind;             // "cyclic", "named"
    int n = 0;                    // order for cyclic types
    std::array<int, 4> weights{}; // normalized weight tuple
    std::string name;             // for named types, e.g. "Z(5)"
    long count = 0;
    std::string provenance;

    std::string display() const;
    bool operator<(const SingularityType& o) const {
        return std::tie(kind, n, weights, name) < std::tie(o.kind, o.n, o.weights, o.name);
    }
};

// Lexicographically least presentation of 1/n(a,b,c,d) over generator powers
// and coordinate sort.
std::array<int, 4> normalize_weights(int n, std::array<int, 4> w);

// Terminalisation rules applied to the special-orbit census; each output
// carries the rule that produced it.
struct TerminalisationReport {
    std::vector<SingularityType> singularities;
    std::vector<std::string> resolved_notes;  // strata resolved without residue
    long half_points = 0;
};
TerminalisationReport terminalize(const std::map<std::string, long>& surface_counts,
                                  const std::map<std::string, long>& isolated_counts);

}  // namespace epwsym
