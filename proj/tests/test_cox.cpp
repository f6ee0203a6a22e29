#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epwsym/cox.hpp"

using namespace epwsym;

static FieldCtx ctx() { return validate_root(65521, 420, -18153); }

TEST_CASE("all 21 relations vanish identically; corrupted relation fails") {
    FieldCtx c = ctx();
    CoxData cd = cox_data(c);
    auto checks = verify_relations(c, cd);
    REQUIRE(checks.size() == 21);
    for (auto& ch : checks) CHECK(ch.ok);
    // negative control: flip a sign
    CoxData bad = cd;
    bad.relations[0][1].coeff = -bad.relations[0][1].coeff;
    auto bad_checks = verify_relations(c, bad);
    CHECK(!bad_checks[0].ok);
}

TEST_CASE("monomial valuations reproduce the printed weight matrix") {
    FieldCtx c = ctx();
    CoxData cd = cox_data(c);
    Prng rng(9);
    auto D = monomial_valuations(c, cd, rng);
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 12; ++j) CHECK(D[r][j] == cd.D[r][j]);
    // column 7 (first t1t2 generator) is (1,1); the t-columns are -2 blocks
    CHECK(D[0][6] == 1);
    CHECK(D[1][6] == 1);
    CHECK(D[0][10] == -2);
    CHECK(D[1][11] == -2);
    // nonnegative on the first ten columns
    for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 10; ++j) CHECK(D[r][j] >= 0);
}

TEST_CASE("the K-action signs agree with the local representation") {
    FieldCtx c = ctx();
    const Fp& F = c.f;
    CoxData cd = cox_data(c);
    Prng rng(11);
    LocalRep rep;
    for (auto& r : local_rep_catalog(c))
        if (r.name == "Z2xQ8") rep = r;
    JuniorReport jr = junior_classes(c, rep, rng);
    // elements acting diagonally (by signs) on the ten generator polynomials
    std::set<std::array<int, 10>> sign_vectors;
    for (size_t g = 0; g < jr.group.order(); ++g) {
        const Mat& M = jr.group.elems[g];
        std::vector<std::vector<uint64_t>> L(6, std::vector<uint64_t>(6, 0));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) L[i][j] = M.at(i, j);
        L[4][4] = 1;
        L[5][5] = 1;
        std::array<int, 10> sig{};
        bool diagonal = true;
        for (int gi = 0; gi < 10 && diagonal; ++gi) {
            MultiPoly moved = mp_compose_linear(F, cd.gens[gi], L, 6);
            if (mp_sub(F, moved, cd.gens[gi]).is_zero())
                sig[gi] = 0;
            else if (mp_add(F, moved, cd.gens[gi]).is_zero())
                sig[gi] = 1;
            else
                diagonal = false;
        }
        if (diagonal) sign_vectors.insert(sig);
    }
    // modulo the sign patterns a torus element can absorb ((s1^2, s2^2, s1s2)
    // on the column groups {1,3,5}, {2,4,6}, {7..10} with s1s2 real), the
    // vectors form exactly the Klein group generated by the transcribed rows
    std::vector<std::array<int, 10>> torus;
    for (int e1 = 0; e1 < 2; ++e1)
        for (int d = 0; d < 2; ++d) {
            std::array<int, 10> t{};
            for (int j : {0, 2, 4}) t[j] = e1;
            for (int j : {1, 3, 5}) t[j] = e1;
            for (int j : {6, 7, 8, 9}) t[j] = d;
            torus.push_back(t);
        }
    auto reduce = [&](std::array<int, 10> v) {
        std::array<int, 10> best = v;
        for (auto& t : torus) {
            std::array<int, 10> w;
            for (int j = 0; j < 10; ++j) w[j] = (v[j] + t[j]) % 2;
            if (w < best) best = w;
        }
        return best;
    };
    std::set<std::array<int, 10>> classes;
    for (auto& v : sign_vectors) classes.insert(reduce(v));
    std::array<int, 10> row_a{}, row_b{}, row_ab{}, zero{};
    for (int j = 0; j < 10; ++j) {
        row_a[j] = cd.K_signs[0][j];
        row_b[j] = cd.K_signs[1][j];
        row_ab[j] = (cd.K_signs[0][j] + cd.K_signs[1][j]) % 2;
    }
    CHECK(classes.size() == 4);
    CHECK(classes.count(reduce(zero)));
    CHECK(classes.count(reduce(row_a)));
    CHECK(classes.count(reduce(row_b)));
    CHECK(classes.count(reduce(row_ab)));
}

TEST_CASE("chamber decomposition: one chamber containing (1,1)") {
    FieldCtx c = ctx();
    CoxData cd = cox_data(c);
    ChamberReport rep = chambers(cd.D);
    CHECK(rep.movable_full_dim);
    CHECK(rep.chamber_count == 1);
    CHECK(rep.chamber_of_11 == 1);
}

TEST_CASE("92 semistable patterns with the 23 x 4 structure, all stable") {
    FieldCtx c = ctx();
    CoxData cd = cox_data(c);
    Prng rng(13);
    ZPatterns zp = z_patterns(c, rng);
    SemistableReport rep = semistable_patterns(c, cd, zp);
    MESSAGE("semistable: ", rep.patterns.size(), ", base: ", rep.base_patterns.size());
    CHECK(rep.patterns.size() == 92);
    CHECK(rep.base_patterns.size() == 23);
    CHECK(rep.extension_structure);
    CHECK(rep.all_stable);
    // the bases are exactly the printed 23 (translated)
    CHECK(rep.base_patterns == cd.base_patterns);
    // spot negative: {11,12} alone misses (1,1)
    bool has_t_only = false;
    for (auto& S : rep.patterns)
        if (S == std::vector<int>{11, 12}) has_t_only = true;
    CHECK(!has_t_only);
    // the trivially-acting torus element (-1,-1): all columns have even total
    for (int j = 0; j < 12; ++j) CHECK((cd.D[0][j] + cd.D[1][j]) % 2 == 0);
}

TEST_CASE("exactly six isotropy points, all of type 1/2(1,1,1,1), at the named patterns") {
    FieldCtx c = ctx();
    CoxData cd = cox_data(c);
    Prng rng(17);
    ZPatterns zp = z_patterns(c, rng);
    auto pts = k_isotropy(c, cd, zp, rng);
    std::set<std::vector<int>> got;
    for (auto& ip : pts) {
        got.insert(ip.pattern);
        CHECK(ip.local_type == "1/2(1,1,1,1)");
        CHECK(ip.forces_11_12_zero);
        CHECK(ip.stratum_dim == 2);
        MESSAGE("pattern a=", ip.a, " b=", ip.b, " s=(i^", ip.s1_pow, ",i^", ip.s2_pow,
                ") dim=", ip.stratum_dim);
    }
    CHECK(got.size() == 6);
    std::set<std::vector<int>> expect(cd.singular_patterns.begin(), cd.singular_patterns.end());
    CHECK(got == expect);
}

TEST_CASE("D10 side: one junior class, one chamber, unreproducible orbit count flagged") {
    FieldCtx c = ctx();
    Prng rng(19);
    auto s = d10_cox_summary(c, rng);
    CHECK(s.junior_count == 1);
    CHECK(s.chamber_count == 1);
    MESSAGE("D10 invariant monomial generators (deg <= 5): ", s.generator_count);
    CHECK(!s.not_reproducible.empty());
}
