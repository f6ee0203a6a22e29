#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "epwsym/io.hpp"

using namespace epwsym;

static const GroupInput& l34_input() {
    static GroupInput gi = load_group_file(data_dir() + "/l3_4.json");
    return gi;
}

static const MatGroup& l34_projective() {
    static MatGroup G = close_group(l34_input().ctx.f, l34_input().generators, true);
    return G;
}

TEST_CASE("L3(4) closure: order 20160, scalar subgroup reported") {
    const MatGroup& G = l34_projective();
    CHECK(G.order() == 20160);
    // the printed matrices may generate a central extension; the projective
    // engine reports the scalars it merged
    MESSAGE("scalar subgroup size: ", G.scalar_subgroup.size());
    CHECK(G.scalar_subgroup.size() >= 1);
    MatGroup single = close_group(l34_input().ctx.f, {l34_input().generators[0]}, true);
    CHECK(single.order() == 2);
}

TEST_CASE("close is idempotent") {
    const MatGroup& G = l34_projective();
    // products of random pairs never leave the enumerated set
    Prng rng(2);
    for (int t = 0; t < 500; ++t) {
        int a = (int)rng.below(G.order()), b = (int)rng.below(G.order());
        CHECK(G.mul(a, b) >= 0);
    }
    // full idempotence on a small subgroup: closing the enumerated D10 returns it
    auto classes = two_involution_subgroups(G);
    for (auto& c : classes) {
        std::vector<Mat> mats;
        for (int i : c.subgroup) mats.push_back(G.elems[i]);
        MatGroup H = close_group(*G.F, mats, true);
        CHECK(H.order() == c.subgroup.size());
    }
}

TEST_CASE("L3(4) classes: 315 involutions in one class, orders {2,3,4,5,7}, three order-4 classes") {
    const MatGroup& G = l34_projective();
    ConjClassTable T = conjugacy_classes(G);
    long invol_classes = 0, invol_count = 0, order4_classes = 0;
    std::set<uint64_t> orders;
    size_t total = 0;
    for (auto& c : T.classes) {
        total += c.members.size();
        if (c.element_order > 1) orders.insert(c.element_order);
        if (c.element_order == 2) {
            ++invol_classes;
            invol_count += (long)c.members.size();
        }
        if (c.element_order == 4) ++order4_classes;
        CHECK(G.order() % c.members.size() == 0);
    }
    CHECK(total == G.order());
    CHECK(invol_classes == 1);
    CHECK(invol_count == 315);
    CHECK(order4_classes == 3);
    CHECK(orders == std::set<uint64_t>{2, 3, 4, 5, 7});
    for (auto& c : T.classes) {
        long cent = 0;
        for (size_t g = 0; g < G.order(); ++g)
            if (G.mul((int)g, c.rep) == G.mul(c.rep, (int)g)) ++cent;
        CHECK((uint64_t)cent * c.members.size() == G.order());
    }
    Prng rng(5);
    for (int t = 0; t < 50; ++t) {
        int x = (int)rng.below(G.order());
        int cid = T.class_of[x];
        int w = T.witness_of[x];
        CHECK(G.mul(w, G.mul(T.classes[cid].rep, G.inv(w))) == x);
    }
}

TEST_CASE("two-involution subgroups are Z2xZ2, S3, D8, D10") {
    const MatGroup& G = l34_projective();
    auto classes = two_involution_subgroups(G);
    std::set<uint64_t> sizes;
    for (auto& c : classes) sizes.insert(c.fingerprint.order);
    CHECK(sizes == std::set<uint64_t>{4, 6, 8, 10});
    Catalog cat = build_catalog(l34_input().ctx);
    std::set<std::string> names;
    for (auto& c : classes) {
        auto* e = cat.lookup(c.fingerprint);
        REQUIRE(e != nullptr);
        names.insert(e->name);
    }
    CHECK(names == std::set<std::string>{"Z2xZ2", "S3", "D8", "D10"});
}

TEST_CASE("orbit-stabilizer identity on random points") {
    const MatGroup& G = l34_projective();
    Prng rng(11);
    auto field = fp_as_fq(*G.F);
    FqK kq(*field);
    for (int t = 0; t < 20; ++t) {
        ProjPoint pt{field, {}};
        for (int i = 0; i < 6; ++i) pt.coords.push_back(kq.from_fp(rng.field(*G.F)));
        if (std::all_of(pt.coords.begin(), pt.coords.end(),
                        [&](auto& e) { return kq.is_zero(e); }))
            continue;
        normalize_projective(kq, pt.coords);
        Subgroup stab = stabilizer(G, pt);
        long orb = orbit_size(G, pt);
        CHECK((uint64_t)orb * stab.size() == G.order());
    }
}

TEST_CASE("catalog orders and identities") {
    Catalog cat = build_catalog(l34_input().ctx);
    CHECK(cat.entries.size() == 26);
    auto expect = [&](const std::string& name, uint64_t order, int gap) {
        bool found = false;
        for (auto& e : cat.entries)
            if (e.name == name) {
                found = true;
                CHECK(e.order == order);
                CHECK(e.gap_index == gap);
            }
        CHECK(found);
    };
    expect("1", 1, 1);
    expect("Z2", 2, 1);
    expect("D8", 8, 3);
    expect("Q8", 8, 4);
    expect("D10", 10, 1);
    expect("Z3:Z4", 12, 1);
    expect("A4", 12, 3);
    expect("(Z4xZ2):Z2", 16, 3);
    expect("Z2xD8", 16, 11);
    expect("Z2xQ8", 16, 12);
    expect("(Z6xZ2):Z2", 24, 8);
    expect("(Z4xZ4):Z2", 32, 31);
    expect("A5", 60, 5);
    // stable across the replay prime
    FieldCtx alt = find_root(66361, 420);
    Catalog cat2 = build_catalog(alt);
    REQUIRE(cat2.entries.size() == cat.entries.size());
    for (size_t i = 0; i < cat.entries.size(); ++i)
        CHECK(cat.entries[i].fingerprint == cat2.entries[i].fingerprint);
}

TEST_CASE("(32,31) invariants: exponent 4, eleven involutions") {
    Catalog cat = build_catalog(l34_input().ctx);
    auto* e = cat.by_id(32, 31);
    REQUIRE(e != nullptr);
    std::map<uint64_t, long> hist(e->fingerprint.order_histogram.begin(),
                                  e->fingerprint.order_histogram.end());
    CHECK(hist[2] == 11);
    CHECK(hist[4] == 20);
    CHECK(e->fingerprint.center_order == 4);
    CHECK(e->fingerprint.abelianization_order == 8);
    CHECK(e->fingerprint.abelianization_exponent == 2);
}

TEST_CASE("abstract groups for the b2 checks") {
    static const Fp F2(2);
    SUBCASE("A7") {
        MatGroup g = make_A7(F2);
        CHECK(g.order() == 2520);
        CHECK(involution_class_count(g) == 1);
    }
    SUBCASE("L2(11)") {
        MatGroup g = make_L2_11();
        CHECK(g.order() == 660);
        CHECK(involution_class_count(g) == 1);
    }
    SUBCASE("M10") {
        MatGroup g = make_M10(F2);
        CHECK(g.order() == 720);
        CHECK(involution_class_count(g) == 1);
    }
    SUBCASE("Z2 x L2(7)") {
        MatGroup g = make_Z2xL2_7();
        CHECK(g.order() == 336);
        CHECK(involution_class_count(g) == 3);
    }
    SUBCASE("Z2^4 : S5") {
        MatGroup g = make_Z2_4_S5();
        CHECK(g.order() == 1920);
        CHECK(involution_class_count(g) == 5);
    }
}
