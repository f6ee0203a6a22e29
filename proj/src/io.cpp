#include "epwsym/io.hpp"

#include <fstream>

namespace epwsym {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("InputError", "cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("InputError", "cannot write " + path);
    out << j.dump(1) << "\n";
}

std::string data_dir() {
    const char* env = std::getenv("EPWSYM_DATA");
    if (env) return env;
    return std::string(EPWSYM_SOURCE_DIR) + "/data";
}

GroupInput load_group_input(const Json& j, std::optional<uint64_t> prime_override) {
    uint64_t p = j.at("prime").get<uint64_t>();
    uint64_t n = j.at("root_order").get<uint64_t>();
    if (prime_override && *prime_override != p) {
        // replay at a different characteristic: re-derive a root there
        p = *prime_override;
    }
    FieldCtx ctx = [&] {
        if (!prime_override && j.contains("root"))
            return validate_root(p, n, j.at("root").get<int64_t>());
        return find_root(p, n);
    }();
    GroupInput gi{ctx, {}, j.value("name", "")};
    for (auto& jm : j.at("generators")) {
        if (jm.size() != 6) throw Error("InputError", "generators must be 6x6");
        Mat m(6, 6);
        for (int r = 0; r < 6; ++r) {
            if (jm[r].size() != 6) throw Error("InputError", "generators must be 6x6");
            for (int c = 0; c < 6; ++c) {
                uint64_t v = 0, zp = 1;
                for (auto& coeff : jm[r][c]) {
                    int64_t cv = coeff.get<int64_t>();
                    v = ctx.f.add(v, ctx.f.mul(ctx.f.from_int(cv), zp));
                    zp = ctx.f.mul(zp, ctx.zeta);
                }
                m.at(r, c) = v;
            }
        }
        gi.generators.push_back(std::move(m));
    }
    return gi;
}

GroupInput load_group_file(const std::string& path, std::optional<uint64_t> prime_override) {
    return load_group_input(read_json_file(path), prime_override);
}

}  // namespace epwsym
