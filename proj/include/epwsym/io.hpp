#pragma once

#include <json.hpp>

#include "epwsym/group.hpp"

namespace epwsym {

using Json = nlohmann::json;

// Generator ingestion: { "prime", "root_order", "root" (optional),
// "generators": [[[int-coeff-list]x6]x6]... }.  Matrix entries are integer
// polynomials in the declared root of unity (entry = sum coeff[i] * zeta^i).
struct GroupInput {
    FieldCtx ctx;
    std::vector<Mat> generators;
    std::string name;
};

GroupInput load_group_input(const Json& j, std::optional<uint64_t> prime_override = {});
GroupInput load_group_file(const std::string& path, std::optional<uint64_t> prime_override = {});

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Repository data directory (golden tables, shipped inputs).
std::string data_dir();

}  // namespace epwsym
