#pragma once

#include "cocompact/groups.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cocompact::cli {

using json = nlohmann::ordered_json;

struct Options {
    std::uint64_t seed = 1;
    std::optional<long> bound;
    std::optional<Rational> tol;
};

enum ExitCode { kOk = 0, kError = 1, kUsage = 2, kInternal = 3 };

struct Outcome {
    json output;
    int exit_code = kOk;
};

const std::vector<std::string>& subcommands();

// Never throws; errors come back as status "error" with the matching exit code.
Outcome run(const std::string& subcommand, const std::string& input, const Options& opt);

// Exposed for round-trip tests.
json lattice_to_json(const LatticeModel& lat);
LatticeModel lattice_from_json(const json& j);

} // namespace cocompact::cli
