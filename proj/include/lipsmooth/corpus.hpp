#pragma once

#include <cstdint>
#include <vector>

#include "lipsmooth/oracle.hpp"

namespace lipsmooth {

/// The test-function corpus for dimension d: every member is Lipschitz with
/// an exactly known constant. Randomized members (the distance point set)
/// derive from the seed; a fixed seed makes runs reproducible byte for byte.
std::vector<FunctionOracle> corpus(int d, std::uint64_t seed);

/// Member lookup by name; throws ConfigError when absent.
FunctionOracle corpus_member(int d, std::uint64_t seed, const std::string& name);

}  // namespace lipsmooth
