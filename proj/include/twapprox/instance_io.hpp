#pragma once

#include "twapprox/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace twapprox {

/// Line-oriented instance format:
///   p <cvc|tss|vds> <n> <m>
///   w <v> <weight>      (missing vertices default to weight 0)
///   e <u> <v>
/// Lines starting with `c` are comments. Throws InputError on malformed input.
WeightedInstance read_instance(std::istream& in);
WeightedInstance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const WeightedInstance& inst);

/// FNV-1a over the canonical serialization; stable across runs and platforms.
std::uint64_t instance_hash(const WeightedInstance& inst);
std::string hex64(std::uint64_t h);

} // namespace twapprox
