#pragma once

#include "twapprox/graph.hpp"
#include "twapprox/record_table.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>

namespace twapprox {

/// Size guards; TWAPPROX_GUARD_MAX overrides both when set.
std::int32_t oracle_vertex_guard();  // default 18
std::int32_t oracle_edge_guard();    // default 20

/// Minimum capacitated vertex cover by subset enumeration, each subset
/// checked with a bipartite flow. nullopt when infeasible.
std::optional<std::int32_t> cvc_opt_brute(const Graph& g, std::span<const std::int64_t> capacity);

/// Independent cross-check for small n: subsets plus augmenting-path
/// b-matching of edges into the subset.
std::optional<std::int32_t> cvc_opt_matching(const Graph& g, std::span<const std::int64_t> capacity);

std::int32_t tss_opt_brute(const Graph& g, std::span<const std::int64_t> t);
std::int32_t vds_opt_brute(const Graph& g, std::span<const std::int64_t> t);

/// Record set of node a straight from its definition: every orientation of
/// G_a with Y-capacities respected, minimum covering count per outdegree
/// vector on the bag (bag order).
std::map<RecordKey, std::int32_t> enumerate_records(const Graph& g, const NiceTreeDecomposition& ntd,
                                                    std::span<const std::int64_t> capacity, NodeId a);

} // namespace twapprox
