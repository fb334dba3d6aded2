#pragma once

#include "twapprox/graph.hpp"
#include "twapprox/record_table.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace twapprox {

/// Decides (d_t, |Y_a|) ∈ R_a with one max-flow: the source feeds every edge
/// of G_a one unit, the edge passes it to the endpoint that covers it, a bag
/// vertex u may absorb |N(u) ∩ Y_a| - d_t(u) units and a forgotten vertex its
/// capacity. Feasible iff the flow saturates all edges. `d_t` is in bag order.
bool feasibility_test(const Graph& g, const NiceTreeDecomposition& ntd, std::span<const std::int64_t> capacity,
                      NodeId a, const RecordKey& d_t);

/// Orientation of G_a witnessing the test, with bag outdegrees lowered to
/// exactly d_t. nullopt when the test fails.
std::optional<Orientation> feasibility_orientation(const Graph& g, const NiceTreeDecomposition& ntd,
                                                   std::span<const std::int64_t> capacity, NodeId a,
                                                   const RecordKey& d_t);

/// Flips edges u -> y (y forgotten) back into u until every bag vertex u has
/// outdegree target[u] in G_a. Needs target <= current outdegree pointwise.
/// Never raises a forgotten vertex's indegree.
void lower_outdegrees(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, Orientation& o,
                      const RecordKey& target);

/// Outdegrees of the bag vertices of a inside G_a, in bag order.
RecordKey bag_outdegrees(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, const Orientation& o);

} // namespace twapprox
