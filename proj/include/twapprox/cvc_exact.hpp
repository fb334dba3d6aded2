#pragma once

#include "twapprox/graph.hpp"
#include "twapprox/record_table.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace twapprox {

/// |N(u) ∩ Y_alpha|.
std::int32_t y_degree(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a, Vertex u);
/// Edge ids of G_alpha, i.e. E[V_alpha] \ E[X_alpha]: exactly the edges with an
/// endpoint in Y_alpha.
std::vector<EdgeId> scope_edges(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a);

// Exact record-set rules. A key is the outdegree vector d over the bag.

RecordTable leaf_table(std::size_t cap = 0);
RecordTable introduce_table(const RecordTable& child, Vertex v, std::size_t cap = 0);
RecordTable join_table(const RecordTable& left, const RecordTable& right, std::size_t cap = 0);
/// Forgetting v at node a (child = table of a's child). Branch (1) keeps
/// records whose v-coordinate equals |N(v) ∩ Y_a|; branch (2) puts v in the
/// cover, enumerating the set Delta of bag neighbors it also covers.
RecordTable forget_table(const RecordTable& child, Vertex v, const Graph& g, const NiceTreeDecomposition& ntd,
                         NodeId a, std::span<const std::int64_t> capacity, std::size_t cap = 0);

struct ExactOptions {
    std::size_t table_cap = 5'000'000;  // entries per node; 0 disables
};

/// All node tables, indexed by node id.
std::vector<RecordTable> exact_tables(const Graph& g, const NiceTreeDecomposition& ntd,
                                      std::span<const std::int64_t> capacity, const ExactOptions& opt = {});

/// Orientation of G_a realizing the stored entry: outdegrees on X_a equal
/// the key, Y-capacities hold, and at most k vertices of Y_a are covering.
Orientation exact_witness(const Graph& g, const NiceTreeDecomposition& ntd, const std::vector<RecordTable>& tables,
                          NodeId a, std::int32_t entry);

struct ExactSolution {
    std::optional<std::int32_t> opt;  // nullopt: infeasible
    Orientation orientation;          // covers every edge when feasible
    VertexSet cover;
    std::vector<std::size_t> table_sizes;
};

/// Minimum capacitated vertex cover via the exact record-set DP. Throws
/// ResourceError when a table outgrows the cap.
ExactSolution solve_exact(const Graph& g, const NiceTreeDecomposition& ntd, std::span<const std::int64_t> capacity,
                          const ExactOptions& opt = {});

} // namespace twapprox
