#pragma once

#include "twapprox/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace twapprox {

using NodeId = std::int32_t;

/// General tree decomposition: an unrooted tree of bags. Node ids are 0-based;
/// the PACE reader/writer converts to and from 1-based bag ids.
struct TreeDecomposition {
    std::vector<VertexSet> bags;
    std::vector<std::pair<NodeId, NodeId>> tree_edges;

    NodeId size() const { return static_cast<NodeId>(bags.size()); }
    /// Max bag size minus one; -1 for an empty decomposition.
    std::int32_t width() const;
};

/// One violated decomposition property, with a human-readable witness.
struct TdViolation {
    enum class Kind { NotATree, UnknownVertex, VertexUncovered, EdgeUncovered, NotSubtree };
    Kind kind;
    std::string message;
};

/// Checks the tree shape and the covering/edge/subtree properties. An empty
/// result means the decomposition is valid for g.
std::vector<TdViolation> validate(const Graph& g, const TreeDecomposition& td);

/// Min-fill elimination ordering turned into a decomposition (ties by
/// smallest vertex id). Gives some width bound, not the treewidth.
TreeDecomposition min_fill_decomposition(const Graph& g);

/// PACE `.td` format: `s td <#bags> <width+1> <n>`, `b <id> <v...>`, `<id> <id>`.
TreeDecomposition read_pace_td(std::istream& in);
void write_pace_td(std::ostream& out, const TreeDecomposition& td, Vertex n);

enum class NodeKind { Leaf, Introduce, Forget, Join };

const char* to_string(NodeKind kind);

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    Vertex vertex = 0;              // introduced/forgotten vertex, 0 otherwise
    VertexSet bag;                  // X_alpha, sorted
    std::vector<NodeId> children;   // 0, 1 or 2 entries
    NodeId parent = -1;
    std::int32_t height = 0;        // 0 at leaves
};

/// Rooted nice tree decomposition with an empty root bag.
///
/// Every child id is smaller than its parent's, so iterating ids upward visits
/// children before parents and the root is the last node. Y_alpha membership is
/// answered from an Euler tour: since the root bag is empty, every vertex is
/// forgotten exactly once, and u is in Y_alpha iff the node forgetting u lies
/// in the subtree of alpha.
class NiceTreeDecomposition {
public:
    NiceTreeDecomposition() = default;
    NiceTreeDecomposition(Vertex n, std::vector<NiceNode> nodes);

    NodeId size() const { return static_cast<NodeId>(nodes_.size()); }
    NodeId root() const { return size() - 1; }
    const NiceNode& node(NodeId a) const { return nodes_[static_cast<std::size_t>(a)]; }
    const std::vector<NiceNode>& nodes() const { return nodes_; }
    Vertex n() const { return n_; }

    std::int32_t width() const;
    std::int32_t root_height() const { return node(root()).height; }

    bool in_subtree(NodeId a, NodeId desc) const;
    bool in_y(NodeId a, Vertex u) const;
    bool in_v(NodeId a, Vertex u) const { return in_y(a, u) || contains(node(a).bag, u); }
    NodeId forget_node(Vertex u) const { return forget_of_[static_cast<std::size_t>(u)]; }
    VertexSet y_set(NodeId a) const;
    VertexSet v_set(NodeId a) const;
    std::int32_t y_size(NodeId a) const { return y_size_[static_cast<std::size_t>(a)]; }

    /// Violations of the nice-node rules, empty root/leaf bags, join-child Y
    /// disjointness and height bookkeeping. Empty when well-formed.
    std::vector<std::string> check_nice() const;

    /// The underlying general decomposition (same bags, same tree).
    TreeDecomposition as_tree_decomposition() const;

private:
    Vertex n_ = 0;
    std::vector<NiceNode> nodes_;
    std::vector<NodeId> forget_of_;
    std::vector<std::int32_t> tin_, tout_, y_size_;
};

/// Contracts redundant bags, roots the tree at its smallest surviving node
/// and emits a nice decomposition: forget chains then introduce chains along
/// each tree edge in ascending vertex order, left-deep binary joins, and a
/// final forget chain down to the empty root bag. Width never increases.
/// Throws InputError when td is not valid for g.
NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td);

/// True iff no edge of g joins Y_alpha with V \ V_alpha.
bool separator_check(const Graph& g, const NiceTreeDecomposition& ntd, NodeId a);

} // namespace twapprox
