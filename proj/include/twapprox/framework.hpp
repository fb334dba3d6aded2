#pragma once

#include "twapprox/graph.hpp"
#include "twapprox/rounding.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twapprox {

/// A monotone, splittable vertex-subset problem with an exact solver for
/// small partial solutions.
class SubsetProblem {
public:
    virtual ~SubsetProblem() = default;
    virtual std::string name() const = 0;
    virtual bool is_solution(const WeightedInstance& inst, const VertexSet& s) const = 0;
    /// An optimal solution of the partial instance if its optimum is <= l.
    virtual std::optional<VertexSet> solve_partial(const PartialInstance& p, std::int32_t l) const = 0;
};

class TssProblem final : public SubsetProblem {
public:
    explicit TssProblem(std::uint64_t cap = 100'000'000) : cap_(cap) {}
    std::string name() const override { return "tss"; }
    bool is_solution(const WeightedInstance& inst, const VertexSet& s) const override;
    std::optional<VertexSet> solve_partial(const PartialInstance& p, std::int32_t l) const override;

private:
    std::uint64_t cap_;
};

class VdsProblem final : public SubsetProblem {
public:
    explicit VdsProblem(std::uint64_t cap = 100'000'000) : cap_(cap) {}
    std::string name() const override { return "vds"; }
    bool is_solution(const WeightedInstance& inst, const VertexSet& s) const override;
    std::optional<VertexSet> solve_partial(const PartialInstance& p, std::int32_t l) const override;

private:
    std::uint64_t cap_;
};

struct GoodResult {
    bool good = false;
    std::optional<VertexSet> solution;  // optimal for (I, V \ Y_a) when good
};

/// l-goodness of node a. `keep` maps the decomposition's vertex i to the
/// instance vertex keep[i-1]; empty means the identity.
GoodResult is_l_good(const SubsetProblem& prob, const WeightedInstance& inst, const NiceTreeDecomposition& ntd,
                     NodeId a, std::int32_t l, const VertexSet& keep = {});

struct FrameworkResult {
    std::optional<VertexSet> solution;  // nullopt: no solution exists
    std::int32_t rounds = 0;
    std::vector<std::int32_t> bad_node_heights;  // height of the chosen node per round
    std::int32_t width = 0;
    std::int32_t l = 0;
    Rational ratio_bound;  // 1 + (w+1)/(l+1)
};

/// Iterated shrinking: test every node, return the root's optimum if it is
/// l-good, otherwise take the lowest node that is not (smallest id on ties),
/// commit its children's bags and optimal partial solutions, delete their
/// subtrees and repeat on the rest. `td` decomposes G[V \ excluded]; the
/// result S satisfies that S ∪ excluded is a solution.
FrameworkResult solve_framework(const SubsetProblem& prob, const WeightedInstance& inst, const TreeDecomposition& td,
                                std::int32_t l, const VertexSet& excluded = {});

} // namespace twapprox
