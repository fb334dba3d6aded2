#pragma once

#include "twapprox/graph.hpp"
#include "twapprox/record_table.hpp"
#include "twapprox/rounding.hpp"
#include "twapprox/tree_decomposition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace twapprox {

/// The rounded record-set DP. Keys hold RoundedValue codes in bag order and
/// every stored k is the smallest k-hat seen for that key.
class ApproxDp {
public:
    ApproxDp(const Graph& g, const NiceTreeDecomposition& ntd, std::span<const std::int64_t> capacity,
             ErrorSchedule schedule, std::size_t table_cap = 0);

    /// Fills every table bottom-up. Throws ResourceError past the cap.
    void run();

    const ErrorSchedule& schedule() const { return schedule_; }
    EpsilonArithmetic& arith() { return arith_; }
    const std::vector<RecordTable>& tables() const { return tables_; }
    const RecordTable& table(NodeId a) const { return tables_[static_cast<std::size_t>(a)]; }
    std::size_t flow_calls() const { return flow_calls_; }

    /// An exact record (d, k) that is h-close to the given approximate entry,
    /// plus an orientation of G_a realizing it.
    struct Counterpart {
        RecordKey d;
        std::int32_t k = 0;
        Orientation orientation;
    };
    Counterpart counterpart(NodeId a, std::int32_t entry);

private:
    RecordTable forget(NodeId a);
    /// d_t over the child bag with v's coordinate set to dv; nullopt when some
    /// coordinate already exceeds its degree bound.
    std::optional<RecordKey> tested_pair(NodeId child, const RecordKey& key, std::size_t vpos, std::int32_t dv);
    bool test(NodeId child, const RecordKey& d_t);

    const Graph& g_;
    const NiceTreeDecomposition& ntd_;
    std::span<const std::int64_t> cap_;
    ErrorSchedule schedule_;
    EpsilonArithmetic arith_;
    std::size_t table_cap_;
    std::vector<RecordTable> tables_;
    std::map<std::pair<NodeId, RecordKey>, bool> flow_memo_;
    std::size_t flow_calls_ = 0;
};

struct ApproxOptions {
    std::optional<Rational> epsilon;  // default schedule when absent
    std::size_t table_cap = 2'000'000;
};

struct ApproxSolution {
    ErrorSchedule schedule;
    bool feasible = false;
    std::int32_t raw_min = 0;         // min k-hat at the root
    Rational k_hat_min;               // (1 + delta_{h0}) * raw_min
    std::int64_t k_hat_ceil = 0;
    std::int64_t opt_lower = 0;       // ceil(raw_min / (1 + delta_{h0})) <= OPT
    Orientation orientation;
    VertexSet cover;
    std::vector<std::size_t> table_sizes;
    std::size_t flow_calls = 0;
};

ApproxSolution solve_cvc_approx(const Graph& g, const NiceTreeDecomposition& ntd,
                                std::span<const std::int64_t> capacity, const ApproxOptions& opt = {});

/// Outcome of comparing one node's exact and approximate tables.
struct ClosenessResult {
    bool a_holds = true;  // every exact record has an h-close approximate one
    bool b_holds = true;  // and vice versa
};

/// Joint check of both containment directions at a node of height h. Since
/// membership is upward closed in k, it suffices to compare each key's
/// minimum k with the best minimum among the coordinatewise close keys.
ClosenessResult closeness_check(const RecordTable& exact, const RecordTable& approx, EpsilonArithmetic& arith,
                                const Rational& eps_h, const Rational& delta_h);

} // namespace twapprox
