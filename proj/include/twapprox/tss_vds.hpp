#pragma once

#include "twapprox/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace twapprox {

/// Activation closure: starting from S, repeatedly add any vertex with at
/// least t(v) active neighbors. Worklist driven, O(n + m).
VertexSet tss_activate(const Graph& g, std::span<const std::int64_t> t, const VertexSet& seed);
bool tss_is_target_set(const Graph& g, std::span<const std::int64_t> t, const VertexSet& seed);

/// Every vertex outside S has at least t(v) neighbors in S.
bool vds_check(const Graph& g, std::span<const std::int64_t> t, const VertexSet& s);

/// Upper bound on subset checks per brute-force call.
inline constexpr std::uint64_t kDefaultSubsetCap = 100'000'000;

/// Smallest W ⊆ V \ U with |W| <= l such that W ∪ U is a target set, the
/// lexicographically first one of that size. nullopt when none exists.
/// Throws ResourceError after `cap` subset checks.
std::optional<VertexSet> tss_partial_brute(const PartialInstance& p, std::int32_t l,
                                           std::uint64_t cap = kDefaultSubsetCap);

/// Same contract for VDS, solved on G[V \ U] with t'(v) = max(0, t(v) - |N(v) ∩ U|).
/// The returned set uses the original vertex ids.
std::optional<VertexSet> vds_partial_brute(const PartialInstance& p, std::int32_t l,
                                           std::uint64_t cap = kDefaultSubsetCap);

/// floor(w^2 * sqrt(log log n / log log log n)) with base-2 logs, at least 1;
/// 1 for n < 16.
std::int32_t default_vds_budget(std::int32_t w, std::int64_t n);

/// Calls f(subset) for every k-subset of `pool` in lexicographic order until
/// f returns true; returns that subset.
template <class F>
std::optional<VertexSet> first_subset(const VertexSet& pool, std::size_t k, F&& f) {
    if (k > pool.size()) return std::nullopt;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    VertexSet s(k);
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) s[i] = pool[idx[i]];
        if (f(s)) return s;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
        if (i == 0) return std::nullopt;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace twapprox
