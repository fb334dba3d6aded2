#pragma once

#include "twapprox/graph.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace twapprox {

using RecordKey = std::vector<std::int32_t>;  // one coordinate per bag vertex, bag order

struct RecordKeyHash {
    std::size_t operator()(const RecordKey& k) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : k) {
            h ^= static_cast<std::uint32_t>(x);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

enum class Rule : std::uint8_t { Leaf, Introduce, Join, ForgetSkip, ForgetTake };

/// How a stored entry was produced: the certificate entries in the child
/// tables plus the forget-node choices (Delta as a bitmask over the parent
/// bag, and the A value).
struct Backref {
    Rule rule = Rule::Leaf;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t delta = 0;
    std::int32_t a = -1;
};

struct RecordEntry {
    RecordKey key;
    std::int32_t k = 0;  // smallest budget for this key
    Backref back;
};

/// A node's record set, stored as the minimum k per key. Every key's members
/// form the interval [k, |Y_alpha|], so this is lossless.
class RecordTable {
public:
    RecordTable() = default;
    RecordTable(VertexSet bag, std::int32_t y_size, std::size_t cap)
        : bag_(std::move(bag)), y_size_(y_size), cap_(cap) {}

    /// Keeps the entry if the key is new or k improves. Throws ResourceError
    /// past the size cap.
    void offer(const RecordKey& key, std::int32_t k, const Backref& back);
    /// Sorts entries by key; call once after the last offer.
    void finalize();

    const VertexSet& bag() const { return bag_; }
    std::int32_t y_size() const { return y_size_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<RecordEntry>& entries() const { return entries_; }
    const RecordEntry& entry(std::int32_t i) const { return entries_[static_cast<std::size_t>(i)]; }

    std::optional<std::int32_t> find(const RecordKey& key) const;
    std::optional<std::int32_t> k_min(const RecordKey& key) const;
    /// Membership of the pair (key, k).
    bool contains(const RecordKey& key, std::int32_t k) const;
    std::int32_t position(Vertex v) const;  // index of v in the bag, -1 if absent

private:
    VertexSet bag_;
    std::int32_t y_size_ = 0;
    std::size_t cap_ = 0;
    std::vector<RecordEntry> entries_;
    std::unordered_map<RecordKey, std::int32_t, RecordKeyHash> index_;
};

} // namespace twapprox
