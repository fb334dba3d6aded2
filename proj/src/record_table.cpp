#include "twapprox/record_table.hpp"

#include "twapprox/errors.hpp"

#include <algorithm>

namespace twapprox {

void RecordTable::offer(const RecordKey& key, std::int32_t k, const Backref& back) {
    auto [it, inserted] = index_.try_emplace(key, static_cast<std::int32_t>(entries_.size()));
    if (inserted) {
        if (cap_ != 0 && entries_.size() >= cap_)
            throw ResourceError("record table exceeded the cap of " + std::to_string(cap_) + " entries");
        entries_.push_back({key, k, back});
        return;
    }
    auto& e = entries_[static_cast<std::size_t>(it->second)];
    if (k < e.k) {
        e.k = k;
        e.back = back;
    }
}

void RecordTable::finalize() {
    std::sort(entries_.begin(), entries_.end(), [](const RecordEntry& a, const RecordEntry& b) { return a.key < b.key; });
    index_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].key, static_cast<std::int32_t>(i));
}

std::optional<std::int32_t> RecordTable::find(const RecordKey& key) const {
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    return std::nullopt;
}

std::optional<std::int32_t> RecordTable::k_min(const RecordKey& key) const {
    if (auto i = find(key)) return entry(*i).k;
    return std::nullopt;
}

bool RecordTable::contains(const RecordKey& key, std::int32_t k) const {
    auto km = k_min(key);
    return km && *km <= k && k <= y_size_;
}

std::int32_t RecordTable::position(Vertex v) const {
    auto it = std::lower_bound(bag_.begin(), bag_.end(), v);
    if (it == bag_.end() || *it != v) return -1;
    return static_cast<std::int32_t>(it - bag_.begin());
}

} // namespace twapprox
