#pragma once

#include <array>
#include <cstddef>
#include <mutex>
#include <unordered_map>

namespace torface {

inline void hash_mix(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

/// Sharded memo table. All writers for one key compute the same value, so
/// a lost race just recomputes; inserts are idempotent.
template <class K, class V, class Hash>
class ConcurrentCache {
    static constexpr std::size_t kShards = 64;
    struct Shard {
        std::mutex mu;
        std::unordered_map<K, V, Hash> map;
    };
    mutable std::array<Shard, kShards> shards_;

public:
    template <class F>
    V get_or_compute(const K& key, F&& compute) const {
        Shard& s = shards_[Hash{}(key) % kShards];
        {
            std::lock_guard<std::mutex> lk(s.mu);
            auto it = s.map.find(key);
            if (it != s.map.end()) return it->second;
        }
        V v = compute(); // outside the lock; recursion-safe
        std::lock_guard<std::mutex> lk(s.mu);
        auto [it, inserted] = s.map.emplace(key, v);
        return it->second;
    }

    void clear() {
        for (auto& s : shards_) {
            std::lock_guard<std::mutex> lk(s.mu);
            s.map.clear();
        }
    }
};

} // namespace torface
