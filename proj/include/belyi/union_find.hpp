#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace belyi {

// Union-find with path halving. Aggregates that modules need per class
// (token counts, corner counts, ...) are kept by the callers at root indices.
class UnionFind {
public:
    explicit UnionFind(std::int32_t size) : parent_(size) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::int32_t find(std::int32_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Merges the classes of a and b; returns the surviving root, or -1 if the
    // classes were already equal. The loser is parented to the winner, so the
    // caller can fold per-class aggregates from loser into winner.
    struct Merge {
        std::int32_t root = -1;
        std::int32_t absorbed = -1;
    };

    Merge unite(std::int32_t a, std::int32_t b) {
        std::int32_t ra = find(a), rb = find(b);
        if (ra == rb) return {};
        // Deterministic orientation: smaller index wins. Keeps replay runs and
        // multithreaded studies byte-identical.
        if (rb < ra) std::swap(ra, rb);
        parent_[rb] = ra;
        return {ra, rb};
    }

    std::int32_t size() const { return static_cast<std::int32_t>(parent_.size()); }

private:
    mutable std::vector<std::int32_t> parent_;
};

}  // namespace belyi
