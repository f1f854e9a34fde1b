#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "belyi/half_edge.hpp"
#include "belyi/rng.hpp"

namespace belyi {

// A fixed-point-free involution on the 6n half-edges: the random gluing.
struct Pairing {
    std::int32_t n = 0;
    std::vector<HalfEdgeId> match;

    std::int32_t half_edges() const { return 6 * n; }

    bool is_valid() const {
        if (n < 1 || static_cast<std::int32_t>(match.size()) != 6 * n) return false;
        for (std::int32_t h = 0; h < 6 * n; ++h) {
            HalfEdgeId m = match[h];
            if (m < 0 || m >= 6 * n || m == h || match[m] != h) return false;
        }
        return true;
    }
};

// Uniform fixed-point-free involution: repeatedly match the lowest unmatched
// half-edge with a uniform choice among the remaining ones. Deterministic
// given (n, seed).
inline Pairing sample_pairing(std::int32_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_pairing: n must be >= 1");
    Rng rng(seed);
    const std::int32_t m = 6 * n;
    Pairing p;
    p.n = n;
    p.match.assign(m, kNoHalfEdge);

    std::vector<HalfEdgeId> pool(m);
    std::vector<std::int32_t> pos(m);
    for (std::int32_t h = 0; h < m; ++h) pool[h] = h, pos[h] = h;

    auto remove_from_pool = [&](HalfEdgeId h) {
        std::int32_t i = pos[h];
        HalfEdgeId last = pool.back();
        pool[i] = last;
        pos[last] = i;
        pool.pop_back();
    };

    for (std::int32_t h = 0; h < m; ++h) {
        if (p.match[h] != kNoHalfEdge) continue;
        remove_from_pool(h);
        HalfEdgeId partner = pool[rng.uniform_below(pool.size())];
        remove_from_pool(partner);
        p.match[h] = partner;
        p.match[partner] = h;
    }
    return p;
}

// Exact enumeration of all (6n-1)!! pairings, for small-n oracles.
// Guarded: n <= 2 (15 and 10395 pairings); anything larger is refused.
inline void enumerate_pairings(std::int32_t n, const std::function<void(const Pairing&)>& visit) {
    if (n < 1) throw std::invalid_argument("enumerate_pairings: n must be >= 1");
    if (n > 2) throw std::length_error("enumerate_pairings: refusing n > 2 (size guard)");
    const std::int32_t m = 6 * n;
    Pairing p;
    p.n = n;
    p.match.assign(m, kNoHalfEdge);

    auto rec = [&](auto&& self, std::int32_t lowest) -> void {
        while (lowest < m && p.match[lowest] != kNoHalfEdge) ++lowest;
        if (lowest == m) {
            visit(p);
            return;
        }
        for (HalfEdgeId partner = lowest + 1; partner < m; ++partner) {
            if (p.match[partner] != kNoHalfEdge) continue;
            p.match[lowest] = partner;
            p.match[partner] = lowest;
            self(self, lowest + 1);
            p.match[lowest] = kNoHalfEdge;
            p.match[partner] = kNoHalfEdge;
        }
    };
    rec(rec, 0);
}

inline std::vector<Pairing> enumerate_pairings(std::int32_t n) {
    std::vector<Pairing> all;
    enumerate_pairings(n, [&](const Pairing& p) { all.push_back(p); });
    return all;
}

}  // namespace belyi
