#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/pairing.hpp"
#include "belyi/peel_state.hpp"
#include "belyi/triangulation.hpp"

namespace belyi {

// A peeling algorithm picks the next edge to peel from the current boundary.
using PeelChooser = std::function<HalfEdgeId(const PeelState&)>;

// Smallest unmatched half-edge. Matched edges stay matched, so a monotone
// cursor keeps this O(1) amortized.
inline PeelChooser lex_chooser() {
    auto cursor = std::make_shared<HalfEdgeId>(0);
    return [cursor](const PeelState& st) -> HalfEdgeId {
        HalfEdgeId h = *cursor;
        while (h < 6 * st.n() && st.is_matched(h)) ++h;
        if (h == 6 * st.n()) throw std::logic_error("lex_chooser: no boundary edge left");
        *cursor = h;
        return h;
    };
}

// Uniformly random boundary edge, from a dedicated stream.
inline PeelChooser random_chooser(std::uint64_t seed) {
    auto rng = std::make_shared<Rng>(seed);
    return [rng](const PeelState& st) -> HalfEdgeId {
        std::int32_t total = st.unmatched_count();
        if (total == 0) throw std::logic_error("random_chooser: no boundary edge left");
        return st.unmatched_at(static_cast<std::int32_t>(rng->uniform_below(total)));
    };
}

// Keeps peeling around the temporary vertex of the smallest open corner,
// closing vertices one fan at a time. Closed classes stay closed, so the
// cursor is monotone.
inline PeelChooser fan_chooser() {
    auto cursor = std::make_shared<HalfEdgeId>(0);
    return [cursor](const PeelState& st) -> HalfEdgeId {
        HalfEdgeId h = *cursor;
        while (h < 6 * st.n() && st.class_closed(st.class_root(h))) ++h;
        if (h == 6 * st.n()) throw std::logic_error("fan_chooser: no boundary edge left");
        *cursor = h;
        return st.peel_edge_at(st.class_root(h));
    };
}

struct RunResult {
    Triangulation triangulation;
    std::vector<GlueEvent> events;
};

using EventSink = std::function<void(const GlueEvent&, const PeelState&)>;

// Replay mode: reveal a fixed pairing step by step. The final triangulation
// equals build_triangulation(pairing) for any chooser.
inline RunResult run_to_completion(const Pairing& pairing, const PeelChooser& chooser,
                                   bool keep_events = true, const EventSink& sink = nullptr) {
    if (!pairing.is_valid())
        throw std::invalid_argument("run_to_completion: invalid replay pairing");
    PeelState st(pairing.n);
    RunResult out;
    for (std::int32_t i = 0; i < 3 * pairing.n; ++i) {
        HalfEdgeId a = chooser(st);
        HalfEdgeId b = pairing.match[a];
        if (st.is_matched(a) || st.is_matched(b))
            throw std::invalid_argument("run_to_completion: replay pairing inconsistent with state");
        GlueEvent ev = st.glue(a, b);
        if (sink) sink(ev, st);
        if (keep_events) out.events.push_back(std::move(ev));
    }
    out.triangulation = build_triangulation(st.extract_pairing());
    return out;
}

// Quenched mode: the partner of each peeled edge is drawn uniformly from the
// remaining boundary, so the final law is that of a uniform gluing.
inline RunResult run_to_completion(std::int32_t n, std::uint64_t seed, const PeelChooser& chooser,
                                   bool keep_events = true, const EventSink& sink = nullptr) {
    PeelState st(n);
    Rng rng(seed);
    RunResult out;
    for (std::int32_t i = 0; i < 3 * n; ++i) {
        HalfEdgeId a = chooser(st);
        HalfEdgeId b = st.random_partner(a, rng);
        GlueEvent ev = st.glue(a, b);
        if (sink) sink(ev, st);
        if (keep_events) out.events.push_back(std::move(ev));
    }
    out.triangulation = build_triangulation(st.extract_pairing());
    return out;
}

inline const char* glue_case_name(GlueCase c) {
    switch (c) {
        case GlueCase::SameHoleAdjacent: return "same-hole-adjacent";
        case GlueCase::SameHoleSplit: return "same-hole-split";
        case GlueCase::CrossHoleMerge: return "cross-hole-merge";
        case GlueCase::LoopToLoop: return "loop-to-loop";
    }
    return "?";
}

// One JSON line per glue event, for the optional trace output.
inline std::string trace_json_line(const GlueEvent& ev, const PeelState& st) {
    std::string s = "{\"i\":" + std::to_string(ev.step) + ",\"a\":" + std::to_string(ev.a) +
                    ",\"b\":" + std::to_string(ev.b) + ",\"case\":\"" + glue_case_name(ev.tag) +
                    "\",\"closed\":[";
    for (std::size_t k = 0; k < ev.closed_roots.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(st.class_min_corner(ev.closed_roots[k]));
    }
    s += "],\"boundary\":" + std::to_string(ev.boundary_after) + "}";
    return s;
}

}  // namespace belyi
