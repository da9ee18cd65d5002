#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "eventforge/emit.hpp"
#include "eventforge/rdf.hpp"

namespace eventforge {

struct GraphStats {
    std::size_t events = 0;
    std::size_t events_with_time = 0;
    std::size_t events_with_location = 0;
    std::size_t events_with_both = 0;
    std::size_t relations = 0;  // reified nodes + direct hierarchy triples
    std::size_t temporal_relations = 0;
};

// Recomputed from output quads, so the stats stage also works standalone
// on a previously written dataset file.
struct StatsReport {
    // "event_kg" plus one entry per source graph that holds any event.
    std::map<std::string, GraphStats> per_graph;
    std::size_t quads = 0;
    // Start-time agreement over events whose begin is stated by >= 2
    // source graphs.
    std::size_t multi_source_start_events = 0;
    std::size_t agreeing_start_events = 0;

    std::string to_text() const;
    std::string to_tsv() const;
};

StatsReport compute_stats(const std::vector<rdf::Quad>& quads, const GraphLayout& layout);

std::string format_percent(std::size_t part, std::size_t whole);  // "75.00%"

}  // namespace eventforge
