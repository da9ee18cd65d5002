#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eventforge/date.hpp"
#include "eventforge/emit.hpp"
#include "eventforge/rdf.hpp"

namespace eventforge {

struct QueryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimelineRow {
    std::string iri;
    FlexDate begin;
    std::string display;             // label or description
    std::set<std::string> sources;   // contributing source names
};

// Transitive hasSubEvent descendants of `root` (edges from any graph) whose
// fused begin lies inside the window, ordered by begin then IRI. Row
// sources come from the provenance quads (owl:sameAs / extractedFrom).
// Throws QueryError when the root IRI appears nowhere in the dataset.
std::vector<TimelineRow> timeline_query(const std::vector<rdf::Quad>& quads,
                                        const GraphLayout& layout, const std::string& root_iri,
                                        const TemporalScope& window);

}  // namespace eventforge
