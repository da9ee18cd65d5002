#include "eventforge/timeline.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "eventforge/vocab.hpp"

namespace eventforge {

std::vector<TimelineRow> timeline_query(const std::vector<rdf::Quad>& quads,
                                        const GraphLayout& layout, const std::string& root_iri,
                                        const TemporalScope& window) {
    const std::string fused = layout.fused_graph.value;
    const std::string extracted_from = layout.schema.extracted_from();

    std::map<std::string, std::set<std::string>> children;
    std::map<std::string, std::optional<FlexDate>> fused_begin;
    std::map<std::string, std::set<std::string>> provenance;
    // node -> (lang -> label) from the fused graph, description fallback.
    std::map<std::string, std::map<std::string, std::string>> labels, descriptions;
    bool root_seen = false;

    for (const rdf::Quad& q : quads) {
        if (!rdf::is_iri(q.triple.subject)) continue;
        const std::string& subject = rdf::as_iri(q.triple.subject).value;
        const std::string& predicate = q.triple.predicate.value;
        if (subject == root_iri) root_seen = true;
        if (rdf::is_iri(q.triple.object) && rdf::as_iri(q.triple.object).value == root_iri) {
            root_seen = true;
        }

        if (predicate == vocab::kSoHasSubEvent && rdf::is_iri(q.triple.object)) {
            children[subject].insert(rdf::as_iri(q.triple.object).value);
            continue;
        }
        if (q.graph.value == fused && predicate == vocab::kSemHasBeginTimeStamp &&
            rdf::is_literal(q.triple.object)) {
            auto d = FlexDate::from_literal(rdf::as_literal(q.triple.object));
            if (d && (!fused_begin[subject] || *d < *fused_begin[subject])) {
                fused_begin[subject] = d;
            }
            continue;
        }
        if (predicate == vocab::kOwlSameAs || predicate == extracted_from) {
            if (auto source = layout.source_of(q.graph)) provenance[subject].insert(*source);
            continue;
        }
        if (q.graph.value == fused && rdf::is_literal(q.triple.object)) {
            const rdf::Literal& lit = rdf::as_literal(q.triple.object);
            if (predicate == vocab::kRdfsLabel) {
                labels[subject].emplace(lit.language, lit.lexical);
            } else if (predicate == vocab::kDctermsDescription) {
                descriptions[subject].emplace(lit.language, lit.lexical);
            }
        }
    }

    if (!root_seen) {
        throw QueryError("root IRI not present in the dataset: " + root_iri);
    }

    // Transitive descendants, root excluded.
    std::set<std::string> descendants;
    std::deque<std::string> queue{root_iri};
    while (!queue.empty()) {
        std::string cur = std::move(queue.front());
        queue.pop_front();
        auto it = children.find(cur);
        if (it == children.end()) continue;
        for (const std::string& child : it->second) {
            if (child != root_iri && descendants.insert(child).second) {
                queue.push_back(child);
            }
        }
    }

    auto window_interval = window.interval();
    std::vector<TimelineRow> rows;
    for (const std::string& e : descendants) {
        auto bit = fused_begin.find(e);
        if (bit == fused_begin.end() || !bit->second) continue;
        const FlexDate& begin = *bit->second;
        if (window_interval &&
            (begin.earliest() < window_interval->first ||
             window_interval->second < begin.earliest())) {
            continue;
        }
        TimelineRow row;
        row.iri = e;
        row.begin = begin;
        auto pick = [&](const std::map<std::string, std::map<std::string, std::string>>& texts)
            -> std::optional<std::string> {
            auto it = texts.find(e);
            if (it == texts.end() || it->second.empty()) return std::nullopt;
            auto en = it->second.find("en");
            if (en != it->second.end()) return en->second;
            return it->second.begin()->second;
        };
        if (auto label = pick(labels)) {
            row.display = *label;
        } else if (auto description = pick(descriptions)) {
            row.display = *description;
        } else {
            row.display = e;
        }
        auto pit = provenance.find(e);
        if (pit != provenance.end()) row.sources = pit->second;
        rows.push_back(std::move(row));
    }

    std::sort(rows.begin(), rows.end(), [](const TimelineRow& a, const TimelineRow& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.iri < b.iri;
    });
    return rows;
}

}  // namespace eventforge
