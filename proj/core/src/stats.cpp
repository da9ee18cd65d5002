#include "eventforge/stats.hpp"

#include <cstdio>
#include <set>

#include "eventforge/tsv.hpp"
#include "eventforge/vocab.hpp"

namespace eventforge {

std::string format_percent(std::size_t part, std::size_t whole) {
    double pct = whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", pct);
    return buf;
}

StatsReport compute_stats(const std::vector<rdf::Quad>& quads, const GraphLayout& layout) {
    StatsReport report;
    report.quads = quads.size();

    const std::string fused = layout.fused_graph.value;
    const std::string relation_class = layout.schema.relation_class();
    const std::string extracted_from = layout.schema.extracted_from();

    auto graph_key = [&](const rdf::Iri& g) -> std::string {
        if (g.value == fused) return "event_kg";
        if (auto s = layout.source_of(g)) return *s;
        return g.value;
    };

    std::set<std::string> events;
    // node -> graph key -> facts
    std::map<std::string, std::set<std::string>> time_in, place_in, provenance_in;
    // node -> source graph key -> begin literals (for the agreement figure)
    std::map<std::string, std::map<std::string, std::set<std::string>>> begins;
    // relation node -> graph keys; relation node -> graphs with validity
    std::map<std::string, std::set<std::string>> relation_in, relation_time_in;
    std::map<std::string, std::set<std::string>> structural_in;  // graph -> triple keys

    for (const rdf::Quad& q : quads) {
        if (!rdf::is_iri(q.triple.subject)) continue;
        const std::string& subject = rdf::as_iri(q.triple.subject).value;
        const std::string& predicate = q.triple.predicate.value;
        std::string gk = graph_key(q.graph);

        if (predicate == vocab::kRdfType && rdf::is_iri(q.triple.object)) {
            const std::string& type = rdf::as_iri(q.triple.object).value;
            if (type == vocab::kSemEvent && q.graph.value == fused) events.insert(subject);
            if (type == relation_class) relation_in[subject].insert(gk);
            continue;
        }
        if (predicate == vocab::kSemHasBeginTimeStamp || predicate == vocab::kSemHasEndTimeStamp) {
            time_in[subject].insert(gk);
            relation_time_in[subject].insert(gk);
            if (predicate == vocab::kSemHasBeginTimeStamp && gk != "event_kg" &&
                rdf::is_literal(q.triple.object)) {
                begins[subject][gk].insert(rdf::as_literal(q.triple.object).lexical);
            }
            continue;
        }
        if (predicate == vocab::kSemHasPlace) {
            place_in[subject].insert(gk);
            continue;
        }
        if (predicate == vocab::kOwlSameAs || predicate == extracted_from) {
            provenance_in[subject].insert(gk);
            continue;
        }
        if (is_structural_role(predicate)) {
            std::string triple_key;
            rdf::write_term(triple_key, q.triple.subject);
            triple_key += ' ' + predicate + ' ';
            rdf::write_term(triple_key, q.triple.object);
            structural_in[gk].insert(triple_key);
        }
    }

    auto graphs_of_event = [&](const std::string& e) {
        std::set<std::string> gs{"event_kg"};
        auto it = provenance_in.find(e);
        if (it != provenance_in.end()) gs.insert(it->second.begin(), it->second.end());
        return gs;
    };

    for (const std::string& e : events) {
        for (const std::string& gk : graphs_of_event(e)) {
            GraphStats& gs = report.per_graph[gk];
            ++gs.events;
            bool timed = time_in.count(e) && time_in[e].count(gk);
            bool placed = place_in.count(e) && place_in[e].count(gk);
            if (timed) ++gs.events_with_time;
            if (placed) ++gs.events_with_location;
            if (timed && placed) ++gs.events_with_both;
        }

        // Agreement: begin stated by at least two source graphs.
        auto bit = begins.find(e);
        if (bit != begins.end() && bit->second.size() >= 2) {
            ++report.multi_source_start_events;
            std::set<std::string> distinct;
            for (const auto& [_, values] : bit->second) {
                distinct.insert(values.begin(), values.end());
            }
            if (distinct.size() == 1) ++report.agreeing_start_events;
        }
    }

    for (const auto& [node, graphs] : relation_in) {
        ++report.per_graph["event_kg"].relations;
        bool any_time = relation_time_in.count(node) > 0;
        if (any_time) ++report.per_graph["event_kg"].temporal_relations;
        for (const std::string& gk : graphs) {
            if (gk == "event_kg") continue;
            ++report.per_graph[gk].relations;
            if (relation_time_in.count(node) && relation_time_in[node].count(gk)) {
                ++report.per_graph[gk].temporal_relations;
            }
        }
    }
    std::set<std::string> all_structural;
    for (const auto& [gk, triples] : structural_in) {
        if (gk != "event_kg") report.per_graph[gk].relations += triples.size();
        all_structural.insert(triples.begin(), triples.end());
    }
    if (!all_structural.empty()) {
        report.per_graph["event_kg"].relations += all_structural.size();
    }

    return report;
}

std::string StatsReport::to_text() const {
    std::string out;
    auto line = [&](const std::string& s) { out += s + "\n"; };
    auto emit_graph = [&](const std::string& name, const GraphStats& g) {
        line("graph " + name);
        line("  events:             " + std::to_string(g.events));
        line("  with time:          " + format_percent(g.events_with_time, g.events));
        line("  with location:      " + format_percent(g.events_with_location, g.events));
        line("  with both:          " + format_percent(g.events_with_both, g.events));
        line("  relations:          " + std::to_string(g.relations));
        line("  temporal relations: " + std::to_string(g.temporal_relations));
    };
    if (per_graph.count("event_kg")) emit_graph("event_kg", per_graph.at("event_kg"));
    for (const auto& [name, g] : per_graph) {
        if (name != "event_kg") emit_graph(name, g);
    }
    line("quads: " + std::to_string(quads));
    if (multi_source_start_events > 0) {
        line("start-time agreement: " +
             format_percent(agreeing_start_events, multi_source_start_events) + " (" +
             std::to_string(agreeing_start_events) + " of " +
             std::to_string(multi_source_start_events) + " multi-source events)");
    } else {
        line("start-time agreement: n/a (no multi-source start times)");
    }
    return out;
}

std::string StatsReport::to_tsv() const {
    std::string out;
    auto row = [&](const std::string& key, const std::string& value) {
        out += tsv::format_row({key, value});
    };
    auto pct = [](std::size_t part, std::size_t whole) {
        std::string s = format_percent(part, whole);
        s.pop_back();  // strip '%'
        return s;
    };
    for (const auto& [name, g] : per_graph) {
        row(name + ".events", std::to_string(g.events));
        row(name + ".events_with_time_pct", pct(g.events_with_time, g.events));
        row(name + ".events_with_location_pct", pct(g.events_with_location, g.events));
        row(name + ".events_with_both_pct", pct(g.events_with_both, g.events));
        row(name + ".relations", std::to_string(g.relations));
        row(name + ".temporal_relations", std::to_string(g.temporal_relations));
    }
    row("quads", std::to_string(quads));
    row("multi_source_start_events", std::to_string(multi_source_start_events));
    row("agreeing_start_events", std::to_string(agreeing_start_events));
    if (multi_source_start_events > 0) {
        row("start_time_agreement_pct",
            pct(agreeing_start_events, multi_source_start_events));
    }
    return out;
}

}  // namespace eventforge
