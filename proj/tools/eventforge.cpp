#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eventforge/emit.hpp"
#include "eventforge/ntriples.hpp"
#include "eventforge/pipeline.hpp"
#include "eventforge/stats.hpp"
#include "eventforge/text.hpp"
#include "eventforge/timeline.hpp"
#include "eventforge/vocab.hpp"

namespace ef = eventforge;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> source_overrides;
    std::string out_override;
    std::string workdir_override;

    std::map<std::string, std::string> overrides() const {
        std::map<std::string, std::string> out;
        for (const std::string& s : source_overrides) {
            auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw ef::ConfigError("--source expects name=path, got '" + s + "'");
            }
            out[s.substr(0, eq)] = s.substr(eq + 1);
        }
        return out;
    }

    ef::PipelineConfig load() const {
        ef::PipelineConfig cfg = ef::PipelineConfig::load(config_path, overrides());
        if (!out_override.empty()) cfg.output = out_override;
        if (!workdir_override.empty()) cfg.workdir = workdir_override;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_out = true) {
    cmd->add_option("--config", opts.config_path, "pipeline config file")->required();
    cmd->add_option("--source", opts.source_overrides,
                    "override a source input path (name=path), repeatable");
    if (with_out) {
        cmd->add_option("--out", opts.out_override, "output N-Quads path (overrides config)");
        cmd->add_option("--workdir", opts.workdir_override,
                        "checkpoint directory (overrides config)");
    }
}

// Builds a layout for a standalone dataset: graph IRIs under
// <base>/graph/ become source names, event_kg is the fused graph.
ef::GraphLayout layout_from_dataset(const std::vector<ef::rdf::Quad>& quads,
                                    const std::string& base_iri) {
    ef::GraphLayout layout;
    layout.schema = ef::vocab::Schema{base_iri};
    layout.fused_graph = ef::rdf::Iri{layout.schema.graph_ns() + "event_kg"};
    const std::string prefix = layout.schema.graph_ns();
    for (const ef::rdf::Quad& q : quads) {
        const std::string& g = q.graph.value;
        if (!ef::text::starts_with(g, prefix)) continue;
        std::string name = g.substr(prefix.size());
        if (name.empty() || name == "event_kg") continue;
        layout.source_graphs.emplace(name, q.graph);
    }
    return layout;
}

int run_timeline(const std::string& dataset, const CommonOpts& opts, const std::string& root,
                 const std::string& from, const std::string& to, std::string base_iri) {
    auto from_date = ef::FlexDate::parse(from);
    auto to_date = ef::FlexDate::parse(to);
    if (!from_date || !to_date) {
        std::cerr << "error: --from/--to expect dates like 1941-02-12\n";
        return 1;
    }

    std::vector<ef::rdf::Quad> quads;
    ef::GraphLayout layout;
    if (!dataset.empty()) {
        if (const char* env = std::getenv("EVENTFORGE_BASE_IRI"); env && *env) base_iri = env;
        std::ifstream in(dataset, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open dataset " << dataset << "\n";
            return 1;
        }
        auto doc = ef::rdf::read_nquads(in, ef::rdf::Iri{base_iri + "/graph/event_kg"});
        quads = std::move(doc.quads);
        layout = layout_from_dataset(quads, base_iri);
    } else {
        ef::PipelineConfig cfg = opts.load();
        std::ifstream in(cfg.output, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open pipeline output " << cfg.output
                      << " (run `eventforge run` first)\n";
            return 1;
        }
        layout = ef::GraphLayout::build(cfg.registry, ef::vocab::Schema{cfg.base_iri});
        auto doc = ef::rdf::read_nquads(in, layout.fused_graph);
        quads = std::move(doc.quads);
    }

    ef::TemporalScope window{from_date, to_date};
    auto rows = ef::timeline_query(quads, layout, root, window);
    for (const ef::TimelineRow& row : rows) {
        std::string sources;
        for (const std::string& s : row.sources) {
            if (!sources.empty()) sources += ",";
            sources += s;
        }
        std::cout << row.begin.to_lexical() << "\t" << sources << "\t" << row.display << "\t"
                  << row.iri << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"event-centric temporal knowledge graph builder"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    bool dry_run = false;
    std::string from_stage = "ingest";
    CLI::App* run = app.add_subcommand("run", "run the full pipeline");
    add_common(run, run_opts);
    run->add_flag("--dry-run", dry_run, "validate the config and exit");
    run->add_option("--from", from_stage,
                    "resume from this stage (ingest|identify|extract|integrate|fuse|emit|stats)");

    // One subcommand per stage.
    std::map<std::string, CommonOpts> stage_opts;
    for (const char* name :
         {"ingest", "identify", "extract", "integrate", "fuse", "emit", "stats"}) {
        CLI::App* cmd = app.add_subcommand(name, std::string("run the ") + name + " stage");
        add_common(cmd, stage_opts[name]);
    }

    CommonOpts timeline_opts;
    std::string dataset, root, from, to;
    std::string base_iri = ef::vocab::kDefaultBaseIri;
    CLI::App* timeline = app.add_subcommand("timeline", "query sub-events in a date window");
    timeline->add_option("--dataset", dataset, "N-Quads dataset file (instead of --config)");
    timeline->add_option("--config", timeline_opts.config_path,
                         "pipeline config (query its output file)");
    timeline->add_option("--root", root, "root event IRI")->required();
    timeline->add_option("--from", from, "window start date")->required();
    timeline->add_option("--to", to, "window end date")->required();
    timeline->add_option("--base", base_iri, "base namespace of the dataset");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto stage = ef::stage_from_string(from_stage);
            if (!stage) {
                std::cerr << "error: unknown stage '" << from_stage << "'\n";
                return 1;
            }
            ef::PipelineConfig cfg = run_opts.load();
            if (dry_run) {
                cfg.validate();
                std::cout << "config ok: " << cfg.registry.size() << " sources, output "
                          << cfg.output.string() << "\n";
                return 0;
            }
            ef::run_pipeline(cfg, *stage, &std::clog);
            std::cout << "wrote " << cfg.output.string() << "\n";
            return 0;
        }
        for (auto& [name, stage_opt] : stage_opts) {
            CLI::App* cmd = app.get_subcommand(name);
            if (!cmd->parsed()) continue;
            ef::PipelineConfig cfg = stage_opt.load();
            cfg.validate();
            ef::PipelineReport report;
            ef::run_stage(cfg, *ef::stage_from_string(name), report, &std::clog);
            return 0;
        }
        if (timeline->parsed()) {
            if (dataset.empty() && timeline_opts.config_path.empty()) {
                std::cerr << "error: timeline needs --dataset or --config\n";
                return 1;
            }
            return run_timeline(dataset, timeline_opts, root, from, to, base_iri);
        }
    } catch (const ef::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ef::QueryError& e) {
        std::cerr << "query error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
