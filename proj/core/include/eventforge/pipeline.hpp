#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eventforge/config.hpp"
#include "eventforge/date.hpp"
#include "eventforge/source.hpp"

namespace eventforge {

enum class Stage { ingest, identify, extract, integrate, fuse, emit, stats };

std::string_view to_string(Stage s);
std::optional<Stage> stage_from_string(std::string_view s);

// Resolved pipeline configuration. Validation happens up front; a bad
// config never starts a stage.
struct PipelineConfig {
    std::string base_iri;
    std::vector<std::string> languages;
    std::set<std::string> language_set() const { return {languages.begin(), languages.end()}; }
    std::filesystem::path output;   // final N-Quads file
    std::filesystem::path workdir;  // stage checkpoints
    double match_jaccard = 0.5;
    std::optional<FlexDate> dataset_date;

    SourceRegistry registry;

    // Auxiliary inputs (empty path = not configured).
    std::filesystem::path mapping_table;
    std::filesystem::path type_alignment;
    std::filesystem::path link_graph;
    std::filesystem::path sentence_corpus;
    std::filesystem::path blacklist;
    std::filesystem::path id_map;

    // Raw config (property map, event-class roots, category regexes).
    ConfigFile raw;

    // Loads and validates. `source_overrides` rebinds source dump paths
    // (CLI --source name=path). The EVENTFORGE_BASE_IRI environment
    // variable overrides the configured base namespace.
    static PipelineConfig load(const std::filesystem::path& config_path,
                               const std::map<std::string, std::string>& source_overrides = {});

    // Fail-fast checks: referenced files exist, tables parse, regexes
    // compile. Throws ConfigError.
    void validate() const;
};

struct StageCounters {
    std::map<std::string, std::size_t> values;
    void bump(const std::string& key, std::size_t n = 1) { values[key] += n; }
};

struct PipelineReport {
    std::map<std::string, StageCounters> per_stage;  // keyed by stage name
    std::vector<std::string> warnings;
};

// Runs stages [from .. stats] in order, reading earlier stages' checkpoint
// files from the workdir. A full run starts at ingest. Stage failures
// throw; finished checkpoints stay on disk.
PipelineReport run_pipeline(const PipelineConfig& config, Stage from = Stage::ingest,
                            std::ostream* log = nullptr);

// Single-stage entry point used by the stage subcommands.
void run_stage(const PipelineConfig& config, Stage stage, PipelineReport& report,
               std::ostream* log = nullptr);

}  // namespace eventforge
