// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdglab/common.hpp"
#include "sdglab/corpus.hpp"
#include "sdglab/overlap.hpp"
#include "sdglab/strategy.hpp"
#include "sdglab/termmap.hpp"

namespace sdglab {

std::string_view library_version();

// Exit codes shared by the CLI.
enum class ExitCode : int { ok = 0, config = 2, input = 3, compute = 4 };

ExitCode exit_code_for(const std::exception& e);

// Error raised by run_pipeline; names the stage that failed, e.g. "run:SIRIS".
class StageError : public Error {
public:
    StageError(std::string stage, const std::exception& cause);
    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }
    [[nodiscard]] ExitCode code() const noexcept { return code_; }

private:
    std::string stage_;
    ExitCode code_;
};

struct CorpusSource {
    std::string name;
    std::filesystem::path corpus_file;
    std::filesystem::path coverage_file;  // optional
};

struct StrategySource {
    std::filesystem::path file;
    std::string corpus;
};

struct ComparisonSpec {
    std::string a;
    std::string b;
};

struct TermMapSpec {
    std::string a;
    std::string b;
    TermMapConfig config;
};

struct PipelineConfig {
    std::vector<CorpusSource> corpora;
    std::vector<StrategySource> strategies;
    std::vector<ComparisonSpec> comparisons;
    std::vector<TermMapSpec> termmaps;
    std::optional<YearWindow> window;  // overrides every strategy window when set
    std::filesystem::path output_dir;
    std::string config_hash;           // SHA-256 of the config text
};

/// Parses and validates a pipeline config. Relative paths resolve against
/// the config file's directory. Throws LoadError, IoError.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
PipelineConfig parse_pipeline_config(std::string_view text, const std::filesystem::path& base_dir);

/// Checks names that do not need any input file: corpus names unique and
/// referenced ones defined, comparison pairs distinct. Throws LoadError.
void validate_pipeline_config(const PipelineConfig& config);

struct DoiRow {
    std::string strategy;
    std::size_t total = 0;
    std::size_t with_doi = 0;
};

struct ComparisonRow {
    std::string a;
    std::string b;
    SegmentCounts counts;
};

struct ReportBundle {
    std::vector<DoiRow> table3;
    std::vector<TermClassSummary> table4;
    std::vector<ComparisonRow> table5;
    std::vector<std::string> figures;           // relative to output_dir
    std::map<std::string, std::string> files;   // relative path -> sha256, every file written
    std::string config_hash;
    std::filesystem::path output_dir;
};

ReportBundle run_pipeline(const PipelineConfig& config);

enum class ReportFormat { csv, markdown };

std::string table3_csv(const std::vector<DoiRow>& rows);
std::string table4_csv(const std::vector<TermClassSummary>& rows);
std::string table5_csv(const std::vector<ComparisonRow>& rows);
std::string table3_markdown(const std::vector<DoiRow>& rows);
std::string table4_markdown(const std::vector<TermClassSummary>& rows);
std::string table5_markdown(const std::vector<ComparisonRow>& rows);

/// Writes reports/table{3,4,5}.{csv,md} under `dir`; returns the relative
/// paths written with their hashes. Throws IoError.
std::map<std::string, std::string> emit_report(const ReportBundle& bundle, ReportFormat format,
                                               const std::filesystem::path& dir);

/// Reads reports/bundle.json back (tables and figures only). Throws IngestError.
ReportBundle load_report_bundle(std::string_view json);

/// Reads table5.csv back into rows. Throws IngestError.
std::vector<ComparisonRow> load_table5_csv(std::string_view text);

/// Directory-safe form of a strategy name.
std::string slug(std::string_view name);

/// "12,345".
std::string group_thousands(std::uint64_t n);

/// Reads SDGLAB_LOG (trace, debug, info, warn, error, off) and sets the
/// library log level. Defaults to warn.
void init_logging_from_env();

}  // namespace sdglab
