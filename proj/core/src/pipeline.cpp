// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/pipeline.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "sdglab/clustering.hpp"
#include "sdglab/index.hpp"
#include "sdglab/io.hpp"
#include "sdglab/result_set.hpp"

#ifndef SDGLAB_VERSION
#define SDGLAB_VERSION "0.0.0"
#endif

namespace sdglab {

std::string_view library_version() { return SDGLAB_VERSION; }

ExitCode exit_code_for(const std::exception& e) {
    if (const auto* s = dynamic_cast<const StageError*>(&e)) return s->code();
    if (dynamic_cast<const LoadError*>(&e) || dynamic_cast<const ParseError*>(&e)) return ExitCode::config;
    if (dynamic_cast<const IngestError*>(&e) || dynamic_cast<const IoError*>(&e)) return ExitCode::input;
    return ExitCode::compute;
}

StageError::StageError(std::string stage, const std::exception& cause)
    : Error("stage '" + stage + "' failed: " + cause.what()), stage_(std::move(stage)), code_(exit_code_for(cause)) {}

namespace {

template <typename F>
auto stage(const std::string& name, F&& f) {
    spdlog::debug("stage {}", name);
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e);
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

TermMapConfig parse_termmap_config(const nlohmann::json& j, const std::filesystem::path& base) {
    auto c = TermMapConfig::with_default_stoplist();
    c.min_occurrences = j.value("min_occurrences", c.min_occurrences);
    c.max_ngram = j.value("max_ngram", c.max_ngram);
    c.layout_seed = j.value("layout_seed", c.layout_seed);
    c.layout_iterations = j.value("layout_iterations", c.layout_iterations);
    if (j.contains("stoplist")) {
        auto path = resolve(base, j.at("stoplist").get<std::string>());
        std::ifstream in(path);
        if (!in) throw IoError("cannot open stoplist '" + path.string() + "'");
        c.stoplist = load_stoplist(in);
    }
    if (c.min_occurrences < 1) throw LoadError("termmap min_occurrences must be at least 1");
    if (c.max_ngram < 1) throw LoadError("termmap max_ngram must be at least 1");
    return c;
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view text, const std::filesystem::path& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig c;
    c.config_hash = sha256_hex(text);
    try {
        c.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());
        if (j.contains("window")) c.window = YearWindow(j["window"].at("start").get<int>(), j["window"].at("end").get<int>());
        for (const auto& e : j.at("corpora")) {
            CorpusSource s;
            s.name = e.at("name").get<std::string>();
            s.corpus_file = resolve(base_dir, e.at("corpus").get<std::string>());
            if (e.contains("coverage")) s.coverage_file = resolve(base_dir, e["coverage"].get<std::string>());
            c.corpora.push_back(std::move(s));
        }
        for (const auto& e : j.at("strategies"))
            c.strategies.push_back({resolve(base_dir, e.at("file").get<std::string>()), e.at("corpus").get<std::string>()});
        if (j.contains("comparisons"))
            for (const auto& e : j["comparisons"]) c.comparisons.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>()});
        if (j.contains("termmaps"))
            for (const auto& e : j["termmaps"])
                c.termmaps.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                                      parse_termmap_config(e, base_dir)});
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("malformed config: ") + e.what());
    }
    validate_pipeline_config(c);
    return c;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    std::string text = read_file(path);
    return parse_pipeline_config(text, path.parent_path());
}

void validate_pipeline_config(const PipelineConfig& c) {
    if (c.output_dir.empty()) throw LoadError("output_dir is empty");
    std::set<std::string> corpora;
    for (const auto& s : c.corpora) {
        if (s.name.empty()) throw LoadError("corpus with empty name");
        if (!corpora.insert(s.name).second) throw LoadError("corpus '" + s.name + "' defined twice");
    }
    for (const auto& s : c.strategies)
        if (!corpora.contains(s.corpus))
            throw LoadError("strategy '" + s.file.string() + "' references undefined corpus '" + s.corpus + "'");
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& p : c.comparisons) {
        if (p.a == p.b) throw LoadError("comparison of '" + p.a + "' with itself");
        if (!pairs.insert({p.a, p.b}).second || pairs.contains({p.b, p.a}))
            throw LoadError("comparison '" + p.a + "' vs '" + p.b + "' listed twice");
    }
    for (const auto& t : c.termmaps)
        if (t.a == t.b) throw LoadError("term map of '" + t.a + "' with itself");
}

std::string slug(std::string_view name) {
    std::string out;
    bool dash = false;
    for (char ch : name) {
        auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            if (dash && !out.empty()) out += '-';
            out += static_cast<char>(std::tolower(c));
            dash = false;
        } else {
            dash = true;
        }
    }
    return out.empty() ? "unnamed" : out;
}

std::string group_thousands(std::uint64_t n) {
    auto digits = std::to_string(n);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i && (digits.size() - i) % 3 == 0) out += ',';
        out += digits[i];
    }
    return out;
}

std::string table3_csv(const std::vector<DoiRow>& rows) {
    std::string out = "strategy,total,with_doi,doi_share_pct\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{}\n", csv_field(r.strategy), r.total, r.with_doi,
                           r.total ? format_tenths(percent_tenths(r.with_doi, r.total)) : "");
    return out;
}

std::string table4_csv(const std::vector<TermClassSummary>& rows) {
    std::string out = term_class_csv_header() + "\n";
    for (const auto& r : rows) out += term_class_csv_row(r) + "\n";
    return out;
}

std::string table5_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = overlap_csv_header() + "\n";
    for (const auto& r : rows) out += overlap_csv_row(r.a, r.b, r.counts) + "\n";
    return out;
}

namespace {

std::string md_cell(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string table3_markdown(const std::vector<DoiRow>& rows) {
    std::string out =
        "| Method | Publications | Publications with DOI | Share of publications with DOI |\n"
        "|---|---:|---:|---:|\n";
    for (const auto& r : rows)
        out += fmt::format("| {} | {} | {} | {} |\n", md_cell(r.strategy), group_thousands(r.total),
                           group_thousands(r.with_doi),
                           r.total ? format_tenths(percent_tenths(r.with_doi, r.total)) + "%" : "n/a");
    return out;
}

std::string table4_markdown(const std::vector<TermClassSummary>& rows) {
    std::string out = "| Method | General | Policy | Technical | Total |\n|---|---:|---:|---:|---:|\n";
    for (const auto& r : rows)
        out += fmt::format("| {} | {} ({}%) | {} ({}%) | {} ({}%) | {} |\n", md_cell(r.strategy), r.general,
                           r.general_pct(), r.policy, r.policy_pct(), r.technical, r.technical_pct(), r.total);
    return out;
}

std::string table5_markdown(const std::vector<ComparisonRow>& rows) {
    std::string out =
        "| Method A | Surplus (coverage) | Surplus (method) | Overlap | Surplus (method) | Surplus (coverage) | Method B |\n"
        "|---|---:|---:|---:|---:|---:|---|\n";
    for (const auto& r : rows) {
        out += "| " + md_cell(r.a);
        for (auto s : kSegments)
            out += fmt::format(" | {} ({}%)", group_thousands(r.counts[s]), format_tenths(r.counts.percent_tenths(s)));
        out += " | " + md_cell(r.b) + " |\n";
    }
    return out;
}

std::map<std::string, std::string> emit_report(const ReportBundle& bundle, ReportFormat format,
                                               const std::filesystem::path& dir) {
    std::map<std::string, std::string> written;
    auto put = [&](const std::string& rel, const std::string& content) {
        write_file_atomic(dir / rel, content);
        written.emplace(rel, sha256_hex(content));
    };
    if (format == ReportFormat::csv) {
        put("reports/table3.csv", table3_csv(bundle.table3));
        put("reports/table4.csv", table4_csv(bundle.table4));
        put("reports/table5.csv", table5_csv(bundle.table5));
    } else {
        put("reports/table3.md", table3_markdown(bundle.table3));
        put("reports/table4.md", table4_markdown(bundle.table4));
        put("reports/table5.md", table5_markdown(bundle.table5));
    }
    return written;
}

std::vector<ComparisonRow> load_table5_csv(std::string_view text) {
    std::vector<ComparisonRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line != overlap_csv_header()) throw IngestError("unexpected table5 header", line_no);
            continue;
        }
        if (line.empty()) continue;
        // Minimal CSV split with quoted fields.
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(std::move(cur));
        if (fields.size() != 12) throw IngestError("expected 12 fields", line_no);
        ComparisonRow r{fields[0], fields[1], {}};
        try {
            for (std::size_t k = 0; k < 5; ++k) r.counts.counts[k] = std::stoull(fields[2 + k]);
        } catch (const std::exception&) {
            throw IngestError("bad count", line_no);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

ReportBundle load_report_bundle(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        ReportBundle b;
        for (const auto& r : j.at("table3"))
            b.table3.push_back({r.at("strategy").get<std::string>(), r.at("total").get<std::size_t>(),
                                r.at("with_doi").get<std::size_t>()});
        for (const auto& r : j.at("table4")) {
            TermClassSummary s;
            s.strategy = r.at("strategy").get<std::string>();
            s.general = r.at("general").get<std::size_t>();
            s.policy = r.at("policy").get<std::size_t>();
            s.technical = r.at("technical").get<std::size_t>();
            s.total = r.at("total").get<std::size_t>();
            b.table4.push_back(std::move(s));
        }
        for (const auto& r : j.at("table5")) {
            ComparisonRow row{r.at("a").get<std::string>(), r.at("b").get<std::string>(), {}};
            for (auto s : kSegments) row.counts.counts[static_cast<std::size_t>(s)] = r.at(std::string(segment_name(s))).get<std::uint64_t>();
            b.table5.push_back(std::move(row));
        }
        b.figures = j.value("figures", std::vector<std::string>{});
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("malformed report bundle: ") + e.what(), 0);
    }
}

void init_logging_from_env() {
    const char* env = std::getenv("SDGLAB_LOG");
    auto level = spdlog::level::warn;
    if (env && *env) {
        level = spdlog::level::from_str(env);
        // from_str maps unknown names to off
        if (level == spdlog::level::off && std::string_view(env) != "off") level = spdlog::level::warn;
    }
    spdlog::set_level(level);
}

namespace {

struct LoadedCorpus {
    Corpus corpus;
    PositionalIndex index;
};

struct StrategyOutput {
    SearchStrategy strategy;
    std::string corpus;
    ResultSet result;
};

class Writer {
public:
    explicit Writer(std::filesystem::path root) : root_(std::move(root)) {}

    void put(const std::string& rel, const std::string& content) {
        write_file_atomic(root_ / rel, content);
        files_[rel] = sha256_hex(content);
        spdlog::debug("wrote {}", rel);
    }
    void merge(const std::map<std::string, std::string>& files) { files_.insert(files.begin(), files.end()); }
    [[nodiscard]] const std::map<std::string, std::string>& files() const { return files_; }

private:
    std::filesystem::path root_;
    std::map<std::string, std::string> files_;
};

std::string seed_hits_csv(const SearchStrategy& s, const StrategyRun& run) {
    std::string out = "kind,name,class,query,hits\n";
    for (std::size_t i = 0; i < s.seeds.size(); ++i)
        out += fmt::format("seed,{},{},{},{}\n", csv_field(s.seeds[i].query.name), term_class_name(s.seeds[i].term_class),
                           csv_field(s.seeds[i].query.text), run.seed_hits[i]);
    for (std::size_t i = 0; i < s.exclusions.size(); ++i)
        out += fmt::format("exclusion,{},,{},{}\n", csv_field(s.exclusions[i].name), csv_field(s.exclusions[i].text),
                           run.exclusion_hits[i]);
    return out;
}

std::string enhancement_json(const EnhancementReport& r, const EnhancementSpec& spec) {
    nlohmann::ordered_json j;
    j["threshold"] = spec.threshold;
    j["members"] = r.members.size();
    j["clusters_included"] = r.clusters_included;
    j["clusters_excluded"] = r.clusters_excluded;
    j["seeds_lost"] = r.seeds_lost;
    j["members_added"] = r.members_added;
    j["unassigned_seeds"] = r.unassigned_seeds;
    auto& cl = j["clusters"] = nlohmann::ordered_json::array();
    for (const auto& c : r.clusters)
        cl.push_back({{"cluster", c.cluster_id},
                      {"size", c.size},
                      {"seeds", c.seed_count},
                      {"share", c.share},
                      {"included", c.included},
                      {"unassigned_singleton", c.unassigned_singleton}});
    return j.dump(2) + "\n";
}

std::string to_string(const ResultSet& r) {
    std::ostringstream out;
    save_result(out, r);
    return out.str();
}

}  // namespace

ReportBundle run_pipeline(const PipelineConfig& config) {
    stage("validate", [&] { validate_pipeline_config(config); });

    // Strategy files are parsed up front so that name errors surface before
    // any corpus is read.
    std::vector<SearchStrategy> strategies = stage("validate", [&] {
        std::vector<SearchStrategy> out;
        std::set<std::string> names;
        for (const auto& src : config.strategies) {
            auto s = load_strategy_file(src.file.string());
            if (config.window) s.window = *config.window;
            if (!names.insert(s.name).second) throw LoadError("strategy name '" + s.name + "' used twice");
            out.push_back(std::move(s));
        }
        for (const auto& p : config.comparisons)
            for (const auto* n : {&p.a, &p.b})
                if (!names.contains(*n)) throw LoadError("comparison references undefined strategy '" + *n + "'");
        for (const auto& t : config.termmaps)
            for (const auto* n : {&t.a, &t.b})
                if (!names.contains(*n)) throw LoadError("term map references undefined strategy '" + *n + "'");
        return out;
    });

    Writer writer(config.output_dir);
    ReportBundle bundle;
    bundle.config_hash = config.config_hash;
    bundle.output_dir = config.output_dir;

    std::map<std::string, LoadedCorpus> corpora;
    for (const auto& src : config.corpora) {
        auto corpus = stage("ingest:" + src.name, [&] {
            DoiSet extra;
            if (!src.coverage_file.empty()) extra = load_coverage_file(src.coverage_file.string());
            return ingest_corpus_file(src.corpus_file.string(), src.name, std::move(extra));
        });
        auto index = stage("index:" + src.name, [&] { return PositionalIndex::build(corpus); });
        spdlog::info("corpus {}: {} records, {} coverage DOIs", src.name, corpus.size(), corpus.coverage().size());
        corpora.emplace(src.name, LoadedCorpus{std::move(corpus), std::move(index)});
    }

    std::map<std::string, StrategyOutput> outputs;
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        auto& s = strategies[i];
        const auto& loaded = corpora.at(config.strategies[i].corpus);
        const std::string dir = "results/" + slug(s.name) + "/";
        auto run = stage("run:" + s.name, [&] { return run_strategy_detailed(s, loaded.index, loaded.corpus); });
        ResultSet result = run.result;
        stage("run:" + s.name, [&] { writer.put(dir + "seed_hits.csv", seed_hits_csv(s, run)); });
        if (s.enhancement) {
            result = stage("enhance:" + s.name, [&] {
                ClusterThresholdEnhancer enhancer(*s.enhancement, s.base_dir);
                auto outcome = enhancer.enhance(run.result, loaded.corpus, s.window);
                writer.put(dir + "seed_result.json", to_string(run.result));
                writer.put(dir + "enhancement.json", enhancement_json(outcome.report, *s.enhancement));
                return outcome.result;
            });
        }
        stage("run:" + s.name, [&] { writer.put(dir + "result.json", to_string(result)); });
        spdlog::info("strategy {}: {} publications", s.name, result.members.size());
        bundle.table3.push_back({s.name, result.members.size(), result.members_with_doi});
        bundle.table4.push_back(term_class_summary(s));
        outputs.emplace(s.name, StrategyOutput{s, config.strategies[i].corpus, std::move(result)});
    }

    for (const auto& p : config.comparisons) {
        const std::string label = p.a + "__" + p.b;
        stage("compare:" + label, [&] {
            const auto& a = outputs.at(p.a);
            const auto& b = outputs.at(p.b);
            auto cmp = pairwise_compare(a.result, corpora.at(b.corpus).corpus.coverage(), b.result,
                                        corpora.at(a.corpus).corpus.coverage());
            const std::string dir = "comparisons/" + slug(p.a) + "__" + slug(p.b) + "/";
            auto fig = render_overlap_bar(cmp);
            writer.put(dir + "overlap.svg", fig.svg);
            writer.put(dir + "overlap.json", fig.json);
            writer.put(dir + "detail.json", comparison_detail_json(cmp, 25));
            bundle.figures.push_back(dir + "overlap.svg");
            bundle.table5.push_back({p.a, p.b, cmp.counts()});
        });
    }

    for (const auto& t : config.termmaps) {
        stage("termmap:" + t.a + "__" + t.b, [&] {
            const auto& a = outputs.at(t.a);
            const auto& b = outputs.at(t.b);
            auto docs_a = term_documents(a.result, corpora.at(a.corpus).corpus);
            auto docs_b = term_documents(b.result, corpora.at(b.corpus).corpus);
            auto map = build_term_map(t.a, t.b, docs_a, docs_b, t.config);
            const std::string dir = "termmaps/" + slug(t.a) + "__" + slug(t.b) + "/";
            writer.put(dir + "map.json", term_map_json(map));
            writer.put(dir + "map.graphml", term_map_graphml(map));
            writer.put(dir + "map.html", term_map_html(map));
            bundle.figures.push_back(dir + "map.html");
            spdlog::info("term map {} vs {}: {} terms", t.a, t.b, map.terms.size());
        });
    }

    stage("report", [&] {
        writer.merge(emit_report(bundle, ReportFormat::csv, config.output_dir));
        writer.merge(emit_report(bundle, ReportFormat::markdown, config.output_dir));

        nlohmann::ordered_json j;
        auto& t3 = j["table3"] = nlohmann::ordered_json::array();
        for (const auto& r : bundle.table3)
            t3.push_back({{"strategy", r.strategy},
                          {"total", r.total},
                          {"with_doi", r.with_doi},
                          {"doi_share_pct", r.total ? format_tenths(percent_tenths(r.with_doi, r.total)) : ""}});
        auto& t4 = j["table4"] = nlohmann::ordered_json::array();
        for (const auto& r : bundle.table4)
            t4.push_back({{"strategy", r.strategy},
                          {"general", r.general},
                          {"policy", r.policy},
                          {"technical", r.technical},
                          {"total", r.total}});
        auto& t5 = j["table5"] = nlohmann::ordered_json::array();
        for (const auto& r : bundle.table5) {
            nlohmann::ordered_json row{{"a", r.a}, {"b", r.b}};
            for (auto s : kSegments) row[std::string(segment_name(s))] = r.counts[s];
            t5.push_back(std::move(row));
        }
        j["figures"] = bundle.figures;
        writer.put("reports/bundle.json", j.dump(2) + "\n");

        nlohmann::ordered_json m;
        m["tool"] = "sdglab";
        m["version"] = library_version();
        m["config_sha256"] = config.config_hash;
        m["files"] = writer.files();
        write_file_atomic(config.output_dir / "manifest.json", m.dump(2) + "\n");
    });

    bundle.files = writer.files();
    return bundle;
}

}  // namespace sdglab
