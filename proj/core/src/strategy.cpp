// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/strategy.hpp"

#include <filesystem>
#include <fstream>
#include <istream>

#include <nlohmann/json.hpp>

namespace sdglab {

std::string_view term_class_name(TermClass c) {
    switch (c) {
        case TermClass::general: return "general";
        case TermClass::policy: return "policy";
        case TermClass::technical: return "technical";
    }
    return "?";
}

std::optional<TermClass> parse_term_class(std::string_view name) {
    for (auto c : {TermClass::general, TermClass::policy, TermClass::technical})
        if (term_class_name(c) == name) return c;
    return std::nullopt;
}

namespace {

NamedQuery parse_named(std::string name, std::string text) {
    try {
        auto query = parse_query(text);
        return {std::move(name), std::move(text), std::move(query)};
    } catch (const ParseError& e) {
        throw LoadError("query " + name + " ('" + text + "'): " + e.what());
    }
}

EnhancementSpec parse_enhancement(const nlohmann::json& j) {
    EnhancementSpec spec;
    auto kind = j.value("kind", std::string("cluster_threshold"));
    if (kind != "cluster_threshold") throw LoadError("unsupported enhancement kind '" + kind + "'");
    spec.threshold = j.value("threshold", spec.threshold);
    if (!(spec.threshold >= 0.0 && spec.threshold <= 1.0)) throw LoadError("enhancement threshold must lie in [0, 1]");
    auto source = j.value("assignment_source", std::string("computed"));
    if (source == "computed") {
        spec.source = EnhancementSpec::Source::computed;
    } else if (source == "external") {
        spec.source = EnhancementSpec::Source::external;
        spec.assignment_file = j.value("assignment_file", std::string());
        if (spec.assignment_file.empty()) throw LoadError("external enhancement needs 'assignment_file'");
    } else {
        throw LoadError("unknown assignment_source '" + source + "'");
    }
    spec.resolution = j.value("resolution", spec.resolution);
    spec.seed = j.value("seed", spec.seed);
    auto denom = j.value("share_denominator", std::string("window"));
    if (denom == "window")
        spec.denominator = ShareDenominator::window;
    else if (denom == "corpus")
        spec.denominator = ShareDenominator::corpus;
    else
        throw LoadError("share_denominator must be 'window' or 'corpus'");
    return spec;
}

}  // namespace

SearchStrategy load_strategy(std::istream& in, std::string base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("strategy file is not valid JSON: ") + e.what());
    }
    try {
        SearchStrategy s;
        s.base_dir = std::move(base_dir);
        s.name = j.at("name").get<std::string>();
        if (s.name.empty()) throw LoadError("strategy name is empty");
        s.description = j.value("description", std::string());
        if (j.contains("fields")) {
            s.fields = FieldSet::from_names(j.at("fields").get<std::vector<std::string>>());
            if (s.fields.empty()) throw LoadError("strategy selects no fields");
        }
        if (j.contains("window")) s.window = YearWindow(j["window"].at("start").get<int>(), j["window"].at("end").get<int>());
        if (j.contains("doc_types")) s.doc_types = j["doc_types"].get<std::vector<std::string>>();

        const auto& seeds = j.at("seeds");
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            const auto& e = seeds[i];
            auto name = e.value("name", "seeds[" + std::to_string(i) + "]");
            auto cls_name = e.at("class").get<std::string>();
            auto cls = parse_term_class(cls_name);
            if (!cls) throw LoadError("query " + name + ": unknown term class '" + cls_name + "'");
            s.seeds.push_back({parse_named(name, e.at("query").get<std::string>()), *cls});
        }
        if (s.seeds.empty()) throw LoadError("strategy '" + s.name + "' has no seed terms");

        if (j.contains("exclusions")) {
            const auto& ex = j["exclusions"];
            for (std::size_t i = 0; i < ex.size(); ++i)
                s.exclusions.push_back(parse_named("exclusions[" + std::to_string(i) + "]", ex[i].get<std::string>()));
        }
        if (j.contains("enhancement") && !j["enhancement"].is_null()) s.enhancement = parse_enhancement(j["enhancement"]);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("malformed strategy file: ") + e.what());
    }
}

SearchStrategy load_strategy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open strategy file '" + path + "'");
    try {
        return load_strategy(in, std::filesystem::path(path).parent_path().string());
    } catch (const LoadError& e) {
        throw LoadError(path + ": " + e.what());
    }
}

StrategyRun run_strategy_detailed(const SearchStrategy& strategy, const PositionalIndex& index, const Corpus& corpus) {
    StrategyRun run;
    IdSet hits;
    for (const auto& seed : strategy.seeds) {
        auto ids = evaluate_ids(seed.query.query, index, strategy.fields);
        run.seed_hits.push_back(ids.size());
        hits = set_union(hits, ids);
    }
    IdSet excluded;
    for (const auto& ex : strategy.exclusions) {
        auto ids = evaluate_ids(ex.query, index, strategy.fields);
        run.exclusion_hits.push_back(ids.size());
        excluded = set_union(excluded, ids);
    }
    auto kept = set_difference(hits, excluded);
    run.excluded = hits.size() - kept.size();

    if (!strategy.doc_types.empty()) {
        std::vector<std::string> typed;
        for (const auto& id : kept) {
            const auto* rec = corpus.find(id);
            if (rec && std::find(strategy.doc_types.begin(), strategy.doc_types.end(), rec->doc_type) !=
                           strategy.doc_types.end())
                typed.push_back(id);
        }
        kept = IdSet::from_sorted(std::move(typed));
    }

    auto windowed = filter_window(kept, corpus, strategy.window);
    run.outside_window = kept.size() - windowed.size();
    run.result = ResultSet::from_members(strategy.name, corpus, std::move(windowed));
    return run;
}

ResultSet run_strategy(const SearchStrategy& strategy, const PositionalIndex& index, const Corpus& corpus) {
    return run_strategy_detailed(strategy, index, corpus).result;
}

namespace {
std::int64_t pct(std::size_t count, std::size_t total) { return total == 0 ? 0 : percent_whole(count, total); }
}  // namespace

std::int64_t TermClassSummary::general_pct() const { return pct(general, total); }
std::int64_t TermClassSummary::policy_pct() const { return pct(policy, total); }
std::int64_t TermClassSummary::technical_pct() const { return pct(technical, total); }

TermClassSummary term_class_summary(const SearchStrategy& strategy) {
    TermClassSummary s;
    s.strategy = strategy.name;
    for (const auto& t : strategy.seeds) {
        switch (t.term_class) {
            case TermClass::general: ++s.general; break;
            case TermClass::policy: ++s.policy; break;
            case TermClass::technical: ++s.technical; break;
        }
    }
    s.total = strategy.seeds.size();
    return s;
}

std::string term_class_csv_header() { return "strategy,general,policy,technical,total"; }

std::string term_class_csv_row(const TermClassSummary& s) {
    return csv_field(s.strategy) + "," + std::to_string(s.general) + "," + std::to_string(s.policy) + "," +
           std::to_string(s.technical) + "," + std::to_string(s.total);
}

}  // namespace sdglab
