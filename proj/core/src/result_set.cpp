// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/result_set.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace sdglab {

ResultSet ResultSet::from_members(std::string strategy_name, const Corpus& corpus, IdSet members) {
    ResultSet r;
    r.strategy_name = std::move(strategy_name);
    r.corpus_name = corpus.name();
    std::vector<std::string> dois;
    for (const auto& id : members) {
        const auto* rec = corpus.find(id);
        if (!rec) throw ComputeError("result member '" + id + "' is not in corpus '" + corpus.name() + "'");
        if (rec->doi) {
            ++r.members_with_doi;
            dois.push_back(*rec->doi);
        }
    }
    r.members = std::move(members);
    r.doi_members = DoiSet(std::move(dois));
    return r;
}

double doi_share(const ResultSet& result) { return doi_share(result.members_with_doi, result.members.size()); }

void save_result(std::ostream& out, const ResultSet& result) {
    nlohmann::ordered_json j;
    j["strategy"] = result.strategy_name;
    j["corpus"] = result.corpus_name;
    j["total"] = result.members.size();
    j["with_doi"] = result.members_with_doi;
    j["members"] = result.members.values();
    j["doi_members"] = result.doi_members.values();
    out << j.dump(1) << '\n';
}

ResultSet load_result(std::istream& in) {
    try {
        auto j = nlohmann::json::parse(in);
        ResultSet r;
        r.strategy_name = j.at("strategy").get<std::string>();
        r.corpus_name = j.at("corpus").get<std::string>();
        r.members = IdSet(j.at("members").get<std::vector<std::string>>());
        std::vector<std::string> dois;
        for (const auto& d : j.at("doi_members")) {
            auto n = normalize_doi(d.get<std::string>());
            if (!n) throw IngestError("result file lists a malformed DOI: " + d.dump(), 0);
            dois.push_back(std::move(*n));
        }
        r.doi_members = DoiSet(std::move(dois));
        r.members_with_doi = j.value("with_doi", r.doi_members.size());
        if (r.members_with_doi > r.members.size()) throw IngestError("result file: with_doi exceeds total", 0);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("malformed result file: ") + e.what(), 0);
    }
}

ResultSet load_result_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open result file '" + path + "'");
    return load_result(in);
}

}  // namespace sdglab
