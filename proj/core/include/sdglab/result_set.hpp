// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "sdglab/common.hpp"
#include "sdglab/corpus.hpp"

namespace sdglab {

/// Publications retrieved by one strategy from one corpus. `doi_members`
/// holds the distinct normalized DOIs of the members; `members_with_doi`
/// counts member records carrying a DOI (several records may share one).
struct ResultSet {
    std::string strategy_name;
    std::string corpus_name;
    IdSet members;
    DoiSet doi_members;
    std::size_t members_with_doi = 0;

    /// Builds the DOI-derived fields from the corpus. Ids missing from the
    /// corpus raise ComputeError.
    static ResultSet from_members(std::string strategy_name, const Corpus& corpus, IdSet members);

    friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

/// Share of members carrying a DOI. Throws ComputeError("empty result set").
double doi_share(const ResultSet& result);

/// JSON result file used between CLI stages.
void save_result(std::ostream& out, const ResultSet& result);
ResultSet load_result(std::istream& in);
ResultSet load_result_file(const std::string& path);

}  // namespace sdglab
