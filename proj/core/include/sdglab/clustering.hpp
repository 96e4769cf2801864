// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdglab/corpus.hpp"
#include "sdglab/result_set.hpp"

namespace sdglab {

/// Undirected citation graph over the records of one corpus. Nodes are the
/// corpus ids in ascending order; edges are stored once with u < v.
struct CitationGraph {
    struct Edge {
        std::uint32_t u = 0;
        std::uint32_t v = 0;
        double weight = 1.0;

        friend bool operator==(const Edge&, const Edge&) = default;
    };

    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::size_t dangling_references = 0;  // targets outside the corpus
    std::size_t self_citations = 0;

    [[nodiscard]] std::optional<std::uint32_t> node_index(std::string_view id) const;
};

/// One undirected unit-weight edge per cited pair inside the corpus;
/// reciprocal citations collapse into one edge.
CitationGraph build_citation_graph(const Corpus& corpus);

/// Publication -> cluster label. Labels are opaque strings.
class ClusterAssignment {
public:
    ClusterAssignment() = default;
    explicit ClusterAssignment(std::map<std::string, std::string> mapping);

    [[nodiscard]] const std::map<std::string, std::string>& mapping() const noexcept { return mapping_; }
    [[nodiscard]] std::size_t size() const noexcept { return mapping_.size(); }
    [[nodiscard]] std::size_t cluster_count() const noexcept { return members_.size(); }
    [[nodiscard]] const std::string* cluster_of(std::string_view id) const;

    /// Cluster label -> sorted member ids.
    [[nodiscard]] const std::map<std::string, std::vector<std::string>>& clusters() const noexcept { return members_; }

    /// Keeps only the publications in `ids`; clusters left empty disappear.
    [[nodiscard]] ClusterAssignment restricted_to(const IdSet& ids) const;

    /// `internal_id<TAB>cluster_id` per line, ordered by id.
    void save(std::ostream& out) const;

    friend bool operator==(const ClusterAssignment& a, const ClusterAssignment& b) { return a.mapping_ == b.mapping_; }

private:
    std::map<std::string, std::string> mapping_;
    std::map<std::string, std::vector<std::string>> members_;
};

/// Local-moving modularity optimisation with aggregation (Louvain style).
/// Deterministic for a fixed (graph, resolution, seed). Isolated nodes end
/// up as singleton clusters. Labels are "c<k>", numbered by each cluster's
/// smallest member id. Throws ComputeError for an empty graph or a
/// non-positive resolution.
ClusterAssignment cluster_citation_graph(const CitationGraph& graph, double resolution, std::uint64_t seed);

/// Reads the TSV assignment format; ids must exist in `corpus`.
ClusterAssignment load_cluster_assignment(std::istream& in, const Corpus& corpus);
ClusterAssignment load_cluster_assignment_file(const std::string& path, const Corpus& corpus);

/// How the threshold-share denominator population is chosen.
enum class ShareDenominator { window, corpus };

/// Cluster-threshold enhancement settings carried by a strategy.
struct EnhancementSpec {
    enum class Source { computed, external };

    double threshold = 0.15;
    Source source = Source::computed;
    std::string assignment_file;  // for Source::external, relative to the strategy file
    double resolution = 1.0;
    std::uint64_t seed = 42;
    ShareDenominator denominator = ShareDenominator::window;

    friend bool operator==(const EnhancementSpec&, const EnhancementSpec&) = default;
};

struct ClusterShare {
    std::string cluster_id;
    std::size_t size = 0;
    std::size_t seed_count = 0;
    double share = 0.0;
    bool included = false;
    bool unassigned_singleton = false;
};

struct EnhancementReport {
    IdSet members;
    std::vector<ClusterShare> clusters;  // clusters holding at least one seed, by label
    std::size_t clusters_included = 0;
    std::size_t clusters_excluded = 0;   // seeded clusters below the threshold
    std::size_t seeds_lost = 0;          // seed members in sub-threshold clusters
    std::size_t members_added = 0;       // included members that were not seeds
    std::size_t unassigned_seeds = 0;    // seeds treated as singleton clusters
};

/// share(c) = |seeds ∩ c| / |c|. The output is every member of each cluster
/// with share >= theta. Seeds without an assignment count as singleton
/// clusters. Throws ComputeError for theta outside [0, 1].
EnhancementReport enhance_by_cluster_threshold(const IdSet& seed_members, const ClusterAssignment& assignment,
                                               double theta);

ResultSet enhance_by_cluster_threshold(const ResultSet& seed_result, const ClusterAssignment& assignment, double theta,
                                       const Corpus& corpus);

struct EnhancementOutcome {
    ResultSet result;
    EnhancementReport report;
};

/// Pluggable result-set enhancement step applied after a strategy run.
class Enhancer {
public:
    virtual ~Enhancer() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual EnhancementOutcome enhance(const ResultSet& seeds, const Corpus& corpus,
                                                     const YearWindow& window) const = 0;
};

/// Cluster-threshold enhancement over a computed or externally supplied
/// citation clustering. Shares are computed over in-window cluster members
/// by default (ShareDenominator::window); output is always window-limited.
class ClusterThresholdEnhancer final : public Enhancer {
public:
    ClusterThresholdEnhancer(EnhancementSpec spec, std::string base_dir = {});

    [[nodiscard]] std::string name() const override { return "cluster_threshold"; }
    [[nodiscard]] EnhancementOutcome enhance(const ResultSet& seeds, const Corpus& corpus,
                                             const YearWindow& window) const override;

    /// The clustering the enhancement uses for `corpus`.
    [[nodiscard]] ClusterAssignment assignment_for(const Corpus& corpus) const;

private:
    EnhancementSpec spec_;
    std::string base_dir_;
};

}  // namespace sdglab
