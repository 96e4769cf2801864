// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/clustering.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>

namespace sdglab {

std::optional<std::uint32_t> CitationGraph::node_index(std::string_view id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    if (it == nodes.end() || *it != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes.begin());
}

CitationGraph build_citation_graph(const Corpus& corpus) {
    CitationGraph g;
    for (const auto& r : corpus.records()) g.nodes.push_back(r.id);
    std::sort(g.nodes.begin(), g.nodes.end());

    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const auto& r : corpus.records()) {
        auto from = *g.node_index(r.id);
        for (const auto& ref : r.references) {
            if (ref == r.id) {
                ++g.self_citations;
                continue;
            }
            auto to = g.node_index(ref);
            if (!to) {
                ++g.dangling_references;
                continue;
            }
            pairs.emplace(std::min(from, *to), std::max(from, *to));
        }
    }
    g.edges.reserve(pairs.size());
    for (auto [u, v] : pairs) g.edges.push_back({u, v, 1.0});
    return g;
}

ClusterAssignment::ClusterAssignment(std::map<std::string, std::string> mapping) : mapping_(std::move(mapping)) {
    for (const auto& [id, cluster] : mapping_) members_[cluster].push_back(id);
}

const std::string* ClusterAssignment::cluster_of(std::string_view id) const {
    auto it = mapping_.find(std::string(id));
    return it == mapping_.end() ? nullptr : &it->second;
}

ClusterAssignment ClusterAssignment::restricted_to(const IdSet& ids) const {
    std::map<std::string, std::string> kept;
    for (const auto& [id, cluster] : mapping_)
        if (ids.contains(id)) kept.emplace(id, cluster);
    return ClusterAssignment(std::move(kept));
}

void ClusterAssignment::save(std::ostream& out) const {
    for (const auto& [id, cluster] : mapping_) out << id << '\t' << cluster << '\n';
}

namespace {

struct LevelGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no self entries
    std::vector<double> self_weight;
};

void shuffle(std::vector<std::uint32_t>& v, std::mt19937_64& rng) {
    // Explicit Fisher-Yates: std::shuffle's draw sequence is implementation-defined.
    for (std::size_t i = v.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

// One round of local moving. Returns true when any node changed community.
bool local_moving(const LevelGraph& g, double resolution, std::mt19937_64& rng, std::vector<std::uint32_t>& community) {
    const auto n = static_cast<std::uint32_t>(g.adj.size());
    std::vector<double> degree(n, 0.0);
    double two_m = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        degree[i] = 2.0 * g.self_weight[i];
        for (auto [_, w] : g.adj[i]) degree[i] += w;
        two_m += degree[i];
    }
    if (two_m <= 0.0) return false;

    std::vector<double> total(n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) total[community[i]] += degree[i];

    std::vector<std::uint32_t> order(n);
    for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
    shuffle(order, rng);

    std::vector<double> link(n, 0.0);
    std::vector<std::uint32_t> touched;
    bool any_move = false;
    for (int pass = 0; pass < 64; ++pass) {
        bool moved = false;
        for (auto i : order) {
            touched.clear();
            for (auto [j, w] : g.adj[i]) {
                auto c = community[j];
                if (link[c] == 0.0) touched.push_back(c);
                link[c] += w;
            }
            auto own = community[i];
            total[own] -= degree[i];
            auto gain = [&](std::uint32_t c) { return link[c] - resolution * total[c] * degree[i] / two_m; };

            std::uint32_t best = own;
            double best_gain = gain(own);
            std::sort(touched.begin(), touched.end());
            for (auto c : touched) {
                double gc = gain(c);
                if (gc > best_gain + 1e-12) {
                    best = c;
                    best_gain = gc;
                }
            }
            total[best] += degree[i];
            community[i] = best;
            if (best != own) moved = true;
            for (auto c : touched) link[c] = 0.0;
        }
        if (!moved) break;
        any_move = true;
    }
    return any_move;
}

// Renumbers communities densely in order of first appearance.
std::uint32_t renumber(std::vector<std::uint32_t>& community) {
    std::vector<std::int64_t> remap(community.size(), -1);
    std::uint32_t next = 0;
    for (auto& c : community) {
        if (remap[c] < 0) remap[c] = next++;
        c = static_cast<std::uint32_t>(remap[c]);
    }
    return next;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::uint32_t>& community, std::uint32_t count) {
    LevelGraph out;
    out.adj.resize(count);
    out.self_weight.assign(count, 0.0);
    std::vector<std::map<std::uint32_t, double>> links(count);
    for (std::uint32_t u = 0; u < g.adj.size(); ++u) {
        auto cu = community[u];
        out.self_weight[cu] += g.self_weight[u];
        for (auto [v, w] : g.adj[u]) {
            if (v < u) continue;
            auto cv = community[v];
            if (cu == cv) {
                out.self_weight[cu] += w;
            } else {
                links[cu][cv] += w;
                links[cv][cu] += w;
            }
        }
    }
    for (std::uint32_t c = 0; c < count; ++c)
        for (auto [d, w] : links[c]) out.adj[c].emplace_back(d, w);
    return out;
}

}  // namespace

ClusterAssignment cluster_citation_graph(const CitationGraph& graph, double resolution, std::uint64_t seed) {
    if (graph.nodes.empty()) throw ComputeError("cannot cluster an empty citation graph");
    if (!(resolution > 0.0)) throw ComputeError("clustering resolution must be positive");

    const auto n = static_cast<std::uint32_t>(graph.nodes.size());
    LevelGraph level;
    level.adj.resize(n);
    level.self_weight.assign(n, 0.0);
    for (const auto& e : graph.edges) {
        level.adj[e.u].emplace_back(e.v, e.weight);
        level.adj[e.v].emplace_back(e.u, e.weight);
    }

    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> node_community(n);
    for (std::uint32_t i = 0; i < n; ++i) node_community[i] = i;

    for (int depth = 0; depth < 32; ++depth) {
        std::vector<std::uint32_t> community(level.adj.size());
        for (std::uint32_t i = 0; i < community.size(); ++i) community[i] = i;
        if (!local_moving(level, resolution, rng, community)) break;
        auto count = renumber(community);
        for (auto& c : node_community) c = community[c];
        if (count == level.adj.size()) break;
        level = aggregate(level, community, count);
    }

    // Canonical labels: clusters numbered by their smallest member id, which
    // is the first node index (nodes are sorted) seen for that cluster.
    std::vector<std::int64_t> label(n, -1);
    std::int64_t next = 0;
    std::map<std::string, std::string> mapping;
    for (std::uint32_t i = 0; i < n; ++i) {
        auto& l = label[node_community[i]];
        if (l < 0) l = next++;
        mapping.emplace(graph.nodes[i], "c" + std::to_string(l));
    }
    return ClusterAssignment(std::move(mapping));
}

ClusterAssignment load_cluster_assignment(std::istream& in, const Corpus& corpus) {
    std::map<std::string, std::string> mapping;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        auto tab = text.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= text.size())
            throw IngestError("expected 'internal_id<TAB>cluster_id'", line);
        auto id = text.substr(0, tab);
        auto cluster = text.substr(tab + 1);
        if (!corpus.contains(id)) throw IngestError("unknown internal id '" + id + "'", line);
        if (!mapping.emplace(id, cluster).second) throw IngestError("id '" + id + "' assigned twice", line);
    }
    return ClusterAssignment(std::move(mapping));
}

ClusterAssignment load_cluster_assignment_file(const std::string& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open cluster assignment file '" + path + "'");
    try {
        return load_cluster_assignment(in, corpus);
    } catch (const IngestError& e) {
        throw IngestError(path + ": " + e.what(), 0);
    }
}

EnhancementReport enhance_by_cluster_threshold(const IdSet& seed_members, const ClusterAssignment& assignment,
                                               double theta) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw ComputeError("threshold must lie in [0, 1]");

    EnhancementReport report;
    std::map<std::string, std::size_t> seeds_per_cluster;
    std::vector<std::string> unassigned;
    for (const auto& id : seed_members) {
        if (const auto* c = assignment.cluster_of(id))
            ++seeds_per_cluster[*c];
        else
            unassigned.push_back(id);
    }

    std::vector<std::string> out;
    for (const auto& [cluster, members] : assignment.clusters()) {
        auto seeds_it = seeds_per_cluster.find(cluster);
        std::size_t seeds = seeds_it == seeds_per_cluster.end() ? 0 : seeds_it->second;
        double share = static_cast<double>(seeds) / static_cast<double>(members.size());
        bool included = share >= theta;
        if (included) {
            out.insert(out.end(), members.begin(), members.end());
            report.members_added += members.size() - seeds;
            if (seeds > 0) ++report.clusters_included;
        } else {
            report.seeds_lost += seeds;
            if (seeds > 0) ++report.clusters_excluded;
        }
        if (seeds > 0) report.clusters.push_back({cluster, members.size(), seeds, share, included, false});
    }
    // Seeds lacking citation data form singleton clusters with share 1.
    report.unassigned_seeds = unassigned.size();
    for (auto& id : unassigned) {
        report.clusters.push_back({"singleton:" + id, 1, 1, 1.0, true, true});
        ++report.clusters_included;
        out.push_back(std::move(id));
    }
    report.members = IdSet(std::move(out));
    return report;
}

ResultSet enhance_by_cluster_threshold(const ResultSet& seed_result, const ClusterAssignment& assignment, double theta,
                                       const Corpus& corpus) {
    auto report = enhance_by_cluster_threshold(seed_result.members, assignment, theta);
    return ResultSet::from_members(seed_result.strategy_name, corpus, std::move(report.members));
}

ClusterThresholdEnhancer::ClusterThresholdEnhancer(EnhancementSpec spec, std::string base_dir)
    : spec_(std::move(spec)), base_dir_(std::move(base_dir)) {
    if (!(spec_.threshold >= 0.0 && spec_.threshold <= 1.0)) throw LoadError("enhancement threshold must lie in [0, 1]");
}

ClusterAssignment ClusterThresholdEnhancer::assignment_for(const Corpus& corpus) const {
    if (spec_.source == EnhancementSpec::Source::external) {
        std::filesystem::path p(spec_.assignment_file);
        if (p.is_relative() && !base_dir_.empty()) p = std::filesystem::path(base_dir_) / p;
        return load_cluster_assignment_file(p.string(), corpus);
    }
    return cluster_citation_graph(build_citation_graph(corpus), spec_.resolution, spec_.seed);
}

EnhancementOutcome ClusterThresholdEnhancer::enhance(const ResultSet& seeds, const Corpus& corpus,
                                                     const YearWindow& window) const {
    auto assignment = assignment_for(corpus);
    if (spec_.denominator == ShareDenominator::window) {
        std::vector<std::string> in_window;
        for (const auto& r : corpus.records())
            if (window.contains(r.year)) in_window.push_back(r.id);
        assignment = assignment.restricted_to(IdSet(std::move(in_window)));
    }
    auto report = enhance_by_cluster_threshold(seeds.members, assignment, spec_.threshold);
    auto members = filter_window(report.members, corpus, window);
    return {ResultSet::from_members(seeds.strategy_name, corpus, std::move(members)), std::move(report)};
}

}  // namespace sdglab
