// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/termmap.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "sdglab/index.hpp"
#include "sdglab/io.hpp"
#include "sdglab/tokenize.hpp"

namespace sdglab {

std::set<std::string> default_stoplist() {
    return {"a",       "about",   "above", "after", "again",  "against", "all",     "also",  "am",     "an",
            "and",     "any",     "are",   "as",    "at",     "be",      "because", "been",  "before", "being",
            "between", "both",    "but",   "by",    "can",    "could",   "did",     "do",    "does",   "doing",
            "during",  "each",    "few",   "for",   "from",   "further", "had",     "has",   "have",   "having",
            "here",    "how",     "however", "i",   "if",     "in",      "into",    "is",    "it",     "its",
            "itself",  "may",     "more",  "most",  "much",   "no",      "nor",     "not",   "of",     "off",
            "on",      "once",    "only",  "or",    "other",  "our",     "out",     "over",  "own",    "same",
            "should",  "so",      "some",  "such",  "than",   "that",    "the",     "their", "them",   "then",
            "there",   "these",   "they",  "this",  "those",  "through", "thus",    "to",    "too",    "under",
            "until",   "up",      "upon",  "using", "very",   "was",     "we",      "were",  "what",   "when",
            "where",   "which",   "while", "who",   "whom",   "why",     "will",    "with",  "within", "would",
            "yet",     "you",     "your"};
}

TermMapConfig TermMapConfig::with_default_stoplist() {
    TermMapConfig c;
    c.stoplist = default_stoplist();
    return c;
}

std::set<std::string> load_stoplist(std::istream& in) {
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line))
        for (auto& t : tokenize(line)) out.insert(std::move(t.text));
    return out;
}

std::vector<TermDocument> term_documents(const ResultSet& result, const Corpus& corpus) {
    std::vector<TermDocument> docs;
    docs.reserve(result.members.size());
    for (const auto& id : result.members) {
        const auto* rec = corpus.find(id);
        if (!rec) throw ComputeError("result member '" + id + "' is not in corpus '" + corpus.name() + "'");
        docs.push_back({rec->doi ? *rec->doi : corpus.name() + ":" + rec->id, rec->title, rec->abstract_text});
    }
    return docs;
}

namespace {

void add_ngrams(const TokenStream& tokens, const TermMapConfig& config, std::set<std::string>& out) {
    for (std::size_t start = 0; start < tokens.size(); ++start) {
        if (config.stoplist.contains(tokens[start].text)) continue;
        std::string term;
        for (std::size_t len = 1; len <= config.max_ngram && start + len <= tokens.size(); ++len) {
            const auto& last = tokens[start + len - 1].text;
            if (len > 1) term += ' ';
            term += last;
            if (!config.stoplist.contains(last)) out.insert(term);
        }
    }
}

void validate_config(const TermMapConfig& config) {
    if (config.min_occurrences < 1) throw ComputeError("min_occurrences must be at least 1");
    if (config.max_ngram < 1) throw ComputeError("max_ngram must be at least 1");
}

}  // namespace

std::set<std::string> document_terms(const TermDocument& doc, const TermMapConfig& config) {
    std::set<std::string> out;
    add_ngrams(tokenize(doc.title), config, out);
    add_ngrams(tokenize(doc.abstract_text), config, out);
    return out;
}

double contrast_score(std::size_t occ_a, std::size_t occ_b) {
    if (occ_a == 0 && occ_b == 0) throw ComputeError("term unobserved");
    return (static_cast<double>(occ_b) - static_cast<double>(occ_a)) / static_cast<double>(occ_a + occ_b);
}

std::vector<TermStats> extract_terms(std::span<const TermDocument> docs_a, std::span<const TermDocument> docs_b,
                                     const TermMapConfig& config) {
    validate_config(config);
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> tally;
    for (const auto& d : docs_a)
        for (const auto& t : document_terms(d, config)) ++tally[t].first;
    for (const auto& d : docs_b)
        for (const auto& t : document_terms(d, config)) ++tally[t].second;

    std::vector<TermStats> out;
    for (auto& [term, counts] : tally) {
        if (counts.first + counts.second < config.min_occurrences) continue;
        out.push_back({term, counts.first, counts.second, contrast_score(counts.first, counts.second)});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.term < y.term; });
    return out;
}

std::vector<TermEdge> cooccurrence_edges(const std::vector<TermStats>& terms, std::span<const TermDocument> docs,
                                         const TermMapConfig& config) {
    std::unordered_map<std::string, std::uint32_t> position;
    for (std::uint32_t i = 0; i < terms.size(); ++i) position.emplace(terms[i].term, i);

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> weights;
    std::vector<std::uint32_t> present;
    for (const auto& d : docs) {
        present.clear();
        for (const auto& t : document_terms(d, config))
            if (auto it = position.find(t); it != position.end()) present.push_back(it->second);
        std::sort(present.begin(), present.end());
        for (std::size_t i = 0; i < present.size(); ++i)
            for (std::size_t j = i + 1; j < present.size(); ++j) ++weights[{present[i], present[j]}];
    }
    std::vector<TermEdge> out;
    out.reserve(weights.size());
    for (const auto& [pair, w] : weights) out.push_back({pair.first, pair.second, w});
    return out;
}

std::vector<Point> layout_map(const std::vector<TermEdge>& edges, std::size_t term_count, const TermMapConfig& config) {
    std::vector<Point> pos(term_count);
    if (term_count <= 1) return pos;

    std::mt19937_64 rng(config.layout_seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (auto& p : pos) {
        p.x = unit();
        p.y = unit();
    }

    const double n = static_cast<double>(term_count);
    const double k = std::sqrt(1.0 / n);
    double max_weight = 1.0;
    for (const auto& e : edges) max_weight = std::max(max_weight, static_cast<double>(e.weight));

    const std::size_t iterations = std::max<std::size_t>(config.layout_iterations, 1);
    std::vector<Point> disp(term_count);
    for (std::size_t it = 0; it < iterations; ++it) {
        const double temperature = 0.1 * (1.0 - static_cast<double>(it) / static_cast<double>(iterations)) + 1e-4;
        for (auto& d : disp) d = {0.0, 0.0};

        for (std::size_t i = 0; i < term_count; ++i) {
            for (std::size_t j = i + 1; j < term_count; ++j) {
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double dist = std::sqrt(dx * dx + dy * dy);
                if (dist < 1e-9) {
                    // Coincident points: separate along a fixed direction.
                    dx = 1e-3 * static_cast<double>(j - i);
                    dy = 1e-3;
                    dist = std::sqrt(dx * dx + dy * dy);
                }
                double force = k * k / dist;
                double fx = dx / dist * force;
                double fy = dy / dist * force;
                disp[i].x += fx;
                disp[i].y += fy;
                disp[j].x -= fx;
                disp[j].y -= fy;
            }
        }
        for (const auto& e : edges) {
            double dx = pos[e.source].x - pos[e.target].x;
            double dy = pos[e.source].y - pos[e.target].y;
            double dist = std::sqrt(dx * dx + dy * dy);
            if (dist < 1e-12) continue;
            double force = (static_cast<double>(e.weight) / max_weight) * dist * dist / k;
            double fx = dx / dist * force;
            double fy = dy / dist * force;
            disp[e.source].x -= fx;
            disp[e.source].y -= fy;
            disp[e.target].x += fx;
            disp[e.target].y += fy;
        }
        for (std::size_t i = 0; i < term_count; ++i) {
            double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
            if (len < 1e-12) continue;
            double step = std::min(len, temperature);
            pos[i].x += disp[i].x / len * step;
            pos[i].y += disp[i].y / len * step;
        }
    }

    double min_x = pos[0].x, max_x = pos[0].x, min_y = pos[0].y, max_y = pos[0].y;
    for (const auto& p : pos) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double range_x = max_x - min_x;
    const double range_y = max_y - min_y;
    const double scale = std::max(range_x, range_y);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        for (auto& p : pos) p = {0.5, 0.5};
        return pos;
    }
    const double off_x = (1.0 - range_x / scale) / 2.0;
    const double off_y = (1.0 - range_y / scale) / 2.0;
    for (auto& p : pos) {
        p.x = std::clamp((p.x - min_x) / scale + off_x, 0.0, 1.0);
        p.y = std::clamp((p.y - min_y) / scale + off_y, 0.0, 1.0);
    }
    return pos;
}

TermMap build_term_map(std::string name_a, std::string name_b, std::span<const TermDocument> docs_a,
                       std::span<const TermDocument> docs_b, const TermMapConfig& config) {
    TermMap map;
    map.name_a = std::move(name_a);
    map.name_b = std::move(name_b);
    map.config = config;
    map.terms = extract_terms(docs_a, docs_b, config);

    std::vector<TermDocument> combined;
    std::unordered_set<std::string> seen;
    for (auto docs : {docs_a, docs_b})
        for (const auto& d : docs)
            if (seen.insert(d.key).second) combined.push_back(d);
    map.edges = cooccurrence_edges(map.terms, combined, config);
    map.coordinates = layout_map(map.edges, map.terms.size(), config);
    return map;
}

std::string term_map_json(const TermMap& map) {
    nlohmann::ordered_json j;
    j["a"] = map.name_a;
    j["b"] = map.name_b;
    j["config"] = {{"min_occurrences", map.config.min_occurrences},
                   {"max_ngram", map.config.max_ngram},
                   {"layout_seed", map.config.layout_seed},
                   {"layout_iterations", map.config.layout_iterations},
                   {"stoplist", map.config.stoplist}};
    auto& terms = j["terms"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < map.terms.size(); ++i) {
        const auto& t = map.terms[i];
        Point p = i < map.coordinates.size() ? map.coordinates[i] : Point{};
        terms.push_back({{"term", t.term}, {"occ_a", t.occ_a}, {"occ_b", t.occ_b}, {"score", t.score}, {"x", p.x}, {"y", p.y}});
    }
    auto& edges = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : map.edges)
        edges.push_back({{"source", map.terms.at(e.source).term}, {"target", map.terms.at(e.target).term}, {"weight", e.weight}});
    return j.dump(1) + "\n";
}

TermMap load_term_map_json(std::string_view text) {
    try {
        auto j = nlohmann::json::parse(text);
        TermMap map;
        map.name_a = j.at("a").get<std::string>();
        map.name_b = j.at("b").get<std::string>();
        const auto& c = j.at("config");
        map.config.min_occurrences = c.at("min_occurrences").get<std::size_t>();
        map.config.max_ngram = c.at("max_ngram").get<std::size_t>();
        map.config.layout_seed = c.at("layout_seed").get<std::uint64_t>();
        map.config.layout_iterations = c.at("layout_iterations").get<std::size_t>();
        map.config.stoplist = c.at("stoplist").get<std::set<std::string>>();
        std::unordered_map<std::string, std::uint32_t> position;
        for (const auto& t : j.at("terms")) {
            position.emplace(t.at("term").get<std::string>(), static_cast<std::uint32_t>(map.terms.size()));
            map.terms.push_back({t.at("term").get<std::string>(), t.at("occ_a").get<std::size_t>(),
                                 t.at("occ_b").get<std::size_t>(), t.at("score").get<double>()});
            map.coordinates.push_back({t.at("x").get<double>(), t.at("y").get<double>()});
        }
        for (const auto& e : j.at("edges")) {
            auto s = position.find(e.at("source").get<std::string>());
            auto t = position.find(e.at("target").get<std::string>());
            if (s == position.end() || t == position.end()) throw IngestError("term map edge references an unknown term", 0);
            map.edges.push_back({s->second, t->second, e.at("weight").get<std::size_t>()});
        }
        return map;
    } catch (const nlohmann::json::exception& e) {
        throw IngestError(std::string("malformed term map JSON: ") + e.what(), 0);
    }
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Rgb {
    double r, g, b;
};

constexpr Rgb kBlue{33, 102, 172};
constexpr Rgb kNeutral{247, 247, 247};
constexpr Rgb kRed{178, 24, 43};

}  // namespace

std::string score_color(double score) {
    score = std::clamp(score, -1.0, 1.0);
    const Rgb& from = kNeutral;
    const Rgb& to = score < 0 ? kBlue : kRed;
    double t = std::abs(score);
    auto mix = [t](double a, double b) { return static_cast<int>(std::lround(a + (b - a) * t)); };
    return fmt::format("#{:02x}{:02x}{:02x}", mix(from.r, to.r), mix(from.g, to.g), mix(from.b, to.b));
}

std::string term_map_graphml(const TermMap& map) {
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        "  <key id=\"occ_a\" for=\"node\" attr.name=\"occ_a\" attr.type=\"int\"/>\n"
        "  <key id=\"occ_b\" for=\"node\" attr.name=\"occ_b\" attr.type=\"int\"/>\n"
        "  <key id=\"score\" for=\"node\" attr.name=\"score\" attr.type=\"double\"/>\n"
        "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
        "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n"
        "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
    out += fmt::format("  <graph id=\"{}__{}\" edgedefault=\"undirected\">\n", xml_escape(map.name_a),
                       xml_escape(map.name_b));
    for (std::size_t i = 0; i < map.terms.size(); ++i) {
        const auto& t = map.terms[i];
        Point p = i < map.coordinates.size() ? map.coordinates[i] : Point{};
        out += fmt::format(
            "    <node id=\"n{}\"><data key=\"label\">{}</data><data key=\"occ_a\">{}</data>"
            "<data key=\"occ_b\">{}</data><data key=\"score\">{:.6f}</data><data key=\"x\">{:.6f}</data>"
            "<data key=\"y\">{:.6f}</data></node>\n",
            i, xml_escape(t.term), t.occ_a, t.occ_b, t.score, p.x, p.y);
    }
    for (std::size_t i = 0; i < map.edges.size(); ++i) {
        const auto& e = map.edges[i];
        out += fmt::format("    <edge id=\"e{}\" source=\"n{}\" target=\"n{}\"><data key=\"weight\">{}</data></edge>\n", i,
                           e.source, e.target, e.weight);
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::string term_map_html(const TermMap& map) {
    constexpr double kSize = 800.0;
    constexpr double kMargin = 60.0;
    std::size_t max_total = 1;
    for (const auto& t : map.terms) max_total = std::max(max_total, t.occ_a + t.occ_b);
    std::size_t max_weight = 1;
    for (const auto& e : map.edges) max_weight = std::max(max_weight, e.weight);

    auto sx = [&](std::size_t i) { return kMargin + map.coordinates.at(i).x * (kSize - 2 * kMargin); };
    auto sy = [&](std::size_t i) { return kMargin + map.coordinates.at(i).y * (kSize - 2 * kMargin); };

    std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    out += fmt::format("<title>Term map: {} vs {}</title>\n", xml_escape(map.name_a), xml_escape(map.name_b));
    out +=
        "<style>\n"
        "body{font-family:sans-serif;margin:20px;color:#222}\n"
        "svg{border:1px solid #ddd;background:#fff}\n"
        ".edge{stroke:#999}\n"
        ".bubble{stroke:#555;stroke-width:0.5}\n"
        ".label{font-size:10px;text-anchor:middle;pointer-events:none}\n"
        ".legend span{display:inline-block;width:14px;height:14px;vertical-align:middle;margin:0 4px}\n"
        "</style>\n</head>\n<body>\n";
    out += fmt::format("<h1>{} vs {}</h1>\n", xml_escape(map.name_a), xml_escape(map.name_b));
    out += fmt::format(
        "<p class=\"legend\"><span style=\"background:{}\"></span>more frequent in {} (score -1)"
        "<span style=\"background:{}\"></span>balanced (0)"
        "<span style=\"background:{}\"></span>more frequent in {} (score +1)</p>\n",
        score_color(-1.0), xml_escape(map.name_a), score_color(0.0), score_color(1.0), xml_escape(map.name_b));
    out += fmt::format("<p>{} terms, {} links, minimum occurrences {}</p>\n", map.terms.size(), map.edges.size(),
                       map.config.min_occurrences);
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{0:.0f}\" viewBox=\"0 0 {0:.0f} {0:.0f}\">\n",
                       kSize);
    // Only the strongest links are drawn; the JSON and GraphML exports keep all.
    constexpr std::size_t kMaxDrawnEdges = 1500;
    std::vector<const TermEdge*> drawn;
    for (const auto& e : map.edges) drawn.push_back(&e);
    std::stable_sort(drawn.begin(), drawn.end(), [](const TermEdge* x, const TermEdge* y) { return x->weight > y->weight; });
    if (drawn.size() > kMaxDrawnEdges) drawn.resize(kMaxDrawnEdges);
    out += "<g class=\"edges\">\n";
    for (const auto* ep : drawn) {
        const auto& e = *ep;
        double opacity = 0.15 + 0.6 * static_cast<double>(e.weight) / static_cast<double>(max_weight);
        out += fmt::format("<line class=\"edge\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke-opacity=\"{:.3f}\"/>\n",
                           sx(e.source), sy(e.source), sx(e.target), sy(e.target), opacity);
    }
    out += "</g>\n<g class=\"bubbles\">\n";
    for (std::size_t i = 0; i < map.terms.size(); ++i) {
        const auto& t = map.terms[i];
        double r = 4.0 + 20.0 * std::sqrt(static_cast<double>(t.occ_a + t.occ_b) / static_cast<double>(max_total));
        out += fmt::format(
            "<circle class=\"bubble\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"{}\" data-score=\"{:.4f}\">"
            "<title>{}: {} {} / {} {} (score {:.3f})</title></circle>\n",
            sx(i), sy(i), r, score_color(t.score), t.score, xml_escape(t.term), xml_escape(map.name_a), t.occ_a,
            xml_escape(map.name_b), t.occ_b, t.score);
    }
    out += "</g>\n<g class=\"labels\">\n";
    for (std::size_t i = 0; i < map.terms.size(); ++i)
        out += fmt::format("<text class=\"label\" x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", sx(i), sy(i) + 3,
                           xml_escape(map.terms[i].term));
    out += "</g>\n</svg>\n</body>\n</html>\n";
    return out;
}

void export_term_map(const TermMap& map, TermMapFormat format, const std::string& path) {
    switch (format) {
        case TermMapFormat::json: write_file_atomic(path, term_map_json(map)); return;
        case TermMapFormat::graphml: write_file_atomic(path, term_map_graphml(map)); return;
        case TermMapFormat::html: write_file_atomic(path, term_map_html(map)); return;
    }
}

}  // namespace sdglab
