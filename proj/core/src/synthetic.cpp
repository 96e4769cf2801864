// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sdglab contributors

#include "sdglab/synthetic.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <unordered_map>

#include <fmt/format.h>

namespace sdglab {

namespace {

// Portable draws on top of mt19937_64; the std distributions differ between
// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::size_t>(hi - lo + 1))); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

using Words = std::vector<std::string>;

const Words kHazards = {"flood",          "drought",         "heat wave",        "wildfire",       "storm surge",
                        "cyclone",        "landslide",       "coastal erosion",  "sea level rise", "extreme rainfall",
                        "hurricane",      "typhoon",         "glacier melt",     "permafrost thaw", "desertification",
                        "water scarcity", "crop failure",    "heat stress",      "coral bleaching", "saltwater intrusion"};
const Words kSectors = {"agriculture", "energy", "transport", "buildings", "industry", "forestry", "fisheries", "tourism",
                        "health",      "water",  "cities",    "shipping",  "aviation", "cement",   "steel"};
const Words kCrops = {"legume", "wheat",  "maize",   "rice",    "sorghum",  "millet",    "cassava",
                      "barley", "soybean", "potato", "cowpea", "chickpea", "groundnut", "banana"};
const Words kGases = {"carbon dioxide", "methane", "nitrous oxide", "black carbon", "greenhouse gas"};
const Words kPolicy = {"emissions trading",   "carbon tax",          "carbon pricing",       "cap and trade",
                       "climate finance",     "green climate fund",  "carbon offsets",       "feed in tariffs",
                       "climate policy",      "climate legislation", "climate governance",   "national adaptation plans",
                       "disaster risk reduction", "carbon markets",  "green bonds",          "personal carbon trading",
                       "nationally determined contributions",        "loss and damage"};
const Words kTechnical = {"radiative forcing",       "ocean acidification",    "thermal energy storage",
                          "carbon capture and storage", "direct air capture",  "albedo feedback",
                          "aerosol forcing",         "climate sensitivity",    "general circulation models",
                          "carbon sequestration",    "soil organic carbon",    "blue carbon",
                          "enhanced weathering",     "solar radiation management", "heat pumps",
                          "biochar",                 "ice sheet models",       "orbiting carbon observatory",
                          "life cycle assessment",   "perovskite solar cells"};
const Words kGeneral = {"climate change",     "global warming",    "temperature rise",  "greenhouse effect",
                        "extreme weather",    "paris agreement",   "kyoto protocol",    "carbon footprint",
                        "renewable energy",   "solar panel",       "wind power",        "climate action",
                        "climate resilience", "climate adaptation", "fossil fuel",      "energy efficiency",
                        "electric vehicles",  "deforestation",     "climate variability", "net zero"};
const Words kRegions = {"sub-Saharan Africa", "South Asia",     "the Arctic",     "small island states",
                        "Europe",             "the Mediterranean", "Latin America", "China",
                        "Australia",          "the Sahel",      "Southeast Asia", "North America"};
const Words kMethods = {"panel data",     "remote sensing",    "a household survey", "field experiments",
                        "scenario analysis", "a systematic review", "machine learning", "case studies",
                        "process-based modelling", "interviews with stakeholders"};
const Words kNeutral = {"livelihoods",    "land use",         "migration patterns", "infrastructure",
                        "household income", "market access",  "soil moisture",      "public budgets",
                        "labour supply",  "settlement growth", "river discharge",   "food prices"};
const Words kFindings = {"Results show a marked increase over the study period.",
                         "We find strong regional differences.",
                         "Effects are larger for poorer households.",
                         "The evidence base remains thin and fragmented.",
                         "Uncertainty is dominated by model structure.",
                         "Costs fall steeply with deployment.",
                         "Implementation gaps persist across jurisdictions.",
                         "Projections diverge after mid-century."};

struct Topic {
    Words phrases;  // topical phrases, 3 or more
};

Topic make_topic(std::size_t index, Rng& rng) {
    Topic t;
    switch (index % 7) {
        case 0: {
            const auto& h = rng.pick(kHazards);
            t.phrases = {h, "climate related " + h, h + " risk", h + " adaptation", h + " early warning",
                         h + " related to climate change"};
            break;
        }
        case 1: {
            const auto& s = rng.pick(kSectors);
            t.phrases = {s + " emissions", "low carbon " + s, s + " decarbonisation policy", s + " carbon intensity",
                         "climate change and " + s};
            break;
        }
        case 2: {
            const auto& c = rng.pick(kCrops);
            t.phrases = {c + " breeding", c + " cultivars", c + " drought tolerance", c + " genotypes",
                         c + " yield models under climate change"};
            break;
        }
        case 3: {
            const auto& g = rng.pick(kGases);
            t.phrases = {g + " emissions", g + " flux", g + " concentrations", g + " budget"};
            break;
        }
        case 4:
            for (int k = 0; k < 4; ++k) t.phrases.push_back(rng.pick(kPolicy));
            break;
        case 5:
            for (int k = 0; k < 4; ++k) t.phrases.push_back(rng.pick(kTechnical));
            break;
        default:
            for (int k = 0; k < 4; ++k) t.phrases.push_back(rng.pick(kGeneral));
            t.phrases.push_back("changing climate and its impact on " + rng.pick(kSectors));
            break;
    }
    std::sort(t.phrases.begin(), t.phrases.end());
    t.phrases.erase(std::unique(t.phrases.begin(), t.phrases.end()), t.phrases.end());
    return t;
}

std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

struct Draft {
    std::size_t topic = 0;  // topics.size() for off-topic records
    std::string title;
    std::string abstract_text;
    std::vector<std::string> keywords;
    int year = 0;
    std::string doc_type;
    std::optional<std::string> doi;
    std::vector<std::size_t> cites;  // indices into the draft list
};

void write_topical(Draft& d, const Topic& t, Rng& rng) {
    const auto& a = rng.pick(t.phrases);
    const auto& b = rng.pick(t.phrases);
    const auto& region = rng.pick(kRegions);
    switch (rng.below(3)) {
        case 0: d.title = capitalize(a) + " and " + b + " in " + region; break;
        case 1: d.title = "Assessing " + a + ": evidence from " + region; break;
        default: d.title = capitalize(a) + " under " + b + ", a study using " + rng.pick(kMethods); break;
    }
    d.abstract_text = fmt::format("We study {} in {} using {}. ", rng.pick(t.phrases), region, rng.pick(kMethods));
    d.abstract_text += fmt::format("The role of {} for {} is examined. ", rng.pick(t.phrases), rng.pick(kNeutral));
    if (rng.chance(0.5)) d.abstract_text += fmt::format("Links between {} and {} are discussed. ", a, rng.pick(kGeneral));
    if (rng.chance(0.3)) d.abstract_text += fmt::format("Implications for {} follow. ", rng.pick(kPolicy));
    d.abstract_text += rng.pick(kFindings);
    d.keywords = {rng.pick(t.phrases), rng.pick(t.phrases)};
    if (rng.chance(0.5)) d.keywords.push_back(rng.pick(kNeutral));
}

// Member of a topic that never uses the topic's vocabulary; only its
// citations tie it to the topic.
void write_keyword_free(Draft& d, Rng& rng) {
    const auto& n = rng.pick(kNeutral);
    const auto& region = rng.pick(kRegions);
    d.title = capitalize(n) + " and " + rng.pick(kNeutral) + " in " + region;
    d.abstract_text = fmt::format("We analyse {} in {} with {}. {}", n, region, rng.pick(kMethods), rng.pick(kFindings));
    d.keywords = {n, region};
}

const std::vector<std::array<std::string, 3>> kOffTopic = {
    {"Prehistoric climate change inferred from pollen records", "prehistoric climate",
     "Lake sediments record prehistoric climate change and vegetation shifts over the Holocene."},
    {"Ambient temperature rise and blood pressure in older adults", "blood",
     "Blood pressure readings were linked to daily temperature rise in a cohort study."},
    {"Organizational climate and employee turnover", "organizational climate",
     "Organizational climate surveys were fielded in large firms."},
    {"School climate and student wellbeing", "school climate",
     "School climate indicators were related to absenteeism."},
    {"Investment climate reforms and firm entry", "investment climate",
     "Investment climate reforms reduced entry costs."},
};

}  // namespace

SyntheticCorpora generate_corpora(const SyntheticSpec& spec) {
    Rng rng(spec.seed);
    std::vector<Topic> topics;
    for (std::size_t i = 0; i < spec.topics; ++i) topics.push_back(make_topic(i, rng));

    std::vector<Draft> drafts;
    std::vector<std::vector<std::size_t>> by_topic(spec.topics + 1);
    std::size_t doi_counter = 0;
    auto next_doi = [&](int year) { return fmt::format("10.5555/sdg.{}.{:06}", year, ++doi_counter); };

    auto add_draft = [&](std::size_t topic, bool keyword_free) {
        Draft d;
        d.topic = topic;
        d.year = rng.between(spec.first_year, spec.last_year);
        double r = rng.unit();
        d.doc_type = r < 0.8 ? "article" : r < 0.9 ? "review" : "conference paper";
        if (topic < topics.size()) {
            if (keyword_free)
                write_keyword_free(d, rng);
            else
                write_topical(d, topics[topic], rng);
        } else {
            const auto& o = kOffTopic[rng.below(kOffTopic.size())];
            d.title = o[0];
            d.abstract_text = o[2] + " " + rng.pick(kFindings);
            d.keywords = {o[1]};
        }
        if (rng.chance(spec.doi_rate)) d.doi = next_doi(d.year);
        // Cite earlier members of the same topic, occasionally another topic.
        auto& same = by_topic[topic];
        std::size_t n_refs = same.empty() ? 0 : std::min<std::size_t>(same.size(), 2 + rng.below(5));
        for (std::size_t k = 0; k < n_refs; ++k) d.cites.push_back(same[rng.below(same.size())]);
        if (!drafts.empty() && rng.chance(0.06)) d.cites.push_back(rng.below(drafts.size()));
        std::sort(d.cites.begin(), d.cites.end());
        d.cites.erase(std::unique(d.cites.begin(), d.cites.end()), d.cites.end());
        same.push_back(drafts.size());
        drafts.push_back(std::move(d));
    };

    for (std::size_t t = 0; t < topics.size(); ++t)
        for (std::size_t k = 0; k < spec.docs_per_topic; ++k) add_draft(t, k > 2 && rng.chance(spec.keyword_free_rate));
    for (std::size_t k = 0; k < spec.off_topic; ++k) add_draft(topics.size(), false);
    const std::size_t shared_end = drafts.size();
    for (std::size_t k = 0; k < spec.selective_only; ++k) {
        std::size_t topic = rng.below(topics.size());
        add_draft(topic, rng.chance(spec.keyword_free_rate));
    }

    // Broad indexes every draft before shared_end; selective a random share of
    // those plus everything after.
    std::vector<bool> in_selective(drafts.size(), false);
    for (std::size_t i = 0; i < drafts.size(); ++i) in_selective[i] = i >= shared_end || rng.chance(spec.selective_share);

    auto build = [&](char prefix, auto&& member) {
        std::unordered_map<std::size_t, std::string> ids;
        std::size_t n = 0;
        for (std::size_t i = 0; i < drafts.size(); ++i)
            if (member(i)) ids.emplace(i, fmt::format("{}{:06}", prefix, ++n));
        std::vector<PublicationRecord> records;
        for (std::size_t i = 0; i < drafts.size(); ++i) {
            auto it = ids.find(i);
            if (it == ids.end()) continue;
            const auto& d = drafts[i];
            PublicationRecord r;
            r.id = it->second;
            r.doi = d.doi;
            r.title = d.title;
            r.abstract_text = d.abstract_text;
            r.keywords = d.keywords;
            r.year = d.year;
            r.doc_type = d.doc_type;
            for (auto c : d.cites)
                if (auto ref = ids.find(c); ref != ids.end()) r.references.push_back(ref->second);
            records.push_back(std::move(r));
        }
        return records;
    };
    auto broad_records = build('S', [&](std::size_t i) { return i < shared_end; });
    auto selective_records = build('W', [&](std::size_t i) { return in_selective[i]; });

    std::vector<std::string> broad_extra, selective_extra;
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        if (!drafts[i].doi) continue;
        if (i >= shared_end && rng.chance(0.5)) broad_extra.push_back(*drafts[i].doi);
        if (i < shared_end && !in_selective[i] && rng.chance(0.35)) selective_extra.push_back(*drafts[i].doi);
    }
    for (std::size_t k = 0; k < spec.extra_coverage; ++k) {
        auto doi = fmt::format("10.5556/ext.{:06}", k + 1);
        if (rng.chance(0.7)) broad_extra.push_back(doi);
        if (rng.chance(0.5)) selective_extra.push_back(doi);
    }

    SyntheticCorpora out;
    out.broad_extra = DoiSet(std::move(broad_extra));
    out.selective_extra = DoiSet(std::move(selective_extra));
    out.broad = Corpus("broad", std::move(broad_records), out.broad_extra);
    out.selective = Corpus("selective", std::move(selective_records), out.selective_extra);
    return out;
}

const std::vector<std::string>& default_random_vocabulary() {
    static const std::vector<std::string> v = {"climate", "change", "flood",  "drought", "risk",    "carbon",
                                               "policy",  "energy", "heat",   "related", "hazards", "impact",
                                               "ocean",   "model",  "models", "modelling", "crop",  "breeding",
                                               "water",   "health"};
    return v;
}

Corpus generate_random_corpus(const RandomCorpusSpec& spec) {
    Rng rng(spec.seed);
    const auto& vocab = spec.vocabulary.empty() ? default_random_vocabulary() : spec.vocabulary;
    auto words = [&](std::size_t n) {
        std::string s;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += rng.pick(vocab);
        }
        return s;
    };
    std::vector<PublicationRecord> records;
    for (std::size_t i = 0; i < spec.documents; ++i) {
        PublicationRecord r;
        r.id = fmt::format("R{:05}", i + 1);
        if (rng.chance(0.9)) r.doi = fmt::format("10.5557/rand.{:05}", i + 1);
        r.title = words(1 + rng.below(spec.title_words));
        r.abstract_text = words(rng.below(spec.abstract_words + 1));
        for (std::size_t k = 0; k < spec.keywords; ++k)
            if (rng.chance(0.7)) r.keywords.push_back(words(1 + rng.below(2)));
        r.year = rng.between(2013, 2021);
        r.doc_type = "article";
        records.push_back(std::move(r));
    }
    return Corpus("random", std::move(records));
}

}  // namespace sdglab
