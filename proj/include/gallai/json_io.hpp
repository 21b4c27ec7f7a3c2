#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gallai/constructions.hpp"
#include "gallai/search.hpp"
#include "gallai/structure.hpp"
#include "gallai/template.hpp"

namespace gallai {

using json = nlohmann::json;

// Canonical template JSON: {"n": N, "edges": {"1": [[u,v],...], ...}} with
// u < v and pair lists sorted lexicographically. The parser accepts any order
// and deduplicates; the serializer always emits the canonical form.
inline json template_to_json(const ColouringTemplate& t) {
    json edges = json::object();
    for (int c = 1; c <= 3; ++c) {
        json list = json::array();
        for (int u = 0; u < t.vertex_count(); ++u)
            for (int v = u + 1; v < t.vertex_count(); ++v)
                if (t.has(c, u, v)) list.push_back(json::array({u, v}));
        edges[std::to_string(c)] = std::move(list);
    }
    return json{{"n", t.vertex_count()}, {"edges", std::move(edges)}};
}

inline ColouringTemplate template_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw std::domain_error("template JSON needs an integer field \"n\"");
    int n = j["n"].get<int>();
    if (n < 0) throw std::domain_error("template JSON has negative vertex count");
    ColouringTemplate t = ColouringTemplate::empty(n);
    if (!j.contains("edges")) return t;
    const json& edges = j["edges"];
    if (!edges.is_object()) throw std::domain_error("template JSON field \"edges\" must be an object");
    for (const auto& [key, list] : edges.items()) {
        if (key != "1" && key != "2" && key != "3")
            throw std::domain_error("template JSON has colour key \"" + key + "\" outside 1..3");
        int c = key[0] - '0';
        for (const auto& e : list) {
            if (!e.is_array() || e.size() != 2)
                throw std::domain_error("template JSON edge entries must be [u,v] pairs");
            int u = e[0].get<int>(), v = e[1].get<int>();
            if (u == v || u < 0 || v < 0 || u >= n || v >= n)
                throw std::domain_error("template JSON edge endpoints out of range");
            unsigned m = t.colours_of(std::min(u, v), std::max(u, v));
            t.set_pair_inplace(std::min(u, v), std::max(u, v), m | colour_bit(c));
        }
    }
    return t;
}

inline std::string template_to_string(const ColouringTemplate& t) {
    return template_to_json(t).dump(2) + "\n";
}

inline json pattern_to_json(const PatternSpec& spec) {
    json comps = json::array();
    for (const auto& comp : spec.components) {
        if (const auto* iso = std::get_if<PatternSpec::Isolated>(&comp)) {
            comps.push_back(json{{"type", "isolated"}, {"v", iso->v}});
        } else if (const auto* pr = std::get_if<PatternSpec::Pair>(&comp)) {
            comps.push_back(json{{"type", "pair"}, {"u", pr->u}, {"v", pr->v}, {"colour", pr->colour}});
        } else if (const auto* k4 = std::get_if<PatternSpec::K4>(&comp)) {
            auto vs = k4->vs;
            std::sort(vs.begin(), vs.end());
            const std::array<std::array<std::array<int, 2>, 2>, 3> matchings = {{
                {{{vs[0], vs[1]}, {vs[2], vs[3]}}},
                {{{vs[0], vs[2]}, {vs[1], vs[3]}}},
                {{{vs[0], vs[3]}, {vs[1], vs[2]}}},
            }};
            json mj = json::object();
            for (int m = 0; m < 3; ++m) {
                json pairs = json::array();
                for (const auto& e : matchings[static_cast<std::size_t>(m)])
                    pairs.push_back(json::array({e[0], e[1]}));
                mj[std::to_string(k4->matching_colours[static_cast<std::size_t>(m)])] = std::move(pairs);
            }
            comps.push_back(json{{"type", "k4"},
                                 {"vs", json::array({vs[0], vs[1], vs[2], vs[3]})},
                                 {"matchings", std::move(mj)}});
        }
    }
    return json{{"r", spec.r}, {"components", std::move(comps)}};
}

inline PatternSpec pattern_from_json(const json& j) {
    PatternSpec spec;
    if (!j.is_object() || !j.contains("r") || !j["r"].is_number_integer())
        throw std::domain_error("pattern JSON needs an integer field \"r\"");
    spec.r = j["r"].get<int>();
    for (const auto& comp : j.value("components", json::array())) {
        std::string type = comp.value("type", "");
        if (type == "isolated") {
            spec.components.push_back(PatternSpec::Isolated{comp.at("v").get<int>()});
        } else if (type == "pair") {
            spec.components.push_back(PatternSpec::Pair{comp.at("u").get<int>(),
                                                        comp.at("v").get<int>(),
                                                        comp.at("colour").get<int>()});
        } else if (type == "k4") {
            PatternSpec::K4 k4;
            const auto& vs = comp.at("vs");
            if (!vs.is_array() || vs.size() != 4)
                throw std::domain_error("pattern JSON k4 needs exactly 4 vertices");
            for (int i = 0; i < 4; ++i) k4.vs[static_cast<std::size_t>(i)] = vs[static_cast<std::size_t>(i)].get<int>();
            auto sorted = k4.vs;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw std::domain_error("pattern JSON k4 has repeated vertices");
            // Identify each listed matching with a canonical one via the
            // partner of the least vertex.
            k4.matching_colours = {-1, -1, -1};
            for (const auto& [key, pairs] : comp.at("matchings").items()) {
                int colour = std::stoi(key);
                if (!pairs.is_array() || pairs.size() != 2)
                    throw std::domain_error("pattern JSON k4 matching needs two pairs");
                int partner = -1;
                for (const auto& e : pairs) {
                    int a = e[0].get<int>(), b = e[1].get<int>();
                    if (a == sorted[0]) partner = b;
                    if (b == sorted[0]) partner = a;
                }
                int slot = -1;
                for (int m = 0; m < 3; ++m)
                    if (partner == sorted[static_cast<std::size_t>(m) + 1]) slot = m;
                if (slot < 0)
                    throw std::domain_error("pattern JSON k4 matchings do not match its vertices");
                k4.matching_colours[static_cast<std::size_t>(slot)] = colour;
            }
            spec.components.push_back(k4);
        } else {
            throw std::domain_error("pattern JSON component type must be isolated, pair or k4");
        }
    }
    return spec;
}

inline json profile_to_json(const DegreeProfile& p) {
    json colours = json::object();
    for (int c = 1; c <= 3; ++c) {
        const auto& e = p.colour[static_cast<std::size_t>(c - 1)];
        json entry{{"min_degree", e.min_degree},
                   {"max_degree", e.max_degree},
                   {"is_empty", e.is_empty}};
        entry["min_positive_degree"] =
            e.min_positive_degree ? json(*e.min_positive_degree) : json(nullptr);
        colours[std::to_string(c)] = std::move(entry);
    }
    json inters = json::object();
    const std::array<std::pair<int, int>, 3> pairs = {{{1, 2}, {1, 3}, {2, 3}}};
    for (const auto& [i, jc] : pairs) {
        const auto& mp =
            p.intersection_min_positive[static_cast<std::size_t>(DegreeProfile::pair_slot(i, jc))];
        inters[std::to_string(i) + std::to_string(jc)] = mp ? json(*mp) : json(nullptr);
    }
    return json{{"colours", std::move(colours)}, {"intersections_min_positive", std::move(inters)}};
}

inline json witness_to_json(const RainbowWitness& w) {
    return json{{"vertices", json::array({w.u, w.v, w.w})},
                {"colour_uv", w.colour_uv},
                {"colour_uw", w.colour_uw},
                {"colour_vw", w.colour_vw}};
}

inline json thresholds_to_json(const Thresholds& th) {
    return json{{"r", th.r}, {"n", th.n}, {"delta1_min", th.delta1_min}, {"sum_max", th.sum_max}};
}

inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Optimal: return "Optimal";
        case SearchStatus::Exhausted: return "Exhausted";
        case SearchStatus::BudgetExceeded: return "BudgetExceeded";
        case SearchStatus::FoundCounterexample: return "FoundCounterexample";
    }
    return "?";
}

inline json outcome_to_json(const SearchOutcome& o) {
    json j;
    j["status"] = to_string(o.status);
    j["n"] = o.n;
    j["r"] = o.r;
    j["mode"] = o.mode == SearchMode::Maximize ? "max" : "counterexample";
    j["best_value"] = o.best_value ? json(*o.best_value) : json(nullptr);
    j["template"] = o.best_template ? template_to_json(*o.best_template) : json(nullptr);
    // wall-clock time stays out: outcome JSON is byte-stable for a
    // deterministic run
    j["stats"] = json{{"nodes", o.stats.nodes},
                      {"pruned",
                       json{{"rainbow", o.stats.pruned_rainbow},
                            {"degree", o.stats.pruned_degree},
                            {"symmetry", o.stats.pruned_symmetry},
                            {"prop1", o.stats.pruned_prop1},
                            {"lemmas", o.stats.pruned_lemmas}}},
                      {"approximate", o.stats.approximate}};
    return j;
}

inline json construction_report_to_json(const ConstructionReport& rep) {
    return json{{"r", rep.r},
                {"n", rep.n},
                {"is_gallai", rep.gallai},
                {"profile", profile_to_json(rep.profile)},
                {"bounds_ok",
                 json{{"delta1", rep.delta1_in_interval}, {"delta23", rep.delta23_in_interval}}}};
}

}  // namespace gallai
