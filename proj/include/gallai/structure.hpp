#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallai/graph.hpp"
#include "gallai/naive.hpp"
#include "gallai/template.hpp"

namespace gallai {

// Vertex bipartition with no colour-2 or colour-3 edge across it.
struct Cut {
    std::vector<int> side_a;
    std::vector<int> side_b;
};

// Proper 2-colouring of a single-colour graph: no inspected edge inside a side.
struct Bipartition {
    std::vector<int> side_a;
    std::vector<int> side_b;
};

struct BipartitionOutcome {
    std::optional<Bipartition> bipartition;
    // When no bipartition exists: an odd closed walk as a vertex sequence
    // (first == last) witnessing the odd cycle.
    std::vector<int> odd_closed_walk;
};

struct Thresholds {
    int r = 0;
    int n = 0;
    int delta1_min = 0;  // least δ₁ with δ₁ > (1-1/r)n
    int sum_max = 0;     // greatest δ₂+δ₃ the bound permits: ⌊2n/(r+1)⌋
};

enum class G3Class { CrossOnly, WithinOnly, Mixed, Empty };

enum class TheoremVerdict { HypothesesFail, BoundHolds, Counterexample };

struct IntersectionDichotomyEntry {
    int colour_i = 0;
    int colour_j = 0;
    bool intersection_empty = true;
    std::optional<int> min_positive_degree;
    bool holds = true;  // empty, or δ⁺·r·(r+1) > (r-1)·n
};

// A non-trivial cut with no colour-2/3 edge across it exists iff G₂ ∪ G₃ is
// disconnected; side_a is the component of vertex 0.
inline std::optional<Cut> find_nontrivial_one_cut(const ColouringTemplate& t) {
    const int n = t.vertex_count();
    if (n == 0) throw std::domain_error("one-cut search needs at least one vertex");
    Graph u = union_graph(t, 2, 3);
    std::vector<int> comp = u.components();
    Cut cut;
    for (int v = 0; v < n; ++v)
        (comp[static_cast<std::size_t>(v)] == 0 ? cut.side_a : cut.side_b).push_back(v);
    if (cut.side_b.empty()) return std::nullopt;
    return cut;
}

// BFS 2-colouring; each component is rooted at its least vertex, root on
// side_a. Isolated vertices therefore land on side_a.
inline BipartitionOutcome bipartition_of(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (side[static_cast<std::size_t>(s)] != -1) continue;
        side[static_cast<std::size_t>(s)] = 0;
        queue.clear();
        queue.push_back(s);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int u = queue[qi];
            const Bitset& row = g.row(u);
            for (std::size_t w = row.find_first(); w != Bitset::npos; w = row.find_next(w)) {
                int v = static_cast<int>(w);
                if (side[w] == -1) {
                    side[w] = 1 - side[static_cast<std::size_t>(u)];
                    parent[w] = u;
                    queue.push_back(v);
                } else if (side[w] == side[static_cast<std::size_t>(u)]) {
                    // Odd closed walk: u up to the root, back down to v (the
                    // root appears once), then the conflicting edge v-u.
                    BipartitionOutcome out;
                    std::vector<int> up;
                    for (int x = u; x != -1; x = parent[static_cast<std::size_t>(x)]) up.push_back(x);
                    std::vector<int> down;
                    for (int x = v; x != -1; x = parent[static_cast<std::size_t>(x)]) down.push_back(x);
                    std::reverse(down.begin(), down.end());
                    out.odd_closed_walk = std::move(up);
                    out.odd_closed_walk.insert(out.odd_closed_walk.end(), down.begin() + 1,
                                               down.end());
                    out.odd_closed_walk.push_back(u);
                    return out;
                }
            }
        }
    }
    BipartitionOutcome out;
    Bipartition bip;
    for (int v = 0; v < n; ++v)
        (side[static_cast<std::size_t>(v)] == 0 ? bip.side_a : bip.side_b).push_back(v);
    out.bipartition = std::move(bip);
    return out;
}

inline G3Class classify_g3(const ColouringTemplate& t, const Bipartition& bip) {
    const int n = t.vertex_count();
    std::vector<int> side(static_cast<std::size_t>(n), -1);
    for (int v : bip.side_a) {
        if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1)
            throw std::domain_error("bipartition is not a partition of the vertex set");
        side[static_cast<std::size_t>(v)] = 0;
    }
    for (int v : bip.side_b) {
        if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1)
            throw std::domain_error("bipartition is not a partition of the vertex set");
        side[static_cast<std::size_t>(v)] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (side[static_cast<std::size_t>(v)] == -1)
            throw std::domain_error("bipartition is not a partition of the vertex set");

    bool any_cross = false, any_within = false;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (t.has(3, u, v)) {
                if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)])
                    any_within = true;
                else
                    any_cross = true;
            }
    if (!any_cross && !any_within) return G3Class::Empty;
    if (any_cross && any_within) return G3Class::Mixed;
    return any_cross ? G3Class::CrossOnly : G3Class::WithinOnly;
}

// Per colour pair {i,j}: the intersection is empty, or its minimum positive
// degree clears (r-1)·n / (r(r+1)). Compared exactly via cross-multiplication.
inline std::vector<IntersectionDichotomyEntry> intersection_dichotomy_holds(
    const ColouringTemplate& t, int r) {
    if (r < 1) throw std::domain_error("family parameter r must be at least 1");
    std::vector<IntersectionDichotomyEntry> report;
    const long long n = t.vertex_count();
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            IntersectionDichotomyEntry e;
            e.colour_i = i;
            e.colour_j = j;
            Graph g = intersection_graph(t, i, j);
            e.min_positive_degree = g.min_positive_degree();
            e.intersection_empty = !e.min_positive_degree.has_value();
            if (e.intersection_empty)
                e.holds = true;
            else
                e.holds = static_cast<long long>(*e.min_positive_degree) * r * (r + 1) >
                          static_cast<long long>(r - 1) * n;
            report.push_back(e);
        }
    return report;
}

// Constructive witness from the trivial-bound proof: when δ(G₃)>0 and
// δ(G₁)+Δ(G₂)>n, take v of maximum colour-2 degree (least such), its least
// colour-3 neighbour v', and the least v'' with vv''∈G₂, v'v''∈G₁.
inline std::optional<RainbowWitness> pigeonhole_witness(const ColouringTemplate& t) {
    const int n = t.vertex_count();
    if (n == 0) return std::nullopt;
    int best_v = 0, max_d2 = -1, min_d1 = n, min_d3 = n;
    for (int v = 0; v < n; ++v) {
        int d2 = t.degree(2, v);
        if (d2 > max_d2) {
            max_d2 = d2;
            best_v = v;
        }
        min_d1 = std::min(min_d1, t.degree(1, v));
        min_d3 = std::min(min_d3, t.degree(3, v));
    }
    if (min_d3 < 1 || min_d1 + max_d2 <= n) return std::nullopt;

    const int v = best_v;
    std::size_t vp = t.row(3, v).find_first();
    assert(vp != Bitset::npos);
    std::size_t vpp = t.row(2, v).first_common_below(t.row(1, static_cast<int>(vp)),
                                                     static_cast<std::size_t>(n));
    assert(vpp != Bitset::npos);  // pigeonhole: |N₂(v)| + |N₁(v')| > n

    // Sort {v, v', v''} and carry each pair's colour along.
    struct Edge {
        int a, b, colour;
    };
    std::array<Edge, 3> edges = {{{v, static_cast<int>(vp), 3},
                                  {v, static_cast<int>(vpp), 2},
                                  {static_cast<int>(vp), static_cast<int>(vpp), 1}}};
    std::array<int, 3> verts = {v, static_cast<int>(vp), static_cast<int>(vpp)};
    std::sort(verts.begin(), verts.end());
    RainbowWitness rw;
    rw.u = verts[0];
    rw.v = verts[1];
    rw.w = verts[2];
    auto colour_between = [&](int a, int b) {
        for (const Edge& e : edges)
            if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return e.colour;
        return 0;
    };
    rw.colour_uv = colour_between(rw.u, rw.v);
    rw.colour_uw = colour_between(rw.u, rw.w);
    rw.colour_vw = colour_between(rw.v, rw.w);
    return rw;
}

inline Thresholds thresholds_for(int r, int n) {
    if (r < 1) throw std::domain_error("family parameter r must be at least 1");
    if (n < 1) throw std::domain_error("vertex count must be at least 1");
    Thresholds th;
    th.r = r;
    th.n = n;
    th.delta1_min = static_cast<int>((static_cast<long long>(r - 1) * n) / r) + 1;
    th.sum_max = static_cast<int>((2LL * n) / (r + 1));
    return th;
}

// Hypotheses are symmetric in colours 2 and 3, so no δ₂ ≥ δ₃ ordering check.
inline TheoremVerdict check_theorem(const ColouringTemplate& t, int r) {
    Thresholds th = thresholds_for(r, std::max(1, t.vertex_count()));
    if (t.vertex_count() == 0) return TheoremVerdict::HypothesesFail;
    if (!is_gallai(t)) return TheoremVerdict::HypothesesFail;
    DegreeProfile p = degree_profile(t);
    int d1 = p.colour[0].min_degree, d2 = p.colour[1].min_degree, d3 = p.colour[2].min_degree;
    if (d1 < th.delta1_min || std::min(d2, d3) == 0) return TheoremVerdict::HypothesesFail;
    return d2 + d3 <= th.sum_max ? TheoremVerdict::BoundHolds : TheoremVerdict::Counterexample;
}

inline const char* to_string(G3Class c) {
    switch (c) {
        case G3Class::CrossOnly: return "CrossOnly";
        case G3Class::WithinOnly: return "WithinOnly";
        case G3Class::Mixed: return "Mixed";
        case G3Class::Empty: return "Empty";
    }
    return "?";
}

inline const char* to_string(TheoremVerdict v) {
    switch (v) {
        case TheoremVerdict::HypothesesFail: return "HypothesesFail";
        case TheoremVerdict::BoundHolds: return "BoundHolds";
        case TheoremVerdict::Counterexample: return "COUNTEREXAMPLE";
    }
    return "?";
}

}  // namespace gallai
