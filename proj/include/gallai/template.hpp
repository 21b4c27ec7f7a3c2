#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gallai/bitset.hpp"
#include "gallai/graph.hpp"

namespace gallai {

// Colour classes are 1,2,3 everywhere in the public API. A set of colours is
// a 3-bit mask with bit (c-1) standing for colour c.
inline constexpr unsigned colour_bit(int colour) { return 1u << (colour - 1); }

// The six bijections of colours {1,2,3} onto the pairs of a vertex triple
// (u,v), (u,w), (v,w), listed in lexicographic order of the colour tuple.
// This order is the witness tie-break.
inline constexpr std::array<std::array<int, 3>, 6> kColourAssignments = {{
    {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1},
}};

// A rainbow triangle witness: vertices u < v < w and the colour carried by
// each of the three pairs. colour_uv/uw/vw is a permutation of 1,2,3.
struct RainbowWitness {
    int u = 0, v = 0, w = 0;
    int colour_uv = 0, colour_uw = 0, colour_vw = 0;

    bool operator==(const RainbowWitness&) const = default;
};

struct DegreeProfile {
    struct ColourEntry {
        int min_degree = 0;
        int max_degree = 0;
        std::optional<int> min_positive_degree;  // absent when the class is empty
        bool is_empty = true;
    };
    std::array<ColourEntry, 3> colour;  // index c-1
    // δ⁺ of G_i ∩ G_j for colour pairs {1,2}, {1,3}, {2,3}; absent when empty.
    std::array<std::optional<int>, 3> intersection_min_positive;

    static constexpr int pair_slot(int i, int j) {
        // {1,2} -> 0, {1,3} -> 1, {2,3} -> 2
        return i + j - 3;
    }
};

// A 3-colouring template: three graphs on a shared vertex set, stored as one
// symmetric bitset adjacency matrix per colour. Colour classes may overlap.
// Treat instances as immutable once built; the *_inplace mutators exist for
// builders and the search working copy, which own their template exclusively.
class ColouringTemplate {
  public:
    ColouringTemplate() = default;

    static ColouringTemplate empty(int n) {
        if (n < 0) throw std::domain_error("vertex count must be non-negative");
        ColouringTemplate t;
        t.n_ = n;
        for (auto& rows : t.adj_)
            rows.assign(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
        return t;
    }

    int vertex_count() const { return n_; }

    bool has(int colour, int u, int v) const {
        return adj_[static_cast<std::size_t>(colour - 1)][static_cast<std::size_t>(u)].test(
            static_cast<std::size_t>(v));
    }

    // Mask of colours carried by the unordered pair {u,v}.
    unsigned colours_of(int u, int v) const {
        check_pair(u, v);
        unsigned m = 0;
        for (int c = 1; c <= 3; ++c)
            if (has(c, u, v)) m |= colour_bit(c);
        return m;
    }

    void set_pair_inplace(int u, int v, unsigned colour_mask) {
        check_pair(u, v);
        for (int c = 1; c <= 3; ++c) {
            auto& rows = adj_[static_cast<std::size_t>(c - 1)];
            if (colour_mask & colour_bit(c)) {
                rows[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
                rows[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
            } else {
                rows[static_cast<std::size_t>(u)].reset(static_cast<std::size_t>(v));
                rows[static_cast<std::size_t>(v)].reset(static_cast<std::size_t>(u));
            }
        }
    }

    const Bitset& row(int colour, int v) const {
        return adj_[static_cast<std::size_t>(colour - 1)][static_cast<std::size_t>(v)];
    }

    int degree(int colour, int v) const { return static_cast<int>(row(colour, v).count()); }

    bool operator==(const ColouringTemplate& o) const { return n_ == o.n_ && adj_ == o.adj_; }

  private:
    void check_pair(int u, int v) const {
        if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::domain_error("pair endpoints must be distinct vertices in range");
    }

    int n_ = 0;
    std::array<std::vector<Bitset>, 3> adj_;
};

inline ColouringTemplate empty_template(int n) { return ColouringTemplate::empty(n); }

// Value-style pair assignment: the returned template has {u,v} in exactly the
// colours of `colour_mask`.
inline ColouringTemplate set_pair(const ColouringTemplate& t, int u, int v, unsigned colour_mask) {
    ColouringTemplate out = t;
    out.set_pair_inplace(u, v, colour_mask);
    return out;
}

inline Graph colour_graph(const ColouringTemplate& t, int colour) {
    Graph g(t.vertex_count());
    for (int u = 0; u < t.vertex_count(); ++u)
        for (int v = u + 1; v < t.vertex_count(); ++v)
            if (t.has(colour, u, v)) g.add_edge(u, v);
    return g;
}

// The graph G_i ∩ G_j on the same vertex set.
inline Graph intersection_graph(const ColouringTemplate& t, int i, int j) {
    if (i == j) throw std::domain_error("intersection_graph needs two distinct colours");
    Graph g(t.vertex_count());
    for (int u = 0; u < t.vertex_count(); ++u)
        for (int v = u + 1; v < t.vertex_count(); ++v)
            if (t.has(i, u, v) && t.has(j, u, v)) g.add_edge(u, v);
    return g;
}

inline Graph union_graph(const ColouringTemplate& t, int i, int j) {
    Graph g(t.vertex_count());
    for (int u = 0; u < t.vertex_count(); ++u)
        for (int v = u + 1; v < t.vertex_count(); ++v)
            if (t.has(i, u, v) || t.has(j, u, v)) g.add_edge(u, v);
    return g;
}

inline DegreeProfile degree_profile(const ColouringTemplate& t) {
    DegreeProfile p;
    const int n = t.vertex_count();
    for (int c = 1; c <= 3; ++c) {
        auto& e = p.colour[static_cast<std::size_t>(c - 1)];
        e.min_degree = n > 0 ? n : 0;
        e.max_degree = 0;
        for (int v = 0; v < n; ++v) {
            int d = t.degree(c, v);
            e.min_degree = std::min(e.min_degree, d);
            e.max_degree = std::max(e.max_degree, d);
            if (d > 0 && (!e.min_positive_degree || d < *e.min_positive_degree))
                e.min_positive_degree = d;
        }
        if (n == 0) e.min_degree = 0;
        e.is_empty = !e.min_positive_degree.has_value();
    }
    for (int i = 1; i <= 3; ++i) {
        for (int j = i + 1; j <= 3; ++j) {
            std::optional<int> mp;
            for (int v = 0; v < n; ++v) {
                int d = static_cast<int>((t.row(i, v) & t.row(j, v)).count());
                if (d > 0 && (!mp || d < *mp)) mp = d;
            }
            p.intersection_min_positive[static_cast<std::size_t>(DegreeProfile::pair_slot(i, j))] = mp;
        }
    }
    return p;
}

// Bitset rainbow-triangle detector. For each pair u < v and each of the six
// colour assignments, the candidate third vertices form the word-wise AND of
// row(u, colour_uw) and row(v, colour_vw); the least witness is the least w
// above v once (u,v) is the lexicographically first admissible pair.
inline std::optional<RainbowWitness> find_rainbow_triangle(const ColouringTemplate& t) {
    const int n = t.vertex_count();
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            unsigned uv = t.colours_of(u, v);
            if (!uv) continue;
            std::size_t best_w = Bitset::npos;
            int best_perm = -1;
            for (int p = 0; p < 6; ++p) {
                const auto& a = kColourAssignments[static_cast<std::size_t>(p)];
                if (!(uv & colour_bit(a[0]))) continue;
                std::size_t w = t.row(a[1], u).first_common_above(t.row(a[2], v),
                                                                  static_cast<std::size_t>(v));
                if (w < best_w) {
                    best_w = w;
                    best_perm = p;
                }
            }
            if (best_perm >= 0) {
                const auto& a = kColourAssignments[static_cast<std::size_t>(best_perm)];
                return RainbowWitness{u, v, static_cast<int>(best_w), a[0], a[1], a[2]};
            }
        }
    }
    return std::nullopt;
}

inline bool is_gallai(const ColouringTemplate& t) { return !find_rainbow_triangle(t).has_value(); }

// Whether some triangle through the pair {u,v} admits a rainbow assignment.
// After a single-pair edit this decides rainbow-freeness of the whole
// template, since a new rainbow triangle must use the edited pair.
inline bool pair_in_rainbow_triangle(const ColouringTemplate& t, int u, int v) {
    unsigned uv = t.colours_of(u, v);
    if (!uv) return false;
    for (const auto& a : kColourAssignments) {
        if (!(uv & colour_bit(a[0]))) continue;
        if (t.row(a[1], u).intersects(t.row(a[2], v))) return true;
    }
    return false;
}

// Number of vertex triples admitting at least one rainbow assignment; each
// triple counts once however many of the six assignments succeed.
inline long long count_rainbow_triangles(const ColouringTemplate& t) {
    const int n = t.vertex_count();
    long long count = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            unsigned uv = t.colours_of(u, v);
            if (!uv) continue;
            Bitset hits(static_cast<std::size_t>(n));
            bool got = false;
            for (int p = 0; p < 6; ++p) {
                const auto& a = kColourAssignments[static_cast<std::size_t>(p)];
                if (!(uv & colour_bit(a[0]))) continue;
                hits |= t.row(a[1], u) & t.row(a[2], v);
                got = true;
            }
            if (!got) continue;
            for (std::size_t w = hits.find_next(static_cast<std::size_t>(v)); w != Bitset::npos;
                 w = hits.find_next(w))
                ++count;
        }
    }
    return count;
}

inline ColouringTemplate relabel(const ColouringTemplate& t, const std::vector<int>& perm) {
    const int n = t.vertex_count();
    if (static_cast<int>(perm.size()) != n)
        throw std::domain_error("permutation length must equal vertex count");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int x : perm) {
        if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
            throw std::domain_error("relabel requires a bijection on 0..n-1");
        seen[static_cast<std::size_t>(x)] = true;
    }
    ColouringTemplate out = ColouringTemplate::empty(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            unsigned m = t.colours_of(u, v);
            if (m)
                out.set_pair_inplace(perm[static_cast<std::size_t>(u)],
                                     perm[static_cast<std::size_t>(v)], m);
        }
    return out;
}

}  // namespace gallai
