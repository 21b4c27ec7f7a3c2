#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gallai/naive.hpp"
#include "gallai/structure.hpp"
#include "gallai/template.hpp"

namespace gallai {

// Balanced partition of n vertices into r contiguous parts, larger parts
// first: the first n mod r parts have ⌈n/r⌉ vertices, the rest ⌊n/r⌋.
struct BalancedPartition {
    int r = 0;
    int n = 0;
    std::vector<int> start;  // r+1 boundaries, start[k]..start[k+1]-1 is part k

    BalancedPartition(int r_, int n_) : r(r_), n(n_) {
        if (r < 1 || r > n) throw std::domain_error("need 1 <= r <= n for a balanced partition");
        start.resize(static_cast<std::size_t>(r) + 1, 0);
        int q = n / r, m = n % r;
        for (int k = 0; k < r; ++k)
            start[static_cast<std::size_t>(k) + 1] =
                start[static_cast<std::size_t>(k)] + q + (k < m ? 1 : 0);
    }

    int size_of(int k) const {
        return start[static_cast<std::size_t>(k) + 1] - start[static_cast<std::size_t>(k)];
    }
    int part_of(int v) const {
        int q = n / r, m = n % r;
        int big_end = m * (q + 1);
        if (v < big_end) return v / (q + 1);
        return m + (v - big_end) / q;
    }
};

// Construction blueprint: a graph on [r] made of isolated vertices, edges and
// K₄'s, with a proper {0,2,3} edge colouring. For a K₄ on sorted vertices
// p0<p1<p2<p3 the canonical matchings are ({p0,p1},{p2,p3}),
// ({p0,p2},{p1,p3}), ({p0,p3},{p1,p2}), in that order.
struct PatternSpec {
    struct Isolated {
        int v = 0;
    };
    struct Pair {
        int u = 0, v = 0;
        int colour = 0;  // 0, 2 or 3
    };
    struct K4 {
        std::array<int, 4> vs{};
        std::array<int, 3> matching_colours{};  // colour of each canonical matching
    };
    using Component = std::variant<Isolated, Pair, K4>;

    int r = 0;
    std::vector<Component> components;
};

inline std::vector<std::string> validate_pattern(const PatternSpec& spec) {
    std::vector<std::string> errors;
    if (spec.r < 1) errors.push_back("pattern needs r >= 1 vertices");
    std::vector<int> cover(static_cast<std::size_t>(std::max(spec.r, 0)), 0);
    auto touch = [&](int v) {
        if (v < 0 || v >= spec.r)
            errors.push_back("pattern vertex " + std::to_string(v) + " out of range");
        else
            ++cover[static_cast<std::size_t>(v)];
    };
    for (const auto& comp : spec.components) {
        if (const auto* iso = std::get_if<PatternSpec::Isolated>(&comp)) {
            touch(iso->v);
        } else if (const auto* pr = std::get_if<PatternSpec::Pair>(&comp)) {
            touch(pr->u);
            touch(pr->v);
            if (pr->u == pr->v) errors.push_back("pair component with equal endpoints");
            if (pr->colour != 0 && pr->colour != 2 && pr->colour != 3)
                errors.push_back("pair edge colour must be 0, 2 or 3");
        } else if (const auto* k4 = std::get_if<PatternSpec::K4>(&comp)) {
            for (int v : k4->vs) touch(v);
            auto vs = k4->vs;
            std::sort(vs.begin(), vs.end());
            if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
                errors.push_back("K4 component with repeated vertices");
            unsigned seen = 0;
            bool bad = false;
            for (int c : k4->matching_colours) {
                if (c != 0 && c != 2 && c != 3) bad = true;
                else seen |= 1u << (c == 0 ? 0 : c - 1);
            }
            if (bad || seen != 0b111u)
                errors.push_back("K4 matching colours must be a bijection onto {0,2,3}");
        }
    }
    for (int v = 0; v < spec.r; ++v)
        if (cover[static_cast<std::size_t>(v)] != 1)
            errors.push_back("pattern vertex " + std::to_string(v) +
                             (cover[static_cast<std::size_t>(v)] == 0 ? " uncovered"
                                                                      : " covered more than once") +
                             ", vertex coverage not a partition");
    return errors;
}

// T(r,n): G₁ the complete balanced r-partite graph, G₂ = G₃ the disjoint
// complete graphs on the parts.
inline ColouringTemplate turan_template(int r, int n) {
    BalancedPartition parts(r, n);
    ColouringTemplate t = ColouringTemplate::empty(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool same = parts.part_of(u) == parts.part_of(v);
            t.set_pair_inplace(u, v, same ? (colour_bit(2) | colour_bit(3)) : colour_bit(1));
        }
    return t;
}

// Block-faithful construction: parts are connected by colour-1 pairs unless a
// component rule assigns the pair otherwise; insides depend on the component
// kind. Every emitted template is machine-checked Gallai.
inline ColouringTemplate pattern_template(const PatternSpec& spec, int n) {
    auto errors = validate_pattern(spec);
    if (!errors.empty()) throw std::domain_error("invalid pattern spec: " + errors.front());
    if (n < spec.r) throw std::domain_error("pattern template needs n >= r");
    BalancedPartition parts(spec.r, n);

    // inside_mask[k]: colours inside part k; cross_mask[k][l]: colours between
    // parts k and l. Defaults: empty insides, colour-1 cross connections.
    std::vector<unsigned> inside(static_cast<std::size_t>(spec.r), 0);
    std::vector<std::vector<unsigned>> cross(
        static_cast<std::size_t>(spec.r),
        std::vector<unsigned>(static_cast<std::size_t>(spec.r), colour_bit(1)));
    auto set_cross = [&](int a, int b, unsigned m) {
        cross[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = m;
        cross[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = m;
    };

    for (const auto& comp : spec.components) {
        if (const auto* iso = std::get_if<PatternSpec::Isolated>(&comp)) {
            inside[static_cast<std::size_t>(iso->v)] = colour_bit(2) | colour_bit(3);
        } else if (const auto* pr = std::get_if<PatternSpec::Pair>(&comp)) {
            if (pr->colour == 0) {
                set_cross(pr->u, pr->v, colour_bit(1) | colour_bit(2) | colour_bit(3));
                // insides stay empty
            } else {
                int other = pr->colour == 2 ? 3 : 2;
                set_cross(pr->u, pr->v, colour_bit(pr->colour));
                inside[static_cast<std::size_t>(pr->u)] = colour_bit(1) | colour_bit(other);
                inside[static_cast<std::size_t>(pr->v)] = colour_bit(1) | colour_bit(other);
            }
        } else if (const auto* k4 = std::get_if<PatternSpec::K4>(&comp)) {
            auto vs = k4->vs;
            std::sort(vs.begin(), vs.end());
            for (int v : vs) inside[static_cast<std::size_t>(v)] = colour_bit(1);
            const std::array<std::array<std::array<int, 2>, 2>, 3> matchings = {{
                {{{vs[0], vs[1]}, {vs[2], vs[3]}}},
                {{{vs[0], vs[2]}, {vs[1], vs[3]}}},
                {{{vs[0], vs[3]}, {vs[1], vs[2]}}},
            }};
            for (int m = 0; m < 3; ++m) {
                int colour = k4->matching_colours[static_cast<std::size_t>(m)];
                unsigned mask = colour == 0 ? 0u : (colour_bit(1) | colour_bit(colour));
                for (const auto& e : matchings[static_cast<std::size_t>(m)])
                    set_cross(e[0], e[1], mask);
            }
        }
    }

    ColouringTemplate t = ColouringTemplate::empty(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int pu = parts.part_of(u), pv = parts.part_of(v);
            unsigned m = pu == pv ? inside[static_cast<std::size_t>(pu)]
                                  : cross[static_cast<std::size_t>(pu)][static_cast<std::size_t>(pv)];
            if (m) t.set_pair_inplace(u, v, m);
        }

    if (find_rainbow_triangle_naive(t).has_value())
        throw std::logic_error("pattern template failed its Gallai self-check");
    return t;
}

// Interval checks from the construction analysis, evaluated with exact
// rational endpoints: n-⌈n/r⌉-1 ≤ δ(G₁) ≤ n-n/r and ⌊n/r⌋-1 ≤ min(δ₂,δ₃) ≤ n/r.
struct ConstructionReport {
    int r = 0;
    int n = 0;
    bool gallai = false;
    DegreeProfile profile;
    bool delta1_in_interval = false;
    bool delta23_in_interval = false;
    bool bounds_ok() const { return delta1_in_interval && delta23_in_interval; }
};

inline ConstructionReport construction_report(const ColouringTemplate& t, int r, int n) {
    if (t.vertex_count() != n) throw std::domain_error("report vertex count mismatch");
    if (r < 1) throw std::domain_error("family parameter r must be at least 1");
    ConstructionReport rep;
    rep.r = r;
    rep.n = n;
    rep.gallai = !find_rainbow_triangle_naive(t).has_value();
    rep.profile = degree_profile(t);
    long long d1 = rep.profile.colour[0].min_degree;
    long long dmin = std::min(rep.profile.colour[1].min_degree, rep.profile.colour[2].min_degree);
    long long ceil_nr = (static_cast<long long>(n) + r - 1) / r;
    long long floor_nr = static_cast<long long>(n) / r;
    // δ₁ ≤ n - n/r  ⟺  δ₁·r ≤ n·r - n ; lower end is integral.
    rep.delta1_in_interval = (d1 >= n - ceil_nr - 1) && (d1 * r <= static_cast<long long>(n) * (r - 1));
    // min(δ₂,δ₃) ≤ n/r  ⟺  dmin·r ≤ n ; lower end is integral.
    rep.delta23_in_interval = (dmin >= floor_nr - 1) && (dmin * r <= n);
    return rep;
}

namespace detail {

// Fixed global ordering of component signatures used by the enumerator:
// Isolated, then Pair by edge colour, then K4 by matching-colour tuple.
inline const std::vector<PatternSpec::Component>& component_menu() {
    static const std::vector<PatternSpec::Component> menu = [] {
        std::vector<PatternSpec::Component> m;
        m.push_back(PatternSpec::Isolated{});
        for (int c : {0, 2, 3}) m.push_back(PatternSpec::Pair{0, 0, c});
        const std::array<std::array<int, 3>, 6> perms = {{
            {0, 2, 3}, {0, 3, 2}, {2, 0, 3}, {2, 3, 0}, {3, 0, 2}, {3, 2, 0},
        }};
        for (const auto& p : perms) m.push_back(PatternSpec::K4{{0, 0, 0, 0}, p});
        return m;
    }();
    return menu;
}

inline int component_size(const PatternSpec::Component& c) {
    if (std::holds_alternative<PatternSpec::Isolated>(c)) return 1;
    if (std::holds_alternative<PatternSpec::Pair>(c)) return 2;
    return 4;
}

}  // namespace detail

// Deterministic enumeration of pattern specs on [r], one representative per
// multiset of component signatures; vertices are assigned consecutively in
// menu order. Truncated at `limit` entries (no limit when limit < 0).
inline std::vector<PatternSpec> enumerate_patterns(int r, long long limit = -1) {
    if (r < 1) throw std::domain_error("pattern enumeration needs r >= 1");
    const auto& menu = detail::component_menu();
    std::vector<PatternSpec> out;
    std::vector<std::size_t> chosen;

    auto emit = [&] {
        PatternSpec spec;
        spec.r = r;
        int next = 0;
        for (std::size_t idx : chosen) {
            PatternSpec::Component c = menu[idx];
            if (auto* iso = std::get_if<PatternSpec::Isolated>(&c)) {
                iso->v = next++;
            } else if (auto* pr = std::get_if<PatternSpec::Pair>(&c)) {
                pr->u = next++;
                pr->v = next++;
            } else if (auto* k4 = std::get_if<PatternSpec::K4>(&c)) {
                for (auto& v : k4->vs) v = next++;
            }
            spec.components.push_back(c);
        }
        out.push_back(std::move(spec));
    };

    // Non-decreasing menu indices, so each multiset appears exactly once.
    auto rec = [&](auto&& self, int remaining, std::size_t min_idx) -> bool {
        if (limit >= 0 && static_cast<long long>(out.size()) >= limit) return false;
        if (remaining == 0) {
            emit();
            return true;
        }
        for (std::size_t idx = min_idx; idx < menu.size(); ++idx) {
            int sz = detail::component_size(menu[idx]);
            if (sz > remaining) continue;
            chosen.push_back(idx);
            bool keep_going = self(self, remaining - sz, idx);
            chosen.pop_back();
            if (!keep_going) return false;
        }
        return true;
    };
    rec(rec, r, 0);
    return out;
}

}  // namespace gallai
