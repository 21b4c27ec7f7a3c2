#pragma once

#include <optional>

#include "gallai/template.hpp"

namespace gallai {

// Reference rainbow-triangle detector: triple loop over all vertex triples
// and all six colour assignments, per-pair membership queries only. Kept
// deliberately free of the bitset kernel so it can serve as the oracle for
// find_rainbow_triangle.
inline std::optional<RainbowWitness> find_rainbow_triangle_naive(const ColouringTemplate& t) {
    const int n = t.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                for (const auto& a : kColourAssignments)
                    if (t.has(a[0], u, v) && t.has(a[1], u, w) && t.has(a[2], v, w))
                        return RainbowWitness{u, v, w, a[0], a[1], a[2]};
    return std::nullopt;
}

// Membership check for an externally produced witness.
inline bool witness_is_valid(const ColouringTemplate& t, const RainbowWitness& rw) {
    if (!(rw.u < rw.v && rw.v < rw.w)) return false;
    unsigned seen = colour_bit(rw.colour_uv) | colour_bit(rw.colour_uw) | colour_bit(rw.colour_vw);
    if (seen != 0b111u) return false;
    return t.has(rw.colour_uv, rw.u, rw.v) && t.has(rw.colour_uw, rw.u, rw.w) &&
           t.has(rw.colour_vw, rw.v, rw.w);
}

inline long long count_rainbow_triangles_naive(const ColouringTemplate& t) {
    const int n = t.vertex_count();
    long long count = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int w = v + 1; w < n; ++w)
                for (const auto& a : kColourAssignments)
                    if (t.has(a[0], u, v) && t.has(a[1], u, w) && t.has(a[2], v, w)) {
                        ++count;
                        break;
                    }
    return count;
}

}  // namespace gallai
