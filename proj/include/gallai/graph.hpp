#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gallai/bitset.hpp"

namespace gallai {

// Plain undirected graph on vertices 0..n-1, one bitset row per vertex.
// Used for single-colour views (G_i, G_i ∩ G_j, G_2 ∪ G_3) of a template.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n) : n_(n), rows_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n))) {}

    int vertex_count() const { return n_; }

    bool has_edge(int u, int v) const {
        assert(u != v);
        return rows_[static_cast<std::size_t>(u)].test(static_cast<std::size_t>(v));
    }
    void add_edge(int u, int v) {
        assert(u != v);
        rows_[static_cast<std::size_t>(u)].set(static_cast<std::size_t>(v));
        rows_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(u));
    }
    void remove_edge(int u, int v) {
        assert(u != v);
        rows_[static_cast<std::size_t>(u)].reset(static_cast<std::size_t>(v));
        rows_[static_cast<std::size_t>(v)].reset(static_cast<std::size_t>(u));
    }

    const Bitset& row(int v) const { return rows_[static_cast<std::size_t>(v)]; }

    int degree(int v) const { return static_cast<int>(rows_[static_cast<std::size_t>(v)].count()); }

    bool is_empty() const {
        for (const Bitset& r : rows_)
            if (r.any()) return false;
        return true;
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const Bitset& r : rows_) twice += r.count();
        return twice / 2;
    }

    int min_degree() const {
        int m = n_ > 0 ? n_ : 0;
        for (int v = 0; v < n_; ++v) m = std::min(m, degree(v));
        return n_ > 0 ? m : 0;
    }
    int max_degree() const {
        int m = 0;
        for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
        return m;
    }

    // Minimum degree over non-isolated vertices; absent when the graph has no edges.
    std::optional<int> min_positive_degree() const {
        std::optional<int> m;
        for (int v = 0; v < n_; ++v) {
            int d = degree(v);
            if (d > 0 && (!m || d < *m)) m = d;
        }
        return m;
    }

    // Component id per vertex; components numbered by their least vertex in
    // discovery order (vertex 0's component is id 0).
    std::vector<int> components() const {
        std::vector<int> comp(static_cast<std::size_t>(n_), -1);
        int next = 0;
        std::vector<int> stack;
        for (int s = 0; s < n_; ++s) {
            if (comp[static_cast<std::size_t>(s)] != -1) continue;
            int id = next++;
            comp[static_cast<std::size_t>(s)] = id;
            stack.push_back(s);
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                const Bitset& r = rows_[static_cast<std::size_t>(u)];
                for (std::size_t w = r.find_first(); w != Bitset::npos; w = r.find_next(w)) {
                    if (comp[w] == -1) {
                        comp[w] = id;
                        stack.push_back(static_cast<int>(w));
                    }
                }
            }
        }
        return comp;
    }

    bool is_connected() const {
        if (n_ <= 1) return true;
        std::vector<int> comp = components();
        for (int c : comp)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && rows_ == o.rows_; }

  private:
    int n_ = 0;
    std::vector<Bitset> rows_;
};

}  // namespace gallai
