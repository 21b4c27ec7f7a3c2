#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gallai/constructions.hpp"
#include "gallai/naive.hpp"
#include "gallai/structure.hpp"
#include "gallai/template.hpp"

namespace gallai {

// Subset assignment order for a pair: empty first, then singletons, then the
// doubles, then all three colours. Node counts and witnesses depend on it.
inline constexpr std::array<unsigned, 8> kSubsetOrder = {
    0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};

inline int subset_order_index(unsigned mask) {
    for (int i = 0; i < 8; ++i)
        if (kSubsetOrder[static_cast<std::size_t>(i)] == mask) return i;
    return -1;
}

enum class SearchMode { Maximize, Counterexample };
enum class SearchStatus { Optimal, Exhausted, BudgetExceeded, FoundCounterexample };

struct PruneConfig {
    bool use_symmetry = true;
    bool use_degree_bounds = true;
    bool use_prop1 = true;
    bool assume_lemmas = false;  // heuristic; Counterexample mode only
};

struct SearchBudget {
    long long max_nodes = -1;  // negative: unlimited
    long long wall_ms = -1;    // negative: unlimited
};

struct SearchProblem {
    int n = 1;
    int r = 1;
    SearchMode mode = SearchMode::Maximize;
    PruneConfig prune;
    SearchBudget budget;
    int threads = 1;
    // Testing hook: snapshot every 100th rainbow-pruned partial template
    // (sequential runs only, capped).
    bool record_prune_samples = false;
};

struct SearchStats {
    long long nodes = 0;
    long long pruned_rainbow = 0;
    long long pruned_degree = 0;
    long long pruned_symmetry = 0;
    long long pruned_prop1 = 0;
    long long pruned_lemmas = 0;
    double elapsed_seconds = 0.0;
    bool approximate = false;  // node accounting is approximate when threaded
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::Exhausted;
    int n = 0;
    int r = 0;
    SearchMode mode = SearchMode::Maximize;
    std::optional<int> best_value;
    std::optional<ColouringTemplate> best_template;
    SearchStats stats;
    std::vector<ColouringTemplate> prune_samples;
};

namespace detail {

struct PairList {
    std::vector<std::pair<int, int>> pairs;
    explicit PairList(int n) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
};

struct SharedSearchState {
    std::atomic<int> best_value{-1};
    std::atomic<bool> abort{false};
    std::atomic<bool> budget_hit{false};
    std::atomic<long long> nodes{0};
    std::mutex result_mutex;
    int counterexample_branch = -1;
    std::optional<ColouringTemplate> counterexample;
    std::chrono::steady_clock::time_point start;
};

class SearchWorker {
  public:
    SearchWorker(const SearchProblem& p, const PairList& pl, const Thresholds& th,
                 SharedSearchState& shared)
        : p_(p), pairs_(pl.pairs), th_(th), shared_(shared),
          work_(ColouringTemplate::empty(p.n)),
          undecided_(static_cast<std::size_t>(p.n), p.n - 1),
          chosen_index_(pairs_.size(), -1) {
        for (auto& d : deg_) d.assign(static_cast<std::size_t>(p.n), 0);
    }

    SearchStats stats;
    int local_best = -1;
    std::optional<ColouringTemplate> local_template;
    std::vector<ColouringTemplate> samples;

    // Runs the subtree rooted at assigning `subset` to pair 0.
    void run_branch(int subset_idx) {
        if (pairs_.empty()) {
            evaluate_leaf();
            return;
        }
        descend(0, subset_idx);
    }

    void evaluate_empty_problem() { evaluate_leaf(); }

  private:
    bool budget_ok() {
        if ((stats.nodes & 1023) == 0) {
            shared_.nodes.fetch_add(nodes_unflushed_, std::memory_order_relaxed);
            nodes_unflushed_ = 0;
            if (p_.budget.max_nodes >= 0 &&
                shared_.nodes.load(std::memory_order_relaxed) > p_.budget.max_nodes) {
                shared_.budget_hit.store(true);
                shared_.abort.store(true);
            }
            if (p_.budget.wall_ms >= 0) {
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - shared_.start)
                              .count();
                if (ms > p_.budget.wall_ms) {
                    shared_.budget_hit.store(true);
                    shared_.abort.store(true);
                }
            }
        }
        return !shared_.abort.load(std::memory_order_relaxed);
    }

    void descend(std::size_t depth, int forced_subset_idx) {
        const auto [u, v] = pairs_[depth];
        int from = forced_subset_idx >= 0 ? forced_subset_idx : 0;
        int to = forced_subset_idx >= 0 ? forced_subset_idx + 1 : 8;
        for (int si = from; si < to; ++si) {
            ++stats.nodes;
            ++nodes_unflushed_;
            if (!budget_ok()) return;

            // Symmetry: subsets along vertex 0's row are non-decreasing in
            // the fixed subset order.
            if (p_.prune.use_symmetry && u == 0 && v >= 2 &&
                si < chosen_index_[depth - 1]) {
                ++stats.pruned_symmetry;
                continue;
            }

            unsigned mask = kSubsetOrder[static_cast<std::size_t>(si)];
            apply(depth, u, v, mask, si);
            if (survives_checks(depth, u, v, mask)) {
                if (depth + 1 == pairs_.size())
                    evaluate_leaf();
                else
                    descend(depth + 1, -1);
            }
            unapply(depth, u, v, mask);
            if (shared_.abort.load(std::memory_order_relaxed)) return;
        }
    }

    void apply(std::size_t depth, int u, int v, unsigned mask, int si) {
        work_.set_pair_inplace(u, v, mask);
        for (int c = 1; c <= 3; ++c)
            if (mask & colour_bit(c)) {
                ++deg_[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(u)];
                ++deg_[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(v)];
            }
        --undecided_[static_cast<std::size_t>(u)];
        --undecided_[static_cast<std::size_t>(v)];
        chosen_index_[depth] = si;
    }

    void unapply(std::size_t depth, int u, int v, unsigned mask) {
        work_.set_pair_inplace(u, v, 0);
        for (int c = 1; c <= 3; ++c)
            if (mask & colour_bit(c)) {
                --deg_[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(u)];
                --deg_[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(v)];
            }
        ++undecided_[static_cast<std::size_t>(u)];
        ++undecided_[static_cast<std::size_t>(v)];
        chosen_index_[depth] = -1;
    }

    // All checks that depend on the just-applied assignment. Returns false
    // when the node is fathomed.
    bool survives_checks(std::size_t depth, int u, int v, unsigned mask) {
        // Completed triangles through (u,v) are exactly {w,u,v} for w < u.
        if (mask && u > 0) {
            for (const auto& a : kColourAssignments) {
                // Triple sorted (w,u,v): colours a = (wu, wv, uv).
                if (!(mask & colour_bit(a[2]))) continue;
                if (work_.row(a[0], u).first_common_below(work_.row(a[1], v),
                                                          static_cast<std::size_t>(u)) !=
                    Bitset::npos) {
                    ++stats.pruned_rainbow;
                    if (p_.record_prune_samples && stats.pruned_rainbow % 100 == 0 &&
                        samples.size() < 500)
                        samples.push_back(work_);
                    return false;
                }
            }
        }

        if (p_.prune.assume_lemmas) {
            if ((mask & colour_bit(2)) && (mask & colour_bit(3))) {
                ++stats.pruned_lemmas;
                return false;
            }
            if ((mask & colour_bit(2)) && g2_has_odd_cycle()) {
                ++stats.pruned_lemmas;
                return false;
            }
        }

        const int n = p_.n;
        if (p_.prune.use_degree_bounds) {
            int bound1 = n, bound2 = n, bound3 = n;
            for (int x = 0; x < n; ++x) {
                int und = undecided_[static_cast<std::size_t>(x)];
                bound1 = std::min(bound1, deg_[0][static_cast<std::size_t>(x)] + und);
                bound2 = std::min(bound2, deg_[1][static_cast<std::size_t>(x)] + und);
                bound3 = std::min(bound3, deg_[2][static_cast<std::size_t>(x)] + und);
            }
            int required_sum = p_.mode == SearchMode::Counterexample
                                   ? th_.sum_max + 1
                                   : std::max(2, shared_.best_value.load(
                                                     std::memory_order_relaxed) +
                                                     1);
            if (bound1 < th_.delta1_min || bound2 < 1 || bound3 < 1 ||
                bound2 + bound3 < required_sum) {
                ++stats.pruned_degree;
                return false;
            }
        }

        // Vertex 0 must end with minimum colour-1 degree; its degree is fixed
        // once its row is fully assigned.
        if (p_.prune.use_symmetry && depth + 2 >= static_cast<std::size_t>(n)) {
            int d10 = deg_[0][0];
            for (int x = 1; x < n; ++x)
                if (deg_[0][static_cast<std::size_t>(x)] +
                        undecided_[static_cast<std::size_t>(x)] <
                    d10) {
                    ++stats.pruned_symmetry;
                    return false;
                }
        }

        if (p_.prune.use_prop1) {
            // Pessimistic envelopes only grow along any completion, so if the
            // trivial-bound hypotheses already hold, every completion
            // contains a rainbow triangle.
            int min_d1 = n, min_d3 = n, max_d2 = 0;
            for (int x = 0; x < n; ++x) {
                min_d1 = std::min(min_d1, deg_[0][static_cast<std::size_t>(x)]);
                max_d2 = std::max(max_d2, deg_[1][static_cast<std::size_t>(x)]);
                min_d3 = std::min(min_d3, deg_[2][static_cast<std::size_t>(x)]);
            }
            if (min_d3 >= 1 && min_d1 + max_d2 > n) {
                ++stats.pruned_prop1;
                return false;
            }
        }
        return true;
    }

    bool g2_has_odd_cycle() const {
        const int n = p_.n;
        std::vector<int> side(static_cast<std::size_t>(n), -1);
        std::vector<int> stack;
        for (int s = 0; s < n; ++s) {
            if (side[static_cast<std::size_t>(s)] != -1) continue;
            side[static_cast<std::size_t>(s)] = 0;
            stack.push_back(s);
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                const Bitset& row = work_.row(2, x);
                for (std::size_t w = row.find_first(); w != Bitset::npos; w = row.find_next(w)) {
                    if (side[w] == -1) {
                        side[w] = 1 - side[static_cast<std::size_t>(x)];
                        stack.push_back(static_cast<int>(w));
                    } else if (side[w] == side[static_cast<std::size_t>(x)]) {
                        return true;
                    }
                }
            }
        }
        return false;
    }

    void evaluate_leaf() {
        const int n = p_.n;
        int d1 = n, d2 = n, d3 = n;
        for (int x = 0; x < n; ++x) {
            d1 = std::min(d1, deg_[0][static_cast<std::size_t>(x)]);
            d2 = std::min(d2, deg_[1][static_cast<std::size_t>(x)]);
            d3 = std::min(d3, deg_[2][static_cast<std::size_t>(x)]);
        }
        if (d1 < th_.delta1_min || d2 < 1 || d3 < 1) return;
        int val = d2 + d3;
        if (p_.mode == SearchMode::Counterexample || val > th_.sum_max) {
            if (val >= th_.sum_max + 1) {
                // A theorem violation halts the run and carries the template
                // out for revalidation, whatever the mode.
                std::lock_guard<std::mutex> lock(shared_.result_mutex);
                if (!shared_.counterexample) {
                    shared_.counterexample = work_;
                    shared_.counterexample_branch = branch_hint_;
                }
                shared_.abort.store(true);
                return;
            }
            if (p_.mode == SearchMode::Counterexample) return;
        }
        if (val > local_best) {
            local_best = val;
            local_template = work_;
            int cur = shared_.best_value.load(std::memory_order_relaxed);
            while (cur < val &&
                   !shared_.best_value.compare_exchange_weak(cur, val, std::memory_order_relaxed)) {
            }
        }
    }

  public:
    int branch_hint_ = 0;

  private:
    const SearchProblem& p_;
    const std::vector<std::pair<int, int>>& pairs_;
    const Thresholds& th_;
    SharedSearchState& shared_;
    ColouringTemplate work_;
    std::array<std::vector<int>, 3> deg_;
    std::vector<int> undecided_;
    std::vector<int> chosen_index_;
    long long nodes_unflushed_ = 0;
};

inline SearchOutcome run_search(const SearchProblem& p) {
    if (p.n < 1 || p.r < 1) throw std::domain_error("search needs n >= 1 and r >= 1");
    if (p.prune.assume_lemmas && p.mode != SearchMode::Counterexample)
        throw std::domain_error("assume_lemmas is permitted only in Counterexample mode");
    Thresholds th = thresholds_for(p.r, p.n);
    PairList pl(p.n);
    SharedSearchState shared;
    shared.start = std::chrono::steady_clock::now();

    int threads = std::max(1, p.threads);
    std::vector<SearchWorker> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) workers.emplace_back(p, pl, th, shared);

    if (pl.pairs.empty()) {
        workers[0].evaluate_empty_problem();
    } else if (threads == 1) {
        for (int si = 0; si < 8; ++si) {
            workers[0].branch_hint_ = si;
            workers[0].run_branch(si);
            if (shared.abort.load()) break;
        }
    } else {
        std::vector<std::thread> pool;
        for (int tdx = 0; tdx < threads; ++tdx) {
            pool.emplace_back([&, tdx] {
                for (int si = tdx; si < 8; si += threads) {
                    workers[static_cast<std::size_t>(tdx)].branch_hint_ = si;
                    workers[static_cast<std::size_t>(tdx)].run_branch(si);
                    if (shared.abort.load()) break;
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    SearchOutcome out;
    out.n = p.n;
    out.r = p.r;
    out.mode = p.mode;
    for (const auto& w : workers) {
        out.stats.nodes += w.stats.nodes;
        out.stats.pruned_rainbow += w.stats.pruned_rainbow;
        out.stats.pruned_degree += w.stats.pruned_degree;
        out.stats.pruned_symmetry += w.stats.pruned_symmetry;
        out.stats.pruned_prop1 += w.stats.pruned_prop1;
        out.stats.pruned_lemmas += w.stats.pruned_lemmas;
    }
    out.stats.approximate = threads > 1;
    out.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - shared.start).count();
    if (p.record_prune_samples) out.prune_samples = std::move(workers[0].samples);

    if (shared.counterexample) {
        out.status = SearchStatus::FoundCounterexample;
        out.best_template = shared.counterexample;
        DegreeProfile prof = degree_profile(*out.best_template);
        out.best_value = prof.colour[1].min_degree + prof.colour[2].min_degree;
        return out;
    }
    if (shared.budget_hit.load()) {
        out.status = SearchStatus::BudgetExceeded;
    } else {
        out.status = p.mode == SearchMode::Maximize ? SearchStatus::Optimal
                                                    : SearchStatus::Exhausted;
    }
    if (p.mode == SearchMode::Maximize) {
        int best = -1;
        const SearchWorker* best_worker = nullptr;
        for (const auto& w : workers)
            if (w.local_best > best) {
                best = w.local_best;
                best_worker = &w;
            }
        if (best_worker && best >= 2) {
            out.best_value = best;
            out.best_template = best_worker->local_template;
        }
    }
    return out;
}

}  // namespace detail

// Exact maximum of δ₂+δ₃ over Gallai templates meeting the δ₁ threshold and
// δ₂, δ₃ ≥ 1. Optimal with absent best_value means no feasible template.
inline SearchOutcome maximize_sum(const SearchProblem& p) {
    SearchProblem q = p;
    q.mode = SearchMode::Maximize;
    return detail::run_search(q);
}

// Decision search for a template violating the degree-sum bound. Exhausted is
// the expected outcome; FoundCounterexample must be revalidated before use.
inline SearchOutcome find_counterexample(const SearchProblem& p) {
    SearchProblem q = p;
    q.mode = SearchMode::Counterexample;
    return detail::run_search(q);
}

// True iff the outcome's template passes the naive Gallai oracle and its
// degree profile backs the claimed value and thresholds.
inline bool revalidate(const SearchOutcome& o) {
    if (!o.best_template) throw std::domain_error("revalidate needs an outcome with a template");
    const ColouringTemplate& t = *o.best_template;
    if (t.vertex_count() != o.n) return false;
    if (find_rainbow_triangle_naive(t).has_value()) return false;
    Thresholds th = thresholds_for(o.r, o.n);
    DegreeProfile prof = degree_profile(t);
    int d1 = prof.colour[0].min_degree;
    int d2 = prof.colour[1].min_degree;
    int d3 = prof.colour[2].min_degree;
    if (d1 < th.delta1_min || d2 < 1 || d3 < 1) return false;
    if (!o.best_value || d2 + d3 != *o.best_value) return false;
    if (o.status == SearchStatus::FoundCounterexample && d2 + d3 <= th.sum_max) return false;
    return true;
}

// Simulated annealing from the Turán-style start T(r+1, n). Moves that would
// create a rainbow triangle are rejected, so the walk stays inside Gallai
// templates; infeasible δ₁ is penalised rather than forbidden. Deterministic
// in (seed, iters).
inline SearchOutcome anneal(int n, int r, std::uint64_t seed, long long iters) {
    if (r < 1 || n < r + 1) throw std::domain_error("anneal needs n >= r+1");
    Thresholds th = thresholds_for(r, n);
    ColouringTemplate work = turan_template(r + 1, n);

    detail::PairList pl(n);
    std::array<std::vector<int>, 3> deg;
    for (auto& d : deg) d.assign(static_cast<std::size_t>(n), 0);
    for (int c = 1; c <= 3; ++c)
        for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(v)] = work.degree(c, v);

    auto mins = [&]() -> std::array<int, 3> {
        std::array<int, 3> m = {n, n, n};
        for (int c = 0; c < 3; ++c)
            for (int v = 0; v < n; ++v)
                m[static_cast<std::size_t>(c)] =
                    std::min(m[static_cast<std::size_t>(c)],
                             deg[static_cast<std::size_t>(c)][static_cast<std::size_t>(v)]);
        return m;
    };
    const long long penalty = 4LL * n;
    auto energy = [&](const std::array<int, 3>& m) {
        long long infeas = std::max(0, th.delta1_min - m[0]) + std::max(0, 1 - m[1]) +
                           std::max(0, 1 - m[2]);
        return penalty * infeas - (m[1] + m[2]);
    };
    auto feasible = [&](const std::array<int, 3>& m) {
        return m[0] >= th.delta1_min && m[1] >= 1 && m[2] >= 1;
    };

    SearchOutcome out;
    out.n = n;
    out.r = r;
    out.mode = SearchMode::Maximize;
    out.status = SearchStatus::BudgetExceeded;  // heuristic: budget-bounded by iters

    std::array<int, 3> m = mins();
    long long cur_e = energy(m);
    int best_val = -1;
    if (feasible(m)) {
        best_val = m[1] + m[2];
        out.best_template = work;
    }

    std::mt19937_64 rng(seed);
    auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double t0 = 1.5, t1 = 0.02;
    auto start = std::chrono::steady_clock::now();

    for (long long it = 0; it < iters; ++it) {
        double frac = iters > 1 ? static_cast<double>(it) / static_cast<double>(iters - 1) : 0.0;
        double temp = t0 * std::pow(t1 / t0, frac);
        std::size_t pi = static_cast<std::size_t>(rng() % pl.pairs.size());
        unsigned new_mask = kSubsetOrder[static_cast<std::size_t>(rng() % 8)];
        auto [u, v] = pl.pairs[pi];
        unsigned old_mask = work.colours_of(u, v);
        if (new_mask == old_mask) continue;

        work.set_pair_inplace(u, v, new_mask);
        if (new_mask && pair_in_rainbow_triangle(work, u, v)) {
            work.set_pair_inplace(u, v, old_mask);  // reject: keeps the walk Gallai
            continue;
        }
        for (int c = 1; c <= 3; ++c) {
            int delta = static_cast<int>((new_mask >> (c - 1)) & 1u) -
                        static_cast<int>((old_mask >> (c - 1)) & 1u);
            deg[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(u)] += delta;
            deg[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(v)] += delta;
        }
        std::array<int, 3> nm = mins();
        long long new_e = energy(nm);
        long long diff = new_e - cur_e;
        if (diff <= 0 || unit() < std::exp(-static_cast<double>(diff) / temp)) {
            cur_e = new_e;
            m = nm;
            if (feasible(m) && m[1] + m[2] > best_val) {
                best_val = m[1] + m[2];
                out.best_template = work;
            }
        } else {
            for (int c = 1; c <= 3; ++c) {
                int delta = static_cast<int>((new_mask >> (c - 1)) & 1u) -
                            static_cast<int>((old_mask >> (c - 1)) & 1u);
                deg[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(u)] -= delta;
                deg[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(v)] -= delta;
            }
            work.set_pair_inplace(u, v, old_mask);
        }
    }
    if (best_val >= 0) out.best_value = best_val;
    out.stats.nodes = iters;
    out.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace gallai
