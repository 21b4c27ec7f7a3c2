#pragma once

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallai/structure.hpp"
#include "gallai/template.hpp"

namespace gallai {

// One DIMACS formula per (s₂,s₃) split of the target degree sum. Variables
// x_{p,c} = 3·pair_index(p) + c encode pair p carrying colour c; auxiliary
// sequential-counter variables follow the primary block.
struct CnfSplit {
    int n = 0;
    int r = 0;
    int s2 = 0;
    int s3 = 0;
    int num_vars = 0;
    int num_primary_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::string> comments;

    std::string dimacs() const {
        std::ostringstream os;
        for (const std::string& c : comments) os << "c " << c << "\n";
        os << "p cnf " << num_vars << " " << clauses.size() << "\n";
        for (const auto& cl : clauses) {
            for (int lit : cl) os << lit << " ";
            os << "0\n";
        }
        return os.str();
    }
};

namespace detail {

inline int pair_index(int n, int u, int v) {
    // lexicographic index of (u,v), u < v
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

// Sinz sequential counter for "at most bound of lits are true".
// Registers r_{i,j} are fresh variables appended after next_var.
inline void at_most(const std::vector<int>& lits, int bound, int& next_var,
                    std::vector<std::vector<int>>& clauses) {
    const int m = static_cast<int>(lits.size());
    if (bound >= m) return;
    if (bound <= 0) {
        for (int l : lits) clauses.push_back({-l});
        return;
    }
    auto reg = [&](int i, int j) {  // i in 1..m-1, j in 1..bound
        return next_var + (i - 1) * bound + j;
    };
    clauses.push_back({-lits[0], reg(1, 1)});
    for (int j = 2; j <= bound; ++j) clauses.push_back({-reg(1, j)});
    for (int i = 2; i <= m - 1; ++i) {
        clauses.push_back({-lits[static_cast<std::size_t>(i - 1)], reg(i, 1)});
        clauses.push_back({-reg(i - 1, 1), reg(i, 1)});
        for (int j = 2; j <= bound; ++j) {
            clauses.push_back({-lits[static_cast<std::size_t>(i - 1)], -reg(i - 1, j - 1), reg(i, j)});
            clauses.push_back({-reg(i - 1, j), reg(i, j)});
        }
        clauses.push_back({-lits[static_cast<std::size_t>(i - 1)], -reg(i - 1, bound)});
    }
    clauses.push_back({-lits[static_cast<std::size_t>(m - 1)], -reg(m - 1, bound)});
    next_var += (m - 1) * bound;
}

// "At least k of lits" as at-most-(m-k) over the negated literals.
inline void at_least(const std::vector<int>& lits, int k, int& next_var,
                     std::vector<std::vector<int>>& clauses) {
    const int m = static_cast<int>(lits.size());
    if (k <= 0) return;
    if (k > m) {
        clauses.push_back({});  // unsatisfiable demand
        return;
    }
    if (k == 1) {
        clauses.push_back(lits);
        return;
    }
    if (k == m) {
        for (int l : lits) clauses.push_back({l});
        return;
    }
    std::vector<int> negated;
    negated.reserve(lits.size());
    for (int l : lits) negated.push_back(-l);
    at_most(negated, m - k, next_var, clauses);
}

}  // namespace detail

// CNF encoding of "a Gallai template on n vertices with δ₁ ≥ delta1_min,
// per-vertex colour-2 degree ≥ s₂ and colour-3 degree ≥ s₃ exists", one
// formula per split s₂+s₃ = target_sum, s₂ ≥ s₃ ≥ 1. All splits UNSAT
// certifies that no template reaches the target sum.
inline std::vector<CnfSplit> encode_cnf(int n, int r, int target_sum) {
    if (n < 1) throw std::domain_error("cnf encoding needs n >= 1");
    Thresholds th = thresholds_for(r, n);
    const int num_pairs = n * (n - 1) / 2;
    const int primary = 3 * num_pairs;

    std::vector<CnfSplit> out;
    for (int s3 = 1; 2 * s3 <= target_sum; ++s3) {
        int s2 = target_sum - s3;
        CnfSplit split;
        split.n = n;
        split.r = r;
        split.s2 = s2;
        split.s3 = s3;
        split.num_primary_vars = primary;

        auto var = [&](int u, int v, int c) { return 3 * detail::pair_index(n, u, v) + c; };

        split.comments.push_back("gallai template encoding: n=" + std::to_string(n) +
                                 " r=" + std::to_string(r) +
                                 " delta1_min=" + std::to_string(th.delta1_min) +
                                 " s2=" + std::to_string(s2) + " s3=" + std::to_string(s3));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                for (int c = 1; c <= 3; ++c)
                    split.comments.push_back("pair " + std::to_string(u) + " " + std::to_string(v) +
                                             " colour " + std::to_string(c) + " -> var " +
                                             std::to_string(var(u, v, c)));

        // (i) forbid every rainbow assignment on every vertex triple
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                for (int w = v + 1; w < n; ++w)
                    for (const auto& a : kColourAssignments)
                        split.clauses.push_back(
                            {-var(u, v, a[0]), -var(u, w, a[1]), -var(v, w, a[2])});

        int next_var = primary;
        auto incident = [&](int v, int c) {
            std::vector<int> lits;
            for (int u = 0; u < n; ++u) {
                if (u == v) continue;
                lits.push_back(var(std::min(u, v), std::max(u, v), c));
            }
            return lits;
        };
        for (int v = 0; v < n; ++v) {
            // (ii) hypothesis degrees
            detail::at_least(incident(v, 1), th.delta1_min, next_var, split.clauses);
            detail::at_least(incident(v, 2), 1, next_var, split.clauses);
            detail::at_least(incident(v, 3), 1, next_var, split.clauses);
            // (iii) split degrees
            detail::at_least(incident(v, 2), s2, next_var, split.clauses);
            detail::at_least(incident(v, 3), s3, next_var, split.clauses);
        }
        split.num_vars = next_var;
        out.push_back(std::move(split));
    }
    return out;
}

// Decides a split's satisfiability for one fixed primary assignment: counter
// auxiliaries are propagated to their least fixpoint, then all clauses are
// checked. Exact because every auxiliary occurs definitionally. Test oracle
// for small n; not a general solver.
inline bool split_satisfiable_with_primary(const CnfSplit& split,
                                           const std::vector<bool>& primary_true) {
    std::vector<int> value(static_cast<std::size_t>(split.num_vars) + 1, -1);  // -1 unknown
    for (int i = 1; i <= split.num_primary_vars; ++i)
        value[static_cast<std::size_t>(i)] = primary_true[static_cast<std::size_t>(i - 1)] ? 1 : 0;
    for (int i = split.num_primary_vars + 1; i <= split.num_vars; ++i)
        value[static_cast<std::size_t>(i)] = 0;  // least fixpoint start

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& cl : split.clauses) {
            int unassigned_aux = 0, last_aux = 0;
            bool satisfied = false;
            for (int lit : cl) {
                int v = std::abs(lit);
                int val = value[static_cast<std::size_t>(v)];
                bool is_aux = v > split.num_primary_vars;
                if (is_aux && lit > 0 && val == 0) {
                    // positive aux literal may still be raised
                    ++unassigned_aux;
                    last_aux = v;
                } else if ((lit > 0 && val == 1) || (lit < 0 && val == 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (unassigned_aux == 1) {
                value[static_cast<std::size_t>(last_aux)] = 1;
                changed = true;
            }
        }
    }
    for (const auto& cl : split.clauses) {
        bool satisfied = false;
        for (int lit : cl) {
            int v = std::abs(lit);
            if ((lit > 0 && value[static_cast<std::size_t>(v)] == 1) ||
                (lit < 0 && value[static_cast<std::size_t>(v)] == 0)) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) return false;
    }
    return true;
}

}  // namespace gallai
