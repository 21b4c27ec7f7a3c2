#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gallai/cnf.hpp"
#include "gallai/constructions.hpp"
#include "gallai/naive.hpp"
#include "gallai/search.hpp"

using namespace gallai;

namespace {

std::vector<bool> primary_from_template(const ColouringTemplate& t) {
    int n = t.vertex_count();
    std::vector<bool> bits;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int c = 1; c <= 3; ++c) bits.push_back(t.has(c, u, v));
    return bits;
}

ColouringTemplate template_from_primary(int n, const std::vector<bool>& bits) {
    ColouringTemplate t = ColouringTemplate::empty(n);
    std::size_t k = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            unsigned mask = 0;
            for (int c = 1; c <= 3; ++c)
                if (bits[k++]) mask |= colour_bit(c);
            if (mask) t.set_pair_inplace(u, v, mask);
        }
    return t;
}

// Direct statement of what a split encodes, evaluated on the template itself.
bool satisfies_split_directly(const ColouringTemplate& t, const CnfSplit& split) {
    if (find_rainbow_triangle_naive(t).has_value()) return false;
    Thresholds th = thresholds_for(split.r, split.n);
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (t.degree(1, v) < th.delta1_min) return false;
        if (t.degree(2, v) < std::max(1, split.s2)) return false;
        if (t.degree(3, v) < std::max(1, split.s3)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("split layout and variable counts") {
    auto splits = encode_cnf(3, 2, 2);
    REQUIRE(splits.size() == 1);
    CHECK(splits[0].s2 == 1);
    CHECK(splits[0].s3 == 1);
    CHECK(splits[0].num_primary_vars == 9);  // 3 pairs x 3 colours

    auto five = encode_cnf(6, 2, 5);
    REQUIRE(five.size() == 2);
    CHECK(five[0].s2 == 4);
    CHECK(five[0].s3 == 1);
    CHECK(five[1].s2 == 3);
    CHECK(five[1].s3 == 2);

    CHECK(encode_cnf(4, 2, 1).empty());  // no split with s2 >= s3 >= 1
    CHECK_THROWS_AS(encode_cnf(0, 2, 2), std::domain_error);
}

TEST_CASE("dimacs shape") {
    auto splits = encode_cnf(4, 2, 2);
    REQUIRE(!splits.empty());
    std::istringstream in(splits[0].dimacs());
    std::string line;
    int comment_lines = 0, clause_lines = 0;
    int vars = -1, clauses = -1;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.rfind("c ", 0) == 0) {
            ++comment_lines;
            CHECK(!saw_header);  // comments precede the header
        } else if (line.rfind("p cnf ", 0) == 0) {
            saw_header = true;
            std::istringstream hs(line.substr(6));
            hs >> vars >> clauses;
        } else if (!line.empty()) {
            ++clause_lines;
            CHECK(line.back() == '0');
        }
    }
    CHECK(saw_header);
    CHECK(vars == splits[0].num_vars);
    CHECK(clauses == static_cast<int>(splits[0].clauses.size()));
    CHECK(clause_lines == clauses);
    // one mapping comment per primary variable plus the description line
    CHECK(comment_lines == splits[0].num_primary_vars + 1);
}

TEST_CASE("a satisfying template satisfies its split") {
    // turan(2,6) has per-vertex degrees d1=3, d2=d3=2 and delta1_min(1,6)=1
    ColouringTemplate t = turan_template(2, 6);
    auto splits = encode_cnf(6, 1, 4);
    REQUIRE(splits.size() == 2);
    const CnfSplit* s22 = nullptr;
    const CnfSplit* s31 = nullptr;
    for (const auto& s : splits) (s.s2 == 2 ? s22 : s31) = &s;
    REQUIRE(s22 != nullptr);
    REQUIRE(s31 != nullptr);

    auto primary = primary_from_template(t);
    CHECK(satisfies_split_directly(t, *s22));
    CHECK(split_satisfiable_with_primary(*s22, primary));
    CHECK(!satisfies_split_directly(t, *s31));  // needs d2 >= 3
    CHECK(!split_satisfiable_with_primary(*s31, primary));
}

TEST_CASE("checker equals direct semantics on random assignments") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 3 + static_cast<int>(rng() % 2);  // n in {3,4}
        int r = 1 + static_cast<int>(rng() % 3);
        int target = 2 + static_cast<int>(rng() % 3);
        auto splits = encode_cnf(n, r, target);
        if (splits.empty()) continue;
        const CnfSplit& split = splits[static_cast<std::size_t>(rng() % splits.size())];

        std::vector<bool> primary(static_cast<std::size_t>(split.num_primary_vars));
        for (auto&& b : primary) b = (rng() & 1) != 0;
        ColouringTemplate t = template_from_primary(n, primary);
        CHECK(split_satisfiable_with_primary(split, primary) ==
              satisfies_split_directly(t, split));
    }
}

TEST_CASE("n=3 target 2 is unsatisfiable over all 512 assignments") {
    auto splits = encode_cnf(3, 2, 2);
    REQUIRE(splits.size() == 1);
    const CnfSplit& split = splits[0];
    for (int code = 0; code < 512; ++code) {
        std::vector<bool> primary(9);
        for (int b = 0; b < 9; ++b) primary[static_cast<std::size_t>(b)] = (code >> b) & 1;
        CHECK(!split_satisfiable_with_primary(split, primary));
    }

    // matches the exhaustive template search
    SearchProblem p;
    p.n = 3;
    p.r = 2;
    p.mode = SearchMode::Counterexample;
    CHECK(find_counterexample(p).status == SearchStatus::Exhausted);
}

TEST_CASE("degenerate cardinalities") {
    // delta1_min(4,5) = 4 = n-1: every vertex needs all of its colour-1 pairs
    auto tight = encode_cnf(5, 4, 2);
    REQUIRE(!tight.empty());
    ColouringTemplate all1 = ColouringTemplate::empty(5);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) all1.set_pair_inplace(u, v, 0b111);
    // complete tri-coloured template is rainbow-ridden: must violate
    CHECK(!split_satisfiable_with_primary(tight[0], primary_from_template(all1)));

    // impossible demand: target degrees above n-1 produce an unsatisfiable file
    auto impossible = encode_cnf(3, 1, 6);  // s2=3 > n-1=2
    REQUIRE(!impossible.empty());
    bool any_empty_clause = false;
    for (const auto& cl : impossible[0].clauses) any_empty_clause |= cl.empty();
    CHECK(any_empty_clause);
}
