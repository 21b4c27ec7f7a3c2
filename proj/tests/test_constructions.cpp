#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gallai/constructions.hpp"
#include "gallai/json_io.hpp"
#include "gallai/naive.hpp"

using namespace gallai;

TEST_CASE("turan template degree formulas") {
    for (int n = 1; n <= 40; ++n)
        for (int r = 1; r <= n; ++r) {
            ColouringTemplate t = turan_template(r, n);
            DegreeProfile p = degree_profile(t);
            CHECK(p.colour[0].min_degree == (n - (n + r - 1) / r));  // ⌊(1-1/r)n⌋
            CHECK(p.colour[1].min_degree == n / r - 1);
            CHECK(p.colour[2].min_degree == n / r - 1);
        }

    CHECK_THROWS_AS(turan_template(0, 5), std::domain_error);
    CHECK_THROWS_AS(turan_template(6, 5), std::domain_error);
}

TEST_CASE("turan special cases") {
    // one part: G1 empty, G2 = G3 = K5
    ColouringTemplate t = turan_template(1, 5);
    DegreeProfile p = degree_profile(t);
    CHECK(p.colour[0].is_empty);
    CHECK(p.colour[1].min_degree == 4);
    CHECK(p.colour[2].min_degree == 4);
    CHECK(is_gallai(t));

    // unbalanced parts 3,2,2
    p = degree_profile(turan_template(3, 7));
    CHECK(p.colour[0].min_degree == 4);
    CHECK(p.colour[1].min_degree == 1);
    CHECK(p.colour[2].min_degree == 1);
}

TEST_CASE("pattern validation") {
    PatternSpec ok;
    ok.r = 3;
    ok.components = {PatternSpec::Isolated{0}, PatternSpec::Pair{1, 2, 2}};
    CHECK(validate_pattern(ok).empty());

    PatternSpec doubled;
    doubled.r = 2;
    doubled.components = {PatternSpec::Pair{0, 1, 0}, PatternSpec::Isolated{1}};
    auto errors = validate_pattern(doubled);
    REQUIRE(!errors.empty());
    bool mentions_coverage = false;
    for (const auto& e : errors)
        if (e.find("covered more than once") != std::string::npos) mentions_coverage = true;
    CHECK(mentions_coverage);

    PatternSpec bad_k4;
    bad_k4.r = 4;
    bad_k4.components = {PatternSpec::K4{{0, 1, 2, 3}, {2, 2, 0}}};
    errors = validate_pattern(bad_k4);
    REQUIRE(!errors.empty());
    CHECK(errors.front().find("bijection") != std::string::npos);

    CHECK_THROWS_AS(pattern_template(bad_k4, 8), std::domain_error);
    CHECK_THROWS_AS(pattern_template(ok, 2), std::domain_error);  // n < r
}

TEST_CASE("pattern template frozen examples") {
    // One K4 block, r=4, n=8: the colour-0 matched part contributes nothing
    // to colour 1, so δ₁ = 8-2-1.
    PatternSpec k4;
    k4.r = 4;
    k4.components = {PatternSpec::K4{{0, 1, 2, 3}, {2, 3, 0}}};
    ColouringTemplate t = pattern_template(k4, 8);
    DegreeProfile p = degree_profile(t);
    CHECK(p.colour[0].min_degree == 5);
    CHECK(p.colour[1].min_degree == 2);
    CHECK(p.colour[2].min_degree == 2);
    CHECK(!find_rainbow_triangle_naive(t).has_value());

    // Two isolated vertices, r=2, n=6: Turán-like.
    PatternSpec iso;
    iso.r = 2;
    iso.components = {PatternSpec::Isolated{0}, PatternSpec::Isolated{1}};
    t = pattern_template(iso, 6);
    p = degree_profile(t);
    CHECK(p.colour[0].min_degree == 3);
    CHECK(p.colour[1].min_degree == 2);
    CHECK(p.colour[2].min_degree == 2);
    CHECK(!find_rainbow_triangle_naive(t).has_value());

    // Colour-0 pair, r=2, n=6: empty insides, full tri-coloured cross.
    PatternSpec pair0;
    pair0.r = 2;
    pair0.components = {PatternSpec::Pair{0, 1, 0}};
    t = pattern_template(pair0, 6);
    p = degree_profile(t);
    CHECK(p.colour[0].min_degree == 3);
    CHECK(p.colour[1].min_degree == 3);
    CHECK(p.colour[2].min_degree == 3);
    CHECK(!find_rainbow_triangle_naive(t).has_value());
    ConstructionReport rep = construction_report(t, 2, 6);
    CHECK(rep.gallai);
    CHECK(rep.bounds_ok());  // δ₂ = n/r sits at the top of the interval
}

TEST_CASE("all-isolated pattern equals the Turán template") {
    for (int r = 1; r <= 5; ++r)
        for (int n = r; n <= 20; ++n) {
            PatternSpec spec;
            spec.r = r;
            for (int i = 0; i < r; ++i) spec.components.push_back(PatternSpec::Isolated{i});
            CHECK(pattern_template(spec, n) == turan_template(r, n));
        }
}

TEST_CASE("construction reports") {
    ColouringTemplate t = turan_template(3, 12);
    ConstructionReport rep = construction_report(t, 3, 12);
    CHECK(rep.gallai);
    CHECK(rep.delta23_in_interval);

    ColouringTemplate k3 = empty_template(3);
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) k3.set_pair_inplace(u, v, 0b111);
    rep = construction_report(k3, 1, 3);
    CHECK(!rep.gallai);

    CHECK_THROWS_AS(construction_report(t, 3, 11), std::domain_error);
}

TEST_CASE("pattern enumeration counts") {
    CHECK(enumerate_patterns(1).size() == 1);
    CHECK(std::holds_alternative<PatternSpec::Isolated>(enumerate_patterns(1)[0].components[0]));

    // r=2: two isolated vertices, or one pair in each of the colours 0,2,3
    CHECK(enumerate_patterns(2).size() == 4);

    // r=4 composition: Iso⁴ (1) + Iso²·Pair (3) + Pair² as an unordered
    // colour multiset (6) + K4 matching-colour bijections (6) = 16
    CHECK(enumerate_patterns(4).size() == 16);
    CHECK(enumerate_patterns(4).size() >= 15);

    CHECK(enumerate_patterns(4, 5).size() == 5);  // truncation

    for (const auto& spec : enumerate_patterns(6)) CHECK(validate_pattern(spec).empty());
}

TEST_CASE("every enumerated pattern yields a Gallai template inside the intervals") {
    for (int r = 1; r <= 5; ++r) {
        for (const auto& spec : enumerate_patterns(r)) {
            for (int n : {r, 2 * r, 3 * r, 5 * r + 1}) {
                ColouringTemplate t = pattern_template(spec, n);
                CHECK(!find_rainbow_triangle_naive(t).has_value());
                ConstructionReport rep = construction_report(t, r, n);
                CHECK(rep.gallai);
                CHECK(rep.delta1_in_interval);
                CHECK(rep.delta23_in_interval);
            }
        }
    }
}

TEST_CASE("pattern templates are relabel-invariant under component reordering") {
    // Same multiset listed in two orders; the explicit block swap maps one
    // template onto the other.
    PatternSpec a;
    a.r = 3;
    a.components = {PatternSpec::Isolated{0}, PatternSpec::Pair{1, 2, 2}};
    PatternSpec b;
    b.r = 3;
    b.components = {PatternSpec::Pair{0, 1, 2}, PatternSpec::Isolated{2}};

    int n = 9;  // parts of size 3: {0,1,2},{3,4,5},{6,7,8}
    ColouringTemplate ta = pattern_template(a, n);
    ColouringTemplate tb = pattern_template(b, n);
    // map part 0 -> part 2, parts 1,2 -> parts 0,1
    std::vector<int> perm = {6, 7, 8, 0, 1, 2, 3, 4, 5};
    CHECK(relabel(ta, perm) == tb);

    // swapping two same-colour pairs changes nothing at all
    PatternSpec c;
    c.r = 4;
    c.components = {PatternSpec::Pair{0, 1, 3}, PatternSpec::Pair{2, 3, 3}};
    PatternSpec d;
    d.r = 4;
    d.components = {PatternSpec::Pair{2, 3, 3}, PatternSpec::Pair{0, 1, 3}};
    CHECK(pattern_template(c, 8) == pattern_template(d, 8));
}

TEST_CASE("pattern JSON round-trip") {
    for (int r = 1; r <= 5; ++r)
        for (const auto& spec : enumerate_patterns(r)) {
            PatternSpec back = pattern_from_json(pattern_to_json(spec));
            CHECK(back.r == spec.r);
            REQUIRE(back.components.size() == spec.components.size());
            CHECK(pattern_template(back, 2 * r) == pattern_template(spec, 2 * r));
        }

    CHECK_THROWS_AS(pattern_from_json(json::parse(R"({"components": []})")), std::domain_error);
    CHECK_THROWS_AS(
        pattern_from_json(json::parse(R"({"r": 1, "components": [{"type": "blob"}]})")),
        std::domain_error);
}
