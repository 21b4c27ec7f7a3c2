#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gallai/constructions.hpp"
#include "gallai/json_io.hpp"
#include "gallai/naive.hpp"
#include "gallai/template.hpp"
#include "test_util.hpp"

using namespace gallai;
using testutil::density_for;
using testutil::random_template;

TEST_CASE("empty templates") {
    CHECK(is_gallai(empty_template(0)));
    CHECK(empty_template(0).vertex_count() == 0);

    DegreeProfile p = degree_profile(empty_template(5));
    for (int c = 0; c < 3; ++c) {
        CHECK(p.colour[c].min_degree == 0);
        CHECK(p.colour[c].max_degree == 0);
        CHECK(p.colour[c].is_empty);
        CHECK(!p.colour[c].min_positive_degree.has_value());
    }
    CHECK(count_rainbow_triangles(empty_template(3)) == 0);
    CHECK(is_gallai(empty_template(10)));
    CHECK(!find_rainbow_triangle_naive(empty_template(6)).has_value());
    CHECK_THROWS_AS(empty_template(-1), std::domain_error);
}

TEST_CASE("set_pair membership") {
    ColouringTemplate t = set_pair(empty_template(2), 0, 1, 0b111);
    CHECK(t.colours_of(0, 1) == 0b111);  // rainbow edge: in all three classes
    t = set_pair(t, 0, 1, 0);
    CHECK(t.colours_of(0, 1) == 0);
    t = set_pair(t, 0, 1, colour_bit(2) | colour_bit(3));
    CHECK(t.has(2, 0, 1));
    CHECK(t.has(3, 0, 1));
    CHECK(!t.has(1, 0, 1));

    CHECK_THROWS_AS(set_pair(t, 0, 0, 0b1), std::domain_error);
    CHECK_THROWS_AS(set_pair(t, 0, 5, 0b1), std::domain_error);
}

TEST_CASE("degree profile on Turán templates") {
    DegreeProfile p = degree_profile(turan_template(2, 6));
    CHECK(p.colour[0].min_degree == 3);
    CHECK(p.colour[0].max_degree == 3);
    CHECK(p.colour[1].min_degree == 2);
    CHECK(p.colour[2].min_degree == 2);

    p = degree_profile(turan_template(3, 12));
    CHECK(p.colour[0].min_degree == 8);
    CHECK(p.colour[1].min_degree == 3);
    CHECK(p.colour[2].min_degree == 3);

    p = degree_profile(empty_template(4));
    for (const auto& mp : p.intersection_min_positive) CHECK(!mp.has_value());
}

TEST_CASE("rainbow triangle witnesses") {
    ColouringTemplate t = empty_template(3);
    t.set_pair_inplace(0, 1, colour_bit(1));
    t.set_pair_inplace(0, 2, colour_bit(2));
    t.set_pair_inplace(1, 2, colour_bit(3));
    auto w = find_rainbow_triangle(t);
    REQUIRE(w.has_value());
    CHECK(*w == RainbowWitness{0, 1, 2, 1, 2, 3});
    CHECK(find_rainbow_triangle_naive(t) == w);
    CHECK(count_rainbow_triangles(t) == 1);

    for (int n = 1; n <= 12; ++n)
        for (int r = 1; r <= n; ++r)
            CHECK(!find_rainbow_triangle(turan_template(r, n)).has_value());

    // all pairs in all colours: the tie-break forces assignment (1,2,3)
    ColouringTemplate k3 = empty_template(3);
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) k3.set_pair_inplace(u, v, 0b111);
    auto wk = find_rainbow_triangle(k3);
    REQUIRE(wk.has_value());
    CHECK(*wk == RainbowWitness{0, 1, 2, 1, 2, 3});
    CHECK(!is_gallai(k3));
    CHECK(count_rainbow_triangles(k3) == 1);

    CHECK(count_rainbow_triangles(turan_template(2, 8)) == 0);

    ColouringTemplate t4 = empty_template(4);
    t4.set_pair_inplace(0, 1, colour_bit(1));
    t4.set_pair_inplace(0, 2, colour_bit(2));
    t4.set_pair_inplace(1, 2, colour_bit(3));
    CHECK(count_rainbow_triangles(t4) == 1);
}

TEST_CASE("intersection graphs") {
    ColouringTemplate t = turan_template(2, 6);
    CHECK(intersection_graph(t, 2, 3) == colour_graph(t, 2));  // T₂ = T₃
    CHECK(intersection_graph(t, 1, 2).is_empty());

    ColouringTemplate k3 = empty_template(3);
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) k3.set_pair_inplace(u, v, 0b111);
    Graph g = intersection_graph(k3, 1, 2);
    CHECK(g.edge_count() == 3);

    CHECK_THROWS_AS(intersection_graph(t, 2, 2), std::domain_error);
}

TEST_CASE("relabel") {
    ColouringTemplate t = turan_template(2, 6);
    std::vector<int> identity = {0, 1, 2, 3, 4, 5};
    CHECK(relabel(t, identity) == t);

    std::vector<int> perm = {3, 5, 0, 2, 4, 1};
    ColouringTemplate rt = relabel(t, perm);
    DegreeProfile a = degree_profile(t), b = degree_profile(rt);
    for (int c = 0; c < 3; ++c) {
        CHECK(a.colour[c].min_degree == b.colour[c].min_degree);
        CHECK(a.colour[c].max_degree == b.colour[c].max_degree);
    }
    CHECK(is_gallai(rt) == is_gallai(t));

    CHECK_THROWS_AS(relabel(t, std::vector<int>{0, 0, 1, 2, 3, 4}), std::domain_error);
    CHECK_THROWS_AS(relabel(t, std::vector<int>{0, 1}), std::domain_error);
}

TEST_CASE("oracle equivalence on random templates") {
    std::mt19937_64 rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        int n = 2 + static_cast<int>(rng() % 7);  // up to 8
        ColouringTemplate t = random_template(rng, n, density_for(i));
        auto fast = find_rainbow_triangle(t);
        auto slow = find_rainbow_triangle_naive(t);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(*fast == *slow);
            CHECK(witness_is_valid(t, *fast));
        }
        CHECK(count_rainbow_triangles(t) == count_rainbow_triangles_naive(t));
    }
}

TEST_CASE("isomorphism invariance of scalar queries") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        int n = 2 + static_cast<int>(rng() % 6);
        ColouringTemplate t = random_template(rng, n, density_for(i));
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) perm[static_cast<std::size_t>(v)] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        ColouringTemplate rt = relabel(t, perm);
        CHECK(is_gallai(t) == is_gallai(rt));
        CHECK(count_rainbow_triangles(t) == count_rainbow_triangles(rt));
        DegreeProfile a = degree_profile(t), b = degree_profile(rt);
        for (int c = 0; c < 3; ++c) {
            CHECK(a.colour[c].min_degree == b.colour[c].min_degree);
            CHECK(a.colour[c].max_degree == b.colour[c].max_degree);
            CHECK(a.colour[c].min_positive_degree == b.colour[c].min_positive_degree);
            CHECK(a.colour[c].is_empty == b.colour[c].is_empty);
        }
        CHECK(a.intersection_min_positive == b.intersection_min_positive);
    }
}

TEST_CASE("monotonicity: removing colours never creates a rainbow triangle") {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 300; ++i) {
        int n = 3 + static_cast<int>(rng() % 5);
        ColouringTemplate t = random_template(rng, n, 0.6);
        int u = static_cast<int>(rng() % static_cast<unsigned>(n));
        int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (u == v) continue;
        unsigned m = t.colours_of(std::min(u, v), std::max(u, v));
        if (!m) continue;
        // drop one colour from the pair
        int c = 1;
        while (!(m & colour_bit(c))) ++c;
        ColouringTemplate smaller = set_pair(t, std::min(u, v), std::max(u, v), m & ~colour_bit(c));
        CHECK(count_rainbow_triangles(smaller) <= count_rainbow_triangles(t));
        if (is_gallai(t)) CHECK(is_gallai(smaller));
    }
}

TEST_CASE("serialization round-trip is bit-exact") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        int n = static_cast<int>(rng() % 9);
        ColouringTemplate t = random_template(rng, n, density_for(i));
        json j = template_to_json(t);
        CHECK(template_from_json(j) == t);
    }

    // parser accepts unordered, reversed, duplicated entries
    json j = json::parse(R"({"n": 4, "edges": {"1": [[2,1],[1,2],[0,3]], "2": [], "3": [[3,0]]}})");
    ColouringTemplate t = template_from_json(j);
    CHECK(t.colours_of(1, 2) == colour_bit(1));
    CHECK(t.colours_of(0, 3) == (colour_bit(1) | colour_bit(3)));
    json canon = template_to_json(t);
    CHECK(canon["edges"]["1"] == json::parse("[[0,3],[1,2]]"));

    CHECK_THROWS_AS(template_from_json(json::parse(R"({"n": 2, "edges": {"4": [[0,1]]}})")),
                    std::domain_error);
    CHECK_THROWS_AS(template_from_json(json::parse(R"({"n": 2, "edges": {"1": [[0,2]]}})")),
                    std::domain_error);
    CHECK_THROWS_AS(template_from_json(json::parse(R"({"edges": {}})")), std::domain_error);
}

TEST_CASE("min positive degree consistency") {
    std::mt19937_64 rng(123);
    for (int i = 0; i < 200; ++i) {
        int n = 1 + static_cast<int>(rng() % 7);
        ColouringTemplate t = random_template(rng, n, density_for(i));
        DegreeProfile p = degree_profile(t);
        for (int c = 1; c <= 3; ++c) {
            bool has_edges = !colour_graph(t, c).is_empty();
            CHECK(p.colour[c - 1].min_positive_degree.has_value() == has_edges);
            CHECK(p.colour[c - 1].is_empty == !has_edges);
            if (p.colour[c - 1].min_positive_degree)
                CHECK(*p.colour[c - 1].min_positive_degree >=
                      std::max(p.colour[c - 1].min_degree, 1));
        }
        for (int a = 1; a <= 3; ++a)
            for (int b = a + 1; b <= 3; ++b) {
                bool nonempty = !intersection_graph(t, a, b).is_empty();
                CHECK(p.intersection_min_positive[DegreeProfile::pair_slot(a, b)].has_value() ==
                      nonempty);
            }
    }
}
