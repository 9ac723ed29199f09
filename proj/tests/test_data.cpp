#include "doctest.h"

#include "datamata/data.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <thread>

using namespace datamata;

TEST_CASE("fresh values are distinct and levelled")
{
    auto u = DataUniverse::make(3);
    DataValue d1 = u->fresh();
    CHECK(u->level(d1) == 1);
    CHECK_FALSE(u->pred(d1).has_value());
    CHECK(u->pred_or_root(d1) == u->root());

    DataValue c1 = u->fresh_child(d1);
    DataValue c2 = u->fresh_child(d1);
    CHECK(c1 != c2);
    CHECK(u->level(c1) == 2);
    CHECK(u->pred(c1) == d1);

    DataValue g = u->fresh_child(c1);
    CHECK(u->level(g) == 3);
    CHECK_THROWS_AS(u->fresh_child(g), std::invalid_argument);

    auto chain = u->ancestors(g);
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == d1);
    CHECK(chain[1] == c1);
    CHECK(chain[2] == g);
}

TEST_CASE("flat universes reject children")
{
    auto u = DataUniverse::make(1);
    DataValue d = u->fresh();
    CHECK_THROWS_AS(u->fresh_child(d), std::invalid_argument);
}

TEST_CASE("str projection commutes with concatenation")
{
    auto u = DataUniverse::make(1);
    DataValue d1 = u->fresh(), d2 = u->fresh();
    DataWord w1{{{"a", d1}, {"b", d2}}, {"a", "b"}, u};
    DataWord w2{{{"b", d1}}, {"a", "b"}, u};
    auto lhs = concat(w1, w2).str();
    auto rhs = w1.str();
    auto tail = w2.str();
    rhs.insert(rhs.end(), tail.begin(), tail.end());
    CHECK(lhs == rhs);
}

TEST_CASE("canonical_tree on the empty function is a lone root")
{
    auto u = DataUniverse::make(2);
    ClassMemoryFunction f;
    LabelledTree t = canonical_tree(f, *u);
    CHECK(t.node_count() == 1);
}

TEST_CASE("canonical_tree builds sibling and path shapes")
{
    auto u = DataUniverse::make(2);
    DataValue d1 = u->fresh(), d2 = u->fresh();

    ClassMemoryFunction siblings;
    siblings.assign(d1, 5);
    siblings.assign(d2, 5);
    LabelledTree t = canonical_tree(siblings, *u);
    CHECK(t.node_count() == 3);
    CHECK(t.children(0).size() == 2);
    CHECK(t.height() == 1);

    // hand-built expectation: root with two 5-children
    LabelledTree expect;
    expect.add_node(0, 5);
    expect.add_node(0, 5);
    CHECK(t == expect);

    ClassMemoryFunction path;
    path.assign(d1, 1);
    path.assign(u->fresh_child(d1), 2);
    LabelledTree p = canonical_tree(path, *u);
    CHECK(p.node_count() == 3);
    CHECK(p.height() == 2);
    LabelledTree expect_path;
    int mid = expect_path.add_node(0, 1);
    expect_path.add_node(mid, 2);
    CHECK(p == expect_path);
    CHECK_FALSE(p == expect);
}

TEST_CASE("canonical_tree rejects a value with an unmapped parent")
{
    auto u = DataUniverse::make(2);
    DataValue d = u->fresh();
    DataValue c = u->fresh_child(d);
    ClassMemoryFunction f;
    f.assign(c, 3);
    CHECK_THROWS_AS(canonical_tree(f, *u), std::invalid_argument);
}

TEST_CASE("canonical_tree is automorphism invariant")
{
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        auto u = DataUniverse::make(2);
        std::vector<DataValue> level1;
        for (int i = 0; i < 4; ++i)
            level1.push_back(u->fresh());
        std::vector<std::pair<DataValue, State>> assignments;
        for (DataValue d : level1) {
            State q = rng() % 3;
            assignments.emplace_back(d, q);
            for (int k = 0; k < static_cast<int>(rng() % 3); ++k)
                assignments.emplace_back(u->fresh_child(d), rng() % 3);
        }
        ClassMemoryFunction f;
        for (auto& [d, q] : assignments)
            f.assign(d, q);

        // rebuild with the level-1 subtrees permuted
        auto u2 = DataUniverse::make(2);
        std::vector<std::size_t> order(level1.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        ClassMemoryFunction g;
        for (std::size_t pos : order) {
            DataValue orig = level1[pos];
            DataValue copy = u2->fresh();
            for (auto& [d, q] : assignments) {
                if (d == orig)
                    g.assign(copy, q);
                else if (u->pred(d) == orig)
                    g.assign(u2->fresh_child(copy), q);
            }
        }
        CHECK(canonical_tree(f, *u) == canonical_tree(g, *u2));
    }
}

TEST_CASE("concurrent fresh-value generation yields distinct values")
{
    auto u = DataUniverse::make(2);
    std::vector<std::thread> workers;
    std::vector<std::vector<DataValue>> got(4);
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&, t] {
            for (int i = 0; i < 200; ++i)
                got[static_cast<std::size_t>(t)].push_back(u->fresh());
        });
    for (auto& w : workers)
        w.join();
    std::set<DataValue> all;
    for (auto& batch : got)
        for (DataValue d : batch)
            all.insert(d);
    CHECK(all.size() == 800);
}

TEST_CASE("word isomorphism tracks the equality pattern")
{
    auto u = DataUniverse::make(1);
    DataValue d1 = u->fresh(), d2 = u->fresh(), d3 = u->fresh();
    DataWord w1{{{"a", d1}, {"a", d2}, {"a", d1}}, {"a"}, u};
    DataWord w2{{{"a", d2}, {"a", d3}, {"a", d2}}, {"a"}, u};
    DataWord w3{{{"a", d1}, {"a", d2}, {"a", d2}}, {"a"}, u};
    CHECK(words_isomorphic(w1, w2));
    CHECK_FALSE(words_isomorphic(w1, w3));
}
