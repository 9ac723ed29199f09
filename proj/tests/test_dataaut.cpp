#include "doctest.h"

#include "datamata/dataaut.hpp"
#include "generators.hpp"

#include <random>

using namespace datamata;
using namespace testgen;

namespace {

Transducer identity_transducer(std::vector<std::string> alphabet)
{
    Transducer t;
    t.states = {"p0"};
    t.input_alphabet = alphabet;
    t.output_alphabet = alphabet;
    t.initial = 0;
    t.accepting = {0};
    for (const std::string& a : alphabet)
        t.rules.push_back(Transducer::Rule{0, a, a, 0});
    return t;
}

Nfa universal_nfa(std::vector<std::string> alphabet)
{
    Nfa b;
    b.states = {"c0"};
    b.alphabet = alphabet;
    b.initial = 0;
    b.accepting = {0};
    for (const std::string& a : alphabet)
        b.rules.push_back(Nfa::Rule{0, a, 0});
    return b;
}

/// Class automaton accepting words without two consecutive equal letters.
Nfa no_repeat_nfa()
{
    Nfa b;
    b.states = {"c0", "cx", "cy"};
    b.alphabet = {"x", "y"};
    b.initial = 0;
    b.accepting = {0, 1, 2};
    b.rules = {{0, "x", 1}, {0, "y", 2}, {1, "y", 2}, {2, "x", 1}};
    return b;
}

} // namespace

TEST_CASE("empty word accepted iff the transducer accepts epsilon")
{
    Da d{identity_transducer({"a"}), universal_nfa({"a"})};
    DataWord w;
    w.alphabet = {"a"};
    w.universe = DataUniverse::make(1);
    CHECK(da_accepts(d, w));
    d.base.accepting.clear();
    CHECK_FALSE(da_accepts(d, w));
}

TEST_CASE("vacuous class automaton reduces to transducer acceptance")
{
    // transducer accepts words of even length
    Transducer t;
    t.states = {"p0", "p1"};
    t.input_alphabet = {"a"};
    t.output_alphabet = {"x"};
    t.initial = 0;
    t.accepting = {0};
    t.rules = {{0, "a", "x", 1}, {1, "a", "x", 0}};
    Da d{t, universal_nfa({"x"})};

    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        DataWord w = random_word(rng, {"a"}, 6, 3);
        CHECK(da_accepts(d, w) == (w.entries.size() % 2 == 0));
    }
}

TEST_CASE("single class: acceptance matches enumerated transducer runs")
{
    // nondeterministic transducer over one letter emitting x or y
    Transducer t;
    t.states = {"p0"};
    t.input_alphabet = {"a"};
    t.output_alphabet = {"x", "y"};
    t.initial = 0;
    t.accepting = {0};
    t.rules = {{0, "a", "x", 0}, {0, "a", "y", 0}};
    Da d{t, no_repeat_nfa()};

    auto u = DataUniverse::make(1);
    DataValue v = u->fresh();
    DataWord w{{{"a", v}, {"a", v}, {"a", v}}, {"a"}, u};

    // oracle: enumerate all outputs and check the single class by hand
    bool expect = false;
    for (const auto& output : t.run_outputs(w.str()))
        expect |= d.cls.accepts(output);
    CHECK(expect);
    CHECK(da_accepts(d, w) == expect);
}

TEST_CASE("class split matters: shared values constrain outputs")
{
    Da d{identity_transducer({"x", "y"}), no_repeat_nfa()};
    auto u = DataUniverse::make(1);
    DataValue v1 = u->fresh(), v2 = u->fresh();
    // class of v1 sees x,x -> rejected
    DataWord bad{{{"x", v1}, {"y", v2}, {"x", v1}}, {"x", "y"}, u};
    // interleaving with distinct values keeps both classes repeat-free
    DataWord good{{{"x", v1}, {"x", v2}, {"y", v1}}, {"x", "y"}, u};
    CHECK_FALSE(da_accepts(d, bad));
    CHECK(da_accepts(d, good));
}

TEST_CASE("prefix closure: truncating one class never breaks acceptance")
{
    std::mt19937 rng(5);
    Da d{identity_transducer({"x", "y"}), no_repeat_nfa()};
    REQUIRE(d.prefix_closed());
    int accepted = 0;
    for (int round = 0; round < 200; ++round) {
        DataWord w = random_word(rng, {"x", "y"}, 6, 2);
        if (!da_accepts(d, w) || w.entries.empty())
            continue;
        ++accepted;
        // drop a suffix of one class's subsequence: remove the last
        // occurrence of some value
        DataValue victim = w.entries[rng() % w.entries.size()].value;
        DataWord shorter = w;
        for (auto it = shorter.entries.rbegin(); it != shorter.entries.rend();
             ++it)
            if (it->value == victim) {
                shorter.entries.erase(std::next(it).base());
                break;
            }
        CHECK(da_accepts(d, shorter));
    }
    CHECK(accepted > 10);
}

TEST_CASE("nda with one level coincides with da")
{
    Da d{identity_transducer({"x", "y"}), no_repeat_nfa()};
    Nda n{d.base, {d.cls}};

    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        DataWord w = random_word(rng, {"x", "y"}, 5, 3);
        TupleDataWord tw;
        tw.depth = 1;
        tw.alphabet = w.alphabet;
        tw.universe = w.universe;
        for (const auto& e : w.entries)
            tw.entries.push_back({e.letter, {e.value}});
        CHECK(da_accepts(d, w) == nda_accepts(n, tw));
    }
}

TEST_CASE("all positions sharing the full tuple check one subsequence")
{
    Nda n{identity_transducer({"x", "y"}), {no_repeat_nfa(), no_repeat_nfa()}};
    auto u = DataUniverse::make(1);
    DataValue d1 = u->fresh(), d2 = u->fresh();
    TupleDataWord w;
    w.depth = 2;
    w.alphabet = {"x", "y"};
    w.universe = u;
    w.entries = {{"x", {d1, d2}}, {"y", {d1, d2}}, {"x", {d1, d2}}};
    CHECK(nda_accepts(n, w));
    w.entries.push_back({"x", {d1, d2}}); // now x,y,x,x repeats
    CHECK_FALSE(nda_accepts(n, w));
}

TEST_CASE("level-2 class checks see per-prefix subsequences")
{
    Nda n{identity_transducer({"x", "y"}), {universal_nfa({"x", "y"}),
                                            no_repeat_nfa()}};
    auto u = DataUniverse::make(1);
    DataValue d1 = u->fresh(), d2 = u->fresh(), d3 = u->fresh();
    // same level-1 value, two level-2 values: the (d1,d2) class sees x,x
    TupleDataWord bad;
    bad.depth = 2;
    bad.alphabet = {"x", "y"};
    bad.universe = u;
    bad.entries = {{"x", {d1, d2}}, {"x", {d1, d2}}};
    CHECK_FALSE(nda_accepts(n, bad));
    TupleDataWord good = bad;
    good.entries[1].values = {d1, d3};
    CHECK(nda_accepts(n, good));
}
