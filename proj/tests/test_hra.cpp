#include "doctest.h"

#include "datamata/hra.hpp"
#include "generators.hpp"

#include <random>

using namespace datamata;
using namespace testgen;

namespace {

NrHra once_machine()
{
    // type 1, (q0, a, ({}, {1}), q1): every value may be read only fresh
    NrHra a;
    a.type_m = 1;
    a.states = {"q0", "q1"};
    a.alphabet = {"a"};
    a.initial = 0;
    a.accepting = {1};
    a.delta.push_back(NrHraTransition{0, "a", 0, 1u << 0, 1});
    return a;
}

NrHra random_nrhra(std::mt19937& rng)
{
    NrHra a;
    a.type_m = 2;
    unsigned n_states = 2 + rng() % 2;
    a.states = make_names("q", n_states);
    a.alphabet = letters(2);
    a.initial = 0;
    a.accepting.insert(rng() % n_states);
    unsigned n_trans = 3 + rng() % 4;
    for (unsigned i = 0; i < n_trans; ++i) {
        NrHraTransition t;
        t.from = rng() % n_states;
        t.to = rng() % n_states;
        t.letter = a.alphabet[rng() % 2];
        t.required = rng() % 4;
        t.assigned = rng() % 4;
        a.delta.push_back(std::move(t));
    }
    return a;
}

} // namespace

TEST_CASE("empty word accepted iff the initial state is accepting")
{
    NrHra a = once_machine();
    DataWord w;
    w.alphabet = {"a"};
    w.universe = DataUniverse::make(1);
    CHECK_FALSE(nrhra_accepts(a, w));
    a.accepting.insert(0);
    CHECK(nrhra_accepts(a, w));
}

TEST_CASE("a history guard forces freshness")
{
    NrHra a = once_machine();
    a.delta.push_back(NrHraTransition{1, "a", 0, 1u << 0, 1});
    auto u = DataUniverse::make(1);
    DataValue d = u->fresh();
    DataWord once{{{"a", d}}, {"a"}, u};
    DataWord twice{{{"a", d}, {"a", d}}, {"a"}, u};
    CHECK(nrhra_accepts(a, once));
    // the second read sees H^{-1}(d) = {1}, not the required empty set
    CHECK_FALSE(nrhra_accepts(a, twice));
}

TEST_CASE("wcma_to_nrhra: universal one-state machine stays universal")
{
    Cma a;
    a.states = {"q0"};
    a.alphabet = {"a"};
    a.initial = 0;
    a.locally_accepting = {0};
    a.globally_accepting = {0};
    a.add_transition(0, "a", std::nullopt, 0);
    a.add_transition(0, "a", 0, 0);
    NrHra h = wcma_to_nrhra(a);
    CHECK(h.type_m == 1);
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i)
        CHECK(nrhra_accepts(h, random_word(rng, a.alphabet, 6, 3)));
}

TEST_CASE("wcma_to_nrhra: weak two-place query machine accepts the witness")
{
    Cma weak = eliminate_silent(two_place_query_cma(true));
    NrHra h = wcma_to_nrhra(weak);
    CHECK(nrhra_accepts(h, two_place_witness_word()));
}

TEST_CASE("wcma_to_nrhra agrees with the source on random pairs")
{
    std::mt19937 rng(5);
    for (int round = 0; round < 100; ++round) {
        Cma a = eliminate_silent(random_cma(rng, 3, 2, true, true));
        NrHra h = wcma_to_nrhra(a);
        DataWord w = random_word(rng, a.alphabet, 6, 3);
        CAPTURE(round);
        CHECK(cma_accepts(a, w) == nrhra_accepts(h, w));
    }
}

TEST_CASE("nrhra_to_wcma: once-machine accepts exactly one-position words")
{
    NrHra a = once_machine();
    Cma m = nrhra_to_wcma(a);
    CHECK(m.is_weak());
    std::mt19937 rng(7);
    for (int i = 0; i < 30; ++i) {
        DataWord w = random_word(rng, a.alphabet, 4, 2);
        CHECK(cma_accepts(m, w) == (w.entries.size() == 1));
        CHECK(cma_accepts(m, w) == nrhra_accepts(a, w));
    }
}

TEST_CASE("nrhra_to_wcma: empty table accepts epsilon iff q0 accepting")
{
    NrHra a;
    a.type_m = 1;
    a.states = {"q0"};
    a.alphabet = {"a"};
    a.initial = 0;
    Cma m = nrhra_to_wcma(a);
    DataWord w;
    w.alphabet = {"a"};
    w.universe = DataUniverse::make(1);
    CHECK_FALSE(cma_accepts(m, w));
    a.accepting = {0};
    CHECK(cma_accepts(nrhra_to_wcma(a), w));
}

TEST_CASE("nrhra_to_wcma agrees with the source on random pairs")
{
    std::mt19937 rng(11);
    for (int round = 0; round < 100; ++round) {
        NrHra a = random_nrhra(rng);
        Cma m = nrhra_to_wcma(a);
        DataWord w = random_word(rng, a.alphabet, 5, 3);
        CAPTURE(round);
        CHECK(nrhra_accepts(a, w) == cma_accepts(m, w));
    }
}

TEST_CASE("translations preserve determinism")
{
    std::mt19937 rng(13);
    for (int round = 0; round < 20; ++round) {
        Cma a = random_dcw_cma(rng, 3, 2);
        NrHra h = wcma_to_nrhra(a);
        CHECK(h.is_deterministic());
        Cma back = nrhra_to_wcma(h);
        CHECK(back.is_deterministic());
    }
}

TEST_CASE("class memory markers mirror a direct history simulation")
{
    std::mt19937 rng(17);
    for (int round = 0; round < 40; ++round) {
        NrHra a = random_nrhra(rng);
        Cma m = nrhra_to_wcma(a);
        DataWord w = random_word(rng, a.alphabet, 5, 2);
        auto run = cma_find_run(m, w);
        if (!run || run->empty())
            continue;
        // replay the same choices on the nrhra side: the marker component
        // of each memory entry must equal H^{-1}(d)
        // (the marker index is the name suffix after '#')
        const CmaConfiguration& last = run->back().after;
        std::map<DataValue, HistorySet> history;
        std::size_t pos = 0;
        for (const CmaRunStep& step : *run) {
            if (step.silent)
                continue;
            const std::string& name = m.states[step.after.control];
            auto sep = name.find('~');
            REQUIRE(sep != std::string::npos);
            HistorySet y = static_cast<HistorySet>(
                std::stoul(name.substr(sep + 1)));
            history[w.entries[pos].value] = y;
            ++pos;
        }
        for (auto& [d, q] : last.memory.assignments()) {
            const std::string& name = m.states[q];
            HistorySet y = static_cast<HistorySet>(
                std::stoul(name.substr(name.find('~') + 1)));
            CHECK(history.at(d) == y);
        }
    }
}
