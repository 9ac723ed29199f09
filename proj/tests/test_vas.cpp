#include "doctest.h"

#include "datamata/vas.hpp"
#include "generators.hpp"

#include <deque>
#include <random>
#include <set>

using namespace datamata;
using namespace testgen;

namespace {

/// Independent oracle: forward BFS with every counter capped. A cap that
/// exceeds every constant reachable in the instance makes this exact.
bool forward_cover_oracle(const VasInstance& v, std::uint32_t cap)
{
    auto covered = [&](State c, const Valuation& val) {
        for (const VasTarget& t : v.targets) {
            if (t.control != c)
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < val.size(); ++i)
                if (val[i] < t.minimum[i])
                    ok = false;
            if (ok)
                return true;
        }
        return false;
    };

    std::set<std::pair<State, Valuation>> seen;
    std::deque<std::pair<State, Valuation>> frontier;
    frontier.emplace_back(v.initial_control, v.initial_valuation);
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        auto [c, val] = frontier.front();
        frontier.pop_front();
        if (covered(c, val))
            return true;
        for (const VasRule& r : v.rules) {
            if (!vas_rule_enabled(r, c, val))
                continue;
            Valuation next = vas_apply(r, val);
            for (auto& x : next)
                x = std::min(x, cap);
            if (seen.emplace(r.to, next).second)
                frontier.emplace_back(r.to, next);
        }
    }
    return false;
}

VasInstance random_vas(std::mt19937& rng)
{
    VasInstance v;
    unsigned n_counters = 1 + rng() % 4;
    unsigned n_controls = 1 + rng() % 3;
    v.counters = make_names("c", n_counters);
    v.controls = make_names("p", n_controls);
    v.initial_control = rng() % n_controls;
    v.initial_valuation.assign(n_counters, 0);
    for (auto& x : v.initial_valuation)
        x = rng() % 3;
    unsigned n_rules = 1 + rng() % 6;
    for (unsigned i = 0; i < n_rules; ++i) {
        VasRule r;
        r.from = rng() % n_controls;
        r.to = rng() % n_controls;
        r.guard.assign(n_counters, 0);
        r.effect.assign(n_counters, 0);
        for (auto& x : r.guard)
            x = rng() % 3;
        for (auto& x : r.effect)
            x = rng() % 3;
        v.rules.push_back(std::move(r));
    }
    VasTarget t;
    t.control = rng() % n_controls;
    t.minimum.assign(n_counters, 0);
    for (auto& x : t.minimum)
        x = rng() % 3;
    v.targets.push_back(std::move(t));
    return v;
}

/// The two-place net as a plain VAS: counters p1, p2; t1 produces into p1,
/// t2 moves p1 to p2; initial {p1:1}; cover {p2:2}.
VasInstance two_place_vas()
{
    VasInstance v;
    v.counters = {"p1", "p2"};
    v.controls = {"run"};
    v.initial_control = 0;
    v.initial_valuation = {1, 0};
    v.rules.push_back(VasRule{0, {0, 0}, {1, 0}, 0, "t1"});
    v.rules.push_back(VasRule{0, {1, 0}, {0, 1}, 0, "t2"});
    v.targets.push_back(VasTarget{0, {0, 2}});
    return v;
}

} // namespace

TEST_CASE("a target equal to the initial configuration is coverable")
{
    VasInstance v;
    v.counters = {"c"};
    v.controls = {"p"};
    v.initial_valuation = {1};
    v.targets.push_back(VasTarget{0, {1}});
    CHECK(vas_coverable(v));
}

TEST_CASE("no rules and a target above the initial is not coverable")
{
    VasInstance v;
    v.counters = {"c"};
    v.controls = {"p"};
    v.initial_valuation = {1};
    v.targets.push_back(VasTarget{0, {2}});
    CHECK_FALSE(vas_coverable(v));
}

TEST_CASE("two-place net query is coverable with a replayable certificate")
{
    VasInstance v = two_place_vas();
    CoverResult res = vas_cover(v);
    REQUIRE(res.coverable);
    REQUIRE(res.certificate.has_value());
    auto reached = replay_certificate(v, *res.certificate);
    REQUIRE(reached.has_value());
    CHECK(reached->second[1] >= 2);
}

TEST_CASE("backward saturation agrees with the forward oracle")
{
    std::mt19937 rng(101);
    for (int round = 0; round < 200; ++round) {
        VasInstance v = random_vas(rng);
        CAPTURE(round);
        CHECK(vas_coverable(v) == forward_cover_oracle(v, 8));
    }
}

TEST_CASE("certificates replay forward onto the target")
{
    std::mt19937 rng(103);
    int replayed = 0;
    for (int round = 0; round < 120; ++round) {
        VasInstance v = random_vas(rng);
        CoverResult res = vas_cover(v);
        if (!res.coverable)
            continue;
        ++replayed;
        auto reached = replay_certificate(v, *res.certificate);
        REQUIRE(reached.has_value());
        bool covers = false;
        for (const VasTarget& t : v.targets) {
            if (t.control != reached->first)
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < t.minimum.size(); ++i)
                if (reached->second[i] < t.minimum[i])
                    ok = false;
            covers |= ok;
        }
        CHECK(covers);
    }
    CHECK(replayed > 10);
}

TEST_CASE("the saturation basis is an antichain")
{
    std::mt19937 rng(127);
    for (int round = 0; round < 60; ++round) {
        VasInstance v = random_vas(rng);
        CoverResult r = vas_cover(v);
        for (std::size_t i = 0; i < r.basis.size(); ++i)
            for (std::size_t j = 0; j < r.basis.size(); ++j) {
                if (i == j || r.basis[i].first != r.basis[j].first)
                    continue;
                bool leq = true;
                for (std::size_t c = 0; c < v.counters.size(); ++c)
                    if (r.basis[i].second[c] > r.basis[j].second[c])
                        leq = false;
                CAPTURE(round);
                CHECK_FALSE(leq); // distinct same-control elements never
                                  // dominate each other
            }
    }
}

TEST_CASE("wcma_to_vas: trivially nonempty and trivially empty machines")
{
    Cma a;
    a.states = {"q0", "q1"};
    a.alphabet = {"a"};
    a.initial = 0;
    a.locally_accepting = {0, 1};
    a.globally_accepting = {0};
    CHECK(vas_coverable(wcma_to_vas(a)));

    a.globally_accepting = {1}; // unreachable: no transitions at all
    CHECK_FALSE(vas_coverable(wcma_to_vas(a)));
}

TEST_CASE("weak two-place query machine is nonempty via coverability")
{
    Cma weak = two_place_query_cma(true);
    CHECK_FALSE(wcma_empty(weak));
    auto witness = wcma_witness_word(weak);
    REQUIRE(witness.has_value());
    CHECK(cma_accepts(weak, *witness));
}

TEST_CASE("word search nonemptiness implies coverability")
{
    std::mt19937 rng(107);
    for (int round = 0; round < 60; ++round) {
        Cma a = random_cma(rng, 3, 2, true, false);
        bool found = false;
        for (int i = 0; i < 40 && !found; ++i)
            found = cma_accepts(a, random_word(rng, a.alphabet, 6, 3));
        if (found) {
            CAPTURE(round);
            CHECK_FALSE(wcma_empty(a));
        }
    }
}

TEST_CASE("wcma emptiness verdict equals witness-search verdict")
{
    std::mt19937 rng(109);
    for (int round = 0; round < 50; ++round) {
        Cma a = random_cma(rng, 3, 2, true, true);
        bool empty = wcma_empty(a);
        auto witness = wcma_witness_word(a);
        CHECK(empty == !witness.has_value());
        if (witness)
            CHECK(cma_accepts(a, *witness));
    }
}

TEST_CASE("bounded emptiness finds the two-place witness")
{
    Cma a = two_place_query_cma(false);
    BoundedEmptinessResult res = cma_empty_bounded(a, 10);
    REQUIRE(res.verdict == BoundedVerdict::nonempty);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->entries.size() == 8);
    CHECK(cma_accepts(a, *res.witness));
}

TEST_CASE("bounded emptiness reports empty_up_to_bound when F_G unreachable")
{
    Cma a;
    a.states = {"q0", "q1"};
    a.alphabet = {"a"};
    a.initial = 0;
    a.locally_accepting = {0, 1};
    a.globally_accepting = {1};
    a.add_transition(0, "a", std::nullopt, 0);
    for (unsigned bound : {1u, 5u, 12u}) {
        BoundedEmptinessResult res = cma_empty_bounded(a, bound);
        CHECK(res.verdict == BoundedVerdict::empty_up_to_bound);
    }
}

TEST_CASE("bounded nonemptiness on weak machines implies coverability")
{
    std::mt19937 rng(113);
    for (int round = 0; round < 40; ++round) {
        Cma a = random_cma(rng, 3, 2, true, false);
        BoundedEmptinessResult res = cma_empty_bounded(a, 6);
        if (res.verdict == BoundedVerdict::nonempty) {
            CHECK_FALSE(wcma_empty(a));
            CHECK(cma_accepts(a, *res.witness));
        }
    }
}
