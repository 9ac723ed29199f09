#include "doctest.h"

#include "datamata/petrinet.hpp"
#include "datamata/wsts.hpp"
#include "generators.hpp"

#include <deque>
#include <random>

using namespace datamata;
using namespace testgen;

namespace {

/// Produce into p1; move p1 to p2; initial {p1:1}; cover {p2:2}.
PetriNet two_place_net()
{
    PetriNet net;
    net.places = {"p1", "p2"};
    net.transitions.push_back(PetriTransition{"t1", {}, {{"p1", 1}}, {}});
    net.transitions.push_back(
        PetriTransition{"t2", {{"p1", 1}}, {{"p2", 1}}, {}});
    net.initial = {{"p1", 1}};
    net.query = QueryKind::coverability;
    net.target = {{"p2", 2}};
    return net;
}

/// Net-level oracle: BFS over markings, each place capped.
bool net_cover_oracle(const PetriNet& net, std::uint32_t cap)
{
    auto covered = [&](const Marking& m) {
        for (auto& [p, n] : net.target) {
            auto it = m.find(p);
            if ((it == m.end() ? 0 : it->second) < n)
                return false;
        }
        return true;
    };
    std::set<Marking> seen{net.initial};
    std::deque<Marking> frontier{net.initial};
    while (!frontier.empty()) {
        Marking m = frontier.front();
        frontier.pop_front();
        if (covered(m))
            return true;
        for (const PetriTransition& t : net.transitions) {
            if (!fire_enabled(net, m, t))
                continue;
            Marking next = fire(net, m, t);
            for (auto& [p, n] : next)
                n = std::min(n, cap);
            std::erase_if(next, [](auto& kv) { return kv.second == 0; });
            if (seen.insert(next).second)
                frontier.push_back(next);
        }
    }
    return false;
}

/// Exact bounded reachability on markings (for strong encodings).
bool net_reach_oracle(const PetriNet& net, unsigned max_steps)
{
    std::set<Marking> seen{net.initial};
    std::deque<std::pair<Marking, unsigned>> frontier{{net.initial, 0}};
    while (!frontier.empty()) {
        auto [m, steps] = frontier.front();
        frontier.pop_front();
        if (m == net.target)
            return true;
        if (steps >= max_steps)
            continue;
        for (const PetriTransition& t : net.transitions) {
            if (!fire_enabled(net, m, t))
                continue;
            Marking next = fire(net, m, t);
            if (seen.insert(next).second)
                frontier.emplace_back(next, steps + 1);
        }
    }
    return false;
}

PetriNet random_net(std::mt19937& rng, bool allow_resets,
                    unsigned max_places = 3, unsigned max_count = 2)
{
    PetriNet net;
    unsigned n_places = 1 + rng() % max_places;
    net.places = make_names("p", n_places);
    unsigned n_trans = 1 + rng() % 3;
    for (unsigned i = 0; i < n_trans; ++i) {
        PetriTransition t;
        t.name = "t" + std::to_string(i);
        for (const std::string& p : net.places) {
            if (rng() % 3 == 0)
                t.inputs[p] = 1 + rng() % max_count;
            if (rng() % 3 == 0)
                t.outputs[p] = 1 + rng() % max_count;
            if (allow_resets && rng() % 5 == 0)
                t.resets.insert(p);
        }
        net.transitions.push_back(std::move(t));
    }
    for (const std::string& p : net.places)
        if (rng() % 2 == 0)
            net.initial[p] = 1 + rng() % max_count;
    for (const std::string& p : net.places)
        if (rng() % 3 == 0)
            net.target[p] = 1 + rng() % max_count;
    if (net.target.empty())
        net.target[net.places[0]] = 1;
    return net;
}

} // namespace

TEST_CASE("fire applies inputs, resets and outputs in order")
{
    PetriNet net = two_place_net();
    Marking m{{"p1", 1}};
    Marking after_t1 = fire(net, m, net.transitions[0]);
    CHECK(after_t1 == Marking{{"p1", 2}});
    Marking after_t2 = fire(net, m, net.transitions[1]);
    CHECK(after_t2 == Marking{{"p2", 1}});

    PetriTransition reset{"r", {}, {{"p1", 1}}, {"p2"}};
    // reset of an empty place is a no-op reset
    CHECK(fire(net, m, reset) == Marking{{"p1", 2}});
    // outputs to a reset place land after the reset
    PetriTransition reset_out{"r2", {}, {{"p2", 2}}, {"p2"}};
    CHECK(fire(net, Marking{{"p2", 5}}, reset_out) == Marking{{"p2", 2}});

    CHECK_THROWS_AS(fire(net, Marking{}, net.transitions[1]),
                    std::invalid_argument);
}

TEST_CASE("the two-place query encodes to the expected 8-state machine")
{
    PetriNet net = two_place_net();
    net.query = QueryKind::reachability;
    Cma enc = encode_reachability_cma(net);
    CHECK(enc.states.size() == 8);
    CHECK(cma_isomorphic(enc, two_place_query_cma(false)));

    net.query = QueryKind::coverability;
    Cma weak = encode_coverability_wcma(net);
    CHECK(weak.is_weak());
    CHECK(cma_isomorphic(weak, two_place_query_cma(true)));
}

TEST_CASE("the encoded machine accepts the hand-built witness word")
{
    PetriNet net = two_place_net();
    net.query = QueryKind::reachability;
    Cma enc = encode_reachability_cma(net);
    DataWord w = two_place_witness_word();
    CHECK(cma_accepts(enc, w));

    auto fired = decode_firing_sequence(net, enc, w);
    REQUIRE(fired == std::vector<std::string>{"t1", "t2", "t2"});
    Marking m = net.initial;
    for (const std::string& name : fired)
        for (const PetriTransition& t : net.transitions)
            if (t.name == name)
                m = fire(net, m, t);
    CHECK(m.at("p2") >= 2);
}

TEST_CASE("witnesses from the emptiness engine decode to firing sequences")
{
    PetriNet net = two_place_net();
    Cma weak = encode_coverability_wcma(net);
    auto witness = wcma_witness_word(weak);
    REQUIRE(witness.has_value());
    auto fired = decode_firing_sequence(net, weak, *witness);
    REQUIRE_FALSE(fired.empty());
    Marking m = net.initial;
    for (const std::string& name : fired)
        for (const PetriTransition& t : net.transitions)
            if (t.name == name)
                m = fire(net, m, t);
    for (auto& [p, n] : net.target)
        CHECK(m[p] >= n);
}

TEST_CASE("no transitions: strong encoding nonempty iff target is initial")
{
    PetriNet net;
    net.places = {"p"};
    net.initial = {{"p", 1}};
    net.query = QueryKind::reachability;
    net.target = {{"p", 1}};
    Cma same = encode_reachability_cma(net);
    CHECK(cma_empty_bounded(same, 6).verdict == BoundedVerdict::nonempty);

    net.query = QueryKind::coverability;
    net.target = {{"p", 2}};
    Cma above = encode_coverability_wcma(net);
    CHECK(wcma_empty(above));
}

TEST_CASE("weak encoding emptiness matches net-level coverability")
{
    std::mt19937 rng(521);
    for (int round = 0; round < 40; ++round) {
        PetriNet net = random_net(rng, false);
        net.query = QueryKind::coverability;
        bool oracle = net_cover_oracle(net, 6);
        CAPTURE(round);
        CHECK(net_cover_oracle(net, 7) == oracle); // cap is stable
        Cma weak = encode_coverability_wcma(net);
        CHECK(wcma_empty(weak) == !oracle);
        // the direct vas route agrees as well
        CHECK(vas_coverable(net_to_vas(net)) == oracle);
    }
}

TEST_CASE("strong encoding bounded search matches bounded reachability")
{
    std::mt19937 rng(523);
    for (int round = 0; round < 25; ++round) {
        PetriNet net = random_net(rng, false);
        net.query = QueryKind::reachability;
        bool oracle = net_reach_oracle(net, 5);
        Cma enc = encode_reachability_cma(net);
        BoundedEmptinessResult res = cma_empty_bounded(enc, 24);
        CAPTURE(round);
        if (oracle)
            CHECK(res.verdict == BoundedVerdict::nonempty);
        if (res.verdict == BoundedVerdict::nonempty) {
            // replay the decoded sequence and compare markings
            auto fired = decode_firing_sequence(net, enc, *res.witness);
            Marking m = net.initial;
            for (const std::string& name : fired)
                for (const PetriTransition& t : net.transitions)
                    if (t.name == name)
                        m = fire(net, m, t);
            CHECK(m == net.target);
        }
    }
}

TEST_CASE("nested and flat coverability encoders agree on reset-free nets")
{
    std::mt19937 rng(541);
    for (int round = 0; round < 10; ++round) {
        PetriNet net = random_net(rng, false, 2, 1);
        net.query = QueryKind::coverability;
        bool flat_empty = wcma_empty(encode_coverability_wcma(net));
        Ndcma nested = encode_reset_coverability_weak_ndcma(net);
        CAPTURE(round);
        CHECK(ndcma_weak_empty(nested).empty == flat_empty);
    }
}

TEST_CASE("reset coverability: ignoring the reset keeps the target")
{
    // two-place net plus a reset on p2 that only feeds a side place
    PetriNet net = two_place_net();
    net.places.push_back("g");
    net.transitions.push_back(
        PetriTransition{"t3", {}, {{"g", 1}}, {"p2"}});
    net.query = QueryKind::coverability;
    Ndcma weak = encode_reset_coverability_weak_ndcma(net);
    WstsEmptinessResult r = ndcma_weak_empty(weak);
    CHECK_FALSE(r.empty);
    CHECK(replay_wsts_certificate(weak, r.certificate));
}

TEST_CASE("reset coverability: a forced reset starves the target")
{
    // p never refills: the only transition resets p and feeds g, so
    // covering both p and g is impossible
    PetriNet net;
    net.places = {"p", "g"};
    net.transitions.push_back(PetriTransition{"t", {}, {{"g", 1}}, {"p"}});
    net.initial = {{"p", 1}};
    net.query = QueryKind::coverability;
    net.target = {{"p", 1}, {"g", 1}};
    Ndcma weak = encode_reset_coverability_weak_ndcma(net);
    CHECK(ndcma_weak_empty(weak).empty);

    // dropping the g requirement makes it coverable again
    net.target = {{"p", 1}};
    Ndcma weak2 = encode_reset_coverability_weak_ndcma(net);
    CHECK_FALSE(ndcma_weak_empty(weak2).empty);
}

TEST_CASE("strong reset reachability through bounded nested search")
{
    // reach exactly {g:1}: fire t once (resetting p)
    PetriNet net;
    net.places = {"p", "g"};
    net.transitions.push_back(PetriTransition{"t", {}, {{"g", 1}}, {"p"}});
    net.initial = {{"p", 1}};
    net.query = QueryKind::reachability;
    net.target = {{"g", 1}};
    REQUIRE(net_reach_oracle(net, 3));
    Ndcma enc = encode_reset_reachability_ndcma(net);
    NdcmaBoundedResult res = ndcma_empty_bounded(enc, 12);
    CHECK(res.verdict == NdcmaBoundedResult::Verdict::nonempty);

    // reaching {p:1, g:1} exactly is impossible: p dies with the reset
    net.target = {{"p", 1}, {"g", 1}};
    REQUIRE_FALSE(net_reach_oracle(net, 6));
    Ndcma enc2 = encode_reset_reachability_ndcma(net);
    NdcmaBoundedResult res2 = ndcma_empty_bounded(enc2, 12);
    CHECK(res2.verdict != NdcmaBoundedResult::Verdict::nonempty);
}

TEST_CASE("random reset nets: weak nested encoder matches the net oracle")
{
    std::mt19937 rng(547);
    for (int round = 0; round < 10; ++round) {
        PetriNet net = random_net(rng, true, 2, 1);
        net.query = QueryKind::coverability;
        bool oracle = net_cover_oracle(net, 5);
        CAPTURE(round);
        CHECK(net_cover_oracle(net, 6) == oracle);
        Ndcma weak = encode_reset_coverability_weak_ndcma(net);
        CHECK(ndcma_weak_empty(weak).empty == !oracle);
    }
}
