#include "datamata/petrinet.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace datamata {

bool PetriNet::has_resets() const
{
    for (const PetriTransition& t : transitions)
        if (!t.resets.empty())
            return true;
    return false;
}

void PetriNet::validate() const
{
    auto check_place = [&](const std::string& p, const char* what) {
        if (std::find(places.begin(), places.end(), p) == places.end())
            throw std::invalid_argument(std::string("net: unknown place '") +
                                        p + "' in " + what);
    };
    for (const PetriTransition& t : transitions) {
        for (auto& [p, n] : t.inputs)
            check_place(p, "inputs");
        for (auto& [p, n] : t.outputs)
            check_place(p, "outputs");
        for (auto& p : t.resets)
            check_place(p, "resets");
    }
    for (auto& [p, n] : initial)
        check_place(p, "the initial marking");
    for (auto& [p, n] : target)
        check_place(p, "the target marking");
}

bool fire_enabled(const PetriNet&, const Marking& m,
                  const PetriTransition& t)
{
    for (auto& [p, n] : t.inputs) {
        auto it = m.find(p);
        if ((it == m.end() ? 0 : it->second) < n)
            return false;
    }
    return true;
}

Marking fire(const PetriNet& net, const Marking& m, const PetriTransition& t)
{
    if (!fire_enabled(net, m, t))
        throw std::invalid_argument("fire: transition '" + t.name +
                                    "' is not enabled");
    Marking out = m;
    for (auto& [p, n] : t.inputs) {
        out[p] -= n;
        if (out[p] == 0)
            out.erase(p);
    }
    for (const std::string& p : t.resets)
        out.erase(p);
    for (auto& [p, n] : t.outputs)
        if (n > 0)
            out[p] += n;
    return out;
}

namespace {

std::uint32_t count_of(const Marking& m, const std::string& p)
{
    auto it = m.find(p);
    return it == m.end() ? 0 : it->second;
}

/// Two passes: allocate every state and record which states represent
/// tokens of which place, then wire the chains so consume guards see the
/// complete representative sets.
Cma encode_flat(const PetriNet& net, bool weak)
{
    net.validate();
    if (net.has_resets())
        throw std::invalid_argument(
            "flat encoding: reset arcs need the nested encoder");

    Cma a;
    a.alphabet = {"a"};
    std::map<std::string, std::vector<State>> repr;

    struct ChainStep {
        State state;
        bool fresh_read;   // bot guard instead of a representative read
        std::string place; // guarded place when not fresh
    };

    State start = a.add_state("s0");
    a.initial = start;

    std::vector<ChainStep> setup;
    for (const std::string& p : net.places)
        for (std::uint32_t i = 0; i < count_of(net.initial, p); ++i) {
            State s = a.add_state("setup:" + p + ":" + std::to_string(i));
            repr[p].push_back(s);
            setup.push_back(ChainStep{s, true, ""});
        }

    State hub = setup.empty() ? start : a.add_state("hub");

    std::vector<std::vector<ChainStep>> loops;
    for (const PetriTransition& t : net.transitions) {
        std::vector<ChainStep> chain;
        unsigned unit = 0;
        for (auto& [p, n] : t.inputs)
            for (std::uint32_t i = 0; i < n; ++i) {
                State s = a.add_state("cons:" + t.name + ":" +
                                      std::to_string(unit++));
                chain.push_back(ChainStep{s, false, p});
            }
        unit = 0;
        for (auto& [p, n] : t.outputs)
            for (std::uint32_t i = 0; i < n; ++i) {
                State s = a.add_state("prod:" + t.name + ":" +
                                      std::to_string(unit++));
                repr[p].push_back(s);
                chain.push_back(ChainStep{s, true, ""});
            }
        if (!chain.empty())
            loops.push_back(std::move(chain));
    }

    std::vector<ChainStep> check;
    unsigned unit = 0;
    for (const std::string& p : net.places)
        for (std::uint32_t i = 0; i < count_of(net.target, p); ++i) {
            State s = a.add_state("chk:" + p + ":" + std::to_string(unit++));
            check.push_back(ChainStep{s, false, p});
        }

    auto wire = [&](State from, const std::vector<ChainStep>& chain) {
        State pos = from;
        for (const ChainStep& step : chain) {
            if (step.fresh_read) {
                a.add_transition(pos, "a", std::nullopt, step.state);
            } else {
                for (State g : repr[step.place])
                    a.add_transition(pos, "a", g, step.state);
            }
            pos = step.state;
        }
        return pos;
    };

    State pos = wire(start, setup);
    if (pos != hub)
        a.silent.emplace(pos, hub);
    for (const std::vector<ChainStep>& chain : loops) {
        State end = wire(hub, chain);
        a.silent.emplace(end, hub);
    }
    State accept = wire(hub, check);
    a.globally_accepting.insert(accept);

    std::set<State> token_states;
    for (auto& [p, states] : repr)
        token_states.insert(states.begin(), states.end());
    for (State q = 0; q < a.states.size(); ++q)
        if (weak || !token_states.count(q))
            a.locally_accepting.insert(q);
    a.validate();
    return a;
}

} // namespace

Cma encode_reachability_cma(const PetriNet& net)
{
    if (net.query != QueryKind::reachability)
        throw std::invalid_argument(
            "encode_reachability_cma: query kind is coverability");
    return encode_flat(net, false);
}

Cma encode_coverability_wcma(const PetriNet& net)
{
    if (net.query != QueryKind::coverability)
        throw std::invalid_argument(
            "encode_coverability_wcma: query kind is reachability");
    return encode_flat(net, true);
}

namespace {

/// Level-2 encoder. Each place owns exactly one live bag (a level-1
/// value): bags are created in the setup phase and replaced right after a
/// reset retires the old one, so stranded tokens can never be consumed.
Ndcma encode_nested(const PetriNet& net, bool weak)
{
    net.validate();

    Ndcma a;
    a.level = 2;
    a.alphabet = {"a"};
    // states a place's live bag may be painted with / live token states
    std::map<std::string, std::vector<State>> repr;
    std::map<std::string, std::vector<State>> tokens;

    struct ChainStep {
        enum Kind { make_bag, token_fresh, token_read, bag_retire,
                    kill_loop } kind;
        State state;       // chain target (for kill_loop: the kill state)
        std::string place;
    };

    State start = a.add_state("s0");
    a.initial = start;

    auto tag = [&](const std::string& p, State s, bool token) {
        repr[p].push_back(s);
        if (token)
            tokens[p].push_back(s);
    };

    // pass 1: states
    std::vector<ChainStep> setup;
    for (const std::string& p : net.places) {
        State s = a.add_state("bag:" + p);
        tag(p, s, false);
        setup.push_back(ChainStep{ChainStep::make_bag, s, p});
    }
    for (const std::string& p : net.places)
        for (std::uint32_t i = 0; i < count_of(net.initial, p); ++i) {
            State s = a.add_state("setup:" + p + ":" + std::to_string(i));
            tag(p, s, true);
            setup.push_back(ChainStep{ChainStep::token_fresh, s, p});
        }

    std::vector<std::vector<ChainStep>> loops;
    for (const PetriTransition& t : net.transitions) {
        std::vector<ChainStep> chain;
        unsigned unit = 0;
        for (auto& [p, n] : t.inputs)
            for (std::uint32_t i = 0; i < n; ++i) {
                State s = a.add_state("cons:" + t.name + ":" +
                                      std::to_string(unit++) + ":" + p);
                tag(p, s, false);
                chain.push_back(ChainStep{ChainStep::token_read, s, p});
            }
        unsigned reset_idx = 0;
        for (const std::string& p : t.resets) {
            std::string suffix =
                t.name + ":" + std::to_string(reset_idx++) + ":" + p;
            if (!weak) {
                State kill = a.add_state("kill:" + suffix);
                tag(p, kill, false);
                chain.push_back(ChainStep{ChainStep::kill_loop, kill, p});
            }
            State done = a.add_state("done:" + suffix);
            chain.push_back(ChainStep{ChainStep::bag_retire, done, p});
            State bag = a.add_state("rebag:" + suffix);
            tag(p, bag, false);
            chain.push_back(ChainStep{ChainStep::make_bag, bag, p});
        }
        unit = 0;
        for (auto& [p, n] : t.outputs)
            for (std::uint32_t i = 0; i < n; ++i) {
                State s = a.add_state("prod:" + t.name + ":" +
                                      std::to_string(unit++) + ":" + p);
                tag(p, s, true);
                chain.push_back(ChainStep{ChainStep::token_fresh, s, p});
            }
        if (!chain.empty())
            loops.push_back(std::move(chain));
    }

    std::vector<ChainStep> check;
    unsigned unit = 0;
    for (const std::string& p : net.places)
        for (std::uint32_t i = 0; i < count_of(net.target, p); ++i) {
            State s = a.add_state("chk:" + p + ":" + std::to_string(unit++));
            tag(p, s, false);
            check.push_back(ChainStep{ChainStep::token_read, s, p});
        }

    // pass 2: wiring
    auto emit = [&](const std::vector<State>& froms, const ChainStep& step)
        -> std::vector<State> {
        for (State from : froms) {
            switch (step.kind) {
            case ChainStep::make_bag:
                a.add_transition(from, "a", {std::nullopt}, step.state);
                break;
            case ChainStep::token_fresh:
                for (State bg : repr[step.place])
                    a.add_transition(from, "a", {{bg}, std::nullopt},
                                     step.state);
                break;
            case ChainStep::token_read:
                for (State bg : repr[step.place])
                    for (State tg : tokens[step.place])
                        a.add_transition(from, "a", {{bg}, {tg}},
                                         step.state);
                break;
            case ChainStep::bag_retire:
                for (State bg : repr[step.place])
                    a.add_transition(from, "a", {{bg}}, step.state);
                break;
            case ChainStep::kill_loop:
                for (State bg : repr[step.place])
                    for (State tg : tokens[step.place])
                        a.add_transition(from, "a", {{bg}, {tg}},
                                         step.state);
                break;
            }
        }
        if (step.kind == ChainStep::kill_loop) {
            // further kills loop on the kill state itself; zero kills are
            // possible because the next step wires from both states
            for (State bg : repr[step.place])
                for (State tg : tokens[step.place])
                    a.add_transition(step.state, "a", {{bg}, {tg}},
                                     step.state);
            std::vector<State> out = froms;
            out.push_back(step.state);
            return out;
        }
        return {step.state};
    };

    auto wire = [&](std::vector<State> froms,
                    const std::vector<ChainStep>& chain) {
        for (const ChainStep& step : chain)
            froms = emit(froms, step);
        return froms;
    };

    std::vector<State> hubs = wire({start}, setup);
    std::vector<State> all_hubs = hubs;
    for (const std::vector<ChainStep>& chain : loops) {
        std::vector<State> ends = wire(all_hubs, chain);
        all_hubs.insert(all_hubs.end(), ends.begin(), ends.end());
    }
    // late loops must also start from earlier loop ends; iterate once more
    // so every loop is reachable from every other loop's end
    for (const std::vector<ChainStep>& chain : loops)
        wire(all_hubs, chain);

    std::vector<State> finals = wire(all_hubs, check);
    for (State f : finals)
        a.globally_accepting.insert(f);

    std::set<State> token_states;
    for (auto& [p, sts] : tokens)
        token_states.insert(sts.begin(), sts.end());
    for (State q = 0; q < a.states.size(); ++q)
        if (weak || !token_states.count(q))
            a.locally_accepting.insert(q);
    a.validate();
    return a;
}

} // namespace

Ndcma encode_reset_reachability_ndcma(const PetriNet& net)
{
    if (net.query != QueryKind::reachability)
        throw std::invalid_argument(
            "encode_reset_reachability_ndcma: query kind is coverability");
    return encode_nested(net, false);
}

Ndcma encode_reset_coverability_weak_ndcma(const PetriNet& net)
{
    if (net.query != QueryKind::coverability)
        throw std::invalid_argument(
            "encode_reset_coverability_weak_ndcma: query kind is "
            "reachability");
    return encode_nested(net, true);
}

VasInstance net_to_vas(const PetriNet& net)
{
    net.validate();
    if (net.has_resets())
        throw std::invalid_argument("net_to_vas: reset arcs not expressible");
    VasInstance v;
    v.counters = net.places;
    v.controls = {"run"};
    v.initial_valuation.assign(net.places.size(), 0);
    auto index = [&](const std::string& p) {
        return static_cast<std::size_t>(
            std::find(net.places.begin(), net.places.end(), p) -
            net.places.begin());
    };
    for (auto& [p, n] : net.initial)
        v.initial_valuation[index(p)] = n;
    for (const PetriTransition& t : net.transitions) {
        VasRule r;
        r.from = r.to = 0;
        r.name = t.name;
        r.guard.assign(net.places.size(), 0);
        r.effect.assign(net.places.size(), 0);
        for (auto& [p, n] : t.inputs)
            r.guard[index(p)] = n;
        for (auto& [p, n] : t.outputs)
            r.effect[index(p)] = n;
        v.rules.push_back(std::move(r));
    }
    VasTarget target;
    target.control = 0;
    target.minimum.assign(net.places.size(), 0);
    for (auto& [p, n] : net.target)
        target.minimum[index(p)] = n;
    v.targets.push_back(std::move(target));
    return v;
}

namespace {

std::vector<std::string>
decode_by_roles(const Cma& encoding, const DataWord& witness,
                const std::function<bool(const std::string&)>& pure_producer)
{
    auto run = cma_find_run(encoding, witness);
    if (!run)
        return {};
    std::vector<std::string> fired;
    for (const CmaRunStep& step : *run) {
        if (step.silent)
            continue;
        const std::string& name = encoding.states[step.after.control];
        // a firing starts at the first unit of a transition's chain
        auto is_first = [&](const char* prefix) {
            if (name.rfind(prefix, 0) != 0)
                return std::string();
            auto rest = name.substr(std::string(prefix).size());
            auto colon = rest.find(':');
            if (colon == std::string::npos || rest.substr(colon + 1) != "0")
                return std::string();
            return rest.substr(0, colon);
        };
        std::string t = is_first("cons:");
        if (!t.empty()) {
            fired.push_back(t);
            continue;
        }
        t = is_first("prod:");
        if (!t.empty() && pure_producer(t))
            fired.push_back(t);
    }
    return fired;
}

} // namespace

std::vector<std::string> decode_firing_sequence(const PetriNet& net,
                                                const Cma& encoding,
                                                const DataWord& witness)
{
    return decode_by_roles(encoding, witness, [&](const std::string& t) {
        for (const PetriTransition& cand : net.transitions)
            if (cand.name == t)
                return cand.inputs.empty();
        return false;
    });
}

std::vector<std::string> decode_firing_sequence(const Cma& encoding,
                                                const DataWord& witness)
{
    // without the net, a transition counts as a pure producer when the
    // encoding has no consume states for it
    return decode_by_roles(encoding, witness, [&](const std::string& t) {
        for (const std::string& name : encoding.states)
            if (name.rfind("cons:" + t + ":", 0) == 0)
                return false;
        return true;
    });
}

} // namespace datamata
