#include "datamata/hra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace datamata {

bool NrHra::is_deterministic() const
{
    std::set<std::tuple<State, std::string, HistorySet>> seen;
    for (const NrHraTransition& t : delta)
        if (!seen.emplace(t.from, t.letter, t.required).second)
            return false;
    return true;
}

void NrHra::validate() const
{
    if (type_m == 0 || type_m > 31)
        throw std::invalid_argument("nrhra: type must lie in 1..31");
    if (initial >= states.size())
        throw std::invalid_argument("nrhra: initial state out of range");
    for (State q : accepting)
        if (q >= states.size())
            throw std::invalid_argument("nrhra: accepting state out of range");
    HistorySet all = (type_m >= 31) ? 0x7fffffffu
                                    : ((1u << type_m) - 1);
    for (const NrHraTransition& t : delta) {
        if (t.from >= states.size() || t.to >= states.size())
            throw std::invalid_argument(
                "nrhra: transition state out of range");
        if ((t.required & ~all) || (t.assigned & ~all))
            throw std::invalid_argument(
                "nrhra: transition label uses a history above the type");
        if (std::find(alphabet.begin(), alphabet.end(), t.letter) ==
            alphabet.end())
            throw std::invalid_argument("nrhra: transition letter '" +
                                        t.letter + "' not in alphabet");
    }
}

namespace {

struct HraConfig {
    State control;
    // per value, the set of histories currently containing it
    std::map<DataValue, HistorySet> membership;
    friend auto operator<=>(const HraConfig&, const HraConfig&) = default;
};

} // namespace

bool nrhra_accepts(const NrHra& a, const DataWord& w)
{
    w.validate();

    using Config = HraConfig;
    std::set<Config> layer;
    layer.insert(Config{a.initial, {}});
    for (const DataWord::Entry& e : w.entries) {
        std::set<Config> next;
        for (const Config& c : layer) {
            HistorySet current = 0;
            if (auto it = c.membership.find(e.value);
                it != c.membership.end())
                current = it->second;
            for (const NrHraTransition& t : a.delta) {
                if (t.from != c.control || t.letter != e.letter ||
                    t.required != current)
                    continue;
                Config succ = c;
                succ.control = t.to;
                if (t.assigned == 0)
                    succ.membership.erase(e.value);
                else
                    succ.membership[e.value] = t.assigned;
                next.insert(std::move(succ));
            }
        }
        layer = std::move(next);
        if (layer.empty())
            return false;
    }
    for (const Config& c : layer)
        if (a.accepting.count(c.control))
            return true;
    return false;
}

NrHra wcma_to_nrhra(const Cma& a)
{
    if (!a.is_weak())
        throw std::invalid_argument("wcma_to_nrhra: input must be weak");
    if (!a.silent.empty())
        throw std::invalid_argument(
            "wcma_to_nrhra: eliminate silent transitions first");
    if (a.states.size() > 31)
        throw std::invalid_argument("wcma_to_nrhra: too many states");

    NrHra out;
    out.type_m = static_cast<unsigned>(a.states.size());
    out.states = a.states;
    out.alphabet = a.alphabet;
    out.initial = a.initial;
    out.accepting = a.globally_accepting;
    for (auto& [key, succs] : a.delta) {
        for (State to : succs) {
            NrHraTransition t;
            t.from = key.from;
            t.letter = key.letter;
            t.required = key.memory ? (1u << *key.memory) : 0;
            t.assigned = 1u << to;
            t.to = to;
            out.delta.push_back(std::move(t));
        }
    }
    std::sort(out.delta.begin(), out.delta.end());
    return out;
}

Cma nrhra_to_wcma(const NrHra& a)
{
    unsigned subsets = 1u << a.type_m;

    Cma out;
    out.alphabet = a.alphabet;
    // plain copies of Q first, then (q, Y) markers
    for (State q = 0; q < a.states.size(); ++q)
        out.add_state(a.states[q]);
    auto marker = [&](State q, HistorySet y) {
        return static_cast<State>(a.states.size() + q * subsets + y);
    };
    for (State q = 0; q < a.states.size(); ++q)
        for (HistorySet y = 0; y < subsets; ++y)
            out.add_state(a.states[q] + "~" + std::to_string(y));
    out.initial = a.initial;
    for (State s = 0; s < out.states.size(); ++s)
        out.locally_accepting.insert(s);
    for (State q : a.accepting) {
        out.globally_accepting.insert(q);
        for (HistorySet y = 0; y < subsets; ++y)
            out.globally_accepting.insert(marker(q, y));
    }

    for (const NrHraTransition& t : a.delta) {
        State to = marker(t.to, t.assigned);
        // sources representing control state t.from
        std::vector<State> sources{t.from};
        for (HistorySet z = 0; z < subsets; ++z)
            sources.push_back(marker(t.from, z));
        for (State src : sources) {
            // guards representing membership set X: bot when X is empty,
            // plus every marker state carrying X
            if (t.required == 0)
                out.add_transition(src, t.letter, std::nullopt, to);
            for (State q2 = 0; q2 < a.states.size(); ++q2)
                out.add_transition(src, t.letter, marker(q2, t.required), to);
        }
    }
    return out;
}

} // namespace datamata
