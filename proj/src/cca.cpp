#include "datamata/cca.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace datamata {

bool Constraint::sat(std::uint64_t n) const
{
    switch (op) {
    case CmpOp::eq: return n == bound;
    case CmpOp::neq: return n != bound;
    case CmpOp::lt: return n < bound;
    case CmpOp::gt: return n > bound;
    }
    return false;
}

std::uint32_t Cca::max_constant() const
{
    std::uint32_t n0 = 0;
    for (const CcaTransition& t : delta)
        n0 = std::max({n0, t.guard.bound, t.operand});
    return n0;
}

void Cca::validate() const
{
    if (initial >= states.size())
        throw std::invalid_argument("cca: initial state out of range");
    for (State q : accepting)
        if (q >= states.size())
            throw std::invalid_argument("cca: accepting state out of range");
    for (const CcaTransition& t : delta) {
        if (t.from >= states.size() || t.to >= states.size())
            throw std::invalid_argument("cca: transition state out of range");
        if (std::find(alphabet.begin(), alphabet.end(), t.letter) ==
            alphabet.end())
            throw std::invalid_argument("cca: transition letter '" + t.letter +
                                        "' not in alphabet");
    }
}

namespace {

struct CcaConfig {
    State control;
    Bag bag;
    friend auto operator<=>(const CcaConfig&, const CcaConfig&) = default;
};

} // namespace

bool cca_accepts(const Cca& a, const DataWord& w)
{
    w.validate();
    if (w.universe && w.universe->level_bound() != 1)
        for (const auto& e : w.entries)
            if (w.universe->level(e.value) != 1)
                throw std::invalid_argument(
                    "cca_accepts: flat data word required");

    using Config = CcaConfig;
    std::set<Config> layer;
    layer.insert(Config{a.initial, {}});
    for (const DataWord::Entry& e : w.entries) {
        std::set<Config> next;
        for (const Config& c : layer) {
            std::uint64_t n = c.bag.count(e.value);
            for (const CcaTransition& t : a.delta) {
                if (t.from != c.control || t.letter != e.letter ||
                    !t.guard.sat(n))
                    continue;
                Config succ = c;
                succ.control = t.to;
                if (t.op == CounterOp::inc)
                    succ.bag.set(e.value, n + t.operand);
                else
                    succ.bag.set(e.value, t.operand);
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

bool cca_is_deterministic(const Cca& a)
{
    std::uint32_t n0 = a.max_constant();
    std::map<std::pair<State, std::string>, std::vector<const CcaTransition*>>
        groups;
    for (const CcaTransition& t : a.delta)
        groups[{t.from, t.letter}].push_back(&t);
    // guards distinguish nothing above n0, so 0..n0+1 are representatives
    for (auto& [key, ts] : groups) {
        for (std::uint64_t n = 0; n <= n0 + 1; ++n) {
            unsigned hits = 0;
            for (const CcaTransition* t : ts)
                if (t->guard.sat(n))
                    ++hits;
            if (hits != 1)
                return false;
        }
    }
    return true;
}

Cca wcma_to_cca(const Cma& a)
{
    if (!a.is_weak())
        throw std::invalid_argument("wcma_to_cca: input must be weak");
    if (!a.silent.empty())
        throw std::invalid_argument(
            "wcma_to_cca: eliminate silent transitions first");

    // state q_j is represented by the counter value j+1; 0 marks freshness
    Cca out;
    out.states = a.states;
    out.alphabet = a.alphabet;
    out.initial = a.initial;
    out.accepting = a.globally_accepting;
    std::uint32_t top = static_cast<std::uint32_t>(a.states.size());
    for (auto& [key, succs] : a.delta) {
        for (State to : succs) {
            CcaTransition t;
            t.from = key.from;
            t.letter = key.letter;
            if (!key.memory) {
                t.guard = Constraint{CmpOp::eq, 0};
            } else if (*key.memory + 1 == top) {
                // top state as > n-1: counters never exceed n, and complete
                // deterministic inputs then yield partitioning guards
                t.guard = Constraint{CmpOp::gt, top - 1};
            } else {
                t.guard = Constraint{CmpOp::eq, *key.memory + 1};
            }
            t.op = CounterOp::set;
            t.operand = to + 1;
            t.to = to;
            out.delta.push_back(std::move(t));
        }
    }
    std::sort(out.delta.begin(), out.delta.end());
    return out;
}

Cma cca_to_wcma(const Cca& a)
{
    std::uint32_t n0 = a.max_constant();
    std::uint32_t width = n0 + 2; // tracked values 0..n0+1

    Cma out;
    out.alphabet = a.alphabet;
    for (State q = 0; q < a.states.size(); ++q)
        for (std::uint32_t i = 0; i < width; ++i)
            out.add_state(a.states[q] + "~" + std::to_string(i));
    auto pack = [&](State q, std::uint32_t i) {
        return static_cast<State>(q * width + i);
    };
    out.initial = pack(a.initial, 0);
    for (State s = 0; s < out.states.size(); ++s)
        out.locally_accepting.insert(s);
    for (State q : a.accepting)
        for (std::uint32_t i = 0; i < width; ++i)
            out.globally_accepting.insert(pack(q, i));

    for (const CcaTransition& t : a.delta) {
        for (std::uint32_t i = 0; i < width; ++i) {
            State from = pack(t.from, i);
            if (t.guard.sat(0)) {
                std::uint32_t stored = t.op == CounterOp::inc
                                           ? std::min(t.operand, n0 + 1)
                                           : t.operand;
                out.add_transition(from, t.letter, std::nullopt,
                                   pack(t.to, stored));
            }
            for (std::uint32_t l = 0; l < width; ++l) {
                if (!t.guard.sat(l))
                    continue;
                std::uint32_t stored = t.op == CounterOp::inc
                                           ? std::min(l + t.operand, n0 + 1)
                                           : t.operand;
                for (State q2 = 0; q2 < a.states.size(); ++q2)
                    out.add_transition(from, t.letter, pack(q2, l),
                                       pack(t.to, stored));
            }
        }
    }
    return out;
}

} // namespace datamata
