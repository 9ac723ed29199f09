#include "datamata/cma.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace datamata {

bool Cma::is_weak() const
{
    return locally_accepting.size() == states.size();
}

bool Cma::is_deterministic() const
{
    if (!silent.empty())
        return false;
    for (auto& [key, succs] : delta)
        if (succs.size() > 1)
            return false;
    return true;
}

bool Cma::is_complete() const
{
    for (State q = 0; q < states.size(); ++q) {
        for (const std::string& a : alphabet) {
            std::vector<std::optional<State>> guards;
            guards.emplace_back(std::nullopt);
            for (State s = 0; s < states.size(); ++s)
                guards.emplace_back(s);
            for (auto& g : guards) {
                auto it = delta.find(CmaKey{q, a, g});
                if (it == delta.end() || it->second.empty())
                    return false;
            }
        }
    }
    return true;
}

bool Cma::same_alphabet(const Cma& other) const
{
    std::set<std::string> mine(alphabet.begin(), alphabet.end());
    std::set<std::string> theirs(other.alphabet.begin(), other.alphabet.end());
    return mine == theirs;
}

void Cma::validate() const
{
    auto check_state = [&](State q, const char* what) {
        if (q >= states.size())
            throw std::invalid_argument(std::string("cma: ") + what +
                                        " out of range");
    };
    check_state(initial, "initial state");
    for (State q : locally_accepting)
        check_state(q, "locally accepting state");
    for (State q : globally_accepting) {
        check_state(q, "globally accepting state");
        if (!locally_accepting.count(q))
            throw std::invalid_argument(
                "cma: globally accepting state '" + states[q] +
                "' is not locally accepting");
    }
    for (auto& [key, succs] : delta) {
        check_state(key.from, "transition source");
        if (key.memory)
            check_state(*key.memory, "transition guard");
        if (std::find(alphabet.begin(), alphabet.end(), key.letter) ==
            alphabet.end())
            throw std::invalid_argument("cma: transition letter '" +
                                        key.letter + "' not in alphabet");
        for (State q : succs)
            check_state(q, "transition target");
    }
    for (auto& [p, q] : silent) {
        check_state(p, "silent source");
        check_state(q, "silent target");
    }
}

State Cma::add_state(const std::string& name)
{
    states.push_back(name);
    return static_cast<State>(states.size() - 1);
}

void Cma::add_transition(State from, const std::string& letter,
                         std::optional<State> memory, State to)
{
    delta[CmaKey{from, letter, memory}].insert(to);
}

std::vector<CmaConfiguration> cma_step(const Cma& a, const CmaConfiguration& c,
                                       const std::string& letter,
                                       DataValue value)
{
    std::vector<CmaConfiguration> out;
    auto it = a.delta.find(CmaKey{c.control, letter, c.memory.at(value)});
    if (it == a.delta.end())
        return out;
    for (State q : it->second) {
        CmaConfiguration next = c;
        next.control = q;
        next.memory.assign(value, q);
        out.push_back(std::move(next));
    }
    return out;
}

bool cma_configuration_accepting(const Cma& a, const CmaConfiguration& c)
{
    if (!a.globally_accepting.count(c.control))
        return false;
    for (auto& [d, q] : c.memory.assignments())
        if (!a.locally_accepting.count(q))
            return false;
    return true;
}

namespace {

// silent closure of a configuration set, recording back-pointers
void silent_close(const Cma& a, std::map<CmaConfiguration, int>& seen,
                  std::vector<std::pair<int, CmaRunStep>>& trace,
                  std::deque<CmaConfiguration>& frontier)
{
    while (!frontier.empty()) {
        CmaConfiguration c = frontier.front();
        frontier.pop_front();
        int from = seen.at(c);
        for (auto& [p, q] : a.silent) {
            if (p != c.control)
                continue;
            CmaConfiguration next = c;
            next.control = q;
            if (seen.count(next))
                continue;
            CmaRunStep step;
            step.silent = true;
            step.after = next;
            trace.emplace_back(from, step);
            seen[next] = static_cast<int>(trace.size()) - 1;
            frontier.push_back(next);
        }
    }
}

} // namespace

std::optional<std::vector<CmaRunStep>> cma_find_run(const Cma& a,
                                                    const DataWord& w)
{
    w.validate();
    for (const std::string& letter : w.alphabet)
        if (std::find(a.alphabet.begin(), a.alphabet.end(), letter) ==
            a.alphabet.end())
            throw std::invalid_argument("cma_find_run: word letter '" +
                                        letter + "' outside the automaton's "
                                        "alphabet");

    // trace holds (predecessor index, step); index -1 = initial configuration
    std::vector<std::pair<int, CmaRunStep>> trace;
    std::map<CmaConfiguration, int> seen;
    CmaConfiguration init;
    init.control = a.initial;
    seen[init] = -1;

    std::deque<CmaConfiguration> frontier{init};
    silent_close(a, seen, trace, frontier);

    std::vector<CmaConfiguration> layer;
    for (auto& [c, idx] : seen)
        layer.push_back(c);

    for (const DataWord::Entry& e : w.entries) {
        std::map<CmaConfiguration, int> next_seen;
        std::deque<CmaConfiguration> next_frontier;
        for (const CmaConfiguration& c : layer) {
            int from = seen.at(c);
            for (CmaConfiguration& succ : cma_step(a, c, e.letter, e.value)) {
                if (next_seen.count(succ))
                    continue;
                CmaRunStep step;
                step.letter = e.letter;
                step.value = e.value;
                step.after = succ;
                trace.emplace_back(from, step);
                next_seen[succ] = static_cast<int>(trace.size()) - 1;
                next_frontier.push_back(succ);
            }
        }
        seen = std::move(next_seen);
        silent_close(a, seen, trace, next_frontier);
        layer.clear();
        for (auto& [c, idx] : seen)
            layer.push_back(c);
    }

    for (const CmaConfiguration& c : layer) {
        if (!cma_configuration_accepting(a, c))
            continue;
        std::vector<CmaRunStep> run;
        for (int idx = seen.at(c); idx != -1; idx = trace[idx].first)
            run.push_back(trace[static_cast<std::size_t>(idx)].second);
        std::reverse(run.begin(), run.end());
        return run;
    }
    return std::nullopt;
}

bool cma_accepts(const Cma& a, const DataWord& w)
{
    return cma_find_run(a, w).has_value();
}

Cma eliminate_silent(const Cma& a)
{
    // forward silent closure per state
    std::vector<std::set<State>> closure(a.states.size());
    for (State q = 0; q < a.states.size(); ++q) {
        std::deque<State> frontier{q};
        closure[q].insert(q);
        while (!frontier.empty()) {
            State cur = frontier.front();
            frontier.pop_front();
            for (auto& [p, r] : a.silent)
                if (p == cur && closure[q].insert(r).second)
                    frontier.push_back(r);
        }
    }

    Cma out = a;
    out.silent.clear();
    out.delta.clear();
    out.globally_accepting.clear();
    for (State q = 0; q < a.states.size(); ++q)
        for (State r : closure[q])
            if (a.globally_accepting.count(r)) {
                out.globally_accepting.insert(q);
                break;
            }
    for (auto& [key, succs] : a.delta) {
        // a transition from p is reachable from every q with p in closure(q)
        for (State q = 0; q < a.states.size(); ++q) {
            if (!closure[q].count(key.from))
                continue;
            CmaKey nk = key;
            nk.from = q;
            out.delta[nk].insert(succs.begin(), succs.end());
        }
    }
    return out;
}

namespace {

State pair_index(State p, State q, std::size_t nb)
{
    return static_cast<State>(p * nb + q);
}

} // namespace

Cma product(const Cma& a, const Cma& b, BooleanMode mode)
{
    if (!a.same_alphabet(b))
        throw std::invalid_argument("product: alphabet mismatch");
    if (mode == BooleanMode::union_) {
        if (!a.is_deterministic() || !b.is_deterministic())
            throw std::invalid_argument("union: inputs must be deterministic");
        if (!a.is_weak() || !b.is_weak())
            throw std::invalid_argument("union: inputs must be weak");
        if (!a.is_complete() || !b.is_complete())
            throw std::invalid_argument("union: inputs must be complete");
    }

    std::size_t nb = b.states.size();
    Cma out;
    out.alphabet = a.alphabet;
    for (State p = 0; p < a.states.size(); ++p)
        for (State q = 0; q < nb; ++q)
            out.add_state(a.states[p] + "." + b.states[q]);
    out.initial = pair_index(a.initial, b.initial, nb);

    for (State p = 0; p < a.states.size(); ++p)
        for (State q = 0; q < nb; ++q) {
            State pq = pair_index(p, q, nb);
            bool locally = a.locally_accepting.count(p) &&
                           b.locally_accepting.count(q);
            if (locally)
                out.locally_accepting.insert(pq);
            bool in_a = a.globally_accepting.count(p) > 0;
            bool in_b = b.globally_accepting.count(q) > 0;
            bool globally = mode == BooleanMode::intersection ? in_a && in_b
                                                              : in_a || in_b;
            if (globally && locally)
                out.globally_accepting.insert(pq);
        }

    for (auto& [ka, succs_a] : a.delta) {
        for (auto& [kb, succs_b] : b.delta) {
            if (ka.letter != kb.letter)
                continue;
            // memories update in lockstep, so guards are both-bot or a pair
            if (ka.memory.has_value() != kb.memory.has_value())
                continue;
            std::optional<State> guard;
            if (ka.memory)
                guard = pair_index(*ka.memory, *kb.memory, nb);
            CmaKey key{pair_index(ka.from, kb.from, nb), ka.letter, guard};
            for (State ta : succs_a)
                for (State tb : succs_b)
                    out.delta[key].insert(pair_index(ta, tb, nb));
        }
    }

    for (auto& [p, p2] : a.silent)
        for (State q = 0; q < nb; ++q)
            out.silent.emplace(pair_index(p, q, nb), pair_index(p2, q, nb));
    for (auto& [q, q2] : b.silent)
        for (State p = 0; p < a.states.size(); ++p)
            out.silent.emplace(pair_index(p, q, nb), pair_index(p, q2, nb));

    return out;
}

Cma complete(const Cma& a)
{
    if (!a.is_deterministic())
        throw std::invalid_argument("complete: input must be deterministic");
    if (!a.is_weak())
        throw std::invalid_argument("complete: input must be weak");
    Cma out = a;
    State sink = out.add_state("sink");
    out.locally_accepting.insert(sink); // weak: every state locally accepting
    for (State q = 0; q < out.states.size(); ++q) {
        for (const std::string& letter : out.alphabet) {
            std::vector<std::optional<State>> guards;
            guards.emplace_back(std::nullopt);
            for (State s = 0; s < out.states.size(); ++s)
                guards.emplace_back(s);
            for (auto& g : guards) {
                auto& succs = out.delta[CmaKey{q, letter, g}];
                if (succs.empty())
                    succs.insert(sink);
            }
        }
    }
    return out;
}

Cma complement_dwcma(const Cma& a)
{
    if (!a.is_deterministic())
        throw std::invalid_argument("complement: input must be deterministic");
    if (!a.is_weak())
        throw std::invalid_argument("complement: input must be weak");
    if (!a.is_complete())
        throw std::invalid_argument("complement: input must be complete");
    Cma out = a;
    out.globally_accepting.clear();
    for (State q = 0; q < a.states.size(); ++q)
        if (!a.globally_accepting.count(q))
            out.globally_accepting.insert(q);
    return out;
}

namespace {

bool iso_with(const Cma& a, const Cma& b, std::vector<State>& map)
{
    // map is a trial bijection a-state -> b-state
    if (map[a.initial] != b.initial)
        return false;
    for (State q = 0; q < a.states.size(); ++q) {
        if (a.locally_accepting.count(q) !=
            b.locally_accepting.count(map[q]))
            return false;
        if (a.globally_accepting.count(q) !=
            b.globally_accepting.count(map[q]))
            return false;
    }
    std::map<CmaKey, std::set<State>> mapped;
    for (auto& [key, succs] : a.delta) {
        CmaKey nk{map[key.from], key.letter,
                  key.memory ? std::optional<State>(map[*key.memory])
                             : std::nullopt};
        for (State t : succs)
            mapped[nk].insert(map[t]);
    }
    if (mapped != b.delta)
        return false;
    std::set<std::pair<State, State>> silent_mapped;
    for (auto& [p, q] : a.silent)
        silent_mapped.emplace(map[p], map[q]);
    return silent_mapped == b.silent;
}

} // namespace

bool cma_isomorphic(const Cma& a, const Cma& b)
{
    if (a.states.size() != b.states.size())
        return false;
    if (!a.same_alphabet(b))
        return false;
    if (a.states.size() > 10)
        throw std::invalid_argument(
            "cma_isomorphic: brute-force check limited to 10 states");
    std::vector<State> perm(a.states.size());
    for (State q = 0; q < perm.size(); ++q)
        perm[q] = q;
    do {
        std::vector<State> map(perm.begin(), perm.end());
        if (iso_with(a, b, map))
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace datamata
