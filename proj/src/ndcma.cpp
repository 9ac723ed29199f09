#include "datamata/ndcma.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace datamata {

bool Ndcma::is_deterministic() const
{
    for (auto& [key, succs] : delta)
        if (succs.size() > 1)
            return false;
    return true;
}

void Ndcma::validate() const
{
    auto check_state = [&](State q, const char* what) {
        if (q >= states.size())
            throw std::invalid_argument(std::string("ndcma: ") + what +
                                        " out of range");
    };
    if (level < 1)
        throw std::invalid_argument("ndcma: level must be positive");
    check_state(initial, "initial state");
    for (State q : locally_accepting)
        check_state(q, "locally accepting state");
    for (State q : globally_accepting) {
        check_state(q, "globally accepting state");
        if (!locally_accepting.count(q))
            throw std::invalid_argument(
                "ndcma: globally accepting state '" + states[q] +
                "' is not locally accepting");
    }
    for (auto& [key, succs] : delta) {
        check_state(key.from, "transition source");
        if (key.level < 1 || key.level > level)
            throw std::invalid_argument("ndcma: transition level out of "
                                        "range");
        if (key.guard.size() != key.level)
            throw std::invalid_argument(
                "ndcma: guard width differs from the transition level");
        for (auto& g : key.guard)
            if (g)
                check_state(*g, "transition guard");
        if (std::find(alphabet.begin(), alphabet.end(), key.letter) ==
            alphabet.end())
            throw std::invalid_argument("ndcma: transition letter '" +
                                        key.letter + "' not in alphabet");
        for (State q : succs)
            check_state(q, "transition target");
    }
}

State Ndcma::add_state(const std::string& name)
{
    states.push_back(name);
    return static_cast<State>(states.size() - 1);
}

void Ndcma::add_transition(State from, const std::string& letter,
                           std::vector<std::optional<State>> guard, State to)
{
    NdcmaKey key;
    key.from = from;
    key.letter = letter;
    key.level = static_cast<unsigned>(guard.size());
    key.guard = std::move(guard);
    delta[key].insert(to);
}

void SugaredNdcma::validate() const
{
    auto check_state = [&](State q, const char* what) {
        if (q >= states.size())
            throw std::invalid_argument(std::string("sugared ndcma: ") +
                                        what + " out of range");
    };
    check_state(initial, "initial state");
    for (State q : locally_accepting)
        check_state(q, "locally accepting state");
    for (State q : globally_accepting) {
        check_state(q, "globally accepting state");
        if (!locally_accepting.count(q))
            throw std::invalid_argument("sugared ndcma: globally accepting "
                                        "state is not locally accepting");
    }
    for (auto& [key, succs] : delta) {
        check_state(key.from, "transition source");
        if (key.level < 1 || key.level > level)
            throw std::invalid_argument(
                "sugared ndcma: transition level out of range");
        if (key.guard.size() != key.level + 1)
            throw std::invalid_argument(
                "sugared ndcma: guard width must be level + 1");
        for (auto& g : key.guard)
            if (g)
                check_state(*g, "transition guard");
        for (const SugaredTarget& t : succs) {
            check_state(t.to, "transition target");
            if (t.writes.size() != key.level + 1)
                throw std::invalid_argument(
                    "sugared ndcma: write width must be level + 1");
            for (State w : t.writes)
                check_state(w, "transition write");
        }
    }
}

State SugaredNdcma::add_state(const std::string& name)
{
    states.push_back(name);
    return static_cast<State>(states.size() - 1);
}

std::vector<NdcmaConfiguration> ndcma_step(const Ndcma& a,
                                           const NdcmaConfiguration& c,
                                           const std::string& letter,
                                           DataValue value,
                                           const DataUniverse& universe)
{
    std::vector<NdcmaConfiguration> out;
    std::vector<DataValue> chain = universe.ancestors(value);
    NdcmaKey key;
    key.from = c.control;
    key.letter = letter;
    key.level = static_cast<unsigned>(chain.size());
    for (DataValue v : chain)
        key.guard.push_back(c.memory.at(v));
    auto it = a.delta.find(key);
    if (it == a.delta.end())
        return out;
    for (State to : it->second) {
        NdcmaConfiguration next = c;
        next.control = to;
        for (DataValue v : chain)
            next.memory.assign(v, to);
        out.push_back(std::move(next));
    }
    return out;
}

namespace {

bool ndcma_config_accepting(const Ndcma& a, const NdcmaConfiguration& c)
{
    if (!a.globally_accepting.count(c.control))
        return false;
    for (auto& [d, q] : c.memory.assignments())
        if (!a.locally_accepting.count(q))
            return false;
    return true;
}

void check_word_level(const DataWord& w, unsigned level, const char* who)
{
    if (!w.universe)
        throw std::invalid_argument(std::string(who) +
                                    ": nested word needs a universe");
    for (const auto& e : w.entries)
        if (w.universe->level(e.value) > level)
            throw std::invalid_argument(std::string(who) +
                                        ": word value deeper than the "
                                        "machine's level");
}

} // namespace

bool ndcma_accepts(const Ndcma& a, const DataWord& w)
{
    w.validate();
    check_word_level(w, a.level, "ndcma_accepts");

    std::set<NdcmaConfiguration> layer;
    NdcmaConfiguration init;
    init.control = a.initial;
    layer.insert(init);
    for (const DataWord::Entry& e : w.entries) {
        std::set<NdcmaConfiguration> next;
        for (const NdcmaConfiguration& c : layer)
            for (NdcmaConfiguration& succ :
                 ndcma_step(a, c, e.letter, e.value, *w.universe)) {
                // reachable memories keep parents mapped
                next.insert(std::move(succ));
            }
        layer = std::move(next);
        if (layer.empty())
            return false;
    }
    for (const NdcmaConfiguration& c : layer)
        if (ndcma_config_accepting(a, c))
            return true;
    return false;
}

bool sugared_accepts(const SugaredNdcma& a, const DataWord& w)
{
    w.validate();
    check_word_level(w, a.level, "sugared_accepts");
    const DataUniverse& u = *w.universe;

    std::set<NdcmaConfiguration> layer;
    NdcmaConfiguration init;
    init.control = a.initial;
    layer.insert(init);
    for (const DataWord::Entry& e : w.entries) {
        std::set<NdcmaConfiguration> next;
        for (const NdcmaConfiguration& c : layer) {
            std::vector<DataValue> chain = u.ancestors(e.value);
            SugaredKey key;
            key.from = c.control;
            key.letter = e.letter;
            key.level = static_cast<unsigned>(chain.size());
            key.guard.push_back(c.memory.at(u.root()));
            for (DataValue v : chain)
                key.guard.push_back(c.memory.at(v));
            auto it = a.delta.find(key);
            if (it == a.delta.end())
                continue;
            for (const SugaredTarget& t : it->second) {
                NdcmaConfiguration succ = c;
                succ.control = t.to;
                succ.memory.assign(u.root(), t.writes[0]);
                for (std::size_t j = 0; j < chain.size(); ++j)
                    succ.memory.assign(chain[j], t.writes[j + 1]);
                next.insert(std::move(succ));
            }
        }
        layer = std::move(next);
        if (layer.empty())
            return false;
    }
    for (const NdcmaConfiguration& c : layer) {
        if (!a.globally_accepting.count(c.control))
            continue;
        bool ok = true;
        for (auto& [d, q] : c.memory.assignments())
            if (!a.locally_accepting.count(q)) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    }
    return false;
}

Ndcma ndcma_from_cma(const Cma& a)
{
    if (!a.silent.empty())
        throw std::invalid_argument(
            "ndcma_from_cma: eliminate silent transitions first");
    Ndcma out;
    out.level = 1;
    out.states = a.states;
    out.alphabet = a.alphabet;
    out.initial = a.initial;
    out.locally_accepting = a.locally_accepting;
    out.globally_accepting = a.globally_accepting;
    for (auto& [key, succs] : a.delta)
        for (State to : succs)
            out.add_transition(key.from, key.letter, {key.memory}, to);
    return out;
}

SugaredNdcma sugar_of_plain(const Ndcma& a)
{
    SugaredNdcma out;
    out.level = a.level;
    out.states = a.states;
    out.alphabet = a.alphabet;
    out.initial = a.initial;
    out.locally_accepting = a.locally_accepting;
    out.globally_accepting = a.globally_accepting;
    State root_mark = out.add_state("root*");
    out.locally_accepting.insert(root_mark);
    for (auto& [key, succs] : a.delta) {
        for (State to : succs) {
            for (std::optional<State> r :
                 std::vector<std::optional<State>>{std::nullopt, root_mark}) {
                SugaredKey k;
                k.from = key.from;
                k.letter = key.letter;
                k.level = key.level;
                k.guard.push_back(r);
                for (auto& g : key.guard)
                    k.guard.push_back(g);
                SugaredTarget t;
                t.to = to;
                t.writes.assign(key.level + 1, to);
                t.writes[0] = root_mark;
                out.delta[k].insert(std::move(t));
            }
        }
    }
    return out;
}

namespace {

struct PlainState {
    State control = 0;
    std::optional<State> root;
    std::vector<State> writes; // empty only for the initial state
    friend auto operator<=>(const PlainState&, const PlainState&) = default;
};

} // namespace

Ndcma desugar(const SugaredNdcma& a)
{
    a.validate();
    bool weak = a.is_weak();
    if (!weak) {
        // strong support: inner chain writes must be locally accepting,
        // otherwise one state cannot carry per-level acceptability
        for (auto& [key, succs] : a.delta)
            for (const SugaredTarget& t : succs)
                for (std::size_t j = 1; j + 1 < t.writes.size(); ++j)
                    if (!a.locally_accepting.count(t.writes[j]))
                        throw std::invalid_argument(
                            "desugar: strong machine writes a locally "
                            "rejecting state above the read level");
    }

    unsigned k = a.level;
    Ndcma out;
    out.level = k;
    out.alphabet = a.alphabet;

    std::map<PlainState, State> index;
    std::vector<PlainState> order;
    auto intern = [&](const PlainState& s) {
        auto it = index.find(s);
        if (it != index.end())
            return it->second;
        std::string name = a.states[s.control];
        name += s.root ? "|" + a.states[*s.root] : "|bot";
        for (State w : s.writes)
            name += "." + a.states[w];
        State id = out.add_state(name);
        index.emplace(s, id);
        order.push_back(s);
        return id;
    };

    PlainState init;
    init.control = a.initial;
    out.initial = intern(init);

    // saturate: new plain states enable new sources and guard witnesses
    std::size_t done_states = 0;
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t snapshot = order.size();
        for (auto& [key, succs] : a.delta) {
            for (const SugaredTarget& t : succs) {
                PlainState target;
                target.control = t.to;
                target.root = t.writes[0];
                target.writes.assign(k, t.writes[key.level]);
                for (unsigned j = 1; j <= key.level; ++j)
                    target.writes[j - 1] = t.writes[j];

                // guard witnesses per component: bot stays bot; a state
                // requires some known plain state writing it at that level
                std::vector<std::vector<std::optional<State>>> choices(
                    key.level);
                for (unsigned j = 1; j <= key.level; ++j) {
                    if (!key.guard[j]) {
                        choices[j - 1].push_back(std::nullopt);
                        continue;
                    }
                    for (std::size_t si = 0; si < snapshot; ++si) {
                        const PlainState& cand = order[si];
                        if (!cand.writes.empty() &&
                            cand.writes[j - 1] == *key.guard[j])
                            choices[j - 1].emplace_back(index.at(cand));
                    }
                }
                bool feasible = true;
                for (auto& c : choices)
                    if (c.empty())
                        feasible = false;
                if (!feasible)
                    continue;

                for (std::size_t si = 0; si < snapshot; ++si) {
                    const PlainState& src = order[si];
                    if (src.control != key.from || src.root != key.guard[0])
                        continue;
                    State src_id = index.at(src);
                    State tgt_id = intern(target);
                    // enumerate guard combinations
                    std::vector<std::size_t> pick(key.level, 0);
                    while (true) {
                        std::vector<std::optional<State>> guard;
                        for (unsigned j = 0; j < key.level; ++j)
                            guard.push_back(choices[j][pick[j]]);
                        NdcmaKey nk;
                        nk.from = src_id;
                        nk.letter = key.letter;
                        nk.level = key.level;
                        nk.guard = std::move(guard);
                        if (out.delta[nk].insert(tgt_id).second)
                            grew = true;
                        unsigned j = 0;
                        for (; j < key.level; ++j) {
                            if (++pick[j] < choices[j].size())
                                break;
                            pick[j] = 0;
                        }
                        if (j == key.level)
                            break;
                    }
                }
            }
        }
        if (order.size() > done_states) {
            grew = true;
            done_states = order.size();
        }
    }

    for (std::size_t si = 0; si < order.size(); ++si) {
        const PlainState& s = order[si];
        State id = index.at(s);
        bool writes_ok = true;
        for (State w : s.writes)
            if (!a.locally_accepting.count(w))
                writes_ok = false;
        if (weak || writes_ok)
            out.locally_accepting.insert(id);
        bool root_ok = !s.root || a.locally_accepting.count(*s.root) || weak;
        if (a.globally_accepting.count(s.control) && root_ok &&
            (weak || writes_ok))
            out.globally_accepting.insert(id);
    }
    return out;
}

Ndcma ndcma_product(const Ndcma& a, const Ndcma& b, BooleanMode mode)
{
    std::set<std::string> alpha_a(a.alphabet.begin(), a.alphabet.end());
    std::set<std::string> alpha_b(b.alphabet.begin(), b.alphabet.end());
    if (alpha_a != alpha_b)
        throw std::invalid_argument("ndcma_product: alphabet mismatch");
    if (a.level != b.level)
        throw std::invalid_argument("ndcma_product: level mismatch");
    if (mode == BooleanMode::union_) {
        if (!a.is_deterministic() || !b.is_deterministic() || !a.is_weak() ||
            !b.is_weak())
            throw std::invalid_argument(
                "ndcma union: inputs must be deterministic weak");
    }

    std::size_t nb = b.states.size();
    auto pack = [&](State p, State q) {
        return static_cast<State>(p * nb + q);
    };

    Ndcma out;
    out.level = a.level;
    out.alphabet = a.alphabet;
    for (State p = 0; p < a.states.size(); ++p)
        for (State q = 0; q < nb; ++q)
            out.add_state(a.states[p] + "." + b.states[q]);
    out.initial = pack(a.initial, b.initial);
    for (State p = 0; p < a.states.size(); ++p)
        for (State q = 0; q < nb; ++q) {
            State pq = pack(p, q);
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
            if (ka.letter != kb.letter || ka.level != kb.level)
                continue;
            // memories update in lockstep componentwise
            std::vector<std::optional<State>> guard;
            bool compatible = true;
            for (unsigned j = 0; j < ka.level; ++j) {
                if (ka.guard[j].has_value() != kb.guard[j].has_value()) {
                    compatible = false;
                    break;
                }
                if (ka.guard[j])
                    guard.emplace_back(pack(*ka.guard[j], *kb.guard[j]));
                else
                    guard.emplace_back(std::nullopt);
            }
            if (!compatible)
                continue;
            NdcmaKey key;
            key.from = pack(ka.from, kb.from);
            key.letter = ka.letter;
            key.level = ka.level;
            key.guard = guard;
            for (State ta : succs_a)
                for (State tb : succs_b)
                    out.delta[key].insert(pack(ta, tb));
        }
    }
    return out;
}

Ndcma ndcma_complete(const Ndcma& a)
{
    if (!a.is_deterministic())
        throw std::invalid_argument(
            "ndcma_complete: input must be deterministic");
    if (!a.is_weak())
        throw std::invalid_argument("ndcma_complete: input must be weak");
    Ndcma out = a;
    State sink = out.add_state("sink");
    out.locally_accepting.insert(sink);

    // every (state, letter, level, guard) combination gets a successor
    for (State q = 0; q < out.states.size(); ++q) {
        for (const std::string& letter : out.alphabet) {
            for (unsigned lvl = 1; lvl <= out.level; ++lvl) {
                std::vector<std::optional<State>> domain;
                domain.emplace_back(std::nullopt);
                for (State s = 0; s < out.states.size(); ++s)
                    domain.emplace_back(s);
                std::vector<std::size_t> pick(lvl, 0);
                while (true) {
                    NdcmaKey key;
                    key.from = q;
                    key.letter = letter;
                    key.level = lvl;
                    for (unsigned j = 0; j < lvl; ++j)
                        key.guard.push_back(domain[pick[j]]);
                    auto& succs = out.delta[key];
                    if (succs.empty())
                        succs.insert(sink);
                    unsigned j = 0;
                    for (; j < lvl; ++j) {
                        if (++pick[j] < domain.size())
                            break;
                        pick[j] = 0;
                    }
                    if (j == lvl)
                        break;
                }
            }
        }
    }
    return out;
}

Ndcma ndcma_complement_dw(const Ndcma& a)
{
    if (!a.is_deterministic() || !a.is_weak())
        throw std::invalid_argument(
            "ndcma_complement_dw: input must be deterministic weak");
    Ndcma c = ndcma_complete(a);
    Ndcma out = c;
    out.globally_accepting.clear();
    for (State q = 0; q < c.states.size(); ++q)
        if (!c.globally_accepting.count(q))
            out.globally_accepting.insert(q);
    return out;
}

DataWord tuple_to_forest(const TupleDataWord& w)
{
    w.validate();
    DataWord out;
    out.alphabet = w.alphabet;
    out.universe = DataUniverse::make(w.depth);
    std::map<std::vector<DataValue>, DataValue> node_of;
    for (const auto& e : w.entries) {
        std::vector<DataValue> prefix;
        DataValue parent = out.universe->root();
        for (DataValue d : e.values) {
            prefix.push_back(d);
            auto it = node_of.find(prefix);
            if (it == node_of.end()) {
                std::string label =
                    w.universe ? w.universe->label(d) : "";
                DataValue node =
                    prefix.size() == 1
                        ? out.universe->fresh(label)
                        : out.universe->fresh_child(parent, label);
                it = node_of.emplace(prefix, node).first;
            }
            parent = it->second;
        }
        out.entries.push_back(DataWord::Entry{e.letter, parent});
    }
    return out;
}

TupleDataWord forest_to_tuple(const DataWord& w)
{
    w.validate();
    if (!w.universe)
        throw std::invalid_argument("forest_to_tuple: universe required");
    unsigned k = w.universe->level_bound();
    TupleDataWord out;
    out.depth = k;
    out.alphabet = w.alphabet;
    out.universe = DataUniverse::make(1);
    std::map<DataValue, DataValue> flat_of;
    for (const auto& e : w.entries) {
        if (w.universe->level(e.value) != k)
            throw std::invalid_argument(
                "forest_to_tuple: every position must sit at the full depth");
        TupleDataWord::Entry entry;
        entry.letter = e.letter;
        for (DataValue anc : w.universe->ancestors(e.value)) {
            auto it = flat_of.find(anc);
            if (it == flat_of.end())
                it = flat_of
                         .emplace(anc,
                                  out.universe->fresh(w.universe->label(anc)))
                         .first;
            entry.values.push_back(it->second);
        }
        out.entries.push_back(std::move(entry));
    }
    return out;
}

bool ndcma_accepts_tuple(const Ndcma& a, const TupleDataWord& w)
{
    if (w.depth != a.level)
        throw std::invalid_argument(
            "ndcma_accepts_tuple: word depth differs from the machine level");
    return ndcma_accepts(a, tuple_to_forest(w));
}

} // namespace datamata
