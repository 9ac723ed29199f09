#include "datamata/homca.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace datamata {

const char* const kSilentLetter = "tau";

NestedMultiset NestedMultiset::empty(unsigned level)
{
    NestedMultiset m;
    m.level = level;
    return m;
}

void NestedMultiset::insert_letter(unsigned id)
{
    letters.insert(std::upper_bound(letters.begin(), letters.end(), id), id);
}

bool NestedMultiset::remove_letter(unsigned id)
{
    auto it = std::lower_bound(letters.begin(), letters.end(), id);
    if (it == letters.end() || *it != id)
        return false;
    letters.erase(it);
    return true;
}

void NestedMultiset::insert_element(NestedMultiset m)
{
    auto it = std::upper_bound(elements.begin(), elements.end(), m);
    elements.insert(it, std::move(m));
}

bool NestedMultiset::hereditarily_empty() const
{
    if (!letters.empty())
        return false;
    for (const NestedMultiset& e : elements)
        if (!e.hereditarily_empty())
            return false;
    return true;
}

std::size_t NestedMultiset::weight() const
{
    std::size_t w = 1 + letters.size();
    for (const NestedMultiset& e : elements)
        w += e.weight();
    return w;
}

std::strong_ordering
NestedMultiset::operator<=>(const NestedMultiset& other) const
{
    if (auto c = level <=> other.level; c != 0)
        return c;
    if (auto c = std::lexicographical_compare_three_way(
            letters.begin(), letters.end(), other.letters.begin(),
            other.letters.end());
        c != 0)
        return c;
    return std::lexicographical_compare_three_way(
        elements.begin(), elements.end(), other.elements.begin(),
        other.elements.end());
}

HomcaOp op_make(unsigned i) { return HomcaOp{HomcaOpKind::make, i, ""}; }
HomcaOp op_inc(std::string letter)
{
    return HomcaOp{HomcaOpKind::inc, 0, std::move(letter)};
}
HomcaOp op_dec(std::string letter)
{
    return HomcaOp{HomcaOpKind::dec, 0, std::move(letter)};
}
HomcaOp op_store(unsigned i) { return HomcaOp{HomcaOpKind::store, i, ""}; }
HomcaOp op_load(unsigned i) { return HomcaOp{HomcaOpKind::load, i, ""}; }
HomcaOp op_nop() { return HomcaOp{}; }

void Homca::validate() const
{
    if (level < 1)
        throw std::invalid_argument("homca: level must be positive");
    if (initial >= states.size())
        throw std::invalid_argument("homca: initial state out of range");
    for (State q : accepting)
        if (q >= states.size())
            throw std::invalid_argument("homca: accepting state out of range");
    for (const HomcaTransition& t : delta) {
        if (t.from >= states.size() || t.to >= states.size())
            throw std::invalid_argument("homca: transition state out of "
                                        "range");
        if (t.input && std::find(alphabet.begin(), alphabet.end(),
                                 *t.input) == alphabet.end())
            throw std::invalid_argument("homca: unknown input letter '" +
                                        *t.input + "'");
        switch (t.op.kind) {
        case HomcaOpKind::make:
            if (t.op.index < 1 || t.op.index > level)
                throw std::invalid_argument("homca: new_i with i outside "
                                            "1..level");
            break;
        case HomcaOpKind::store:
        case HomcaOpKind::load:
            if (t.op.index < 1 || t.op.index >= level)
                throw std::invalid_argument(
                    "homca: store/load index must lie below the level");
            break;
        case HomcaOpKind::inc:
        case HomcaOpKind::dec:
            if (std::find(multiset_alphabet.begin(), multiset_alphabet.end(),
                          t.op.letter) == multiset_alphabet.end())
                throw std::invalid_argument("homca: unknown multiset letter "
                                            "'" + t.op.letter + "'");
            break;
        case HomcaOpKind::nop:
            break;
        }
    }
}

State Homca::add_state(const std::string& name)
{
    states.push_back(name);
    return static_cast<State>(states.size() - 1);
}

unsigned Homca::letter_id(const std::string& letter) const
{
    auto it = std::find(multiset_alphabet.begin(), multiset_alphabet.end(),
                        letter);
    if (it == multiset_alphabet.end())
        throw std::invalid_argument("homca: unknown multiset letter '" +
                                    letter + "'");
    return static_cast<unsigned>(it - multiset_alphabet.begin());
}

std::size_t HomcaConfiguration::weight() const
{
    std::size_t w = 0;
    for (const auto& s : slots)
        if (s)
            w += s->weight();
    return w;
}

std::strong_ordering
HomcaConfiguration::operator<=>(const HomcaConfiguration& other) const
{
    if (auto c = control <=> other.control; c != 0)
        return c;
    auto cmp = [](const std::optional<NestedMultiset>& a,
                  const std::optional<NestedMultiset>& b) {
        if (a.has_value() != b.has_value())
            return a.has_value() <=> b.has_value();
        if (!a)
            return std::strong_ordering::equal;
        return *a <=> *b;
    };
    if (auto c = slots.size() <=> other.slots.size(); c != 0)
        return c;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (auto c = cmp(slots[i], other.slots[i]); c != 0)
            return c;
    return std::strong_ordering::equal;
}

namespace {

void check_cut_invariant(const Homca& m, const HomcaConfiguration& c)
{
    if (!m.prime)
        return;
    bool seen_defined = false;
    for (unsigned j = 1; j <= m.level; ++j) {
        bool defined = c.slots[j - 1].has_value();
        if (seen_defined && !defined)
            throw std::logic_error(
                "homca: cut invariant violated in a restricted machine");
        seen_defined = seen_defined || defined;
    }
}

} // namespace

std::vector<HomcaConfiguration> homca_apply(const Homca& m,
                                            const HomcaConfiguration& c,
                                            const HomcaOp& op)
{
    unsigned k = m.level;
    std::vector<HomcaConfiguration> out;
    auto defined = [&](unsigned i) { return c.slots[i - 1].has_value(); };

    switch (op.kind) {
    case HomcaOpKind::nop: {
        out.push_back(c);
        break;
    }
    case HomcaOpKind::make: {
        unsigned i = op.index;
        if (defined(i))
            break;
        if (m.prime) {
            bool ok = true;
            for (unsigned j = i + 1; j <= k; ++j)
                ok = ok && defined(j);
            for (unsigned j = 1; j < i; ++j)
                ok = ok && !defined(j);
            if (!ok)
                break;
        }
        HomcaConfiguration n = c;
        n.slots[i - 1] = NestedMultiset::empty(i);
        out.push_back(std::move(n));
        break;
    }
    case HomcaOpKind::inc: {
        if (!defined(1))
            break;
        HomcaConfiguration n = c;
        n.slots[0]->insert_letter(m.letter_id(op.letter));
        out.push_back(std::move(n));
        break;
    }
    case HomcaOpKind::dec: {
        if (!defined(1))
            break;
        HomcaConfiguration n = c;
        if (!n.slots[0]->remove_letter(m.letter_id(op.letter)))
            break;
        out.push_back(std::move(n));
        break;
    }
    case HomcaOpKind::store: {
        unsigned i = op.index;
        if (!defined(i) || !defined(i + 1))
            break;
        if (m.prime) {
            bool ok = true;
            for (unsigned j = 1; j < i; ++j)
                ok = ok && !defined(j);
            if (!ok)
                break;
        }
        HomcaConfiguration n = c;
        n.slots[i]->insert_element(std::move(*n.slots[i - 1]));
        n.slots[i - 1].reset();
        out.push_back(std::move(n));
        break;
    }
    case HomcaOpKind::load: {
        unsigned i = op.index;
        if (!defined(i + 1))
            break;
        bool ok = true;
        for (unsigned j = 1; j <= i; ++j)
            ok = ok && !defined(j);
        if (!ok)
            break;
        const auto& pool = c.slots[i]->elements;
        for (std::size_t e = 0; e < pool.size(); ++e) {
            if (e > 0 && pool[e] == pool[e - 1])
                continue; // identical elements load identically
            HomcaConfiguration n = c;
            n.slots[i - 1] = n.slots[i]->elements[e];
            n.slots[i]->elements.erase(n.slots[i]->elements.begin() +
                                       static_cast<std::ptrdiff_t>(e));
            out.push_back(std::move(n));
        }
        break;
    }
    }
    for (const HomcaConfiguration& n : out)
        check_cut_invariant(m, n);
    return out;
}

namespace {

using Layer = std::set<HomcaConfiguration>;

Layer eps_closure(const Homca& m, const Layer& entry,
                  std::optional<unsigned> override_budget)
{
    std::size_t max_weight = 0;
    for (const HomcaConfiguration& c : entry)
        max_weight = std::max(max_weight, c.weight());
    unsigned base = std::max<unsigned>(
        8, static_cast<unsigned>(m.multiset_alphabet.size()) *
               std::max(1u, m.level));
    unsigned budget = override_budget
                          ? *override_budget
                          : base * static_cast<unsigned>(max_weight + 1);

    std::map<HomcaConfiguration, unsigned> best;
    std::deque<std::pair<HomcaConfiguration, unsigned>> frontier;
    for (const HomcaConfiguration& c : entry) {
        best[c] = 0;
        frontier.emplace_back(c, 0);
    }
    while (!frontier.empty()) {
        auto [c, used] = frontier.front();
        frontier.pop_front();
        if (used >= budget)
            continue;
        for (const HomcaTransition& t : m.delta) {
            if (t.input || t.from != c.control)
                continue;
            for (HomcaConfiguration& n : homca_apply(m, c, t.op)) {
                n.control = t.to;
                auto it = best.find(n);
                if (it != best.end() && it->second <= used + 1)
                    continue;
                best[n] = used + 1;
                frontier.emplace_back(std::move(n), used + 1);
            }
        }
    }
    Layer out;
    for (auto& [c, used] : best)
        out.insert(c);
    return out;
}

} // namespace

bool homca_accepts(const Homca& m, const std::vector<std::string>& word,
                   std::optional<unsigned> eps_budget)
{
    m.validate();
    HomcaConfiguration init;
    init.control = m.initial;
    init.slots.assign(m.level, std::nullopt);

    Layer layer = eps_closure(m, {init}, eps_budget);
    for (const std::string& a : word) {
        Layer next;
        for (const HomcaConfiguration& c : layer) {
            for (const HomcaTransition& t : m.delta) {
                if (!t.input || *t.input != a || t.from != c.control)
                    continue;
                for (HomcaConfiguration& n : homca_apply(m, c, t.op)) {
                    n.control = t.to;
                    next.insert(std::move(n));
                }
            }
        }
        layer = eps_closure(m, next, eps_budget);
        if (layer.empty())
            return false;
    }
    for (const HomcaConfiguration& c : layer) {
        if (!m.accepting.count(c.control))
            continue;
        if (m.weak)
            return true;
        bool empty = true;
        for (const auto& s : c.slots)
            if (s && !s->hereditarily_empty())
                empty = false;
        if (empty)
            return true;
    }
    return false;
}

Homca homca_prime_to_homca(const Homca& m)
{
    if (!m.prime)
        throw std::invalid_argument(
            "homca_prime_to_homca: input must carry the side-conditions");
    unsigned k = m.level;
    unsigned patterns = 1u << k;

    Homca out;
    out.level = k;
    out.alphabet = m.alphabet;
    out.multiset_alphabet = m.multiset_alphabet;
    out.prime = false;
    out.weak = m.weak;
    auto pack = [&](State q, unsigned d) {
        return static_cast<State>(q * patterns + d);
    };
    for (State q = 0; q < m.states.size(); ++q)
        for (unsigned d = 0; d < patterns; ++d) {
            std::string name = m.states[q] + "&";
            for (unsigned j = 1; j <= k; ++j)
                if (d & (1u << (j - 1)))
                    name += std::to_string(j);
            out.add_state(name);
        }
    out.initial = pack(m.initial, 0);
    for (State q : m.accepting)
        for (unsigned d = 0; d < patterns; ++d)
            out.accepting.insert(pack(q, d));

    auto has = [](unsigned d, unsigned j) { return (d >> (j - 1)) & 1u; };
    for (const HomcaTransition& t : m.delta) {
        for (unsigned d = 0; d < patterns; ++d) {
            bool ok = true;
            unsigned d2 = d;
            switch (t.op.kind) {
            case HomcaOpKind::make: {
                unsigned i = t.op.index;
                ok = !has(d, i);
                for (unsigned j = i + 1; j <= k; ++j)
                    ok = ok && has(d, j);
                for (unsigned j = 1; j < i; ++j)
                    ok = ok && !has(d, j);
                d2 = d | (1u << (i - 1));
                break;
            }
            case HomcaOpKind::store: {
                unsigned i = t.op.index;
                ok = has(d, i) && has(d, i + 1);
                for (unsigned j = 1; j < i; ++j)
                    ok = ok && !has(d, j);
                d2 = d & ~(1u << (i - 1));
                break;
            }
            case HomcaOpKind::load: {
                unsigned i = t.op.index;
                ok = has(d, i + 1);
                for (unsigned j = 1; j <= i; ++j)
                    ok = ok && !has(d, j);
                d2 = d | (1u << (i - 1));
                break;
            }
            case HomcaOpKind::inc:
            case HomcaOpKind::dec:
                ok = has(d, 1);
                break;
            case HomcaOpKind::nop:
                break;
            }
            if (!ok)
                continue;
            out.delta.push_back(HomcaTransition{pack(t.from, d), t.input,
                                                t.op, pack(t.to, d2)});
        }
    }
    return out;
}

namespace {

/// Linear chains of counter operations through fresh states.
struct ChainBuilder {
    Homca& out;
    unsigned counter = 0;

    State fresh()
    {
        return out.add_state("t" + std::to_string(counter++));
    }

    /// First hop carries `input`, the rest are epsilon.
    void chain(State from, std::optional<std::string> input,
               const std::vector<HomcaOp>& ops, State to)
    {
        if (ops.empty()) {
            out.delta.push_back(
                HomcaTransition{from, std::move(input), op_nop(), to});
            return;
        }
        State cur = from;
        for (std::size_t i = 0; i < ops.size(); ++i) {
            State nxt = i + 1 == ops.size() ? to : fresh();
            out.delta.push_back(HomcaTransition{
                cur, i == 0 ? input : std::nullopt, ops[i], nxt});
            cur = nxt;
        }
    }
};

// tag letters for the fold-and-unfold simulation
const char* kAct1 = "act_1";
const char* kInact1 = "inact_1";
const char* kMf1 = "mf_1";
const char* kMt1 = "mt_1";
const char* kCur1 = "cur_1";
const char* kAct2 = "act_2";
const char* kGhost2 = "ghost_2";
const char* kMf2 = "mf_2";
const char* kMt2 = "mt_2";

Homca to_prime_level3(const Homca& m)
{
    unsigned k = m.level; // 2 or 3
    unsigned patterns = 1u << k;
    bool tagged = k == 3;

    Homca out;
    out.level = k;
    out.alphabet = m.alphabet;
    out.multiset_alphabet = m.multiset_alphabet;
    if (tagged)
        for (const char* t : {kAct1, kInact1, kMf1, kMt1, kCur1, kAct2,
                              kGhost2, kMf2, kMt2})
            out.multiset_alphabet.push_back(t);
    out.prime = true;
    out.weak = m.weak;

    auto has = [](unsigned d, unsigned j) { return (d >> (j - 1)) & 1u; };
    auto pack_name = [&](State q, unsigned d) {
        std::string name = m.states[q] + "&";
        for (unsigned j = 1; j <= k; ++j)
            if (has(d, j))
                name += std::to_string(j);
        return name;
    };
    for (State q = 0; q < m.states.size(); ++q)
        for (unsigned d = 0; d < patterns; ++d)
            out.add_state(pack_name(q, d));
    auto pack = [&](State q, unsigned d) {
        return static_cast<State>(q * patterns + d);
    };

    ChainBuilder b{out};
    State start = b.fresh();
    out.initial = start;
    State clean = b.fresh();
    out.accepting = {clean};

    // eagerly create the top slot (and at level 3 a ghost middle slot) so
    // lower slots can always be made
    if (k == 2) {
        b.chain(start, std::nullopt, {op_make(2)}, pack(m.initial, 0));
    } else {
        b.chain(start, std::nullopt,
                {op_make(3), op_make(2), op_make(1), op_inc(kGhost2),
                 op_store(1)},
                pack(m.initial, 0));
    }

    for (State q : m.accepting)
        for (unsigned d = 0; d < patterns; ++d)
            b.chain(pack(q, d), std::nullopt, {op_nop()}, clean);
    if (tagged) {
        // dismantle any tag letters left in the nesting
        for (unsigned j = 1; j < k; ++j) {
            b.chain(clean, std::nullopt, {op_load(j)}, clean);
            b.chain(clean, std::nullopt, {op_store(j)}, clean);
        }
        for (const char* t : {kAct1, kInact1, kMf1, kMt1, kCur1, kAct2,
                              kGhost2, kMf2, kMt2})
            b.chain(clean, std::nullopt, {op_dec(t)}, clean);
    }

    for (const HomcaTransition& t : m.delta) {
        for (unsigned d = 0; d < patterns; ++d) {
            // base-machine definedness gating
            auto emit = [&](const std::vector<HomcaOp>& ops, unsigned d2) {
                b.chain(pack(t.from, d), t.input, ops, pack(t.to, d2));
            };
            switch (t.op.kind) {
            case HomcaOpKind::nop:
                emit({op_nop()}, d);
                break;
            case HomcaOpKind::inc:
                if (has(d, 1))
                    emit({op_inc(t.op.letter)}, d);
                break;
            case HomcaOpKind::dec:
                if (has(d, 1))
                    emit({op_dec(t.op.letter)}, d);
                break;
            case HomcaOpKind::make: {
                unsigned i = t.op.index;
                if (has(d, i))
                    break;
                unsigned d2 = d | (1u << (i - 1));
                if (i == k) {
                    emit({op_nop()}, d2); // created eagerly at start
                } else if (k == 2) {
                    // i == 1; the top slot exists from the start
                    emit({op_make(1)}, d2);
                } else if (i == 1) {
                    emit({op_make(1), op_inc(kAct1)}, d2);
                } else { // i == 2, k == 3: the ghost slot becomes real
                    if (!has(d, 1)) {
                        emit({op_load(1), op_dec(kGhost2), op_inc(kAct2),
                              op_store(1)},
                             d2);
                    } else {
                        emit({op_dec(kAct1), op_inc(kCur1), op_store(1),
                              op_load(1), op_dec(kGhost2), op_inc(kAct2),
                              op_store(1), op_load(1), op_dec(kCur1),
                              op_inc(kAct1)},
                             d2);
                    }
                }
                break;
            }
            case HomcaOpKind::store: {
                unsigned i = t.op.index;
                if (!has(d, i) || !has(d, i + 1))
                    break;
                unsigned d2 = d & ~(1u << (i - 1));
                if (k == 2 || i == 1) {
                    emit({op_store(i)}, d2);
                    break;
                }
                // k == 3, i == 2
                if (!has(d, 1)) {
                    emit({op_store(2), op_make(2), op_make(1),
                          op_inc(kGhost2), op_store(1)},
                         d2);
                    break;
                }
                // fold-and-unfold: copy the open bottom multiset under a
                // fresh ghost, one letter per round
                State head = b.fresh();
                b.chain(pack(t.from, d), t.input,
                        {op_dec(kAct1), op_inc(kMf1), op_store(1),
                         op_load(1), op_dec(kAct2), op_inc(kMf2),
                         op_store(1), op_store(2),
                         op_make(2), op_make(1), op_inc(kMt2), op_store(1),
                         op_make(1), op_inc(kMt1),
                         op_store(1), op_store(2),
                         op_load(2), op_load(1), op_dec(kMf2), op_inc(kMf2),
                         op_store(1),
                         op_load(1), op_dec(kMf1), op_inc(kMf1)},
                        head);
                for (const std::string& letter : m.multiset_alphabet)
                    b.chain(head, std::nullopt,
                            {op_dec(letter), op_store(1), op_store(2),
                             op_load(2), op_load(1), op_dec(kMt2),
                             op_inc(kMt2), op_store(1),
                             op_load(1), op_dec(kMt1), op_inc(kMt1),
                             op_inc(letter), op_store(1), op_store(2),
                             op_load(2), op_load(1), op_dec(kMf2),
                             op_inc(kMf2), op_store(1),
                             op_load(1), op_dec(kMf1), op_inc(kMf1)},
                            head);
                b.chain(head, std::nullopt,
                        {op_dec(kMf1), op_inc(kInact1), op_store(1),
                         op_load(1), op_dec(kMf2), op_inc(kAct2),
                         op_store(1), op_store(2),
                         op_load(2), op_load(1), op_dec(kMt2),
                         op_inc(kGhost2), op_store(1),
                         op_load(1), op_dec(kMt1), op_inc(kAct1)},
                        pack(t.to, d2));
                break;
            }
            case HomcaOpKind::load: {
                unsigned i = t.op.index;
                unsigned d2 = d | (1u << (i - 1));
                bool below_clear = true;
                for (unsigned j = 1; j <= i; ++j)
                    below_clear = below_clear && !has(d, j);
                if (!below_clear || !has(d, i + 1))
                    break;
                if (k == 2 || i == 1) {
                    if (k == 3 && i == 1)
                        emit({op_load(1), op_dec(kAct1), op_inc(kAct1)}, d2);
                    else
                        emit({op_load(i)}, d2);
                    break;
                }
                // k == 3, i == 2: park the ghost, fetch a real multiset
                emit({op_store(2), op_load(2), op_load(1), op_dec(kAct2),
                      op_inc(kAct2), op_store(1)},
                     d2);
                break;
            }
            }
        }
    }
    return out;
}

} // namespace

Homca homca_to_homca_prime(const Homca& m)
{
    m.validate();
    if (m.prime)
        throw std::invalid_argument(
            "homca_to_homca_prime: input already restricted");
    if (m.level > 3)
        throw std::invalid_argument(
            "homca_to_homca_prime: construction available up to level 3");
    if (m.level == 1) {
        Homca out = m;
        out.prime = true; // the side-conditions are vacuous at level 1
        return out;
    }
    return to_prime_level3(m);
}

namespace {

std::string tag_letter(const std::string& state, unsigned level)
{
    return state + "@" + std::to_string(level);
}

} // namespace

Homca ndcma_to_homca_prime(const Ndcma& a)
{
    a.validate();
    SugaredNdcma s = sugar_of_plain(a);
    unsigned k = a.level;

    Homca out;
    out.level = k;
    out.alphabet = a.alphabet;
    out.prime = true;
    out.weak = a.is_weak();
    for (State q = 0; q < s.states.size(); ++q)
        for (unsigned j = 0; j <= k; ++j)
            out.multiset_alphabet.push_back(tag_letter(s.states[q], j));

    for (State q = 0; q < s.states.size(); ++q)
        out.add_state(s.states[q]);
    out.initial = s.initial;
    ChainBuilder b{out};
    State final = b.fresh();
    out.accepting = {final};

    for (auto& [key, targets] : s.delta) {
        for (const SugaredTarget& t : targets) {
            std::vector<HomcaOp> ops;
            // root bookkeeping
            if (!key.guard[0]) {
                for (unsigned j = k; j >= 1; --j)
                    ops.push_back(op_make(j));
                ops.push_back(op_inc(tag_letter(s.states[t.writes[0]], 0)));
                for (unsigned j = 1; j < k; ++j)
                    ops.push_back(op_store(j));
            } else {
                for (unsigned j = k; j-- > 1;)
                    ops.push_back(op_load(j));
                ops.push_back(
                    op_dec(tag_letter(s.states[*key.guard[0]], 0)));
                ops.push_back(op_inc(tag_letter(s.states[t.writes[0]], 0)));
                for (unsigned j = 1; j < k; ++j)
                    ops.push_back(op_store(j));
            }
            // open, check and update each ancestor down to the read value
            for (unsigned j = 1; j <= key.level; ++j) {
                if (j < k) {
                    unsigned slot = k - j;
                    ops.push_back(key.guard[j] ? op_load(slot)
                                               : op_make(slot));
                    for (unsigned x = slot; x-- > 1;)
                        ops.push_back(key.guard[j] ? op_load(x)
                                                   : op_make(x));
                    if (key.guard[j])
                        ops.push_back(op_dec(
                            tag_letter(s.states[*key.guard[j]], j)));
                    ops.push_back(
                        op_inc(tag_letter(s.states[t.writes[j]], j)));
                    for (unsigned x = 1; x < slot; ++x)
                        ops.push_back(op_store(x));
                } else { // the read value itself is a letter
                    if (key.guard[j])
                        ops.push_back(op_dec(
                            tag_letter(s.states[*key.guard[j]], j)));
                    ops.push_back(
                        op_inc(tag_letter(s.states[t.writes[j]], j)));
                }
            }
            unsigned innermost = k - std::min(key.level, k - 1);
            for (unsigned x = innermost; x < k; ++x)
                ops.push_back(op_store(x));
            b.chain(key.from, key.letter, ops, t.to);
        }
    }

    for (State q : s.globally_accepting)
        b.chain(q, std::nullopt, {op_nop()}, final);
    for (unsigned j = 1; j < k; ++j) {
        b.chain(final, std::nullopt, {op_load(j)}, final);
        b.chain(final, std::nullopt, {op_store(j)}, final);
    }
    for (State q : s.locally_accepting)
        for (unsigned j = 0; j <= k; ++j)
            b.chain(final, std::nullopt,
                    {op_dec(tag_letter(s.states[q], j))}, final);
    return out;
}

SugaredNdcma homca_prime_to_ndcma(const Homca& m)
{
    m.validate();
    if (!m.prime)
        throw std::invalid_argument(
            "homca_prime_to_ndcma: input must carry the side-conditions");
    unsigned k = m.level;

    SugaredNdcma out;
    out.level = k;
    out.alphabet = m.alphabet;
    bool needs_silent = false;
    for (const HomcaTransition& t : m.delta)
        needs_silent = needs_silent || !t.input;
    if (needs_silent)
        out.alphabet.push_back(kSilentLetter);

    for (State q = 0; q < m.states.size(); ++q)
        out.add_state(m.states[q]);
    std::map<std::string, State> value_state;
    for (const std::string& b : m.multiset_alphabet)
        value_state[b] = out.add_state("v:" + b);
    std::vector<State> lvl(k + 1);
    for (unsigned j = 1; j <= k; ++j)
        lvl[j] = out.add_state("lvl" + std::to_string(j));
    State undef = out.add_state("undef");
    State open = out.add_state("open");
    State stored = out.add_state("stored");
    State dead = out.add_state("dead");

    out.initial = m.initial;
    out.globally_accepting = m.accepting;
    if (m.weak) {
        for (State q = 0; q < out.states.size(); ++q)
            out.locally_accepting.insert(q);
    } else {
        out.locally_accepting.insert(undef);
        out.locally_accepting.insert(open);
        out.locally_accepting.insert(stored);
        out.locally_accepting.insert(dead);
        for (unsigned j = 1; j <= k; ++j)
            out.locally_accepting.insert(lvl[j]);
        // accepting controls never label a memory entry (writes use the
        // marker states only), but F_G within F_L still needs them listed
        for (State q : m.accepting)
            out.locally_accepting.insert(q);
    }

    auto add = [&](State from, const std::string& letter, unsigned level,
                   std::vector<std::optional<State>> guard, State to,
                   std::vector<State> writes) {
        SugaredKey key;
        key.from = from;
        key.letter = letter;
        key.level = level;
        key.guard = std::move(guard);
        SugaredTarget t;
        t.to = to;
        t.writes = std::move(writes);
        out.delta[key].insert(std::move(t));
    };

    for (const HomcaTransition& t : m.delta) {
        std::string letter = t.input ? *t.input : kSilentLetter;
        switch (t.op.kind) {
        case HomcaOpKind::make: {
            unsigned i = t.op.index;
            if (i == k) {
                // nothing was defined: a sacrificial fresh read flips the
                // root marker
                add(t.from, letter, 1, {std::nullopt, std::nullopt}, t.to,
                    {lvl[k], dead});
                add(t.from, letter, 1, {undef, std::nullopt}, t.to,
                    {lvl[k], dead});
            } else {
                unsigned depth = k - i;
                std::vector<std::optional<State>> guard{lvl[i + 1]};
                std::vector<State> writes{lvl[i]};
                for (unsigned j = 1; j < depth; ++j) {
                    guard.emplace_back(open);
                    writes.push_back(open);
                }
                guard.emplace_back(std::nullopt);
                writes.push_back(open);
                add(t.from, letter, depth, std::move(guard), t.to,
                    std::move(writes));
            }
            break;
        }
        case HomcaOpKind::inc:
        case HomcaOpKind::dec: {
            std::vector<std::optional<State>> guard{lvl[1]};
            std::vector<State> writes{lvl[1]};
            for (unsigned j = 1; j < k; ++j) {
                guard.emplace_back(open);
                writes.push_back(open);
            }
            if (t.op.kind == HomcaOpKind::inc) {
                guard.emplace_back(std::nullopt);
                writes.push_back(value_state.at(t.op.letter));
            } else {
                guard.emplace_back(value_state.at(t.op.letter));
                writes.push_back(dead);
            }
            add(t.from, letter, k, std::move(guard), t.to,
                std::move(writes));
            break;
        }
        case HomcaOpKind::store:
        case HomcaOpKind::load: {
            unsigned i = t.op.index;
            unsigned depth = k - i;
            bool is_store = t.op.kind == HomcaOpKind::store;
            std::vector<std::optional<State>> guard{
                lvl[is_store ? i : i + 1]};
            std::vector<State> writes{lvl[is_store ? i + 1 : i]};
            for (unsigned j = 1; j < depth; ++j) {
                guard.emplace_back(open);
                writes.push_back(open);
            }
            guard.emplace_back(is_store ? open : stored);
            writes.push_back(is_store ? stored : open);
            add(t.from, letter, depth, std::move(guard), t.to,
                std::move(writes));
            break;
        }
        case HomcaOpKind::nop: {
            add(t.from, letter, 1, {std::nullopt, std::nullopt}, t.to,
                {undef, dead});
            add(t.from, letter, 1, {undef, std::nullopt}, t.to,
                {undef, dead});
            for (unsigned j = 1; j <= k; ++j)
                add(t.from, letter, 1, {lvl[j], std::nullopt}, t.to,
                    {lvl[j], dead});
            break;
        }
        }
    }
    return out;
}

} // namespace datamata
