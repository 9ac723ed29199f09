#include "datamata/dataaut.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace datamata {

void Transducer::validate() const
{
    if (initial >= states.size())
        throw std::invalid_argument("transducer: initial state out of range");
    for (State q : accepting)
        if (q >= states.size())
            throw std::invalid_argument(
                "transducer: accepting state out of range");
    for (const Rule& r : rules) {
        if (r.from >= states.size() || r.to >= states.size())
            throw std::invalid_argument(
                "transducer: rule state out of range");
        if (std::find(input_alphabet.begin(), input_alphabet.end(), r.in) ==
            input_alphabet.end())
            throw std::invalid_argument("transducer: unknown input letter '" +
                                        r.in + "'");
        if (std::find(output_alphabet.begin(), output_alphabet.end(),
                      r.out) == output_alphabet.end())
            throw std::invalid_argument("transducer: unknown output letter '" +
                                        r.out + "'");
    }
}

namespace {

void collect_outputs(const Transducer& t,
                     const std::vector<std::string>& input, std::size_t pos,
                     State state, std::vector<std::string>& current,
                     std::vector<std::vector<std::string>>& out)
{
    if (pos == input.size()) {
        if (t.accepting.count(state))
            out.push_back(current);
        return;
    }
    for (const Transducer::Rule& r : t.rules) {
        if (r.from != state || r.in != input[pos])
            continue;
        current.push_back(r.out);
        collect_outputs(t, input, pos + 1, r.to, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<std::vector<std::string>>
Transducer::run_outputs(const std::vector<std::string>& input) const
{
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> current;
    collect_outputs(*this, input, 0, initial, current, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void Nfa::validate() const
{
    if (initial >= states.size())
        throw std::invalid_argument("nfa: initial state out of range");
    for (State q : accepting)
        if (q >= states.size())
            throw std::invalid_argument("nfa: accepting state out of range");
    for (const Rule& r : rules) {
        if (r.from >= states.size() || r.to >= states.size())
            throw std::invalid_argument("nfa: rule state out of range");
        if (std::find(alphabet.begin(), alphabet.end(), r.letter) ==
            alphabet.end())
            throw std::invalid_argument("nfa: unknown letter '" + r.letter +
                                        "'");
    }
}

bool Nfa::accepts(const std::vector<std::string>& word) const
{
    std::set<State> layer{initial};
    for (const std::string& a : word) {
        std::set<State> next;
        for (const Rule& r : rules)
            if (layer.count(r.from) && r.letter == a)
                next.insert(r.to);
        layer = std::move(next);
        if (layer.empty())
            return false;
    }
    for (State q : layer)
        if (accepting.count(q))
            return true;
    return false;
}

bool Nfa::all_states_final() const
{
    return accepting.size() == states.size();
}

void Da::validate() const
{
    base.validate();
    cls.validate();
}

bool Nda::prefix_closed() const
{
    for (const Nfa& b : cls)
        if (!b.all_states_final())
            return false;
    return true;
}

void Nda::validate() const
{
    base.validate();
    if (cls.empty())
        throw std::invalid_argument("nda: at least one class automaton");
    for (const Nfa& b : cls)
        b.validate();
}

bool da_accepts(const Da& d, const DataWord& w)
{
    w.validate();
    for (const auto& output : d.base.run_outputs(w.str())) {
        std::map<DataValue, std::vector<std::string>> classes;
        for (std::size_t i = 0; i < w.entries.size(); ++i)
            classes[w.entries[i].value].push_back(output[i]);
        bool ok = true;
        for (auto& [value, word] : classes)
            if (!d.cls.accepts(word)) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    }
    return false;
}

bool nda_accepts(const Nda& d, const TupleDataWord& w)
{
    w.validate();
    if (w.depth != d.depth())
        throw std::invalid_argument(
            "nda_accepts: word depth differs from the automaton's");
    std::vector<std::string> str;
    for (const auto& e : w.entries)
        str.push_back(e.letter);
    for (const auto& output : d.base.run_outputs(str)) {
        bool ok = true;
        for (unsigned level = 1; level <= d.depth() && ok; ++level) {
            // positions agreeing on the first `level` data values
            std::map<std::vector<DataValue>, std::vector<std::string>> classes;
            for (std::size_t i = 0; i < w.entries.size(); ++i) {
                std::vector<DataValue> prefix(
                    w.entries[i].values.begin(),
                    w.entries[i].values.begin() + level);
                classes[prefix].push_back(output[i]);
            }
            for (auto& [prefix, word] : classes)
                if (!d.cls[level - 1].accepts(word)) {
                    ok = false;
                    break;
                }
        }
        if (ok)
            return true;
    }
    return false;
}

} // namespace datamata
