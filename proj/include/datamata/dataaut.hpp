// dataaut.hpp - data automata, locally prefix-closed data automata, and
// k-nested data automata; membership semantics only.
#pragma once

#include "datamata/data.hpp"

#include <set>
#include <string>
#include <vector>

namespace datamata {

/// Letter-to-letter nondeterministic string transducer with accepting
/// states; the base automaton of a data automaton.
struct Transducer {
    std::vector<std::string> states;
    std::vector<std::string> input_alphabet;
    std::vector<std::string> output_alphabet;
    State initial = 0;
    std::set<State> accepting;

    struct Rule {
        State from = 0;
        std::string in;
        std::string out;
        State to = 0;
        friend auto operator<=>(const Rule&, const Rule&) = default;
    };
    std::vector<Rule> rules;

    void validate() const;
    /// All accepting-run outputs on `input`; exponential in general, meant
    /// for desk-scale words.
    std::vector<std::vector<std::string>>
    run_outputs(const std::vector<std::string>& input) const;

    friend bool operator==(const Transducer&, const Transducer&) = default;
};

/// Plain NFA, used as the class automaton.
struct Nfa {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    State initial = 0;
    std::set<State> accepting;

    struct Rule {
        State from = 0;
        std::string letter;
        State to = 0;
        friend auto operator<=>(const Rule&, const Rule&) = default;
    };
    std::vector<Rule> rules;

    void validate() const;
    bool accepts(const std::vector<std::string>& word) const;
    bool all_states_final() const;

    friend bool operator==(const Nfa&, const Nfa&) = default;
};

struct Da {
    Transducer base;
    Nfa cls;

    bool prefix_closed() const { return cls.all_states_final(); }
    void validate() const;

    friend bool operator==(const Da&, const Da&) = default;
};

struct Nda {
    Transducer base;
    std::vector<Nfa> cls; // one class automaton per level

    unsigned depth() const { return static_cast<unsigned>(cls.size()); }
    bool prefix_closed() const;
    void validate() const;

    friend bool operator==(const Nda&, const Nda&) = default;
};

/// Accepts when some accepting transducer run's output, restricted to each
/// data class, lies in the class language.
bool da_accepts(const Da& d, const DataWord& w);

/// Level-i classes are the positions agreeing on the first i data values.
bool nda_accepts(const Nda& d, const TupleDataWord& w);

} // namespace datamata
