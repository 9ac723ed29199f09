// cma.hpp - class memory automata: general, weak, deterministic; run
// semantics and Boolean operations on deterministic weak machines.
#pragma once

#include "datamata/data.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace datamata {

struct CmaKey {
    State from = 0;
    std::string letter;
    std::optional<State> memory; // nullopt = bot (fresh value)
    friend auto operator<=>(const CmaKey&, const CmaKey&) = default;
};

/// A class memory automaton <Q, Sigma, q0, delta, F_L, F_G>. Silent
/// (control-only) transitions are admitted on top of the base model; they
/// touch no data value and are eliminable by closure.
struct Cma {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    State initial = 0;
    std::set<State> locally_accepting;
    std::set<State> globally_accepting;
    std::map<CmaKey, std::set<State>> delta;
    std::set<std::pair<State, State>> silent;

    std::size_t state_count() const { return states.size(); }
    bool is_weak() const;
    bool is_deterministic() const;
    /// Every (q, a, s) combination has at least one successor.
    bool is_complete() const;
    bool same_alphabet(const Cma& other) const;
    void validate() const;

    State add_state(const std::string& name);
    void add_transition(State from, const std::string& letter,
                        std::optional<State> memory, State to);

    friend bool operator==(const Cma&, const Cma&) = default;
};

struct CmaConfiguration {
    State control = 0;
    ClassMemoryFunction memory;
    friend auto operator<=>(const CmaConfiguration&,
                            const CmaConfiguration&) = default;
};

struct CmaRunStep {
    bool silent = false;
    std::string letter;
    DataValue value;
    CmaConfiguration after;
};

/// Successors of a configuration on one input; silent successors are not
/// included (membership applies silent closure separately).
std::vector<CmaConfiguration> cma_step(const Cma& a, const CmaConfiguration& c,
                                       const std::string& letter,
                                       DataValue value);

/// Exhaustive search over the configurations reachable on `w`; returns a
/// witness run when the word is accepted.
std::optional<std::vector<CmaRunStep>> cma_find_run(const Cma& a,
                                                    const DataWord& w);
bool cma_accepts(const Cma& a, const DataWord& w);

bool cma_configuration_accepting(const Cma& a, const CmaConfiguration& c);

/// Language-preserving removal of silent transitions (forward closure into
/// the read transitions and into the globally accepting set).
Cma eliminate_silent(const Cma& a);

enum class BooleanMode { intersection, union_ };

/// Pair-state product. Intersection works for arbitrary machines over the
/// same alphabet; union requires deterministic complete weak inputs.
Cma product(const Cma& a, const Cma& b, BooleanMode mode);

/// Adds a rejecting sink so that every (q, a, s) has exactly one successor.
Cma complete(const Cma& a);

/// DFA-style complement; input must be deterministic, weak and complete.
Cma complement_dwcma(const Cma& a);

/// Structural isomorphism up to state renaming (exact, for small machines).
bool cma_isomorphic(const Cma& a, const Cma& b);

} // namespace datamata
