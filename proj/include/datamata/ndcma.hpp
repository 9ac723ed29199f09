// ndcma.hpp - nested-data class memory automata: forest presentation,
// level-tuple presentation, the sugared presentation with per-ancestor
// writes, and Boolean operations on deterministic weak machines.
#pragma once

#include "datamata/cma.hpp"
#include "datamata/data.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace datamata {

/// Guard components run from the level-1 ancestor down to the read value.
struct NdcmaKey {
    State from = 0;
    std::string letter;
    unsigned level = 1;
    std::vector<std::optional<State>> guard; // size == level
    friend auto operator<=>(const NdcmaKey&, const NdcmaKey&) = default;
};

struct Ndcma {
    unsigned level = 1;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    State initial = 0;
    std::set<State> locally_accepting;
    std::set<State> globally_accepting;
    std::map<NdcmaKey, std::set<State>> delta;

    bool is_weak() const { return locally_accepting.size() == states.size(); }
    bool is_deterministic() const;
    void validate() const;

    State add_state(const std::string& name);
    void add_transition(State from, const std::string& letter,
                        std::vector<std::optional<State>> guard, State to);

    friend bool operator==(const Ndcma&, const Ndcma&) = default;
};

/// Sugared presentation: guards and writes carry one extra slot for the
/// level-0 root, and every ancestor's new memory is chosen individually.
struct SugaredKey {
    State from = 0;
    std::string letter;
    unsigned level = 1;
    std::vector<std::optional<State>> guard; // size == level + 1, root first
    friend auto operator<=>(const SugaredKey&, const SugaredKey&) = default;
};

struct SugaredTarget {
    State to = 0;
    std::vector<State> writes; // size == level + 1, root first
    friend auto operator<=>(const SugaredTarget&,
                            const SugaredTarget&) = default;
};

struct SugaredNdcma {
    unsigned level = 1;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    State initial = 0;
    std::set<State> locally_accepting;
    std::set<State> globally_accepting;
    std::map<SugaredKey, std::set<SugaredTarget>> delta;

    bool is_weak() const { return locally_accepting.size() == states.size(); }
    void validate() const;

    State add_state(const std::string& name);

    friend bool operator==(const SugaredNdcma&, const SugaredNdcma&) = default;
};

struct NdcmaConfiguration {
    State control = 0;
    ClassMemoryFunction memory;
    friend auto operator<=>(const NdcmaConfiguration&,
                            const NdcmaConfiguration&) = default;
};

/// Reading a level-i value consults the memories of its ancestor chain and
/// repaints the whole chain with the target state.
std::vector<NdcmaConfiguration> ndcma_step(const Ndcma& a,
                                           const NdcmaConfiguration& c,
                                           const std::string& letter,
                                           DataValue value,
                                           const DataUniverse& universe);

bool ndcma_accepts(const Ndcma& a, const DataWord& w);

/// Direct interpreter for the sugared presentation (the desugaring oracle).
bool sugared_accepts(const SugaredNdcma& a, const DataWord& w);

/// Level-1 wrapper around a silent-free CMA.
Ndcma ndcma_from_cma(const Cma& a);

/// Plain machine viewed as sugared: the root is tracked with a marker state
/// and every chain write repeats the transition target.
SugaredNdcma sugar_of_plain(const Ndcma& a);

/// Reachable-state product construction storing, per plain state, the
/// sugared control, the root memory, and the per-level write tuple.
///
/// Exact for weak machines and for strong machines whose write tuples only
/// place locally-rejecting states on the read value itself (all components
/// strictly above the read level must be locally accepting); other strong
/// machines are refused.
Ndcma desugar(const SugaredNdcma& a);

Ndcma ndcma_product(const Ndcma& a, const Ndcma& b, BooleanMode mode);
Ndcma ndcma_complete(const Ndcma& a);
Ndcma ndcma_complement_dw(const Ndcma& a);

/// Tuple presentation over Sigma x D^k and the forest presentation are
/// interconvertible: a position's tuple is its value's ancestor path.
DataWord tuple_to_forest(const TupleDataWord& w);
TupleDataWord forest_to_tuple(const DataWord& w);

/// Membership for the multi-level presentation: convert and run. The
/// machine must use level-k transitions only.
bool ndcma_accepts_tuple(const Ndcma& a, const TupleDataWord& w);

} // namespace datamata
