// petrinet.hpp - Petri nets with optional reset arcs, firing semantics,
// and the encodings of reachability/coverability queries into (weak)
// class memory automata and their nested variants.
#pragma once

#include "datamata/cma.hpp"
#include "datamata/ndcma.hpp"
#include "datamata/vas.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace datamata {

using Marking = std::map<std::string, std::uint32_t>;

struct PetriTransition {
    std::string name;
    Marking inputs;
    Marking outputs;
    std::set<std::string> resets; // emptied after inputs, before outputs

    friend bool operator==(const PetriTransition&,
                           const PetriTransition&) = default;
};

enum class QueryKind { reachability, coverability };

struct PetriNet {
    std::vector<std::string> places;
    std::vector<PetriTransition> transitions;
    Marking initial;
    QueryKind query = QueryKind::coverability;
    Marking target;

    bool has_resets() const;
    void validate() const;

    friend bool operator==(const PetriNet&, const PetriNet&) = default;
};

bool fire_enabled(const PetriNet& net, const Marking& m,
                  const PetriTransition& t);
Marking fire(const PetriNet& net, const Marking& m,
             const PetriTransition& t);

/// Tokens are data values; a token's place is the state its value was last
/// seen in. The strong encoding's language is nonempty iff the target is
/// exactly reachable; dropping local acceptance gives the coverability
/// automaton. Reset arcs are rejected here.
Cma encode_reachability_cma(const PetriNet& net);
Cma encode_coverability_wcma(const PetriNet& net);

/// Level-2 encodings for nets with reset arcs: a level-1 value per place
/// holds its tokens; a reset retires the bag value to a dead state (the
/// strong encoder first drains the bag token by token so leftovers cannot
/// hide under dead bags).
Ndcma encode_reset_reachability_ndcma(const PetriNet& net);
Ndcma encode_reset_coverability_weak_ndcma(const PetriNet& net);

/// The coverability query as a plain vector addition system (used as an
/// oracle against the automata routes).
VasInstance net_to_vas(const PetriNet& net);

/// Maps a word accepted by the flat encodings back to the fired transition
/// sequence; empty result means the word does not decode.
std::vector<std::string> decode_firing_sequence(const PetriNet& net,
                                                const Cma& encoding,
                                                const DataWord& witness);

/// Same decoding from the encoder's state-name roles alone; empty when the
/// machine does not look like an encoder output or the word is rejected.
std::vector<std::string> decode_firing_sequence(const Cma& encoding,
                                                const DataWord& witness);

} // namespace datamata
