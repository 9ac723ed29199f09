// homca.hpp - higher-order multicounter automata, the restricted variant
// with definedness side-conditions, weak acceptance, and the translations
// to and from nested-data class memory automata.
#pragma once

#include "datamata/ndcma.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace datamata {

/// Canonical nested multiset: level-1 holds sorted letter ids, higher
/// levels hold sorted child multisets one level down.
struct NestedMultiset {
    unsigned level = 1;
    std::vector<unsigned> letters;
    std::vector<NestedMultiset> elements;

    static NestedMultiset empty(unsigned level);
    void insert_letter(unsigned id);
    bool remove_letter(unsigned id);
    void insert_element(NestedMultiset m);
    bool hereditarily_empty() const;
    /// Total letter occurrences plus multiset nodes.
    std::size_t weight() const;

    std::strong_ordering operator<=>(const NestedMultiset& other) const;
    bool operator==(const NestedMultiset& other) const
    {
        return (*this <=> other) == std::strong_ordering::equal;
    }
};

enum class HomcaOpKind { make, inc, dec, store, load, nop };

struct HomcaOp {
    HomcaOpKind kind = HomcaOpKind::nop;
    unsigned index = 0;     // make/store/load level
    std::string letter;     // inc/dec multiset letter
    friend auto operator<=>(const HomcaOp&, const HomcaOp&) = default;
};

HomcaOp op_make(unsigned i);
HomcaOp op_inc(std::string letter);
HomcaOp op_dec(std::string letter);
HomcaOp op_store(unsigned i);
HomcaOp op_load(unsigned i);
HomcaOp op_nop();

struct HomcaTransition {
    State from = 0;
    std::optional<std::string> input; // nullopt = epsilon
    HomcaOp op;
    State to = 0;
    friend auto operator<=>(const HomcaTransition&,
                            const HomcaTransition&) = default;
};

struct Homca {
    unsigned level = 1;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;          // input letters
    std::vector<std::string> multiset_alphabet; // counter letters
    State initial = 0;
    std::set<State> accepting;
    std::vector<HomcaTransition> delta;
    bool prime = false; // make/store need the definedness side-conditions
    bool weak = false;  // acceptance drops hereditary emptiness

    void validate() const;
    State add_state(const std::string& name);
    unsigned letter_id(const std::string& letter) const;

    friend bool operator==(const Homca&, const Homca&) = default;
};

struct HomcaConfiguration {
    State control = 0;
    std::vector<std::optional<NestedMultiset>> slots; // m_1 .. m_k
    std::size_t weight() const;
    std::strong_ordering operator<=>(const HomcaConfiguration& other) const;
    bool operator==(const HomcaConfiguration& other) const
    {
        return (*this <=> other) == std::strong_ordering::equal;
    }
};

/// Outcomes of one counter operation; empty when disabled. Enforces the
/// base enabling conditions and, for the restricted variant, the
/// definedness side-conditions on make and store.
std::vector<HomcaConfiguration> homca_apply(const Homca& m,
                                            const HomcaConfiguration& c,
                                            const HomcaOp& op);

/// Bounded membership: epsilon chains are explored up to a per-position
/// budget (default: multiset alphabet size x level x (entry weight + 1),
/// with a floor of 8 per weight unit). A semi-decision for adversarial
/// machines; exact for the chains the translations generate.
bool homca_accepts(const Homca& m, const std::vector<std::string>& word,
                   std::optional<unsigned> eps_budget = std::nullopt);

/// Definedness tracked in the states; the side-conditions become gating.
Homca homca_prime_to_homca(const Homca& m);

/// The reverse simulation for levels up to 3: stores and makes that the
/// side-conditions forbid are replaced by fold-and-unfold copy phases
/// through tagged ghost multisets; hereditary emptiness polices lost
/// elements, and weak machines tolerate the loss.
Homca homca_to_homca_prime(const Homca& m);

/// String projection of the automaton's language as a restricted HOMCA:
/// level-j values are nested multisets tagged with their remembered state.
Homca ndcma_to_homca_prime(const Ndcma& a);

/// Reverse direction: multiset letters become data values; the root's
/// memory tracks the lowest defined slot, auxiliary marker states track
/// open and stored multisets. Epsilon transitions surface as reads of a
/// reserved silent letter ("tau").
SugaredNdcma homca_prime_to_ndcma(const Homca& m);

/// The silent letter used by homca_prime_to_ndcma for epsilon transitions.
extern const char* const kSilentLetter;

} // namespace datamata
