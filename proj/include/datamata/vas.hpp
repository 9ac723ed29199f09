// vas.hpp - vector addition systems with control states, backward
// coverability, and the weak-CMA emptiness reduction.
#pragma once

#include "datamata/cma.hpp"
#include "datamata/data.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace datamata {

using Valuation = std::vector<std::uint32_t>;

struct VasRule {
    State from = 0;
    Valuation guard;  // decrements, applied first
    Valuation effect; // increments
    State to = 0;
    std::string name; // display only, ignored by equality

    friend bool operator==(const VasRule& a, const VasRule& b)
    {
        return a.from == b.from && a.guard == b.guard &&
               a.effect == b.effect && a.to == b.to;
    }
};

struct VasTarget {
    State control = 0;
    Valuation minimum;

    friend bool operator==(const VasTarget&, const VasTarget&) = default;
};

struct VasInstance {
    std::vector<std::string> counters;
    std::vector<std::string> controls;
    State initial_control = 0;
    Valuation initial_valuation;
    std::vector<VasRule> rules;
    std::vector<VasTarget> targets;

    void validate() const;

    friend bool operator==(const VasInstance&, const VasInstance&) = default;
};

/// Is `rule` enabled at (control, v)? Decrements must be covered.
bool vas_rule_enabled(const VasRule& rule, State control, const Valuation& v);
Valuation vas_apply(const VasRule& rule, const Valuation& v);

/// Forward chain of rule indices; firing them from any configuration
/// dominating the certificate root covers a target.
struct CoverCertificate {
    std::vector<std::size_t> rules;
    State start_control = 0;
    Valuation start_valuation;
};

struct CoverResult {
    bool coverable = false;
    std::optional<CoverCertificate> certificate;
    /// Final antichain of minimal configurations covering a target.
    std::vector<std::pair<State, Valuation>> basis;
    std::size_t basis_size = 0;
    std::size_t iterations = 0;
};

/// Backward saturation: maintains a minimal basis of the upward-closed set
/// of configurations that can cover a target; terminates by Dickson's lemma.
CoverResult vas_cover(const VasInstance& v);
bool vas_coverable(const VasInstance& v);

/// Replays a certificate from (start_control, start valuation); returns the
/// reached configuration, or nullopt if some rule was not enabled.
std::optional<std::pair<State, Valuation>>
replay_certificate(const VasInstance& v, const CoverCertificate& cert);

/// One counter per state: counts the data values last seen there. The target
/// is coverable iff the automaton's language is nonempty.
VasInstance wcma_to_vas(const Cma& a);

/// Emptiness of a weak CMA via the coverability reduction; silent
/// transitions are eliminated first.
bool wcma_empty(const Cma& a);

/// A word accepted by the weak CMA, decoded from the coverability
/// certificate; nullopt when the language is empty.
std::optional<DataWord> wcma_witness_word(const Cma& a);

enum class BoundedVerdict { nonempty, empty_up_to_bound };

struct BoundedEmptinessResult {
    BoundedVerdict verdict = BoundedVerdict::empty_up_to_bound;
    std::optional<DataWord> witness;
};

/// Forward semi-decision for full CMA emptiness: explores runs using at most
/// `bound` data values and `bound` steps. Never claims emptiness outright.
BoundedEmptinessResult cma_empty_bounded(const Cma& a, unsigned bound);

} // namespace datamata
