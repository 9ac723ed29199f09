// hra.hpp - non-reset history register automata (histories only, initially
// empty assignment) and the translations to and from weak CMA.
#pragma once

#include "datamata/cma.hpp"
#include "datamata/data.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace datamata {

/// Subset of [m] as a bitmask; history indices are 1-based in text form.
using HistorySet = std::uint32_t;

struct NrHraTransition {
    State from = 0;
    std::string letter;
    HistorySet required = 0; // X: the exact set of histories containing d
    HistorySet assigned = 0; // Y: the histories d is placed into
    State to = 0;
    friend auto operator<=>(const NrHraTransition&,
                            const NrHraTransition&) = default;
};

struct NrHra {
    unsigned type_m = 1;
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    State initial = 0;
    std::set<State> accepting;
    std::vector<NrHraTransition> delta;

    /// At most one (Y, q') per (q, a, X) present in the table.
    bool is_deterministic() const;
    void validate() const;

    friend bool operator==(const NrHra&, const NrHra&) = default;
};

bool nrhra_accepts(const NrHra& a, const DataWord& w);

/// Type m = |Q|; history i stores the data values last seen in state i.
NrHra wcma_to_nrhra(const Cma& a);

/// Output states are Q plus marker pairs (Q x P([m])); the memory of a data
/// value records H^{-1}(d) through the marker component.
Cma nrhra_to_wcma(const NrHra& a);

} // namespace datamata
