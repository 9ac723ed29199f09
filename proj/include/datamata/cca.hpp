// cca.hpp - class counting automata with bag semantics and the
// translations to and from weak class memory automata.
#pragma once

#include "datamata/cma.hpp"
#include "datamata/data.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace datamata {

enum class CmpOp { eq, neq, lt, gt };

struct Constraint {
    CmpOp op = CmpOp::eq;
    std::uint32_t bound = 0;
    bool sat(std::uint64_t n) const;
    friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

enum class CounterOp { inc, set };

struct CcaTransition {
    State from = 0;
    std::string letter;
    Constraint guard;
    CounterOp op = CounterOp::inc;
    std::uint32_t operand = 0;
    State to = 0;
    friend auto operator<=>(const CcaTransition&,
                            const CcaTransition&) = default;
};

struct Cca {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    State initial = 0;
    std::set<State> accepting;
    std::vector<CcaTransition> delta;

    /// Greatest integer appearing in the transition set (guards and
    /// operands); integers are treated as unary for complexity accounting.
    std::uint32_t max_constant() const;
    void validate() const;

    friend bool operator==(const Cca&, const Cca&) = default;
};

bool cca_accepts(const Cca& a, const DataWord& w);

/// For each (q, a), do the outgoing guards partition the naturals? Decided
/// on the representatives 0..n0+1.
bool cca_is_deterministic(const Cca& a);

/// States are preserved; each memory guard becomes an equality test on the
/// state's index and every step rewrites the counter to the target index.
/// The guard for the highest-numbered state is emitted as a > test so that
/// complete deterministic inputs yield guards partitioning the naturals
/// (counters never exceed the state count, so the language is unchanged).
Cca wcma_to_cca(const Cma& a);

/// Counter values are tracked in the states, saturated at n0+1.
Cma cca_to_wcma(const Cca& a);

} // namespace datamata
