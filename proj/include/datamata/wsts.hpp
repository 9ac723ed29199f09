// wsts.hpp - emptiness for weak nested-data CMA via a well-structured
// transition system over state-labelled trees: embedding order, exact
// pred-basis, and backward saturation with forward-replayable certificates.
#pragma once

#include "datamata/data.hpp"
#include "datamata/ndcma.hpp"

#include <optional>
#include <string>
#include <vector>

namespace datamata {

struct WstsState {
    State control = 0;
    LabelledTree tree;
};

/// Root-, parent- and label-preserving injective embedding of `small` into
/// `big`; decided by backtracking over child matchings.
bool tree_leq(const LabelledTree& small, const LabelledTree& big);

bool wsts_leq(const WstsState& small, const WstsState& big);

/// Forward one-step successors of an abstract configuration: an existing
/// descending path supplies the non-bot guard prefix, fresh nodes realize
/// the bot suffix, and the touched chain is repainted with the target.
std::vector<WstsState> wsts_successors(const WstsState& s, const Ndcma& a);

/// Minimal one-step predecessors of the upward closure of `s`, one batch
/// per transition into s.control: descending root paths labelled with the
/// target state are relabelled with the guard, missing guard entries are
/// grafted as a fresh branch, and bot-guarded nodes are deleted.
std::vector<WstsState> pred_basis(const WstsState& s, const Ndcma& a);

struct WstsCertificateStep {
    NdcmaKey transition;
    State control_after = 0;
    LabelledTree tree_after;
};

struct WstsEmptinessResult {
    bool empty = true;
    /// Backward certificate: trees along the chain from the initial
    /// root-only state to a globally accepting control.
    std::vector<WstsCertificateStep> certificate;
    /// Final antichain (only meaningful when the saturation ran to the
    /// fixpoint, i.e. on empty verdicts).
    std::vector<WstsState> basis;
    std::size_t basis_size = 0;
};

/// Backward saturation from {(q, root-only) : q in F_G}; weakness makes
/// every memory acceptable, so these targets capture acceptance exactly.
WstsEmptinessResult ndcma_weak_empty(const Ndcma& a);

/// Replays a certificate forward; each step must dominate the recorded
/// state. Returns false when the replay breaks.
bool replay_wsts_certificate(const Ndcma& a,
                             const std::vector<WstsCertificateStep>& cert);

struct NdcmaBoundedResult {
    enum class Verdict { nonempty, exhausted_empty, bound_hit };
    Verdict verdict = Verdict::bound_hit;
    std::optional<std::vector<std::string>> witness_str;
};

/// Forward search over abstract (control, tree) configurations, capped at
/// `max_steps`. Works for strong machines too; exhausting the space without
/// a hit is a definite emptiness answer.
NdcmaBoundedResult ndcma_empty_bounded(const Ndcma& a, unsigned max_steps);

/// Is some data word with the given string projection accepted? Positions
/// labelled `silent_letter` (when set) may be inserted freely, up to
/// `budget` of them.
bool ndcma_str_member(const Ndcma& a, const std::vector<std::string>& str,
                      const std::optional<std::string>& silent_letter =
                          std::nullopt,
                      unsigned budget = 0);

} // namespace datamata
