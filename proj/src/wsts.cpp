#include "datamata/wsts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace datamata {

namespace {

// injective embedding check: memoized pairwise matches plus backtracking
// over child assignments
struct Embedder {
    const LabelledTree& small;
    const LabelledTree& big;
    std::map<std::pair<int, int>, int> memo; // -1 unknown, 0 no, 1 yes

    bool match(int ns, int nb)
    {
        auto key = std::make_pair(ns, nb);
        auto it = memo.find(key);
        if (it != memo.end() && it->second != -1)
            return it->second == 1;
        if (ns != 0 && small.label(ns) != big.label(nb)) {
            memo[key] = 0;
            return false;
        }
        std::vector<int> ks = small.children(ns);
        std::vector<int> kb = big.children(nb);
        bool ok = assign(ks, kb, 0, std::vector<bool>(kb.size(), false));
        memo[key] = ok ? 1 : 0;
        return ok;
    }

    bool assign(const std::vector<int>& ks, const std::vector<int>& kb,
                std::size_t idx, std::vector<bool> used)
    {
        if (idx == ks.size())
            return true;
        for (std::size_t j = 0; j < kb.size(); ++j) {
            if (used[j] || !match(ks[idx], kb[j]))
                continue;
            used[j] = true;
            if (assign(ks, kb, idx + 1, used))
                return true;
            used[j] = false;
        }
        return false;
    }
};

} // namespace

bool tree_leq(const LabelledTree& small, const LabelledTree& big)
{
    if (small.node_count() > big.node_count())
        return false;
    Embedder e{small, big, {}};
    return e.match(0, 0);
}

bool wsts_leq(const WstsState& small, const WstsState& big)
{
    return small.control == big.control && tree_leq(small.tree, big.tree);
}

namespace {

/// Non-bot guard prefix length; nullopt for guards with interior bots,
/// which can never fire from a reachable (parent-closed) memory.
std::optional<unsigned> guard_prefix(const std::vector<std::optional<State>>& g)
{
    unsigned t = 0;
    while (t < g.size() && g[t].has_value())
        ++t;
    for (unsigned j = t; j < g.size(); ++j)
        if (g[j].has_value())
            return std::nullopt;
    return t;
}

void descend_paths(const LabelledTree& tree, int node, unsigned remaining,
                   std::vector<int>& path,
                   std::vector<std::vector<int>>& out,
                   const std::vector<std::optional<State>>& want)
{
    if (remaining == 0) {
        out.push_back(path);
        return;
    }
    for (int c : tree.children(node)) {
        std::size_t depth = path.size();
        if (want[depth] && tree.label(c) != *want[depth])
            continue;
        path.push_back(c);
        descend_paths(tree, c, remaining - 1, path, out, want);
        path.pop_back();
    }
}

} // namespace

std::vector<WstsState> wsts_successors(const WstsState& s, const Ndcma& a)
{
    std::vector<WstsState> out;
    std::set<std::string> seen;
    for (auto& [key, succs] : a.delta) {
        if (key.from != s.control)
            continue;
        auto prefix = guard_prefix(key.guard);
        if (!prefix)
            continue;
        unsigned t = *prefix;
        // existing nodes realize the non-bot prefix
        std::vector<std::optional<State>> want(key.guard.begin(),
                                               key.guard.begin() + t);
        std::vector<std::vector<int>> paths;
        std::vector<int> path;
        descend_paths(s.tree, 0, t, path, paths, want);
        for (State target : succs) {
            for (const std::vector<int>& p : paths) {
                LabelledTree tree = s.tree;
                for (int n : p)
                    tree = tree.relabel(n, target);
                int tail = p.empty() ? 0 : p.back();
                for (unsigned j = t; j < key.level; ++j)
                    tail = tree.add_node(tail, target);
                WstsState succ{target, std::move(tree)};
                if (seen.insert(succ.tree.canonical_code() + "@" +
                                std::to_string(succ.control))
                        .second)
                    out.push_back(std::move(succ));
            }
        }
    }
    return out;
}

namespace {

struct PredEntry {
    WstsState state;
    NdcmaKey rule;
};

std::vector<PredEntry> pred_basis_with_rules(const WstsState& s,
                                             const Ndcma& a)
{
    std::vector<PredEntry> out;
    std::set<std::string> seen;
    for (auto& [key, succs] : a.delta) {
        if (!succs.count(s.control))
            continue;
        auto prefix = guard_prefix(key.guard);
        if (!prefix)
            continue;
        unsigned t = *prefix;
        unsigned i = key.level;

        // descending paths labelled with the repaint colour, up to the
        // transition level; the empty path covers predecessors whose
        // repainted chain lies outside the embedded image
        std::vector<std::optional<State>> want(i, s.control);
        for (unsigned j = 0; j <= i; ++j) {
            std::vector<std::vector<int>> paths;
            std::vector<int> path;
            descend_paths(s.tree, 0, j, path, paths, want);
            for (const std::vector<int>& p : paths) {
                // bot-guarded path nodes must have no children besides the
                // next path node: they are created by the forward step
                bool ok = true;
                for (unsigned m = t; m < j && ok; ++m) {
                    for (int c : s.tree.children(p[m]))
                        if (m + 1 >= j || c != p[m + 1]) {
                            ok = false;
                            break;
                        }
                }
                if (!ok)
                    continue;

                LabelledTree tree = s.tree;
                for (unsigned m = 0; m < std::min(j, t); ++m)
                    tree = tree.relabel(p[m], *key.guard[m]);
                // delete the bot-guarded tail, deepest first
                for (unsigned m = j; m-- > t;) {
                    // node indices are stable under deeper deletions
                    tree = tree.erase_subtree(p[m]);
                }
                if (j < t) {
                    // graft the unmatched guard suffix as a fresh branch
                    int tail = j == 0 ? 0 : p[j - 1];
                    for (unsigned m = j; m < t; ++m)
                        tail = tree.add_node(tail, *key.guard[m]);
                }
                WstsState pred{key.from, std::move(tree)};
                if (seen.insert(pred.tree.canonical_code() + "@" +
                                std::to_string(pred.control))
                        .second)
                    out.push_back(PredEntry{std::move(pred), key});
            }
        }
    }
    return out;
}

} // namespace

std::vector<WstsState> pred_basis(const WstsState& s, const Ndcma& a)
{
    std::vector<WstsState> out;
    for (PredEntry& e : pred_basis_with_rules(s, a))
        out.push_back(std::move(e.state));
    return out;
}

WstsEmptinessResult ndcma_weak_empty(const Ndcma& a)
{
    if (!a.is_weak())
        throw std::invalid_argument("ndcma_weak_empty: input must be weak");
    a.validate();

    // controls outside the forward control-reachable set can never lie on
    // a chain back to the initial state
    std::set<State> reachable{a.initial};
    {
        std::deque<State> frontier{a.initial};
        while (!frontier.empty()) {
            State q = frontier.front();
            frontier.pop_front();
            for (auto& [key, succs] : a.delta) {
                if (key.from != q)
                    continue;
                for (State to : succs)
                    if (reachable.insert(to).second)
                        frontier.push_back(to);
            }
        }
    }

    struct Element {
        WstsState state;
        std::optional<NdcmaKey> rule;
        std::optional<std::size_t> next;
    };
    std::vector<Element> arena;
    std::vector<std::size_t> basis;

    auto insert = [&](Element cand) -> std::optional<std::size_t> {
        if (!reachable.count(cand.state.control))
            return std::nullopt;
        for (std::size_t i : basis)
            if (wsts_leq(arena[i].state, cand.state))
                return std::nullopt;
        std::erase_if(basis, [&](std::size_t i) {
            return wsts_leq(cand.state, arena[i].state);
        });
        arena.push_back(std::move(cand));
        basis.push_back(arena.size() - 1);
        return arena.size() - 1;
    };

    WstsEmptinessResult result;
    WstsState initial{a.initial, LabelledTree{}};
    auto finish_nonempty = [&](std::size_t i) {
        result.empty = false;
        for (std::optional<std::size_t> cur = i; arena[*cur].rule;
             cur = arena[*cur].next) {
            const Element& e = arena[*cur];
            const Element& nxt = arena[*e.next];
            result.certificate.push_back(WstsCertificateStep{
                *e.rule, nxt.state.control, nxt.state.tree});
        }
        result.basis_size = basis.size();
    };

    std::deque<std::size_t> frontier;
    for (State q : a.globally_accepting) {
        Element e;
        e.state = WstsState{q, LabelledTree{}};
        if (auto idx = insert(std::move(e))) {
            if (wsts_leq(arena[*idx].state, initial)) {
                finish_nonempty(*idx);
                return result;
            }
            frontier.push_back(*idx);
        }
    }

    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        if (std::find(basis.begin(), basis.end(), cur) == basis.end())
            continue;
        for (PredEntry& pe : pred_basis_with_rules(arena[cur].state, a)) {
            Element cand;
            cand.state = std::move(pe.state);
            cand.rule = pe.rule;
            cand.next = cur;
            if (auto idx = insert(std::move(cand))) {
                if (wsts_leq(arena[*idx].state, initial)) {
                    finish_nonempty(*idx);
                    return result;
                }
                frontier.push_back(*idx);
            }
        }
    }
    result.basis_size = basis.size();
    for (std::size_t i : basis)
        result.basis.push_back(arena[i].state);
    return result;
}

bool replay_wsts_certificate(const Ndcma& a,
                             const std::vector<WstsCertificateStep>& cert)
{
    WstsState cur{a.initial, LabelledTree{}};
    for (const WstsCertificateStep& step : cert) {
        WstsState want{step.control_after, step.tree_after};
        bool advanced = false;
        for (WstsState& succ : wsts_successors(cur, a)) {
            if (succ.control == step.control_after && wsts_leq(want, succ)) {
                cur = std::move(succ);
                advanced = true;
                break;
            }
        }
        if (!advanced)
            return false;
    }
    return !cert.empty() ? a.globally_accepting.count(cur.control) > 0
                         : a.globally_accepting.count(a.initial) > 0;
}

namespace {

bool tree_locally_accepting(const LabelledTree& t, const Ndcma& a)
{
    for (std::size_t n = 1; n < t.node_count(); ++n)
        if (!a.locally_accepting.count(t.label(static_cast<int>(n))))
            return false;
    return true;
}

} // namespace

NdcmaBoundedResult ndcma_empty_bounded(const Ndcma& a, unsigned max_steps)
{
    struct Node {
        State control;
        LabelledTree tree;
    };
    std::map<std::string, int> seen; // code -> trace index
    std::vector<std::pair<int, std::string>> trace; // parent, letter
    std::deque<std::pair<Node, unsigned>> frontier;

    auto code_of = [](const Node& n) {
        return std::to_string(n.control) + "@" + n.tree.canonical_code();
    };
    auto accepting = [&](const Node& n) {
        return a.globally_accepting.count(n.control) &&
               tree_locally_accepting(n.tree, a);
    };

    Node init{a.initial, LabelledTree{}};
    seen[code_of(init)] = -1;
    frontier.emplace_back(init, 0);
    bool truncated = false;
    while (!frontier.empty()) {
        auto [node, steps] = frontier.front();
        frontier.pop_front();
        if (accepting(node)) {
            NdcmaBoundedResult r;
            r.verdict = NdcmaBoundedResult::Verdict::nonempty;
            std::vector<std::string> str;
            for (int idx = seen.at(code_of(node)); idx != -1;
                 idx = trace[static_cast<std::size_t>(idx)].first)
                str.push_back(trace[static_cast<std::size_t>(idx)].second);
            std::reverse(str.begin(), str.end());
            r.witness_str = std::move(str);
            return r;
        }
        if (steps >= max_steps) {
            truncated = true;
            continue;
        }
        int parent = seen.at(code_of(node));
        // enumerate successors transition by transition to keep letters
        for (auto& [key, succs] : a.delta) {
            if (key.from != node.control)
                continue;
            auto prefix = guard_prefix(key.guard);
            if (!prefix)
                continue;
            unsigned t = *prefix;
            std::vector<std::optional<State>> want(key.guard.begin(),
                                                   key.guard.begin() + t);
            std::vector<std::vector<int>> paths;
            std::vector<int> path;
            descend_paths(node.tree, 0, t, path, paths, want);
            for (State target : succs) {
                for (const std::vector<int>& p : paths) {
                    LabelledTree tree = node.tree;
                    for (int n : p)
                        tree = tree.relabel(n, target);
                    int tail = p.empty() ? 0 : p.back();
                    for (unsigned j = t; j < key.level; ++j)
                        tail = tree.add_node(tail, target);
                    Node succ{target, std::move(tree)};
                    std::string code = code_of(succ);
                    if (seen.count(code))
                        continue;
                    trace.emplace_back(parent, key.letter);
                    seen[code] = static_cast<int>(trace.size()) - 1;
                    frontier.emplace_back(std::move(succ), steps + 1);
                }
            }
        }
    }
    NdcmaBoundedResult r;
    r.verdict = truncated ? NdcmaBoundedResult::Verdict::bound_hit
                          : NdcmaBoundedResult::Verdict::exhausted_empty;
    return r;
}

bool ndcma_str_member(const Ndcma& a, const std::vector<std::string>& str,
                      const std::optional<std::string>& silent_letter,
                      unsigned budget)
{
    struct Node {
        std::size_t pos;
        State control;
        LabelledTree tree;
    };
    auto code_of = [](const Node& n) {
        return std::to_string(n.pos) + ":" + std::to_string(n.control) + "@" +
               n.tree.canonical_code();
    };
    // smaller silent-consumption dominates: revisit only when cheaper
    std::map<std::string, unsigned> best;
    std::deque<std::pair<Node, unsigned>> frontier;
    Node init{0, a.initial, LabelledTree{}};
    best[code_of(init)] = 0;
    frontier.emplace_back(init, 0);
    while (!frontier.empty()) {
        auto [node, used] = frontier.front();
        frontier.pop_front();
        if (node.pos == str.size() && a.globally_accepting.count(node.control) &&
            tree_locally_accepting(node.tree, a))
            return true;
        for (auto& [key, succs] : a.delta) {
            if (key.from != node.control)
                continue;
            bool is_silent = silent_letter && key.letter == *silent_letter;
            if (is_silent && used >= budget)
                continue;
            if (!is_silent &&
                (node.pos >= str.size() || key.letter != str[node.pos]))
                continue;
            auto prefix = guard_prefix(key.guard);
            if (!prefix)
                continue;
            unsigned t = *prefix;
            std::vector<std::optional<State>> want(key.guard.begin(),
                                                   key.guard.begin() + t);
            std::vector<std::vector<int>> paths;
            std::vector<int> path;
            descend_paths(node.tree, 0, t, path, paths, want);
            for (State target : succs) {
                for (const std::vector<int>& p : paths) {
                    LabelledTree tree = node.tree;
                    for (int n : p)
                        tree = tree.relabel(n, target);
                    int tail = p.empty() ? 0 : p.back();
                    for (unsigned j = t; j < key.level; ++j)
                        tail = tree.add_node(tail, target);
                    Node succ{node.pos + (is_silent ? 0 : 1), target,
                              std::move(tree)};
                    unsigned succ_used = used + (is_silent ? 1 : 0);
                    std::string code = code_of(succ);
                    auto it = best.find(code);
                    if (it != best.end() && it->second <= succ_used)
                        continue;
                    best[code] = succ_used;
                    frontier.emplace_back(std::move(succ), succ_used);
                }
            }
        }
    }
    return false;
}

} // namespace datamata
