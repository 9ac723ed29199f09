// data.hpp - data universes, data words, class memory functions, bags,
// and the labelled-tree abstraction of class memory functions.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace datamata {

using State = std::uint32_t;

/// A data value is an interned handle into a DataUniverse; equality is
/// identity. Structure (level, parent) lives in the universe.
struct DataValue {
    std::uint32_t id = 0;
    friend auto operator<=>(const DataValue&, const DataValue&) = default;
};

class DataUniverse;
using UniversePtr = std::shared_ptr<DataUniverse>;

/// A forest-structured set of data values of bounded level. Values of level
/// less than the bound can have arbitrarily many children. A flat universe
/// has level bound 1. Node 0 is a distinguished level-0 root; it is the
/// parent of every level-1 value and is never readable as input.
///
/// Values are immutable once created; fresh() is serialized per universe.
class DataUniverse {
public:
    explicit DataUniverse(unsigned level_bound = 1);

    static UniversePtr make(unsigned level_bound = 1)
    {
        return std::make_shared<DataUniverse>(level_bound);
    }

    unsigned level_bound() const { return level_bound_; }
    DataValue root() const { return DataValue{0}; }

    /// Fresh level-1 value (child of the root).
    DataValue fresh(const std::string& label = "");
    /// Fresh child of `parent`; rejected if the parent sits at the bound.
    DataValue fresh_child(DataValue parent, const std::string& label = "");

    unsigned level(DataValue v) const;
    /// Predecessor in the forest; nullopt for level-1 values and the root.
    std::optional<DataValue> pred(DataValue v) const;
    /// Predecessor including the level-0 root (nullopt only for the root).
    std::optional<DataValue> pred_or_root(DataValue v) const;
    /// Ancestor chain [level-1, ..., v], excluding the root.
    std::vector<DataValue> ancestors(DataValue v) const;

    const std::string& label(DataValue v) const;
    /// Slash-joined ancestor path, e.g. "r1/s2".
    std::string path(DataValue v) const;

    std::size_t size() const { return parent_.size(); }
    bool contains(DataValue v) const { return v.id < parent_.size(); }

private:
    unsigned level_bound_;
    std::vector<std::uint32_t> parent_;
    std::vector<unsigned> level_;
    std::vector<std::string> label_;
    std::mutex fresh_mutex_;
};

/// Finite sequence of (letter, value) pairs over a declared alphabet.
struct DataWord {
    struct Entry {
        std::string letter;
        DataValue value;
        friend auto operator<=>(const Entry&, const Entry&) = default;
    };

    std::vector<Entry> entries;
    std::vector<std::string> alphabet;
    UniversePtr universe;

    std::size_t size() const { return entries.size(); }
    bool has_letter(const std::string& a) const;
    /// Projection to the letter sequence.
    std::vector<std::string> str() const;
    void validate() const;
};

DataWord concat(const DataWord& u, const DataWord& v);

/// Words over Sigma x D^k: every position carries a k-tuple of flat values.
struct TupleDataWord {
    struct Entry {
        std::string letter;
        std::vector<DataValue> values;
    };

    unsigned depth = 1;
    std::vector<Entry> entries;
    std::vector<std::string> alphabet;
    UniversePtr universe;

    void validate() const;
};

/// True when the words have the same letter sequences and the same
/// value-(in)equality pattern, position by position. Nested words must in
/// addition induce the same ancestor pattern.
bool words_isomorphic(const DataWord& u, const DataWord& v);

/// Letters plus prefix-agreement pattern: the equivalence the multi-level
/// models observe on tuple words.
bool tuple_words_isomorphic(const TupleDataWord& u, const TupleDataWord& v);

/// Finite map from data values to states; absent means bot (fresh).
class ClassMemoryFunction {
public:
    std::optional<State> at(DataValue d) const;
    void assign(DataValue d, State q) { assigned_[d] = q; }
    bool empty() const { return assigned_.empty(); }
    std::size_t size() const { return assigned_.size(); }
    const std::map<DataValue, State>& assignments() const { return assigned_; }

    /// Every mapped value of level > 1 has a mapped parent.
    bool parent_closed(const DataUniverse& u) const;

    friend auto operator<=>(const ClassMemoryFunction&,
                            const ClassMemoryFunction&) = default;

private:
    std::map<DataValue, State> assigned_;
};

/// Finite multiset of data values; absent means count 0, stored counts are
/// strictly positive.
class Bag {
public:
    std::uint64_t count(DataValue d) const;
    void add(DataValue d, std::uint64_t m);
    void set(DataValue d, std::uint64_t m);
    const std::map<DataValue, std::uint64_t>& counts() const { return counts_; }

    friend auto operator<=>(const Bag&, const Bag&) = default;

private:
    std::map<DataValue, std::uint64_t> counts_;
};

/// Finite unordered tree with state labels on the non-root nodes. Node 0 is
/// the root and carries a distinguished root label; every other node has a
/// parent with a smaller index.
class LabelledTree {
public:
    LabelledTree();

    int add_node(int parent, State label);

    std::size_t node_count() const { return parent_.size(); }
    int parent(int n) const { return parent_[static_cast<std::size_t>(n)]; }
    State label(int n) const { return label_[static_cast<std::size_t>(n)]; }
    std::vector<int> children(int n) const;
    /// Root has depth 0; equals the level of the represented value.
    unsigned depth(int n) const;
    unsigned height() const;

    /// Copy with node `n` (and its subtree) removed, nodes renumbered.
    LabelledTree erase_subtree(int n) const;
    LabelledTree relabel(int n, State label) const;

    /// Recursive sorted-multiset code; equal codes iff isomorphic.
    std::string canonical_code() const;

    friend bool operator==(const LabelledTree& a, const LabelledTree& b)
    {
        return a.canonical_code() == b.canonical_code();
    }

private:
    std::vector<int> parent_;
    std::vector<State> label_;
};

/// Tree of all mapped values plus the level-0 root; rejects class memory
/// functions that map a value below an unmapped parent.
LabelledTree canonical_tree(const ClassMemoryFunction& f,
                            const DataUniverse& universe);

} // namespace datamata
