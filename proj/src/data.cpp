#include "datamata/data.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace datamata {

DataUniverse::DataUniverse(unsigned level_bound) : level_bound_(level_bound)
{
    if (level_bound_ < 1)
        throw std::invalid_argument("universe level bound must be positive");
    parent_.push_back(0);
    level_.push_back(0);
    label_.push_back("");
}

DataValue DataUniverse::fresh(const std::string& label)
{
    return fresh_child(root(), label);
}

DataValue DataUniverse::fresh_child(DataValue parent, const std::string& label)
{
    std::lock_guard<std::mutex> lock(fresh_mutex_);
    if (!contains(parent))
        throw std::invalid_argument("fresh_child: unknown parent value");
    unsigned parent_level = level_[parent.id];
    if (parent_level >= level_bound_)
        throw std::invalid_argument(
            "fresh_child: parent already at the universe level bound");
    DataValue v{static_cast<std::uint32_t>(parent_.size())};
    parent_.push_back(parent.id);
    level_.push_back(parent_level + 1);
    label_.push_back(label.empty() ? "n" + std::to_string(v.id) : label);
    return v;
}

unsigned DataUniverse::level(DataValue v) const
{
    if (!contains(v))
        throw std::invalid_argument("level: unknown value");
    return level_[v.id];
}

std::optional<DataValue> DataUniverse::pred(DataValue v) const
{
    if (!contains(v))
        throw std::invalid_argument("pred: unknown value");
    if (level_[v.id] <= 1)
        return std::nullopt;
    return DataValue{parent_[v.id]};
}

std::optional<DataValue> DataUniverse::pred_or_root(DataValue v) const
{
    if (!contains(v))
        throw std::invalid_argument("pred_or_root: unknown value");
    if (v.id == 0)
        return std::nullopt;
    return DataValue{parent_[v.id]};
}

std::vector<DataValue> DataUniverse::ancestors(DataValue v) const
{
    std::vector<DataValue> chain;
    DataValue cur = v;
    while (cur.id != 0) {
        chain.push_back(cur);
        cur = DataValue{parent_[cur.id]};
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

const std::string& DataUniverse::label(DataValue v) const
{
    if (!contains(v))
        throw std::invalid_argument("label: unknown value");
    return label_[v.id];
}

std::string DataUniverse::path(DataValue v) const
{
    std::string out;
    for (DataValue a : ancestors(v)) {
        if (!out.empty())
            out += '/';
        out += label_[a.id];
    }
    return out;
}

bool DataWord::has_letter(const std::string& a) const
{
    return std::find(alphabet.begin(), alphabet.end(), a) != alphabet.end();
}

std::vector<std::string> DataWord::str() const
{
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const Entry& e : entries)
        out.push_back(e.letter);
    return out;
}

void DataWord::validate() const
{
    for (const Entry& e : entries) {
        if (!has_letter(e.letter))
            throw std::invalid_argument("word letter '" + e.letter +
                                        "' not in the declared alphabet");
        if (universe) {
            if (!universe->contains(e.value))
                throw std::invalid_argument("word value not in its universe");
            if (universe->level(e.value) < 1)
                throw std::invalid_argument("the level-0 root cannot be read");
        }
    }
}

DataWord concat(const DataWord& u, const DataWord& v)
{
    DataWord out = u;
    out.entries.insert(out.entries.end(), v.entries.begin(), v.entries.end());
    for (const std::string& a : v.alphabet)
        if (!out.has_letter(a))
            out.alphabet.push_back(a);
    if (!out.universe)
        out.universe = v.universe;
    return out;
}

void TupleDataWord::validate() const
{
    for (const Entry& e : entries) {
        if (std::find(alphabet.begin(), alphabet.end(), e.letter) ==
            alphabet.end())
            throw std::invalid_argument("tuple word letter '" + e.letter +
                                        "' not in the declared alphabet");
        if (e.values.size() != depth)
            throw std::invalid_argument(
                "tuple word position does not carry exactly k values");
    }
}

bool words_isomorphic(const DataWord& u, const DataWord& v)
{
    if (u.entries.size() != v.entries.size())
        return false;
    std::map<DataValue, DataValue> fwd, bwd;
    for (std::size_t i = 0; i < u.entries.size(); ++i) {
        if (u.entries[i].letter != v.entries[i].letter)
            return false;
        DataValue a = u.entries[i].value, b = v.entries[i].value;
        auto [itf, newf] = fwd.emplace(a, b);
        auto [itb, newb] = bwd.emplace(b, a);
        if (itf->second != b || itb->second != a)
            return false;
        if (newf != newb)
            return false;
    }
    if (u.universe && v.universe) {
        // ancestor pattern must match as well
        for (auto& [a, b] : fwd) {
            if (u.universe->level(a) != v.universe->level(b))
                return false;
            auto pa = u.universe->pred(a);
            auto pb = v.universe->pred(b);
            if (pa.has_value() != pb.has_value())
                return false;
            if (pa && fwd.count(*pa) && fwd.at(*pa) != *pb)
                return false;
        }
    }
    return true;
}

bool tuple_words_isomorphic(const TupleDataWord& u, const TupleDataWord& v)
{
    // the nested models observe letters and prefix agreement only: two
    // positions are related iff they share the first i values
    if (u.depth != v.depth || u.entries.size() != v.entries.size())
        return false;
    for (std::size_t i = 0; i < u.entries.size(); ++i)
        if (u.entries[i].letter != v.entries[i].letter)
            return false;
    for (unsigned level = 1; level <= u.depth; ++level) {
        for (std::size_t i = 0; i < u.entries.size(); ++i) {
            for (std::size_t j = i + 1; j < u.entries.size(); ++j) {
                auto agree = [level](const TupleDataWord& w, std::size_t x,
                                     std::size_t y) {
                    for (unsigned l = 0; l < level; ++l)
                        if (w.entries[x].values[l] != w.entries[y].values[l])
                            return false;
                    return true;
                };
                if (agree(u, i, j) != agree(v, i, j))
                    return false;
            }
        }
    }
    return true;
}

std::optional<State> ClassMemoryFunction::at(DataValue d) const
{
    auto it = assigned_.find(d);
    if (it == assigned_.end())
        return std::nullopt;
    return it->second;
}

bool ClassMemoryFunction::parent_closed(const DataUniverse& u) const
{
    for (auto& [d, q] : assigned_) {
        auto p = u.pred(d);
        if (p && !assigned_.count(*p))
            return false;
    }
    return true;
}

std::uint64_t Bag::count(DataValue d) const
{
    auto it = counts_.find(d);
    return it == counts_.end() ? 0 : it->second;
}

void Bag::add(DataValue d, std::uint64_t m)
{
    if (m == 0)
        return;
    counts_[d] += m;
}

void Bag::set(DataValue d, std::uint64_t m)
{
    if (m == 0)
        counts_.erase(d);
    else
        counts_[d] = m;
}

LabelledTree::LabelledTree()
{
    parent_.push_back(-1);
    label_.push_back(0);
}

int LabelledTree::add_node(int parent, State label)
{
    if (parent < 0 || parent >= static_cast<int>(parent_.size()))
        throw std::invalid_argument("add_node: parent out of range");
    parent_.push_back(parent);
    label_.push_back(label);
    return static_cast<int>(parent_.size()) - 1;
}

std::vector<int> LabelledTree::children(int n) const
{
    std::vector<int> out;
    for (std::size_t i = 1; i < parent_.size(); ++i)
        if (parent_[i] == n)
            out.push_back(static_cast<int>(i));
    return out;
}

unsigned LabelledTree::depth(int n) const
{
    unsigned d = 0;
    while (n != 0) {
        n = parent_[static_cast<std::size_t>(n)];
        ++d;
    }
    return d;
}

unsigned LabelledTree::height() const
{
    unsigned h = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i)
        h = std::max(h, depth(static_cast<int>(i)));
    return h;
}

LabelledTree LabelledTree::erase_subtree(int n) const
{
    if (n <= 0 || n >= static_cast<int>(parent_.size()))
        throw std::invalid_argument("erase_subtree: bad node");
    std::vector<bool> dead(parent_.size(), false);
    dead[static_cast<std::size_t>(n)] = true;
    for (std::size_t i = 1; i < parent_.size(); ++i)
        if (dead[static_cast<std::size_t>(parent_[i])])
            dead[i] = true;
    LabelledTree out;
    std::vector<int> remap(parent_.size(), -1);
    remap[0] = 0;
    for (std::size_t i = 1; i < parent_.size(); ++i) {
        if (dead[i])
            continue;
        remap[i] = out.add_node(remap[static_cast<std::size_t>(parent_[i])],
                                label_[i]);
    }
    return out;
}

LabelledTree LabelledTree::relabel(int n, State label) const
{
    if (n <= 0 || n >= static_cast<int>(parent_.size()))
        throw std::invalid_argument("relabel: bad node");
    LabelledTree out = *this;
    out.label_[static_cast<std::size_t>(n)] = label;
    return out;
}

namespace {

std::string node_code(const LabelledTree& t, int n)
{
    std::vector<std::string> child_codes;
    for (int c : t.children(n))
        child_codes.push_back(node_code(t, c));
    std::sort(child_codes.begin(), child_codes.end());
    std::string code = "(";
    code += n == 0 ? "r" : std::to_string(t.label(n));
    for (const std::string& c : child_codes)
        code += c;
    code += ')';
    return code;
}

} // namespace

std::string LabelledTree::canonical_code() const
{
    return node_code(*this, 0);
}

LabelledTree canonical_tree(const ClassMemoryFunction& f,
                            const DataUniverse& universe)
{
    if (!f.parent_closed(universe))
        throw std::invalid_argument(
            "canonical_tree: a mapped value has an unmapped parent");
    LabelledTree t;
    std::map<DataValue, int> node_of;
    node_of[universe.root()] = 0;
    // values iterate in id order and parents are always created first
    for (auto& [d, q] : f.assignments()) {
        DataValue p = *universe.pred_or_root(d);
        node_of[d] = t.add_node(node_of.at(p), q);
    }
    return t;
}

} // namespace datamata
