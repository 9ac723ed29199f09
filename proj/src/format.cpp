#include "datamata/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace datamata {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text)
{
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        std::string padded;
        for (char c : raw) {
            if (c == '[' || c == ']' || c == '{' || c == '}' || c == '(' ||
                c == ')' || c == ',') {
                padded += ' ';
                padded += c;
                padded += ' ';
            } else {
                padded += c;
            }
        }
        std::istringstream ls(padded);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok)
            line.tokens.push_back(tok);
        if (!line.tokens.empty())
            out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& line, const std::string& message)
{
    throw ParseError(line.number, message);
}

/// Printers refuse names the tokenizer would mangle.
const std::string& checked(const std::string& name)
{
    if (name.empty())
        throw std::invalid_argument("print: empty name");
    for (char c : name)
        if (c == '#' || c == '[' || c == ']' || c == '{' || c == '}' ||
            c == '(' || c == ')' || c == ',' ||
            std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument(
                "print: name '" + name +
                "' contains whitespace or reserved punctuation");
    return name;
}

/// Name table creating indices on first use.
struct Names {
    std::vector<std::string>& list;
    std::map<std::string, State> index;

    explicit Names(std::vector<std::string>& list_) : list(list_)
    {
        for (State i = 0; i < list.size(); ++i)
            index[list[i]] = i;
    }
    State get(const std::string& name)
    {
        auto it = index.find(name);
        if (it != index.end())
            return it->second;
        State id = static_cast<State>(list.size());
        list.push_back(name);
        index[name] = id;
        return id;
    }
};

bool is_header(const Line& line, const char* name)
{
    return !line.tokens.empty() && line.tokens[0] == name;
}

std::vector<std::string> header_rest(const Line& line)
{
    return {line.tokens.begin() + 1, line.tokens.end()};
}

/// Reads `{ a , b }` starting at tokens[i]; returns one past the brace.
std::size_t parse_braced(const Line& line, std::size_t i,
                         std::vector<std::string>& out)
{
    if (i >= line.tokens.size() || line.tokens[i] != "{")
        fail(line, "expected '{'");
    ++i;
    while (i < line.tokens.size() && line.tokens[i] != "}") {
        if (line.tokens[i] != ",")
            out.push_back(line.tokens[i]);
        ++i;
    }
    if (i >= line.tokens.size())
        fail(line, "unterminated '{'");
    return i + 1;
}

std::size_t parse_bracketed(const Line& line, std::size_t i,
                            std::vector<std::string>& out)
{
    if (i >= line.tokens.size() || line.tokens[i] != "[")
        fail(line, "expected '['");
    ++i;
    while (i < line.tokens.size() && line.tokens[i] != "]") {
        if (line.tokens[i] != ",")
            out.push_back(line.tokens[i]);
        ++i;
    }
    if (i >= line.tokens.size())
        fail(line, "unterminated '['");
    return i + 1;
}

unsigned parse_uint(const Line& line, const std::string& tok)
{
    try {
        std::size_t pos = 0;
        unsigned long v = std::stoul(tok, &pos);
        if (pos != tok.size())
            fail(line, "malformed number '" + tok + "'");
        return static_cast<unsigned>(v);
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, "malformed number '" + tok + "'");
    }
}

void expect_arrow(const Line& line, std::size_t i)
{
    if (i >= line.tokens.size() || line.tokens[i] != "->")
        fail(line, "expected '->'");
}

// ---------------------------------------------------------------- cma --

Cma parse_cma(const std::vector<Line>& lines)
{
    Cma a;
    Names states(a.states);
    bool saw_initial = false, saw_local = false;
    std::set<std::string> alphabet_seen;
    auto letter = [&](const std::string& l) {
        if (alphabet_seen.insert(l).second)
            a.alphabet.push_back(l);
        return l;
    };
    std::vector<std::pair<Line, bool>> pending_accepting; // local?
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "states:")) {
            for (auto& s : header_rest(line))
                states.get(s);
        } else if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                letter(s);
        } else if (is_header(line, "initial:")) {
            if (line.tokens.size() != 2)
                fail(line, "initial: takes one state");
            a.initial = states.get(line.tokens[1]);
            saw_initial = true;
        } else if (is_header(line, "locally_accepting:")) {
            saw_local = true;
            for (auto& s : header_rest(line))
                a.locally_accepting.insert(states.get(s));
        } else if (is_header(line, "globally_accepting:")) {
            for (auto& s : header_rest(line))
                a.globally_accepting.insert(states.get(s));
        } else if (is_header(line, "silent")) {
            if (line.tokens.size() != 4 || line.tokens[2] != "->")
                fail(line, "silent syntax: silent q -> q'");
            a.silent.emplace(states.get(line.tokens[1]),
                             states.get(line.tokens[3]));
        } else if (is_header(line, "trans")) {
            if (line.tokens.size() != 6 || line.tokens[4] != "->")
                fail(line, "trans syntax: trans q a s -> q'");
            std::optional<State> mem;
            if (line.tokens[3] != "bot")
                mem = states.get(line.tokens[3]);
            a.add_transition(states.get(line.tokens[1]),
                             letter(line.tokens[2]), mem,
                             states.get(line.tokens[5]));
        } else {
            fail(line, "unrecognized line in a cma description");
        }
    }
    if (!saw_initial && !a.states.empty())
        a.initial = 0;
    if (!saw_local)
        for (State q = 0; q < a.states.size(); ++q)
            a.locally_accepting.insert(q);
    a.validate();
    return a;
}

std::string opt_state(const std::vector<std::string>& names,
                      const std::optional<State>& s)
{
    return s ? names[*s] : "bot";
}

} // namespace

std::string print_cma(const Cma& a)
{
    std::ostringstream out;
    out << "model: cma\n";
    out << "states:";
    for (auto& s : a.states)
        out << ' ' << checked(s);
    out << "\nalphabet:";
    for (auto& s : a.alphabet)
        out << ' ' << checked(s);
    out << "\ninitial: " << a.states[a.initial] << '\n';
    if (!a.is_weak()) {
        out << "locally_accepting:";
        for (State q : a.locally_accepting)
            out << ' ' << a.states[q];
        out << '\n';
    }
    out << "globally_accepting:";
    for (State q : a.globally_accepting)
        out << ' ' << a.states[q];
    out << '\n';
    for (auto& [key, succs] : a.delta)
        for (State to : succs)
            out << "trans " << a.states[key.from] << ' ' << key.letter << ' '
                << opt_state(a.states, key.memory) << " -> " << a.states[to]
                << '\n';
    for (auto& [p, q] : a.silent)
        out << "silent " << a.states[p] << " -> " << a.states[q] << '\n';
    return out.str();
}

namespace {

// ---------------------------------------------------------------- cca --

Cca parse_cca(const std::vector<Line>& lines)
{
    Cca a;
    Names states(a.states);
    std::set<std::string> alphabet_seen;
    auto letter = [&](const std::string& l) {
        if (alphabet_seen.insert(l).second)
            a.alphabet.push_back(l);
        return l;
    };
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "states:")) {
            for (auto& s : header_rest(line))
                states.get(s);
        } else if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                letter(s);
        } else if (is_header(line, "initial:")) {
            a.initial = states.get(line.tokens.at(1));
        } else if (is_header(line, "accepting:")) {
            for (auto& s : header_rest(line))
                a.accepting.insert(states.get(s));
        } else if (is_header(line, "trans")) {
            // trans q a ( op e ) inc|set m -> q'
            if (line.tokens.size() != 11 || line.tokens[3] != "(" ||
                line.tokens[6] != ")" || line.tokens[9] != "->")
                fail(line, "trans syntax: trans q a (op e) inc|set m -> q'");
            CcaTransition t;
            t.from = states.get(line.tokens[1]);
            t.letter = letter(line.tokens[2]);
            const std::string& op = line.tokens[4];
            if (op == "=")
                t.guard.op = CmpOp::eq;
            else if (op == "!=")
                t.guard.op = CmpOp::neq;
            else if (op == "<")
                t.guard.op = CmpOp::lt;
            else if (op == ">")
                t.guard.op = CmpOp::gt;
            else
                fail(line, "unknown comparison '" + op + "'");
            t.guard.bound = parse_uint(line, line.tokens[5]);
            if (line.tokens[7] == "inc")
                t.op = CounterOp::inc;
            else if (line.tokens[7] == "set")
                t.op = CounterOp::set;
            else
                fail(line, "counter op must be inc or set");
            t.operand = parse_uint(line, line.tokens[8]);
            t.to = states.get(line.tokens[10]);
            a.delta.push_back(std::move(t));
        } else {
            fail(line, "unrecognized line in a cca description");
        }
    }
    a.validate();
    return a;
}

const char* cmp_name(CmpOp op)
{
    switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::neq: return "!=";
    case CmpOp::lt: return "<";
    case CmpOp::gt: return ">";
    }
    return "=";
}

} // namespace

std::string print_cca(const Cca& a)
{
    std::ostringstream out;
    out << "model: cca\nstates:";
    for (auto& s : a.states)
        out << ' ' << checked(s);
    out << "\nalphabet:";
    for (auto& s : a.alphabet)
        out << ' ' << checked(s);
    out << "\ninitial: " << a.states[a.initial] << "\naccepting:";
    for (State q : a.accepting)
        out << ' ' << a.states[q];
    out << '\n';
    for (const CcaTransition& t : a.delta)
        out << "trans " << a.states[t.from] << ' ' << t.letter << " ("
            << cmp_name(t.guard.op) << ' ' << t.guard.bound << ") "
            << (t.op == CounterOp::inc ? "inc" : "set") << ' ' << t.operand
            << " -> " << a.states[t.to] << '\n';
    return out.str();
}

namespace {

// -------------------------------------------------------------- nrhra --

NrHra parse_nrhra(const std::vector<Line>& lines)
{
    NrHra a;
    Names states(a.states);
    std::set<std::string> alphabet_seen;
    auto letter = [&](const std::string& l) {
        if (alphabet_seen.insert(l).second)
            a.alphabet.push_back(l);
        return l;
    };
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "type:")) {
            a.type_m = parse_uint(line, line.tokens.at(1));
        } else if (is_header(line, "states:")) {
            for (auto& s : header_rest(line))
                states.get(s);
        } else if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                letter(s);
        } else if (is_header(line, "initial:")) {
            a.initial = states.get(line.tokens.at(1));
        } else if (is_header(line, "accepting:")) {
            for (auto& s : header_rest(line))
                a.accepting.insert(states.get(s));
        } else if (is_header(line, "trans")) {
            // trans q a { X } { Y } -> q'
            NrHraTransition t;
            t.from = states.get(line.tokens.at(1));
            t.letter = letter(line.tokens.at(2));
            std::vector<std::string> xs, ys;
            std::size_t i = parse_braced(line, 3, xs);
            i = parse_braced(line, i, ys);
            expect_arrow(line, i);
            t.to = states.get(line.tokens.at(i + 1));
            for (auto& x : xs)
                t.required |= 1u << (parse_uint(line, x) - 1);
            for (auto& y : ys)
                t.assigned |= 1u << (parse_uint(line, y) - 1);
            a.delta.push_back(std::move(t));
        } else {
            fail(line, "unrecognized line in a nrhra description");
        }
    }
    a.validate();
    return a;
}

std::string history_set(HistorySet s)
{
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < 31; ++i)
        if (s & (1u << i)) {
            if (!first)
                out += ',';
            out += std::to_string(i + 1);
            first = false;
        }
    return out + "}";
}

} // namespace

std::string print_nrhra(const NrHra& a)
{
    std::ostringstream out;
    out << "model: nrhra\ntype: " << a.type_m << "\nstates:";
    for (auto& s : a.states)
        out << ' ' << checked(s);
    out << "\nalphabet:";
    for (auto& s : a.alphabet)
        out << ' ' << checked(s);
    out << "\ninitial: " << a.states[a.initial] << "\naccepting:";
    for (State q : a.accepting)
        out << ' ' << a.states[q];
    out << '\n';
    for (const NrHraTransition& t : a.delta)
        out << "trans " << a.states[t.from] << ' ' << t.letter << ' '
            << history_set(t.required) << ' ' << history_set(t.assigned)
            << " -> " << a.states[t.to] << '\n';
    return out.str();
}

namespace {

// ------------------------------------------------------------- da/nda --

void parse_da_line(const Line& line, Transducer& base,
                   std::vector<Nfa>& classes, Names& base_states,
                   std::vector<Names>& class_states, bool nda)
{
    auto class_index = [&](std::size_t tok) -> std::size_t {
        if (!nda)
            return 0;
        unsigned i = parse_uint(line, line.tokens.at(tok));
        if (i < 1 || i > classes.size())
            fail(line, "class index out of range");
        return i - 1;
    };
    std::size_t shift = nda ? 1 : 0;
    if (is_header(line, "base_states:")) {
        for (auto& s : header_rest(line))
            base_states.get(s);
    } else if (is_header(line, "base_initial:")) {
        base.initial = base_states.get(line.tokens.at(1));
    } else if (is_header(line, "base_accepting:")) {
        for (auto& s : header_rest(line))
            base.accepting.insert(base_states.get(s));
    } else if (is_header(line, "base_trans")) {
        // base_trans p a/x -> p'
        if (line.tokens.size() != 5 || line.tokens[3] != "->")
            fail(line, "base_trans syntax: base_trans p a/x -> p'");
        Transducer::Rule r;
        r.from = base_states.get(line.tokens[1]);
        auto slash = line.tokens[2].find('/');
        if (slash == std::string::npos)
            fail(line, "expected in/out letter pair");
        r.in = line.tokens[2].substr(0, slash);
        r.out = line.tokens[2].substr(slash + 1);
        r.to = base_states.get(line.tokens[4]);
        if (std::find(base.input_alphabet.begin(), base.input_alphabet.end(),
                      r.in) == base.input_alphabet.end())
            base.input_alphabet.push_back(r.in);
        if (std::find(base.output_alphabet.begin(),
                      base.output_alphabet.end(),
                      r.out) == base.output_alphabet.end())
            base.output_alphabet.push_back(r.out);
        base.rules.push_back(std::move(r));
    } else if (is_header(line, "class_states:")) {
        std::size_t c = class_index(1);
        for (std::size_t i = 1 + shift; i < line.tokens.size(); ++i)
            class_states[c].get(line.tokens[i]);
    } else if (is_header(line, "class_initial")) {
        std::size_t c = class_index(1);
        classes[c].initial = class_states[c].get(line.tokens.at(1 + shift));
    } else if (is_header(line, "class_accepting")) {
        std::size_t c = class_index(1);
        for (std::size_t i = 1 + shift; i < line.tokens.size(); ++i)
            classes[c].accepting.insert(class_states[c].get(line.tokens[i]));
    } else if (is_header(line, "class_trans")) {
        std::size_t c = class_index(1);
        // class_trans [i] c x -> c'
        std::size_t base_tok = 1 + shift;
        if (line.tokens.size() != base_tok + 4 ||
            line.tokens[base_tok + 2] != "->")
            fail(line, "class_trans syntax: class_trans c x -> c'");
        Nfa::Rule r;
        r.from = class_states[c].get(line.tokens[base_tok]);
        r.letter = line.tokens[base_tok + 1];
        r.to = class_states[c].get(line.tokens[base_tok + 3]);
        if (std::find(classes[c].alphabet.begin(), classes[c].alphabet.end(),
                      r.letter) == classes[c].alphabet.end())
            classes[c].alphabet.push_back(r.letter);
        classes[c].rules.push_back(std::move(r));
    } else {
        fail(line, "unrecognized line in a data automaton description");
    }
}

Da parse_da(const std::vector<Line>& lines)
{
    Da d;
    Names base_states(d.base.states);
    std::vector<Nfa> classes(1);
    std::vector<Names> class_states;
    class_states.emplace_back(classes[0].states);
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                if (std::find(d.base.input_alphabet.begin(),
                              d.base.input_alphabet.end(),
                              s) == d.base.input_alphabet.end())
                    d.base.input_alphabet.push_back(s);
            continue;
        }
        if (is_header(line, "output_alphabet:")) {
            for (auto& s : header_rest(line))
                if (std::find(d.base.output_alphabet.begin(),
                              d.base.output_alphabet.end(),
                              s) == d.base.output_alphabet.end())
                    d.base.output_alphabet.push_back(s);
            continue;
        }
        parse_da_line(line, d.base, classes, base_states, class_states,
                      false);
    }
    // the class automaton shares the transducer's output alphabet
    for (auto& s : d.base.output_alphabet)
        if (std::find(classes[0].alphabet.begin(), classes[0].alphabet.end(),
                      s) == classes[0].alphabet.end())
            classes[0].alphabet.push_back(s);
    d.cls = std::move(classes[0]);
    d.validate();
    return d;
}

Nda parse_nda(const std::vector<Line>& lines)
{
    Nda d;
    unsigned levels = 0;
    for (const Line& line : lines)
        if (is_header(line, "levels:"))
            levels = parse_uint(line, line.tokens.at(1));
    if (levels == 0)
        throw ParseError(1, "nda needs a 'levels:' header");
    d.cls.resize(levels);
    Names base_states(d.base.states);
    std::vector<Names> class_states;
    for (Nfa& b : d.cls)
        class_states.emplace_back(b.states);
    for (const Line& line : lines) {
        if (is_header(line, "model:") || is_header(line, "levels:"))
            continue;
        if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                if (std::find(d.base.input_alphabet.begin(),
                              d.base.input_alphabet.end(),
                              s) == d.base.input_alphabet.end())
                    d.base.input_alphabet.push_back(s);
            continue;
        }
        if (is_header(line, "output_alphabet:")) {
            for (auto& s : header_rest(line))
                if (std::find(d.base.output_alphabet.begin(),
                              d.base.output_alphabet.end(),
                              s) == d.base.output_alphabet.end())
                    d.base.output_alphabet.push_back(s);
            continue;
        }
        parse_da_line(line, d.base, d.cls, base_states, class_states, true);
    }
    for (Nfa& b : d.cls)
        for (auto& s : d.base.output_alphabet)
            if (std::find(b.alphabet.begin(), b.alphabet.end(), s) ==
                b.alphabet.end())
                b.alphabet.push_back(s);
    d.validate();
    return d;
}

} // namespace

std::string print_da(const Da& d)
{
    std::ostringstream out;
    out << "model: da\nalphabet:";
    for (auto& s : d.base.input_alphabet)
        out << ' ' << s;
    out << "\noutput_alphabet:";
    for (auto& s : d.base.output_alphabet)
        out << ' ' << s;
    out << "\nbase_states:";
    for (auto& s : d.base.states)
        out << ' ' << checked(s);
    out << "\nbase_initial: " << d.base.states[d.base.initial]
        << "\nbase_accepting:";
    for (State q : d.base.accepting)
        out << ' ' << d.base.states[q];
    out << '\n';
    for (auto& r : d.base.rules)
        out << "base_trans " << d.base.states[r.from] << ' ' << r.in << '/'
            << r.out << " -> " << d.base.states[r.to] << '\n';
    out << "class_states:";
    for (auto& s : d.cls.states)
        out << ' ' << s;
    out << "\nclass_initial " << d.cls.states[d.cls.initial]
        << "\nclass_accepting";
    for (State q : d.cls.accepting)
        out << ' ' << d.cls.states[q];
    out << '\n';
    for (auto& r : d.cls.rules)
        out << "class_trans " << d.cls.states[r.from] << ' ' << r.letter
            << " -> " << d.cls.states[r.to] << '\n';
    return out.str();
}

std::string print_nda(const Nda& d)
{
    std::ostringstream out;
    out << "model: nda\nlevels: " << d.depth() << "\nalphabet:";
    for (auto& s : d.base.input_alphabet)
        out << ' ' << s;
    out << "\noutput_alphabet:";
    for (auto& s : d.base.output_alphabet)
        out << ' ' << s;
    out << "\nbase_states:";
    for (auto& s : d.base.states)
        out << ' ' << checked(s);
    out << "\nbase_initial: " << d.base.states[d.base.initial]
        << "\nbase_accepting:";
    for (State q : d.base.accepting)
        out << ' ' << d.base.states[q];
    out << '\n';
    for (auto& r : d.base.rules)
        out << "base_trans " << d.base.states[r.from] << ' ' << r.in << '/'
            << r.out << " -> " << d.base.states[r.to] << '\n';
    for (unsigned i = 0; i < d.depth(); ++i) {
        const Nfa& b = d.cls[i];
        out << "class_states: " << i + 1;
        for (auto& s : b.states)
            out << ' ' << s;
        out << "\nclass_initial " << i + 1 << ' ' << b.states[b.initial]
            << "\nclass_accepting " << i + 1;
        for (State q : b.accepting)
            out << ' ' << b.states[q];
        out << '\n';
        for (auto& r : b.rules)
            out << "class_trans " << i + 1 << ' ' << b.states[r.from] << ' '
                << r.letter << " -> " << b.states[r.to] << '\n';
    }
    return out.str();
}

namespace {

// -------------------------------------------------------------- ndcma --

std::vector<std::optional<State>>
parse_guard_list(const Line& line, const std::vector<std::string>& raw,
                 Names& states)
{
    std::vector<std::optional<State>> out;
    for (auto& s : raw) {
        if (s == "bot")
            out.emplace_back(std::nullopt);
        else
            out.emplace_back(states.get(s));
    }
    (void)line;
    return out;
}

Ndcma parse_ndcma(const std::vector<Line>& lines)
{
    Ndcma a;
    Names states(a.states);
    bool saw_local = false;
    std::set<std::string> alphabet_seen;
    auto letter = [&](const std::string& l) {
        if (alphabet_seen.insert(l).second)
            a.alphabet.push_back(l);
        return l;
    };
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "level:")) {
            a.level = parse_uint(line, line.tokens.at(1));
        } else if (is_header(line, "states:")) {
            for (auto& s : header_rest(line))
                states.get(s);
        } else if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                letter(s);
        } else if (is_header(line, "initial:")) {
            a.initial = states.get(line.tokens.at(1));
        } else if (is_header(line, "locally_accepting:")) {
            saw_local = true;
            for (auto& s : header_rest(line))
                a.locally_accepting.insert(states.get(s));
        } else if (is_header(line, "globally_accepting:")) {
            for (auto& s : header_rest(line))
                a.globally_accepting.insert(states.get(s));
        } else if (is_header(line, "trans")) {
            // trans q a level i [ g1 , ... ] -> q'
            if (line.tokens.size() < 8 || line.tokens[3] != "level")
                fail(line,
                     "trans syntax: trans q a level i [g1,...,gi] -> q'");
            State from = states.get(line.tokens[1]);
            std::string l = letter(line.tokens[2]);
            unsigned lvl = parse_uint(line, line.tokens[4]);
            std::vector<std::string> raw;
            std::size_t i = parse_bracketed(line, 5, raw);
            expect_arrow(line, i);
            if (raw.size() != lvl)
                fail(line, "guard width must equal the level");
            a.add_transition(from, l, parse_guard_list(line, raw, states),
                             states.get(line.tokens.at(i + 1)));
        } else {
            fail(line, "unrecognized line in a ndcma description");
        }
    }
    if (!saw_local)
        for (State q = 0; q < a.states.size(); ++q)
            a.locally_accepting.insert(q);
    a.validate();
    return a;
}

SugaredNdcma parse_sugared(const std::vector<Line>& lines)
{
    SugaredNdcma a;
    Names states(a.states);
    bool saw_local = false;
    std::set<std::string> alphabet_seen;
    auto letter = [&](const std::string& l) {
        if (alphabet_seen.insert(l).second)
            a.alphabet.push_back(l);
        return l;
    };
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "level:")) {
            a.level = parse_uint(line, line.tokens.at(1));
        } else if (is_header(line, "states:")) {
            for (auto& s : header_rest(line))
                states.get(s);
        } else if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                letter(s);
        } else if (is_header(line, "initial:")) {
            a.initial = states.get(line.tokens.at(1));
        } else if (is_header(line, "locally_accepting:")) {
            saw_local = true;
            for (auto& s : header_rest(line))
                a.locally_accepting.insert(states.get(s));
        } else if (is_header(line, "globally_accepting:")) {
            for (auto& s : header_rest(line))
                a.globally_accepting.insert(states.get(s));
        } else if (is_header(line, "trans")) {
            // trans q a level i [ g0 ... gi ] -> q' [ t0 ... ti ]
            if (line.tokens.size() < 10 || line.tokens[3] != "level")
                fail(line, "trans syntax: trans q a level i [g0,...,gi] -> "
                           "q' [t0,...,ti]");
            SugaredKey key;
            key.from = states.get(line.tokens[1]);
            key.letter = letter(line.tokens[2]);
            key.level = parse_uint(line, line.tokens[4]);
            std::vector<std::string> raw;
            std::size_t i = parse_bracketed(line, 5, raw);
            if (raw.size() != key.level + 1)
                fail(line, "guard width must be level + 1");
            key.guard = parse_guard_list(line, raw, states);
            expect_arrow(line, i);
            SugaredTarget t;
            t.to = states.get(line.tokens.at(i + 1));
            std::vector<std::string> writes;
            std::size_t j = parse_bracketed(line, i + 2, writes);
            if (j != line.tokens.size())
                fail(line, "trailing tokens after the write list");
            if (writes.size() != key.level + 1)
                fail(line, "write width must be level + 1");
            for (auto& w : writes)
                t.writes.push_back(states.get(w));
            a.delta[key].insert(std::move(t));
        } else {
            fail(line, "unrecognized line in a sugared ndcma description");
        }
    }
    if (!saw_local)
        for (State q = 0; q < a.states.size(); ++q)
            a.locally_accepting.insert(q);
    a.validate();
    return a;
}

} // namespace

std::string print_ndcma(const Ndcma& a)
{
    std::ostringstream out;
    out << "model: ndcma\nlevel: " << a.level << "\nstates:";
    for (auto& s : a.states)
        out << ' ' << checked(s);
    out << "\nalphabet:";
    for (auto& s : a.alphabet)
        out << ' ' << checked(s);
    out << "\ninitial: " << a.states[a.initial] << '\n';
    if (!a.is_weak()) {
        out << "locally_accepting:";
        for (State q : a.locally_accepting)
            out << ' ' << a.states[q];
        out << '\n';
    }
    out << "globally_accepting:";
    for (State q : a.globally_accepting)
        out << ' ' << a.states[q];
    out << '\n';
    for (auto& [key, succs] : a.delta)
        for (State to : succs) {
            out << "trans " << a.states[key.from] << ' ' << key.letter
                << " level " << key.level << " [";
            for (std::size_t i = 0; i < key.guard.size(); ++i)
                out << (i ? "," : "") << opt_state(a.states, key.guard[i]);
            out << "] -> " << a.states[to] << '\n';
        }
    return out.str();
}

std::string print_sugared_ndcma(const SugaredNdcma& a)
{
    std::ostringstream out;
    out << "model: sugared-ndcma\nlevel: " << a.level << "\nstates:";
    for (auto& s : a.states)
        out << ' ' << checked(s);
    out << "\nalphabet:";
    for (auto& s : a.alphabet)
        out << ' ' << checked(s);
    out << "\ninitial: " << a.states[a.initial] << '\n';
    if (!a.is_weak()) {
        out << "locally_accepting:";
        for (State q : a.locally_accepting)
            out << ' ' << a.states[q];
        out << '\n';
    }
    out << "globally_accepting:";
    for (State q : a.globally_accepting)
        out << ' ' << a.states[q];
    out << '\n';
    for (auto& [key, targets] : a.delta)
        for (const SugaredTarget& t : targets) {
            out << "trans " << a.states[key.from] << ' ' << key.letter
                << " level " << key.level << " [";
            for (std::size_t i = 0; i < key.guard.size(); ++i)
                out << (i ? "," : "") << opt_state(a.states, key.guard[i]);
            out << "] -> " << a.states[t.to] << " [";
            for (std::size_t i = 0; i < t.writes.size(); ++i)
                out << (i ? "," : "") << a.states[t.writes[i]];
            out << "]\n";
        }
    return out.str();
}

namespace {

// -------------------------------------------------------------- homca --

HomcaOp parse_homca_op(const Line& line, const std::string& tok)
{
    if (tok == "nop")
        return op_nop();
    auto under = tok.find('_');
    if (under == std::string::npos)
        fail(line, "malformed counter operation '" + tok + "'");
    std::string head = tok.substr(0, under);
    std::string rest = tok.substr(under + 1);
    if (head == "new")
        return op_make(parse_uint(line, rest));
    if (head == "store")
        return op_store(parse_uint(line, rest));
    if (head == "load")
        return op_load(parse_uint(line, rest));
    if (head == "inc")
        return op_inc(rest);
    if (head == "dec")
        return op_dec(rest);
    fail(line, "malformed counter operation '" + tok + "'");
}

Homca parse_homca(const std::vector<Line>& lines)
{
    Homca a;
    Names states(a.states);
    std::set<std::string> alphabet_seen;
    auto letter = [&](const std::string& l) {
        if (alphabet_seen.insert(l).second)
            a.alphabet.push_back(l);
        return l;
    };
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "variant:")) {
            const std::string& v = line.tokens.at(1);
            if (v == "homca")
                a.prime = false;
            else if (v == "homca'")
                a.prime = true;
            else
                fail(line, "variant must be homca or homca'");
        } else if (is_header(line, "weak:")) {
            const std::string& v = line.tokens.at(1);
            if (v == "yes")
                a.weak = true;
            else if (v == "no")
                a.weak = false;
            else
                fail(line, "weak must be yes or no");
        } else if (is_header(line, "level:")) {
            a.level = parse_uint(line, line.tokens.at(1));
        } else if (is_header(line, "states:")) {
            for (auto& s : header_rest(line))
                states.get(s);
        } else if (is_header(line, "alphabet:")) {
            for (auto& s : header_rest(line))
                letter(s);
        } else if (is_header(line, "multiset_alphabet:")) {
            for (auto& s : header_rest(line))
                if (std::find(a.multiset_alphabet.begin(),
                              a.multiset_alphabet.end(),
                              s) == a.multiset_alphabet.end())
                    a.multiset_alphabet.push_back(s);
        } else if (is_header(line, "initial:")) {
            a.initial = states.get(line.tokens.at(1));
        } else if (is_header(line, "accepting:")) {
            for (auto& s : header_rest(line))
                a.accepting.insert(states.get(s));
        } else if (is_header(line, "trans")) {
            // trans q a|eps op -> q'
            if (line.tokens.size() != 6 || line.tokens[4] != "->")
                fail(line, "trans syntax: trans q a|eps op -> q'");
            HomcaTransition t;
            t.from = states.get(line.tokens[1]);
            if (line.tokens[2] != "eps")
                t.input = letter(line.tokens[2]);
            t.op = parse_homca_op(line, line.tokens[3]);
            t.to = states.get(line.tokens[5]);
            a.delta.push_back(std::move(t));
        } else {
            fail(line, "unrecognized line in a homca description");
        }
    }
    a.validate();
    return a;
}

std::string homca_op_text(const HomcaOp& op)
{
    switch (op.kind) {
    case HomcaOpKind::make: return "new_" + std::to_string(op.index);
    case HomcaOpKind::store: return "store_" + std::to_string(op.index);
    case HomcaOpKind::load: return "load_" + std::to_string(op.index);
    case HomcaOpKind::inc: return "inc_" + op.letter;
    case HomcaOpKind::dec: return "dec_" + op.letter;
    case HomcaOpKind::nop: return "nop";
    }
    return "nop";
}

} // namespace

std::string print_homca(const Homca& a)
{
    std::ostringstream out;
    out << "model: homca\nvariant: " << (a.prime ? "homca'" : "homca")
        << "\nweak: " << (a.weak ? "yes" : "no") << "\nlevel: " << a.level
        << "\nstates:";
    for (auto& s : a.states)
        out << ' ' << checked(s);
    out << "\nalphabet:";
    for (auto& s : a.alphabet)
        out << ' ' << checked(s);
    out << "\nmultiset_alphabet:";
    for (auto& s : a.multiset_alphabet)
        out << ' ' << checked(s);
    out << "\ninitial: " << a.states[a.initial] << "\naccepting:";
    for (State q : a.accepting)
        out << ' ' << a.states[q];
    out << '\n';
    for (const HomcaTransition& t : a.delta)
        out << "trans " << a.states[t.from] << ' '
            << (t.input ? *t.input : "eps") << ' ' << homca_op_text(t.op)
            << " -> " << a.states[t.to] << '\n';
    return out.str();
}

namespace {

// ---------------------------------------------------------------- vas --

Valuation parse_valuation(const Line& line, std::size_t i,
                          const std::vector<std::string>& counters,
                          std::size_t* end = nullptr)
{
    // { c1 : 2 , c2 : 1 } with ':'-joined tokens kept whole
    Valuation v(counters.size(), 0);
    if (i >= line.tokens.size() || line.tokens[i] != "{")
        fail(line, "expected '{'");
    ++i;
    while (i < line.tokens.size() && line.tokens[i] != "}") {
        if (line.tokens[i] == ",") {
            ++i;
            continue;
        }
        const std::string& tok = line.tokens[i];
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            fail(line, "expected counter:count");
        std::string name = tok.substr(0, colon);
        std::uint32_t count = parse_uint(line, tok.substr(colon + 1));
        auto it = std::find(counters.begin(), counters.end(), name);
        if (it == counters.end())
            fail(line, "unknown counter '" + name + "'");
        v[static_cast<std::size_t>(it - counters.begin())] = count;
        ++i;
    }
    if (i >= line.tokens.size())
        fail(line, "unterminated '{'");
    if (end)
        *end = i + 1;
    return v;
}

VasInstance parse_vas(const std::vector<Line>& lines)
{
    VasInstance v;
    Names controls(v.controls);
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "counters:")) {
            for (auto& s : header_rest(line))
                v.counters.push_back(s);
        } else if (is_header(line, "controls:")) {
            for (auto& s : header_rest(line))
                controls.get(s);
        } else if (is_header(line, "initial:")) {
            v.initial_control = controls.get(line.tokens.at(1));
            v.initial_valuation = parse_valuation(line, 2, v.counters);
        } else if (is_header(line, "rule")) {
            // rule q [ dec: c1 , c1 ] [ inc: c2 ] -> q'
            VasRule r;
            r.from = controls.get(line.tokens.at(1));
            r.guard.assign(v.counters.size(), 0);
            r.effect.assign(v.counters.size(), 0);
            std::vector<std::string> decs, incs;
            std::size_t i = parse_bracketed(line, 2, decs);
            i = parse_bracketed(line, i, incs);
            expect_arrow(line, i);
            r.to = controls.get(line.tokens.at(i + 1));
            auto bump = [&](const std::vector<std::string>& items,
                            Valuation& val, const char* head) {
                for (std::size_t k = 0; k < items.size(); ++k) {
                    if (k == 0) {
                        if (items[k] != head)
                            fail(line, std::string("expected '") + head +
                                           "'");
                        continue;
                    }
                    auto it = std::find(v.counters.begin(), v.counters.end(),
                                        items[k]);
                    if (it == v.counters.end())
                        fail(line, "unknown counter '" + items[k] + "'");
                    ++val[static_cast<std::size_t>(it - v.counters.begin())];
                }
            };
            bump(decs, r.guard, "dec:");
            bump(incs, r.effect, "inc:");
            r.name = "rule" + std::to_string(v.rules.size());
            v.rules.push_back(std::move(r));
        } else if (is_header(line, "cover")) {
            VasTarget t;
            t.control = controls.get(line.tokens.at(1));
            t.minimum = parse_valuation(line, 2, v.counters);
            v.targets.push_back(std::move(t));
        } else {
            fail(line, "unrecognized line in a vas description");
        }
    }
    v.validate();
    return v;
}

std::string valuation_text(const Valuation& v,
                           const std::vector<std::string>& counters)
{
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        if (!first)
            out += ", ";
        out += counters[i] + ":" + std::to_string(v[i]);
        first = false;
    }
    return out + "}";
}

} // namespace

std::string print_vas(const VasInstance& v)
{
    std::ostringstream out;
    out << "model: vas\ncounters:";
    for (auto& c : v.counters)
        out << ' ' << checked(c);
    out << "\ncontrols:";
    for (auto& c : v.controls)
        out << ' ' << checked(c);
    out << "\ninitial: " << v.controls[v.initial_control] << ' '
        << valuation_text(v.initial_valuation, v.counters) << '\n';
    for (const VasRule& r : v.rules) {
        out << "rule " << v.controls[r.from] << " [dec:";
        for (std::size_t i = 0; i < r.guard.size(); ++i)
            for (std::uint32_t k = 0; k < r.guard[i]; ++k)
                out << ' ' << v.counters[i];
        out << "] [inc:";
        for (std::size_t i = 0; i < r.effect.size(); ++i)
            for (std::uint32_t k = 0; k < r.effect[i]; ++k)
                out << ' ' << v.counters[i];
        out << "] -> " << v.controls[r.to] << '\n';
    }
    for (const VasTarget& t : v.targets)
        out << "cover " << v.controls[t.control] << ' '
            << valuation_text(t.minimum, v.counters) << '\n';
    return out.str();
}

namespace {

// ---------------------------------------------------------------- net --

PetriNet parse_net(const std::vector<Line>& lines)
{
    PetriNet net;
    auto add_count = [&](const Line& line, Marking& m,
                         const std::string& tok) {
        auto colon = tok.find(':');
        std::string p = colon == std::string::npos ? tok
                                                   : tok.substr(0, colon);
        std::uint32_t n = colon == std::string::npos
                              ? 1
                              : parse_uint(line, tok.substr(colon + 1));
        m[p] += n;
    };
    for (const Line& line : lines) {
        if (is_header(line, "model:"))
            continue;
        if (is_header(line, "place")) {
            // place p [init n]
            net.places.push_back(line.tokens.at(1));
            if (line.tokens.size() == 4 && line.tokens[2] == "init")
                net.initial[line.tokens[1]] =
                    parse_uint(line, line.tokens[3]);
            else if (line.tokens.size() != 2)
                fail(line, "place syntax: place p [init n]");
        } else if (is_header(line, "trans")) {
            PetriTransition t;
            t.name = line.tokens.at(1);
            enum { none, in, outp, reset } mode = none;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                const std::string& tok = line.tokens[i];
                if (tok == "in")
                    mode = in;
                else if (tok == "out")
                    mode = outp;
                else if (tok == "reset")
                    mode = reset;
                else if (mode == in)
                    add_count(line, t.inputs, tok);
                else if (mode == outp)
                    add_count(line, t.outputs, tok);
                else if (mode == reset)
                    t.resets.insert(tok);
                else
                    fail(line, "expected in/out/reset before '" + tok + "'");
            }
            net.transitions.push_back(std::move(t));
        } else if (is_header(line, "query")) {
            const std::string& kind = line.tokens.at(1);
            if (kind == "cover")
                net.query = QueryKind::coverability;
            else if (kind == "reach")
                net.query = QueryKind::reachability;
            else
                fail(line, "query kind must be cover or reach");
            for (std::size_t i = 2; i < line.tokens.size(); ++i)
                add_count(line, net.target, line.tokens[i]);
        } else {
            fail(line, "unrecognized line in a net description");
        }
    }
    net.validate();
    return net;
}

} // namespace

std::string print_net(const PetriNet& net)
{
    std::ostringstream out;
    out << "model: net\n";
    for (auto& p : net.places) {
        out << "place " << checked(p);
        auto it = net.initial.find(p);
        if (it != net.initial.end())
            out << " init " << it->second;
        out << '\n';
    }
    for (auto& t : net.transitions) {
        out << "trans " << t.name;
        if (!t.inputs.empty()) {
            out << " in";
            for (auto& [p, n] : t.inputs)
                out << ' ' << p << ':' << n;
        }
        if (!t.resets.empty()) {
            out << " reset";
            for (auto& p : t.resets)
                out << ' ' << p;
        }
        if (!t.outputs.empty()) {
            out << " out";
            for (auto& [p, n] : t.outputs)
                out << ' ' << p << ':' << n;
        }
        out << '\n';
    }
    out << "query "
        << (net.query == QueryKind::coverability ? "cover" : "reach");
    for (auto& [p, n] : net.target)
        out << ' ' << p << ':' << n;
    out << '\n';
    return out.str();
}

const char* artifact_model_name(const Artifact& a)
{
    switch (a.index()) {
    case 0: return "cma";
    case 1: return "cca";
    case 2: return "nrhra";
    case 3: return "da";
    case 4: return "nda";
    case 5: return "ndcma";
    case 6: return "sugared-ndcma";
    case 7: return "homca";
    case 8: return "vas";
    case 9: return "net";
    }
    return "unknown";
}

Artifact parse_artifact(const std::string& text)
{
    std::vector<Line> lines = tokenize(text);
    if (lines.empty() || !is_header(lines[0], "model:") ||
        lines[0].tokens.size() != 2)
        throw ParseError(1, "expected a 'model: <name>' header");
    const std::string& model = lines[0].tokens[1];
    if (model == "cma")
        return parse_cma(lines);
    if (model == "cca")
        return parse_cca(lines);
    if (model == "nrhra")
        return parse_nrhra(lines);
    if (model == "da")
        return parse_da(lines);
    if (model == "nda")
        return parse_nda(lines);
    if (model == "ndcma")
        return parse_ndcma(lines);
    if (model == "sugared-ndcma")
        return parse_sugared(lines);
    if (model == "homca")
        return parse_homca(lines);
    if (model == "vas")
        return parse_vas(lines);
    if (model == "net")
        return parse_net(lines);
    throw ParseError(lines[0].number, "unknown model '" + model + "'");
}

Artifact parse_artifact_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_artifact(buf.str());
}

std::string print_artifact(const Artifact& a)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Cma>)
                return print_cma(x);
            else if constexpr (std::is_same_v<T, Cca>)
                return print_cca(x);
            else if constexpr (std::is_same_v<T, NrHra>)
                return print_nrhra(x);
            else if constexpr (std::is_same_v<T, Da>)
                return print_da(x);
            else if constexpr (std::is_same_v<T, Nda>)
                return print_nda(x);
            else if constexpr (std::is_same_v<T, Ndcma>)
                return print_ndcma(x);
            else if constexpr (std::is_same_v<T, SugaredNdcma>)
                return print_sugared_ndcma(x);
            else if constexpr (std::is_same_v<T, Homca>)
                return print_homca(x);
            else if constexpr (std::is_same_v<T, VasInstance>)
                return print_vas(x);
            else
                return print_net(x);
        },
        a);
}

// ---------------------------------------------------------------- word --

ParsedWord parse_word(const std::string& text)
{
    std::vector<Line> lines = tokenize(text);
    if (lines.empty() || !is_header(lines[0], "word:"))
        throw ParseError(1, "expected a 'word: <kind>' header");
    const std::string& kind = lines[0].tokens.at(1);

    std::vector<std::string> alphabet;
    std::set<std::string> alphabet_seen;
    auto letter = [&](const std::string& l) {
        if (alphabet_seen.insert(l).second)
            alphabet.push_back(l);
        return l;
    };

    auto body = [&](auto&& entry) {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const Line& line = lines[i];
            if (is_header(line, "alphabet:")) {
                for (auto& s : header_rest(line))
                    letter(s);
                continue;
            }
            entry(line);
        }
    };

    if (kind == "flat" || kind == "nested") {
        unsigned level = 1;
        if (kind == "nested")
            level = parse_uint(lines[0], lines[0].tokens.at(2));
        DataWord w;
        w.universe = DataUniverse::make(level);
        std::map<std::string, DataValue> by_path;
        body([&](const Line& line) {
            if (line.tokens.size() != 2)
                fail(line, "word lines are 'letter value'");
            std::string l = letter(line.tokens[0]);
            const std::string& path = line.tokens[1];
            // slash paths name ancestors; prefixes are created on demand
            std::string prefix;
            DataValue parent = w.universe->root();
            std::size_t start = 0;
            DataValue value = parent;
            while (start <= path.size()) {
                auto slash = path.find('/', start);
                std::string seg = path.substr(
                    start, slash == std::string::npos ? std::string::npos
                                                      : slash - start);
                if (seg.empty())
                    fail(line, "empty path segment");
                prefix += (prefix.empty() ? "" : "/") + seg;
                auto it = by_path.find(prefix);
                if (it == by_path.end()) {
                    if (w.universe->level(parent) >=
                        w.universe->level_bound())
                        fail(line, "path deeper than the universe level");
                    DataValue v = parent == w.universe->root()
                                      ? w.universe->fresh(seg)
                                      : w.universe->fresh_child(parent, seg);
                    it = by_path.emplace(prefix, v).first;
                }
                value = parent = it->second;
                if (slash == std::string::npos)
                    break;
                start = slash + 1;
            }
            w.entries.push_back(DataWord::Entry{l, value});
        });
        w.alphabet = alphabet;
        w.validate();
        return ParsedWord{std::move(w)};
    }
    if (kind == "tuple") {
        unsigned depth = parse_uint(lines[0], lines[0].tokens.at(2));
        TupleDataWord w;
        w.depth = depth;
        w.universe = DataUniverse::make(1);
        std::map<std::string, DataValue> by_name;
        body([&](const Line& line) {
            if (line.tokens.size() != 1 + depth)
                fail(line, "tuple word lines carry one letter and " +
                               std::to_string(depth) + " values");
            TupleDataWord::Entry e;
            e.letter = letter(line.tokens[0]);
            for (unsigned i = 1; i <= depth; ++i) {
                auto it = by_name.find(line.tokens[i]);
                if (it == by_name.end())
                    it = by_name
                             .emplace(line.tokens[i],
                                      w.universe->fresh(line.tokens[i]))
                             .first;
                e.values.push_back(it->second);
            }
            w.entries.push_back(std::move(e));
        });
        w.alphabet = alphabet;
        w.validate();
        return ParsedWord{std::move(w)};
    }
    throw ParseError(lines[0].number,
                     "word kind must be flat, nested or tuple");
}

ParsedWord parse_word_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_word(buf.str());
}

std::string print_word(const DataWord& w)
{
    std::ostringstream out;
    unsigned level = w.universe ? w.universe->level_bound() : 1;
    if (level == 1)
        out << "word: flat\n";
    else
        out << "word: nested " << level << '\n';
    out << "alphabet:";
    for (auto& a : w.alphabet)
        out << ' ' << checked(a);
    out << '\n';
    for (const auto& e : w.entries)
        out << e.letter << ' '
            << (w.universe ? w.universe->path(e.value)
                           : "v" + std::to_string(e.value.id))
            << '\n';
    return out.str();
}

std::string print_tuple_word(const TupleDataWord& w)
{
    std::ostringstream out;
    out << "word: tuple " << w.depth << "\nalphabet:";
    for (auto& a : w.alphabet)
        out << ' ' << checked(a);
    out << '\n';
    for (const auto& e : w.entries) {
        out << e.letter;
        for (DataValue v : e.values)
            out << ' '
                << (w.universe ? w.universe->label(v)
                               : "v" + std::to_string(v.id));
        out << '\n';
    }
    return out.str();
}

} // namespace datamata
