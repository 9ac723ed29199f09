#include "datamata/cli.hpp"

#include "datamata/format.hpp"
#include "datamata/petrinet.hpp"
#include "datamata/wsts.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace datamata {

namespace {

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 10;
constexpr int kIo = 11;
constexpr int kIncompatible = 12;

struct Incompatible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& text, const std::string& out_path,
                  std::ostream& out)
{
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f)
        throw std::runtime_error("cannot write '" + out_path + "'");
    f << text;
}

std::string tree_text(const LabelledTree& t,
                      const std::vector<std::string>& names, int node = 0)
{
    std::string out =
        node == 0 ? "root" : names[t.label(node)];
    auto kids = t.children(node);
    if (kids.empty())
        return out;
    out += "(";
    for (std::size_t i = 0; i < kids.size(); ++i)
        out += (i ? "," : "") + tree_text(t, names, kids[i]);
    return out + ")";
}

const Cma& as_cma(const Artifact& a, const std::string& model)
{
    const Cma* c = std::get_if<Cma>(&a);
    if (!c)
        throw Incompatible("model tag '" + model +
                           "' needs a cma description, got " +
                           artifact_model_name(a));
    if ((model == "wcma" || model == "dwcma") && !c->is_weak())
        throw Incompatible("model tag '" + model +
                           "' needs a weak machine (all states locally "
                           "accepting)");
    if (model == "dwcma" && !c->is_deterministic())
        throw Incompatible("model tag 'dwcma' needs a deterministic machine");
    return *c;
}

const Ndcma& as_ndcma(const Artifact& a, const std::string& model)
{
    const Ndcma* n = std::get_if<Ndcma>(&a);
    if (!n)
        throw Incompatible("model tag '" + model +
                           "' needs a ndcma description, got " +
                           artifact_model_name(a));
    if ((model == "wndcma" || model == "dwndcma") && !n->is_weak())
        throw Incompatible("model tag '" + model + "' needs a weak machine");
    if (model == "dwndcma" && !n->is_deterministic())
        throw Incompatible(
            "model tag 'dwndcma' needs a deterministic machine");
    return *n;
}

const DataWord& flat_word(const ParsedWord& w)
{
    const DataWord* d = std::get_if<DataWord>(&w.word);
    if (!d)
        throw Incompatible("this model runs on flat or nested words, got a "
                           "tuple word");
    return *d;
}

int do_run(const std::string& model, const Artifact& art,
           const ParsedWord& word, std::optional<unsigned> eps_budget,
           std::ostream& out)
{
    bool accepted = false;
    if (model == "cma" || model == "wcma" || model == "dwcma") {
        const Cma& a = as_cma(art, model);
        auto run = cma_find_run(a, flat_word(word));
        accepted = run.has_value();
        if (run && !run->empty()) {
            const CmaConfiguration& last = run->back().after;
            out << "final control: " << a.states[last.control] << "\n";
            for (auto& [d, q] : last.memory.assignments())
                out << "memory " << flat_word(word).universe->path(d)
                    << " -> " << a.states[q] << "\n";
        }
    } else if (model == "cca") {
        accepted = cca_accepts(std::get<Cca>(art), flat_word(word));
    } else if (model == "nrhra") {
        accepted = nrhra_accepts(std::get<NrHra>(art), flat_word(word));
    } else if (model == "da") {
        accepted = da_accepts(std::get<Da>(art), flat_word(word));
    } else if (model == "nda") {
        const TupleDataWord* t = std::get_if<TupleDataWord>(&word.word);
        if (!t)
            throw Incompatible("nda runs on tuple words");
        accepted = nda_accepts(std::get<Nda>(art), *t);
    } else if (model == "ndcma" || model == "wndcma") {
        accepted = ndcma_accepts(as_ndcma(art, model), flat_word(word));
    } else if (model == "sugared-ndcma") {
        accepted =
            sugared_accepts(std::get<SugaredNdcma>(art), flat_word(word));
    } else if (model == "homca") {
        accepted = homca_accepts(std::get<Homca>(art),
                                 flat_word(word).str(), eps_budget);
    } else {
        throw Incompatible("verb 'run' does not apply to model '" + model +
                           "'");
    }
    out << (accepted ? "accepted" : "rejected") << "\n";
    return accepted ? kAccept : kReject;
}

int do_empty(const std::string& model, const Artifact& art,
             std::optional<unsigned> bound, std::ostream& out)
{
    if (model == "wcma") {
        const Cma& a = as_cma(art, model);
        auto witness = wcma_witness_word(a);
        if (witness) {
            out << "nonempty\n" << print_word(*witness);
            auto fired = decode_firing_sequence(a, *witness);
            if (!fired.empty()) {
                out << "firing sequence:";
                for (auto& t : fired)
                    out << ' ' << t;
                out << "\n";
            }
            return kAccept;
        }
        out << "empty\n";
        return kReject;
    }
    if (model == "wndcma") {
        const Ndcma& a = as_ndcma(art, model);
        WstsEmptinessResult r = ndcma_weak_empty(a);
        if (!r.empty) {
            out << "nonempty\n";
            for (const WstsCertificateStep& step : r.certificate)
                out << "step " << step.transition.letter << " level "
                    << step.transition.level << " -> "
                    << a.states[step.control_after] << " "
                    << tree_text(step.tree_after, a.states) << "\n";
            return kAccept;
        }
        out << "empty\n";
        return kReject;
    }
    if (model == "vas") {
        const VasInstance& v = std::get<VasInstance>(art);
        CoverResult r = vas_cover(v);
        if (r.coverable) {
            out << "coverable\n";
            for (std::size_t ri : r.certificate->rules)
                out << "fire " << v.rules[ri].name << "\n";
            return kAccept;
        }
        out << "not coverable\n";
        return kReject;
    }
    if (model == "cma") {
        const Cma& a = as_cma(art, model);
        if (a.is_weak() && !bound) {
            out << "note: the machine is weak; the exact engine applies\n";
            return do_empty("wcma", art, bound, out);
        }
        if (!bound)
            throw Incompatible(
                "emptiness of a general cma is equivalent to Petri net "
                "reachability and out of scope; pass --bound N for the "
                "forward semi-decision");
        BoundedEmptinessResult r = cma_empty_bounded(a, *bound);
        if (r.verdict == BoundedVerdict::nonempty) {
            out << "nonempty\n" << print_word(*r.witness);
            return kAccept;
        }
        out << "unknown (no witness within bound " << *bound << ")\n";
        return kUnknown;
    }
    if (model == "ndcma") {
        const Ndcma& a = as_ndcma(art, model);
        if (a.is_weak() && !bound)
            return do_empty("wndcma", art, bound, out);
        if (!bound)
            throw Incompatible(
                "emptiness of a general ndcma is undecidable; pass "
                "--bound N for the forward semi-decision");
        NdcmaBoundedResult r = ndcma_empty_bounded(a, *bound);
        if (r.verdict == NdcmaBoundedResult::Verdict::nonempty) {
            out << "nonempty\nstring:";
            for (auto& l : *r.witness_str)
                out << ' ' << l;
            out << "\n";
            return kAccept;
        }
        if (r.verdict == NdcmaBoundedResult::Verdict::exhausted_empty) {
            out << "empty (state space exhausted)\n";
            return kReject;
        }
        out << "unknown (no witness within bound " << *bound << ")\n";
        return kUnknown;
    }
    if (model == "homca")
        throw Incompatible("homca emptiness is Turing-complete at level 2 "
                           "and above; not provided");
    throw Incompatible("verb 'empty' does not apply to model '" + model +
                       "'");
}

int do_translate(const std::string& kind, const Artifact& art,
                 const std::string& out_path, std::ostream& out)
{
    Artifact result = art;
    if (kind == "wcma-to-cca")
        result = wcma_to_cca(eliminate_silent(as_cma(art, "wcma")));
    else if (kind == "cca-to-wcma")
        result = cca_to_wcma(std::get<Cca>(art));
    else if (kind == "wcma-to-nrhra")
        result = wcma_to_nrhra(eliminate_silent(as_cma(art, "wcma")));
    else if (kind == "nrhra-to-wcma")
        result = nrhra_to_wcma(std::get<NrHra>(art));
    else if (kind == "wcma-to-vas")
        result = wcma_to_vas(eliminate_silent(as_cma(art, "wcma")));
    else if (kind == "eliminate-silent")
        result = eliminate_silent(as_cma(art, "cma"));
    else if (kind == "homca-to-homca-prime")
        result = homca_to_homca_prime(std::get<Homca>(art));
    else if (kind == "homca-prime-to-homca")
        result = homca_prime_to_homca(std::get<Homca>(art));
    else if (kind == "ndcma-to-homca-prime")
        result = ndcma_to_homca_prime(as_ndcma(art, "ndcma"));
    else if (kind == "homca-prime-to-ndcma")
        result = homca_prime_to_ndcma(std::get<Homca>(art));
    else if (kind == "desugar")
        result = desugar(std::get<SugaredNdcma>(art));
    else if (kind == "cma-to-ndcma")
        result = ndcma_from_cma(eliminate_silent(as_cma(art, "cma")));
    else
        throw Incompatible("unknown translation '" + kind + "'");
    write_output(print_artifact(result), out_path, out);
    return kAccept;
}

int do_boolean(const std::string& op, const Artifact& a,
               const std::optional<Artifact>& b, const std::string& out_path,
               std::ostream& out)
{
    Artifact result = a;
    if (std::holds_alternative<Cma>(a)) {
        const Cma& x = std::get<Cma>(a);
        if (op == "complement")
            result = complement_dwcma(complete(eliminate_silent(x)));
        else if (op == "complete")
            result = complete(eliminate_silent(x));
        else if (op == "intersect" || op == "union") {
            if (!b || !std::holds_alternative<Cma>(*b))
                throw Incompatible("binary boolean needs two cma inputs");
            BooleanMode mode = op == "union" ? BooleanMode::union_
                                             : BooleanMode::intersection;
            const Cma& y = std::get<Cma>(*b);
            if (mode == BooleanMode::union_)
                result = product(complete(eliminate_silent(x)),
                                 complete(eliminate_silent(y)), mode);
            else
                result = product(x, y, mode);
        } else {
            throw Incompatible("unknown boolean op '" + op + "'");
        }
    } else if (std::holds_alternative<Ndcma>(a)) {
        const Ndcma& x = std::get<Ndcma>(a);
        if (op == "complement")
            result = ndcma_complement_dw(x);
        else if (op == "complete")
            result = ndcma_complete(x);
        else if (op == "intersect" || op == "union") {
            if (!b || !std::holds_alternative<Ndcma>(*b))
                throw Incompatible("binary boolean needs two ndcma inputs");
            result = ndcma_product(x, std::get<Ndcma>(*b),
                                   op == "union" ? BooleanMode::union_
                                                 : BooleanMode::intersection);
        } else {
            throw Incompatible("unknown boolean op '" + op + "'");
        }
    } else {
        throw Incompatible(
            "boolean operations apply to cma and ndcma descriptions");
    }
    write_output(print_artifact(result), out_path, out);
    return kAccept;
}

int do_equiv(const std::string& model, const Artifact& a, const Artifact& b,
             std::ostream& out)
{
    if (model == "dwcma") {
        Cma x = complete(eliminate_silent(as_cma(a, "dwcma")));
        Cma y = complete(eliminate_silent(as_cma(b, "dwcma")));
        if (!x.same_alphabet(y))
            throw Incompatible("equiv needs machines over one alphabet");
        auto witness_x = wcma_witness_word(
            product(x, complement_dwcma(y), BooleanMode::intersection));
        auto witness_y = wcma_witness_word(
            product(y, complement_dwcma(x), BooleanMode::intersection));
        if (!witness_x && !witness_y) {
            out << "equivalent\n";
            return kAccept;
        }
        out << "inequivalent\n";
        const auto& w = witness_x ? *witness_x : *witness_y;
        out << (witness_x ? "accepted only by the first machine:\n"
                          : "accepted only by the second machine:\n");
        out << print_word(w);
        return kReject;
    }
    if (model == "dwndcma") {
        const Ndcma& x0 = as_ndcma(a, "dwndcma");
        const Ndcma& y0 = as_ndcma(b, "dwndcma");
        Ndcma x = ndcma_complete(x0);
        Ndcma y = ndcma_complete(y0);
        WstsEmptinessResult rx = ndcma_weak_empty(
            ndcma_product(x, ndcma_complement_dw(y0),
                          BooleanMode::intersection));
        WstsEmptinessResult ry = ndcma_weak_empty(
            ndcma_product(y, ndcma_complement_dw(x0),
                          BooleanMode::intersection));
        if (rx.empty && ry.empty) {
            out << "equivalent\n";
            return kAccept;
        }
        out << "inequivalent\n";
        const auto& cert = rx.empty ? ry.certificate : rx.certificate;
        out << "distinguishing letters:";
        for (const WstsCertificateStep& step : cert)
            out << ' ' << step.transition.letter;
        out << "\n";
        return kReject;
    }
    throw Incompatible("equiv applies to dwcma or dwndcma");
}

int do_encode(const PetriNet& net, bool nested, const std::string& out_path,
              std::ostream& out)
{
    if (net.has_resets() && !nested)
        throw Incompatible(
            "the flat encoders reject reset arcs; pass --nested");
    Artifact result = net;
    if (nested) {
        if (net.query == QueryKind::reachability)
            result = encode_reset_reachability_ndcma(net);
        else
            result = encode_reset_coverability_weak_ndcma(net);
    } else {
        if (net.query == QueryKind::reachability)
            result = encode_reachability_cma(net);
        else
            result = encode_coverability_wcma(net);
    }
    write_output(print_artifact(result), out_path, out);
    return kAccept;
}

int do_certify(const std::string& model, const Artifact& art,
               std::ostream& out)
{
    if (model == "wcma") {
        const Cma& a0 = as_cma(art, model);
        Cma a = eliminate_silent(a0);
        VasInstance v = wcma_to_vas(a);
        CoverResult r = vas_cover(v);
        if (!r.coverable) {
            out << "empty (backward basis size " << r.basis_size << ")\n";
            return kReject;
        }
        out << "nonempty\n";
        for (std::size_t ri : r.certificate->rules)
            out << "fire " << v.rules[ri].name << "\n";
        auto reached = replay_certificate(v, *r.certificate);
        out << (reached ? "certificate replays onto the target\n"
                        : "certificate replay FAILED\n");
        return reached ? kAccept : kIo;
    }
    if (model == "wndcma") {
        const Ndcma& a = as_ndcma(art, model);
        WstsEmptinessResult r = ndcma_weak_empty(a);
        if (r.empty) {
            out << "empty (backward basis size " << r.basis_size << ")\n";
            return kReject;
        }
        out << "nonempty\n";
        for (const WstsCertificateStep& step : r.certificate)
            out << "step " << step.transition.letter << " level "
                << step.transition.level << " -> "
                << a.states[step.control_after] << " "
                << tree_text(step.tree_after, a.states) << "\n";
        bool ok = replay_wsts_certificate(a, r.certificate);
        out << (ok ? "certificate replays onto an accepting control\n"
                   : "certificate replay FAILED\n");
        return ok ? kAccept : kIo;
    }
    throw Incompatible("certify applies to wcma or wndcma");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err)
{
    CLI::App app{"automata over data words: class memory machines, their "
                 "nested and counting relatives, and emptiness engines"};
    app.require_subcommand(1);

    std::string model, kind, op, file_a, file_b, word_file, out_path;
    std::optional<unsigned> bound, eps_budget;
    bool nested = false;

    CLI::App* run = app.add_subcommand("run", "membership of a word");
    run->add_option("model", model)->required();
    run->add_option("automaton", file_a)->required();
    run->add_option("word", word_file)->required();
    run->add_option("--eps-budget", eps_budget,
                    "epsilon steps per position (homca)");

    CLI::App* empty = app.add_subcommand("empty", "language emptiness");
    empty->add_option("model", model)->required();
    empty->add_option("automaton", file_a)->required();
    empty->add_option("--bound", bound, "forward search bound for the "
                                        "semi-decisions");

    CLI::App* translate =
        app.add_subcommand("translate", "inter-model translations");
    translate->add_option("kind", kind)->required();
    translate->add_option("input", file_a)->required();
    translate->add_option("-o,--output", out_path);

    CLI::App* boolean =
        app.add_subcommand("boolean", "products, complements, completion");
    boolean->add_option("op", op)->required();
    boolean->add_option("first", file_a)->required();
    boolean->add_option("second", file_b);
    boolean->add_option("-o,--output", out_path);

    CLI::App* equiv =
        app.add_subcommand("equiv", "equivalence of deterministic weak "
                                    "machines");
    equiv->add_option("model", model)->required();
    equiv->add_option("first", file_a)->required();
    equiv->add_option("second", file_b)->required();

    CLI::App* encode = app.add_subcommand(
        "encode-petri", "net queries as (nested) class memory automata");
    encode->add_option("net", file_a)->required();
    encode->add_flag("--nested", nested, "use the level-2 encoder");
    encode->add_option("-o,--output", out_path);

    CLI::App* certify =
        app.add_subcommand("certify", "emptiness with a replayed "
                                      "certificate");
    certify->add_option("model", model)->required();
    certify->add_option("automaton", file_a)->required();

    CLI::App* reprint =
        app.add_subcommand("print", "canonical reprint of a description");
    reprint->add_option("input", file_a)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help goes to the success stream
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (run->parsed())
            return do_run(model, parse_artifact_file(file_a),
                          parse_word_file(word_file), eps_budget, out);
        if (empty->parsed())
            return do_empty(model, parse_artifact_file(file_a), bound, out);
        if (translate->parsed())
            return do_translate(kind, parse_artifact_file(file_a), out_path,
                                out);
        if (boolean->parsed()) {
            std::optional<Artifact> second;
            if (!file_b.empty())
                second = parse_artifact_file(file_b);
            return do_boolean(op, parse_artifact_file(file_a), second,
                              out_path, out);
        }
        if (equiv->parsed())
            return do_equiv(model, parse_artifact_file(file_a),
                            parse_artifact_file(file_b), out);
        if (encode->parsed()) {
            Artifact art = parse_artifact_file(file_a);
            const PetriNet* net = std::get_if<PetriNet>(&art);
            if (!net)
                throw Incompatible("encode-petri needs a net description");
            return do_encode(*net, nested, out_path, out);
        }
        if (certify->parsed())
            return do_certify(model, parse_artifact_file(file_a), out);
        if (reprint->parsed()) {
            out << print_artifact(parse_artifact_file(file_a));
            return 0;
        }
    } catch (const Incompatible& e) {
        err << "error: " << e.what() << "\n";
        return kIncompatible;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    }
    err << "usage error: no subcommand\n";
    return kUsage;
}

} // namespace datamata
