// format.hpp - one interchange grammar for every model, plus word files.
// A `model:` header selects the section schema; printers emit the
// canonical form, and parse(print(x)) == x on every description.
#pragma once

#include "datamata/cca.hpp"
#include "datamata/cma.hpp"
#include "datamata/dataaut.hpp"
#include "datamata/homca.hpp"
#include "datamata/hra.hpp"
#include "datamata/ndcma.hpp"
#include "datamata/petrinet.hpp"
#include "datamata/vas.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>

namespace datamata {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

using Artifact = std::variant<Cma, Cca, NrHra, Da, Nda, Ndcma, SugaredNdcma,
                              Homca, VasInstance, PetriNet>;

const char* artifact_model_name(const Artifact& a);

Artifact parse_artifact(const std::string& text);
Artifact parse_artifact_file(const std::string& path);

std::string print_artifact(const Artifact& a);
std::string print_cma(const Cma& a);
std::string print_cca(const Cca& a);
std::string print_nrhra(const NrHra& a);
std::string print_da(const Da& a);
std::string print_nda(const Nda& a);
std::string print_ndcma(const Ndcma& a);
std::string print_sugared_ndcma(const SugaredNdcma& a);
std::string print_homca(const Homca& a);
std::string print_vas(const VasInstance& a);
std::string print_net(const PetriNet& a);

/// Word files: header `word: flat`, `word: nested <level>`, or
/// `word: tuple <k>`; one `letter value...` line per position, nested
/// values as slash paths.
struct ParsedWord {
    std::variant<DataWord, TupleDataWord> word;
    bool is_tuple() const
    {
        return std::holds_alternative<TupleDataWord>(word);
    }
};

ParsedWord parse_word(const std::string& text);
ParsedWord parse_word_file(const std::string& path);
std::string print_word(const DataWord& w);
std::string print_tuple_word(const TupleDataWord& w);

} // namespace datamata
