// Surface syntax: parsing to the primitive AST and canonical rendering.

#ifndef TEAMLOGIC_PARSER_HPP
#define TEAMLOGIC_PARSER_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "teamlogic/formula.hpp"

namespace teamlogic {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Schematic letters. Identifiers listed here parse to Meta formulas or meta
// terms instead of atoms and variables.
struct MetaDecls {
  std::map<std::string, MetaSort> formulas;
  std::set<std::string> terms;

  bool empty() const { return formulas.empty() && terms.empty(); }
};

Formula parse(const std::string& text, const Signature& sig = Signature::open_signature(),
              const MetaDecls& metas = {});

Term parse_term(const std::string& text, const Signature& sig = Signature::open_signature(),
                const MetaDecls& metas = {});

// Canonical text with abbreviations restored and minimal parentheses.
std::string render(const Formula& f);
std::string render(const Term& t);

// Signature from the JSON header format
// {"relations":{name:arity}, "functions":{name:arity}, "constants":[...]}.
Signature parse_signature_json(const std::string& text);

}  // namespace teamlogic

#endif  // TEAMLOGIC_PARSER_HPP
