#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "elenchus/formula.hpp"

namespace elenchus::tptp {

enum class Role : std::uint8_t {
  Axiom,
  Hypothesis,
  Definition,
  Lemma,
  Theorem,
  Conjecture,
};

const char* role_name(Role r);

struct AnnotatedFormula {
  std::string name;
  Role role;
  Formula formula;
};

struct TptpProblem {
  std::vector<AnnotatedFormula> formulas;  // input order preserved
  std::string source_name;

  bool is_quantifier_free() const;
};

/// Syntax error with a 1-based source position.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Input that parses but falls outside the supported fragment: equality,
/// $true/$false, or a connective we do not handle. Reported per annotated
/// formula; the CLI maps these to the SZS status Inappropriate.
class FragmentViolation : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t {
    EqualityPresent,
    VerumFalsumPresent,
    UnsupportedConnective,
  };
  FragmentViolation(Kind kind, std::string location, const std::string& detail)
      : std::runtime_error(detail + " in formula '" + location + "'"),
        kind_(kind),
        location_(std::move(location)) {}
  Kind kind() const { return kind_; }
  const std::string& location() const { return location_; }

 private:
  Kind kind_;
  std::string location_;
};

class CombineError : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t { NoConjecture, MultipleConjectures };
  CombineError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ParseOptions {
  /// Directory against which include(...) paths are resolved. Empty means
  /// includes are rejected.
  std::string include_root;
  int max_include_depth = 16;
};

/// Parses the FOF subset: `fof(name, role, formula).` statements, `%` line
/// comments and include directives. `<=>` is expanded during parsing into
/// the two implications; free variables are closed universally at the top
/// of each formula. Throws SyntaxError or FragmentViolation; never returns
/// a partially valid problem.
TptpProblem parse_problem(const std::string& text, const std::string& source_name,
                          const ParseOptions& options = {});

/// Reads and parses a file. The include root defaults to the file's parent
/// directory when the options leave it empty.
TptpProblem parse_file(const std::string& path, ParseOptions options = {});

/// Single game formula per the input combination convention: the conjecture
/// alone, or (A1 & (A2 & ... & An)) => C with the non-conjecture formulas
/// right-nested in input order. Throws CombineError unless the problem has
/// exactly one conjecture.
Formula combine(const TptpProblem& problem);

/// Renders a problem back to TPTP text. Reparsing the output yields a
/// syntactically identical problem.
std::string render_problem(const TptpProblem& problem);

/// Parses a bare formula (convenience for tests and the oracle subcommand).
Formula parse_formula(const std::string& text);

}  // namespace elenchus::tptp
