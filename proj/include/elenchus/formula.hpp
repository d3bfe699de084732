#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace elenchus {

/// First-order term: a variable or a function application. Constants are
/// 0-ary function applications. Terms are immutable values with structural
/// sharing; copying a Term is cheap.
class Term {
 public:
  static Term variable(std::string name);
  static Term function(std::string functor, std::vector<Term> args);
  static Term constant(std::string name);

  bool is_variable() const;
  bool is_function() const { return !is_variable(); }

  /// Variable name or functor symbol.
  const std::string& symbol() const;
  /// Argument list; empty for variables and constants.
  const std::vector<Term>& args() const;

  bool is_closed() const;
  std::uint64_t hash() const;
  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Total order on terms, used where deterministic iteration matters.
int compare(const Term& a, const Term& b);

enum class Connective : std::uint8_t {
  Atom,
  Not,
  And,
  Or,
  Implies,
  Forall,
  Exists,
};

/// Formula of the equality-free fragment: atoms over terms and the
/// connectives ~ & | => ! ?. No verum/falsum constants, no equality.
/// Identity is plain syntactic equality; bound-variable names matter.
/// Shared immutable representation, so subformulas of large inputs
/// (notably expanded equivalence chains) do not get duplicated.
class Formula {
 public:
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Connective kind() const;

  // Atom accessors.
  const std::string& predicate() const;
  const std::vector<Term>& terms() const;

  // Not / And / Or / Implies accessors. For Not, left() is the operand.
  const Formula& left() const;
  const Formula& right() const;

  // Quantifier accessors.
  const std::string& bound_var() const;
  const Formula& body() const;

  std::uint64_t hash() const;
  /// Free variables, sorted. Stored per node, so this is O(1).
  const std::vector<std::string>& free_vars() const;
  bool is_closed() const { return free_vars().empty(); }
  bool is_quantifier_free() const;

  /// TPTP-style rendering with explicit parentheses. Linear in the tree
  /// size, so avoid calling it on formulas with heavy internal sharing.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
  friend struct FormulaInternals;
};

/// Total order on formulas (kind, then symbols, then children).
int compare(const Formula& a, const Formula& b);

/// Replaces every free occurrence of `var` in `f` by the closed term `t`.
/// Throws std::invalid_argument if `t` is open; with closed terms no
/// variable capture is possible.
Formula substitute(const Formula& f, const std::string& var, const Term& t);

std::set<std::string> free_variables(const Formula& f);

bool is_atomic(const Formula& f);

/// All closed terms occurring anywhere in `f`, nested subterms included,
/// deduplicated in first-occurrence order.
std::vector<Term> closed_subterms(const Formula& f);

/// Function symbols occurring anywhere in `f` (used to keep generated
/// constants from colliding with the input signature).
std::set<std::string> function_symbols(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace elenchus

template <>
struct std::hash<elenchus::Term> {
  std::size_t operator()(const elenchus::Term& t) const noexcept {
    return static_cast<std::size_t>(t.hash());
  }
};

template <>
struct std::hash<elenchus::Formula> {
  std::size_t operator()(const elenchus::Formula& f) const noexcept {
    return static_cast<std::size_t>(f.hash());
  }
};
