#include "elenchus/formula.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace elenchus {

namespace {

std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
  return h;
}

std::vector<std::string> merge_sorted(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> erase_sorted(std::vector<std::string> v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Term
// ---------------------------------------------------------------------------

struct Term::Node {
  bool variable;
  std::string symbol;
  std::vector<Term> args;
  bool closed;
  std::uint64_t hash;
};

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  auto n = std::make_shared<Node>();
  n->variable = true;
  n->symbol = std::move(name);
  n->closed = false;
  n->hash = mix(0x761u, fnv64(n->symbol));
  return Term(std::move(n));
}

Term Term::function(std::string functor, std::vector<Term> args) {
  if (functor.empty()) throw std::invalid_argument("functor must be nonempty");
  auto n = std::make_shared<Node>();
  n->variable = false;
  n->symbol = std::move(functor);
  n->args = std::move(args);
  n->closed = true;
  std::uint64_t h = mix(0x66u, fnv64(n->symbol));
  for (const Term& a : n->args) {
    n->closed = n->closed && a.is_closed();
    h = mix(h, a.hash());
  }
  n->hash = h;
  return Term(std::move(n));
}

Term Term::constant(std::string name) { return function(std::move(name), {}); }

bool Term::is_variable() const { return node_->variable; }
const std::string& Term::symbol() const { return node_->symbol; }
const std::vector<Term>& Term::args() const { return node_->args; }
bool Term::is_closed() const { return node_->closed; }
std::uint64_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.node_->variable != b.node_->variable) return false;
  if (a.node_->symbol != b.node_->symbol) return false;
  if (a.node_->args.size() != b.node_->args.size()) return false;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  return true;
}

int compare(const Term& a, const Term& b) {
  if (a == b) return 0;
  if (a.is_variable() != b.is_variable()) return a.is_variable() ? -1 : 1;
  if (int c = a.symbol().compare(b.symbol()); c != 0) return c < 0 ? -1 : 1;
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
  return 0;
}

std::string Term::to_string() const {
  std::string out = node_->symbol;
  if (!node_->args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < node_->args.size(); ++i) {
      if (i) out += ',';
      out += node_->args[i].to_string();
    }
    out += ')';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Formula
// ---------------------------------------------------------------------------

struct Formula::Node {
  Connective kind;
  std::string symbol;                // predicate name / bound variable
  std::vector<Term> terms;           // atom arguments
  std::vector<Formula> children;     // 1 for Not and quantifiers, 2 for binary
  std::vector<std::string> free;     // sorted free variables
  bool quantifier_free;
  std::uint64_t hash;
};

struct FormulaInternals {
  static const Formula::Node* node(const Formula& f) { return f.node_.get(); }
  static Formula wrap(std::shared_ptr<const Formula::Node> n) { return Formula(std::move(n)); }
  static std::shared_ptr<Formula::Node> make() { return std::make_shared<Formula::Node>(); }
};

namespace {

Formula make_node(Connective kind, std::string symbol, std::vector<Term> terms,
                  std::vector<Formula> children) {
  auto n = FormulaInternals::make();
  n->kind = kind;
  n->symbol = std::move(symbol);
  n->terms = std::move(terms);
  n->children = std::move(children);
  n->quantifier_free = kind != Connective::Forall && kind != Connective::Exists;

  std::uint64_t h = mix(static_cast<std::uint64_t>(kind) + 0x11u, fnv64(n->symbol));
  if (n->kind == Connective::Atom) {
    std::vector<std::string> free;
    for (const Term& t : n->terms) {
      h = mix(h, t.hash());
      // collect variables of the term
      std::vector<const Term*> stack{&t};
      while (!stack.empty()) {
        const Term* cur = stack.back();
        stack.pop_back();
        if (cur->is_variable()) {
          free.push_back(cur->symbol());
        } else {
          for (const Term& a : cur->args()) stack.push_back(&a);
        }
      }
    }
    std::sort(free.begin(), free.end());
    free.erase(std::unique(free.begin(), free.end()), free.end());
    n->free = std::move(free);
  } else {
    for (const Formula& c : n->children) {
      h = mix(h, c.hash());
      n->quantifier_free = n->quantifier_free && c.is_quantifier_free();
    }
    if (n->kind == Connective::Forall || n->kind == Connective::Exists) {
      n->free = erase_sorted(n->children[0].free_vars(), n->symbol);
    } else if (n->children.size() == 1) {
      n->free = n->children[0].free_vars();
    } else {
      n->free = merge_sorted(n->children[0].free_vars(), n->children[1].free_vars());
    }
  }
  n->hash = h;
  return FormulaInternals::wrap(std::move(n));
}

}  // namespace

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  if (predicate.empty()) throw std::invalid_argument("predicate must be nonempty");
  return make_node(Connective::Atom, std::move(predicate), std::move(args), {});
}
Formula Formula::negation(Formula f) {
  return make_node(Connective::Not, "", {}, {std::move(f)});
}
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return make_node(Connective::And, "", {}, {std::move(lhs), std::move(rhs)});
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return make_node(Connective::Or, "", {}, {std::move(lhs), std::move(rhs)});
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return make_node(Connective::Implies, "", {}, {std::move(lhs), std::move(rhs)});
}
Formula Formula::forall(std::string var, Formula body) {
  if (var.empty()) throw std::invalid_argument("bound variable must be nonempty");
  return make_node(Connective::Forall, std::move(var), {}, {std::move(body)});
}
Formula Formula::exists(std::string var, Formula body) {
  if (var.empty()) throw std::invalid_argument("bound variable must be nonempty");
  return make_node(Connective::Exists, std::move(var), {}, {std::move(body)});
}

Connective Formula::kind() const { return node_->kind; }

const std::string& Formula::predicate() const {
  if (node_->kind != Connective::Atom) throw std::logic_error("predicate(): not an atom");
  return node_->symbol;
}
const std::vector<Term>& Formula::terms() const {
  if (node_->kind != Connective::Atom) throw std::logic_error("terms(): not an atom");
  return node_->terms;
}
const Formula& Formula::left() const {
  if (node_->children.empty()) throw std::logic_error("left(): leaf formula");
  return node_->children[0];
}
const Formula& Formula::right() const {
  if (node_->children.size() < 2) throw std::logic_error("right(): no right child");
  return node_->children[1];
}
const std::string& Formula::bound_var() const {
  if (node_->kind != Connective::Forall && node_->kind != Connective::Exists)
    throw std::logic_error("bound_var(): not a quantifier");
  return node_->symbol;
}
const Formula& Formula::body() const {
  if (node_->kind != Connective::Forall && node_->kind != Connective::Exists)
    throw std::logic_error("body(): not a quantifier");
  return node_->children[0];
}

std::uint64_t Formula::hash() const { return node_->hash; }
const std::vector<std::string>& Formula::free_vars() const { return node_->free; }
bool Formula::is_quantifier_free() const { return node_->quantifier_free; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto* x = a.node_.get();
  const auto* y = b.node_.get();
  if (x->hash != y->hash || x->kind != y->kind || x->symbol != y->symbol) return false;
  if (x->terms.size() != y->terms.size() || x->children.size() != y->children.size())
    return false;
  for (std::size_t i = 0; i < x->terms.size(); ++i)
    if (!(x->terms[i] == y->terms[i])) return false;
  for (std::size_t i = 0; i < x->children.size(); ++i)
    if (!(x->children[i] == y->children[i])) return false;
  return true;
}

int compare(const Formula& a, const Formula& b) {
  if (a == b) return 0;
  const auto* x = FormulaInternals::node(a);
  const auto* y = FormulaInternals::node(b);
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  if (int c = x->symbol.compare(y->symbol); c != 0) return c < 0 ? -1 : 1;
  if (x->terms.size() != y->terms.size()) return x->terms.size() < y->terms.size() ? -1 : 1;
  for (std::size_t i = 0; i < x->terms.size(); ++i)
    if (int c = compare(x->terms[i], y->terms[i]); c != 0) return c;
  for (std::size_t i = 0; i < x->children.size(); ++i)
    if (int c = compare(x->children[i], y->children[i]); c != 0) return c;
  return 0;
}

namespace {

std::string render(const Formula& f);

std::string render_unit(const Formula& f) {
  // Something that can stand where the grammar wants a unitary formula.
  switch (f.kind()) {
    case Connective::Atom:
      return render(f);
    case Connective::Not:
      return "~ " + render_unit(f.left());
    case Connective::Forall:
      return "! [" + f.bound_var() + "] : " + render_unit(f.body());
    case Connective::Exists:
      return "? [" + f.bound_var() + "] : " + render_unit(f.body());
    default:
      return "( " + render(f) + " )";
  }
}

std::string render(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: {
      std::string out = f.predicate();
      if (!f.terms().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) out += ',';
          out += f.terms()[i].to_string();
        }
        out += ')';
      }
      return out;
    }
    case Connective::Not:
    case Connective::Forall:
    case Connective::Exists:
      return render_unit(f);
    case Connective::And:
      return render_unit(f.left()) + " & " + render_unit(f.right());
    case Connective::Or:
      return render_unit(f.left()) + " | " + render_unit(f.right());
    case Connective::Implies:
      return render_unit(f.left()) + " => " + render_unit(f.right());
  }
  return "?";
}

}  // namespace

std::string Formula::to_string() const { return render(*this); }

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

namespace {

Term substitute_term(const Term& t, const std::string& var, const Term& repl) {
  if (t.is_variable()) return t.symbol() == var ? repl : t;
  if (t.is_closed()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute_term(a, var, repl));
  return Term::function(t.symbol(), std::move(args));
}

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const Term& t) {
  if (!t.is_closed())
    throw std::invalid_argument("substitute: replacement term must be closed");
  // No free occurrence anywhere below: share the node as-is. This also keeps
  // the recursion linear on heavily shared inputs.
  const auto& fv = f.free_vars();
  if (!std::binary_search(fv.begin(), fv.end(), var)) return f;
  switch (f.kind()) {
    case Connective::Atom: {
      std::vector<Term> args;
      args.reserve(f.terms().size());
      for (const Term& a : f.terms()) args.push_back(substitute_term(a, var, t));
      return Formula::atom(f.predicate(), std::move(args));
    }
    case Connective::Not:
      return Formula::negation(substitute(f.left(), var, t));
    case Connective::And:
      return Formula::conjunction(substitute(f.left(), var, t), substitute(f.right(), var, t));
    case Connective::Or:
      return Formula::disjunction(substitute(f.left(), var, t), substitute(f.right(), var, t));
    case Connective::Implies:
      return Formula::implication(substitute(f.left(), var, t), substitute(f.right(), var, t));
    case Connective::Forall:
      if (f.bound_var() == var) return f;  // unreachable: var would not be free
      return Formula::forall(f.bound_var(), substitute(f.body(), var, t));
    case Connective::Exists:
      if (f.bound_var() == var) return f;
      return Formula::exists(f.bound_var(), substitute(f.body(), var, t));
  }
  throw std::logic_error("substitute: bad connective");
}

std::set<std::string> free_variables(const Formula& f) {
  return {f.free_vars().begin(), f.free_vars().end()};
}

bool is_atomic(const Formula& f) { return f.kind() == Connective::Atom; }

namespace {

void collect_closed_terms(const Term& t, std::vector<Term>& out,
                          std::unordered_set<std::uint64_t>& seen_hashes,
                          std::vector<Term>& seen) {
  if (t.is_closed()) {
    bool dup = false;
    if (seen_hashes.count(t.hash())) {
      for (const Term& s : seen)
        if (s == t) {
          dup = true;
          break;
        }
    }
    if (!dup) {
      seen_hashes.insert(t.hash());
      seen.push_back(t);
      out.push_back(t);
    }
  }
  for (const Term& a : t.args()) collect_closed_terms(a, out, seen_hashes, seen);
}

template <typename Fn>
void walk_atoms(const Formula& f, std::unordered_set<const void*>& visited, Fn&& fn) {
  const void* key = FormulaInternals::node(f);
  if (!visited.insert(key).second) return;
  if (f.kind() == Connective::Atom) {
    fn(f);
    return;
  }
  const auto* n = FormulaInternals::node(f);
  for (const Formula& c : n->children) walk_atoms(c, visited, fn);
}

}  // namespace

std::vector<Term> closed_subterms(const Formula& f) {
  std::vector<Term> out;
  std::unordered_set<std::uint64_t> seen_hashes;
  std::vector<Term> seen;
  std::unordered_set<const void*> visited;
  walk_atoms(f, visited, [&](const Formula& atom) {
    for (const Term& t : atom.terms()) collect_closed_terms(t, out, seen_hashes, seen);
  });
  return out;
}

std::set<std::string> function_symbols(const Formula& f) {
  std::set<std::string> out;
  std::unordered_set<const void*> visited;
  walk_atoms(f, visited, [&](const Formula& atom) {
    std::vector<const Term*> stack;
    for (const Term& t : atom.terms()) stack.push_back(&t);
    while (!stack.empty()) {
      const Term* cur = stack.back();
      stack.pop_back();
      if (!cur->is_variable()) {
        out.insert(cur->symbol());
        for (const Term& a : cur->args()) stack.push_back(&a);
      }
    }
  });
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }
std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << f.to_string(); }

}  // namespace elenchus
