#include <random>

#include "doctest.h"
#include "elenchus/formula.hpp"

using namespace elenchus;

namespace {

Term c() { return Term::constant("c"); }
Term d() { return Term::constant("d"); }
Term x() { return Term::variable("X"); }
Term y() { return Term::variable("Y"); }

Formula p(Term t) { return Formula::atom("p", {std::move(t)}); }
Formula q(Term t) { return Formula::atom("q", {std::move(t)}); }

// Small random formula generator for the property checks below.
Formula random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  switch (pick(rng)) {
    case 0:
      return Formula::atom("p", {x()});
    case 1:
      return Formula::atom(pick(rng) % 2 ? "q" : "r", {Term::function("f", {x()}), c()});
    case 2:
      return Formula::negation(random_formula(rng, depth - 1));
    case 3:
      return Formula::conjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4:
      return Formula::disjunction(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5:
      return Formula::implication(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6:
      return Formula::forall("X", random_formula(rng, depth - 1));
    default:
      return Formula::exists("Y", random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("substitution replaces free occurrences only") {
  CHECK(substitute(p(x()), "X", c()) == p(c()));
  // bound occurrence stays put
  Formula all = Formula::forall("X", p(x()));
  CHECK(substitute(all, "X", c()) == all);
  // free occurrence under a different binder, compound closed term
  Formula mixed = Formula::exists("Y", Formula::conjunction(p(x()), q(y())));
  Formula expect =
      Formula::exists("Y", Formula::conjunction(p(Term::function("f", {c()})), q(y())));
  CHECK(substitute(mixed, "X", Term::function("f", {c()})) == expect);
}

TEST_CASE("substitution rejects open replacement terms") {
  CHECK_THROWS_AS(substitute(p(x()), "X", y()), std::invalid_argument);
  CHECK_THROWS_AS(substitute(p(x()), "X", Term::function("f", {y()})), std::invalid_argument);
}

TEST_CASE("free variables") {
  CHECK(free_variables(Formula::forall("X", p(x()))).empty());
  Formula imp = Formula::implication(p(x()), q(y()));
  CHECK(free_variables(imp) == std::set<std::string>{"X", "Y"});
  Formula ex = Formula::exists("Y", Formula::conjunction(p(x()), q(y())));
  CHECK(free_variables(ex) == std::set<std::string>{"X"});
}

TEST_CASE("atomicity") {
  CHECK(is_atomic(p(c())));
  CHECK_FALSE(is_atomic(Formula::negation(p(c()))));
  CHECK_FALSE(is_atomic(Formula::conjunction(Formula::atom("p"), Formula::atom("q"))));
}

TEST_CASE("closed subterms, nested and deduplicated") {
  Formula f = p(Term::function("f", {c()}));
  auto ts = closed_subterms(f);
  REQUIRE(ts.size() == 2);
  CHECK(ts[0] == Term::function("f", {c()}));
  CHECK(ts[1] == c());

  CHECK(closed_subterms(Formula::forall("X", p(x()))).empty());

  auto both = closed_subterms(Formula::conjunction(p(c()), q(d())));
  REQUIRE(both.size() == 2);
  CHECK(both[0] == c());
  CHECK(both[1] == d());
}

TEST_CASE("syntactic identity distinguishes bound-variable names") {
  Formula fx = Formula::forall("X", p(x()));
  Formula fy = Formula::forall("Y", p(y()));
  CHECK(fx != fy);
  CHECK(fx == Formula::forall("X", p(x())));
}

TEST_CASE("substitution is the identity for absent variables") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 4);
    if (!free_variables(f).count("Z")) CHECK(substitute(f, "Z", c()) == f);
  }
}

TEST_CASE("substitution eliminates the variable") {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, 4);
    Formula g = substitute(f, "X", c());
    CHECK_FALSE(free_variables(g).count("X"));
  }
}

namespace {

// Structure-equal copy through fresh nodes, so equality below is not a
// pointer shortcut.
Formula rebuild(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
      return Formula::atom(f.predicate(), f.terms());
    case Connective::Not:
      return Formula::negation(rebuild(f.left()));
    case Connective::And:
      return Formula::conjunction(rebuild(f.left()), rebuild(f.right()));
    case Connective::Or:
      return Formula::disjunction(rebuild(f.left()), rebuild(f.right()));
    case Connective::Implies:
      return Formula::implication(rebuild(f.left()), rebuild(f.right()));
    case Connective::Forall:
      return Formula::forall(f.bound_var(), rebuild(f.body()));
    case Connective::Exists:
      return Formula::exists(f.bound_var(), rebuild(f.body()));
  }
  throw std::logic_error("rebuild");
}

}  // namespace

TEST_CASE("equal formulas agree on hashes and derived sets") {
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    Formula f = random_formula(rng, 4);
    Formula g = rebuild(f);
    CHECK(f == g);
    CHECK(f.hash() == g.hash());
    CHECK(free_variables(f) == free_variables(g));
    auto a = closed_subterms(f), b = closed_subterms(g);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
  }
}

TEST_CASE("quantifier-free flag") {
  CHECK(Formula::atom("p").is_quantifier_free());
  CHECK_FALSE(Formula::forall("X", p(x())).is_quantifier_free());
  CHECK_FALSE(Formula::negation(Formula::exists("X", p(x()))).is_quantifier_free());
}

TEST_CASE("rendering") {
  Formula f = Formula::implication(Formula::atom("p"),
                                   Formula::conjunction(Formula::atom("q"), Formula::atom("p")));
  CHECK(f.to_string() == "p => ( q & p )");
  CHECK(Formula::forall("X", p(x())).to_string() == "! [X] : p(X)");
  CHECK(Term::function("f", {c(), x()}).to_string() == "f(c,X)");
}
