#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "elenchus/tptp.hpp"

using namespace elenchus;
using namespace elenchus::tptp;

namespace {

Formula conjecture_of(const std::string& text) {
  TptpProblem p = parse_problem(text, "<test>");
  REQUIRE(p.formulas.size() >= 1);
  return p.formulas.back().formula;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("tptp_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream out(path / name);
    out << text;
  }
};

}  // namespace

TEST_CASE("parses a single conjecture") {
  TptpProblem p = parse_problem("fof(a, conjecture, p => p).", "<test>");
  REQUIRE(p.formulas.size() == 1);
  CHECK(p.formulas[0].name == "a");
  CHECK(p.formulas[0].role == Role::Conjecture);
  CHECK(p.formulas[0].formula ==
        Formula::implication(Formula::atom("p"), Formula::atom("p")));
}

TEST_CASE("equality anywhere is a fragment violation") {
  CHECK_THROWS_AS(parse_problem("fof(a, axiom, p = q).", "<test>"), FragmentViolation);
  try {
    parse_problem("fof(a, axiom, p = q).", "<test>");
  } catch (const FragmentViolation& v) {
    CHECK(v.kind() == FragmentViolation::Kind::EqualityPresent);
    CHECK(v.location() == "a");
  }
  CHECK_THROWS_AS(parse_problem("fof(a, axiom, ! [X] : ( f(X) != X )).", "<test>"),
                  FragmentViolation);
  CHECK_THROWS_AS(parse_problem("fof(a, axiom, ! [X] : ( X = X )).", "<test>"),
                  FragmentViolation);
}

TEST_CASE("verum and falsum are fragment violations") {
  for (const char* text : {"fof(a, axiom, $true).", "fof(a, axiom, p => $false)."}) {
    try {
      parse_problem(text, "<test>");
      FAIL("expected a fragment violation");
    } catch (const FragmentViolation& v) {
      CHECK(v.kind() == FragmentViolation::Kind::VerumFalsumPresent);
    }
  }
}

TEST_CASE("unsupported connectives are rejected, not desugared") {
  for (const char* text :
       {"fof(a, axiom, p <= q).", "fof(a, axiom, p <~> q).", "fof(a, axiom, p ~| q).",
        "fof(a, axiom, p ~& q)."}) {
    try {
      parse_problem(text, "<test>");
      FAIL("expected a fragment violation");
    } catch (const FragmentViolation& v) {
      CHECK(v.kind() == FragmentViolation::Kind::UnsupportedConnective);
    }
  }
}

TEST_CASE("biconditionals expand during parsing") {
  Formula f = conjecture_of("fof(a, conjecture, p <=> p).");
  Formula imp = Formula::implication(Formula::atom("p"), Formula::atom("p"));
  CHECK(f == Formula::conjunction(imp, imp));
}

TEST_CASE("connective chains and non-associativity") {
  Formula f = conjecture_of("fof(a, conjecture, p & q & r).");
  CHECK(f == Formula::conjunction(
                 Formula::atom("p"),
                 Formula::conjunction(Formula::atom("q"), Formula::atom("r"))));
  CHECK_THROWS_AS(parse_problem("fof(a, conjecture, p & q | r).", "<test>"), SyntaxError);
  CHECK_THROWS_AS(parse_problem("fof(a, conjecture, p => q => r).", "<test>"), SyntaxError);
}

TEST_CASE("quantifier lists and implicit universal closure") {
  Formula f = conjecture_of("fof(a, conjecture, ! [X,Y] : ( p(X) => p(Y) )).");
  Formula expect = Formula::forall(
      "X", Formula::forall("Y", Formula::implication(
                                    Formula::atom("p", {Term::variable("X")}),
                                    Formula::atom("p", {Term::variable("Y")}))));
  CHECK(f == expect);

  // Free variables close universally, first occurrence outermost.
  Formula g = conjecture_of("fof(a, conjecture, p(X) => p(Y)).");
  CHECK(g == expect);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_problem("fof(a, conjecture,\n  p &&).", "<test>");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 0);
  }
  CHECK_THROWS_AS(parse_problem("fof(a, oops, p).", "<test>"), SyntaxError);
  CHECK_THROWS_AS(parse_problem("cnf(a, axiom, p).", "<test>"), SyntaxError);
  CHECK_THROWS_AS(
      parse_problem("fof(a, axiom, p). fof(a, axiom, q).", "<test>"), SyntaxError);
}

TEST_CASE("combine: conjecture alone") {
  TptpProblem p = parse_problem("fof(c, conjecture, p => p).", "<test>");
  CHECK(combine(p) == Formula::implication(Formula::atom("p"), Formula::atom("p")));
}

TEST_CASE("combine: premises right-nested in input order") {
  TptpProblem p = parse_problem(
      "fof(a1, axiom, p). fof(a2, axiom, q). fof(a3, hypothesis, r)."
      "fof(c, conjecture, s).",
      "<test>");
  Formula expect = Formula::implication(
      Formula::conjunction(Formula::atom("p"),
                           Formula::conjunction(Formula::atom("q"), Formula::atom("r"))),
      Formula::atom("s"));
  CHECK(combine(p) == expect);
}

TEST_CASE("combine: conjecture count errors") {
  TptpProblem none = parse_problem("fof(a1, axiom, p).", "<test>");
  CHECK_THROWS_AS(combine(none), CombineError);
  try {
    combine(none);
  } catch (const CombineError& e) {
    CHECK(e.kind() == CombineError::Kind::NoConjecture);
  }
  TptpProblem two =
      parse_problem("fof(c1, conjecture, p). fof(c2, conjecture, q).", "<test>");
  try {
    combine(two);
  } catch (const CombineError& e) {
    CHECK(e.kind() == CombineError::Kind::MultipleConjectures);
  }
}

TEST_CASE("combine preserves the premise multiset") {
  TptpProblem p = parse_problem(
      "fof(a1, axiom, p => q). fof(a2, lemma, ~ q). fof(c, conjecture, ~ p).", "<test>");
  Formula f = combine(p);
  REQUIRE(f.kind() == Connective::Implies);
  // peel the right-nested conjunction back off
  std::vector<Formula> leaves;
  Formula cursor = f.left();
  while (cursor.kind() == Connective::And) {
    leaves.push_back(cursor.left());
    cursor = cursor.right();
  }
  leaves.push_back(cursor);
  REQUIRE(leaves.size() == 2);
  CHECK(leaves[0] == p.formulas[0].formula);
  CHECK(leaves[1] == p.formulas[1].formula);
  CHECK(f.right() == p.formulas[2].formula);
}

TEST_CASE("round-trip: render then reparse is the identity") {
  const char* texts[] = {
      "fof(a, axiom, ! [X] : ( p(X) => q(f(X),c) )).",
      "fof(b, lemma, ~ ( p | ( q & r ) )).",
      "fof(c, conjecture, ( p <=> q ) => ( ? [Y] : s(Y) )).",
  };
  std::string joined;
  for (const char* t : texts) joined += std::string(t) + "\n";
  TptpProblem p = parse_problem(joined, "<test>");
  TptpProblem again = parse_problem(render_problem(p), "<render>");
  REQUIRE(again.formulas.size() == p.formulas.size());
  for (std::size_t i = 0; i < p.formulas.size(); ++i) {
    CHECK(again.formulas[i].name == p.formulas[i].name);
    CHECK(again.formulas[i].role == p.formulas[i].role);
    CHECK(again.formulas[i].formula == p.formulas[i].formula);
  }
}

TEST_CASE("include resolution relative to the include root") {
  TempDir dir;
  dir.write("axioms.ax", "fof(shared, axiom, p => p).\n");
  dir.write("problem.p",
            "include('axioms.ax').\nfof(goal, conjecture, p => p).\n");
  TptpProblem p = parse_file((dir.path / "problem.p").string());
  REQUIRE(p.formulas.size() == 2);
  CHECK(p.formulas[0].name == "shared");
  CHECK(p.formulas[1].role == Role::Conjecture);
}

TEST_CASE("include depth limit stops cycles") {
  TempDir dir;
  dir.write("loop.p", "include('loop.p').\n");
  CHECK_THROWS_AS(parse_file((dir.path / "loop.p").string()), SyntaxError);
}

TEST_CASE("missing include file is a positioned error") {
  TempDir dir;
  dir.write("problem.p", "include('nowhere.ax').\nfof(c, conjecture, p).\n");
  CHECK_THROWS_AS(parse_file((dir.path / "problem.p").string()), SyntaxError);
}
