#include "doctest.h"
#include "elenchus/oracle.hpp"
#include "elenchus/search.hpp"
#include "elenchus/tptp.hpp"

using namespace elenchus;

namespace {

Formula F(const std::string& text) { return tptp::parse_formula(text); }

SearchConfig config(RuleVariant variant = RuleVariant::E, bool no_repeats = true,
                    PreferDefense pd = PreferDefense::Off, int depth = 30) {
  SearchConfig cfg;
  cfg.ruleset.variant = variant;
  cfg.ruleset.no_repeats = no_repeats;
  cfg.prefer_defense = pd;
  cfg.depth_limit = depth;
  cfg.time_limit = std::chrono::milliseconds(20000);
  return cfg;
}

int tree_max_depth(const StrategyNode& n) {
  int best = n.dialogue.size();
  for (const auto& c : n.children) best = std::max(best, tree_max_depth(c));
  return best;
}

void collect_serialized(const StrategyNode& n, std::string& out) {
  if (n.move) out += render_move(*n.move, n.dialogue.size() - 1);
  out += '[';
  for (const auto& c : n.children) collect_serialized(c, out);
  out += ']';
}

}  // namespace

TEST_CASE("identity implication has the minimal strategy") {
  auto cfg = config();
  SearchOutcome o = search(F("p => p"), cfg);
  REQUIRE(o.kind == SearchOutcome::Kind::StrategyFound);
  // 3-move line: Opp attacks with p, Pro defends with p, Opp is stuck.
  const StrategyNode& root = *o.root;
  CHECK(root.dialogue.size() == 1);
  REQUIRE(root.children.size() == 1);
  REQUIRE(root.children[0].children.size() == 1);
  const StrategyNode& leaf = root.children[0].children[0];
  CHECK(leaf.children.empty());
  CHECK(leaf.dialogue.size() == 3);
  CHECK(verify_strategy(root, cfg).ok);
}

TEST_CASE("excluded middle is refuted by exhaustion") {
  SearchOutcome o = search(F("p | ~ p"), config());
  CHECK(o.kind == SearchOutcome::Kind::ExhaustedNoStrategy);
  CHECK(classify(o, true).kind == SzsKind::NonTheorem);
}

TEST_CASE("atomic conjectures cannot even be asserted") {
  SearchOutcome o = search(Formula::atom("p"), config());
  CHECK(o.kind == SearchOutcome::Kind::ExhaustedNoStrategy);
}

TEST_CASE("no-repeats forfeits strategies that need a repeated attack") {
  // The winning line for ~~(p | ~p) must attack the opponent's negation
  // twice with the same assertion; the repeat rule forbids exactly that, so
  // the no-repeats search exhausts while the unrestricted one wins. The
  // conjecture is intuitionistically valid, so this is a real (known) cost
  // of the repeat rule, kept here as a regression anchor.
  Formula f = F("~ ~ ( p | ~ p )");
  REQUIRE(oracle::decide_intuitionistic(f) == oracle::Validity::Valid);

  SearchOutcome with_repeats = search(f, config(RuleVariant::E, false));
  REQUIRE(with_repeats.kind == SearchOutcome::Kind::StrategyFound);
  CHECK(verify_strategy(*with_repeats.root, config(RuleVariant::E, false)).ok);

  SearchOutcome without = search(f, config(RuleVariant::E, true));
  CHECK(without.kind == SearchOutcome::Kind::ExhaustedNoStrategy);
}

TEST_CASE("prefer-defense: ordering finds the quantifier-shift proof, the hard rule loses it") {
  Formula f = F(
      "( ? [Y] : ! [X] : ( p(X) & q(Y) ) ) => ( ! [X] : ? [Y] : ( p(X) & q(Y) ) )");
  auto heuristic = config(RuleVariant::E, true, PreferDefense::Heuristic);
  SearchOutcome found = search(f, heuristic);
  REQUIRE(found.kind == SearchOutcome::Kind::StrategyFound);
  CHECK(verify_strategy(*found.root, heuristic).ok);

  SearchOutcome lost = search(f, config(RuleVariant::E, true, PreferDefense::Strict));
  CHECK((lost.kind == SearchOutcome::Kind::ExhaustedNoStrategy ||
         lost.kind == SearchOutcome::Kind::DepthCutoff));
}

TEST_CASE("classification of outcomes") {
  SearchOutcome found{SearchOutcome::Kind::StrategyFound, std::nullopt, 30, {}, 0};
  CHECK(classify(found, true).kind == SzsKind::Theorem);
  CHECK(classify(found, false).kind == SzsKind::Theorem);

  SearchOutcome exhausted{SearchOutcome::Kind::ExhaustedNoStrategy, std::nullopt, 30, {}, 0};
  CHECK(classify(exhausted, true).kind == SzsKind::NonTheorem);
  CHECK(classify(exhausted, false).kind == SzsKind::GaveUp);
  CHECK(classify(exhausted, false).reason == "exhausted-unsound-context");

  SearchOutcome cut{SearchOutcome::Kind::DepthCutoff, std::nullopt, 30, {}, 0};
  CHECK(classify(cut, true).kind == SzsKind::GaveUp);
  CHECK(classify(cut, true).reason == "depth");

  SearchOutcome timed{SearchOutcome::Kind::TimedOut, std::nullopt, 30, {}, 0};
  CHECK(classify(timed, true).kind == SzsKind::Timeout);
}

TEST_CASE("failure precedence: depth cutoff outranks exhaustion") {
  // Double-negation elimination loops without the repeat rule: every branch
  // that fails does so at the depth limit, so the search must say so.
  SearchOutcome o = search(F("~ ~ p => p"), config(RuleVariant::E, false, PreferDefense::Off, 12));
  CHECK(o.kind == SearchOutcome::Kind::DepthCutoff);
  // With repeats forbidden the same space is finite and honestly exhausted.
  SearchOutcome nr = search(F("~ ~ p => p"), config());
  CHECK(nr.kind == SearchOutcome::Kind::ExhaustedNoStrategy);
}

TEST_CASE("timeouts surface as TimedOut") {
  auto cfg = config(RuleVariant::E, false);
  cfg.time_limit = std::chrono::milliseconds(30);
  // Large search space without the repeat rule; 30ms cannot finish it.
  SearchOutcome o = search(F("( p & ( q => r ) ) <=> ( ( p & q ) | ( p & ~ ~ r ) )"), cfg);
  CHECK(o.kind == SearchOutcome::Kind::TimedOut);
  CHECK(classify(o, true).kind == SzsKind::Timeout);
}

TEST_CASE("determinism: identical inputs give identical trees") {
  Formula f = F("( ( p | q ) => r ) <=> ( ( p => r ) & ( q => r ) )");
  auto cfg = config(RuleVariant::E, true, PreferDefense::Heuristic);
  SearchOutcome a = search(f, cfg);
  SearchOutcome b = search(f, cfg);
  REQUIRE(a.kind == SearchOutcome::Kind::StrategyFound);
  REQUIRE(b.kind == SearchOutcome::Kind::StrategyFound);
  std::string sa, sb;
  collect_serialized(*a.root, sa);
  collect_serialized(*b.root, sb);
  CHECK(sa == sb);
  CHECK(a.nodes_expanded == b.nodes_expanded);
}

TEST_CASE("depth honesty: strategies fit inside the limit") {
  for (const char* text : {"p => p", "( p & q ) => ( q & p )", "~ ~ ( p & q ) <=> ( ~ ~ p & ~ ~ q )"}) {
    SearchOutcome o = search(F(text), config());
    REQUIRE(o.kind == SearchOutcome::Kind::StrategyFound);
    CHECK(tree_max_depth(*o.root) <= 30);
  }
}

TEST_CASE("verifier rejects mutated trees") {
  auto cfg = config();
  SearchOutcome o = search(F("( p & q ) => ( q & p )"), cfg);
  REQUIRE(o.kind == SearchOutcome::Kind::StrategyFound);
  REQUIRE(verify_strategy(*o.root, cfg).ok);

  // find an Opponent node with at least two children to drop one from
  std::function<StrategyNode*(StrategyNode&)> find_wide = [&](StrategyNode& n) -> StrategyNode* {
    if (n.children.size() >= 2) return &n;
    for (auto& c : n.children)
      if (StrategyNode* hit = find_wide(c)) return hit;
    return nullptr;
  };

  SUBCASE("dropped Opponent branch") {
    StrategyNode mutated = *o.root;
    StrategyNode* wide = find_wide(mutated);
    REQUIRE(wide != nullptr);
    wide->children.pop_back();
    VerifyResult r = verify_strategy(mutated, cfg);
    CHECK_FALSE(r.ok);
    CHECK(r.diagnostic.find("legal moves") != std::string::npos);
  }

  SUBCASE("illegal move edge") {
    StrategyNode mutated = *o.root;
    REQUIRE(!mutated.children.empty());
    // retarget the first reply to reference itself
    StrategyNode& child = mutated.children[0];
    REQUIRE(child.move.has_value());
    child.move->reference = 99;
    VerifyResult r = verify_strategy(mutated, cfg);
    CHECK_FALSE(r.ok);
    CHECK(r.diagnostic.find("not a legal move") != std::string::npos);
  }

  SUBCASE("non-terminal leaf") {
    StrategyNode mutated = *o.root;
    StrategyNode* cursor = &mutated;
    while (!cursor->children.empty() && !cursor->children[0].children.empty())
      cursor = &cursor->children[0];
    // cursor->children[0] is a leaf; making its parent a leaf leaves legal
    // moves unanswered
    cursor->children.clear();
    VerifyResult r = verify_strategy(mutated, cfg);
    CHECK_FALSE(r.ok);
  }
}

TEST_CASE("heuristic ordering never changes propositional verdicts") {
  auto corpus = oracle::enumerate_formulas({"p", "q"}, 2);
  for (const Formula& f : corpus) {
    SearchOutcome off = search(f, config());
    SearchOutcome heur = search(f, config(RuleVariant::E, true, PreferDefense::Heuristic));
    REQUIRE(off.kind != SearchOutcome::Kind::TimedOut);
    CHECK((off.kind == SearchOutcome::Kind::StrategyFound) ==
          (heur.kind == SearchOutcome::Kind::StrategyFound));
  }
}

TEST_CASE("repeat rule is conservative on the small corpus") {
  // Wherever the unrestricted search settles quickly, forbidding repeats
  // never costs a strategy on formulas this small.
  auto corpus = oracle::enumerate_formulas({"p", "q"}, 2);
  auto plain = config(RuleVariant::E, false);
  plain.time_limit = std::chrono::milliseconds(1500);
  for (const Formula& f : corpus) {
    SearchOutcome unrestricted = search(f, plain);
    if (unrestricted.kind != SearchOutcome::Kind::StrategyFound) continue;
    SearchOutcome restricted = search(f, config());
    CHECK(restricted.kind == SearchOutcome::Kind::StrategyFound);
  }
}

TEST_CASE("strategy export formats") {
  auto cfg = config();
  SearchOutcome o = search(F("p => p"), cfg);
  REQUIRE(o.kind == SearchOutcome::Kind::StrategyFound);
  std::string text = strategy_to_text(*o.root);
  CHECK(text.find("0. P assert p => p") != std::string::npos);
  CHECK(text.find("1. O attack(0) p") != std::string::npos);
  CHECK(text.find("2. P defend(1) p") != std::string::npos);

  std::string dot = strategy_to_dot(*o.root);
  CHECK(dot.find("digraph strategy") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);     // Proponent moves
  CHECK(dot.find("shape=circle") != std::string::npos);  // Opponent moves
  CHECK(dot.find("n0 -> n1") != std::string::npos);
}
