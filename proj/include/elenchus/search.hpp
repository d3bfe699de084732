#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elenchus/engine.hpp"
#include "elenchus/szs.hpp"

namespace elenchus {

/// Proponent move selection. Heuristic orders defenses before attacks and
/// attacks by recency of their target; Strict discards attack moves outright
/// whenever any defense is legal (fast, but known to lose first-order
/// completeness); Off keeps generation order.
enum class PreferDefense : std::uint8_t { Off, Heuristic, Strict };

struct SearchConfig {
  Ruleset ruleset{};
  PreferDefense prefer_defense = PreferDefense::Off;
  /// Maximum dialogue length, counting the initial assertion.
  int depth_limit = 30;
  /// Zero means no time limit.
  std::chrono::milliseconds time_limit{60000};
  /// Optional hook, called once per expanded node (used by --trace).
  std::function<void(const Dialogue&)> on_expand;
};

/// AND-OR strategy tree: at an Opponent node the children answer every legal
/// Opponent move; at a Proponent node there is exactly one child (the chosen
/// move); every leaf is a position where the Opponent is stuck.
struct StrategyNode {
  std::optional<Move> move;  // absent at the root
  Dialogue dialogue;
  std::vector<StrategyNode> children;
};

struct SearchOutcome {
  enum class Kind : std::uint8_t {
    StrategyFound,
    /// The whole bounded space was explored and no branch was cut by the
    /// depth limit; on propositional input this refutes the conjecture.
    ExhaustedNoStrategy,
    DepthCutoff,
    TimedOut,
  };
  Kind kind;
  std::optional<StrategyNode> root;  // set iff StrategyFound
  int depth_limit = 0;
  std::chrono::milliseconds elapsed{0};
  long nodes_expanded = 0;
};

const char* outcome_name(SearchOutcome::Kind k);

/// Depth-first search for a winning Proponent strategy from the initial
/// assertion of `f`. Failures are ranked TimedOut > DepthCutoff >
/// ExhaustedNoStrategy, so ExhaustedNoStrategy is only ever reported when
/// the search space was genuinely finished. Deterministic: identical inputs
/// give identical outcomes and trees.
SearchOutcome search(const Formula& f, const SearchConfig& cfg);

struct VerifyResult {
  bool ok;
  std::string diagnostic;  // first violated condition and node path
  explicit operator bool() const { return ok; }
};

/// Independent strategy checker: re-derives legality from the engine alone.
/// Checks that every edge is legal, Opponent nodes carry exactly the legal
/// Opponent moves, Proponent nodes carry exactly one legal move, and every
/// leaf is an Opponent-to-move position with no legal move.
VerifyResult verify_strategy(const StrategyNode& root, const SearchConfig& cfg);

/// Maps a search outcome to its SZS status. Exhausted search refutes only
/// when the input was propositional; at first order the truncated term
/// policy makes exhaustion inconclusive.
SzsStatus classify(const SearchOutcome& outcome, bool propositional);

std::string strategy_to_text(const StrategyNode& root);
std::string strategy_to_dot(const StrategyNode& root);

}  // namespace elenchus
