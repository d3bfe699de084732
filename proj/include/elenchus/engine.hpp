#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "elenchus/formula.hpp"

namespace elenchus {

enum class Player : std::uint8_t { Pro, Opp };

inline Player opponent_of(Player p) { return p == Player::Pro ? Player::Opp : Player::Pro; }
inline char player_letter(Player p) { return p == Player::Pro ? 'P' : 'O'; }

enum class Stance : std::uint8_t { Attack, Defend };

/// Non-formula statements used to attack: `?` (which one?), the conjunct
/// selectors, and `?_t` (demand the instance at t).
class SymbolicAttack {
 public:
  enum class Kind : std::uint8_t { Question, LeftConjunct, RightConjunct, WhichInstance };

  static SymbolicAttack question() { return SymbolicAttack(Kind::Question); }
  static SymbolicAttack left_conjunct() { return SymbolicAttack(Kind::LeftConjunct); }
  static SymbolicAttack right_conjunct() { return SymbolicAttack(Kind::RightConjunct); }
  static SymbolicAttack which_instance(Term t);

  Kind kind() const { return kind_; }
  const Term& instance() const;

  std::uint64_t hash() const;
  std::string to_string() const;  // "?", "^L", "^R", "?[t]"

  friend bool operator==(const SymbolicAttack& a, const SymbolicAttack& b);
  friend bool operator!=(const SymbolicAttack& a, const SymbolicAttack& b) { return !(a == b); }

 private:
  explicit SymbolicAttack(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::optional<Term> instance_;
};

/// What a move asserts: a formula or a symbolic attack. Compared
/// syntactically throughout.
using Statement = std::variant<Formula, SymbolicAttack>;

inline const Formula* statement_formula(const Statement& s) {
  return std::get_if<Formula>(&s);
}
std::uint64_t statement_hash(const Statement& s);
std::string statement_to_string(const Statement& s);

/// One dialogue step. Move 0 is the Proponent's initial assertion and has
/// no stance and reference -1; every later move references an earlier move
/// of the other player.
struct Move {
  Player player;
  Statement statement;
  std::optional<Stance> stance;
  int reference = -1;
};

bool operator==(const Move& a, const Move& b);
std::string render_move(const Move& m, int index);

struct TermPolicy {
  /// Generated fresh constants allowed per dialogue (the seed constant for
  /// a term-free initial formula counts). Once exhausted, quantifier moves
  /// choose from the existing pool only.
  int max_fresh_constants = 3;
};

enum class RuleVariant : std::uint8_t { D, E };

struct Ruleset {
  RuleVariant variant = RuleVariant::E;
  bool no_repeats = true;
  TermPolicy term_policy{};
};

class IllegalMove : public std::runtime_error {
 public:
  enum class Rule : std::uint8_t {
    Turn,
    Reference,
    EImmediacy,
    AtomUnattackable,
    AttackOnce,
    ParticleMismatch,
    LastOpenAttack,
    DefendOnce,
    TermPolicy,
    ProAtom,
    NoRepeats,
  };
  IllegalMove(Rule rule, const std::string& message)
      : std::runtime_error(message), rule_(rule) {}
  Rule rule() const { return rule_; }

 private:
  Rule rule_;
};

const char* rule_name(IllegalMove::Rule r);

/// A legal move sequence plus bookkeeping derived from it. Values are
/// immutable once built; apply_move returns an extended copy, so distinct
/// dialogues can be explored concurrently without synchronization.
class Dialogue {
 public:
  /// One-move dialogue: the Proponent asserts `f`. The term pool is seeded
  /// with the closed subterms of `f`, or with one generated constant when
  /// that set is empty (quantifier moves need a nonempty candidate pool).
  /// Throws std::invalid_argument if `f` has free variables.
  static Dialogue initial(const Formula& f);

  const std::vector<Move>& moves() const { return moves_; }
  int size() const { return static_cast<int>(moves_.size()); }
  /// Strict alternation: Pro acts at even indices.
  Player to_move() const { return size() % 2 == 0 ? Player::Pro : Player::Opp; }

  const std::vector<Term>& term_pool() const { return pool_; }
  int fresh_constants_used() const { return fresh_used_; }
  std::string next_fresh_name() const;

  /// Attack moves not yet defended, in move order.
  const std::vector<int>& open_attacks() const { return open_attacks_; }
  /// The attack a defense by `player` would have to answer, if any.
  std::optional<int> defendable_attack(Player player) const;

  const std::unordered_set<Formula>& opp_asserted_atoms() const { return opp_atoms_; }
  bool pro_move_attacked(int index) const;
  bool attack_defended(int index) const;
  bool already_played(Player player, const Statement& s, Stance stance, int reference) const;

  /// Order-sensitive digest of the move list (statement-level identity).
  std::uint64_t signature() const { return signature_; }

  friend Dialogue apply_move(const Dialogue& d, const Move& m, const Ruleset& rules);

 private:
  Dialogue() = default;

  struct PlayedKey {
    Statement statement;
    Stance stance;
    int reference;
    bool operator==(const PlayedKey& o) const {
      return reference == o.reference && stance == o.stance && statement == o.statement;
    }
  };
  struct PlayedKeyHash {
    std::size_t operator()(const PlayedKey& k) const {
      return statement_hash(k.statement) * 31 + static_cast<std::size_t>(k.reference) * 2 +
             (k.stance == Stance::Attack ? 0 : 1);
    }
  };

  void absorb_terms(const Statement& s);
  void record(const Move& m);

  std::vector<Move> moves_;
  std::vector<int> open_attacks_;
  std::vector<bool> defended_;
  std::vector<bool> pro_attacked_;
  std::unordered_set<Formula> opp_atoms_;
  std::vector<Term> pool_;
  std::unordered_set<Term> pool_set_;
  int fresh_used_ = 0;
  std::set<std::string> reserved_names_;
  std::unordered_set<PlayedKey, PlayedKeyHash> played_[2];
  std::uint64_t signature_ = 0x243f6a8885a308d3ull;
};

/// Particle rule: attacks available against a non-atomic assertion.
/// `candidates` supplies the instance terms for universal attacks.
/// Throws std::invalid_argument when called on an atom.
std::vector<Statement> attack_options(const Formula& asserted,
                                      const std::vector<Term>& candidates);

/// Particle rule: defenses against `attack` on `attacked`. Empty for
/// negation (no defense exists). Throws std::invalid_argument if the
/// attack does not match the formula.
std::vector<Statement> defense_options(const Formula& attacked, const Statement& attack,
                                       const std::vector<Term>& candidates);

/// Current candidate set for quantifier moves: the term pool plus one
/// fresh constant while the policy allows it.
std::vector<Term> quantifier_candidates(const Dialogue& d, const Ruleset& rules);

/// All moves whose application keeps the dialogue legal, deduplicated, in a
/// deterministic order: defenses first, then attacks by ascending target.
std::vector<Move> legal_moves(const Dialogue& d, const Ruleset& rules);

/// Appends a move after validating every structural rule; throws
/// IllegalMove naming the first rule violated.
Dialogue apply_move(const Dialogue& d, const Move& m, const Ruleset& rules);

enum class GameStatus : std::uint8_t { ProWins, OppWins, Ongoing };

/// A player with no legal move loses.
GameStatus winner(const Dialogue& d, const Ruleset& rules);

std::string render_dialogue(const Dialogue& d);

}  // namespace elenchus
