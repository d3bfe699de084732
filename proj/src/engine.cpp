#include "elenchus/engine.hpp"

#include <algorithm>
#include <sstream>

namespace elenchus {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

SymbolicAttack SymbolicAttack::which_instance(Term t) {
  if (!t.is_closed())
    throw std::invalid_argument("which_instance: instance term must be closed");
  SymbolicAttack a(Kind::WhichInstance);
  a.instance_ = std::move(t);
  return a;
}

const Term& SymbolicAttack::instance() const {
  if (kind_ != Kind::WhichInstance)
    throw std::logic_error("instance(): not a which-instance attack");
  return *instance_;
}

std::uint64_t SymbolicAttack::hash() const {
  std::uint64_t h = mix(0x5a5au, static_cast<std::uint64_t>(kind_));
  if (instance_) h = mix(h, instance_->hash());
  return h;
}

std::string SymbolicAttack::to_string() const {
  switch (kind_) {
    case Kind::Question: return "?";
    case Kind::LeftConjunct: return "^L";
    case Kind::RightConjunct: return "^R";
    case Kind::WhichInstance: return "?[" + instance_->to_string() + "]";
  }
  return "?";
}

bool operator==(const SymbolicAttack& a, const SymbolicAttack& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != SymbolicAttack::Kind::WhichInstance) return true;
  return *a.instance_ == *b.instance_;
}

std::uint64_t statement_hash(const Statement& s) {
  if (const Formula* f = statement_formula(s)) return mix(0x0Fu, f->hash());
  return mix(0x5Au, std::get<SymbolicAttack>(s).hash());
}

std::string statement_to_string(const Statement& s) {
  if (const Formula* f = statement_formula(s)) return f->to_string();
  return std::get<SymbolicAttack>(s).to_string();
}

bool operator==(const Move& a, const Move& b) {
  return a.player == b.player && a.stance == b.stance && a.reference == b.reference &&
         a.statement == b.statement;
}

std::string render_move(const Move& m, int index) {
  std::ostringstream os;
  os << index << ". " << player_letter(m.player) << ' ';
  if (!m.stance) {
    os << "assert";
  } else {
    os << (*m.stance == Stance::Attack ? "attack" : "defend") << '(' << m.reference << ')';
  }
  os << ' ' << statement_to_string(m.statement);
  return os.str();
}

const char* rule_name(IllegalMove::Rule r) {
  switch (r) {
    case IllegalMove::Rule::Turn: return "turn";
    case IllegalMove::Rule::Reference: return "reference";
    case IllegalMove::Rule::EImmediacy: return "E-immediacy";
    case IllegalMove::Rule::AtomUnattackable: return "atom-unattackable";
    case IllegalMove::Rule::AttackOnce: return "attack-once";
    case IllegalMove::Rule::ParticleMismatch: return "particle-mismatch";
    case IllegalMove::Rule::LastOpenAttack: return "last-open-attack";
    case IllegalMove::Rule::DefendOnce: return "defend-once";
    case IllegalMove::Rule::TermPolicy: return "term-policy";
    case IllegalMove::Rule::ProAtom: return "pro-atom";
    case IllegalMove::Rule::NoRepeats: return "no-repeats";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Particle rules
// ---------------------------------------------------------------------------

std::vector<Statement> attack_options(const Formula& asserted,
                                      const std::vector<Term>& candidates) {
  switch (asserted.kind()) {
    case Connective::Atom:
      throw std::invalid_argument("attack_options: atoms cannot be attacked");
    case Connective::And:
      return {SymbolicAttack::left_conjunct(), SymbolicAttack::right_conjunct()};
    case Connective::Or:
      return {SymbolicAttack::question()};
    case Connective::Implies:
      return {Statement(asserted.left())};
    case Connective::Not:
      return {Statement(asserted.left())};
    case Connective::Forall: {
      std::vector<Statement> out;
      out.reserve(candidates.size());
      for (const Term& t : candidates) out.push_back(SymbolicAttack::which_instance(t));
      return out;
    }
    case Connective::Exists:
      return {SymbolicAttack::question()};
  }
  throw std::logic_error("attack_options: bad connective");
}

std::vector<Statement> defense_options(const Formula& attacked, const Statement& attack,
                                       const std::vector<Term>& candidates) {
  const SymbolicAttack* sym = std::get_if<SymbolicAttack>(&attack);
  switch (attacked.kind()) {
    case Connective::Atom:
      throw std::invalid_argument("defense_options: atoms cannot be attacked");
    case Connective::And:
      if (sym && sym->kind() == SymbolicAttack::Kind::LeftConjunct)
        return {Statement(attacked.left())};
      if (sym && sym->kind() == SymbolicAttack::Kind::RightConjunct)
        return {Statement(attacked.right())};
      break;
    case Connective::Or:
      if (sym && sym->kind() == SymbolicAttack::Kind::Question)
        return {Statement(attacked.left()), Statement(attacked.right())};
      break;
    case Connective::Implies:
      if (const Formula* f = statement_formula(attack); f && *f == attacked.left())
        return {Statement(attacked.right())};
      break;
    case Connective::Not:
      if (const Formula* f = statement_formula(attack); f && *f == attacked.left())
        return {};  // no defense exists against an attack on a negation
      break;
    case Connective::Forall:
      if (sym && sym->kind() == SymbolicAttack::Kind::WhichInstance)
        return {Statement(substitute(attacked.body(), attacked.bound_var(), sym->instance()))};
      break;
    case Connective::Exists:
      if (sym && sym->kind() == SymbolicAttack::Kind::Question) {
        std::vector<Statement> out;
        out.reserve(candidates.size());
        for (const Term& t : candidates)
          out.push_back(Statement(substitute(attacked.body(), attacked.bound_var(), t)));
        return out;
      }
      break;
  }
  throw std::invalid_argument("defense_options: attack does not match the formula");
}

// ---------------------------------------------------------------------------
// Dialogue
// ---------------------------------------------------------------------------

Dialogue Dialogue::initial(const Formula& f) {
  if (!f.is_closed())
    throw std::invalid_argument("initial dialogue formula must be closed");
  Dialogue d;
  d.reserved_names_ = function_symbols(f);
  Move m{Player::Pro, Statement(f), std::nullopt, -1};
  d.record(m);
  if (d.pool_.empty()) {
    // Quantifier attacks need at least one candidate term.
    Term seed = Term::constant(d.next_fresh_name());
    d.pool_.push_back(seed);
    d.pool_set_.insert(seed);
    ++d.fresh_used_;
  }
  return d;
}

std::string Dialogue::next_fresh_name() const {
  int remaining = fresh_used_;
  for (int i = 0;; ++i) {
    std::string name = "c" + std::to_string(i);
    if (reserved_names_.count(name)) continue;
    if (remaining == 0) return name;
    --remaining;
  }
}

std::optional<int> Dialogue::defendable_attack(Player player) const {
  for (auto it = open_attacks_.rbegin(); it != open_attacks_.rend(); ++it)
    if (moves_[*it].player != player) return *it;
  return std::nullopt;
}

bool Dialogue::pro_move_attacked(int index) const {
  return index >= 0 && index < size() && pro_attacked_[index];
}

bool Dialogue::attack_defended(int index) const {
  return index >= 0 && index < size() && defended_[index];
}

bool Dialogue::already_played(Player player, const Statement& s, Stance stance,
                              int reference) const {
  return played_[player == Player::Pro ? 0 : 1].count(PlayedKey{s, stance, reference}) > 0;
}

namespace {

void collect_closed(const Term& t, std::vector<Term>& out) {
  if (t.is_closed()) out.push_back(t);
  for (const Term& a : t.args()) collect_closed(a, out);
}

}  // namespace

void Dialogue::absorb_terms(const Statement& s) {
  std::string fresh = next_fresh_name();
  std::vector<Term> terms;
  if (const Formula* f = statement_formula(s)) {
    terms = closed_subterms(*f);
  } else {
    const SymbolicAttack& a = std::get<SymbolicAttack>(s);
    if (a.kind() == SymbolicAttack::Kind::WhichInstance) collect_closed(a.instance(), terms);
  }
  for (const Term& t : terms) {
    if (pool_set_.insert(t).second) {
      pool_.push_back(t);
      if (t.is_function() && t.args().empty() && t.symbol() == fresh) ++fresh_used_;
    }
  }
}

void Dialogue::record(const Move& m) {
  int index = size();
  moves_.push_back(m);
  defended_.push_back(false);
  pro_attacked_.push_back(false);

  if (m.stance) {
    played_[m.player == Player::Pro ? 0 : 1].insert(
        PlayedKey{m.statement, *m.stance, m.reference});
    if (*m.stance == Stance::Attack) {
      open_attacks_.push_back(index);
      if (moves_[m.reference].player == Player::Pro) pro_attacked_[m.reference] = true;
    } else {
      defended_[m.reference] = true;
      auto it = std::find(open_attacks_.begin(), open_attacks_.end(), m.reference);
      if (it != open_attacks_.end()) open_attacks_.erase(it);
    }
  }
  if (m.player == Player::Opp) {
    if (const Formula* f = statement_formula(m.statement); f && is_atomic(*f))
      opp_atoms_.insert(*f);
  }
  absorb_terms(m.statement);

  std::uint64_t h = mix(static_cast<std::uint64_t>(m.player) + 1,
                        m.stance ? (*m.stance == Stance::Attack ? 2 : 3) : 4);
  h = mix(h, static_cast<std::uint64_t>(m.reference + 1));
  h = mix(h, statement_hash(m.statement));
  signature_ = mix(signature_, h);
}

// ---------------------------------------------------------------------------
// Structural rules
// ---------------------------------------------------------------------------

std::vector<Term> quantifier_candidates(const Dialogue& d, const Ruleset& rules) {
  std::vector<Term> out = d.term_pool();
  if (d.fresh_constants_used() < rules.term_policy.max_fresh_constants)
    out.push_back(Term::constant(d.next_fresh_name()));
  return out;
}

namespace {

bool contains_statement(const std::vector<Statement>& options, const Statement& s) {
  return std::any_of(options.begin(), options.end(),
                     [&](const Statement& o) { return o == s; });
}

// Shared between legal_moves and apply_move so the two cannot drift: checks
// everything about `m` except membership of its statement in the particle
// options (the generator enumerates those directly). Returns the first
// violated rule, or nothing when the move is structurally fine.
std::optional<IllegalMove::Rule> first_violation(const Dialogue& d, const Move& m,
                                                 const Ruleset& rules) {
  int n = d.size();
  if (m.player != d.to_move()) return IllegalMove::Rule::Turn;
  if (!m.stance || m.reference < 0 || m.reference >= n)
    return IllegalMove::Rule::Reference;
  const Move& target = d.moves()[m.reference];
  if (target.player == m.player) return IllegalMove::Rule::Reference;
  if (rules.variant == RuleVariant::E && m.player == Player::Opp && m.reference != n - 1)
    return IllegalMove::Rule::EImmediacy;

  if (*m.stance == Stance::Attack) {
    const Formula* f = statement_formula(target.statement);
    if (!f) return IllegalMove::Rule::Reference;
    if (is_atomic(*f)) return IllegalMove::Rule::AtomUnattackable;
    if (target.player == Player::Pro && d.pro_move_attacked(m.reference))
      return IllegalMove::Rule::AttackOnce;
  } else {
    if (!target.stance || *target.stance != Stance::Attack)
      return IllegalMove::Rule::Reference;
    if (d.attack_defended(m.reference)) return IllegalMove::Rule::DefendOnce;
    std::optional<int> last = d.defendable_attack(m.player);
    if (!last || *last != m.reference) return IllegalMove::Rule::LastOpenAttack;
  }

  if (m.player == Player::Pro) {
    if (const Formula* f = statement_formula(m.statement);
        f && is_atomic(*f) && !d.opp_asserted_atoms().count(*f))
      return IllegalMove::Rule::ProAtom;
  }
  if (rules.no_repeats && d.already_played(m.player, m.statement, *m.stance, m.reference))
    return IllegalMove::Rule::NoRepeats;
  return std::nullopt;
}

void check_structure(const Dialogue& d, const Move& m, const Ruleset& rules) {
  if (auto rule = first_violation(d, m, rules))
    throw IllegalMove(*rule, std::string("illegal move (") + rule_name(*rule) + "): " +
                                 render_move(m, d.size()));
}

void push_if_legal(std::vector<Move>& out, const Dialogue& d, Move m, const Ruleset& rules) {
  if (first_violation(d, m, rules)) return;
  if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
}

}  // namespace

std::vector<Move> legal_moves(const Dialogue& d, const Ruleset& rules) {
  std::vector<Move> out;
  Player mover = d.to_move();
  int n = d.size();
  std::vector<Term> candidates = quantifier_candidates(d, rules);

  // Defenses against the opponent's most recent open attack.
  if (std::optional<int> k = d.defendable_attack(mover)) {
    const Move& attack = d.moves()[*k];
    const Formula& attacked = *statement_formula(d.moves()[attack.reference].statement);
    for (Statement s : defense_options(attacked, attack.statement, candidates))
      push_if_legal(out, d, Move{mover, std::move(s), Stance::Defend, *k}, rules);
  }

  // Attacks on the opponent's assertions.
  for (int j = 0; j < n; ++j) {
    const Move& target = d.moves()[j];
    if (target.player == mover) continue;
    const Formula* f = statement_formula(target.statement);
    if (!f || is_atomic(*f)) continue;
    for (Statement s : attack_options(*f, candidates))
      push_if_legal(out, d, Move{mover, std::move(s), Stance::Attack, j}, rules);
  }
  return out;
}

Dialogue apply_move(const Dialogue& d, const Move& m, const Ruleset& rules) {
  check_structure(d, m, rules);

  // Particle-rule and term-policy conformance of the statement itself.
  const Move& target = d.moves()[m.reference];
  std::vector<Term> candidates = quantifier_candidates(d, rules);
  if (*m.stance == Stance::Attack) {
    const Formula& f = *statement_formula(target.statement);
    if (f.kind() == Connective::Forall) {
      const SymbolicAttack* sym = std::get_if<SymbolicAttack>(&m.statement);
      if (!sym || sym->kind() != SymbolicAttack::Kind::WhichInstance)
        throw IllegalMove(IllegalMove::Rule::ParticleMismatch,
                          "universal assertions are attacked with an instance demand");
      if (!contains_statement(attack_options(f, candidates), m.statement))
        throw IllegalMove(IllegalMove::Rule::TermPolicy,
                          "instance term is outside the candidate pool");
    } else if (!contains_statement(attack_options(f, candidates), m.statement)) {
      throw IllegalMove(IllegalMove::Rule::ParticleMismatch,
                        "statement is not a legal attack on the referenced assertion");
    }
  } else {
    const Formula& attacked = *statement_formula(d.moves()[target.reference].statement);
    std::vector<Statement> options;
    try {
      options = defense_options(attacked, target.statement, candidates);
    } catch (const std::invalid_argument&) {
      throw IllegalMove(IllegalMove::Rule::ParticleMismatch, "malformed attack reference");
    }
    if (!contains_statement(options, m.statement)) {
      bool policy = attacked.kind() == Connective::Exists;
      throw IllegalMove(policy ? IllegalMove::Rule::TermPolicy
                               : IllegalMove::Rule::ParticleMismatch,
                        "statement is not a legal defense against the referenced attack");
    }
  }

  Dialogue next = d;
  next.record(m);
  return next;
}

GameStatus winner(const Dialogue& d, const Ruleset& rules) {
  if (!legal_moves(d, rules).empty()) return GameStatus::Ongoing;
  return d.to_move() == Player::Opp ? GameStatus::ProWins : GameStatus::OppWins;
}

std::string render_dialogue(const Dialogue& d) {
  std::ostringstream os;
  for (int i = 0; i < d.size(); ++i) os << render_move(d.moves()[i], i) << '\n';
  return os.str();
}

}  // namespace elenchus
