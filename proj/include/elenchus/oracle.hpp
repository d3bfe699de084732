#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elenchus/formula.hpp"

namespace elenchus::oracle {

/// Throws std::invalid_argument unless `f` is propositional: quantifier-free
/// with 0-ary predicates only.
void require_propositional(const Formula& f);

enum class Validity { Valid, Invalid };

/// Decides intuitionistic propositional validity with a contraction-free
/// sequent calculus (goal `f`, empty context). Terminating on every input;
/// a generous node ceiling guards against regressions and throws
/// std::runtime_error if ever exceeded.
///
/// This is the reference decision procedure the strategy search is checked
/// against; it deliberately shares nothing with the game engine beyond the
/// Formula type.
Validity decide_intuitionistic(const Formula& f);

/// A finite rooted Kripke model over the atoms of one formula.
struct KripkeModel {
  int worlds = 0;
  /// reach[w] = bitmask of worlds reachable from w (reflexive-transitive).
  std::vector<unsigned> reach;
  /// One bitmask per atom, in the order of `atoms`; monotone along reach.
  std::vector<std::string> atoms;
  std::vector<unsigned> valuation;

  bool forces_atom(int world, int atom_index) const {
    return (valuation[atom_index] >> world) & 1u;
  }
  std::string to_string() const;
};

struct KripkeCheck {
  std::optional<KripkeModel> countermodel;  // empty = NoneUpTo(max_worlds)
  int max_worlds = 0;
};

/// Enumerates all rooted partial orders with at most `max_worlds` worlds
/// (canonicalized up to isomorphism) and all monotone valuations over the
/// atoms of `f`; returns the first model whose root fails `f`.
/// Requires max_worlds in [1, 4].
KripkeCheck check_bounded_kripke(const Formula& f, int max_worlds);

/// Every propositional formula over `atoms` with at most `max_connectives`
/// connectives, duplicate-free, in a deterministic order (by connective
/// count, then construction order).
std::vector<Formula> enumerate_formulas(const std::vector<std::string>& atoms,
                                        int max_connectives);

}  // namespace elenchus::oracle
