#include "elenchus/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace elenchus::oracle {

namespace {

// Private absurdity constant for the sequent calculus. '#' cannot occur in
// parsed input, so no user atom can collide with it.
const char* kFalsum = "#absurd";

Formula falsum() { return Formula::atom(kFalsum); }

bool is_falsum(const Formula& f) {
  return f.kind() == Connective::Atom && f.predicate() == kFalsum;
}

void collect_atoms(const Formula& f, std::vector<std::string>& out,
                   std::set<std::string>& seen) {
  switch (f.kind()) {
    case Connective::Atom:
      if (seen.insert(f.predicate()).second) out.push_back(f.predicate());
      return;
    case Connective::Not:
      collect_atoms(f.left(), out, seen);
      return;
    case Connective::And:
    case Connective::Or:
    case Connective::Implies:
      collect_atoms(f.left(), out, seen);
      collect_atoms(f.right(), out, seen);
      return;
    default:
      throw std::invalid_argument("quantifier in propositional formula");
  }
}

// Rewrites ~a into a -> absurdity so the calculus only sees -> & |.
Formula translate(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom:
      return f;
    case Connective::Not:
      return Formula::implication(translate(f.left()), falsum());
    case Connective::And:
      return Formula::conjunction(translate(f.left()), translate(f.right()));
    case Connective::Or:
      return Formula::disjunction(translate(f.left()), translate(f.right()));
    case Connective::Implies:
      return Formula::implication(translate(f.left()), translate(f.right()));
    default:
      throw std::invalid_argument("quantifier in propositional formula");
  }
}

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const { return compare(a, b) < 0; }
};

using Context = std::set<Formula, FormulaLess>;

class Prover {
 public:
  bool prove(Context ctx, const Formula& goal) {
    if (++nodes_ > kNodeCeiling)
      throw std::runtime_error("sequent search exceeded its node ceiling");

    // Axioms.
    if (ctx.count(falsum())) return true;
    if (goal.kind() == Connective::Atom && ctx.count(goal)) return true;

    // Invertible right rules.
    if (goal.kind() == Connective::And)
      return prove(ctx, goal.left()) && prove(ctx, goal.right());
    if (goal.kind() == Connective::Implies) {
      Context next = ctx;
      next.insert(goal.left());
      return prove(std::move(next), goal.right());
    }

    // Invertible left rules; apply the first one available.
    for (const Formula& h : ctx) {
      if (h.kind() == Connective::And) {
        Context next = ctx;
        next.erase(h);
        next.insert(h.left());
        next.insert(h.right());
        return prove(std::move(next), goal);
      }
      if (h.kind() == Connective::Or) {
        Context left = ctx, right = ctx;
        left.erase(h);
        right.erase(h);
        left.insert(h.left());
        right.insert(h.right());
        return prove(std::move(left), goal) && prove(std::move(right), goal);
      }
      if (h.kind() == Connective::Implies) {
        const Formula& a = h.left();
        if (a.kind() == Connective::Atom) {
          if (ctx.count(a)) {
            Context next = ctx;
            next.erase(h);
            next.insert(h.right());
            return prove(std::move(next), goal);
          }
          continue;  // dormant until its atom shows up
        }
        if (a.kind() == Connective::And) {
          Context next = ctx;
          next.erase(h);
          next.insert(Formula::implication(a.left(),
                                           Formula::implication(a.right(), h.right())));
          return prove(std::move(next), goal);
        }
        if (a.kind() == Connective::Or) {
          Context next = ctx;
          next.erase(h);
          next.insert(Formula::implication(a.left(), h.right()));
          next.insert(Formula::implication(a.right(), h.right()));
          return prove(std::move(next), goal);
        }
        // nested implication: not invertible, handled below
      }
    }

    // Choice points.
    if (goal.kind() == Connective::Or) {
      if (prove(ctx, goal.left())) return true;
      if (prove(ctx, goal.right())) return true;
    }
    for (const Formula& h : ctx) {
      if (h.kind() != Connective::Implies) continue;
      const Formula& a = h.left();
      if (a.kind() != Connective::Implies) continue;
      // h = (b -> c) -> d
      Context first = ctx;
      first.erase(h);
      first.insert(Formula::implication(a.right(), h.right()));
      if (!prove(std::move(first), a)) continue;
      Context second = ctx;
      second.erase(h);
      second.insert(h.right());
      if (prove(std::move(second), goal)) return true;
    }
    return false;
  }

 private:
  static constexpr long kNodeCeiling = 50'000'000;
  long nodes_ = 0;
};

}  // namespace

void require_propositional(const Formula& f) {
  if (!f.is_quantifier_free())
    throw std::invalid_argument("formula is not propositional (quantifier present)");
  std::vector<std::string> atoms;
  std::set<std::string> seen;
  collect_atoms(f, atoms, seen);
  // 0-ary predicates only
  std::unordered_set<const void*> unused;
  struct Walk {
    static void run(const Formula& g) {
      switch (g.kind()) {
        case Connective::Atom:
          if (!g.terms().empty())
            throw std::invalid_argument("formula is not propositional (predicate has arguments)");
          return;
        case Connective::Not:
          run(g.left());
          return;
        default:
          run(g.left());
          run(g.right());
          return;
      }
    }
  };
  Walk::run(f);
}

Validity decide_intuitionistic(const Formula& f) {
  require_propositional(f);
  Prover prover;
  return prover.prove(Context{}, translate(f)) ? Validity::Valid : Validity::Invalid;
}

// ---------------------------------------------------------------------------
// Bounded Kripke countermodel search
// ---------------------------------------------------------------------------

namespace {

bool forces(const KripkeModel& m, const Formula& f, int w,
            const std::map<std::string, int>& atom_index);

bool forces_all_above(const KripkeModel& m, const Formula& f, int w,
                      const std::map<std::string, int>& atom_index, bool want) {
  // helper for -> and ~: checks f at every world reachable from w
  for (int v = 0; v < m.worlds; ++v) {
    if (!((m.reach[w] >> v) & 1u)) continue;
    if (forces(m, f, v, atom_index) != want) return false;
  }
  return true;
}

bool forces(const KripkeModel& m, const Formula& f, int w,
            const std::map<std::string, int>& atom_index) {
  switch (f.kind()) {
    case Connective::Atom:
      return m.forces_atom(w, atom_index.at(f.predicate()));
    case Connective::And:
      return forces(m, f.left(), w, atom_index) && forces(m, f.right(), w, atom_index);
    case Connective::Or:
      return forces(m, f.left(), w, atom_index) || forces(m, f.right(), w, atom_index);
    case Connective::Implies: {
      for (int v = 0; v < m.worlds; ++v) {
        if (!((m.reach[w] >> v) & 1u)) continue;
        if (forces(m, f.left(), v, atom_index) && !forces(m, f.right(), v, atom_index))
          return false;
      }
      return true;
    }
    case Connective::Not:
      return forces_all_above(m, f.left(), w, atom_index, false);
    default:
      throw std::invalid_argument("quantifier in propositional formula");
  }
}

// All reflexive-transitive rooted orders on n worlds, canonical up to
// isomorphism (world 0 is the root and below everything).
std::vector<std::vector<unsigned>> rooted_orders(int n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);

  auto key_of = [&](const std::vector<unsigned>& reach) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<unsigned> best;
    do {
      if (perm[0] != 0) continue;  // root stays put
      std::vector<unsigned> mapped(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if ((reach[i] >> j) & 1u) mapped[perm[i]] |= 1u << perm[j];
      if (best.empty() || mapped < best) best = mapped;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  };

  std::set<std::vector<unsigned>> seen;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<unsigned> reach(n, 0);
    for (int i = 0; i < n; ++i) reach[i] |= 1u << i;
    bool anti = true;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1u) reach[pairs[k].first] |= 1u << pairs[k].second;
    // antisymmetry
    for (int i = 0; i < n && anti; ++i)
      for (int j = i + 1; j < n && anti; ++j)
        if (((reach[i] >> j) & 1u) && ((reach[j] >> i) & 1u)) anti = false;
    if (!anti) continue;
    // transitivity
    bool trans = true;
    for (int i = 0; i < n && trans; ++i)
      for (int j = 0; j < n && trans; ++j) {
        if (!((reach[i] >> j) & 1u)) continue;
        if ((reach[i] | reach[j]) != reach[i]) trans = false;
      }
    if (!trans) continue;
    // rooted at 0
    if (reach[0] != (1u << n) - 1u) continue;
    if (seen.insert(key_of(reach)).second) out.push_back(reach);
  }
  return out;
}

bool upward_closed(unsigned set, const std::vector<unsigned>& reach, int n) {
  for (int w = 0; w < n; ++w)
    if ((set >> w) & 1u)
      if ((reach[w] & ~set) != 0) return false;
  return true;
}

}  // namespace

std::string KripkeModel::to_string() const {
  std::ostringstream os;
  os << worlds << " world(s); order:";
  bool any = false;
  for (int i = 0; i < worlds; ++i)
    for (int j = 0; j < worlds; ++j)
      if (i != j && ((reach[i] >> j) & 1u)) {
        os << ' ' << i << "<=" << j;
        any = true;
      }
  if (!any) os << " (discrete)";
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    os << "; " << atoms[a] << " at {";
    bool first = true;
    for (int w = 0; w < worlds; ++w)
      if ((valuation[a] >> w) & 1u) {
        if (!first) os << ',';
        os << w;
        first = false;
      }
    os << '}';
  }
  return os.str();
}

KripkeCheck check_bounded_kripke(const Formula& f, int max_worlds) {
  require_propositional(f);
  if (max_worlds < 1 || max_worlds > 4)
    throw std::invalid_argument("check_bounded_kripke: max_worlds must be in [1,4]");

  std::vector<std::string> atoms;
  std::set<std::string> seen;
  collect_atoms(f, atoms, seen);
  std::map<std::string, int> atom_index;
  for (std::size_t i = 0; i < atoms.size(); ++i) atom_index[atoms[i]] = static_cast<int>(i);

  for (int n = 1; n <= max_worlds; ++n) {
    for (const auto& reach : rooted_orders(n)) {
      std::vector<unsigned> upsets;
      for (unsigned s = 0; s < (1u << n); ++s)
        if (upward_closed(s, reach, n)) upsets.push_back(s);

      std::vector<std::size_t> pick(atoms.size(), 0);
      while (true) {
        KripkeModel m;
        m.worlds = n;
        m.reach = reach;
        m.atoms = atoms;
        m.valuation.resize(atoms.size());
        for (std::size_t a = 0; a < atoms.size(); ++a) m.valuation[a] = upsets[pick[a]];
        if (!forces(m, f, 0, atom_index))
          return KripkeCheck{std::move(m), max_worlds};
        // next valuation tuple
        std::size_t a = 0;
        for (; a < pick.size(); ++a) {
          if (++pick[a] < upsets.size()) break;
          pick[a] = 0;
        }
        if (a == pick.size()) break;
        if (pick.empty()) break;  // formula with no atoms: single valuation
      }
    }
  }
  return KripkeCheck{std::nullopt, max_worlds};
}

// ---------------------------------------------------------------------------
// Exhaustive small-formula enumeration
// ---------------------------------------------------------------------------

std::vector<Formula> enumerate_formulas(const std::vector<std::string>& atoms,
                                        int max_connectives) {
  if (max_connectives < 0) throw std::invalid_argument("max_connectives must be >= 0");
  std::vector<std::vector<Formula>> by_count;
  by_count.emplace_back();
  for (const std::string& a : atoms) by_count[0].push_back(Formula::atom(a));

  for (int k = 1; k <= max_connectives; ++k) {
    std::vector<Formula> level;
    for (const Formula& f : by_count[k - 1]) level.push_back(Formula::negation(f));
    for (int op = 0; op < 3; ++op) {
      for (int i = 0; i <= k - 1; ++i) {
        const auto& lhs = by_count[i];
        const auto& rhs = by_count[k - 1 - i];
        for (const Formula& l : lhs) {
          for (const Formula& r : rhs) {
            switch (op) {
              case 0: level.push_back(Formula::conjunction(l, r)); break;
              case 1: level.push_back(Formula::disjunction(l, r)); break;
              case 2: level.push_back(Formula::implication(l, r)); break;
            }
          }
        }
      }
    }
    by_count.push_back(std::move(level));
  }

  std::vector<Formula> out;
  for (const auto& level : by_count)
    for (const Formula& f : level) out.push_back(f);
  return out;
}

}  // namespace elenchus::oracle
