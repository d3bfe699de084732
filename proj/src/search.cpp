#include "elenchus/search.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace elenchus {

namespace {

struct TimeoutSignal {};

class Searcher {
 public:
  Searcher(const SearchConfig& cfg)
      : cfg_(cfg),
        start_(std::chrono::steady_clock::now()),
        has_deadline_(cfg.time_limit.count() > 0) {
    if (has_deadline_) deadline_ = start_ + cfg.time_limit;
  }

  struct Result {
    bool win;
    bool cut;  // some branch below was cut by the depth limit
    std::optional<StrategyNode> node;
  };

  Result explore(const Dialogue& d) {
    ++nodes_;
    if (has_deadline_ && (nodes_ & 0x3f) == 0 &&
        std::chrono::steady_clock::now() > deadline_)
      throw TimeoutSignal{};
    if (cfg_.on_expand) cfg_.on_expand(d);

    Player mover = d.to_move();
    std::vector<Move> moves = legal_moves(d, cfg_.ruleset);

    if (moves.empty()) {
      if (mover == Player::Opp)
        return Result{true, false, StrategyNode{std::nullopt, d, {}}};
      return Result{false, false, std::nullopt};
    }
    if (d.size() >= cfg_.depth_limit) return Result{false, true, std::nullopt};

    if (mover == Player::Opp) {
      // AND node: a sub-strategy for every Opponent option.
      StrategyNode node{std::nullopt, d, {}};
      node.children.reserve(moves.size());
      for (const Move& m : moves) {
        Result r = lookup_or_explore(d, m);
        if (!r.win) return Result{false, r.cut, std::nullopt};
        r.node->move = m;
        node.children.push_back(std::move(*r.node));
      }
      return Result{true, false, std::move(node)};
    }

    // OR node: the first Proponent option that works, in policy order.
    order_pro_moves(moves);
    bool cut = false;
    for (const Move& m : moves) {
      Result r = lookup_or_explore(d, m);
      if (r.win) {
        StrategyNode node{std::nullopt, d, {}};
        r.node->move = m;
        node.children.push_back(std::move(*r.node));
        return Result{true, false, std::move(node)};
      }
      cut = cut || r.cut;
    }
    return Result{false, cut, {}};
  }

  long nodes() const { return nodes_; }
  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
  }

 private:
  Result lookup_or_explore(const Dialogue& d, const Move& m) {
    Dialogue next = apply_move(d, m, cfg_.ruleset);
    // Transposition memo keyed by the move-list digest. Only failures are
    // cached; successes carry their subtree and duplicate siblings are
    // already collapsed during move generation.
    auto it = failed_.find(next.signature());
    if (it != failed_.end()) return Result{false, it->second, std::nullopt};
    Result r = explore(next);
    if (!r.win && failed_.size() < kMemoCap) failed_.emplace(next.signature(), r.cut);
    return r;
  }

  void order_pro_moves(std::vector<Move>& moves) const {
    switch (cfg_.prefer_defense) {
      case PreferDefense::Off:
        return;  // generation order
      case PreferDefense::Heuristic: {
        // Defenses first (generation already puts them first); attacks on the
        // most recent assertion first.
        std::stable_sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
          bool da = *a.stance == Stance::Defend, db = *b.stance == Stance::Defend;
          if (da != db) return da;
          if (da) return false;
          return a.reference > b.reference;
        });
        return;
      }
      case PreferDefense::Strict: {
        bool any_defense = std::any_of(moves.begin(), moves.end(), [](const Move& m) {
          return *m.stance == Stance::Defend;
        });
        if (any_defense)
          moves.erase(std::remove_if(moves.begin(), moves.end(),
                                     [](const Move& m) { return *m.stance == Stance::Attack; }),
                      moves.end());
        return;
      }
    }
  }

  static constexpr std::size_t kMemoCap = 1u << 22;
  const SearchConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  std::chrono::steady_clock::time_point deadline_;
  bool has_deadline_;
  long nodes_ = 0;
  std::unordered_map<std::uint64_t, bool> failed_;
};

}  // namespace

const char* outcome_name(SearchOutcome::Kind k) {
  switch (k) {
    case SearchOutcome::Kind::StrategyFound: return "StrategyFound";
    case SearchOutcome::Kind::ExhaustedNoStrategy: return "ExhaustedNoStrategy";
    case SearchOutcome::Kind::DepthCutoff: return "DepthCutoff";
    case SearchOutcome::Kind::TimedOut: return "TimedOut";
  }
  return "?";
}

SearchOutcome search(const Formula& f, const SearchConfig& cfg) {
  if (!f.is_closed()) throw std::invalid_argument("search: formula must be closed");
  SearchOutcome out;
  out.depth_limit = cfg.depth_limit;

  Searcher searcher(cfg);
  // An atomic conjecture cannot even be asserted (no Opponent has spoken),
  // so the game never starts and there is trivially no strategy.
  if (is_atomic(f)) {
    out.kind = SearchOutcome::Kind::ExhaustedNoStrategy;
    out.elapsed = searcher.elapsed();
    return out;
  }

  try {
    Searcher::Result r = searcher.explore(Dialogue::initial(f));
    if (r.win) {
      out.kind = SearchOutcome::Kind::StrategyFound;
      out.root = std::move(*r.node);
    } else {
      out.kind = r.cut ? SearchOutcome::Kind::DepthCutoff
                       : SearchOutcome::Kind::ExhaustedNoStrategy;
    }
  } catch (const TimeoutSignal&) {
    out.kind = SearchOutcome::Kind::TimedOut;
  }
  out.elapsed = searcher.elapsed();
  out.nodes_expanded = searcher.nodes();
  return out;
}

namespace {

bool verify_node(const StrategyNode& node, const SearchConfig& cfg, std::string path,
                 std::string& diagnostic) {
  const Dialogue& d = node.dialogue;
  std::vector<Move> legal = legal_moves(d, cfg.ruleset);
  Player mover = d.to_move();

  if (node.children.empty()) {
    if (mover != Player::Opp) {
      diagnostic = "leaf at [" + path + "] has Pro to move";
      return false;
    }
    if (!legal.empty()) {
      diagnostic = "leaf at [" + path + "] is not terminal: Opp still has " +
                   std::to_string(legal.size()) + " legal move(s)";
      return false;
    }
    return true;
  }

  if (mover == Player::Opp) {
    if (node.children.size() != legal.size()) {
      diagnostic = "Opp node at [" + path + "] answers " +
                   std::to_string(node.children.size()) + " of " +
                   std::to_string(legal.size()) + " legal moves";
      return false;
    }
  } else if (node.children.size() != 1) {
    diagnostic = "Pro node at [" + path + "] has " + std::to_string(node.children.size()) +
                 " children";
    return false;
  }

  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const StrategyNode& child = node.children[i];
    std::string child_path = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
    if (!child.move) {
      diagnostic = "node at [" + child_path + "] carries no move";
      return false;
    }
    if (std::find(legal.begin(), legal.end(), *child.move) == legal.end()) {
      diagnostic = "edge into [" + child_path + "] is not a legal move: " +
                   render_move(*child.move, d.size());
      return false;
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (node.children[j].move && *node.children[j].move == *child.move) {
        diagnostic = "duplicate edge into [" + child_path + "]";
        return false;
      }
    }
    // The stored dialogue must be the parent's extended by the move.
    Dialogue expect = apply_move(d, *child.move, cfg.ruleset);
    if (expect.signature() != child.dialogue.signature() ||
        expect.size() != child.dialogue.size()) {
      diagnostic = "dialogue at [" + child_path + "] does not extend its parent";
      return false;
    }
    if (!verify_node(child, cfg, child_path, diagnostic)) return false;
  }
  return true;
}

}  // namespace

VerifyResult verify_strategy(const StrategyNode& root, const SearchConfig& cfg) {
  if (root.move) return {false, "root must carry no move"};
  if (root.dialogue.size() != 1) return {false, "root must be an initial dialogue"};
  std::string diagnostic;
  if (!verify_node(root, cfg, "", diagnostic)) return {false, diagnostic};
  return {true, ""};
}

SzsStatus classify(const SearchOutcome& outcome, bool propositional) {
  switch (outcome.kind) {
    case SearchOutcome::Kind::StrategyFound:
      return SzsStatus::theorem();
    case SearchOutcome::Kind::ExhaustedNoStrategy:
      return propositional ? SzsStatus::non_theorem()
                           : SzsStatus::gave_up("exhausted-unsound-context");
    case SearchOutcome::Kind::DepthCutoff:
      return SzsStatus::gave_up("depth");
    case SearchOutcome::Kind::TimedOut:
      return SzsStatus::timeout();
  }
  return SzsStatus::error("unknown outcome");
}

namespace {

void text_walk(const StrategyNode& node, int depth, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  if (node.move) {
    os << render_move(*node.move, node.dialogue.size() - 1);
  } else {
    os << render_move(node.dialogue.moves()[0], 0);
  }
  os << '\n';
  for (const StrategyNode& c : node.children) text_walk(c, depth + 1, os);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int dot_walk(const StrategyNode& node, int& counter, std::ostringstream& os) {
  int my_id = counter++;
  const Move& m = node.move ? *node.move : node.dialogue.moves()[0];
  int index = node.move ? node.dialogue.size() - 1 : 0;
  const char* shape = m.player == Player::Pro ? "box" : "circle";
  os << "  n" << my_id << " [shape=" << shape << ",label=\""
     << dot_escape(render_move(m, index)) << "\"];\n";
  for (const StrategyNode& c : node.children) {
    int child_id = dot_walk(c, counter, os);
    os << "  n" << my_id << " -> n" << child_id << ";\n";
  }
  return my_id;
}

}  // namespace

std::string strategy_to_text(const StrategyNode& root) {
  std::ostringstream os;
  text_walk(root, 0, os);
  return os.str();
}

std::string strategy_to_dot(const StrategyNode& root) {
  std::ostringstream os;
  os << "digraph strategy {\n";
  int counter = 0;
  dot_walk(root, counter, os);
  os << "}\n";
  return os.str();
}

}  // namespace elenchus
