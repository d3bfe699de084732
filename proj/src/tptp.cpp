#include "elenchus/tptp.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace elenchus::tptp {

namespace {

enum class Tok : std::uint8_t {
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Tilde,
  Amp,
  VLine,
  Implies,     // =>
  Iff,         // <=>
  ReverseImp,  // <=
  Niff,        // <~>
  Nor,         // ~|
  Nand,        // ~&
  Bang,        // !
  Question,    // ?
  Equal,       // =
  NotEqual,    // !=
  LowerWord,
  UpperWord,
  DollarWord,  // $true, $false, ...
  Integer,
  QuotedName,  // 'single quoted'
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_layout();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, "", line, col};
    char c = text_[pos_];
    switch (c) {
      case '(': advance(); return {Tok::LParen, "(", line, col};
      case ')': advance(); return {Tok::RParen, ")", line, col};
      case '[': advance(); return {Tok::LBracket, "[", line, col};
      case ']': advance(); return {Tok::RBracket, "]", line, col};
      case ',': advance(); return {Tok::Comma, ",", line, col};
      case '.': advance(); return {Tok::Dot, ".", line, col};
      case ':': advance(); return {Tok::Colon, ":", line, col};
      case '&': advance(); return {Tok::Amp, "&", line, col};
      case '|': advance(); return {Tok::VLine, "|", line, col};
      case '~':
        advance();
        if (peek() == '|') { advance(); return {Tok::Nor, "~|", line, col}; }
        if (peek() == '&') { advance(); return {Tok::Nand, "~&", line, col}; }
        return {Tok::Tilde, "~", line, col};
      case '=':
        advance();
        if (peek() == '>') { advance(); return {Tok::Implies, "=>", line, col}; }
        return {Tok::Equal, "=", line, col};
      case '!':
        advance();
        if (peek() == '=') { advance(); return {Tok::NotEqual, "!=", line, col}; }
        return {Tok::Bang, "!", line, col};
      case '?': advance(); return {Tok::Question, "?", line, col};
      case '<':
        advance();
        if (peek() == '=') {
          advance();
          if (peek() == '>') { advance(); return {Tok::Iff, "<=>", line, col}; }
          return {Tok::ReverseImp, "<=", line, col};
        }
        if (peek() == '~') {
          advance();
          if (peek() == '>') { advance(); return {Tok::Niff, "<~>", line, col}; }
          throw SyntaxError(line, col, "malformed connective starting with '<~'");
        }
        throw SyntaxError(line, col, "unexpected character '<'");
      case '$': {
        advance();
        std::string word = "$";
        while (pos_ < text_.size() && (std::isalnum(peek()) || peek() == '_')) {
          word += peek();
          advance();
        }
        return {Tok::DollarWord, word, line, col};
      }
      case '\'': {
        advance();
        std::string word;
        while (pos_ < text_.size() && peek() != '\'') {
          if (peek() == '\n') throw SyntaxError(line, col, "unterminated quoted name");
          word += peek();
          advance();
        }
        if (pos_ >= text_.size()) throw SyntaxError(line, col, "unterminated quoted name");
        advance();  // closing quote
        return {Tok::QuotedName, word, line, col};
      }
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string word;
      while (pos_ < text_.size() && std::isdigit(peek())) {
        word += peek();
        advance();
      }
      return {Tok::Integer, word, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < text_.size() && (std::isalnum(peek()) || peek() == '_')) {
        word += peek();
        advance();
      }
      bool upper = std::isupper(static_cast<unsigned char>(word[0])) || word[0] == '_';
      return {upper ? Tok::UpperWord : Tok::LowerWord, word, line, col};
    }
    throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void advance() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_layout() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::optional<Role> role_from_string(const std::string& s) {
  if (s == "axiom") return Role::Axiom;
  if (s == "hypothesis") return Role::Hypothesis;
  if (s == "definition") return Role::Definition;
  if (s == "lemma") return Role::Lemma;
  if (s == "theorem") return Role::Theorem;
  if (s == "conjecture") return Role::Conjecture;
  return std::nullopt;
}

class Parser {
 public:
  Parser(const std::string& text, std::string source, const ParseOptions& options,
         int include_depth)
      : lexer_(text),
        source_(std::move(source)),
        options_(options),
        include_depth_(include_depth) {
    shift();
  }

  void parse_into(std::vector<AnnotatedFormula>& out, std::set<std::string>& names) {
    while (cur_.kind != Tok::End) {
      if (cur_.kind == Tok::LowerWord && cur_.text == "fof") {
        parse_fof(out, names);
      } else if (cur_.kind == Tok::LowerWord && cur_.text == "include") {
        parse_include(out, names);
      } else if (cur_.kind == Tok::LowerWord &&
                 (cur_.text == "cnf" || cur_.text == "tff" || cur_.text == "thf" ||
                  cur_.text == "tcf")) {
        fail("only the fof dialect is supported");
      } else {
        fail("expected 'fof' or 'include'");
      }
    }
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(cur_.line, cur_.column, message);
  }

  void shift() { cur_ = lexer_.next(); }

  void expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    shift();
  }

  void parse_fof(std::vector<AnnotatedFormula>& out, std::set<std::string>& names) {
    shift();  // fof
    expect(Tok::LParen, "'('");
    if (cur_.kind != Tok::LowerWord && cur_.kind != Tok::QuotedName &&
        cur_.kind != Tok::Integer)
      fail("expected a formula name");
    std::string name = cur_.text;
    if (!names.insert(name).second) fail("duplicate formula name '" + name + "'");
    shift();
    expect(Tok::Comma, "','");
    if (cur_.kind != Tok::LowerWord) fail("expected a formula role");
    auto role = role_from_string(cur_.text);
    if (!role) fail("unsupported formula role '" + cur_.text + "'");
    shift();
    expect(Tok::Comma, "','");
    current_name_ = name;
    Formula f = parse_formula_level();
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");

    // TPTP convention: free variables are universally quantified at the top.
    std::vector<std::string> free(f.free_vars());
    for (auto it = free.rbegin(); it != free.rend(); ++it) f = Formula::forall(*it, f);
    out.push_back(AnnotatedFormula{std::move(name), *role, std::move(f)});
  }

  void parse_include(std::vector<AnnotatedFormula>& out, std::set<std::string>& names) {
    Token at = cur_;
    shift();  // include
    expect(Tok::LParen, "'('");
    if (cur_.kind != Tok::QuotedName) fail("expected a quoted include path");
    std::string rel = cur_.text;
    shift();
    if (cur_.kind == Tok::Comma) fail("selective include is not supported");
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");

    if (options_.include_root.empty())
      throw SyntaxError(at.line, at.column, "include directive without an include root");
    if (include_depth_ + 1 > options_.max_include_depth)
      throw SyntaxError(at.line, at.column, "include depth limit exceeded");
    std::filesystem::path path = std::filesystem::path(options_.include_root) / rel;
    std::ifstream in(path);
    if (!in)
      throw SyntaxError(at.line, at.column, "cannot open include file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    Parser sub(text, path.string(), options_, include_depth_ + 1);
    sub.parse_into(out, names);
  }

  // formula := unit (chain)?   where a chain is all-& or all-| or a single
  // => / <=> right operand. Mixed operators require parentheses.
  Formula parse_formula_level() {
    Formula first = parse_unit();
    switch (cur_.kind) {
      case Tok::Amp:
      case Tok::VLine: {
        Tok op = cur_.kind;
        std::vector<Formula> parts{first};
        while (cur_.kind == op) {
          shift();
          parts.push_back(parse_unit());
        }
        if (cur_.kind == Tok::Amp || cur_.kind == Tok::VLine || is_binary_connective())
          fail("mixed binary connectives need parentheses");
        Formula acc = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;)
          acc = op == Tok::Amp ? Formula::conjunction(parts[i], acc)
                               : Formula::disjunction(parts[i], acc);
        return acc;
      }
      case Tok::Implies: {
        shift();
        Formula rhs = parse_unit();
        if (is_binary_connective()) fail("'=>' is not associative; use parentheses");
        return Formula::implication(first, rhs);
      }
      case Tok::Iff: {
        shift();
        Formula rhs = parse_unit();
        if (is_binary_connective()) fail("'<=>' is not associative; use parentheses");
        // Expanded here, sharing both sides, so equivalence chains stay linear.
        return Formula::conjunction(Formula::implication(first, rhs),
                                    Formula::implication(rhs, first));
      }
      case Tok::ReverseImp:
        reject_connective("<=");
      case Tok::Niff:
        reject_connective("<~>");
      case Tok::Nor:
        reject_connective("~|");
      case Tok::Nand:
        reject_connective("~&");
      default:
        return first;
    }
  }

  bool is_binary_connective() const {
    switch (cur_.kind) {
      case Tok::Amp:
      case Tok::VLine:
      case Tok::Implies:
      case Tok::Iff:
      case Tok::ReverseImp:
      case Tok::Niff:
      case Tok::Nor:
      case Tok::Nand:
        return true;
      default:
        return false;
    }
  }

  [[noreturn]] void reject_connective(const std::string& text) {
    throw FragmentViolation(FragmentViolation::Kind::UnsupportedConnective, current_name_,
                            "unsupported connective '" + text + "'");
  }

  Formula parse_unit() {
    switch (cur_.kind) {
      case Tok::Tilde: {
        shift();
        return Formula::negation(parse_unit());
      }
      case Tok::Bang:
      case Tok::Question: {
        bool universal = cur_.kind == Tok::Bang;
        shift();
        expect(Tok::LBracket, "'['");
        std::vector<std::string> vars;
        while (true) {
          if (cur_.kind != Tok::UpperWord) fail("expected a variable");
          vars.push_back(cur_.text);
          shift();
          if (cur_.kind == Tok::Comma) {
            shift();
            continue;
          }
          break;
        }
        expect(Tok::RBracket, "']'");
        expect(Tok::Colon, "':'");
        Formula body = parse_unit();
        for (auto it = vars.rbegin(); it != vars.rend(); ++it)
          body = universal ? Formula::forall(*it, body) : Formula::exists(*it, body);
        return body;
      }
      case Tok::LParen: {
        shift();
        Formula f = parse_formula_level();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::LowerWord: {
        std::string name = cur_.text;
        shift();
        std::vector<Term> args;
        if (cur_.kind == Tok::LParen) {
          shift();
          while (true) {
            args.push_back(parse_term());
            if (cur_.kind == Tok::Comma) {
              shift();
              continue;
            }
            break;
          }
          expect(Tok::RParen, "')'");
        }
        check_equality_follows();
        return Formula::atom(std::move(name), std::move(args));
      }
      case Tok::UpperWord: {
        // A variable can only occur as a term; at formula level the only way
        // it shows up is on one side of (dis)equality.
        Token at = cur_;
        shift();
        if (cur_.kind == Tok::Equal || cur_.kind == Tok::NotEqual)
          throw FragmentViolation(FragmentViolation::Kind::EqualityPresent, current_name_,
                                  "equality is outside the supported fragment");
        throw SyntaxError(at.line, at.column, "variable cannot stand as a formula");
      }
      case Tok::DollarWord: {
        if (cur_.text == "$true" || cur_.text == "$false")
          throw FragmentViolation(FragmentViolation::Kind::VerumFalsumPresent, current_name_,
                                  "'" + cur_.text + "' is outside the supported fragment");
        fail("unsupported defined symbol '" + cur_.text + "'");
      }
      default:
        fail("expected a formula");
    }
  }

  void check_equality_follows() {
    if (cur_.kind == Tok::Equal || cur_.kind == Tok::NotEqual)
      throw FragmentViolation(FragmentViolation::Kind::EqualityPresent, current_name_,
                              "equality is outside the supported fragment");
  }

  Term parse_term() {
    if (cur_.kind == Tok::UpperWord) {
      Term t = Term::variable(cur_.text);
      shift();
      return t;
    }
    if (cur_.kind != Tok::LowerWord) fail("expected a term");
    std::string name = cur_.text;
    shift();
    std::vector<Term> args;
    if (cur_.kind == Tok::LParen) {
      shift();
      while (true) {
        args.push_back(parse_term());
        if (cur_.kind == Tok::Comma) {
          shift();
          continue;
        }
        break;
      }
      expect(Tok::RParen, "')'");
    }
    return Term::function(std::move(name), std::move(args));
  }

  Lexer lexer_;
  Token cur_{Tok::End, "", 0, 0};
  std::string source_;
  std::string current_name_ = "?";
  ParseOptions options_;
  int include_depth_;
};

}  // namespace

const char* role_name(Role r) {
  switch (r) {
    case Role::Axiom: return "axiom";
    case Role::Hypothesis: return "hypothesis";
    case Role::Definition: return "definition";
    case Role::Lemma: return "lemma";
    case Role::Theorem: return "theorem";
    case Role::Conjecture: return "conjecture";
  }
  return "?";
}

bool TptpProblem::is_quantifier_free() const {
  return std::all_of(formulas.begin(), formulas.end(),
                     [](const AnnotatedFormula& af) { return af.formula.is_quantifier_free(); });
}

TptpProblem parse_problem(const std::string& text, const std::string& source_name,
                          const ParseOptions& options) {
  TptpProblem problem;
  problem.source_name = source_name;
  std::set<std::string> names;
  Parser parser(text, source_name, options, 0);
  parser.parse_into(problem.formulas, names);
  return problem;
}

TptpProblem parse_file(const std::string& path, ParseOptions options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (options.include_root.empty())
    options.include_root = std::filesystem::path(path).parent_path().string();
  return parse_problem(buf.str(), path, options);
}

Formula combine(const TptpProblem& problem) {
  std::vector<const AnnotatedFormula*> premises;
  const AnnotatedFormula* conjecture = nullptr;
  int conjectures = 0;
  for (const AnnotatedFormula& af : problem.formulas) {
    if (af.role == Role::Conjecture) {
      ++conjectures;
      conjecture = &af;
    } else {
      premises.push_back(&af);
    }
  }
  if (conjectures == 0)
    throw CombineError(CombineError::Kind::NoConjecture,
                       "problem lacks a conjecture formula");
  if (conjectures > 1)
    throw CombineError(CombineError::Kind::MultipleConjectures,
                       "problem has more than one conjecture formula");
  if (premises.empty()) return conjecture->formula;
  Formula antecedent = premises.back()->formula;
  for (std::size_t i = premises.size() - 1; i-- > 0;)
    antecedent = Formula::conjunction(premises[i]->formula, antecedent);
  return Formula::implication(antecedent, conjecture->formula);
}

std::string render_problem(const TptpProblem& problem) {
  std::ostringstream os;
  for (const AnnotatedFormula& af : problem.formulas) {
    os << "fof(" << af.name << ", " << role_name(af.role) << ", "
       << af.formula.to_string() << ").\n";
  }
  return os.str();
}

Formula parse_formula(const std::string& text) {
  TptpProblem p = parse_problem("fof(f, conjecture, " + text + ").", "<string>");
  return p.formulas.at(0).formula;
}

}  // namespace elenchus::tptp
