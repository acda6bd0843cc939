#include <charconv>
#include <map>
#include <optional>

#include "gapcheck/errors.hpp"
#include "gapcheck/formula.hpp"

namespace gapcheck {
namespace {

enum class Tok {
  Ident, Int, LParen, RParen, LBrack, RBrack, Comma,
  Bang, Amp, Bar, Arrow, DoubleArrow,
  Plus, Minus, Star, Le, Lt, Ge, Gt, Eq, Ne, End
};

std::string describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Bar: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DoubleArrow: return "'<->'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Le: return "'<='";
    case Tok::Lt: return "'<'";
    case Tok::Ge: return "'>='";
    case Tok::Gt: return "'>'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, {}, start};
    const char c = src_[pos_];
    if (is_ident_char(c) && !is_digit(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      return {Tok::Ident, src_.substr(start, pos_ - start), start};
    }
    if (is_digit(c)) {
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      return {Tok::Int, src_.substr(start, pos_ - start), start};
    }
    static const std::pair<std::string_view, Tok> kSymbols[] = {
        {"<->", Tok::DoubleArrow}, {"->", Tok::Arrow}, {"<=", Tok::Le},
        {">=", Tok::Ge},           {"!=", Tok::Ne},    {"<", Tok::Lt},
        {">", Tok::Gt},            {"=", Tok::Eq},     {"!", Tok::Bang},
        {"&", Tok::Amp},           {"|", Tok::Bar},    {"(", Tok::LParen},
        {")", Tok::RParen},        {"[", Tok::LBrack}, {"]", Tok::RBrack},
        {",", Tok::Comma},         {"+", Tok::Plus},   {"-", Tok::Minus},
        {"*", Tok::Star},
    };
    for (const auto& [sym, kind] : kSymbols) {
      if (src_.substr(pos_, sym.size()) == sym) {
        pos_ += sym.size();
        return {kind, src_.substr(start, sym.size()), start};
      }
    }
    throw SyntaxError(start, {"identifier", "operator", "'('", "'['"},
                      "unexpected character '" + std::string(1, c) + "'");
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || c == '_' || is_digit(c);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Sum of coef * var plus a constant; kZeroVar never appears as a key.
struct Linear {
  std::map<std::string, std::int64_t> coef;
  std::int64_t constant = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Formula parse_all() {
    Formula f = parse_iff();
    expect(Tok::End, {Tok::Amp, Tok::Bar, Tok::Arrow, Tok::DoubleArrow,
                      Tok::End});
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    std::vector<std::string> names;
    for (Tok t : expected) names.push_back(describe(t));
    std::string found = cur_.kind == Tok::End
                            ? describe(Tok::End)
                            : "'" + std::string(cur_.text) + "'";
    throw SyntaxError(cur_.offset, std::move(names), found);
  }

  void expect(Tok kind, std::initializer_list<Tok> expected) {
    if (cur_.kind != kind) fail(expected);
    advance();
  }

  bool accept(Tok kind) {
    if (cur_.kind != kind) return false;
    advance();
    return true;
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    while (accept(Tok::DoubleArrow)) {
      lhs = Formula::biconditional(lhs, parse_imp());
    }
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept(Tok::Arrow)) return Formula::implication(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (accept(Tok::Bar)) parts.push_back(parse_and());
    return parts.size() == 1 ? parts.front()
                             : Formula::disjunction(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_unary()};
    while (accept(Tok::Amp)) parts.push_back(parse_unary());
    return parts.size() == 1 ? parts.front()
                             : Formula::conjunction(std::move(parts));
  }

  Formula parse_unary() {
    if (accept(Tok::Bang)) return Formula::negation(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    static constexpr std::initializer_list<Tok> kStart = {
        Tok::Ident, Tok::LParen, Tok::LBrack, Tok::Bang};
    switch (cur_.kind) {
      case Tok::LParen: {
        advance();
        Formula inner = parse_iff();
        expect(Tok::RParen, {Tok::Amp, Tok::Bar, Tok::Arrow, Tok::DoubleArrow,
                             Tok::RParen});
        return inner;
      }
      case Tok::LBrack: return parse_arith();
      case Tok::Ident: {
        std::string name(cur_.text);
        advance();
        if (name == "true") return Formula::constant(true);
        if (name == "false") return Formula::constant(false);
        std::vector<std::string> args;
        if (accept(Tok::LParen)) {
          do {
            if (cur_.kind != Tok::Ident || !valid_identifier(cur_.text)) {
              fail({Tok::Ident});
            }
            args.emplace_back(cur_.text);
            advance();
          } while (accept(Tok::Comma));
          expect(Tok::RParen, {Tok::Comma, Tok::RParen});
        }
        return Formula::prop(std::move(name), std::move(args));
      }
      default: fail(kStart);
    }
  }

  std::int64_t parse_int() {
    std::int64_t v = 0;
    auto [ptr, ec] =
        std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), v);
    if (ec != std::errc()) {
      throw ArithFormError(cur_.offset, "integer literal out of range");
    }
    advance();
    return v;
  }

  // term := INT ['*'] [ident] | ident
  void parse_term(Linear& out, std::int64_t sign) {
    std::int64_t coef = 1;
    bool has_coef = false;
    if (cur_.kind == Tok::Int) {
      coef = parse_int();
      has_coef = true;
      accept(Tok::Star);
    }
    if (cur_.kind == Tok::Ident) {
      std::string var(cur_.text);
      if (!valid_identifier(var)) fail({Tok::Ident, Tok::Int});
      advance();
      if (var != kZeroVar) out.coef[var] += sign * coef;
      return;
    }
    if (!has_coef) fail({Tok::Ident, Tok::Int});
    out.constant += sign * coef;
  }

  Linear parse_linear() {
    Linear lin;
    std::int64_t sign = 1;
    if (accept(Tok::Minus)) sign = -1;
    else accept(Tok::Plus);
    parse_term(lin, sign);
    for (;;) {
      if (accept(Tok::Plus)) sign = 1;
      else if (accept(Tok::Minus)) sign = -1;
      else break;
      parse_term(lin, sign);
    }
    return lin;
  }

  Formula parse_arith() {
    const std::size_t at = cur_.offset;
    advance();  // '['
    Linear lhs = parse_linear();
    CmpOp op;
    switch (cur_.kind) {
      case Tok::Le: op = CmpOp::Le; break;
      case Tok::Lt: op = CmpOp::Lt; break;
      case Tok::Ge: op = CmpOp::Ge; break;
      case Tok::Gt: op = CmpOp::Gt; break;
      case Tok::Eq: op = CmpOp::Eq; break;
      case Tok::Ne: op = CmpOp::Ne; break;
      default:
        fail({Tok::Plus, Tok::Minus, Tok::Le, Tok::Lt, Tok::Ge, Tok::Gt,
              Tok::Eq, Tok::Ne});
    }
    advance();
    Linear rhs = parse_linear();
    expect(Tok::RBrack, {Tok::Plus, Tok::Minus, Tok::RBrack});

    // lhs - rhs <op> 0  ==>  sum(coef * var) <op> -constant
    Linear diff = lhs;
    for (const auto& [v, c] : rhs.coef) diff.coef[v] -= c;
    diff.constant -= rhs.constant;
    std::optional<std::string> pos, neg;
    int vars = 0;
    for (const auto& [v, c] : diff.coef) {
      if (c == 0) continue;
      if (++vars > 2) throw ArithFormError(at, "more than two variables");
      if (c == 1 && !pos) pos = v;
      else if (c == -1 && !neg) neg = v;
      else if (c == 1 || c == -1)
        throw ArithFormError(at, "two variables with the same sign");
      else
        throw ArithFormError(at, "coefficient " + std::to_string(c) +
                                     " on '" + v + "' is not unit");
    }
    return Formula::arith(pos.value_or(std::string(kZeroVar)),
                          neg.value_or(std::string(kZeroVar)), op,
                          -diff.constant);
  }

  Lexer lexer_;
  Token cur_;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace gapcheck
