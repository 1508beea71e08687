#include "ltl4c/error.hpp"
#include "ltl4c/property.hpp"

#include <cctype>
#include <set>

namespace ltl4c {
namespace {

enum class tok {
  end,
  ident,
  number,
  kw_forall,
  kw_exists,
  kw_true,
  kw_false,
  op_globally,
  op_eventually,
  op_next,
  op_until,
  lbracket,
  rbracket,
  lparen,
  rparen,
  comma,
  colon,
  guard_arrow, // =>
  implies,     // ->
  and_,
  or_,
  not_,
  lt,
  le,
  gt,
  ge,
  eq,
};

struct token {
  tok type = tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class lexer {
public:
  explicit lexer(std::string_view src) : src_(src) {}

  std::vector<token> run() {
    std::vector<token> out;
    for (;;) {
      skip_space();
      token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.text = take_while([](char ch) {
          return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
        });
        t.type = keyword(t.text);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        t.text.push_back(c);
        advance();
        t.text += take_while([](char ch) {
          return std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '/' ||
                 ch == '%';
        });
        t.type = tok::number;
      } else {
        t.type = punct(t);
      }
      out.push_back(std::move(t));
    }
  }

private:
  static tok keyword(const std::string& w) {
    if (w == "forall")
      return tok::kw_forall;
    if (w == "exists")
      return tok::kw_exists;
    if (w == "true")
      return tok::kw_true;
    if (w == "false")
      return tok::kw_false;
    if (w == "G")
      return tok::op_globally;
    if (w == "F")
      return tok::op_eventually;
    if (w == "X")
      return tok::op_next;
    if (w == "U")
      return tok::op_until;
    return tok::ident;
  }

  tok punct(token& t) {
    auto two = [&](char a, char b) {
      return src_[pos_] == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    struct entry {
      const char* text;
      tok type;
    };
    static constexpr entry table[] = {
        {"=>", tok::guard_arrow}, {"->", tok::implies}, {"&&", tok::and_}, {"||", tok::or_},
        {"<=", tok::le},          {">=", tok::ge},      {"==", tok::eq},
    };
    for (const auto& e : table) {
      if (two(e.text[0], e.text[1])) {
        t.text = e.text;
        advance();
        advance();
        return e.type;
      }
    }
    const char c = src_[pos_];
    t.text = std::string(1, c);
    tok type;
    switch (c) {
    case '[':
      type = tok::lbracket;
      break;
    case ']':
      type = tok::rbracket;
      break;
    case '(':
      type = tok::lparen;
      break;
    case ')':
      type = tok::rparen;
      break;
    case ',':
      type = tok::comma;
      break;
    case ':':
      type = tok::colon;
      break;
    case '!':
      type = tok::not_;
      break;
    case '<':
      type = tok::lt;
      break;
    case '>':
      type = tok::gt;
      break;
    case '=':
      type = tok::eq;
      break;
    default:
      throw parse_error(parse_error_kind::syntax, t.line, t.column,
                        "unexpected character '" + t.text + "'");
    }
    advance();
    return type;
  }

  template <class Pred> std::string take_while(Pred pred) {
    std::string s;
    while (pos_ < src_.size() && pred(src_[pos_])) {
      s.push_back(src_[pos_]);
      advance();
    }
    return s;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class parser {
public:
  explicit parser(std::vector<token> tokens) : toks_(std::move(tokens)) {}

  property run() {
    property p;
    std::set<std::string> seen;
    while (at(tok::kw_forall) || at(tok::kw_exists)) {
      const token& start = peek();
      quantifier q = parse_quantifier();
      if (!seen.insert(q.variable).second)
        fail(parse_error_kind::syntax, start, "variable '" + q.variable + "' bound twice");
      p.prefix.push_back(std::move(q));
    }
    prop_ = &p;
    p.body = parse_implication();
    if (!at(tok::end)) {
      if (at(tok::guard_arrow))
        fail(parse_error_kind::syntax, peek(), "'=>' is only allowed after a quantifier guard");
      fail(parse_error_kind::syntax, peek(), "unexpected '" + peek().text + "'");
    }
    return p;
  }

private:
  quantifier parse_quantifier() {
    quantifier q;
    const token kw = take();
    q.kind = kw.type == tok::kw_forall ? quantifier_kind::percentage : quantifier_kind::instance;
    if (q.kind == quantifier_kind::percentage) {
      q.cmp = comparison::equal;
      q.constant = rational(1);
    } else {
      q.cmp = comparison::greater_equal;
      q.constant = rational(1);
    }
    if (at(tok::lbracket)) {
      take();
      q.cmp = parse_comparison();
      const token num = expect(tok::number, "a numeric constant");
      rational value;
      if (!rational::parse(num.text, value))
        fail(parse_error_kind::syntax, num, "malformed constant '" + num.text + "'");
      if (q.kind == quantifier_kind::percentage) {
        if (value < rational(0) || value > rational(1))
          fail(parse_error_kind::constraint_range, num,
               "percentage constant " + num.text + " is outside [0,1]");
      } else if (value < rational(0) || !value.is_integer()) {
        fail(parse_error_kind::constraint_range, num,
             "instance constant " + num.text + " is not a non-negative integer");
      }
      q.constant = value;
      expect(tok::rbracket, "']'");
    }
    q.variable = expect(tok::ident, "a variable name").text;
    expect(tok::colon, "':'");
    q.guard = expect(tok::ident, "a guard predicate").text;
    expect(tok::lparen, "'('");
    const token arg = expect(tok::ident, "the quantified variable");
    if (arg.text != q.variable)
      fail(parse_error_kind::syntax, arg,
           "guard must apply to '" + q.variable + "', not '" + arg.text + "'");
    expect(tok::rparen, "')'");
    expect(tok::guard_arrow, "'=>'");
    return q;
  }

  comparison parse_comparison() {
    const token t = take();
    switch (t.type) {
    case tok::lt:
      return comparison::less;
    case tok::le:
      return comparison::less_equal;
    case tok::gt:
      return comparison::greater;
    case tok::ge:
      return comparison::greater_equal;
    case tok::eq:
      return comparison::equal;
    default:
      fail(parse_error_kind::syntax, t, "expected a comparison operator");
    }
  }

  formula::ptr parse_implication() {
    auto lhs = parse_disjunction();
    if (at(tok::implies)) {
      take();
      return formula::implication(std::move(lhs), parse_implication());
    }
    return lhs;
  }

  formula::ptr parse_disjunction() {
    auto lhs = parse_conjunction();
    while (at(tok::or_)) {
      take();
      lhs = formula::disjunction(std::move(lhs), parse_conjunction());
    }
    return lhs;
  }

  formula::ptr parse_conjunction() {
    auto lhs = parse_until();
    while (at(tok::and_)) {
      take();
      lhs = formula::conjunction(std::move(lhs), parse_until());
    }
    return lhs;
  }

  formula::ptr parse_until() {
    auto lhs = parse_unary();
    if (at(tok::op_until)) {
      take();
      return formula::until(std::move(lhs), parse_until());
    }
    return lhs;
  }

  formula::ptr parse_unary() {
    switch (peek().type) {
    case tok::not_:
      take();
      return formula::negation(parse_unary());
    case tok::op_next:
      take();
      return formula::next(parse_unary());
    case tok::op_eventually:
      take();
      return formula::eventually(parse_unary());
    case tok::op_globally:
      take();
      return formula::globally(parse_unary());
    default:
      return parse_primary();
    }
  }

  formula::ptr parse_primary() {
    const token t = take();
    switch (t.type) {
    case tok::kw_true:
      return formula::truth();
    case tok::kw_false:
      return formula::falsity();
    case tok::lparen: {
      auto inner = parse_implication();
      expect(tok::rparen, "')'");
      return inner;
    }
    case tok::kw_forall:
    case tok::kw_exists:
      fail(parse_error_kind::non_canonical, t,
           "quantifiers must precede the quantifier-free body");
    case tok::ident:
      return parse_predicate(t);
    case tok::end:
      fail(parse_error_kind::syntax, t, "unexpected end of input");
    default:
      fail(parse_error_kind::syntax, t, "unexpected '" + t.text + "'");
    }
  }

  formula::ptr parse_predicate(const token& name) {
    std::vector<std::string> args;
    if (at(tok::lparen)) {
      take();
      for (;;) {
        const token arg = expect(tok::ident, "a variable");
        if (prop_->variable_index(arg.text) < 0)
          fail(parse_error_kind::unbound_variable, arg,
               "variable '" + arg.text + "' is not bound by a quantifier");
        args.push_back(arg.text);
        if (at(tok::comma)) {
          take();
          continue;
        }
        expect(tok::rparen, "')' or ','");
        break;
      }
    }
    return formula::predicate(name.text, std::move(args));
  }

  const token& peek() const { return toks_[pos_]; }
  bool at(tok t) const { return peek().type == t; }

  token take() {
    token t = toks_[pos_];
    if (pos_ + 1 < toks_.size())
      ++pos_;
    return t;
  }

  token expect(tok type, const char* what) {
    if (!at(type)) {
      const token& t = peek();
      fail(parse_error_kind::syntax, t,
           std::string("expected ") + what + ", found " +
               (t.type == tok::end ? std::string("end of input") : "'" + t.text + "'"));
    }
    return take();
  }

  [[noreturn]] static void fail(parse_error_kind kind, const token& at, const std::string& msg) {
    throw parse_error(kind, at.line, at.column, msg);
  }

  std::vector<token> toks_;
  std::size_t pos_ = 0;
  const property* prop_ = nullptr;
};

} // namespace

property parse_property(std::string_view text) {
  return parser(lexer(text).run()).run();
}

} // namespace ltl4c
