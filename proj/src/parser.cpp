#include "mquant/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <vector>

#include "mquant/errors.hpp"

namespace mq {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, Comma, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.line, cur_.col);
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) {
      cur_.kind = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        num += src_[pos_];
        bump();
      }
      cur_.kind = Tok::Number;
      cur_.text = num;
      errno = 0;
      cur_.value = std::strtoll(num.c_str(), nullptr, 10);
      if (errno == ERANGE) throw ParseError("integer literal out of range", cur_.line, cur_.col);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos_ < src_.size()) {
        char x = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(x)) || x == '_' || x == '\'') {
          id += x;
          bump();
        } else {
          break;
        }
      }
      cur_.kind = Tok::Ident;
      cur_.text = id;
      return;
    }
    switch (c) {
      case '+': cur_.kind = Tok::Plus; break;
      case '-': cur_.kind = Tok::Minus; break;
      case '*': cur_.kind = Tok::Star; break;
      case '/': cur_.kind = Tok::Slash; break;
      case '(': cur_.kind = Tok::LParen; break;
      case ')': cur_.kind = Tok::RParen; break;
      case ',': cur_.kind = Tok::Comma; break;
      case ';': cur_.kind = Tok::Semi; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
    cur_.text = std::string(1, c);
    bump();
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  RExpr parse() {
    std::vector<Term<RationalComplex>> terms;
    bool negative = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      negative = true;
    }
    terms.push_back(parse_term(negative));
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      bool neg = lex_.take().kind == Tok::Minus;
      terms.push_back(parse_term(neg));
    }
    if (lex_.peek().kind != Tok::End) lex_.fail("trailing input after expression");
    return RExpr::from_terms(std::move(terms));
  }

 private:
  Term<RationalComplex> parse_term(bool negate) {
    Term<RationalComplex> t;
    t.coeff = RationalComplex::one();
    bool have_coeff = false;

    if (lex_.peek().kind == Tok::Number) {
      t.coeff = parse_scalar();
      have_coeff = true;
      if (lex_.peek().kind == Tok::Star) lex_.take();
    } else if (lex_.peek().kind == Tok::LParen) {
      t.coeff = parse_paren_complex();
      have_coeff = true;
      if (lex_.peek().kind == Tok::Star) lex_.take();
    }

    bool have_factor = false;
    while (lex_.peek().kind == Tok::Ident) {
      const std::string& id = lex_.peek().text;
      if (id == "delta") {
        parse_delta(t);
      } else {
        parse_ladder(t);
      }
      have_factor = true;
    }

    if (!have_coeff && !have_factor)
      lex_.fail("expected a coefficient or an operator factor");
    if (negate) t.coeff = RationalComplex{} - t.coeff;
    return t;
  }

  // rational, or rational followed by a bare "i"
  RationalComplex parse_scalar() {
    Rational r = parse_rational(false);
    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "i") {
      lex_.take();
      return RationalComplex(Rational(0), r);
    }
    return RationalComplex(r);
  }

  RationalComplex parse_paren_complex() {
    lex_.take();  // (
    Rational re = parse_rational(true);
    Tok sep = lex_.peek().kind;
    if (sep != Tok::Plus && sep != Tok::Minus)
      lex_.fail("expected '+' or '-' inside complex coefficient");
    lex_.take();
    Rational im = parse_rational(true);
    if (sep == Tok::Minus) im = -im;
    if (!(lex_.peek().kind == Tok::Ident && lex_.peek().text == "i"))
      lex_.fail("expected 'i' in complex coefficient");
    lex_.take();
    expect(Tok::RParen, "expected ')' after complex coefficient");
    return RationalComplex(re, im);
  }

  Rational parse_rational(bool allow_sign) {
    bool neg = false;
    if (allow_sign && lex_.peek().kind == Tok::Minus) {
      lex_.take();
      neg = true;
    }
    if (lex_.peek().kind != Tok::Number) lex_.fail("expected a number");
    std::int64_t num = lex_.take().value;
    std::int64_t den = 1;
    if (lex_.peek().kind == Tok::Slash) {
      lex_.take();
      if (lex_.peek().kind != Tok::Number) lex_.fail("expected denominator after '/'");
      den = lex_.take().value;
      if (den == 0) lex_.fail("zero denominator");
    }
    Rational r(num, den);
    return neg ? -r : r;
  }

  void parse_ladder(Term<RationalComplex>& t) {
    Token sp = lex_.take();
    Species species;
    if (sp.text.size() != 1 || !species_from_letter(sp.text[0], species))
      throw ParseError("unknown species '" + sp.text + "'", sp.line, sp.col);
    LadderKind kind = LadderKind::Annihilate;
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      kind = LadderKind::Create;
    }
    expect(Tok::LParen, "expected '(' after species");
    ModeLabel label = parse_label();
    expect(Tok::RParen, "expected ')' after index list");
    t.ops.push_back(LadderOp{kind, species, std::move(label)});
  }

  void parse_delta(Term<RationalComplex>& t) {
    lex_.take();  // delta
    expect(Tok::LParen, "expected '(' after delta");
    ModeLabel a = parse_label();
    expect(Tok::Semi, "expected ';' between delta labels");
    ModeLabel b = parse_label();
    expect(Tok::RParen, "expected ')' after delta");
    t.deltas.emplace_back(std::move(a), std::move(b));
  }

  ModeLabel parse_label() {
    ModeLabel label;
    label.atoms.push_back(parse_index());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      label.atoms.push_back(parse_index());
    }
    return label;
  }

  ModeIndex parse_index() {
    if (lex_.peek().kind == Tok::Number) return ModeIndex::integer(lex_.take().value);
    if (lex_.peek().kind == Tok::Ident) return ModeIndex::symbol(lex_.take().text);
    lex_.fail("malformed index list: expected identifier or integer");
  }

  void expect(Tok k, const char* msg) {
    if (lex_.peek().kind != k) lex_.fail(msg);
    lex_.take();
  }

  Lexer lex_;
};

std::string rational_str(const Rational& r) { return r.str(); }

// Splits a coefficient into a printable sign and magnitude. Only purely
// real or purely imaginary negatives fold into the term separator; mixed
// complex coefficients always print in parenthesized form.
struct SignSplit {
  bool negative;
  RationalComplex magnitude;
};

SignSplit fold_sign(const RationalComplex& c) {
  if (c.is_real() && c.re.negative()) return {true, RationalComplex(-c.re)};
  if (c.is_imag() && c.im.negative()) return {true, RationalComplex(Rational(0), -c.im)};
  return {false, c};
}

std::string coeff_str(const RationalComplex& c) {
  if (c.is_real()) return rational_str(c.re);
  if (c.is_imag()) return rational_str(c.im) + "i";
  std::string s = "(" + rational_str(c.re);
  s += c.im.negative() ? "-" : "+";
  s += rational_str(c.im.negative() ? -c.im : c.im) + "i)";
  return s;
}

void print_term(std::string& out, const RationalComplex& coeff,
                const Term<RationalComplex>& t) {
  bool bare = t.deltas.empty() && t.ops.empty();
  bool first = true;
  if (bare || !(coeff == RationalComplex::one())) {
    out += coeff_str(coeff);
    first = false;
  }
  for (const auto& d : t.deltas) {
    if (!first) out += ' ';
    out += d.str();
    first = false;
  }
  for (const auto& f : t.ops) {
    if (!first) out += ' ';
    out += f.str();
    first = false;
  }
}

}  // namespace

RExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const RExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : e.terms()) {
    SignSplit s = fold_sign(t.coeff);
    if (first) {
      if (s.negative) out += '-';
      first = false;
    } else {
      out += s.negative ? " - " : " + ";
    }
    print_term(out, s.magnitude, t);
  }
  return out;
}

}  // namespace mq
