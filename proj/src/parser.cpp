#include "nnv/parser.hpp"

#include <cctype>
#include <optional>

namespace nnv {

const char* dialect_name(Dialect d) {
  switch (d) {
    case Dialect::Lra: return "lra";
    case Dialect::Nnl: return "nnl";
    case Dialect::ExistsLra: return "exists-lra";
    case Dialect::ExistsNnl: return "exists-nnl";
    case Dialect::Reach: return "reach";
    case Dialect::NnlPlus: return "nnl+";
    case Dialect::Ref: return "ref";
  }
  return "?";
}

std::optional<Dialect> dialect_from_name(std::string_view name) {
  for (Dialect d : {Dialect::Lra, Dialect::Nnl, Dialect::ExistsLra, Dialect::ExistsNnl,
                    Dialect::Reach, Dialect::NnlPlus, Dialect::Ref})
    if (dialect_name(d) == name) return d;
  return std::nullopt;
}

namespace {

enum class Tok {
  End, Ident, Number,
  LParen, RParen, Comma, Dot, Plus, Star, Caret,
  Bang, BangEq, AmpAmp, PipePipe,
  Le, Lt, Eq, Arrow, DoubleArrow
};

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;

  Tok kind = Tok::End;
  std::string text;      // Ident / Number payload
  std::size_t tok_pos = 0;

  explicit Lexer(std::string_view s) : src(s) { advance(); }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg + " at offset " + std::to_string(at), at);
  }

  bool starts(const char* s) const {
    std::string_view rest = src.substr(pos);
    return rest.substr(0, std::string_view(s).size()) == s;
  }

  void advance() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    tok_pos = pos;
    text.clear();
    if (pos >= src.size()) {
      kind = Tok::End;
      return;
    }
    char c = src[pos];
    if (c == '$') fail("'$' is reserved for generated variable names", pos);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
              src[pos] == '\''))
        ++pos;
      kind = Tok::Ident;
      text = std::string(src.substr(start, pos - start));
      return;
    }
    auto digit_at = [&](std::size_t i) {
      return i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]));
    };
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && digit_at(pos + 1))) {
      std::size_t start = pos;
      if (c == '-') ++pos;
      while (digit_at(pos)) ++pos;
      if (pos < src.size() && src[pos] == '.' && digit_at(pos + 1)) {
        ++pos;
        while (digit_at(pos)) ++pos;
      } else if (pos < src.size() && src[pos] == '/' && digit_at(pos + 1)) {
        ++pos;
        while (digit_at(pos)) ++pos;
      }
      kind = Tok::Number;
      text = std::string(src.substr(start, pos - start));
      return;
    }
    if (starts("<=>")) { kind = Tok::DoubleArrow; pos += 3; return; }
    if (starts("<=")) { kind = Tok::Le; pos += 2; return; }
    if (starts("=>")) { kind = Tok::Arrow; pos += 2; return; }
    if (starts("!=")) { kind = Tok::BangEq; pos += 2; return; }
    if (starts("&&")) { kind = Tok::AmpAmp; pos += 2; return; }
    if (starts("||")) { kind = Tok::PipePipe; pos += 2; return; }
    switch (c) {
      case '<': kind = Tok::Lt; ++pos; return;
      case '=': kind = Tok::Eq; ++pos; return;
      case '!': kind = Tok::Bang; ++pos; return;
      case '(': kind = Tok::LParen; ++pos; return;
      case ')': kind = Tok::RParen; ++pos; return;
      case ',': kind = Tok::Comma; ++pos; return;
      case '.': kind = Tok::Dot; ++pos; return;
      case '+': kind = Tok::Plus; ++pos; return;
      case '*': kind = Tok::Star; ++pos; return;
      case '^': kind = Tok::Caret; ++pos; return;
      default: fail(std::string("unexpected character '") + c + "'", pos);
    }
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(std::string_view s) : lex(s) {}

  bool at(Tok k) const { return lex.kind == k; }

  bool accept(Tok k) {
    if (!at(k)) return false;
    lex.advance();
    return true;
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) lex.fail(std::string("expected ") + what, lex.tok_pos);
  }

  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) lex.fail(std::string("expected ") + what, lex.tok_pos);
    if (lex.text == "exists" || lex.text == "forall" || lex.text == "ispow2")
      lex.fail("keyword cannot name a variable", lex.tok_pos);
    std::string name = lex.text;
    lex.advance();
    return name;
  }

  bool ident_is(const char* kw) const { return at(Tok::Ident) && lex.text == kw; }

  // ---- terms ----

  Term factor() {
    if (at(Tok::Number)) {
      Rational c = parse_rational_or_throw(lex.text);
      lex.advance();
      return t_const(c);
    }
    if (accept(Tok::LParen)) {
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Ident)) {
      if (lex.text == "exists" || lex.text == "forall" || lex.text == "ispow2")
        lex.fail("keyword in term position", lex.tok_pos);
      std::string name = lex.text;
      lex.advance();
      if (name == "e" && accept(Tok::Caret)) return t_exp(factor());
      return t_var(name);
    }
    lex.fail("expected a term", lex.tok_pos);
  }

  Term mul() {
    // t_product folds the grammar's c*x shape into a scaled variable.
    Term t = factor();
    while (accept(Tok::Star)) t = t_product(std::move(t), factor());
    return t;
  }

  Term term() {
    Term t = mul();
    while (accept(Tok::Plus)) t = t_sum(std::move(t), mul());
    return t;
  }

  // ---- formulas ----

  Formula nn_atom(const std::string& name) {
    auto tuple = [&]() {
      std::vector<std::string> vars;
      expect(Tok::LParen, "'('");
      vars.push_back(expect_ident("variable"));
      while (accept(Tok::Comma)) vars.push_back(expect_ident("variable"));
      expect(Tok::RParen, "')'");
      return vars;
    };
    std::vector<std::string> ins = tuple();
    expect(Tok::Eq, "'=' after network inputs");
    std::vector<std::string> outs = tuple();
    return f_nn(name, std::move(ins), std::move(outs));
  }

  Formula atom() {
    if (at(Tok::Ident) && lex.text == "ispow2") {
      lex.advance();
      expect(Tok::LParen, "'('");
      std::string v = expect_ident("variable");
      expect(Tok::RParen, "')'");
      return f_ispow2(v);
    }
    if (at(Tok::Ident)) {
      // Identifier followed by '(' is a network atom; anything else begins a
      // term-comparison atom.
      Lexer save = lex;
      std::string name = lex.text;
      lex.advance();
      if (at(Tok::LParen)) return nn_atom(name);
      lex = save;
    }
    Term a = term();
    if (accept(Tok::Le)) return f_le(std::move(a), term());
    if (accept(Tok::Lt)) return f_lt(std::move(a), term());
    if (accept(Tok::Eq)) return f_eq(std::move(a), term());
    if (accept(Tok::BangEq)) return f_neq(std::move(a), term());
    lex.fail("expected a comparison operator", lex.tok_pos);
  }

  Formula unary() {
    if (accept(Tok::Bang)) {
      Formula sub = unary();
      if (sub->kind == Fk::NnAtom) return f_neg_nn(sub->net, sub->ins, sub->outs);
      if (sub->kind == Fk::NegNnAtom) return f_nn(sub->net, sub->ins, sub->outs);
      return f_not(std::move(sub));
    }
    if (ident_is("exists") || ident_is("forall")) {
      bool ex = lex.text == "exists";
      lex.advance();
      std::string v = expect_ident("quantified variable");
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = formula();
      return ex ? f_exists(v, std::move(body)) : f_forall(v, std::move(body));
    }
    if (at(Tok::LParen)) {
      // '(' may open a grouped formula or a parenthesized term. Try the
      // formula reading; if it fails, reparse from here as a comparison atom.
      Lexer save = lex;
      lex.advance();
      try {
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError&) {
        lex = save;
      }
    }
    return atom();
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::AmpAmp)) f = f_and(std::move(f), unary());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::PipePipe)) f = f_or(std::move(f), conj());
    return f;
  }

  Formula impl() {
    Formula f = disj();
    if (accept(Tok::Arrow)) return f_implies(std::move(f), impl());
    return f;
  }

  Formula formula() {
    Formula f = impl();
    while (accept(Tok::DoubleArrow)) f = f_iff(std::move(f), impl());
    return f;
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  if (!p.at(Tok::End)) p.lex.fail("trailing input", p.lex.tok_pos);
  return f;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  if (!p.at(Tok::End)) p.lex.fail("trailing input", p.lex.tok_pos);
  return t;
}

// ---------------------------------------------------------------------------
// Printing. Binding strength: <=> 1, => 2, || 3, && 4, ! 5, atoms 6;
// quantifiers print like level-1 nodes whose body extends maximally.
// ---------------------------------------------------------------------------

namespace {

std::string print_term_prec(const Term& t, bool factor_position) {
  switch (t->kind) {
    case TermKind::Const:
      return to_string(t->value);
    case TermKind::Scaled:
      if (t->value == 1) return t->var;
      return to_string(t->value) + "*" + t->var;
    case TermKind::Sum: {
      // '+' parses left-associative, so a right-nested child keeps its
      // grouping parentheses to reparse into the same tree.
      std::string rhs = print_term_prec(t->rhs, false);
      if (t->rhs->kind == TermKind::Sum) rhs = "(" + rhs + ")";
      std::string s = print_term_prec(t->lhs, false) + " + " + rhs;
      return factor_position ? "(" + s + ")" : s;
    }
    case TermKind::Product: {
      std::string lhs = print_term_prec(t->lhs, true);
      std::string rhs = print_term_prec(t->rhs, true);
      // A right operand that itself reads as "a * b" (products, or scaled
      // variables like 2*x) must keep its parentheses.
      if (t->rhs->kind == TermKind::Product ||
          (t->rhs->kind == TermKind::Scaled && t->rhs->value != 1))
        rhs = "(" + rhs + ")";
      return lhs + " * " + rhs;
    }
    case TermKind::Exp:
      return "e^(" + print_term_prec(t->lhs, false) + ")";
  }
  return "?";
}

std::string tuple_str(const std::vector<std::string>& vars) {
  std::string s = "(";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ",";
    s += vars[i];
  }
  return s + ")";
}

int prec_of(const Formula& f) {
  switch (f->kind) {
    case Fk::Iff: return 1;
    case Fk::Implies: return 2;
    case Fk::Or: return 3;
    case Fk::And: return 4;
    case Fk::Not: return 5;
    case Fk::Exists:
    case Fk::Forall: return 1;
    default: return 6;
  }
}

// tail marks positions where nothing of the enclosing formula follows (until
// a closing parenthesis). A quantifier body extends as far right as possible,
// so a bare quantifier is only safe in tail position; elsewhere it keeps
// parentheses even when precedence alone would allow dropping them.
std::string print_prec(const Formula& f, int min_prec, bool tail) {
  bool quantifier = f->kind == Fk::Exists || f->kind == Fk::Forall;
  bool wrapped = prec_of(f) < min_prec || (quantifier && !tail);
  bool rtail = wrapped || tail;  // inside parentheses everything is tail
  auto wrap = [&](const std::string& s) {
    return wrapped ? "(" + s + ")" : s;
  };
  switch (f->kind) {
    case Fk::Le: return print_term(f->t1) + " <= " + print_term(f->t2);
    case Fk::Lt: return print_term(f->t1) + " < " + print_term(f->t2);
    case Fk::Eq: return print_term(f->t1) + " = " + print_term(f->t2);
    case Fk::Neq: return print_term(f->t1) + " != " + print_term(f->t2);
    case Fk::Not:
      // Comparison atoms get explicit parentheses for readability; they would
      // reparse identically without them.
      if (is_atom(f->f1) && f->f1->kind != Fk::IsPow2)
        return "!(" + print_prec(f->f1, 0, true) + ")";
      return "!" + print_prec(f->f1, 5, tail);
    case Fk::Or:
      return wrap(print_prec(f->f1, 3, false) + " || " + print_prec(f->f2, 4, rtail));
    case Fk::And:
      return wrap(print_prec(f->f1, 4, false) + " && " + print_prec(f->f2, 5, rtail));
    case Fk::Implies:
      return wrap(print_prec(f->f1, 3, false) + " => " + print_prec(f->f2, 2, rtail));
    case Fk::Iff:
      return wrap(print_prec(f->f1, 1, false) + " <=> " + print_prec(f->f2, 2, rtail));
    case Fk::Exists:
      return wrap("exists " + f->var + ". " + print_prec(f->f1, 1, rtail));
    case Fk::Forall:
      return wrap("forall " + f->var + ". " + print_prec(f->f1, 1, rtail));
    case Fk::NnAtom: return f->net + tuple_str(f->ins) + " = " + tuple_str(f->outs);
    case Fk::NegNnAtom: return "!" + f->net + tuple_str(f->ins) + " = " + tuple_str(f->outs);
    case Fk::IsPow2: return "ispow2(" + f->var + ")";
  }
  return "?";
}

}  // namespace

std::string print_term(const Term& t) { return print_term_prec(t, false); }

std::string print_formula(const Formula& f) { return print_prec(f, 0, true); }

}  // namespace nnv
