#include <cctype>

#include "msched/constraints.hpp"
#include "msched/errors.hpp"

namespace msched {

namespace {

// Recursive descent over:  or := and ('|' and)* ; and := unary ('&' unary)* ;
// unary := '!' unary | '(' or ')' | atom
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ConstraintExpr parse() {
    ConstraintExpr e = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  ConstraintExpr parse_or() {
    std::vector<ConstraintExpr> terms;
    terms.push_back(parse_and());
    while (accept('|')) terms.push_back(parse_and());
    if (terms.size() == 1) return std::move(terms.front());
    return ConstraintExpr::any_of(std::move(terms));
  }

  ConstraintExpr parse_and() {
    std::vector<ConstraintExpr> factors;
    factors.push_back(parse_unary());
    while (accept('&')) factors.push_back(parse_unary());
    if (factors.size() == 1) return std::move(factors.front());
    return ConstraintExpr::all_of(std::move(factors));
  }

  ConstraintExpr parse_unary() {
    if (accept('!')) return ConstraintExpr::negate(parse_unary());
    if (accept('(')) {
      ConstraintExpr inner = parse_or();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    return parse_atom();
  }

  ConstraintExpr parse_atom() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) {
      if (pos_ == text_.size()) fail("unexpected end of expression");
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    const std::string_view word = text_.substr(start, pos_ - start);
    const auto kind = parse_atom_name(word);
    if (!kind) throw SyntaxError("unknown constraint '" + std::string(word) + "'", start);
    return ConstraintExpr::atom(*kind);
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const ConstraintExpr& e, std::string& out) {
  using Op = ConstraintExpr::Op;
  auto child = [&out](const ConstraintExpr& c, bool wrap) {
    if (wrap) out += '(';
    print(c, out);
    if (wrap) out += ')';
  };
  switch (e.op()) {
    case Op::Atom:
      out += atom_name(e.kind());
      return;
    case Op::Not: {
      out += '!';
      const auto& c = e.children().front();
      child(c, c.op() == Op::And || c.op() == Op::Or);
      return;
    }
    case Op::And:
    case Op::Or: {
      const char sep = e.op() == Op::And ? '&' : '|';
      bool first = true;
      for (const auto& c : e.children()) {
        if (!first) out += sep;
        first = false;
        // A nested node of the same operator is parenthesized so the tree
        // shape survives a round trip; Or under And needs it for precedence.
        child(c, c.op() == e.op() || (e.op() == Op::And && c.op() == Op::Or));
      }
      return;
    }
  }
}

}  // namespace

ConstraintExpr parse_constraint_string(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const ConstraintExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace msched
