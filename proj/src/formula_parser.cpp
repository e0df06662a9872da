#include <cctype>

#include "autorand/errors.hpp"
#include "autorand/logic.hpp"

namespace autorand {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("formula: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string name() {
    skip_space();
    std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (begin == pos_) fail("expected a name");
    return std::string(text_.substr(begin, pos_ - begin));
  }

  FormulaPtr formula() {
    expect('(');
    std::string head = name();
    FormulaPtr out;
    if (head == "and" || head == "or") {
      out = formula();
      if (peek(')')) fail("'" + head + "' needs at least two operands");
      while (!peek(')')) {
        FormulaPtr next = formula();
        out = head == "and" ? conj(out, next) : disj(out, next);
      }
    } else if (head == "not") {
      out = negate(formula());
    } else if (head == "imp") {
      FormulaPtr a = formula();
      out = implies(a, formula());
    } else if (head == "iff") {
      FormulaPtr a = formula();
      FormulaPtr b = formula();
      out = conj(implies(a, b), implies(b, a));
    } else if (head == "exists" || head == "forall") {
      std::string var = name();
      FormulaPtr body = formula();
      out = head == "exists" ? exists(var, body) : forall(var, body);
    } else {
      if (head == "rel") head = name();
      std::vector<std::string> args;
      while (!peek(')')) args.push_back(name());
      if (args.empty()) fail("atom '" + head + "' has no arguments");
      out = atom(head, std::move(args));
    }
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace autorand
