#include "towerlift/parse.hpp"

#include <cctype>

#include "towerlift/errors.hpp"

namespace towerlift {

namespace {

struct PolyOps {
  const std::vector<std::string>* names;
  Field field;

  using Value = Polynomial;

  Value integer(const mpz_class& v) const {
    return Polynomial::constant(names->size(), Scalar(field, mpq_class(v)));
  }
  std::optional<Value> variable(std::string_view name) const {
    for (std::size_t i = 0; i < names->size(); ++i)
      if ((*names)[i] == name) return Polynomial::variable(names->size(), field, i);
    return std::nullopt;
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }
  std::optional<Value> inverse(const Value& a) const {
    if (!a.is_constant() || a.is_zero()) return std::nullopt;
    return Polynomial::constant(names->size(), a.constant_coeff().inverse());
  }
  Value one() const { return Polynomial::constant(names->size(), field, 1); }
  Value pow(const Value& a, std::uint32_t k) const { return a.pow(k); }
};

struct ElementOps {
  const RingPtr* ring;

  using Value = Element;

  Value integer(const mpz_class& v) const {
    return Element::constant(*ring, Scalar((*ring)->field(), mpq_class(v)));
  }
  std::optional<Value> variable(std::string_view name) const {
    const auto& names = (*ring)->names();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return Element::var(*ring, i);
    if (name == "f") return Element::f(*ring);
    return std::nullopt;
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }
  std::optional<Value> inverse(const Value& a) const { return try_invert_unit(a); }
  Value one() const { return Element::one(*ring); }
  Value pow(const Value& a, std::uint32_t k) const { return a.pow(k); }
};

template <typename Ops>
class Parser {
 public:
  using Value = typename Ops::Value;

  Parser(std::string_view text, Ops ops) : text_(text), ops_(ops) {}

  Value parse() {
    skip();
    if (pos_ == text_.size()) error("empty expression");
    Value v = expr();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::Parse, "column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" + std::string(text_) + "\"");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  Value expr() {
    Value v = [&] {
      if (accept('-')) return ops_.neg(term());
      accept('+');
      return term();
    }();
    while (true) {
      if (accept('+'))
        v = ops_.add(v, term());
      else if (accept('-'))
        v = ops_.sub(v, term());
      else
        return v;
    }
  }

  Value term() {
    Value v = factor();
    while (true) {
      if (accept('*')) {
        v = ops_.mul(v, factor());
      } else if (peek('/')) {
        std::size_t at = pos_;
        ++pos_;
        Value d = factor();
        auto inv = ops_.inverse(d);
        if (!inv) {
          pos_ = at;
          error("division by a non-unit");
        }
        v = ops_.mul(v, *inv);
      } else if (starts_factor()) {
        v = ops_.mul(v, factor());
      } else {
        return v;
      }
    }
  }

  Value factor() {
    if (accept('-')) return ops_.neg(factor());
    Value base = atom();
    if (!accept('^')) return base;
    bool negative = accept('-');
    skip();
    mpz_class e = integer_literal();
    if (!e.fits_ulong_p() || e > 1000000) error("exponent too large");
    auto k = static_cast<std::uint32_t>(e.get_ui());
    if (!negative) return ops_.pow(base, k);
    auto inv = ops_.inverse(base);
    if (!inv) error("negative power of a non-unit");
    return ops_.pow(*inv, k);
  }

  mpz_class integer_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Value atom() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) error("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ops_.integer(integer_literal());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto v = ops_.variable(name);
      if (!v) {
        pos_ = start;
        error("unknown variable '" + std::string(name) + "'");
      }
      return *v;
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  Ops ops_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& names, Field field) {
  return Parser<PolyOps>(text, PolyOps{&names, field}).parse();
}

Element parse_element(std::string_view text, const RingPtr& ring) {
  return Parser<ElementOps>(text, ElementOps{&ring}).parse();
}

}  // namespace towerlift
