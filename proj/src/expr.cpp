#include "gitp/expr.hpp"

#include <cctype>
#include <map>

namespace gitp {

// ---------------------------------------------------------------- lexer/parser

namespace {

struct Token {
  enum class Kind { kEnd, kInt, kName, kSymbol };
  Kind kind = Kind::kEnd;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::kInt, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      if (j < s.size() && s[j] == '?') ++j;
      out.push_back({Token::Kind::kName, s.substr(i, j - i), i});
      i = j;
    } else if (s.compare(i, 2, "==") == 0 || s.compare(i, 2, "->") == 0) {
      out.push_back({Token::Kind::kSymbol, s.substr(i, 2), i});
      i += 2;
    } else if (std::string("()[],;+-*/^=").find(c) != std::string::npos) {
      out.push_back({Token::Kind::kSymbol, std::string(1, c), i});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::Kind::kEnd, "", s.size()});
  return out;
}

Expr make(Expr::Kind kind, std::string text, std::size_t pos, std::vector<Expr> args = {}) {
  Expr e;
  e.kind = kind;
  e.text = std::move(text);
  e.pos = pos;
  e.args = std::move(args);
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Expr parse_all() {
    Expr e = expr();
    if (peek().kind != Token::Kind::kEnd) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  bool is(const char* sym) const { return peek().kind == Token::Kind::kSymbol && peek().text == sym; }
  [[noreturn]] void fail(const std::string& msg) const {
    if (peek().kind != Token::Kind::kEnd) throw SyntaxError(msg, peek().pos);
    // At end of input, point at the innermost bracket left open.
    std::vector<const Token*> open;
    for (const Token& t : toks_) {
      if (t.kind != Token::Kind::kSymbol) continue;
      if (t.text == "(" || t.text == "[") open.push_back(&t);
      else if ((t.text == ")" || t.text == "]") && !open.empty()) open.pop_back();
    }
    if (!open.empty()) throw SyntaxError("unclosed '" + open.back()->text + "'", open.back()->pos);
    throw SyntaxError("unexpected end of input", peek().pos);
  }
  Token take() { return toks_[at_++]; }
  Token expect(const char* sym) {
    if (!is(sym)) fail(std::string("expected '") + sym + "'");
    return take();
  }

  Expr expr() {
    Expr lhs = sum();
    if (is("==")) {
      const Token op = take();
      lhs = make(Expr::Kind::kBinary, op.text, op.pos, {std::move(lhs), sum()});
    }
    return lhs;
  }

  Expr sum() {
    Expr lhs = product();
    while (is("+") || is("-")) {
      const Token op = take();
      lhs = make(Expr::Kind::kBinary, op.text, op.pos, {std::move(lhs), product()});
    }
    return lhs;
  }

  Expr product() {
    Expr lhs = unary();
    while (is("*") || is("/")) {
      const Token op = take();
      lhs = make(Expr::Kind::kBinary, op.text, op.pos, {std::move(lhs), unary()});
    }
    return lhs;
  }

  Expr unary() {
    if (is("-")) {
      const Token op = take();
      return make(Expr::Kind::kNeg, "-", op.pos, {unary()});
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (is("^")) {
      const Token op = take();
      return make(Expr::Kind::kBinary, "^", op.pos, {std::move(base), unary()});
    }
    return base;
  }

  std::vector<Expr> list_until(const char* close) {
    std::vector<Expr> items;
    if (!is(close)) {
      items.push_back(expr());
      while (is(",")) {
        take();
        items.push_back(expr());
      }
    }
    expect(close);
    return items;
  }

  Expr primary() {
    const Token t = peek();
    if (t.kind == Token::Kind::kInt) {
      take();
      return make(Expr::Kind::kNumber, t.text, t.pos);
    }
    if (t.kind == Token::Kind::kName) {
      take();
      if (t.text == "fam" && is("(")) return family(t.pos);
      if (is("(")) {
        take();
        return make(Expr::Kind::kCall, t.text, t.pos, list_until(")"));
      }
      return make(Expr::Kind::kName, t.text, t.pos);
    }
    if (is("(")) {
      take();
      Expr inner = expr();
      expect(")");
      return inner;
    }
    if (is("[")) {
      take();
      return make(Expr::Kind::kList, "", t.pos, list_until("]"));
    }
    fail("unexpected '" + t.text + "'");
  }

  std::size_t integer() {
    if (peek().kind != Token::Kind::kInt) fail("expected an integer");
    const Token t = take();
    if (t.text.size() > 9) throw SyntaxError("integer too large", t.pos);
    return static_cast<std::size_t>(std::stoul(t.text));
  }

  Expr family(std::size_t pos) {
    expect("(");
    if (!(peek().kind == Token::Kind::kName && peek().text == "tail")) fail("expected 'tail='");
    take();
    expect("=");
    expect("[");
    Expr f = make(Expr::Kind::kFamily, "fam", pos, list_until("]"));
    if (f.args.empty()) throw SyntaxError("tail must not be empty", pos);
    while (is("*")) {
      take();
      if (!(peek().kind == Token::Kind::kName && peek().text == "gphase")) fail("expected 'gphase'");
      take();
      expect("(");
      f.phase_turns.push_back(expr());
      expect(",");
      if (peek().kind != Token::Kind::kInt || peek().text != "1") fail("expected '1/m'");
      take();
      expect("/");
      f.phase_bases.push_back(static_cast<long>(integer()));
      expect(")");
    }
    if (is(";")) {
      take();
      do {
        if (is(",")) take();
        f.override_index.push_back(integer());
        expect("->");
        f.override_values.push_back(expr());
      } while (is(","));
    }
    expect(")");
    return f;
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
};

// Binding strength of a node when printed.
int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::kBinary) {
    if (e.text == "==") return 1;
    if (e.text == "+" || e.text == "-") return 2;
    if (e.text == "*" || e.text == "/") return 3;
    return 5;  // ^
  }
  if (e.kind == Expr::Kind::kNeg) return 4;
  return 6;
}

std::string print_at(const Expr& e, int required);

std::string join(const std::vector<Expr>& items) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) out += (k ? ", " : "") + print_at(items[k], 0);
  return out;
}

std::string print_raw(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kNumber:
    case Expr::Kind::kName:
      return e.text;
    case Expr::Kind::kCall:
      return e.text + "(" + join(e.args) + ")";
    case Expr::Kind::kList:
      return "[" + join(e.args) + "]";
    case Expr::Kind::kNeg:
      return "-" + print_at(e.args[0], 4);
    case Expr::Kind::kBinary: {
      const int p = precedence(e);
      const std::string& op = e.text;
      if (op == "^") return print_at(e.args[0], 6) + "^" + print_at(e.args[1], 4);
      const std::string sep = (op == "*" || op == "/") ? op : " " + op + " ";
      const int left = op == "==" ? p + 1 : p;
      return print_at(e.args[0], left) + sep + print_at(e.args[1], p + 1);
    }
    case Expr::Kind::kFamily: {
      std::string out = "fam(tail=[" + join(e.args) + "]";
      for (std::size_t k = 0; k < e.phase_turns.size(); ++k)
        out += "*gphase(" + print_at(e.phase_turns[k], 0) + ", 1/" + std::to_string(e.phase_bases[k]) + ")";
      for (std::size_t k = 0; k < e.override_index.size(); ++k)
        out += (k ? ", " : "; ") + std::to_string(e.override_index[k]) + "->" + print_at(e.override_values[k], 0);
      return out + ")";
    }
  }
  return "";
}

std::string print_at(const Expr& e, int required) {
  const std::string body = print_raw(e);
  return precedence(e) < required ? "(" + body + ")" : body;
}

}  // namespace

Expr parse(const std::string& text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) { return print_at(e, 0); }

// ---------------------------------------------------------------- values

std::string type_name(const Value& v) {
  static const char* const kNames[] = {"bool",   "scalar",  "vector",        "matrix",
                                       "family", "class",   "element",       "group-algebra element",
                                       "list"};
  return kNames[v.index()];
}

std::string to_string(const Value& v) {
  struct Printer {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const Cyc& c) const { return c.to_string(); }
    std::string operator()(const Vec& x) const {
      std::string out = "[";
      for (std::size_t k = 0; k < x.size(); ++k) out += (k ? ", " : "") + x[k].to_string();
      return out + "]";
    }
    std::string operator()(const CycMatrix& m) const { return m.to_string(); }
    std::string operator()(const CoordFamily& f) const { return f.to_string(); }
    std::string operator()(const ClassId& c) const { return "class(" + c.to_string() + ")"; }
    std::string operator()(const TensorElement& a) const { return a.to_string(); }
    std::string operator()(const GroupAlgebraElement& g) const { return g.to_string(); }
    std::string operator()(const std::vector<TensorElement>& xs) const {
      std::string out = "[";
      for (std::size_t k = 0; k < xs.size(); ++k) out += (k ? ", " : "") + xs[k].to_string();
      return out + "]";
    }
  };
  return std::visit(Printer{}, v);
}

CoordinateAlgebra algebra_by_name(const std::string& name) {
  if (name == "C") return CoordinateAlgebra::scalars();
  if (name == "M2") return CoordinateAlgebra::matrix(2);
  auto number_after = [&name](std::size_t prefix, std::size_t suffix) {
    const std::string digits = name.substr(prefix, name.size() - prefix - suffix);
    if (digits.empty() || digits.size() > 2 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("unknown algebra '" + name + "'");
    return std::stoi(digits);
  };
  if (name.rfind("C^", 0) == 0) return CoordinateAlgebra::functions(number_after(2, 0));
  if (name.rfind("C[Z", 0) == 0 && name.back() == ']') return CoordinateAlgebra::cyclic_group(number_after(3, 1));
  if (name.rfind("Z", 0) == 0) return CoordinateAlgebra::cyclic_group(number_after(1, 0));
  throw DomainError("unknown algebra '" + name + "' (known: C, C^n, M2, C[Zn])");
}

// ---------------------------------------------------------------- evaluator

namespace {

template <typename T>
const T& as(const Value& v, const char* expected, std::size_t pos) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw TypeMismatch(expected, type_name(v), pos);
}

long as_int(const Value& v, std::size_t pos) {
  const Cyc& c = as<Cyc>(v, "integer", pos);
  if (!c.is_rational() || c.as_rational().get_den() != 1 || !c.as_rational().get_num().fits_slong_p())
    throw TypeMismatch("integer", "non-integer scalar", pos);
  return c.as_rational().get_num().get_si();
}

Rational as_rational(const Value& v, std::size_t pos) {
  const Cyc& c = as<Cyc>(v, "rational", pos);
  if (!c.is_rational()) throw TypeMismatch("rational", "irrational scalar", pos);
  return c.as_rational();
}

Vec as_coordinate(const Value& v, std::size_t pos) {
  if (const Cyc* c = std::get_if<Cyc>(&v)) return Vec{*c};
  return as<Vec>(v, "scalar or vector", pos);
}

void arity(const Expr& e, std::size_t lo, std::size_t hi) {
  if (e.args.size() < lo || e.args.size() > hi)
    throw ExprError(e.text + ": expected " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                        " argument(s), got " + std::to_string(e.args.size()),
                    e.pos);
}

}  // namespace

SpaceFamily Evaluator::spaces_for(const std::vector<int>& dims) const {
  bool all_alg = true;
  for (int d : dims) all_alg = all_alg && static_cast<std::size_t>(d) == alg_.dim();
  if (all_alg) return alg_.coordinate_space();
  bool constant = true;
  for (int d : dims) constant = constant && d == dims.front();
  return constant ? SpaceFamily::constant(dims.front()) : SpaceFamily(dims);
}

CoordFamily Evaluator::family(const Expr& e) const {
  std::vector<Vec> tail;
  std::vector<int> dims;
  for (const Expr& item : e.args) {
    tail.push_back(as_coordinate(eval(item), item.pos));
    dims.push_back(static_cast<int>(tail.back().size()));
  }
  std::vector<Phase> phases;
  for (std::size_t k = 0; k < e.phase_turns.size(); ++k) {
    if (e.phase_bases[k] < 2) throw ExprError("gphase: base must be at least 2", e.pos);
    phases.push_back(Phase{e.phase_bases[k], as_rational(eval(e.phase_turns[k]), e.phase_turns[k].pos)});
  }
  std::map<std::size_t, Vec> overrides;
  for (std::size_t k = 0; k < e.override_index.size(); ++k) {
    if (overrides.count(e.override_index[k])) throw ExprError("duplicate override index", e.override_values[k].pos);
    overrides[e.override_index[k]] = as_coordinate(eval(e.override_values[k]), e.override_values[k].pos);
  }
  return CoordFamily(spaces_for(dims), Tail(std::move(tail), std::move(phases)), std::move(overrides));
}

Value Evaluator::eval(const Expr& e) const {
  try {
    switch (e.kind) {
      case Expr::Kind::kNumber:
        return Cyc(Rational(e.text));
      case Expr::Kind::kName:
        if (e.text == "i") return Cyc::zeta(4);
        if (e.text == "true") return true;
        if (e.text == "false") return false;
        if (e.text == "unit") return algebra_unit(alg_);
        throw ExprError("unknown name '" + e.text + "'", e.pos);
      case Expr::Kind::kNeg: {
        const Value v = eval(e.args[0]);
        if (const Cyc* c = std::get_if<Cyc>(&v)) return -*c;
        if (const TensorElement* a = std::get_if<TensorElement>(&v)) return -*a;
        if (const GroupAlgebraElement* g = std::get_if<GroupAlgebraElement>(&v)) return Cyc(-1) * *g;
        if (const Vec* x = std::get_if<Vec>(&v)) {
          Vec out = *x;
          for (Cyc& c : out) c = -c;
          return out;
        }
        throw TypeMismatch("scalar, vector or element", type_name(v), e.args[0].pos);
      }
      case Expr::Kind::kList: {
        std::vector<Value> items;
        for (const Expr& item : e.args) items.push_back(eval(item));
        if (items.empty()) return Vec{};
        if (std::holds_alternative<Cyc>(items.front())) {
          Vec out;
          for (std::size_t k = 0; k < items.size(); ++k) out.push_back(as<Cyc>(items[k], "scalar", e.args[k].pos));
          return out;
        }
        if (std::holds_alternative<Vec>(items.front())) {
          std::vector<Vec> rows;
          for (std::size_t k = 0; k < items.size(); ++k) {
            rows.push_back(as<Vec>(items[k], "vector", e.args[k].pos));
            if (rows.back().size() != rows.front().size()) throw ExprError("ragged matrix rows", e.args[k].pos);
          }
          return CycMatrix::from_rows(rows);
        }
        std::vector<TensorElement> out;
        for (std::size_t k = 0; k < items.size(); ++k)
          out.push_back(as<TensorElement>(items[k], "element", e.args[k].pos));
        return out;
      }
      case Expr::Kind::kFamily:
        return family(e);
      case Expr::Kind::kCall:
        return call(e);
      case Expr::Kind::kBinary:
        return binary(e);
    }
  } catch (const ExprError&) {
    throw;
  } catch (const Error& err) {
    throw ExprError(err.what(), e.pos);
  }
  throw ExprError("unsupported expression", e.pos);
}

Value Evaluator::binary(const Expr& e) const {
  const Value l = eval(e.args[0]);
  const Value r = eval(e.args[1]);
  const std::size_t lp = e.args[0].pos, rp = e.args[1].pos;
  const std::string& op = e.text;
  if (op == "==") {
    if (l.index() != r.index()) throw TypeMismatch(type_name(l), type_name(r), rp);
    return l == r;
  }
  if (op == "^") {
    const long n = as_int(r, rp);
    return as<Cyc>(l, "scalar", lp).pow(n);
  }
  const Cyc* ls = std::get_if<Cyc>(&l);
  const Cyc* rs = std::get_if<Cyc>(&r);
  if (ls && rs) {
    if (op == "+") return *ls + *rs;
    if (op == "-") return *ls - *rs;
    if (op == "*") return *ls * *rs;
    if (rs->is_zero()) throw ExprError("division by zero", rp);
    return *ls / *rs;
  }
  if (op == "+" || op == "-") {
    const Cyc sign = op == "+" ? Cyc(1) : Cyc(-1);
    if (const TensorElement* a = std::get_if<TensorElement>(&l))
      return *a + sign * as<TensorElement>(r, "element", rp);
    if (const GroupAlgebraElement* g = std::get_if<GroupAlgebraElement>(&l))
      return *g + sign * as<GroupAlgebraElement>(r, "group-algebra element", rp);
    if (const Vec* x = std::get_if<Vec>(&l)) {
      const Vec& y = as<Vec>(r, "vector", rp);
      if (x->size() != y.size()) throw ExprError("vector lengths differ", rp);
      Vec out(x->size());
      for (std::size_t k = 0; k < x->size(); ++k) out[k] = (*x)[k] + sign * y[k];
      return out;
    }
    if (const CycMatrix* m = std::get_if<CycMatrix>(&l)) {
      const CycMatrix& n = as<CycMatrix>(r, "matrix", rp);
      if (m->rows() != n.rows() || m->cols() != n.cols()) throw ExprError("matrix shapes differ", rp);
      return *m + sign * n;
    }
    throw TypeMismatch("scalar, vector, matrix or element", type_name(l), lp);
  }
  if (op == "/") {
    const Cyc& d = as<Cyc>(r, "scalar", rp);
    if (d.is_zero()) throw ExprError("division by zero", rp);
    if (const TensorElement* a = std::get_if<TensorElement>(&l)) return d.inverse() * *a;
    if (const GroupAlgebraElement* g = std::get_if<GroupAlgebraElement>(&l)) return d.inverse() * *g;
    throw TypeMismatch("scalar or element", type_name(l), lp);
  }
  // op == "*"
  if (ls) {
    if (const TensorElement* a = std::get_if<TensorElement>(&r)) return *ls * *a;
    if (const GroupAlgebraElement* g = std::get_if<GroupAlgebraElement>(&r)) return *ls * *g;
    if (const CycMatrix* m = std::get_if<CycMatrix>(&r)) return *ls * *m;
    if (const Vec* x = std::get_if<Vec>(&r)) {
      Vec out = *x;
      for (Cyc& c : out) c = *ls * c;
      return out;
    }
    throw TypeMismatch("scalar, vector, matrix or element", type_name(r), rp);
  }
  if (rs) {
    if (const TensorElement* a = std::get_if<TensorElement>(&l)) return *rs * *a;
    if (const GroupAlgebraElement* g = std::get_if<GroupAlgebraElement>(&l)) return *rs * *g;
    throw TypeMismatch("element", type_name(l), lp);
  }
  if (const TensorElement* a = std::get_if<TensorElement>(&l)) return mul(alg_, *a, as<TensorElement>(r, "element", rp));
  if (const GroupAlgebraElement* g = std::get_if<GroupAlgebraElement>(&l))
    return *g * as<GroupAlgebraElement>(r, "group-algebra element", rp);
  if (const CycMatrix* m = std::get_if<CycMatrix>(&l)) {
    if (const Vec* x = std::get_if<Vec>(&r)) {
      if (x->size() != m->cols()) throw ExprError("matrix and vector shapes differ", rp);
      return m->apply(*x);
    }
    const CycMatrix& n = as<CycMatrix>(r, "matrix or vector", rp);
    if (m->cols() != n.rows()) throw ExprError("matrix shapes differ", rp);
    return *m * n;
  }
  throw TypeMismatch("scalar, matrix or element", type_name(l), lp);
}

Value Evaluator::call(const Expr& e) const {
  const std::string& f = e.text;
  std::vector<Value> a;
  for (const Expr& arg : e.args) a.push_back(eval(arg));
  auto pos = [&e](std::size_t k) { return e.args[k].pos; };
  auto element = [&](std::size_t k) -> const TensorElement& { return as<TensorElement>(a[k], "element", pos(k)); };
  auto fam = [&](std::size_t k) -> const CoordFamily& { return as<CoordFamily>(a[k], "family", pos(k)); };

  if (f == "zeta") {
    arity(e, 1, 2);
    const long n = as_int(a[0], pos(0));
    if (n < 1 || n > kMaxCyclotomicOrder) throw ExprError("zeta: order out of range", pos(0));
    return Cyc::zeta(static_cast<int>(n), a.size() > 1 ? as_int(a[1], pos(1)) : 1);
  }
  if (f == "sqrt") {
    arity(e, 1, 1);
    return Cyc::sqrt_of(as_rational(a[0], pos(0)));
  }
  if (f == "conj") {
    arity(e, 1, 1);
    if (const Vec* x = std::get_if<Vec>(&a[0])) {
      Vec out = *x;
      for (Cyc& c : out) c = c.conj();
      return out;
    }
    return as<Cyc>(a[0], "scalar or vector", pos(0)).conj();
  }
  if (f == "gphase") {
    arity(e, 2, 2);
    const Rational q = as_rational(a[1], pos(1));
    if (q.get_num() != 1 || q.get_den() < 2 || !q.get_den().fits_slong_p())
      throw ExprError("gphase: ratio must be 1/m with m >= 2", pos(1));
    return CoordFamily::geom_phase(as_rational(a[0], pos(0)), q.get_den().get_si());
  }
  if (f == "theta") {
    arity(e, 1, 1);
    return theta(fam(0));
  }
  if (f == "class") {
    arity(e, 1, 1);
    if (const ClassId* c = std::get_if<ClassId>(&a[0])) return *c;
    return class_of(fam(0));
  }
  if (f == "section") {
    arity(e, 1, 1);
    return as<ClassId>(a[0], "class", pos(0)).section();
  }
  if (f == "sim" || f == "approx" || f == "approx_t") {
    arity(e, 2, 2);
    if (f == "sim") return sim(fam(0), fam(1));
    if (f == "approx") return approx(fam(0), fam(1));
    return approx_t(fam(0), fam(1));
  }
  if (f == "kappa_eq") {
    arity(e, 2, 2);
    auto cls = [&](std::size_t k) {
      if (const ClassId* c = std::get_if<ClassId>(&a[k])) return *c;
      return class_of(fam(k));
    };
    return kappa(cls(0)) == kappa(cls(1));
  }
  if (f == "phi1" || f == "phi0") {
    arity(e, 1, 1);
    return f == "phi1" ? phi1(element(0)) : phi0(element(0));
  }
  if (f == "inner") {
    arity(e, 2, 2);
    return herm_form(element(0), element(1));
  }
  if (f == "gram") {
    std::vector<TensorElement> xs;
    if (a.size() == 1 && std::holds_alternative<std::vector<TensorElement>>(a[0])) {
      xs = std::get<std::vector<TensorElement>>(a[0]);
    } else {
      for (std::size_t k = 0; k < a.size(); ++k) xs.push_back(element(k));
    }
    return gram(xs);
  }
  if (f == "psd?" || f == "definite?") {
    arity(e, 1, 1);
    const PsdReport r = psd_test(as<CycMatrix>(a[0], "matrix", pos(0)));
    return f == "psd?" ? r.hermitian && r.psd : r.hermitian && r.definite;
  }
  if (f == "mul") {
    arity(e, 2, 2);
    return mul(alg_, element(0), element(1));
  }
  if (f == "star") {
    arity(e, 1, 1);
    return star(alg_, element(0));
  }
  if (f == "center?") {
    arity(e, 1, 1);
    return center_membership(alg_, element(0));
  }
  if (f == "decompose") {
    arity(e, 1, 1);
    std::vector<TensorElement> parts;
    for (auto& kv : decompose(element(0))) parts.push_back(std::move(kv.second));
    return parts;
  }
  if (f == "Phi") {
    arity(e, 1, 1);
    return group_algebra_iso(element(0));
  }
  if (f == "Phi_inv") {
    arity(e, 1, 1);
    return group_algebra_inverse(as<GroupAlgebraElement>(a[0], "group-algebra element", pos(0)));
  }
  if (f == "E") {
    arity(e, 1, 1);
    return expectation(element(0));
  }
  if (f == "chi") {
    arity(e, 1, 1);
    return as<GroupAlgebraElement>(a[0], "group-algebra element", pos(0)).chi();
  }
  if (f == "lambda") {
    arity(e, 1, 1);
    if (const ClassId* c = std::get_if<ClassId>(&a[0])) return GroupAlgebraElement::lambda(*c);
    return GroupAlgebraElement::lambda(class_of(fam(0)));
  }
  if (f == "modinner") {
    arity(e, 2, 2);
    return module_inner(element(0), element(1));
  }
  throw ExprError("unknown function '" + f + "'", e.pos);
}

}  // namespace gitp
