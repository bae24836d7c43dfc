#include "beatty/real_expr.hpp"

#include "beatty/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace beatty {

namespace mp = boost::multiprecision;

struct RealExpr::Node {
  Kind kind;
  BigRational value;  // rational
  Quadratic quad;     // quadratic
  NamedConstant constant = NamedConstant::e;
  std::vector<RealExpr> children;  // sum terms, product factors, reciprocal argument
};

namespace {

constexpr std::int64_t kMaxWorkingBits = std::int64_t{1} << 17;

// d = k^2 * f with f squarefree. Trial division; d comes from user input and
// is small in practice.
std::pair<BigInt, BigInt> split_square(BigInt d) {
  BigInt k = 1;
  for (BigInt p = 2; p * p <= d; ++p) {
    const BigInt sq = p * p;
    while (d % sq == 0) {
      d /= sq;
      k *= p;
    }
  }
  return {k, d};
}

LinearNormalForm add_forms(LinearNormalForm a, const LinearNormalForm& b) {
  a.rational += b.rational;
  a.e_coef += b.e_coef;
  a.pi_coef += b.pi_coef;
  for (const auto& [d, s] : b.surds) {
    auto& slot = a.surds[d];
    slot += s;
    if (slot.is_zero()) a.surds.erase(d);
  }
  return a;
}

bool is_pure_rational(const LinearNormalForm& f) {
  return f.surds.empty() && !f.has_transcendental();
}

LinearNormalForm scale_form(LinearNormalForm f, const BigRational& s) {
  if (s.is_zero()) return {};
  f.rational *= s;
  f.e_coef *= s;
  f.pi_coef *= s;
  for (auto& [d, c] : f.surds) c *= s;
  return f;
}

std::optional<LinearNormalForm> multiply_forms(const LinearNormalForm& a, const LinearNormalForm& b) {
  if (is_pure_rational(a)) return scale_form(b, a.rational);
  if (is_pure_rational(b)) return scale_form(a, b.rational);
  if (a.has_transcendental() || b.has_transcendental()) return std::nullopt;
  // Both are in Q(sqrt(d1), sqrt(d2), ...).
  LinearNormalForm out;
  std::vector<std::pair<BigInt, BigRational>> ta{{BigInt(1), a.rational}};
  std::vector<std::pair<BigInt, BigRational>> tb{{BigInt(1), b.rational}};
  ta.insert(ta.end(), a.surds.begin(), a.surds.end());
  tb.insert(tb.end(), b.surds.begin(), b.surds.end());
  for (const auto& [d1, c1] : ta) {
    if (c1.is_zero()) continue;
    for (const auto& [d2, c2] : tb) {
      if (c2.is_zero()) continue;
      // sqrt(d1)*sqrt(d2) = g*sqrt(d1*d2/g^2), both squarefree
      const BigInt g = mp::gcd(d1, d2);
      const BigInt f = (d1 / g) * (d2 / g);
      const BigRational coef = c1 * c2 * BigRational(g);
      if (f == 1) {
        out.rational += coef;
      } else {
        auto& slot = out.surds[f];
        slot += coef;
        if (slot.is_zero()) out.surds.erase(f);
      }
    }
  }
  return out;
}

// Enclosure of the constant on the grid 2^-bits.
IntervalReal enclose_pi(std::int64_t bits) {
  const std::int64_t g = bits + 24;
  auto atan_inv = [g](unsigned x, BigInt& err) {
    const BigInt x2 = BigInt(x) * x;
    BigInt power = (BigInt(1) << static_cast<unsigned>(g)) / x;
    BigInt sum = 0;
    unsigned k = 0;
    for (; !power.is_zero(); ++k) {
      const BigInt term = power / (2 * k + 1);
      if (k % 2 == 0)
        sum += term;
      else
        sum -= term;
      power /= x2;
    }
    err = k + 1;
    return sum;
  };
  BigInt e1, e2;
  const BigInt a = atan_inv(5, e1);
  const BigInt b = atan_inv(239, e2);
  const BigInt center = 16 * a - 4 * b;
  const BigInt err = 16 * e1 + 4 * e2;
  return IntervalReal(Dyadic(center - err, -g), Dyadic(center + err, -g), static_cast<int>(bits))
      .rounded_out(bits);
}

IntervalReal enclose_e(std::int64_t bits) {
  const std::int64_t g = bits + 24;
  BigInt term = BigInt(1) << static_cast<unsigned>(g);
  BigInt sum = 0;
  unsigned k = 0;
  for (; !term.is_zero(); ++k) {
    sum += term;
    term /= (k + 1);
  }
  return IntervalReal(Dyadic(sum, -g), Dyadic(sum + k + 2, -g), static_cast<int>(bits))
      .rounded_out(bits);
}

IntervalReal enclose_quadratic(const Quadratic& q, std::int64_t bits) {
  // |b|*sqrt(d) in [r, r + 1] * 2^-bits
  const BigInt scaled = q.b * q.b * q.d << static_cast<unsigned>(2 * bits);
  const BigInt r = isqrt(scaled);
  BigInt lo, hi;
  if (q.b.sign() > 0) {
    lo = r;
    hi = r + 1;
  } else {
    lo = -r - 1;
    hi = -r;
  }
  const BigInt a_scaled = q.a << static_cast<unsigned>(bits);
  lo += a_scaled;
  hi += a_scaled;
  return IntervalReal(Dyadic(floor_div(lo, q.c), -bits), Dyadic(ceil_div(hi, q.c), -bits),
                      static_cast<int>(bits));
}

}  // namespace

RealExpr::RealExpr() : RealExpr(rational(BigRational(0))) {}

RealExpr::RealExpr(std::int64_t v) : RealExpr(rational(BigRational(v))) {}

RealExpr RealExpr::rational(const BigRational& r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::rational;
  n->value = r;
  return RealExpr(std::shared_ptr<const Node>(std::move(n)));
}

RealExpr RealExpr::rational(const BigInt& p, const BigInt& q) {
  if (q.is_zero()) throw std::domain_error("rational with zero denominator");
  return rational(BigRational(p, q));
}

RealExpr RealExpr::quadratic(const BigInt& a, const BigInt& b, const BigInt& d, const BigInt& c) {
  if (c.is_zero()) throw std::domain_error("quadratic with zero denominator");
  if (d.sign() < 0) throw std::domain_error("quadratic with negative radicand");
  if (d.is_zero() || b.is_zero()) return rational(BigRational(a, c));
  auto [k, f] = split_square(d);
  BigInt bb = b * k;
  if (f == 1) return rational(BigRational(a + bb, c));
  BigInt aa = a, cc = c;
  if (cc.sign() < 0) {
    aa = -aa;
    bb = -bb;
    cc = -cc;
  }
  const BigInt g = mp::gcd(mp::gcd(aa, bb), cc);
  auto n = std::make_shared<Node>();
  n->kind = Kind::quadratic;
  n->quad = Quadratic{aa / g, bb / g, cc / g, f};
  return RealExpr(std::shared_ptr<const Node>(std::move(n)));
}

RealExpr RealExpr::sqrt(const BigInt& d) { return quadratic(0, 1, d, 1); }

RealExpr RealExpr::constant(NamedConstant c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->constant = c;
  return RealExpr(std::shared_ptr<const Node>(std::move(n)));
}

RealExpr RealExpr::golden_ratio() { return quadratic(1, 1, 5, 2); }

RealExpr::Kind RealExpr::kind() const { return node_->kind; }

std::optional<BigRational> RealExpr::as_rational() const {
  if (node_->kind != Kind::rational) return std::nullopt;
  return node_->value;
}

std::optional<Quadratic> RealExpr::as_quadratic() const {
  if (node_->kind != Kind::quadratic) return std::nullopt;
  return node_->quad;
}

std::optional<NamedConstant> RealExpr::as_constant() const {
  if (node_->kind != Kind::constant) return std::nullopt;
  return node_->constant;
}

std::optional<LinearNormalForm> RealExpr::normal_form() const {
  switch (node_->kind) {
    case Kind::rational: {
      LinearNormalForm f;
      f.rational = node_->value;
      return f;
    }
    case Kind::quadratic: {
      const auto& q = node_->quad;
      LinearNormalForm f;
      f.rational = BigRational(q.a, q.c);
      f.surds[q.d] = BigRational(q.b, q.c);
      return f;
    }
    case Kind::constant: {
      LinearNormalForm f;
      (node_->constant == NamedConstant::e ? f.e_coef : f.pi_coef) = 1;
      return f;
    }
    case Kind::sum: {
      LinearNormalForm acc;
      for (const auto& t : node_->children) {
        auto f = t.normal_form();
        if (!f) return std::nullopt;
        acc = add_forms(std::move(acc), *f);
      }
      return acc;
    }
    case Kind::product: {
      auto a = node_->children[0].normal_form();
      auto b = node_->children[1].normal_form();
      if (!a || !b) return std::nullopt;
      return multiply_forms(*a, *b);
    }
    case Kind::reciprocal:
      return std::nullopt;
  }
  return std::nullopt;
}

Rationality RealExpr::rationality() const {
  if (auto f = normal_form()) {
    const bool e = !f->e_coef.is_zero();
    const bool pi = !f->pi_coef.is_zero();
    if (e && pi) return Rationality::unknown;
    if (e || pi || !f->surds.empty()) return Rationality::irrational;
    return Rationality::rational;
  }
  switch (node_->kind) {
    case Kind::reciprocal:
      return node_->children[0].rationality();
    case Kind::product: {
      const auto& a = node_->children[0];
      const auto& b = node_->children[1];
      if (a.kind() == Kind::rational) return b.rationality();
      if (b.kind() == Kind::rational) return a.rationality();
      return Rationality::unknown;
    }
    default:
      return Rationality::unknown;
  }
}

RealExpr RealExpr::from_normal_form(const LinearNormalForm& f) {
  if (!f.has_transcendental()) {
    if (f.surds.empty()) return rational(f.rational);
    if (f.surds.size() == 1) {
      const auto& [d, s] = *f.surds.begin();
      const BigInt c = mp::lcm(mp::denominator(f.rational), mp::denominator(s));
      const BigInt a = mp::numerator(f.rational) * (c / mp::denominator(f.rational));
      const BigInt b = mp::numerator(s) * (c / mp::denominator(s));
      return quadratic(a, b, d, c);
    }
  }
  std::vector<RealExpr> terms;
  if (!f.rational.is_zero()) terms.push_back(rational(f.rational));
  for (const auto& [d, s] : f.surds)
    terms.push_back(quadratic(0, mp::numerator(s), d, mp::denominator(s)));
  auto scaled_constant = [&](const BigRational& c, NamedConstant k) {
    if (c.is_zero()) return;
    if (c == 1) {
      terms.push_back(constant(k));
      return;
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::product;
    n->children = {rational(c), constant(k)};
    terms.push_back(RealExpr(std::shared_ptr<const Node>(std::move(n))));
  };
  scaled_constant(f.e_coef, NamedConstant::e);
  scaled_constant(f.pi_coef, NamedConstant::pi);
  if (terms.empty()) return rational(0);
  if (terms.size() == 1) return terms.front();
  return make_sum(std::move(terms));
}

RealExpr RealExpr::make_sum(std::vector<RealExpr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::sum;
  n->children = std::move(terms);
  return RealExpr(std::shared_ptr<const Node>(std::move(n)));
}

RealExpr RealExpr::reciprocal() const {
  switch (node_->kind) {
    case Kind::rational:
      if (node_->value.is_zero()) throw std::domain_error("reciprocal of zero");
      return rational(1 / node_->value);
    case Kind::quadratic: {
      // c / (a + b*sqrt(d)) = c*(a - b*sqrt(d)) / (a^2 - b^2*d)
      const auto& q = node_->quad;
      const BigInt norm = q.a * q.a - q.b * q.b * q.d;
      return quadratic(q.c * q.a, -q.c * q.b, q.d, norm);
    }
    case Kind::reciprocal:
      return node_->children[0];
    default: {
      auto n = std::make_shared<Node>();
      n->kind = Kind::reciprocal;
      n->children = {*this};
      return RealExpr(std::shared_ptr<const Node>(std::move(n)));
    }
  }
}

RealExpr RealExpr::affine(const BigRational& scale, const BigRational& shift) const {
  return *this * rational(scale) + rational(shift);
}

RealExpr operator+(const RealExpr& a, const RealExpr& b) {
  auto fa = a.normal_form();
  auto fb = b.normal_form();
  if (fa && fb) return RealExpr::from_normal_form(add_forms(*fa, *fb));
  if (fa && is_pure_rational(*fa) && fa->rational.is_zero()) return b;
  if (fb && is_pure_rational(*fb) && fb->rational.is_zero()) return a;
  std::vector<RealExpr> terms;
  for (const RealExpr* x : {&a, &b}) {
    if (x->kind() == RealExpr::Kind::sum)
      terms.insert(terms.end(), x->node_->children.begin(), x->node_->children.end());
    else
      terms.push_back(*x);
  }
  return RealExpr::make_sum(std::move(terms));
}

RealExpr operator*(const RealExpr& a, const RealExpr& b) {
  if (auto r = a.as_rational()) {
    if (r->is_zero()) return RealExpr(0);
    if (*r == 1) return b;
  }
  if (auto r = b.as_rational()) {
    if (r->is_zero()) return RealExpr(0);
    if (*r == 1) return a;
  }
  auto fa = a.normal_form();
  auto fb = b.normal_form();
  if (fa && fb) {
    if (auto f = multiply_forms(*fa, *fb)) return RealExpr::from_normal_form(*f);
  }
  if (b.kind() == RealExpr::Kind::reciprocal && b.node_->children[0] == a) return RealExpr(1);
  if (a.kind() == RealExpr::Kind::reciprocal && a.node_->children[0] == b) return RealExpr(1);
  auto n = std::make_shared<RealExpr::Node>();
  n->kind = RealExpr::Kind::product;
  n->children = {a, b};
  return RealExpr(std::shared_ptr<const RealExpr::Node>(std::move(n)));
}

bool operator==(const RealExpr& a, const RealExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case RealExpr::Kind::rational:
      return x.value == y.value;
    case RealExpr::Kind::quadratic:
      return x.quad == y.quad;
    case RealExpr::Kind::constant:
      return x.constant == y.constant;
    default:
      return x.children == y.children;
  }
}

std::optional<IntervalReal> RealExpr::enclose(std::int64_t frac_bits) const {
  const int bits = static_cast<int>(std::min<std::int64_t>(frac_bits, 1 << 30));
  switch (node_->kind) {
    case Kind::rational:
      return IntervalReal(Dyadic::floor_at(node_->value, frac_bits),
                          Dyadic::ceil_at(node_->value, frac_bits), bits);
    case Kind::quadratic:
      return enclose_quadratic(node_->quad, frac_bits);
    case Kind::constant:
      return node_->constant == NamedConstant::pi ? enclose_pi(frac_bits) : enclose_e(frac_bits);
    case Kind::sum: {
      const auto guard = static_cast<std::int64_t>(mp::msb(node_->children.size()) + 2);
      std::optional<IntervalReal> acc;
      for (const auto& t : node_->children) {
        auto e = t.enclose(frac_bits + guard);
        if (!e) return std::nullopt;
        acc = acc ? *acc + *e : *e;
      }
      return acc->rounded_out(frac_bits);
    }
    case Kind::product: {
      auto x = node_->children[0].enclose(frac_bits + 32);
      auto y = node_->children[1].enclose(frac_bits + 32);
      if (!x || !y) return std::nullopt;
      return (*x * *y).rounded_out(frac_bits);
    }
    case Kind::reciprocal: {
      auto x = node_->children[0].enclose(2 * frac_bits + 8);
      if (!x) return std::nullopt;
      return x->reciprocal(frac_bits);
    }
  }
  return std::nullopt;
}

IntervalReal RealExpr::eval(int bits) const {
  if (bits < 2) throw std::invalid_argument("eval: bits must be at least 2");
  const std::int64_t s = bits - 1;
  if (node_->kind == Kind::rational) {
    const BigRational scaled = node_->value * BigRational(BigInt(1) << static_cast<unsigned>(s));
    const BigInt f = floor_of(scaled);
    if (BigRational(f) == scaled) return IntervalReal::exact(Dyadic(f, -s), bits);
    return IntervalReal(Dyadic(f, -s), Dyadic(f + 1, -s), bits);
  }
  for (std::int64_t w = s + 64; w <= kMaxWorkingBits; w *= 2) {
    auto enc = enclose(w);
    if (!enc) continue;
    const BigInt f = enc->lo().scaled(s).floor();
    if (f != enc->hi().scaled(s).floor()) continue;
    if (enc->is_exact() && Dyadic(f, -s) == enc->lo()) return IntervalReal::exact(enc->lo(), bits);
    return IntervalReal(Dyadic(f, -s), Dyadic(f + 1, -s), bits);
  }
  throw PrecisionExhausted("eval: could not isolate " + to_string() + " at " +
                           std::to_string(bits) + " bits");
}

double RealExpr::approx() const { return eval(64).midpoint().to_double(); }

std::string RealExpr::to_string() const {
  std::ostringstream os;
  switch (node_->kind) {
    case Kind::rational: {
      const auto& v = node_->value;
      os << mp::numerator(v);
      if (mp::denominator(v) != 1) os << "/" << mp::denominator(v);
      break;
    }
    case Kind::quadratic: {
      const auto& q = node_->quad;
      os << "(" << q.a << (q.b.sign() < 0 ? "-" : "+") << mp::abs(q.b) << "*sqrt(" << q.d << "))";
      if (q.c != 1) os << "/" << q.c;
      break;
    }
    case Kind::constant:
      os << (node_->constant == NamedConstant::e ? "e" : "pi");
      break;
    case Kind::sum: {
      os << "(";
      for (std::size_t i = 0; i < node_->children.size(); ++i)
        os << (i ? " + " : "") << node_->children[i].to_string();
      os << ")";
      break;
    }
    case Kind::product:
      os << "(" << node_->children[0].to_string() << ")*(" << node_->children[1].to_string()
         << ")";
      break;
    case Kind::reciprocal:
      os << "1/(" << node_->children[0].to_string() << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  RealExpr parse_all() {
    RealExpr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

  BigInt parse_integer_literal() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    std::string digits(text_.substr(start, pos_ - start));
    const auto nz = digits.find_first_not_of('0');
    BigInt v(nz == std::string::npos ? std::string("0") : digits.substr(nz));
    return neg ? BigInt(-v) : v;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("in expression '" + std::string(text_) + "' at column " +
                     std::to_string(pos_ + 1) + ": " + msg);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  RealExpr parse_sum() {
    RealExpr acc = parse_product();
    for (;;) {
      if (consume('+'))
        acc = acc + parse_product();
      else if (consume('-'))
        acc = acc - parse_product();
      else
        return acc;
    }
  }

  RealExpr parse_product() {
    RealExpr acc = parse_unary();
    for (;;) {
      if (consume('*')) {
        acc = acc * parse_unary();
      } else if (consume('/')) {
        RealExpr d = parse_unary();
        if (auto r = d.as_rational(); r && r->is_zero()) fail("division by zero");
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RealExpr parse_unary() {
    if (consume('-')) return -parse_unary();
    if (consume('+')) return parse_unary();
    return parse_primary();
  }

  RealExpr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RealExpr e = parse_sum();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view word = text_.substr(start, pos_ - start);
      if (word == "sqrt") {
        if (!consume('(')) fail("expected '(' after sqrt");
        RealExpr arg = parse_sum();
        if (!consume(')')) fail("expected ')'");
        auto r = arg.as_rational();
        if (!r) fail("sqrt argument must be rational");
        if (r->sign() < 0) fail("sqrt of negative number");
        // sqrt(p/q) = sqrt(p*q)/q
        return RealExpr::quadratic(0, 1, mp::numerator(*r) * mp::denominator(*r),
                                   mp::denominator(*r));
      }
      if (word == "e") return RealExpr::constant(NamedConstant::e);
      if (word == "pi") return RealExpr::constant(NamedConstant::pi);
      if (word == "phi") return RealExpr::golden_ratio();
      pos_ = start;
      fail("unknown identifier '" + std::string(word) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  RealExpr parse_number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_dot) ++frac_digits;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    // cpp_int reads a leading 0 as an octal prefix
    const auto nz = digits.find_first_not_of('0');
    BigInt num(nz == std::string::npos ? std::string("0") : digits.substr(nz));
    BigInt den = mp::pow(BigInt(10), static_cast<unsigned>(frac_digits));
    return RealExpr::rational(BigRational(num, den));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

RealExpr parse_real_expr(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty expression");
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return ExprParser(text).parse_all();

  const std::string_view tag = trim(text.substr(0, colon));
  const std::string_view body = trim(text.substr(colon + 1));
  if (tag == "rational") {
    ExprParser p(body);
    BigInt num = p.parse_integer_literal();
    BigInt den = 1;
    if (p.consume('/')) den = p.parse_integer_literal();
    if (!p.at_end()) p.fail("expected p/q");
    if (den.is_zero()) p.fail("zero denominator");
    return RealExpr::rational(num, den);
  }
  if (tag == "quadratic") {
    RealExpr e = ExprParser(body).parse_all();
    if (e.kind() != RealExpr::Kind::quadratic)
      throw ParseError("quadratic:" + std::string(body) + " is not of the form (a+b*sqrt(d))/c "
                       "with d not a perfect square");
    return e;
  }
  if (tag == "const") {
    if (body == "e") return RealExpr::constant(NamedConstant::e);
    if (body == "pi") return RealExpr::constant(NamedConstant::pi);
    if (body == "phi") return RealExpr::golden_ratio();
    throw ParseError("unknown constant '" + std::string(body) + "' (expected e, pi or phi)");
  }
  throw ParseError("unknown expression tag '" + std::string(tag) + "'");
}

}  // namespace beatty
