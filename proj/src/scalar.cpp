#include "stringnet/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace stringnet {

namespace {

bool rational_sqrt(const Rational& q, Rational& out) {
  if (sgn(q) < 0) return false;
  if (sgn(q) == 0) {
    out = 0;
    return true;
  }
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  out = Rational(rn, rd);
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(FieldPtr f, std::vector<Rational> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  if (!f_ || c_.size() != f_->degree()) throw std::logic_error("scalar: bad coefficient vector");
}

bool Scalar::is_zero() const {
  for (const auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

Rational Scalar::rational() const {
  if (!is_rational()) throw std::logic_error("scalar: not rational");
  return c_[0];
}

static void check_same_field(const Scalar& a, const Scalar& b) {
  if (a.field().get() == b.field().get()) return;
  if (!a.field() || !b.field() || !a.field()->same(*b.field()))
    throw std::logic_error("scalar: mixed fields");
}

Scalar Scalar::operator-() const {
  std::vector<Rational> r(c_);
  for (auto& q : r) q = -q;
  return Scalar(f_, std::move(r));
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(*this, o);
  std::vector<Rational> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
  return Scalar(f_, std::move(r));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(*this, o);
  std::vector<Rational> r(c_);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
  return Scalar(f_, std::move(r));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(*this, o);
  return Scalar(f_, f_->vec_mul(c_, o.c_));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar& Scalar::operator+=(const Scalar& o) { return *this = *this + o; }
Scalar& Scalar::operator-=(const Scalar& o) { return *this = *this - o; }
Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("scalar: division by zero");
  return Scalar(f_, f_->vec_inverse(c_, f_->num_generators()));
}

bool Scalar::operator==(const Scalar& o) const {
  check_same_field(*this, o);
  return c_ == o.c_;
}

double Scalar::to_double() const { return f_->vec_value(c_); }

std::string Scalar::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t mask = 0; mask < c_.size(); ++mask) {
    if (sgn(c_[mask]) == 0) continue;
    Rational q = c_[mask];
    if (first) {
      if (sgn(q) < 0) {
        os << "-";
        q = -q;
      }
      first = false;
    } else {
      os << (sgn(q) < 0 ? " - " : " + ");
      if (sgn(q) < 0) q = -q;
    }
    os << q.get_str();
    for (int j = 0; j < f_->num_generators(); ++j)
      if (mask & (std::size_t(1) << j)) os << "*sqrt(" << f_->generator_str(j) << ")";
  }
  if (first) os << "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Field

FieldPtr Field::rationals() { return make({}); }

FieldPtr Field::make(const std::vector<std::string>& generator_exprs) {
  auto f = std::shared_ptr<Field>(new Field());
  f->build_tables();
  for (const auto& expr : generator_exprs) {
    FieldPtr cur = f;
    Scalar g = parse_scalar(cur, expr);
    if (g.to_double() <= 0)
      throw std::invalid_argument("field generator must be positive: " + expr);
    Scalar root = cur->zero();
    if (cur->try_sqrt(g, root))
      throw std::invalid_argument("field generator is already a square: " + expr);
    auto next = std::shared_ptr<Field>(new Field());
    next->k_ = f->k_ + 1;
    next->gen_ = f->gen_;
    next->gen_str_ = f->gen_str_;
    std::vector<Rational> gv(std::size_t(1) << next->k_, Rational(0));
    for (std::size_t i = 0; i < g.coeffs().size(); ++i) gv[i] = g.coeffs()[i];
    next->gen_.push_back(std::move(gv));
    next->gen_str_.push_back(g.str());
    next->build_tables();
    f = next;
  }
  return f;
}

void Field::build_tables() {
  std::size_t n = degree();
  // pad existing generator vectors to the new degree
  for (auto& g : gen_) g.resize(n, Rational(0));
  // compute into a staging table so vec_mul keeps using the recursive path
  // until every entry exists
  std::vector<std::vector<std::vector<Rational>>> table(n,
                                                        std::vector<std::vector<Rational>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = mono_mul(a, b);
  mono_table_ = std::move(table);
  mono_val_.assign(n, 1.0);
  std::vector<double> gen_val(k_);
  for (int j = 0; j < k_; ++j) {
    // generator j's numeric value depends only on earlier monomials
    double v = 0;
    for (std::size_t m = 0; m < (std::size_t(1) << j); ++m)
      v += gen_[j][m].get_d() * mono_val_[m];
    gen_val[j] = std::sqrt(v);
    for (std::size_t m = 0; m < (std::size_t(1) << j); ++m)
      mono_val_[m | (std::size_t(1) << j)] = mono_val_[m] * gen_val[j];
  }
}

std::vector<Rational> Field::mono_mul(std::size_t a, std::size_t b) const {
  std::size_t n = degree();
  std::vector<Rational> r(n, Rational(0));
  std::size_t common = a & b;
  if (common == 0) {
    r[a | b] = 1;
    return r;
  }
  int j = 63;
  while (!(common & (std::size_t(1) << j))) --j;
  std::size_t bit = std::size_t(1) << j;
  // sqrt(g_j)^2 = g_j, an element supported below bit j
  std::vector<Rational> rest = mono_mul(a & ~bit, b & ~bit);
  return vec_mul(gen_[j], rest);
}

std::vector<Rational> Field::vec_mul(const std::vector<Rational>& x,
                                     const std::vector<Rational>& y) const {
  std::size_t n = degree();
  std::vector<Rational> r(n, Rational(0));
  if (!mono_table_.empty()) {
    Rational t;
    for (std::size_t a = 0; a < n; ++a) {
      if (sgn(x[a]) == 0) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (sgn(y[b]) == 0) continue;
        t = x[a] * y[b];
        const auto& mono = mono_table_[a][b];
        for (std::size_t m = 0; m < n; ++m)
          if (sgn(mono[m]) != 0) r[m] += t * mono[m];
      }
    }
    return r;
  }
  // during construction (tables not ready): recursive fallback
  Rational t;
  for (std::size_t a = 0; a < n; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (sgn(y[b]) == 0) continue;
      t = x[a] * y[b];
      auto mono = mono_mul(a, b);
      for (std::size_t m = 0; m < n; ++m)
        if (sgn(mono[m]) != 0) r[m] += t * mono[m];
    }
  }
  return r;
}

static bool vec_is_zero(const std::vector<Rational>& x) {
  for (const auto& q : x)
    if (sgn(q) != 0) return false;
  return true;
}

// Inverse in the level-sub-tower spanned by generators 0..level-1; x must be
// supported there.
std::vector<Rational> Field::vec_inverse(const std::vector<Rational>& x, int level) const {
  std::size_t n = degree();
  if (level == 0) {
    std::vector<Rational> r(n, Rational(0));
    r[0] = 1 / x[0];
    return r;
  }
  std::size_t bit = std::size_t(1) << (level - 1);
  std::vector<Rational> lo(n, Rational(0)), hi(n, Rational(0));
  for (std::size_t m = 0; m < n; ++m) {
    if (m & bit)
      hi[m & ~bit] = x[m];
    else
      lo[m] = x[m];
  }
  if (vec_is_zero(hi)) return vec_inverse(lo, level - 1);
  // 1/(a + b*s) = (a - b*s) / (a^2 - b^2 g),  s = sqrt(g_{level-1})
  std::vector<Rational> b2 = vec_mul(hi, hi);
  std::vector<Rational> norm = vec_mul(lo, lo);
  std::vector<Rational> tmp = vec_mul(b2, gen_[level - 1]);
  for (std::size_t m = 0; m < n; ++m) norm[m] -= tmp[m];
  std::vector<Rational> ninv = vec_inverse(norm, level - 1);
  std::vector<Rational> conj(n, Rational(0));
  for (std::size_t m = 0; m < n; ++m) {
    if (m & bit)
      conj[m] = -x[m];
    else
      conj[m] = x[m];
  }
  return vec_mul(conj, ninv);
}

double Field::vec_value(const std::vector<Rational>& x) const {
  double v = 0;
  for (std::size_t m = 0; m < x.size(); ++m)
    if (sgn(x[m]) != 0) v += x[m].get_d() * mono_val_[m];
  return v;
}

bool Field::vec_sqrt(const std::vector<Rational>& x, int level, std::vector<Rational>& out) const {
  std::size_t n = degree();
  if (level == 0) {
    Rational r;
    if (!rational_sqrt(x[0], r)) return false;
    out.assign(n, Rational(0));
    out[0] = r;
    return true;
  }
  std::size_t bit = std::size_t(1) << (level - 1);
  std::vector<Rational> a(n, Rational(0)), b(n, Rational(0));
  for (std::size_t m = 0; m < n; ++m) {
    if (m & bit)
      b[m & ~bit] = x[m];
    else
      a[m] = x[m];
  }
  const auto& g = gen_[level - 1];
  if (vec_is_zero(b)) {
    // y^2 = a with y = u or y = v*sqrt(g)
    if (vec_sqrt(a, level - 1, out)) return true;
    std::vector<Rational> ag = vec_mul(a, vec_inverse(g, level - 1));
    std::vector<Rational> v;
    if (vec_sqrt(ag, level - 1, v)) {
      out.assign(n, Rational(0));
      for (std::size_t m = 0; m < n; ++m)
        if (sgn(v[m]) != 0) out[m | bit] = v[m];
      return true;
    }
    return false;
  }
  // y = u + v*sqrt(g): u^2 + v^2 g = a, 2uv = b.
  // u^2 solves t^2 - a t + b^2 g / 4 = 0.
  std::vector<Rational> disc = vec_mul(a, a);
  std::vector<Rational> tmp = vec_mul(vec_mul(b, b), g);
  for (std::size_t m = 0; m < n; ++m) disc[m] -= tmp[m];
  std::vector<Rational> w;
  if (!vec_sqrt(disc, level - 1, w)) return false;
  for (int sign = 0; sign < 2; ++sign) {
    std::vector<Rational> u2(n, Rational(0));
    for (std::size_t m = 0; m < n; ++m) {
      u2[m] = a[m] + (sign ? -w[m] : w[m]);
      u2[m] /= 2;
    }
    std::vector<Rational> u;
    if (!vec_sqrt(u2, level - 1, u)) continue;
    if (vec_is_zero(u)) continue;
    // v = b / (2u)
    std::vector<Rational> v = vec_mul(b, vec_inverse(u, level - 1));
    for (std::size_t m = 0; m < n; ++m) v[m] /= 2;
    std::vector<Rational> y(n, Rational(0));
    for (std::size_t m = 0; m < n; ++m) {
      y[m] += u[m];
      if (sgn(v[m]) != 0) y[m | bit] += v[m];
    }
    std::vector<Rational> y2 = vec_mul(y, y);
    bool ok = true;
    for (std::size_t m = 0; m < n && ok; ++m)
      if (y2[m] != x[m]) ok = false;
    if (ok) {
      out = std::move(y);
      return true;
    }
  }
  return false;
}

Scalar Field::zero() const {
  return Scalar(shared_from_this(), std::vector<Rational>(degree(), Rational(0)));
}

Scalar Field::one() const { return from_rational(Rational(1)); }

Scalar Field::from_rational(const Rational& q) const {
  std::vector<Rational> c(degree(), Rational(0));
  c[0] = q;
  return Scalar(shared_from_this(), std::move(c));
}

Scalar Field::from_int(long v) const { return from_rational(Rational(v)); }

Scalar Field::generator_sqrt(int j) const {
  std::vector<Rational> c(degree(), Rational(0));
  c[std::size_t(1) << j] = 1;
  return Scalar(shared_from_this(), std::move(c));
}

bool Field::try_sqrt(const Scalar& x, Scalar& out) const {
  std::vector<Rational> r;
  if (!vec_sqrt(x.coeffs(), k_, r)) return false;
  Scalar s(shared_from_this(), std::move(r));
  if (s.to_double() < 0) s = -s;
  out = std::move(s);
  return true;
}

bool Field::same(const Field& o) const {
  return k_ == o.k_ && gen_ == o.gen_;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
  const FieldPtr& f;
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(at, msg); }

  Scalar parse_expr() {
    Scalar v = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+'))
        v = v + parse_term();
      else if (eat('-'))
        v = v - parse_term();
      else
        return v;
    }
  }

  Scalar parse_term() {
    Scalar v = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        v = v * parse_factor();
      else if (eat('/')) {
        std::size_t at = pos;
        Scalar d = parse_factor();
        if (d.is_zero()) fail("division by zero", at);
        v = v / d;
      } else
        return v;
    }
  }

  Scalar parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    return parse_atom();
  }

  Scalar parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input", pos);
    if (s[pos] == '(') {
      ++pos;
      Scalar v = parse_expr();
      if (!eat(')')) fail("expected ')'", pos);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) return parse_number();
    if (s.compare(pos, 4, "sqrt") == 0) {
      pos += 4;
      if (!eat('(')) fail("expected '(' after sqrt", pos);
      std::size_t at = pos;
      Scalar arg = parse_expr();
      if (!eat(')')) fail("expected ')'", pos);
      if (arg.to_double() < -1e-12 && !arg.is_zero())
        fail("sqrt of a negative value", at);
      Scalar root;
      if (!f->try_sqrt(arg, root))
        fail("sqrt argument is not a perfect square in the declared field", at);
      return root;
    }
    fail(std::string("unexpected character '") + s[pos] + "'", pos);
  }

  Scalar parse_number() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    mpz_class num(std::string(s.substr(start, pos - start)), 10);
    return f->from_rational(Rational(num));
  }
};

}  // namespace

Scalar parse_scalar(const FieldPtr& f, std::string_view text) {
  Parser p{f, text};
  Scalar v = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input", p.pos);
  return v;
}

}  // namespace stringnet
