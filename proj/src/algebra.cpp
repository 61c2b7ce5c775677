#include "stringnet/algebra.hpp"

#include <random>
#include <sstream>

#include "stringnet/approx.hpp"

namespace stringnet {

// ---------------------------------------------------------------------------
// FiniteAlgebra

FiniteAlgebra::FiniteAlgebra(FieldPtr f, std::vector<std::vector<std::vector<Scalar>>> structure)
    : f_(std::move(f)), n_(structure.size()), sc_(std::move(structure)) {
  for (const auto& row : sc_) {
    if (row.size() != n_) throw std::logic_error("algebra: ragged structure constants");
    for (const auto& v : row)
      if (v.size() != n_) throw std::logic_error("algebra: ragged structure constants");
  }
}

std::vector<Scalar> FiniteAlgebra::multiply(const std::vector<Scalar>& x,
                                            const std::vector<Scalar>& y) const {
  std::vector<Scalar> r(n_, f_->zero());
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (std::size_t k = 0; k < n_; ++k)
        if (!sc_[i][j][k].is_zero()) r[k] += c * sc_[i][j][k];
    }
  }
  return r;
}

ScalarMatrix FiniteAlgebra::left_mult(const std::vector<Scalar>& x) const {
  ScalarMatrix m(f_, n_, n_);
  for (std::size_t j = 0; j < n_; ++j) {
    auto col = multiply(x, basis_vector(j));
    for (std::size_t k = 0; k < n_; ++k) m.at(k, j) = col[k];
  }
  return m;
}

ScalarMatrix FiniteAlgebra::right_mult(const std::vector<Scalar>& x) const {
  ScalarMatrix m(f_, n_, n_);
  for (std::size_t j = 0; j < n_; ++j) {
    auto col = multiply(basis_vector(j), x);
    for (std::size_t k = 0; k < n_; ++k) m.at(k, j) = col[k];
  }
  return m;
}

std::vector<Scalar> FiniteAlgebra::basis_vector(std::size_t i) const {
  std::vector<Scalar> v(n_, f_->zero());
  v[i] = f_->one();
  return v;
}

bool FiniteAlgebra::is_associative() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      auto ij = multiply(basis_vector(i), basis_vector(j));
      for (std::size_t k = 0; k < n_; ++k) {
        auto jk = multiply(basis_vector(j), basis_vector(k));
        auto lhs = multiply(ij, basis_vector(k));
        auto rhs = multiply(basis_vector(i), jk);
        if (lhs != rhs) return false;
      }
    }
  return true;
}

const std::vector<Scalar>& FiniteAlgebra::unit() const {
  if (unit_computed_) return unit_;
  // x b_j = b_j and b_j x = b_j for all j
  ScalarMatrix sys(f_, 2 * n_ * n_, n_);
  std::vector<Scalar> rhs(2 * n_ * n_, f_->zero());
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t i = 0; i < n_; ++i) {
        sys.at(j * n_ + k, i) = sc_[i][j][k];
        sys.at(n_ * n_ + j * n_ + k, i) = sc_[j][i][k];
      }
      rhs[j * n_ + k] = (j == k) ? f_->one() : f_->zero();
      rhs[n_ * n_ + j * n_ + k] = (j == k) ? f_->one() : f_->zero();
    }
  std::vector<Scalar> x;
  if (!sys.solve(rhs, x)) throw std::domain_error("algebra: no two-sided unit");
  unit_ = std::move(x);
  unit_computed_ = true;
  return unit_;
}

bool FiniteAlgebra::is_semisimple() const {
  // trace form of the left regular representation
  std::vector<Scalar> tr(n_, f_->zero());
  for (std::size_t k = 0; k < n_; ++k) {
    Scalar t = f_->zero();
    for (std::size_t j = 0; j < n_; ++j) t += sc_[k][j][j];
    tr[k] = t;
  }
  ScalarMatrix gram(f_, n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      Scalar g = f_->zero();
      for (std::size_t k = 0; k < n_; ++k)
        if (!sc_[i][j][k].is_zero()) g += sc_[i][j][k] * tr[k];
      gram.at(i, j) = g;
    }
  return gram.rank() == n_;
}

std::vector<std::vector<Scalar>> FiniteAlgebra::center_basis() const {
  ScalarMatrix sys(f_, n_ * n_, n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        sys.at(j * n_ + k, i) = sc_[i][j][k] - sc_[j][i][k];
  return sys.kernel_basis();
}

// ---------------------------------------------------------------------------
// polynomials over the scalar field (little-endian coefficients)

namespace {

using KPoly = std::vector<Scalar>;

void poly_trim(KPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int poly_deg(const KPoly& p) { return int(p.size()) - 1; }

KPoly poly_mul(const FieldPtr& f, const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1, f->zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

// returns quotient, stores remainder
KPoly poly_divmod(const FieldPtr& f, KPoly a, const KPoly& b, KPoly& rem) {
  if (b.empty()) throw std::domain_error("poly: division by zero");
  KPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, f->zero());
  Scalar lead_inv = b.back().inverse();
  while (poly_deg(a) >= poly_deg(b)) {
    std::size_t shift = a.size() - b.size();
    Scalar c = a.back() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    poly_trim(a);
    if (a.empty()) break;
  }
  rem = std::move(a);
  poly_trim(q);
  return q;
}

bool poly_divides(const FieldPtr& f, const KPoly& d, const KPoly& p) {
  KPoly rem;
  poly_divmod(f, p, d, rem);
  return rem.empty();
}

// extended euclid: g = gcd, a*s + b*t = g
KPoly poly_ext_gcd(const FieldPtr& f, KPoly a, KPoly b, KPoly& s, KPoly& t) {
  KPoly s0{f->one()}, s1, t0, t1{f->one()};
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    KPoly rem;
    KPoly q = poly_divmod(f, a, b, rem);
    a = std::move(b);
    b = std::move(rem);
    KPoly ns = s0, nt = t0;
    KPoly qs = poly_mul(f, q, s1), qt = poly_mul(f, q, t1);
    ns.resize(std::max(ns.size(), qs.size()), f->zero());
    nt.resize(std::max(nt.size(), qt.size()), f->zero());
    for (std::size_t i = 0; i < qs.size(); ++i) ns[i] -= qs[i];
    for (std::size_t i = 0; i < qt.size(); ++i) nt[i] -= qt[i];
    poly_trim(ns);
    poly_trim(nt);
    s0 = std::move(s1);
    s1 = std::move(ns);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  s = std::move(s0);
  t = std::move(t0);
  return a;
}

std::string poly_str(const KPoly& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << " + ";
    os << "(" << p[i].str() << ")*x^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LLL-based reconstruction of field elements from high-precision values

using boost::multiprecision::cpp_bin_float_100;

mpz_class round_to_mpz(const HpFloat& x) {
  HpFloat r = x < 0 ? x - HpFloat("0.5") : x + HpFloat("0.5");
  std::ostringstream os;
  os << std::fixed << std::setprecision(0) << r;
  std::string s = os.str();
  auto dot = s.find('.');
  if (dot != std::string::npos) s = s.substr(0, dot);
  if (s.empty() || s == "-") s = "0";
  return mpz_class(s);
}

// LLL reduction (delta = 3/4) of integer row vectors.
void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
  std::size_t n = b.size();
  auto dot = [&](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += mpq_class(x[i]) * mpq_class(y[i]);
    return s;
  };
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n, 0));
  std::vector<mpq_class> norm(n, 0);
  auto recompute = [&]() {
    std::vector<std::vector<mpq_class>> gs(n, std::vector<mpq_class>(b[0].size(), 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < b[i].size(); ++t) gs[i][t] = mpq_class(b[i][t]);
      for (std::size_t j = 0; j < i; ++j) {
        mpq_class num = 0;
        for (std::size_t t = 0; t < b[i].size(); ++t) num += mpq_class(b[i][t]) * gs[j][t];
        mu[i][j] = norm[j] == 0 ? mpq_class(0) : num / norm[j];
        for (std::size_t t = 0; t < gs[i].size(); ++t) gs[i][t] -= mu[i][j] * gs[j][t];
      }
      norm[i] = 0;
      for (std::size_t t = 0; t < gs[i].size(); ++t) norm[i] += gs[i][t] * gs[i][t];
    }
  };
  recompute();
  std::size_t k = 1;
  int guard = 0;
  while (k < n && ++guard < 10000) {
    for (std::size_t j = k; j-- > 0;) {
      mpq_class r = mu[k][j];
      mpz_class c;
      mpz_class num = r.get_num(), den = r.get_den();
      mpz_class top = num * 2 + den;
      mpz_class bot = den * 2;
      mpz_fdiv_q(c.get_mpz_t(), top.get_mpz_t(), bot.get_mpz_t());
      if (c != 0)
        for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= c * b[j][t];
    }
    recompute();
    mpq_class lhs = norm[k];
    mpq_class rhs = (mpq_class(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      recompute();
      if (k > 1) --k;
    }
  }
  (void)dot;
}

// Attempts to express the high-precision value `target` in the field.
bool reconstruct_in_field(const FieldPtr& f, const ApproxContext& ctx, const HpFloat& target,
                          Scalar& out) {
  std::size_t d = f->degree();
  HpFloat scale("1e60");
  std::vector<std::vector<mpz_class>> lat(d + 1, std::vector<mpz_class>(d + 2, 0));
  for (std::size_t i = 0; i < d; ++i) {
    lat[i][i] = 1;
    lat[i][d + 1] = round_to_mpz(ctx.mono_values()[i] * scale);
  }
  lat[d][d] = 1;
  lat[d][d + 1] = round_to_mpz(target * scale);
  lll_reduce(lat);
  for (const auto& row : lat) {
    if (row[d] == 0) continue;
    // candidate: target = -sum_i row[i]/row[d] * mono_i
    std::vector<Rational> c(d);
    for (std::size_t i = 0; i < d; ++i) {
      Rational q(row[i], row[d]);
      q.canonicalize();
      c[i] = -q;
    }
    Scalar cand(f, std::move(c));
    HpFloat err = abs(ctx.eval(cand) - target);
    if (err < HpFloat("1e-40")) {
      out = std::move(cand);
      return true;
    }
  }
  return false;
}

struct Piece {
  std::vector<std::vector<Scalar>> basis;  // ambient coordinates
  std::vector<Scalar> unit;
};

}  // namespace

// ---------------------------------------------------------------------------
// split_idempotents

AlgebraSplit split_idempotents(const FiniteAlgebra& a, std::uint64_t seed) {
  const FieldPtr& f = a.field();
  if (!a.is_associative()) throw std::domain_error("algebra: not associative");
  if (!a.is_semisimple()) throw std::domain_error("algebra: trace form degenerate (not semisimple)");
  const auto& one = a.unit();
  ApproxContext ctx(f);

  auto min_poly = [&](const std::vector<Scalar>& z,
                      const std::vector<Scalar>& u) -> KPoly {
    // dependence of successive powers u, z, z^2 u, ...
    std::vector<std::vector<Scalar>> powers{u};
    for (;;) {
      const auto& last = powers.back();
      auto next = a.multiply(z, last);
      ScalarMatrix m(f, a.dim(), powers.size());
      for (std::size_t c = 0; c < powers.size(); ++c)
        for (std::size_t r = 0; r < a.dim(); ++r) m.at(r, c) = powers[c][r];
      std::vector<Scalar> coeff;
      if (m.solve(next, coeff)) {
        KPoly mu(powers.size() + 1, f->zero());
        for (std::size_t i = 0; i < coeff.size(); ++i) mu[i] = -coeff[i];
        mu[powers.size()] = f->one();
        return mu;
      }
      powers.push_back(std::move(next));
      if (powers.size() > a.dim() + 1) throw std::logic_error("algebra: min poly runaway");
    }
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);

  std::vector<Piece> done;
  std::vector<Piece> work;
  {
    auto zb = a.center_basis();
    Piece z0;
    z0.basis = std::move(zb);
    z0.unit = one;
    work.push_back(std::move(z0));
  }

  while (!work.empty()) {
    Piece piece = std::move(work.back());
    work.pop_back();
    std::size_t m = piece.basis.size();
    if (m == 1) {
      done.push_back(std::move(piece));
      continue;
    }
    bool split_found = false;
    KPoly last_mu;
    int irreducible_votes = 0;
    for (int attempt = 0; attempt < 24 && !split_found; ++attempt) {
      std::vector<Scalar> z(a.dim(), f->zero());
      for (std::size_t t = 0; t < m; ++t) {
        Scalar c = f->from_int(coeff(rng));
        for (std::size_t r = 0; r < a.dim(); ++r)
          if (!piece.basis[t][r].is_zero()) z[r] += c * piece.basis[t][r];
      }
      KPoly mu = min_poly(z, piece.unit);
      last_mu = mu;
      if (poly_deg(mu) < 2) continue;  // non-separating element

      // factor mu into exact linear/quadratic field factors
      std::vector<HpComplex> hp_coeffs;
      for (const auto& c : mu) hp_coeffs.emplace_back(ctx.eval(c), HpFloat(0));
      auto roots = polynomial_roots(hp_coeffs);
      std::vector<KPoly> factors;
      KPoly rest = mu;
      std::vector<HpComplex> leftover;
      for (const auto& r : roots) {
        if (abs(r.imag()) > HpFloat("1e-40")) {
          leftover.push_back(r);
          continue;
        }
        Scalar lambda;
        if (reconstruct_in_field(f, ctx, r.real(), lambda)) {
          KPoly lin{-lambda, f->one()};
          if (poly_divides(f, lin, rest)) {
            KPoly rem;
            rest = poly_divmod(f, rest, lin, rem);
            factors.push_back(lin);
            continue;
          }
        }
        leftover.push_back(r);
      }
      // pair leftovers into quadratics with field coefficients
      std::vector<bool> used(leftover.size(), false);
      for (std::size_t i = 0; i < leftover.size(); ++i) {
        if (used[i]) continue;
        for (std::size_t j = i + 1; j < leftover.size(); ++j) {
          if (used[j]) continue;
          HpComplex sum = leftover[i] + leftover[j];
          HpComplex prod = leftover[i] * leftover[j];
          if (abs(sum.imag()) > HpFloat("1e-38") || abs(prod.imag()) > HpFloat("1e-38")) continue;
          Scalar s, p;
          if (!reconstruct_in_field(f, ctx, sum.real(), s)) continue;
          if (!reconstruct_in_field(f, ctx, prod.real(), p)) continue;
          KPoly quad{p, -s, f->one()};
          if (!poly_divides(f, quad, rest)) continue;
          KPoly rem;
          rest = poly_divmod(f, rest, quad, rem);
          factors.push_back(quad);
          used[i] = used[j] = true;
          break;
        }
      }
      if (!rest.empty() && poly_deg(rest) > 0) factors.push_back(rest);

      if (factors.size() < 2) {
        if (std::size_t(poly_deg(mu)) == m && factors.size() == 1 &&
            poly_deg(factors[0]) == poly_deg(mu))
          ++irreducible_votes;
        if (irreducible_votes >= 3) {
          done.push_back(std::move(piece));
          split_found = true;  // resolved as a non-split block
        }
        continue;
      }

      // split the piece along the factors
      ScalarMatrix lz(f, m, m);
      {
        // matrix of multiplication by z in the piece basis
        ScalarMatrix cols(f, a.dim(), m);
        for (std::size_t c = 0; c < m; ++c)
          for (std::size_t r = 0; r < a.dim(); ++r) cols.at(r, c) = piece.basis[c][r];
        for (std::size_t c = 0; c < m; ++c) {
          auto zc = a.multiply(z, piece.basis[c]);
          std::vector<Scalar> x;
          if (!cols.solve(zc, x)) throw std::logic_error("algebra: piece not closed");
          for (std::size_t r = 0; r < m; ++r) lz.at(r, c) = x[r];
        }
      }
      std::vector<Piece> subpieces;
      for (const auto& q : factors) {
        // kernel of q(L_z) on the piece
        ScalarMatrix qm(f, m, m);
        ScalarMatrix power = ScalarMatrix::identity(f, m);
        for (std::size_t i = 0; i < q.size(); ++i) {
          if (!q[i].is_zero()) qm = qm + power.scaled(q[i]);
          if (i + 1 < q.size()) power = power * lz;
        }
        auto ker = qm.kernel_basis();
        Piece sub;
        for (const auto& kv : ker) {
          std::vector<Scalar> amb(a.dim(), f->zero());
          for (std::size_t t = 0; t < m; ++t)
            if (!kv[t].is_zero())
              for (std::size_t r = 0; r < a.dim(); ++r)
                if (!piece.basis[t][r].is_zero()) amb[r] += kv[t] * piece.basis[t][r];
          sub.basis.push_back(std::move(amb));
        }
        // unit of the sub-piece via Bezout: u_sub = (t * (mu/q))(z) u
        KPoly rem;
        KPoly cof = poly_divmod(f, mu, q, rem);
        KPoly s, t;
        KPoly g = poly_ext_gcd(f, q, cof, s, t);
        if (poly_deg(g) != 0) throw FieldExtensionError(poly_str(mu));
        Scalar ginv = g[0].inverse();
        KPoly proj = poly_mul(f, t, cof);
        for (auto& c : proj) c *= ginv;
        std::vector<Scalar> u(a.dim(), f->zero());
        std::vector<Scalar> zp = piece.unit;
        for (std::size_t i = 0; i < proj.size(); ++i) {
          if (!proj[i].is_zero())
            for (std::size_t r = 0; r < a.dim(); ++r)
              if (!zp[r].is_zero()) u[r] += proj[i] * zp[r];
          if (i + 1 < proj.size()) zp = a.multiply(z, zp);
        }
        sub.unit = std::move(u);
        if (a.multiply(sub.unit, sub.unit) != sub.unit)
          throw std::logic_error("algebra: projector construction failed");
        if (sub.basis.empty()) throw std::logic_error("algebra: empty factor kernel");
        subpieces.push_back(std::move(sub));
      }
      for (auto& sp : subpieces) work.push_back(std::move(sp));
      split_found = true;
    }
    if (!split_found) throw FieldExtensionError(poly_str(last_mu));
  }

  AlgebraSplit out;
  for (auto& piece : done) {
    AlgebraBlock blk;
    blk.idempotent = piece.unit;
    blk.center_degree = piece.basis.size();
    blk.dim = a.left_mult(piece.unit).rank();
    out.blocks.push_back(std::move(blk));
  }
  // exact invariants: orthogonal idempotents summing to one
  std::vector<Scalar> sum(a.dim(), f->zero());
  for (std::size_t i = 0; i < out.blocks.size(); ++i) {
    const auto& ei = out.blocks[i].idempotent;
    if (a.multiply(ei, ei) != ei) throw std::logic_error("algebra: idempotent check failed");
    for (std::size_t j = 0; j < i; ++j) {
      auto prod = a.multiply(ei, out.blocks[j].idempotent);
      for (const auto& c : prod)
        if (!c.is_zero()) throw std::logic_error("algebra: idempotents not orthogonal");
    }
    for (std::size_t r = 0; r < a.dim(); ++r) sum[r] += ei[r];
  }
  if (sum != a.unit()) throw std::logic_error("algebra: idempotents do not sum to one");
  return out;
}

}  // namespace stringnet
