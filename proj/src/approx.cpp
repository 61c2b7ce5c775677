#include "stringnet/approx.hpp"

namespace stringnet {

ApproxContext::ApproxContext(FieldPtr f) : f_(std::move(f)) {
  // Rebuild square-root monomial values in high precision from the canonical
  // generator expressions.
  int k = f_->num_generators();
  mono_.assign(std::size_t(1) << k, HpFloat(1));
  FieldPtr sub = Field::rationals();
  for (int j = 0; j < k; ++j) {
    // generator value as an element of the subfield built so far
    Scalar g = parse_scalar(sub, f_->generator_str(j));
    HpFloat gv(0);
    for (std::size_t m = 0; m < g.coeffs().size(); ++m) {
      if (sgn(g.coeffs()[m]) == 0) continue;
      HpFloat c(g.coeffs()[m].get_str());
      gv += c * mono_[m];
    }
    HpFloat root = sqrt(gv);
    std::size_t bit = std::size_t(1) << j;
    for (std::size_t m = 0; m < bit; ++m) mono_[m | bit] = mono_[m] * root;
    std::vector<std::string> gens;
    for (int t = 0; t <= j; ++t) gens.push_back(f_->generator_str(t));
    sub = Field::make(gens);
  }
}

HpFloat ApproxContext::eval(const Scalar& x) const {
  HpFloat v(0);
  for (std::size_t m = 0; m < x.coeffs().size(); ++m) {
    if (sgn(x.coeffs()[m]) == 0) continue;
    HpFloat c(x.coeffs()[m].get_str());
    v += c * mono_[m];
  }
  return v;
}

std::vector<HpComplex> polynomial_roots(const std::vector<HpComplex>& coeffs) {
  int deg = int(coeffs.size()) - 1;
  while (deg > 0 && abs(coeffs[deg]) == 0) --deg;
  if (deg <= 0) return {};
  std::vector<HpComplex> a(coeffs.begin(), coeffs.begin() + deg + 1);
  for (auto& c : a) c /= a[deg];
  auto eval = [&](const HpComplex& x) {
    HpComplex v(0);
    for (int i = deg; i >= 0; --i) v = v * x + a[i];
    return v;
  };
  std::vector<HpComplex> r(deg);
  HpComplex seed(HpFloat("0.4"), HpFloat("0.9"));
  HpComplex p(1);
  for (int i = 0; i < deg; ++i) {
    p *= seed;
    r[i] = p;
  }
  for (int iter = 0; iter < 500; ++iter) {
    HpFloat worst(0);
    for (int i = 0; i < deg; ++i) {
      HpComplex denom(1);
      for (int j = 0; j < deg; ++j)
        if (j != i) denom *= (r[i] - r[j]);
      HpComplex delta = eval(r[i]) / denom;
      r[i] -= delta;
      HpFloat d = abs(delta);
      if (d > worst) worst = d;
    }
    if (worst < HpFloat("1e-80")) break;
  }
  return r;
}

std::size_t approx_rank(std::vector<std::vector<HpFloat>> m, const HpFloat& threshold) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size(), rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t best = rank;
    for (std::size_t i = rank; i < rows; ++i)
      if (abs(m[i][c]) > abs(m[best][c])) best = i;
    if (abs(m[best][c]) <= threshold) continue;
    std::swap(m[best], m[rank]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank) continue;
      HpFloat f = m[i][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace stringnet
