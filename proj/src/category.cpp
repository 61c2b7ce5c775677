#include "stringnet/category.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stringnet {

using Json = nlohmann::ordered_json;

int FBlock::row_of(const FTriple& t) const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] == t) return int(i);
  return -1;
}

int FBlock::col_of(const FTriple& t) const {
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (cols[i] == t) return int(i);
  return -1;
}

Label FusionCat::label(const std::string& nm) const {
  for (std::size_t i = 0; i < simple_names.size(); ++i)
    if (simple_names[i] == nm) return Label(i);
  throw DataError("unknown simple object label: " + nm);
}

Scalar FusionCat::total_dim_squared() const {
  Scalar s = field->zero();
  for (const auto& di : qdim) s += di * di;
  return s;
}

void FusionCat::finalize() {
  channel_cache_.assign(rank(), std::vector<std::vector<Label>>(rank()));
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      for (std::size_t k = 0; k < rank(); ++k)
        if (fusion[i][j][k] > 0) channel_cache_[i][j].push_back(Label(k));
}

const std::vector<Label>& FusionCat::channels(Label i, Label j) const {
  return channel_cache_[i][j];
}

Scalar FusionCat::f_entry(Label a, Label b, Label c, Label d, const FTriple& row,
                          const FTriple& col) const {
  auto it = f_entries.find(
      {a, b, c, d, row.x, col.x, row.m1, row.m2, col.m1, col.m2});
  return it == f_entries.end() ? field->zero() : it->second;
}

const FBlock& FusionCat::f_block(Label a, Label b, Label c, Label d) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::array<int, 4>{a, b, c, d};
  auto it = f_cache_.find(key);
  if (it != f_cache_.end()) return it->second;

  FBlock blk;
  for (std::size_t e = 0; e < rank(); ++e)
    for (int mu = 0; mu < n(a, b, Label(e)); ++mu)
      for (int nu = 0; nu < n(Label(e), c, d); ++nu)
        blk.rows.push_back({Label(e), mu, nu});
  for (std::size_t f = 0; f < rank(); ++f)
    for (int ga = 0; ga < n(b, c, Label(f)); ++ga)
      for (int de = 0; de < n(a, Label(f), d); ++de)
        blk.cols.push_back({Label(f), ga, de});
  if (blk.rows.size() != blk.cols.size())
    throw DataError("F-block not square (fusion not associative?)");
  blk.mat = ScalarMatrix(field, blk.rows.size(), blk.cols.size());
  if (a == unit || b == unit || c == unit) {
    // unit constraints are exactly trivial: identity under the canonical
    // matching of row and column enumerations
    for (std::size_t i = 0; i < blk.rows.size(); ++i) blk.mat.at(i, i) = field->one();
  } else {
    for (std::size_t i = 0; i < blk.rows.size(); ++i)
      for (std::size_t j = 0; j < blk.cols.size(); ++j)
        blk.mat.at(i, j) = f_entry(a, b, c, d, blk.rows[i], blk.cols[j]);
  }
  if (!blk.rows.empty()) blk.inv = blk.mat.inverse();
  return f_cache_.emplace(key, std::move(blk)).first->second;
}

const Scalar& FusionCat::cap_scalar(Label x) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cap_cache_.find(x);
    if (it != cap_cache_.end()) return it->second;
  }
  const FBlock& blk = f_block(x, dual[x], x, x);
  int r = blk.row_of({unit, 0, 0});
  int c = blk.col_of({unit, 0, 0});
  if (r < 0 || c < 0) throw DataError("missing unit channel in F[x,x*,x;x]");
  Scalar inv_entry = blk.inv.at(c, r);
  if (inv_entry.is_zero()) throw DataError("degenerate duality data");
  Scalar cap = inv_entry.inverse();
  std::lock_guard<std::mutex> lock(mu_);
  return cap_cache_.emplace(x, std::move(cap)).first->second;
}

// ---------------------------------------------------------------------------
// validation

namespace {

void add(ValidationReport& rep, const std::string& name, bool pass,
         const std::string& witness = "") {
  rep.checks.push_back({name, pass, pass ? "" : witness});
}

}  // namespace

ValidationReport validate(const FusionCat& cat) {
  ValidationReport rep;
  const std::size_t r = cat.rank();
  const FieldPtr& F = cat.field;

  {
    bool ok = r > 0 && cat.unit >= 0 && std::size_t(cat.unit) < r;
    std::vector<std::string> names = cat.simple_names;
    std::sort(names.begin(), names.end());
    ok = ok && std::adjacent_find(names.begin(), names.end()) == names.end();
    add(rep, "labels", ok, "duplicate or missing labels");
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      if (cat.dual[cat.dual[i]] != Label(i)) {
        ok = false;
        w = "dual not involutive at " + cat.name_of(i);
      }
    if (ok && cat.dual[cat.unit] != cat.unit) {
      ok = false;
      w = "dual(unit) != unit";
    }
    add(rep, "dual-involution", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t k = 0; k < r && ok; ++k) {
        int want = (i == k) ? 1 : 0;
        if (cat.n(cat.unit, i, k) != want || cat.n(i, cat.unit, k) != want) {
          ok = false;
          w = "unit fusion at (" + cat.name_of(i) + "," + cat.name_of(k) + ")";
        }
      }
    add(rep, "fusion-unit", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = 0; j < r && ok; ++j)
        for (std::size_t k = 0; k < r && ok; ++k)
          if (cat.n(i, j, k) != cat.n(cat.dual[j], cat.dual[i], cat.dual[k])) {
            ok = false;
            w = "N symmetry at (" + cat.name_of(i) + "," + cat.name_of(j) + "," +
                cat.name_of(k) + ")";
          }
    add(rep, "fusion-dual-symmetry", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = 0; j < r && ok; ++j) {
        int want = (cat.dual[i] == Label(j)) ? 1 : 0;
        if (cat.n(i, j, cat.unit) != want) {
          ok = false;
          w = "Hom(1, " + cat.name_of(i) + " " + cat.name_of(j) + ")";
        }
      }
    add(rep, "rigidity", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = 0; j < r && ok; ++j)
        for (std::size_t l = 0; l < r && ok; ++l)
          for (std::size_t m = 0; m < r && ok; ++m) {
            int lhs = 0, rhs = 0;
            for (std::size_t k = 0; k < r; ++k) {
              lhs += cat.n(i, j, k) * cat.n(k, l, m);
              rhs += cat.n(j, l, k) * cat.n(i, k, m);
            }
            if (lhs != rhs) {
              ok = false;
              w = "associativity at (" + cat.name_of(i) + "," + cat.name_of(j) + "," +
                  cat.name_of(l) + "," + cat.name_of(m) + ")";
            }
          }
    add(rep, "fusion-associativity", ok, w);
  }

  add(rep, "qdim-unit",
      cat.qdim[cat.unit] == F->one() && cat.sqrt_qdim[cat.unit] == F->one(),
      "d(1) or sqrt d(1) != 1");

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      if (!(cat.sqrt_qdim[i] * cat.sqrt_qdim[i] == cat.qdim[i])) {
        ok = false;
        w = "sqrt_qdim^2 != qdim at " + cat.name_of(i);
      }
    add(rep, "sqrt-qdim-square", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i) {
      if (!(cat.qdim[i] == cat.qdim[cat.dual[i]]) ||
          !(cat.sqrt_qdim[i] == cat.sqrt_qdim[cat.dual[i]])) {
        ok = false;
        w = "dimension of dual differs at " + cat.name_of(i);
      }
    }
    add(rep, "qdim-dual", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      if (cat.qdim[i].is_zero()) {
        ok = false;
        w = "d = 0 at " + cat.name_of(i);
      }
    add(rep, "qdim-nonzero", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i)
      for (std::size_t j = 0; j < r && ok; ++j) {
        Scalar sum = F->zero();
        for (std::size_t k = 0; k < r; ++k)
          if (cat.n(i, j, k) > 0) sum += F->from_int(cat.n(i, j, k)) * cat.qdim[k];
        if (!(cat.qdim[i] * cat.qdim[j] == sum)) {
          ok = false;
          w = "d_i d_j != sum N d_k at (" + cat.name_of(i) + "," + cat.name_of(j) + ")";
        }
      }
    add(rep, "qdim-fusion-consistency", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < r && ok; ++i) {
      if (cat.fs_indicator[i] != 1 && cat.fs_indicator[i] != -1) {
        ok = false;
        w = "fs indicator not +-1 at " + cat.name_of(i);
      }
      if (cat.dual[i] != Label(i) && cat.fs_indicator[i] != 1) {
        ok = false;
        w = "fs indicator declared on non-self-dual " + cat.name_of(i);
      }
    }
    add(rep, "fs-indicator-domain", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (const auto& [key, val] : cat.f_entries) {
      Label a = key[0], b = key[1], c = key[2], d = key[3], e = key[4], f = key[5];
      bool adm = a >= 0 && std::size_t(a) < r && b >= 0 && std::size_t(b) < r && c >= 0 &&
                 std::size_t(c) < r && d >= 0 && std::size_t(d) < r && e >= 0 &&
                 std::size_t(e) < r && f >= 0 && std::size_t(f) < r;
      if (adm)
        adm = key[6] < cat.n(a, b, e) && key[7] < cat.n(e, c, d) && key[8] < cat.n(b, c, f) &&
              key[9] < cat.n(a, f, d) && key[6] >= 0 && key[7] >= 0 && key[8] >= 0 &&
              key[9] >= 0;
      if (adm && (a == cat.unit || b == cat.unit || c == cat.unit)) adm = false;
      if (!adm) {
        ok = false;
        w = "inadmissible F entry";
        break;
      }
      (void)val;
    }
    add(rep, "f-domain", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t a = 0; a < r && ok; ++a)
      for (std::size_t b = 0; b < r && ok; ++b)
        for (std::size_t c = 0; c < r && ok; ++c)
          for (std::size_t d = 0; d < r && ok; ++d) {
            try {
              cat.f_block(a, b, c, d);
            } catch (const std::exception& e) {
              ok = false;
              w = "F[" + cat.name_of(a) + "," + cat.name_of(b) + "," + cat.name_of(c) + ";" +
                  cat.name_of(d) + "]: " + e.what();
            }
          }
    add(rep, "f-blocks-invertible", ok, w);
    if (!ok) return rep;  // pentagon and loops need invertible blocks
  }

  {
    // pentagon: for fixed a,b,c,d,w compare both recoupling paths as
    // matrices from (e,alpha,beta,g,sigma) to (k,rho,h,lambda,zeta)
    bool ok = true;
    std::string w;
    for (std::size_t a = 0; a < r && ok; ++a)
      for (std::size_t b = 0; b < r && ok; ++b)
        for (std::size_t c = 0; c < r && ok; ++c)
          for (std::size_t dd = 0; dd < r && ok; ++dd)
            for (std::size_t ww = 0; ww < r && ok; ++ww) {
              const FBlock& Fabc_g_any = cat.f_block(a, b, c, 0);  // warm cache
              (void)Fabc_g_any;
              for (std::size_t e = 0; e < r && ok; ++e)
                for (int al = 0; al < cat.n(a, b, e); ++al)
                  for (std::size_t g = 0; g < r; ++g)
                    for (int be = 0; be < cat.n(e, c, g); ++be)
                      for (int si = 0; si < cat.n(g, dd, ww); ++si)
                        for (std::size_t k = 0; k < r; ++k)
                          for (int rho = 0; rho < cat.n(c, dd, k); ++rho)
                            for (std::size_t h = 0; h < r; ++h)
                              for (int la = 0; la < cat.n(b, k, h); ++la)
                                for (int ze = 0; ze < cat.n(a, h, ww); ++ze) {
                                  Scalar lhs = F->zero();
                                  const FBlock& F1 = cat.f_block(a, b, c, g);
                                  const FBlock& F3 = cat.f_block(b, c, dd, h);
                                  for (std::size_t f = 0; f < r; ++f)
                                    for (int ga = 0; ga < cat.n(b, c, f); ++ga)
                                      for (int de = 0; de < cat.n(a, f, g); ++de)
                                        for (int ep = 0; ep < cat.n(f, dd, h); ++ep) {
                                          int r1 = F1.row_of({Label(e), al, be});
                                          int c1 = F1.col_of({Label(f), ga, de});
                                          if (r1 < 0 || c1 < 0) continue;
                                          const FBlock& F2 = cat.f_block(a, f, dd, ww);
                                          int r2 = F2.row_of({Label(g), de, si});
                                          int c2 = F2.col_of({Label(h), ep, ze});
                                          int r3 = F3.row_of({Label(f), ga, ep});
                                          int c3 = F3.col_of({Label(k), rho, la});
                                          if (r2 < 0 || c2 < 0 || r3 < 0 || c3 < 0) continue;
                                          lhs += F1.mat.at(r1, c1) * F2.mat.at(r2, c2) *
                                                 F3.mat.at(r3, c3);
                                        }
                                  Scalar rhs = F->zero();
                                  const FBlock& F4 = cat.f_block(e, c, dd, ww);
                                  const FBlock& F5 = cat.f_block(a, b, k, ww);
                                  for (int ta = 0; ta < cat.n(e, k, ww); ++ta) {
                                    int r4 = F4.row_of({Label(g), be, si});
                                    int c4 = F4.col_of({Label(k), rho, ta});
                                    int r5 = F5.row_of({Label(e), al, ta});
                                    int c5 = F5.col_of({Label(h), la, ze});
                                    if (r4 < 0 || c4 < 0 || r5 < 0 || c5 < 0) continue;
                                    rhs += F4.mat.at(r4, c4) * F5.mat.at(r5, c5);
                                  }
                                  if (!(lhs == rhs)) {
                                    ok = false;
                                    w = "pentagon fails at (" + cat.name_of(a) + "," +
                                        cat.name_of(b) + "," + cat.name_of(c) + "," +
                                        cat.name_of(dd) + ";" + cat.name_of(ww) + ")";
                                  }
                                }
            }
    add(rep, "pentagon", ok, w);
  }

  {
    bool ok = true;
    std::string w;
    for (std::size_t x = 0; x < r && ok; ++x) {
      try {
        Scalar loop = cat.cap_scalar(x);
        Scalar expect = F->from_int(cat.fs_indicator[x]) * cat.qdim[x];
        if (!(loop == expect)) {
          ok = false;
          w = "derived loop value != kappa*d at " + cat.name_of(x);
        }
      } catch (const std::exception& e) {
        ok = false;
        w = e.what();
      }
    }
    add(rep, "loop-values", ok, w);
  }

  return rep;
}

// ---------------------------------------------------------------------------
// builtins

namespace {

std::shared_ptr<FusionCat> new_cat(const std::string& name,
                                   const std::vector<std::string>& simples,
                                   const std::vector<std::string>& gens) {
  auto cat = std::make_shared<FusionCat>();
  cat->name = name;
  cat->simple_names = simples;
  cat->field = Field::make(gens);
  std::size_t r = simples.size();
  cat->unit = 0;
  cat->dual.assign(r, 0);
  cat->fusion.assign(r, std::vector<std::vector<int>>(r, std::vector<int>(r, 0)));
  cat->qdim.assign(r, cat->field->one());
  cat->sqrt_qdim.assign(r, cat->field->one());
  cat->fs_indicator.assign(r, 1);
  return cat;
}

void set_f(FusionCat& cat, Label a, Label b, Label c, Label d, Label e, Label f,
           const Scalar& v, int mu = 0, int nu = 0, int ga = 0, int de = 0) {
  cat.f_entries[{a, b, c, d, e, f, mu, nu, ga, de}] = v;
}

CatPtr make_group_category(const std::string& name, int order,
                           const std::vector<std::string>& gens) {
  std::vector<std::string> simples;
  for (int i = 0; i < order; ++i) simples.push_back(i == 0 ? "1" : "g" + std::to_string(i));
  auto cat = new_cat(name, simples, gens);
  for (int i = 0; i < order; ++i) {
    cat->dual[i] = (order - i) % order;
    for (int j = 0; j < order; ++j) cat->fusion[i][j][(i + j) % order] = 1;
  }
  // all F equal 1 (trivial cocycle)
  for (int a = 1; a < order; ++a)
    for (int b = 1; b < order; ++b)
      for (int c = 1; c < order; ++c)
        set_f(*cat, a, b, c, (a + b + c) % order, (a + b) % order, (b + c) % order,
              cat->field->one());
  cat->finalize();
  return cat;
}

CatPtr make_fibonacci() {
  auto cat = new_cat("fibonacci", {"1", "t"}, {"5", "(1+sqrt(5))/2", "2 + (1+sqrt(5))/2"});
  const FieldPtr& F = cat->field;
  Label T = 1;
  cat->dual = {0, 1};
  cat->fusion[0][0][0] = 1;
  cat->fusion[0][1][1] = cat->fusion[1][0][1] = 1;
  cat->fusion[1][1][0] = 1;
  cat->fusion[1][1][1] = 1;
  Scalar phi = parse_scalar(F, "(1+sqrt(5))/2");
  cat->qdim[T] = phi;
  cat->sqrt_qdim[T] = parse_scalar(F, "sqrt((1+sqrt(5))/2)");
  Scalar phi_inv = phi.inverse();
  Scalar phi_inv_sqrt = cat->sqrt_qdim[T].inverse();
  set_f(*cat, T, T, T, T, 0, 0, phi_inv);
  set_f(*cat, T, T, T, T, 0, T, phi_inv_sqrt);
  set_f(*cat, T, T, T, T, T, 0, phi_inv_sqrt);
  set_f(*cat, T, T, T, T, T, T, -phi_inv);
  set_f(*cat, T, T, T, 0, T, T, F->one());
  cat->finalize();
  return cat;
}

CatPtr make_ising() {
  auto cat = new_cat("ising", {"1", "s", "p"}, {"2", "sqrt(2)"});
  const FieldPtr& F = cat->field;
  Label S = 1, P = 2;
  cat->dual = {0, 1, 2};
  cat->fusion[0][0][0] = 1;
  cat->fusion[0][S][S] = cat->fusion[S][0][S] = 1;
  cat->fusion[0][P][P] = cat->fusion[P][0][P] = 1;
  cat->fusion[S][S][0] = cat->fusion[S][S][P] = 1;
  cat->fusion[S][P][S] = cat->fusion[P][S][S] = 1;
  cat->fusion[P][P][0] = 1;
  cat->qdim[S] = parse_scalar(F, "sqrt(2)");
  cat->sqrt_qdim[S] = parse_scalar(F, "sqrt(sqrt(2))");
  Scalar r2inv = cat->qdim[S].inverse();
  Scalar one = F->one(), minus = -F->one();
  // F[s,s,s;s] over channels {1,p}
  set_f(*cat, S, S, S, S, 0, 0, r2inv);
  set_f(*cat, S, S, S, S, 0, P, r2inv);
  set_f(*cat, S, S, S, S, P, 0, r2inv);
  set_f(*cat, S, S, S, S, P, P, -r2inv);
  // one-dimensional blocks
  set_f(*cat, S, S, P, 0, P, S, one);
  set_f(*cat, S, S, P, P, 0, S, one);
  set_f(*cat, S, P, S, 0, S, S, one);
  set_f(*cat, S, P, S, P, S, S, minus);
  set_f(*cat, P, S, S, 0, S, P, one);
  set_f(*cat, P, S, S, P, S, 0, one);
  set_f(*cat, S, P, P, S, S, 0, one);
  set_f(*cat, P, S, P, S, S, S, minus);
  set_f(*cat, P, P, S, S, 0, S, one);
  set_f(*cat, P, P, P, P, 0, 0, one);
  cat->finalize();
  return cat;
}

}  // namespace

CatPtr builtin(const std::string& name) {
  if (name == "vec_z2") return make_group_category("vec_z2", 2, {"2"});
  if (name == "vec_z3") return make_group_category("vec_z3", 3, {"3"});
  if (name == "fibonacci") return make_fibonacci();
  if (name == "ising") return make_ising();
  throw DataError("unknown builtin category: " + name);
}

// ---------------------------------------------------------------------------
// JSON serialization (format sfc-1)

CatPtr load_category_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("category file: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "sfc-1")
      throw DataError("category file: unsupported format tag");
    auto cat = std::make_shared<FusionCat>();
    cat->name = j.value("name", std::string("unnamed"));
    std::vector<std::string> gens;
    for (const auto& g : j.at("field_generators")) gens.push_back(g.get<std::string>());
    cat->field = Field::make(gens);
    for (const auto& s : j.at("simples")) cat->simple_names.push_back(s.get<std::string>());
    std::size_t r = cat->simple_names.size();
    cat->unit = cat->label(j.at("unit").get<std::string>());
    cat->dual.assign(r, 0);
    for (const auto& p : j.at("dual")) cat->dual[cat->label(p.at(0))] = cat->label(p.at(1));
    cat->fusion.assign(r, std::vector<std::vector<int>>(r, std::vector<int>(r, 0)));
    for (const auto& t : j.at("fusion"))
      cat->fusion[cat->label(t.at(0))][cat->label(t.at(1))][cat->label(t.at(2))] =
          t.at(3).get<int>();
    cat->qdim.assign(r, cat->field->one());
    cat->sqrt_qdim.assign(r, cat->field->one());
    for (const auto& p : j.at("qdim"))
      cat->qdim[cat->label(p.at(0))] = parse_scalar(cat->field, p.at(1).get<std::string>());
    for (const auto& p : j.at("sqrt_qdim"))
      cat->sqrt_qdim[cat->label(p.at(0))] = parse_scalar(cat->field, p.at(1).get<std::string>());
    cat->fs_indicator.assign(r, 1);
    if (j.contains("fs_indicator"))
      for (const auto& p : j.at("fs_indicator"))
        cat->fs_indicator[cat->label(p.at(0))] = p.at(1).get<int>();
    for (const auto& e : j.at("F")) {
      std::array<int, 10> key{};
      for (int t = 0; t < 6; ++t) key[t] = cat->label(e.at(t).get<std::string>());
      for (int t = 6; t < 10; ++t) key[t] = e.at(t).get<int>();
      cat->f_entries[key] = parse_scalar(cat->field, e.at(10).get<std::string>());
    }
    cat->finalize();
    return cat;
  } catch (const Json::exception& e) {
    throw DataError(std::string("category file: ") + e.what());
  } catch (const ParseError& e) {
    throw DataError(std::string("category file: scalar: ") + e.what());
  }
}

CatPtr load_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open category file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_category_json(ss.str());
}

std::string save_category_json(const FusionCat& cat) {
  Json j;
  j["format"] = "sfc-1";
  j["name"] = cat.name;
  j["field_generators"] = cat.field->generator_strs();
  j["simples"] = cat.simple_names;
  j["unit"] = cat.name_of(cat.unit);
  Json dual = Json::array();
  for (std::size_t i = 0; i < cat.rank(); ++i)
    dual.push_back({cat.name_of(i), cat.name_of(cat.dual[i])});
  j["dual"] = dual;
  Json fus = Json::array();
  for (std::size_t i = 0; i < cat.rank(); ++i)
    for (std::size_t jj = 0; jj < cat.rank(); ++jj)
      for (std::size_t k = 0; k < cat.rank(); ++k)
        if (cat.n(i, jj, k) > 0)
          fus.push_back({cat.name_of(i), cat.name_of(jj), cat.name_of(k), cat.n(i, jj, k)});
  j["fusion"] = fus;
  Json qd = Json::array(), sq = Json::array(), fs = Json::array();
  for (std::size_t i = 0; i < cat.rank(); ++i) {
    qd.push_back({cat.name_of(i), cat.qdim[i].str()});
    sq.push_back({cat.name_of(i), cat.sqrt_qdim[i].str()});
    if (cat.fs_indicator[i] != 1) fs.push_back({cat.name_of(i), cat.fs_indicator[i]});
  }
  j["qdim"] = qd;
  j["sqrt_qdim"] = sq;
  j["fs_indicator"] = fs;
  Json fe = Json::array();
  for (const auto& [key, val] : cat.f_entries) {
    Json row = Json::array();
    for (int t = 0; t < 6; ++t) row.push_back(cat.name_of(key[t]));
    for (int t = 6; t < 10; ++t) row.push_back(key[t]);
    row.push_back(val.str());
    fe.push_back(row);
  }
  j["F"] = fe;
  return j.dump(2) + "\n";
}

}  // namespace stringnet
