#include "stringnet/hom.hpp"

#include <algorithm>

namespace stringnet {

HomCtx::HomCtx(CatPtr cat) : cat_(std::move(cat)) {}

const TreeSpace& HomCtx::space(const std::vector<Label>& labels) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = spaces_.find(labels);
  if (it != spaces_.end()) return it->second;
  TreeSpace sp;
  sp.labels = labels;
  // depth-first enumeration: channels ascending, multiplicities ascending
  Comb cur;
  cur.mid.resize(labels.size());
  cur.mult.resize(labels.size());
  auto rec = [&](auto&& self, std::size_t k, Label prev) -> void {
    if (k == labels.size()) {
      if (prev == cat_->unit) {
        sp.index[cur] = int(sp.basis.size());
        sp.basis.push_back(cur);
      }
      return;
    }
    for (Label nxt : cat_->channels(prev, labels[k])) {
      cur.mid[k] = nxt;
      for (int m = 0; m < cat_->n(prev, labels[k], nxt); ++m) {
        cur.mult[k] = m;
        self(self, k + 1, nxt);
      }
    }
  };
  if (labels.empty()) {
    sp.index[cur] = 0;
    sp.basis.push_back(cur);
  } else {
    rec(rec, 0, cat_->unit);
  }
  return spaces_.emplace(labels, std::move(sp)).first->second;
}

HomVector HomCtx::zero(std::vector<Label> labels) const {
  const TreeSpace& sp = space(labels);
  return HomVector{std::move(labels), std::vector<Scalar>(sp.dim(), field()->zero())};
}

HomVector HomCtx::basis_vector(const std::vector<Label>& labels, std::size_t idx) const {
  HomVector v = zero(labels);
  v.coef.at(idx) = field()->one();
  return v;
}

HomVector HomCtx::coev(Label x) const {
  std::vector<Label> labels{x, cat_->dual_of(x)};
  const TreeSpace& sp = space(labels);
  if (sp.dim() != 1) throw DataError("coev: <x, x*> is not one-dimensional");
  return basis_vector(labels, 0);
}

bool HomCtx::is_zero(const HomVector& v) const {
  for (const auto& c : v.coef)
    if (!c.is_zero()) return false;
  return true;
}

Scalar HomCtx::scalar_value(const HomVector& v) const {
  if (!v.labels.empty()) throw std::logic_error("scalar_value: non-empty boundary");
  return v.coef.at(0);
}

HomVector HomCtx::scaled(const HomVector& v, const Scalar& s) const {
  HomVector r = v;
  for (auto& c : r.coef) c *= s;
  return r;
}

void HomCtx::accumulate(HomVector& into, const HomVector& v, const Scalar& s) const {
  if (into.labels != v.labels) throw std::logic_error("accumulate: boundary mismatch");
  for (std::size_t i = 0; i < v.coef.size(); ++i)
    if (!v.coef[i].is_zero()) into.coef[i] += v.coef[i] * s;
}

// ---------------------------------------------------------------------------
// elementary moves

HomVector HomCtx::cup(const HomVector& v, std::size_t pos, Label x) const {
  if (pos > v.labels.size()) throw std::logic_error("cup: bad position");
  Label xd = cat_->dual_of(x);
  std::vector<Label> out_labels;
  out_labels.reserve(v.labels.size() + 2);
  out_labels.insert(out_labels.end(), v.labels.begin(), v.labels.begin() + pos);
  out_labels.push_back(x);
  out_labels.push_back(xd);
  out_labels.insert(out_labels.end(), v.labels.begin() + pos, v.labels.end());
  HomVector out = zero(std::move(out_labels));
  const TreeSpace& src = space(v.labels);
  const TreeSpace& dst = space(out.labels);
  for (std::size_t t = 0; t < src.dim(); ++t) {
    if (v.coef[t].is_zero()) continue;
    const Comb& T = src.basis[t];
    Label ctx = (pos == 0) ? cat_->unit : T.mid[pos - 1];
    const FBlock& blk = cat_->f_block(ctx, x, xd, ctx);
    int col = blk.col_of({cat_->unit, 0, 0});
    if (col < 0) continue;
    for (std::size_t r = 0; r < blk.rows.size(); ++r) {
      const Scalar& c = blk.inv.at(col, r);
      if (c.is_zero()) continue;
      Comb nt;
      nt.mid.reserve(T.mid.size() + 2);
      nt.mult.reserve(T.mid.size() + 2);
      nt.mid.insert(nt.mid.end(), T.mid.begin(), T.mid.begin() + pos);
      nt.mult.insert(nt.mult.end(), T.mult.begin(), T.mult.begin() + pos);
      nt.mid.push_back(blk.rows[r].x);
      nt.mult.push_back(blk.rows[r].m1);
      nt.mid.push_back(ctx);
      nt.mult.push_back(blk.rows[r].m2);
      nt.mid.insert(nt.mid.end(), T.mid.begin() + pos, T.mid.end());
      nt.mult.insert(nt.mult.end(), T.mult.begin() + pos, T.mult.end());
      auto it = dst.index.find(nt);
      if (it == dst.index.end()) throw std::logic_error("cup: tree fell outside space");
      out.coef[it->second] += v.coef[t] * c;
    }
  }
  return out;
}

HomVector HomCtx::cap(const HomVector& v, std::size_t pos) const {
  if (pos + 1 >= v.labels.size()) throw std::logic_error("cap: bad position");
  Label x = v.labels[pos];
  if (v.labels[pos + 1] != cat_->dual_of(x))
    throw std::logic_error("cap: legs are not a dual pair");
  std::vector<Label> out_labels;
  out_labels.insert(out_labels.end(), v.labels.begin(), v.labels.begin() + pos);
  out_labels.insert(out_labels.end(), v.labels.begin() + pos + 2, v.labels.end());
  HomVector out = zero(std::move(out_labels));
  const TreeSpace& src = space(v.labels);
  const TreeSpace& dst = space(out.labels);
  const Scalar& capx = cat_->cap_scalar(x);
  for (std::size_t t = 0; t < src.dim(); ++t) {
    if (v.coef[t].is_zero()) continue;
    const Comb& T = src.basis[t];
    Label a = (pos == 0) ? cat_->unit : T.mid[pos - 1];
    if (T.mid[pos + 1] != a) continue;  // ev kills non-returning channels
    const FBlock& blk = cat_->f_block(a, x, cat_->dual_of(x), a);
    int r = blk.row_of({T.mid[pos], T.mult[pos], T.mult[pos + 1]});
    int c = blk.col_of({cat_->unit, 0, 0});
    if (r < 0 || c < 0) continue;
    const Scalar& f = blk.mat.at(r, c);
    if (f.is_zero()) continue;
    Comb nt;
    nt.mid.insert(nt.mid.end(), T.mid.begin(), T.mid.begin() + pos);
    nt.mult.insert(nt.mult.end(), T.mult.begin(), T.mult.begin() + pos);
    nt.mid.insert(nt.mid.end(), T.mid.begin() + pos + 2, T.mid.end());
    nt.mult.insert(nt.mult.end(), T.mult.begin() + pos + 2, T.mult.end());
    auto it = dst.index.find(nt);
    if (it == dst.index.end()) throw std::logic_error("cap: tree fell outside space");
    out.coef[it->second] += v.coef[t] * f * capx;
  }
  return out;
}

// Expansion of id_ctx (x) v(S) over comb segments returning to ctx.
void HomCtx::mount(Label ctx, const std::vector<Label>& wl, const Comb& s,
                   std::vector<std::pair<Comb, Scalar>>& out) const {
  std::size_t m = wl.size();
  if (m == 0) {
    out.emplace_back(Comb{}, field()->one());
    return;
  }
  Comb seg;
  seg.mid.assign(m, 0);
  seg.mult.assign(m, 0);
  // walk vertices from the root (k = m-1) down to k = 0
  auto rec = [&](auto&& self, long k, Label tgt, int open_mu, Scalar acc) -> void {
    if (k < 0) {
      if (tgt != ctx || open_mu != 0) throw std::logic_error("mount: dangling context");
      out.emplace_back(seg, acc);
      return;
    }
    Label below = (k == 0) ? cat_->unit : s.mid[k - 1];  // s_{k-1}
    Label chan = s.mid[k];                               // s_k
    int gam = s.mult[k];
    const FBlock& blk = cat_->f_block(ctx, below, wl[k], tgt);
    int col = blk.col_of({chan, gam, open_mu});
    if (col < 0) return;
    for (std::size_t r = 0; r < blk.rows.size(); ++r) {
      const Scalar& c = blk.inv.at(col, r);
      if (c.is_zero()) continue;
      seg.mid[k] = tgt;
      seg.mult[k] = blk.rows[r].m2;
      self(self, k - 1, blk.rows[r].x, blk.rows[r].m1, acc * c);
    }
  };
  rec(rec, long(m) - 1, ctx, 0, field()->one());
}

HomVector HomCtx::insert(const HomVector& v, std::size_t pos, const HomVector& w) const {
  if (pos > v.labels.size()) throw std::logic_error("insert: bad position");
  std::vector<Label> out_labels;
  out_labels.insert(out_labels.end(), v.labels.begin(), v.labels.begin() + pos);
  out_labels.insert(out_labels.end(), w.labels.begin(), w.labels.end());
  out_labels.insert(out_labels.end(), v.labels.begin() + pos, v.labels.end());
  HomVector out = zero(std::move(out_labels));
  const TreeSpace& src = space(v.labels);
  const TreeSpace& wsp = space(w.labels);
  const TreeSpace& dst = space(out.labels);
  // group source combs by context to share mount expansions
  std::map<Label, std::vector<std::size_t>> by_ctx;
  for (std::size_t t = 0; t < src.dim(); ++t) {
    if (v.coef[t].is_zero()) continue;
    Label ctx = (pos == 0) ? cat_->unit : src.basis[t].mid[pos - 1];
    by_ctx[ctx].push_back(t);
  }
  for (const auto& [ctx, terms] : by_ctx) {
    for (std::size_t sidx = 0; sidx < wsp.dim(); ++sidx) {
      if (w.coef[sidx].is_zero()) continue;
      std::vector<std::pair<Comb, Scalar>> segs;
      mount(ctx, w.labels, wsp.basis[sidx], segs);
      for (const auto& [seg, coeff] : segs) {
        for (std::size_t t : terms) {
          const Comb& T = src.basis[t];
          Comb nt;
          nt.mid.reserve(T.mid.size() + seg.mid.size());
          nt.mult.reserve(nt.mid.capacity());
          nt.mid.insert(nt.mid.end(), T.mid.begin(), T.mid.begin() + pos);
          nt.mult.insert(nt.mult.end(), T.mult.begin(), T.mult.begin() + pos);
          nt.mid.insert(nt.mid.end(), seg.mid.begin(), seg.mid.end());
          nt.mult.insert(nt.mult.end(), seg.mult.begin(), seg.mult.end());
          nt.mid.insert(nt.mid.end(), T.mid.begin() + pos, T.mid.end());
          nt.mult.insert(nt.mult.end(), T.mult.begin() + pos, T.mult.end());
          auto it = dst.index.find(nt);
          if (it == dst.index.end()) throw std::logic_error("insert: tree fell outside space");
          out.coef[it->second] += v.coef[t] * w.coef[sidx] * coeff;
        }
      }
    }
  }
  return out;
}

HomVector HomCtx::rotate(const HomVector& v) const {
  std::size_t n = v.labels.size();
  if (n <= 1) return v;
  Label x = v.labels[n - 1];
  HomVector c = coev(x);
  HomVector w = insert(c, 1, v);  // <x, V0..Vn-1, x*>
  return cap(w, n);
}

HomVector HomCtx::rotate_by(const HomVector& v, long k) const {
  std::size_t n = v.labels.size();
  if (n == 0) return v;
  long r = ((k % long(n)) + long(n)) % long(n);
  HomVector out = v;
  for (long i = 0; i < r; ++i) out = rotate(out);
  return out;
}

HomVector HomCtx::compose(const HomVector& phi, const HomVector& psi) const {
  if (phi.labels.empty() || psi.labels.empty()) {
    // scalar factors
    if (phi.labels.empty() && psi.labels.empty()) {
      HomVector out = zero({});
      out.coef[0] = phi.coef[0] * psi.coef[0];
      return out;
    }
    const HomVector& vec = phi.labels.empty() ? psi : phi;
    const Scalar& s = phi.labels.empty() ? phi.coef[0] : psi.coef[0];
    return scaled(vec, s);
  }
  Label x = phi.labels.back();
  if (psi.labels.front() != cat_->dual_of(x))
    throw std::logic_error("compose: boundary labels are not dual");
  HomVector w = insert(phi, phi.labels.size(), psi);
  return cap(w, phi.labels.size() - 1);
}

Scalar HomCtx::pairing(const HomVector& phi, const HomVector& psi) const {
  std::size_t n = phi.labels.size();
  if (psi.labels != reversed_duals(phi.labels))
    throw std::logic_error("pairing: boundary labels are not dual-reversed");
  HomVector w = insert(phi, n, psi);
  for (std::size_t k = 0; k < n; ++k) w = cap(w, n - 1 - k);
  return scalar_value(w);
}

std::vector<Label> HomCtx::reversed_duals(const std::vector<Label>& labels) const {
  std::vector<Label> out(labels.rbegin(), labels.rend());
  for (auto& l : out) l = cat_->dual_of(l);
  return out;
}

const ScalarMatrix& HomCtx::gram(const std::vector<Label>& labels) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = grams_.find(labels);
    if (it != grams_.end()) return it->second;
  }
  const TreeSpace& sp = space(labels);
  std::vector<Label> rd = reversed_duals(labels);
  const TreeSpace& dsp = space(rd);
  if (sp.dim() != dsp.dim()) throw DataError("gram: dual space dimension mismatch");
  ScalarMatrix g(field(), sp.dim(), sp.dim());
  for (std::size_t i = 0; i < sp.dim(); ++i)
    for (std::size_t j = 0; j < dsp.dim(); ++j)
      g.at(i, j) = pairing(basis_vector(labels, i), basis_vector(rd, j));
  std::lock_guard<std::mutex> lock(mu_);
  return grams_.emplace(labels, std::move(g)).first->second;
}

const std::vector<HomVector>& HomCtx::dual_basis(const std::vector<Label>& labels) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = duals_.find(labels);
    if (it != duals_.end()) return it->second;
  }
  const ScalarMatrix& g = gram(labels);
  ScalarMatrix ginv(field(), 0, 0);
  try {
    ginv = g.inverse();
  } catch (const std::domain_error&) {
    throw DataError("dual_basis: degenerate Gram matrix (invalid category data)");
  }
  std::vector<Label> rd = reversed_duals(labels);
  const TreeSpace& dsp = space(rd);
  std::vector<HomVector> duals;
  for (std::size_t b = 0; b < dsp.dim(); ++b) {
    HomVector v = zero(rd);
    for (std::size_t gidx = 0; gidx < dsp.dim(); ++gidx) v.coef[gidx] = ginv.at(gidx, b);
    duals.push_back(std::move(v));
  }
  std::lock_guard<std::mutex> lock(mu_);
  return duals_.emplace(labels, std::move(duals)).first->second;
}

std::size_t brute_force_dim(const FusionCat& cat, const std::vector<Label>& labels) {
  // independent oracle: sum over all intermediate label chains
  std::vector<std::pair<Label, long>> state{{cat.unit, 1}};
  for (Label u : labels) {
    std::map<Label, long> next;
    for (const auto& [c, count] : state)
      for (std::size_t k = 0; k < cat.rank(); ++k)
        if (cat.n(c, u, Label(k)) > 0) next[Label(k)] += count * cat.n(c, u, Label(k));
    state.assign(next.begin(), next.end());
  }
  for (const auto& [c, count] : state)
    if (c == cat.unit) return std::size_t(count);
  return 0;
}

}  // namespace stringnet
