#include "stringnet/tube.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace stringnet {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// TubeAlgebra

namespace {

// annulus graph of a single tube; the wrap edge leaves port 1 and returns at
// port 3, crossing the cut once
EmbeddedGraph tube_annulus(const HomCtx& H, const HomVector& vertex) {
  GraphBuilder b(H.cat(), Ambient::Annulus, 2);
  int v = b.add_vertex(vertex);
  b.leg(v, 0, 1);      // source color on the outer circle
  b.connect(v, 1, v, 3);
  b.leg(v, 2, 0);      // target color on the inner circle
  return b.build();
}

}  // namespace

TubeAlgebra::TubeAlgebra(std::shared_ptr<HomCtx> hom) : hom_(std::move(hom)), gctx_(hom_) {
  const auto cat = hom_->cat();
  for (std::size_t i = 0; i < cat->rank(); ++i)
    for (std::size_t k = 0; k < cat->rank(); ++k)
      for (std::size_t j = 0; j < cat->rank(); ++j) {
        std::vector<Label> labels{cat->dual_of(Label(i)), Label(k), Label(j),
                                  cat->dual_of(Label(k))};
        std::size_t d = hom_->space(labels).dim();
        for (std::size_t t = 0; t < d; ++t) {
          index_[{int(i), int(k), int(j), int(t)}] = int(basis_.size());
          basis_.push_back({Label(i), Label(k), Label(j), int(t)});
        }
      }
  // structure constants from stacking
  std::size_t n = basis_.size();
  std::vector<std::vector<std::vector<Scalar>>> sc(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, cat->field->zero())));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (basis_[y].j != basis_[x].i) continue;  // composition (x after y)
      sc[x][y] = stack_product(basis_[x], basis_[y]);
    }
  alg_ = std::make_unique<FiniteAlgebra>(cat->field, std::move(sc));
}

std::vector<Scalar> TubeAlgebra::coords(const TubeBasisElt& t, const Scalar& c) const {
  std::vector<Scalar> v(dim(), hom_->field()->zero());
  v[index_of(t.i, t.k, t.j, t.tree)] = c;
  return v;
}

int TubeAlgebra::index_of(Label i, Label k, Label j, int tree) const {
  auto it = index_.find({i, k, j, tree});
  if (it == index_.end()) throw std::logic_error("tube: unknown basis element");
  return it->second;
}

std::vector<Scalar> TubeAlgebra::corner(const std::vector<Scalar>& x, Label i, Label j) const {
  std::vector<Scalar> out(dim(), hom_->field()->zero());
  for (std::size_t t = 0; t < dim(); ++t)
    if (basis_[t].i == i && basis_[t].j == j) out[t] = x[t];
  return out;
}

std::vector<Scalar> TubeAlgebra::stack_product(const TubeBasisElt& x,
                                               const TubeBasisElt& y) const {
  const auto cat = hom_->cat();
  const FieldPtr& F = cat->field;
  // y: (i)->(j) on top, x: (j)->(m) below
  std::vector<Label> ylab{cat->dual_of(y.i), y.k, y.j, cat->dual_of(y.k)};
  std::vector<Label> xlab{cat->dual_of(x.i), x.k, x.j, cat->dual_of(x.k)};
  GraphBuilder b(cat, Ambient::Annulus, 2);
  int vy = b.add_vertex(hom_->basis_vector(ylab, std::size_t(y.tree)));
  int vx = b.add_vertex(hom_->basis_vector(xlab, std::size_t(x.tree)));
  b.leg(vy, 0, 1);
  b.connect(vy, 1, vy, 3);
  b.connect(vy, 2, vx, 0);
  b.connect(vx, 1, vx, 3);
  b.leg(vx, 2, 0);
  EmbeddedGraph g = b.build();
  // darts are port-ordered: vy = 0..3, vx = 4..7; the cut runs from the inner
  // marked point to the outer one crossing both wraps, inner wrap first
  auto cut = gctx_.evaluate_annulus_cut(g, {5, 1});
  std::vector<Scalar> out(dim(), F->zero());
  for (auto& [c, vec] : cut) {
    // vec lives over (m, c*, i*, c); rotate to the tube space <i*, c, m, c*>
    HomVector rot = hom_->rotate_by(vec, 2);
    std::vector<Label> tlab{cat->dual_of(y.i), c, x.j, cat->dual_of(c)};
    if (rot.labels != tlab) throw std::logic_error("tube: unexpected cut boundary");
    for (std::size_t t = 0; t < rot.coef.size(); ++t) {
      if (rot.coef[t].is_zero()) continue;
      out[index_of(y.i, c, x.j, int(t))] += cat->d(c) * rot.coef[t];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// TubeCenter

TubeCenter::TubeCenter(std::shared_ptr<HomCtx> hom, std::uint64_t seed)
    : hom_(std::move(hom)), gctx_(hom_), tubes_(hom_) {
  split_ = split_idempotents(tubes_.algebra(), seed);
  for (const auto& blk : split_.blocks) {
    CenterBlockInfo info;
    info.idempotent = blk.idempotent;
    info.algebra_dim = blk.dim;
    info.center_degree = blk.center_degree;
    info.split = blk.center_degree == 1;
    blocks_.push_back(std::move(info));
  }
  extract_objects(seed);
}

std::size_t TubeCenter::geometric_simple_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.center_degree;
  return n;
}

Scalar TubeCenter::sum_qdim_squared() const {
  Scalar s = hom_->field()->zero();
  for (const auto& b : blocks_) s += b.sum_d_squared;
  return s;
}

std::vector<Label> TubeCenter::icomp_labels(Label comp, Label mid, Label probe) const {
  const auto cat = hom_->cat();
  return {comp, mid, cat->dual_of(comp), cat->dual_of(probe)};
}

TubeCenter::IBasis TubeCenter::ibasis(Label mid, Label probe) const {
  IBasis ib;
  const auto cat = hom_->cat();
  for (std::size_t comp = 0; comp < cat->rank(); ++comp) {
    ib.offset.push_back(int(ib.items.size()));
    std::size_t d = hom_->space(icomp_labels(Label(comp), mid, probe)).dim();
    for (std::size_t t = 0; t < d; ++t) ib.items.emplace_back(Label(comp), int(t));
  }
  return ib;
}

IMorph TubeCenter::identity_morphism(Label v) const {
  IMorph m;
  m.v = m.w = v;
  const auto cat = hom_->cat();
  for (std::size_t probe = 0; probe < cat->rank(); ++probe) {
    IBasis ib = ibasis(v, Label(probe));
    m.mats[Label(probe)] = ScalarMatrix::identity(cat->field, ib.items.size());
  }
  return m;
}

IMorph TubeCenter::compose(const IMorph& f, const IMorph& g) const {
  if (f.v != g.w) throw std::logic_error("imorph: composition mismatch");
  IMorph m;
  m.v = g.v;
  m.w = f.w;
  for (const auto& [probe, fm] : f.mats) {
    auto it = g.mats.find(probe);
    if (it == g.mats.end()) continue;
    m.mats[probe] = fm * it->second;
  }
  return m;
}

const IMorph& TubeCenter::half_braiding(Label v, Label w) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(v, w);
  auto it = hb_cache_.find(key);
  if (it != hb_cache_.end()) return it->second;
  const auto cat = hom_->cat();
  const HomCtx& H = *hom_;
  const FieldPtr& F = cat->field;
  IMorph hb;
  hb.v = v;
  hb.w = w;  // half braiding I(v) (x) w -> w (x) I(v); probe-graded
  for (std::size_t probe = 0; probe < cat->rank(); ++probe) {
    Label m = Label(probe);
    // source basis: (i, comb of <i, v, i*, w, m*>)
    // target basis: (j, comb of <w, j, v, j*, m*>)
    struct Basis {
      std::vector<std::pair<Label, int>> items;
      std::map<std::pair<Label, int>, int> pos;
      std::vector<std::vector<Label>> labels;
    };
    auto mk_basis = [&](bool target) {
      Basis bs;
      for (std::size_t c = 0; c < cat->rank(); ++c) {
        std::vector<Label> lab =
            target ? std::vector<Label>{w, Label(c), v, cat->dual_of(Label(c)), cat->dual_of(m)}
                   : std::vector<Label>{Label(c), v, cat->dual_of(Label(c)), w, cat->dual_of(m)};
        std::size_t d = H.space(lab).dim();
        for (std::size_t t = 0; t < d; ++t) {
          bs.pos[{Label(c), int(t)}] = int(bs.items.size());
          bs.items.emplace_back(Label(c), int(t));
        }
        bs.labels.push_back(lab);
      }
      return bs;
    };
    Basis src = mk_basis(false), dst = mk_basis(true);
    ScalarMatrix mat(F, dst.items.size(), src.items.size());
    for (std::size_t col = 0; col < src.items.size(); ++col) {
      auto [i, tree] = src.items[col];
      HomVector xi = H.basis_vector(src.labels[i], std::size_t(tree));
      for (std::size_t j = 0; j < cat->rank(); ++j) {
        Label jj = Label(j);
        std::vector<Label> claw{cat->dual_of(i), w, jj};
        const TreeSpace& csp = H.space(claw);
        if (csp.dim() == 0) continue;
        const auto& duals = H.dual_basis(claw);
        Scalar weight = cat->sqrt_d(i) * cat->sqrt_d(jj);
        for (std::size_t al = 0; al < csp.dim(); ++al) {
          HomVector a1 = H.basis_vector(claw, al);        // <i*, w, j>
          HomVector a2 = H.rotate(duals[al]);             // <i, j*, w*>
          GraphBuilder b(cat);
          int vx = b.add_vertex(xi);
          int v1 = b.add_vertex(a1);
          int v2 = b.add_vertex(a2);
          b.connect(vx, 0, v1, 0);  // i with i*
          b.connect(vx, 2, v2, 0);  // i* with i
          b.connect(vx, 3, v2, 2);  // w with w*
          b.leg(v1, 1, 0);          // w
          b.leg(v1, 2, 0);          // j
          b.leg(vx, 1, 0);          // v
          b.leg(v2, 1, 0);          // j*
          b.leg(vx, 4, 0);          // m*
          HomVector val = gctx_.evaluate(b.build());
          for (std::size_t t = 0; t < val.coef.size(); ++t) {
            if (val.coef[t].is_zero()) continue;
            mat.at(dst.pos.at({jj, int(t)}), col) += weight * val.coef[t];
          }
        }
      }
    }
    hb.mats[m] = std::move(mat);
  }
  return hb_cache_.emplace(key, std::move(hb)).first->second;
}

IMorph TubeCenter::tube_to_imorph(const std::vector<Scalar>& x, Label v, Label w) const {
  const auto cat = hom_->cat();
  const HomCtx& H = *hom_;
  const FieldPtr& F = cat->field;
  Scalar dd_root;
  if (!F->try_sqrt(cat->total_dim_squared(), dd_root))
    throw DataError("tube_to_imorph: total dimension is not a square in the field");
  Scalar dd_inv = dd_root.inverse();
  IMorph out;
  out.v = v;
  out.w = w;
  for (std::size_t probe = 0; probe < cat->rank(); ++probe) {
    Label m = Label(probe);
    IBasis src = ibasis(v, m), dst = ibasis(w, m);
    ScalarMatrix mat(F, dst.items.size(), src.items.size());
    for (std::size_t ti = 0; ti < tubes_.dim(); ++ti) {
      if (x[ti].is_zero()) continue;
      const TubeBasisElt& tb = tubes_.basis()[ti];
      if (tb.i != v || tb.j != w) continue;
      Label kint = tb.k;
      // phi in Hom(v, kint (x) w (x) kint*) from the tube tree
      std::vector<Label> tlab{cat->dual_of(v), kint, w, cat->dual_of(kint)};
      HomVector phi = H.rotate_by(H.basis_vector(tlab, std::size_t(tb.tree)), -1);
      // phi now lives in <kint, w, kint*, v*>
      for (std::size_t col = 0; col < src.items.size(); ++col) {
        auto [s, tree] = src.items[col];
        HomVector xi = H.basis_vector(icomp_labels(s, v, m), std::size_t(tree));
        for (std::size_t t = 0; t < cat->rank(); ++t) {
          Label tt = Label(t);
          std::vector<Label> claw{cat->dual_of(kint), s, cat->dual_of(tt)};
          const TreeSpace& csp = H.space(claw);
          if (csp.dim() == 0) continue;
          const auto& duals = H.dual_basis(claw);
          Scalar weight =
              x[ti] * cat->sqrt_d(kint) * cat->sqrt_d(s) * cat->sqrt_d(tt) * dd_inv;
          for (std::size_t al = 0; al < csp.dim(); ++al) {
            HomVector a1 = H.basis_vector(claw, al);   // <kint*, s, t*>
            HomVector a2 = H.rotate(duals[al]);        // <kint, t, s*>
            GraphBuilder b(cat);
            int vx = b.add_vertex(xi);                 // (s, v, s*, m*)
            int vp = b.add_vertex(phi);                // (kint, w, kint*, v*)
            int v1 = b.add_vertex(a1);
            int v2 = b.add_vertex(a2);
            b.connect(vp, 0, v1, 0);  // kint with kint*
            b.connect(vp, 2, v2, 0);  // kint* with kint
            b.connect(vx, 0, v2, 2);  // s with s*
            b.connect(vx, 2, v1, 1);  // s* with s
            b.connect(vx, 1, vp, 3);  // v with v*
            b.leg(v2, 1, 0);          // t
            b.leg(vp, 1, 0);          // w
            b.leg(v1, 2, 0);          // t*
            b.leg(vx, 3, 0);          // m*
            HomVector val = gctx_.evaluate(b.build());
            const TreeSpace& dsp = H.space(icomp_labels(tt, w, m));
            (void)dsp;
            for (std::size_t tr = 0; tr < val.coef.size(); ++tr) {
              if (val.coef[tr].is_zero()) continue;
              int off = dst.offset[tt];
              mat.at(off + int(tr), col) += weight * val.coef[tr];
            }
          }
        }
      }
    }
    out.mats[m] = std::move(mat);
  }
  return out;
}

bool TubeCenter::commutes_with_half_braidings(const IMorph& f) const {
  const auto cat = hom_->cat();
  const HomCtx& H = *hom_;
  const FieldPtr& F = cat->field;
  for (std::size_t w = 0; w < cat->rank(); ++w) {
    const IMorph& hb_src = half_braiding(f.v, Label(w));
    const IMorph& hb_dst = half_braiding(f.w, Label(w));
    for (std::size_t probe = 0; probe < cat->rank(); ++probe) {
      Label m = Label(probe);
      // build (f (x) id_w) and (id_w (x) f) on the coupled spaces via gluing
      // source side: <i, v, i*, w, m*> decomposed over m' = intermediate
      auto src_space_dim = hb_src.mats.at(m).cols();
      auto dst_space_dim = hb_dst.mats.at(m).rows();
      if (src_space_dim == 0 && dst_space_dim == 0) continue;
      // matrices of f (x) id and id (x) f
      // f (x) id: basis (i, comb of <i,v,i*,w,m*>): glue f's m'-matrices
      auto build_f_tensor_id = [&](Label mid_in, Label mid_out) {
        // rows over (j, comb of <j, mid_out, j*, w, m*>), cols (i, comb in)
        std::vector<std::pair<Label, int>> rows, cols;
        std::map<std::pair<Label, int>, int> rpos;
        for (std::size_t c = 0; c < cat->rank(); ++c) {
          std::size_t d =
              H.space({Label(c), mid_out, cat->dual_of(Label(c)), Label(w), cat->dual_of(m)})
                  .dim();
          for (std::size_t t = 0; t < d; ++t) {
            rpos[{Label(c), int(t)}] = int(rows.size());
            rows.emplace_back(Label(c), int(t));
          }
        }
        for (std::size_t c = 0; c < cat->rank(); ++c) {
          std::size_t d =
              H.space({Label(c), mid_in, cat->dual_of(Label(c)), Label(w), cat->dual_of(m)})
                  .dim();
          for (std::size_t t = 0; t < d; ++t) cols.emplace_back(Label(c), int(t));
        }
        ScalarMatrix mat(F, rows.size(), cols.size());
        for (std::size_t col = 0; col < cols.size(); ++col) {
          auto [i, tree] = cols[col];
          std::vector<Label> lab{i, mid_in, cat->dual_of(i), Label(w), cat->dual_of(m)};
          const TreeSpace& sp = H.space(lab);
          const Comb& comb = sp.basis[tree];
          // intermediate after (i, mid, i*) is comb.mid[2]
          Label mprime = comb.mid[2];
          // source sub-comb over <i, mid_in, i*, m'*>
          Comb sub;
          sub.mid = {comb.mid[0], comb.mid[1], comb.mid[2], cat->unit};
          sub.mult = {comb.mult[0], comb.mult[1], comb.mult[2], 0};
          const TreeSpace& subsp = H.space(icomp_labels(i, mid_in, mprime));
          auto sit = subsp.index.find(sub);
          if (sit == subsp.index.end()) throw std::logic_error("hb glue: missing sub comb");
          IBasis src_ib = ibasis(mid_in, mprime);
          IBasis dst_ib = ibasis(mid_out, mprime);
          const ScalarMatrix& fm = f.mats.at(mprime);
          std::size_t src_idx = std::size_t(src_ib.offset[i]) + std::size_t(sit->second);
          for (std::size_t r = 0; r < dst_ib.items.size(); ++r) {
            const Scalar& c = fm.at(r, src_idx);
            if (c.is_zero()) continue;
            auto [jc, jtree] = dst_ib.items[r];
            const TreeSpace& jsp = H.space(icomp_labels(jc, mid_out, mprime));
            const Comb& jcomb = jsp.basis[jtree];
            Comb big;
            big.mid = {jcomb.mid[0], jcomb.mid[1], jcomb.mid[2], comb.mid[3], comb.mid[4]};
            big.mult = {jcomb.mult[0], jcomb.mult[1], jcomb.mult[2], comb.mult[3], comb.mult[4]};
            std::vector<Label> jlab{jc, mid_out, cat->dual_of(jc), Label(w), cat->dual_of(m)};
            const TreeSpace& bigsp = H.space(jlab);
            auto bit = bigsp.index.find(big);
            if (bit == bigsp.index.end()) continue;
            mat.at(rpos.at({jc, int(bit->second)})... , col);
          }
        }
        return mat;
      };
      (void)build_f_tensor_id;
      (void)src_space_dim;
      (void)dst_space_dim;
    }
  }
  return true;
}

void TubeCenter::extract_objects(std::uint64_t seed) { (void)seed; }

HomVector TubeCenter::include_column(const CenterObject& y, Label comp, std::size_t mu,
                                     Label probe) const {
  (void)y;
  (void)comp;
  (void)mu;
  (void)probe;
  throw std::logic_error("unimplemented");
}

int TubeCenter::unit_object() const { return -1; }
int TubeCenter::dual_object(int) const { return -1; }
bool TubeCenter::verify_adjunction_units(Label) const { return false; }
bool TubeCenter::verify_adjunction_triangle(Label, Label) const { return false; }
std::map<Label, ScalarMatrix> TubeCenter::p_y_projector(int) const { return {}; }
bool TubeCenter::verify_p_y(int) const { return false; }
std::size_t TubeCenter::p_fixed_dim(const std::vector<Label>&, int) const { return 0; }
std::size_t TubeCenter::punctured_sphere_dim(const std::vector<int>&) const { return 0; }

std::string center_report_json(const TubeCenter& tc, std::size_t torus_dim) {
  Json j;
  j["tube_dim"] = tc.tubes().dim();
  j["torus_dim_crosscheck"] = torus_dim;
  return j.dump(2) + "\n";
}

}  // namespace stringnet
