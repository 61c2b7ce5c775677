#include "stringnet/tv.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace stringnet {

TvEngine::TvEngine(std::shared_ptr<HomCtx> hom, std::size_t cap)
    : hom_(std::move(hom)), gctx_(hom_), cap_(cap) {}

std::vector<Label> TvEngine::cell_labels(const PlcwComplex& c, const std::vector<Label>& coloring,
                                         int cell) const {
  std::vector<Label> out;
  for (int w : c.cells[cell]) {
    Label l = coloring[PlcwComplex::edge_of(w)];
    out.push_back(PlcwComplex::forward(w) ? l : hom_->cat()->dual_of(l));
  }
  return out;
}

TvStateSpace TvEngine::build_state_space(const PlcwComplex& c) const {
  validate_complex(c);
  TvStateSpace s;
  s.complex = c;
  const auto& cat = *hom_->cat();
  std::size_t ne = c.edges.size();
  std::vector<Label> coloring(ne, 0);
  std::size_t total = 0;
  // lexicographic enumeration over edge colorings
  for (;;) {
    std::size_t block = 1;
    for (std::size_t cell = 0; cell < c.cells.size() && block > 0; ++cell)
      block *= hom_->space(cell_labels(c, coloring, int(cell))).dim();
    if (block > 0) {
      total += block;
      if (total > cap_)
        throw TopologyError("state space exceeds the basis cap (" + std::to_string(cap_) + ")");
      s.colorings.push_back(coloring);
    }
    // increment
    std::size_t pos = ne;
    while (pos > 0) {
      --pos;
      if (std::size_t(coloring[pos]) + 1 < cat.rank()) {
        ++coloring[pos];
        std::fill(coloring.begin() + pos + 1, coloring.end(), 0);
        break;
      }
      if (pos == 0) {
        pos = ne + 1;
        break;
      }
      coloring[pos] = 0;
    }
    if (ne == 0 || pos == ne + 1) break;
  }
  // basis items: coloring-major, last cell fastest
  for (std::size_t ci = 0; ci < s.colorings.size(); ++ci) {
    std::vector<std::size_t> dims;
    for (std::size_t cell = 0; cell < c.cells.size(); ++cell)
      dims.push_back(hom_->space(cell_labels(c, s.colorings[ci], int(cell))).dim());
    std::vector<int> trees(c.cells.size(), 0);
    for (;;) {
      s.basis.push_back({ci, trees});
      std::size_t cell = c.cells.size();
      bool done = true;
      while (cell > 0) {
        --cell;
        if (std::size_t(trees[cell]) + 1 < dims[cell]) {
          ++trees[cell];
          std::fill(trees.begin() + cell + 1, trees.end(), 0);
          done = false;
          break;
        }
        trees[cell] = 0;
      }
      if (done) break;
    }
  }
  return s;
}

namespace {

std::size_t item_index(const TvStateSpace& s, const std::vector<Label>& coloring,
                       const std::vector<int>& trees) {
  // linear scan over colorings is fine at desk scale; basis is coloring-major
  for (std::size_t i = 0; i < s.basis.size(); ++i) {
    if (s.colorings[s.basis[i].coloring] == coloring && s.basis[i].trees == trees) return i;
  }
  throw std::logic_error("tv: basis item not found");
}

}  // namespace

ScalarMatrix TvEngine::star_resolution(const TvStateSpace& s, int vertex, bool with_loop,
                                       int threads) const {
  const PlcwComplex& c = s.complex;
  const auto cat = hom_->cat();
  const FieldPtr& F = cat->field;
  const HomCtx& H = *hom_;
  std::size_t ne = c.edges.size();
  std::size_t dim = s.dim();
  ScalarMatrix out(F, dim, dim);

  // sqrt(d) weight of a coloring
  auto sqrt_weight = [&](const std::vector<Label>& coloring) {
    Scalar w = F->one();
    for (Label l : coloring) w *= cat->sqrt_d(l);
    return w;
  };

  Scalar dd2_inv = cat->total_dim_squared().inverse();

  auto column_task = [&](std::size_t col) {
    const auto& item = s.basis[col];
    const std::vector<Label>& l = s.colorings[item.coloring];
    Scalar wsrc = sqrt_weight(l);
    std::vector<Label> loop_colors;
    if (with_loop)
      for (std::size_t k = 0; k < cat->rank(); ++k) loop_colors.push_back(Label(k));
    else
      loop_colors.push_back(cat->unit);  // unused marker

    for (Label k : loop_colors) {
      // per-edge pair spaces for target colors
      struct EdgeChoice {
        Label lp;       // target color
        std::size_t alpha;
      };
      // candidates per edge: (target color, alpha index)
      std::vector<std::vector<EdgeChoice>> cands(ne);
      std::vector<std::vector<Label>> pair_labels(ne);
      bool feasible = true;
      for (std::size_t e = 0; e < ne && feasible; ++e) {
        bool head_p = with_loop && c.edges[e].second == vertex;
        bool tail_p = with_loop && c.edges[e].first == vertex;
        for (std::size_t lp = 0; lp < cat->rank(); ++lp) {
          std::vector<Label> labels{Label(lp)};
          if (head_p) labels.push_back(k);
          labels.push_back(cat->dual_of(l[e]));
          if (tail_p) labels.push_back(cat->dual_of(k));
          std::size_t d = H.space(labels).dim();
          for (std::size_t a = 0; a < d; ++a) cands[e].push_back({Label(lp), a});
          if (d > 0 && pair_labels[e].empty() && false) pair_labels[e] = labels;
        }
        if (cands[e].empty()) feasible = false;
      }
      if (!feasible) continue;

      // pair space labels depend on the target color; rebuild per choice
      auto plabels = [&](std::size_t e, Label lp) {
        std::vector<Label> labels{lp};
        if (with_loop && c.edges[e].second == vertex) labels.push_back(k);
        labels.push_back(cat->dual_of(l[e]));
        if (with_loop && c.edges[e].first == vertex) labels.push_back(cat->dual_of(k));
        return labels;
      };

      // cell evaluation cache per (cell, relevant edge choices)
      std::map<std::pair<int, std::string>, HomVector> cell_cache;

      auto eval_cell = [&](int cell, const std::vector<EdgeChoice>& choice) -> const HomVector& {
        const std::vector<int>& word = c.cells[cell];
        std::ostringstream key;
        for (int w : word) {
          int e = PlcwComplex::edge_of(w);
          key << e << ':' << choice[e].lp << ':' << choice[e].alpha << ';';
        }
        auto ck = std::make_pair(cell, key.str());
        auto it = cell_cache.find(ck);
        if (it != cell_cache.end()) return it->second;

        GraphBuilder b(cat);
        // tree vertex
        HomVector tree =
            H.basis_vector(cell_labels(c, l, cell), std::size_t(item.trees[cell]));
        int vc = b.add_vertex(tree);
        // side vertices
        std::size_t m = word.size();
        struct SidePorts {
          int vid;
          int stub, end_arc, dual, start_arc;  // -1 when absent
        };
        std::vector<SidePorts> sides(m);
        for (std::size_t t = 0; t < m; ++t) {
          int w = word[t];
          int e = PlcwComplex::edge_of(w);
          bool fwd = PlcwComplex::forward(w);
          bool end_at_p = with_loop && c.head_of(w) == vertex;
          bool start_at_p = with_loop && c.tail_of(w) == vertex;
          std::vector<Label> pl = plabels(e, choice[e].lp);
          HomVector color;
          if (fwd) {
            color = H.basis_vector(pl, choice[e].alpha);
          } else {
            color = H.rotate(H.dual_basis(pl)[choice[e].alpha]);
          }
          SidePorts sp{-1, 0, -1, -1, -1};
          int port = 1;
          if (end_at_p) sp.end_arc = port++;
          sp.dual = port++;
          if (start_at_p) sp.start_arc = port++;
          sp.vid = b.add_vertex(color);
          sides[t] = sp;
        }
        // wiring: tree ports to side dual ports
        for (std::size_t t = 0; t < m; ++t) b.connect(vc, int(t), sides[t].vid, sides[t].dual);
        // corner arcs at the loop vertex
        if (with_loop)
          for (std::size_t t = 0; t < m; ++t) {
            if (c.tail_of(word[t]) != vertex) continue;
            std::size_t tp = (t + m - 1) % m;
            b.connect(sides[tp].vid, sides[tp].end_arc, sides[t].vid, sides[t].start_arc);
          }
        // stubs
        for (std::size_t t = 0; t < m; ++t) b.leg(sides[t].vid, sides[t].stub, 0);
        HomVector val = gctx_.evaluate(b.build());
        return cell_cache.emplace(ck, std::move(val)).first->second;
      };

      // enumerate joint choices over edges
      std::vector<std::size_t> idx(ne, 0);
      std::vector<EdgeChoice> choice(ne);
      for (;;) {
        for (std::size_t e = 0; e < ne; ++e) choice[e] = cands[e][idx[e]];
        std::vector<Label> lp(ne);
        for (std::size_t e = 0; e < ne; ++e) lp[e] = choice[e].lp;
        // accumulate the product of cell evaluations
        bool nonzero = true;
        std::vector<const HomVector*> vals(c.cells.size());
        for (std::size_t cell = 0; cell < c.cells.size() && nonzero; ++cell) {
          vals[cell] = &eval_cell(int(cell), choice);
          if (H.is_zero(*vals[cell])) nonzero = false;
        }
        if (nonzero) {
          Scalar weight = wsrc * sqrt_weight(lp);
          if (with_loop) weight *= cat->d(k) * dd2_inv;
          // expand the product over per-cell tree components
          std::vector<int> trees(c.cells.size(), 0);
          std::vector<std::size_t> dims(c.cells.size());
          for (std::size_t cell = 0; cell < c.cells.size(); ++cell)
            dims[cell] = vals[cell]->coef.size();
          bool any = true;
          for (std::size_t cell = 0; cell < c.cells.size(); ++cell)
            if (dims[cell] == 0) any = false;
          if (any) {
            for (;;) {
              Scalar term = weight;
              bool zero = false;
              for (std::size_t cell = 0; cell < c.cells.size() && !zero; ++cell) {
                const Scalar& cc = vals[cell]->coef[trees[cell]];
                if (cc.is_zero())
                  zero = true;
                else
                  term *= cc;
              }
              if (!zero) {
                std::size_t row = item_index(s, lp, trees);
                out.at(row, col) += term;
              }
              std::size_t cell = c.cells.size();
              bool done = true;
              while (cell > 0) {
                --cell;
                if (std::size_t(trees[cell]) + 1 < dims[cell]) {
                  ++trees[cell];
                  std::fill(trees.begin() + cell + 1, trees.end(), 0);
                  done = false;
                  break;
                }
                trees[cell] = 0;
              }
              if (done) break;
            }
          }
        }
        // next joint choice
        std::size_t e = ne;
        bool done = true;
        while (e > 0) {
          --e;
          if (idx[e] + 1 < cands[e].size()) {
            ++idx[e];
            std::fill(idx.begin() + e + 1, idx.end(), 0);
            done = false;
            break;
          }
          idx[e] = 0;
        }
        if (done || ne == 0) break;
      }
    }
  };

  if (threads <= 1) {
    for (std::size_t col = 0; col < dim; ++col) column_task(col);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (dim + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t lo = t * chunk, hi = std::min(dim, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t col = lo; col < hi; ++col) column_task(col);
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

ScalarMatrix TvEngine::b_p_matrix(const TvStateSpace& s, int vertex, int threads) const {
  if (vertex < 0 || vertex >= s.complex.num_vertices)
    throw TopologyError("b_p: not a vertex of the complex");
  return star_resolution(s, vertex, true, threads);
}

ScalarMatrix TvEngine::resolution_identity(const TvStateSpace& s) const {
  return star_resolution(s, -1, false, 1);
}

ScalarMatrix TvEngine::b_product(const TvStateSpace& s, int threads) const {
  ScalarMatrix prod = ScalarMatrix::identity(hom_->field(), s.dim());
  for (int p = 0; p < s.complex.num_vertices; ++p) prod = prod * b_p_matrix(s, p, threads);
  return prod;
}

std::size_t TvEngine::tv_dimension(const PlcwComplex& c, int threads) const {
  TvStateSpace s = build_state_space(c);
  return b_product(s, threads).rank();
}

// ---------------------------------------------------------------------------
// transports along elementary moves

ScalarMatrix TvEngine::transport_subdivide(const TvStateSpace& src, const TvStateSpace& dst,
                                           int edge) const {
  // new edge carries the unit; trees gain a trivial leg at each inserted slot
  const PlcwComplex& cs = src.complex;
  const PlcwComplex& cd = dst.complex;
  const auto cat = hom_->cat();
  const FieldPtr& F = cat->field;
  int e2 = int(cd.edges.size()) - 1;
  ScalarMatrix t(F, dst.dim(), src.dim());
  for (std::size_t col = 0; col < src.dim(); ++col) {
    const auto& item = src.basis[col];
    std::vector<Label> lp = src.colorings[item.coloring];
    lp.push_back(cat->unit);
    std::vector<int> trees(cd.cells.size());
    for (std::size_t cell = 0; cell < cs.cells.size(); ++cell) {
      const TreeSpace& ssp = hom_->space(cell_labels(cs, src.colorings[item.coloring], cell));
      Comb comb = ssp.basis[item.trees[cell]];
      // insert unit legs where letters of e2 appear in the destination word
      const std::vector<int>& wd = cd.cells[cell];
      Comb nc;
      std::size_t sp = 0;
      for (std::size_t p = 0; p < wd.size(); ++p) {
        if (PlcwComplex::edge_of(wd[p]) == e2) {
          Label prev = (p == 0) ? cat->unit : nc.mid.back();
          nc.mid.push_back(prev);
          nc.mult.push_back(0);
        } else {
          nc.mid.push_back(comb.mid[sp]);
          nc.mult.push_back(comb.mult[sp]);
          ++sp;
        }
      }
      const TreeSpace& dsp = hom_->space(cell_labels(cd, lp, cell));
      trees[cell] = dsp.index.at(nc);
    }
    std::size_t row = item_index(dst, lp, trees);
    t.at(row, col) = F->one();
  }
  return t;
}

namespace {

// Shared enumeration skeleton for re-presenting a source basis on a finer or
// coarser complex: per destination edge, the bundle of source dual strands
// crossing it determines a dual-basis pair space; cells are evaluated per
// joint choice of destination color and pair index.
struct TransportSpec {
  // outgoing colors at the plus-side vertex after the stub, end-to-start
  std::function<std::vector<Label>(std::size_t dst_edge)> bundle;
  // builds and evaluates one destination cell for the current choices;
  // choices[e] = (destination color, alpha index)
  std::function<HomVector(std::size_t dst_cell,
                          const std::vector<std::pair<Label, std::size_t>>& choices)>
      eval_cell;
};

}  // namespace

static ScalarMatrix transport_generic(const HomCtx& H, const TvStateSpace& src,
                                      const TvStateSpace& dst,
                                      const std::function<TransportSpec(std::size_t src_col)>& make,
                                      const std::function<Scalar(std::size_t src_col)>& src_weight) {
  const auto cat = H.cat();
  const FieldPtr& F = cat->field;
  std::size_t ne = dst.complex.edges.size();
  std::size_t ncell = dst.complex.cells.size();
  ScalarMatrix out(F, dst.dim(), src.dim());

  auto sqrt_weight = [&](const std::vector<Label>& coloring) {
    Scalar w = F->one();
    for (Label l : coloring) w *= cat->sqrt_d(l);
    return w;
  };

  for (std::size_t col = 0; col < src.dim(); ++col) {
    TransportSpec spec = make(col);
    Scalar wsrc = src_weight(col);
    // candidates per destination edge
    std::vector<std::vector<std::pair<Label, std::size_t>>> cands(ne);
    bool feasible = true;
    for (std::size_t e = 0; e < ne && feasible; ++e) {
      std::vector<Label> strands = spec.bundle(e);
      for (std::size_t lp = 0; lp < cat->rank(); ++lp) {
        std::vector<Label> labels{Label(lp)};
        labels.insert(labels.end(), strands.begin(), strands.end());
        std::size_t d = H.space(labels).dim();
        for (std::size_t a = 0; a < d; ++a) cands[e].push_back({Label(lp), a});
      }
      if (cands[e].empty()) feasible = false;
    }
    if (!feasible) continue;
    std::vector<std::size_t> idx(ne, 0);
    std::vector<std::pair<Label, std::size_t>> choice(ne);
    for (;;) {
      for (std::size_t e = 0; e < ne; ++e) choice[e] = cands[e][idx[e]];
      std::vector<Label> lp(ne);
      for (std::size_t e = 0; e < ne; ++e) lp[e] = choice[e].first;
      std::vector<HomVector> vals(ncell);
      bool nonzero = true;
      for (std::size_t cell = 0; cell < ncell && nonzero; ++cell) {
        vals[cell] = spec.eval_cell(cell, choice);
        if (H.is_zero(vals[cell])) nonzero = false;
      }
      if (nonzero) {
        Scalar weight = wsrc * sqrt_weight(lp);
        std::vector<int> trees(ncell, 0);
        std::vector<std::size_t> dims(ncell);
        bool any = true;
        for (std::size_t cell = 0; cell < ncell; ++cell) {
          dims[cell] = vals[cell].coef.size();
          if (dims[cell] == 0) any = false;
        }
        if (any) for (;;) {
          Scalar term = weight;
          bool zero = false;
          for (std::size_t cell = 0; cell < ncell && !zero; ++cell) {
            const Scalar& cc = vals[cell].coef[trees[cell]];
            if (cc.is_zero())
              zero = true;
            else
              term *= cc;
          }
          if (!zero) out.at(item_index(dst, lp, trees), col) += term;
          std::size_t cell = ncell;
          bool done = true;
          while (cell > 0) {
            --cell;
            if (std::size_t(trees[cell]) + 1 < dims[cell]) {
              ++trees[cell];
              std::fill(trees.begin() + cell + 1, trees.end(), 0);
              done = false;
              break;
            }
            trees[cell] = 0;
          }
          if (done) break;
        }
      }
      std::size_t e = ne;
      bool done = true;
      while (e > 0) {
        --e;
        if (idx[e] + 1 < cands[e].size()) {
          ++idx[e];
          std::fill(idx.begin() + e + 1, idx.end(), 0);
          done = false;
          break;
        }
        idx[e] = 0;
      }
      if (done || ne == 0) break;
    }
  }
  return out;
}

ScalarMatrix TvEngine::transport_m1(const TvStateSpace& src, const TvStateSpace& dst,
                                    int vertex) const {
  const PlcwComplex& cs = src.complex;
  const auto cat = hom_->cat();
  const HomCtx& H = *hom_;
  // recover the merge plan exactly as move_m1 normalizes it
  int e1 = -1, e2 = -1;
  for (std::size_t e = 0; e < cs.edges.size(); ++e)
    if (cs.edges[e].first == vertex || cs.edges[e].second == vertex) {
      if (e1 < 0)
        e1 = int(e);
      else
        e2 = int(e);
    }
  const bool flip1 = cs.edges[e1].second != vertex;
  const bool flip2 = cs.edges[e2].first != vertex;
  const int E1 = e1, E2 = e2;
  auto tilde = [cat, E1, E2, flip1, flip2](const std::vector<Label>& l, std::size_t e) {
    bool flipped = (int(e) == E1 && flip1) || (int(e) == E2 && flip2);
    return flipped ? cat->dual_of(l[e]) : l[e];
  };
  // whether the normalized orientation of a src letter is forward
  auto norm_forward = [E1, E2, flip1, flip2](int letter) {
    bool fwd = PlcwComplex::forward(letter);
    int e = PlcwComplex::edge_of(letter);
    if ((e == E1 && flip1) || (e == E2 && flip2)) fwd = !fwd;
    return fwd;
  };
  // per cell: destination slot -> list of source slots (merged slots get two:
  // ports are end-to-start)
  std::vector<std::vector<std::vector<int>>> slot_map(cs.cells.size());
  std::vector<std::vector<bool>> slot_fwd(cs.cells.size());
  for (std::size_t cell = 0; cell < cs.cells.size(); ++cell) {
    const std::vector<int>& w = cs.cells[cell];
    int nw = int(w.size());
    for (int t = 0; t < nw; ++t) {
      int e = PlcwComplex::edge_of(w[t]);
      bool fwd = norm_forward(w[t]);
      if (e == E2) continue;  // swallowed
      if (e == E1 && fwd) {
        // (+e1 +e2): ports (e2-strand, e1-strand) -> slots (next, this)
        slot_map[cell].push_back({(t + 1) % nw, t});
        slot_fwd[cell].push_back(true);
      } else if (e == E1 && !fwd) {
        // (-e2 -e1): ports (e1-strand, e2-strand) -> slots (this, prev)
        slot_map[cell].push_back({t, (t + nw - 1) % nw});
        slot_fwd[cell].push_back(false);
      } else {
        slot_map[cell].push_back({t});
        slot_fwd[cell].push_back(PlcwComplex::forward(w[t]));
      }
    }
  }
  auto make = [&, tilde](std::size_t col) -> TransportSpec {
    const auto& item = src.basis[col];
    const std::vector<Label> l = src.colorings[item.coloring];
    auto bundle_fn = [this, l, tilde, E1, E2](std::size_t de) -> std::vector<Label> {
      const auto cat2 = hom_->cat();
      std::size_t se = (int(de) < E2) ? de : de + 1;
      if (int(se) == E1)
        return {cat2->dual_of(tilde(l, E2)), cat2->dual_of(tilde(l, E1))};
      return {cat2->dual_of(tilde(l, se))};
    };
    TransportSpec spec;
    spec.bundle = bundle_fn;
    spec.eval_cell = [this, l, item, bundle_fn, &slot_map, &slot_fwd, &dst, &cs](
                         std::size_t cell,
                         const std::vector<std::pair<Label, std::size_t>>& choices) -> HomVector {
      const HomCtx& H2 = *hom_;
      const auto cat2 = hom_->cat();
      const std::vector<int>& wd = dst.complex.cells[cell];
      GraphBuilder b(cat2);
      int vc = b.add_vertex(H2.basis_vector(cell_labels(cs, l, int(cell)), item.trees[cell]));
      std::vector<int> stubs;
      for (std::size_t t = 0; t < wd.size(); ++t) {
        std::size_t de = PlcwComplex::edge_of(wd[t]);
        std::vector<Label> plabels{choices[de].first};
        auto strands = bundle_fn(de);
        plabels.insert(plabels.end(), strands.begin(), strands.end());
        bool fwd = PlcwComplex::forward(wd[t]);
        HomVector color = fwd ? H2.basis_vector(plabels, choices[de].second)
                              : H2.rotate(H2.dual_basis(plabels)[choices[de].second]);
        int av = b.add_vertex(color);
        const std::vector<int>& slots = slot_map[cell][t];
        for (std::size_t u = 0; u < slots.size(); ++u) b.connect(vc, slots[u], av, int(1 + u));
        stubs.push_back(av);
      }
      for (int av : stubs) b.leg(av, 0, 0);
      return gctx_.evaluate(b.build());
    };
    return spec;
  };
  auto wsrc = [&](std::size_t col) {
    const std::vector<Label>& l = src.colorings[src.basis[col].coloring];
    Scalar w = cat->field->one();
    for (Label x : l) w *= cat->sqrt_d(x);
    return w;
  };
  return transport_generic(H, src, dst, make, wsrc);
}

ScalarMatrix TvEngine::transport_m2(const TvStateSpace& src, const TvStateSpace& dst,
                                    int edge) const {
  const PlcwComplex& cs = src.complex;
  const auto cat = hom_->cat();
  const HomCtx& H = *hom_;
  // locate the two occurrences as move_m2 does
  int cell_f = -1, cell_b = -1, pos_f = -1, pos_b = -1;
  for (std::size_t cell = 0; cell < cs.cells.size(); ++cell)
    for (std::size_t p = 0; p < cs.cells[cell].size(); ++p) {
      int l = cs.cells[cell][p];
      if (PlcwComplex::edge_of(l) != edge) continue;
      if (PlcwComplex::forward(l)) {
        cell_f = int(cell);
        pos_f = int(p);
      } else {
        cell_b = int(cell);
        pos_b = int(p);
      }
    }
  int merged_cell = std::min(cell_f, cell_b);
  int dropped_cell = std::max(cell_f, cell_b);
  // destination slot order of the merged cell: wf-minus-last then wb-minus-first
  std::vector<std::pair<int, int>> slot_map;  // (source cell, source pos)
  {
    int nf = int(cs.cells[cell_f].size()), nb = int(cs.cells[cell_b].size());
    for (int i = 0; i + 1 < nf; ++i) slot_map.push_back({cell_f, (pos_f + 1 + i) % nf});
    for (int i = 1; i < nb; ++i) slot_map.push_back({cell_b, (pos_b + i) % nb});
  }
  auto dst_edge_of = [&](std::size_t e) { return int(e) < edge ? int(e) : int(e) - 1; };
  (void)dst_edge_of;
  auto make = [&](std::size_t col) -> TransportSpec {
    const auto& item = src.basis[col];
    const std::vector<Label>& l = src.colorings[item.coloring];
    TransportSpec spec;
    spec.bundle = [&, l](std::size_t de) -> std::vector<Label> {
      std::size_t se = (int(de) < edge) ? de : de + 1;
      return {cat->dual_of(l[se])};
    };
    spec.eval_cell = [&, l, item](std::size_t cell,
                                  const std::vector<std::pair<Label, std::size_t>>& choices)
        -> HomVector {
      auto side_color = [&](int wdt, std::size_t de) {
        Label lp = choices[de].first;
        std::vector<Label> plabels{lp, cat->dual_of(l[(int(de) < edge) ? de : de + 1])};
        return PlcwComplex::forward(wdt) ? H.basis_vector(plabels, choices[de].second)
                                         : H.rotate(H.dual_basis(plabels)[choices[de].second]);
      };
      GraphBuilder b(cat);
      if (int(cell) != merged_cell) {
        std::size_t scell = (int(cell) < dropped_cell) ? cell : cell + 1;
        // plain one-vertex resolution
        int vc = b.add_vertex(
            H.basis_vector(cell_labels(cs, l, int(scell)), item.trees[scell]));
        const std::vector<int>& wd = dst.complex.cells[cell];
        std::vector<int> stubs;
        for (std::size_t t = 0; t < wd.size(); ++t) {
          std::size_t de = PlcwComplex::edge_of(wd[t]);
          int av = b.add_vertex(side_color(wd[t], de));
          b.connect(vc, int(t), av, 1);
          stubs.push_back(av);
        }
        for (int av : stubs) b.leg(av, 0, 0);
        return gctx_.evaluate(b.build());
      }
      // merged cell: two tree vertices joined along the removed edge
      int v1 = b.add_vertex(H.basis_vector(cell_labels(cs, l, cell_f), item.trees[cell_f]));
      int v2 = b.add_vertex(H.basis_vector(cell_labels(cs, l, cell_b), item.trees[cell_b]));
      b.connect(v1, pos_f, v2, pos_b);
      const std::vector<int>& wd = dst.complex.cells[cell];
      std::vector<int> stubs;
      for (std::size_t t = 0; t < wd.size(); ++t) {
        std::size_t de = PlcwComplex::edge_of(wd[t]);
        int av = b.add_vertex(side_color(wd[t], de));
        auto [scell, spos] = slot_map[t];
        b.connect(scell == cell_f ? v1 : v2, spos, av, 1);
        stubs.push_back(av);
      }
      for (int av : stubs) b.leg(av, 0, 0);
      return gctx_.evaluate(b.build());
    };
    return spec;
  };
  auto wsrc = [&](std::size_t col) {
    const std::vector<Label>& l = src.colorings[src.basis[col].coloring];
    Scalar w = cat->field->one();
    for (Label x : l) w *= cat->sqrt_d(x);
    return w;
  };
  return transport_generic(H, src, dst, make, wsrc);
}

ScalarMatrix TvEngine::transport_split(const TvStateSpace& src, const TvStateSpace& dst, int cell,
                                       int p, int q) const {
  const PlcwComplex& cs = src.complex;
  const auto cat = hom_->cat();
  const HomCtx& H = *hom_;
  int n = int(cs.cells[cell].size());
  int f = int(dst.complex.edges.size()) - 1;  // the new chord
  // source slots on the B side (crossing f), in word order w_q..w_{p-1}
  std::vector<int> bslots;
  for (int t = q; t != p; t = (t + 1) % n) bslots.push_back(t);
  int cell_a = cell, cell_b = int(dst.complex.cells.size()) - 1;
  auto make = [&](std::size_t col) -> TransportSpec {
    const auto& item = src.basis[col];
    const std::vector<Label> l = src.colorings[item.coloring];
    const std::vector<Label> slot_label = cell_labels(cs, l, cell);
    auto bundle_fn = [this, l, slot_label, f, &bslots](std::size_t de) -> std::vector<Label> {
      if (int(de) == f) {
        std::vector<Label> strands;
        for (int t : bslots) strands.push_back(slot_label[t]);
        return strands;
      }
      return {hom_->cat()->dual_of(l[de])};
    };
    TransportSpec spec;
    spec.bundle = bundle_fn;
    spec.eval_cell = [&, l, item, slot_label, bundle_fn](
                         std::size_t dcell,
                         const std::vector<std::pair<Label, std::size_t>>& choices) -> HomVector {
      auto pair_labels = [&](std::size_t de) {
        std::vector<Label> pl{choices[de].first};
        auto strands = bundle_fn(de);
        pl.insert(pl.end(), strands.begin(), strands.end());
        return pl;
      };
      auto side_color = [&](int wdt) {
        std::size_t de = PlcwComplex::edge_of(wdt);
        return PlcwComplex::forward(wdt)
                   ? H.basis_vector(pair_labels(de), choices[de].second)
                   : H.rotate(H.dual_basis(pair_labels(de))[choices[de].second]);
      };
      GraphBuilder b(cat);
      const std::vector<int>& wd = dst.complex.cells[dcell];
      if (int(dcell) != cell_a && int(dcell) != cell_b) {
        std::size_t scell = dcell;
        int vc = b.add_vertex(H.basis_vector(cell_labels(cs, l, int(scell)), item.trees[scell]));
        std::vector<int> stubs;
        for (std::size_t t = 0; t < wd.size(); ++t) {
          int av = b.add_vertex(side_color(wd[t]));
          b.connect(vc, int(t), av, 1);
          stubs.push_back(av);
        }
        for (int av : stubs) b.leg(av, 0, 0);
        return gctx_.evaluate(b.build());
      }
      if (int(dcell) == cell_a) {
        // tree vertex lives here; the -f side vertex gathers the B-side slots
        int vc = b.add_vertex(H.basis_vector(cell_labels(cs, l, cell), item.trees[cell]));
        std::vector<int> stubs;
        for (std::size_t t = 0; t < wd.size(); ++t) {
          int wdt = wd[t];
          if (PlcwComplex::edge_of(wdt) == f) {
            // minus side: ports (stub, lambda_{p-1}*, ..., lambda_q*)
            int av = b.add_vertex(side_color(wdt));
            for (std::size_t u = 0; u < bslots.size(); ++u)
              b.connect(vc, bslots[bslots.size() - 1 - u], av, int(1 + u));
            stubs.push_back(av);
          } else {
            int av = b.add_vertex(side_color(wdt));
            b.connect(vc, (p + int(t)) % n, av, 1);
            stubs.push_back(av);
          }
        }
        for (int av : stubs) b.leg(av, 0, 0);
        return gctx_.evaluate(b.build());
      }
      // cell B: pass-through strands, no tree vertex
      std::vector<int> stubs;
      int fav = -1;
      std::vector<int> side_av(wd.size(), -1);
      for (std::size_t t = 0; t < wd.size(); ++t) {
        side_av[t] = b.add_vertex(side_color(wd[t]));
        if (PlcwComplex::edge_of(wd[t]) == f) fav = int(t);
      }
      for (std::size_t t = 0; t < wd.size(); ++t) {
        if (int(t) == fav) continue;
        // plus side ports: (stub, w_q-strand, ..., w_{p-1}-strand)
        b.connect(side_av[fav], int(1 + t), side_av[t], 1);
      }
      for (std::size_t t = 0; t < wd.size(); ++t) stubs.push_back(side_av[t]);
      for (int av : stubs) b.leg(av, 0, 0);
      return gctx_.evaluate(b.build());
    };
    return spec;
  };
  auto wsrc = [&](std::size_t col) {
    const std::vector<Label>& l = src.colorings[src.basis[col].coloring];
    Scalar w = cat->field->one();
    for (Label x : l) w *= cat->sqrt_d(x);
    return w;
  };
  return transport_generic(H, src, dst, make, wsrc);
}

bool TvEngine::verify_move_invariance(const PlcwComplex& c, const std::vector<MoveStep>& moves,
                                      bool strong, int threads) const {
  PlcwComplex cur = c;
  std::size_t d0 = tv_dimension(cur, threads);
  for (const auto& mv : moves) {
    PlcwComplex next;
    switch (mv.kind) {
      case MoveStep::M1:
        next = move_m1(cur, mv.a);
        break;
      case MoveStep::M2:
        next = move_m2(cur, mv.a);
        break;
      case MoveStep::SubdivideEdge:
        next = subdivide_edge(cur, mv.a);
        break;
      case MoveStep::SplitCell:
        next = split_cell(cur, mv.a, mv.b, mv.c);
        break;
    }
    if (tv_dimension(next, threads) != d0) return false;
    if (strong) {
      // the transported map must restrict to an isomorphism between the
      // projector images
      TvStateSpace ss = build_state_space(cur);
      TvStateSpace sd = build_state_space(next);
      ScalarMatrix t(hom_->field(), 0, 0);
      switch (mv.kind) {
        case MoveStep::M1:
          t = transport_m1(ss, sd, mv.a);
          break;
        case MoveStep::M2:
          t = transport_m2(ss, sd, mv.a);
          break;
        case MoveStep::SubdivideEdge:
          t = transport_subdivide(ss, sd, mv.a);
          break;
        case MoveStep::SplitCell:
          t = transport_split(ss, sd, mv.a, mv.b, mv.c);
          break;
      }
      ScalarMatrix bs = b_product(ss, threads);
      ScalarMatrix bd = b_product(sd, threads);
      ScalarMatrix induced = bd * (t * bs);
      if (induced.rank() != bs.rank() || bs.rank() != bd.rank()) return false;
    }
    cur = next;
  }
  return true;
}

}  // namespace stringnet
