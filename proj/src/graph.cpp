#include "stringnet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "json.hpp"

namespace stringnet {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// GraphBuilder

GraphBuilder::GraphBuilder(CatPtr cat, Ambient ambient, int circles)
    : cat_(std::move(cat)), ambient_(ambient) {
  boundary_.resize(circles);
}

int GraphBuilder::add_vertex(const HomVector& color) {
  colors_.push_back(color);
  ports_.emplace_back(color.labels.size());
  return int(colors_.size()) - 1;
}

void GraphBuilder::connect(int u, int pu, int v, int pv) {
  if (u == v && pu == pv) throw TopologyError("builder: port connected to itself");
  Port& a = ports_.at(u).at(pu);
  Port& b = ports_.at(v).at(pv);
  if (a.used || b.used) throw TopologyError("builder: port already used");
  if (colors_[u].labels[pu] != cat_->dual_of(colors_[v].labels[pv]))
    throw TopologyError("builder: edge colors are not dual");
  a = {v, pv, -1, true};
  b = {u, pu, -1, true};
}

void GraphBuilder::leg(int u, int pu, int circle) {
  Port& a = ports_.at(u).at(pu);
  if (a.used) throw TopologyError("builder: port already used");
  a = {-1, -1, circle, true};
  boundary_.at(circle).push_back({u, pu});
}

EmbeddedGraph GraphBuilder::build() {
  EmbeddedGraph g;
  g.ambient = ambient_;
  // darts: one per vertex port, then one per boundary leg
  std::vector<std::vector<int>> dart_of(ports_.size());
  int next_dart = 0;
  for (std::size_t v = 0; v < ports_.size(); ++v) {
    dart_of[v].resize(ports_[v].size());
    for (std::size_t p = 0; p < ports_[v].size(); ++p) dart_of[v][p] = next_dart++;
  }
  int interior_darts = next_dart;
  int total = interior_darts;
  for (const auto& cyc : boundary_) total += int(cyc.size());
  g.partner.assign(total, -1);
  g.next.assign(total, -1);
  g.vertex_of.assign(total, -1);
  g.color.assign(total, 0);
  for (std::size_t v = 0; v < ports_.size(); ++v) {
    for (std::size_t p = 0; p < ports_[v].size(); ++p) {
      const Port& port = ports_[v][p];
      if (!port.used) throw TopologyError("builder: unconnected port");
      int d = dart_of[v][p];
      g.vertex_of[d] = int(v);
      g.next[d] = dart_of[v][(p + 1) % ports_[v].size()];
      g.color[d] = colors_[v].labels[p];
      if (port.other_vertex >= 0) g.partner[d] = dart_of[port.other_vertex][port.other_port];
    }
    GraphVertex gv;
    gv.start_dart = ports_[v].empty() ? -1 : dart_of[v][0];
    gv.color = colors_[v];
    g.vertices.push_back(std::move(gv));
  }
  int bd = interior_darts;
  g.boundary.resize(boundary_.size());
  for (std::size_t c = 0; c < boundary_.size(); ++c) {
    for (const auto& [v, p] : boundary_[c]) {
      int d = bd++;
      int din = dart_of[v][p];
      g.partner[d] = din;
      g.partner[din] = d;
      g.color[d] = cat_->dual_of(colors_[v].labels[p]);
      g.boundary[c].push_back(d);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// validation

GraphCtx::GraphCtx(std::shared_ptr<HomCtx> hom) : hom_(std::move(hom)) {}

void GraphCtx::validate_graph(const EmbeddedGraph& g) const {
  const auto& cat = *this->cat();
  std::size_t nd = g.dart_count();
  if (g.next.size() != nd || g.vertex_of.size() != nd || g.color.size() != nd)
    throw TopologyError("graph: ragged dart arrays");
  std::size_t expected_circles = g.ambient == Ambient::Disk ? 1 : 2;
  if (g.boundary.size() != expected_circles)
    throw TopologyError("graph: wrong number of boundary circles for ambient");
  // involution and colors
  for (std::size_t d = 0; d < nd; ++d) {
    int p = g.partner[d];
    if (p < 0 || std::size_t(p) >= nd || g.partner[p] != int(d) || p == int(d))
      throw TopologyError("graph: involution is not a perfect matching");
    if (g.color[p] != cat.dual_of(g.color[d]))
      throw TopologyError("graph: edge colors are not mutually dual");
  }
  // vertex cycles
  std::vector<int> seen(nd, 0);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const GraphVertex& gv = g.vertices[v];
    std::vector<Label> labels;
    if (gv.start_dart >= 0) {
      int d = gv.start_dart;
      do {
        if (g.vertex_of[d] != int(v)) throw TopologyError("graph: rotation leaves vertex");
        if (seen[d]++) throw TopologyError("graph: dart in two cycles");
        labels.push_back(g.color[d]);
        d = g.next[d];
        if (labels.size() > nd) throw TopologyError("graph: rotation not cyclic");
      } while (d != gv.start_dart);
    }
    if (gv.color.labels != labels)
      throw TopologyError("graph: vertex color labels do not match dart colors");
  }
  // boundary darts
  std::size_t nboundary = 0;
  for (const auto& cyc : g.boundary)
    for (int d : cyc) {
      if (d < 0 || std::size_t(d) >= nd || g.vertex_of[d] != -1)
        throw TopologyError("graph: boundary dart list is invalid");
      if (seen[d]++) throw TopologyError("graph: boundary dart repeated");
      ++nboundary;
    }
  for (std::size_t d = 0; d < nd; ++d)
    if (!seen[d]) throw TopologyError("graph: dart neither interior nor boundary");

  // Euler characteristic of the closed-up map: cap each boundary circle with
  // a virtual vertex whose rotation is the reversed boundary cycle.
  std::vector<int> vnext(nd, -1), vvert(nd, -1);
  for (std::size_t d = 0; d < nd; ++d) {
    vnext[d] = g.next[d];
    vvert[d] = g.vertex_of[d];
  }
  int virt = int(g.vertices.size());
  for (const auto& cyc : g.boundary) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      vnext[cyc[i]] = cyc[(i + cyc.size() - 1) % cyc.size()];
      vvert[cyc[i]] = virt;
    }
    ++virt;
  }
  // connected components over darts (via involution + rotation)
  std::vector<int> comp(nd, -1);
  int ncomp = 0;
  for (std::size_t d0 = 0; d0 < nd; ++d0) {
    if (comp[d0] >= 0) continue;
    std::vector<int> stack{int(d0)};
    comp[d0] = ncomp;
    while (!stack.empty()) {
      int d = stack.back();
      stack.pop_back();
      for (int e : {g.partner[d], vnext[d]})
        if (comp[e] < 0) {
          comp[e] = ncomp;
          stack.push_back(e);
        }
    }
    ++ncomp;
  }
  // per component: chi = V - E + F must equal 2
  for (int c = 0; c < ncomp; ++c) {
    std::set<int> verts;
    std::size_t edges = 0;
    for (std::size_t d = 0; d < nd; ++d)
      if (comp[d] == c) {
        verts.insert(vvert[d]);
        ++edges;
      }
    edges /= 2;
    // faces: orbits of d -> vnext[partner[d]]
    std::set<int> unvisited;
    for (std::size_t d = 0; d < nd; ++d)
      if (comp[d] == c) unvisited.insert(int(d));
    std::size_t faces = 0;
    while (!unvisited.empty()) {
      int d0 = *unvisited.begin();
      int d = d0;
      do {
        unvisited.erase(d);
        d = vnext[g.partner[d]];
      } while (d != d0);
      ++faces;
    }
    long chi = long(verts.size()) - long(edges) + long(faces);
    if (chi != 2)
      throw TopologyError("graph: embedding is not planar for the declared ambient");
  }
}

// ---------------------------------------------------------------------------
// evaluation by reduction

namespace {

struct Blob {
  std::vector<int> darts;  // ccw; matches color.labels order
  HomVector color;
  bool alive = true;
};

}  // namespace

HomVector GraphCtx::reduce(const EmbeddedGraph& g, std::uint64_t seed, bool shuffled) const {
  validate_graph(g);
  if (g.ambient != Ambient::Disk)
    throw TopologyError("evaluate: ambient is not a disk (declare a cut first)");
  const HomCtx& H = *hom_;
  const auto& cat = *this->cat();

  std::vector<Blob> blobs;
  std::vector<int> blob_of(g.dart_count(), -1);
  for (const auto& gv : g.vertices) {
    Blob b;
    b.color = gv.color;
    if (gv.start_dart >= 0) {
      int d = gv.start_dart;
      do {
        blob_of[d] = int(blobs.size());
        b.darts.push_back(d);
        d = g.next[d];
      } while (d != gv.start_dart);
    }
    blobs.push_back(std::move(b));
  }

  std::mt19937_64 rng(seed);
  Scalar scalar_factor = H.field()->one();

  auto rotate_blob = [&](Blob& b, std::size_t target_last) {
    // apply z^m so the dart at position target_last ends at the last slot
    std::size_t n = b.darts.size();
    std::size_t m = (n - 1 - target_last + n) % n;
    if (m == 0) return;
    b.color = H.rotate_by(b.color, long(m));
    std::vector<int> nd(n);
    for (std::size_t i = 0; i < n; ++i) nd[(i + m) % n] = b.darts[i];
    b.darts = std::move(nd);
  };

  for (;;) {
    // absorb closed components into the scalar factor
    for (auto& b : blobs)
      if (b.alive && b.darts.empty()) {
        scalar_factor *= H.scalar_value(b.color);
        b.alive = false;
      }
    // candidate moves: (a) inter-blob edges, (b) adjacent self-loop pairs
    struct Move {
      int kind;  // 0 = merge, 1 = self-cap
      int dart;
      std::size_t cost;
    };
    std::vector<Move> moves;
    for (std::size_t bi = 0; bi < blobs.size(); ++bi) {
      const Blob& b = blobs[bi];
      if (!b.alive) continue;
      std::size_t n = b.darts.size();
      for (std::size_t p = 0; p < n; ++p) {
        int d = b.darts[p];
        int q = g.partner[d];
        if (g.vertex_of[q] == -1) continue;  // boundary leg
        int other = blob_of[q];
        if (other != int(bi)) {
          if (d < q) moves.push_back({0, d, blobs[other].darts.size() + n - 2});
        } else if (b.darts[(p + 1) % n] == q) {
          moves.push_back({1, d, n - 2});
        }
      }
    }
    if (moves.empty()) break;
    std::size_t pick = 0;
    if (shuffled) {
      pick = rng() % moves.size();
    } else {
      for (std::size_t i = 1; i < moves.size(); ++i)
        if (std::tie(moves[i].cost, moves[i].dart) < std::tie(moves[pick].cost, moves[pick].dart))
          pick = i;
    }
    const Move mv = moves[pick];
    if (mv.kind == 0) {
      int d = mv.dart, q = g.partner[d];
      Blob& u = blobs[blob_of[d]];
      Blob& v = blobs[blob_of[q]];
      rotate_blob(u, std::find(u.darts.begin(), u.darts.end(), d) - u.darts.begin());
      // bring q to the front of v: the dart before it becomes last
      std::size_t n = v.darts.size();
      std::size_t pos = std::find(v.darts.begin(), v.darts.end(), q) - v.darts.begin();
      rotate_blob(v, (pos + n - 1) % n);
      Blob merged;
      merged.color = H.compose(u.color, v.color);
      merged.darts.assign(u.darts.begin(), u.darts.end() - 1);
      merged.darts.insert(merged.darts.end(), v.darts.begin() + 1, v.darts.end());
      int uid = blob_of[d];
      u = std::move(merged);
      v.alive = false;
      for (int dd : u.darts) blob_of[dd] = uid;
    } else {
      int d = mv.dart, q = g.partner[d];
      Blob& b = blobs[blob_of[d]];
      std::size_t n = b.darts.size();
      std::size_t p = std::find(b.darts.begin(), b.darts.end(), d) - b.darts.begin();
      // rotate so (d, q) sit at (n-2, n-1)
      rotate_blob(b, (p + 1) % n);
      b.color = H.cap(b.color, n - 2);
      b.darts.pop_back();
      b.darts.pop_back();
      (void)q;
    }
  }

  // assembly along the boundary
  const std::vector<int>& bd = g.boundary[0];
  std::vector<Label> expected;
  for (int d : bd) expected.push_back(cat.dual_of(g.color[d]));  // outgoing leg colors
  // position of each interior leg dart in the boundary
  std::map<int, std::size_t> bpos;
  for (std::size_t i = 0; i < bd.size(); ++i) bpos[g.partner[bd[i]]] = i;

  struct Part {
    std::vector<std::size_t> positions;  // increasing boundary positions
    int blob;
  };
  std::vector<Part> parts;
  for (std::size_t bi = 0; bi < blobs.size(); ++bi) {
    Blob& b = blobs[bi];
    if (!b.alive) continue;
    if (b.darts.empty()) continue;
    // all remaining darts are boundary legs
    std::vector<std::size_t> positions;
    for (int d : b.darts) {
      auto it = bpos.find(d);
      if (it == bpos.end()) throw TopologyError("evaluate: reduction left a non-boundary dart");
      positions.push_back(it->second);
    }
    // rotate the blob so its leg positions are increasing
    std::size_t n = positions.size();
    std::size_t start = 0;
    bool found = false;
    for (std::size_t s = 0; s < n && !found; ++s) {
      bool ok = true;
      for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(positions[(s + i) % n] < positions[(s + i + 1) % n])) ok = false;
      if (ok) {
        start = s;
        found = true;
      }
    }
    if (!found)
      throw TopologyError("evaluate: component boundary order is inconsistent");
    if (start != 0) {
      std::size_t m = (n - start) % n;
      b.color = H.rotate_by(b.color, long(m));
      std::vector<int> nd(n);
      for (std::size_t i = 0; i < n; ++i) nd[(i + m) % n] = b.darts[i];
      b.darts = std::move(nd);
    }
    Part part;
    for (int d : b.darts) part.positions.push_back(bpos[d]);
    part.blob = int(bi);
    parts.push_back(std::move(part));
  }
  // components may nest; place each one into the gap it occupies
  std::sort(parts.begin(), parts.end(),
            [](const Part& a, const Part& b) { return a.positions[0] < b.positions[0]; });
  HomVector out = H.zero({});
  out.coef[0] = scalar_factor;
  std::vector<std::size_t> placed;
  for (const auto& part : parts) {
    std::size_t idx = 0;
    while (idx < placed.size() && placed[idx] < part.positions[0]) ++idx;
    if (idx < placed.size() && part.positions.back() > placed[idx])
      throw TopologyError("evaluate: component legs interleave on the boundary");
    out = H.insert(out, idx, blobs[part.blob].color);
    placed.insert(placed.begin() + idx, part.positions.begin(), part.positions.end());
  }
  if (out.labels != expected)
    throw TopologyError("evaluate: assembled boundary does not match declared boundary");
  return out;
}

HomVector GraphCtx::evaluate(const EmbeddedGraph& g) const { return reduce(g, 0, false); }

HomVector GraphCtx::evaluate_shuffled(const EmbeddedGraph& g, std::uint64_t seed) const {
  return reduce(g, seed, true);
}

HomVector GraphCtx::evaluate(const GraphSum& gs) const {
  if (gs.terms.empty()) throw TopologyError("evaluate: empty graph sum");
  HomVector acc;
  bool first = true;
  for (const auto& [coeff, graph] : gs.terms) {
    HomVector v = evaluate(graph);
    if (first) {
      acc = hom_->scaled(v, coeff);
      first = false;
    } else {
      hom_->accumulate(acc, v, coeff);
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// structural operations

EmbeddedGraph GraphCtx::merge_vertices(const EmbeddedGraph& g, int dart) const {
  validate_graph(g);
  int q = g.partner.at(dart);
  int vu = g.vertex_of.at(dart), vv = g.vertex_of.at(q);
  if (vu < 0 || vv < 0) throw TopologyError("merge: dart is a boundary leg");
  if (vu == vv) throw TopologyError("merge: edge is a self-loop");
  const HomCtx& H = *hom_;

  // collect dart cycles starting at the merge darts
  auto cycle_from = [&](int d0) {
    std::vector<int> cyc;
    int d = d0;
    do {
      cyc.push_back(d);
      d = g.next[d];
    } while (d != d0);
    return cyc;
  };
  std::vector<int> ucyc = cycle_from(dart);   // dart first
  std::vector<int> vcyc = cycle_from(q);      // q first
  // rotate colors to match: u with dart last, v with q first
  auto align = [&](const GraphVertex& gv, const std::vector<int>& want) {
    std::vector<int> have = cycle_from(gv.start_dart);
    std::size_t off = std::find(have.begin(), have.end(), want[0]) - have.begin();
    return H.rotate_by(gv.color, -long(off));
  };
  // u: want cycle starting right after dart so dart is last
  std::vector<int> u_cycle = cycle_from(g.next[dart]);
  HomVector ucol = align(g.vertices[vu], u_cycle);
  HomVector vcol = align(g.vertices[vv], vcyc);
  HomVector merged = H.compose(ucol, vcol);

  EmbeddedGraph out;
  out.ambient = g.ambient;
  out.boundary = g.boundary;
  out.partner = g.partner;
  out.next = g.next;
  out.vertex_of = g.vertex_of;
  out.color = g.color;
  out.vertices = g.vertices;
  // new rotation: u's cycle minus dart, then v's cycle minus q
  std::vector<int> newcyc(u_cycle.begin(), u_cycle.end() - 1);
  newcyc.insert(newcyc.end(), vcyc.begin() + 1, vcyc.end());
  int keep = std::min(vu, vv);
  for (std::size_t i = 0; i < newcyc.size(); ++i) {
    out.next[newcyc[i]] = newcyc[(i + 1) % newcyc.size()];
    out.vertex_of[newcyc[i]] = keep;
  }
  GraphVertex gv;
  gv.start_dart = newcyc.empty() ? -1 : newcyc[0];
  gv.color = merged;
  out.vertices[keep] = gv;
  // drop the other vertex and the two darts
  int drop = std::max(vu, vv);
  out.vertices.erase(out.vertices.begin() + drop);
  for (auto& vo : out.vertex_of)
    if (vo > drop) --vo;
  // remove darts `dart` and `q` by compacting indices
  std::vector<int> remap(g.dart_count(), -1);
  int nd = 0;
  for (std::size_t d = 0; d < g.dart_count(); ++d)
    if (int(d) != dart && int(d) != q) remap[d] = nd++;
  EmbeddedGraph res;
  res.ambient = out.ambient;
  res.partner.assign(nd, -1);
  res.next.assign(nd, -1);
  res.vertex_of.assign(nd, -1);
  res.color.assign(nd, 0);
  for (std::size_t d = 0; d < g.dart_count(); ++d) {
    if (remap[d] < 0) continue;
    res.partner[remap[d]] = remap[out.partner[d]];
    res.next[remap[d]] = out.next[d] >= 0 ? remap[out.next[d]] : -1;
    res.vertex_of[remap[d]] = out.vertex_of[d];
    res.color[remap[d]] = out.color[d];
  }
  res.vertices = out.vertices;
  for (auto& vv2 : res.vertices)
    if (vv2.start_dart >= 0) vv2.start_dart = remap[vv2.start_dart];
  res.boundary = out.boundary;
  for (auto& cyc : res.boundary)
    for (auto& d : cyc) d = remap[d];
  return res;
}

GraphSum GraphCtx::expand_colors(const EmbeddedGraph& g, int dart,
                                 const std::vector<SumColorComponent>& comps) const {
  validate_graph(g);
  GraphSum out;
  if (comps.empty()) {
    out.terms.push_back({hom_->field()->one(), g});
    return out;
  }
  int q = g.partner.at(dart);
  int vu = g.vertex_of.at(dart), vv = g.vertex_of.at(q);
  if (vu < 0 || vv < 0) throw TopologyError("expand: dart is a boundary leg");
  for (const auto& comp : comps) {
    EmbeddedGraph term = g;
    term.color[dart] = comp.label;
    term.color[q] = cat()->dual_of(comp.label);
    term.vertices[vu].color = comp.u_color;
    term.vertices[vv].color = comp.v_color;
    validate_graph(term);
    out.terms.push_back({hom_->field()->one(), std::move(term)});
  }
  return out;
}

GraphSum GraphCtx::insert_regular_loop(const EmbeddedGraph& g,
                                       std::optional<int> face_dart) const {
  validate_graph(g);
  if (face_dart && (*face_dart < 0 || std::size_t(*face_dart) >= g.dart_count()))
    throw TopologyError("insert_regular_loop: invalid face reference");
  const auto& cat = *this->cat();
  GraphSum out;
  for (std::size_t i = 0; i < cat.rank(); ++i) {
    EmbeddedGraph term = g;
    int d0 = int(term.dart_count());
    term.partner.push_back(d0 + 1);
    term.partner.push_back(d0);
    term.next.push_back(d0 + 1);
    term.next.push_back(d0);
    term.vertex_of.push_back(int(term.vertices.size()));
    term.vertex_of.push_back(int(term.vertices.size()));
    term.color.push_back(Label(i));
    term.color.push_back(cat.dual_of(Label(i)));
    GraphVertex gv;
    gv.start_dart = d0;
    gv.color = hom_->coev(Label(i));
    term.vertices.push_back(std::move(gv));
    out.terms.push_back({cat.d(Label(i)), std::move(term)});
  }
  return out;
}

bool GraphCtx::edge_crossing_identity_check(const std::vector<Label>& v_summands,
                                            const std::vector<Label>& w_summands,
                                            const std::map<Label, ScalarMatrix>& phi,
                                            Label i) const {
  const HomCtx& H = *hom_;
  const FieldPtr& F = H.field();
  const CatPtr& C = cat();
  Label idual = C->dual_of(i);
  std::vector<std::size_t> vpos, wpos;
  for (std::size_t t = 0; t < v_summands.size(); ++t)
    if (v_summands[t] == i) vpos.push_back(t);
  for (std::size_t t = 0; t < w_summands.size(); ++t)
    if (w_summands[t] == i) wpos.push_back(t);
  auto phi_entry = [&](std::size_t wk, std::size_t vk) -> Scalar {
    auto it = phi.find(i);
    if (it == phi.end()) return F->zero();
    return it->second.at(wk, vk);
  };
  // Evaluates the two-leg path graph [leg- mid vertices -leg] in a disk; each
  // inner vertex is a 2-valent vector in <out_right, out_left>.
  auto path_value = [&](const std::vector<HomVector>& chain) -> HomVector {
    GraphBuilder b(C);
    std::vector<int> ids;
    for (const auto& col : chain) ids.push_back(b.add_vertex(col));
    for (std::size_t t = 0; t + 1 < ids.size(); ++t) b.connect(ids[t], 0, ids[t + 1], 1);
    b.leg(ids.back(), 0, 0);
    b.leg(ids.front(), 1, 0);
    auto g = b.build();
    return evaluate(g);
  };
  // 2-valent vertex for a scalar multiple of the identity on strand x,
  // ports (0: outgoing x, 1: outgoing x*)
  auto strand_vertex = [&](Label x, const Scalar& s) { return H.scaled(H.coev(x), s); };

  std::size_t nv = vpos.size(), nw = wpos.size();
  ScalarMatrix lhs(F, nv, nw), rhs(F, nv, nw);
  // dual bases of the 1-dim spaces <i, i*> and <i*, i>
  const auto& dual_ii = H.dual_basis({i, idual});
  std::size_t n_alpha = dual_ii.size();
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t bidx = 0; bidx < nw; ++bidx) {
      Scalar phi_ab = phi_entry(bidx, a);
      // LHS: sum_alpha  <V -Phi- W -e_alpha- i-leg>  *  <i-leg -e^alpha- W>
      Scalar l = F->zero();
      for (std::size_t al = 0; al < n_alpha; ++al) {
        HomVector e_al = H.basis_vector({i, idual}, al);
        HomVector e_up = dual_ii[al];  // in <i*, i> up to rotation
        HomVector d1 =
            path_value({strand_vertex(i, phi_ab), e_al});  // V-in ... i-out
        HomVector d2 = path_value({H.rotate(e_up)});
        l += d1.coef.at(0) * d2.coef.at(0);
      }
      lhs.at(a, bidx) = l;
      // RHS: sum_beta  <V -e_beta- i-leg>  *  <i-leg -e^beta- V -Phi- W>
      Scalar rr = F->zero();
      for (std::size_t be = 0; be < n_alpha; ++be) {
        HomVector e_be = H.basis_vector({i, idual}, be);
        HomVector e_up = dual_ii[be];
        HomVector d1 = path_value({e_be});
        HomVector d2 = path_value({strand_vertex(i, phi_ab), H.rotate(e_up)});
        rr += d1.coef.at(0) * d2.coef.at(0);
      }
      rhs.at(a, bidx) = rr;
    }
  if (!(lhs == rhs)) return false;
  // both sides equal d_i^{-1} Phi_i (proof of the identity)
  ScalarMatrix expect(F, nv, nw);
  Scalar di_inv = C->d(i).inverse();
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t bidx = 0; bidx < nw; ++bidx)
      expect.at(a, bidx) = di_inv * phi_entry(bidx, a);
  return lhs == expect;
}

std::map<Label, HomVector> GraphCtx::evaluate_annulus_cut(
    const EmbeddedGraph& g, const std::vector<int>& crossed_darts) const {
  validate_graph(g);
  if (g.ambient != Ambient::Annulus)
    throw TopologyError("annulus cut: graph is not an annulus");
  const HomCtx& H = *hom_;
  const CatPtr& C = cat();
  // The cut runs from boundary[0] position 0 to boundary[1] position 0 and
  // crosses the declared darts in order; each listed dart is the end on the
  // side that keeps the cut on its right when walking inward to outward.
  std::map<Label, HomVector> out;
  for (std::size_t cl = 0; cl < C->rank(); ++cl) {
    Label c = Label(cl);
    // bundle labels as seen from the listed-dart side, outermost first
    std::vector<Label> west_labels{c};
    for (auto it = crossed_darts.rbegin(); it != crossed_darts.rend(); ++it)
      west_labels.push_back(C->dual_of(g.color[*it]));
    const TreeSpace& wsp = H.space(west_labels);
    if (wsp.dim() == 0) continue;
    const auto& duals = H.dual_basis(west_labels);
    HomVector acc;
    bool first = true;
    for (std::size_t al = 0; al < wsp.dim(); ++al) {
      // build the cut-open disk with the alpha pair
      EmbeddedGraph disk = g;
      disk.ambient = Ambient::Disk;
      int base = int(disk.dart_count());
      // west vertex: ports (c-stub, crossed stubs outer..inner)
      // east vertex: rotate(dual): ports (crossed stubs inner..outer, c*-stub)
      HomVector west_col = H.basis_vector(west_labels, al);
      HomVector east_col = H.rotate(duals[al]);  // <c*, V_inner..V_outer>... rotated below
      std::size_t m = crossed_darts.size();
      // darts: west vertex gets 1 + m, east vertex 1 + m, plus 2 boundary stubs
      int wv = int(disk.vertices.size());
      int ev = wv + 1;
      std::vector<int> wd(m + 1), ed(m + 1);
      for (std::size_t t = 0; t < m + 1; ++t) wd[t] = base + int(t);
      for (std::size_t t = 0; t < m + 1; ++t) ed[t] = base + int(m + 1 + t);
      int stub_w = base + int(2 * m + 2), stub_e = stub_w + 1;
      disk.partner.resize(stub_e + 1);
      disk.next.resize(stub_e + 1);
      disk.vertex_of.resize(stub_e + 1, -1);
      disk.color.resize(stub_e + 1, 0);
      // west vertex rotation: wd[0] = c-stub, wd[1..m] = crossed edges outer->inner
      for (std::size_t t = 0; t < m + 1; ++t) {
        disk.next[wd[t]] = wd[(t + 1) % (m + 1)];
        disk.vertex_of[wd[t]] = wv;
        disk.color[wd[t]] = west_labels[t];
      }
      // east vertex rotation: ed[0] = c*-stub, ed[1..m] = crossed inner->outer
      std::vector<Label> east_labels{C->dual_of(c)};
      for (int dd : crossed_darts) east_labels.push_back(g.color[dd]);
      for (std::size_t t = 0; t < m + 1; ++t) {
        disk.next[ed[t]] = ed[(t + 1) % (m + 1)];
        disk.vertex_of[ed[t]] = ev;
        disk.color[ed[t]] = east_labels[t];
      }
      // rewire the crossed edges: listed dart stays on its vertex, its old
      // partner connects to the east vertex; the west vertex takes the
      // listed-side stub
      for (std::size_t t = 0; t < m; ++t) {
        int dwest = crossed_darts[t];
        int deast = g.partner[dwest];
        disk.partner[dwest] = wd[m - t];
        disk.partner[wd[m - t]] = dwest;
        disk.partner[deast] = ed[1 + t];
        disk.partner[ed[1 + t]] = deast;
      }
      // boundary stubs for the severed c-edge
      disk.partner[wd[0]] = stub_w;
      disk.partner[stub_w] = wd[0];
      disk.color[stub_w] = C->dual_of(c);
      disk.partner[ed[0]] = stub_e;
      disk.partner[stub_e] = ed[0];
      disk.color[stub_e] = c;
      GraphVertex wgv, egv;
      wgv.start_dart = wd[0];
      wgv.color = west_col;
      egv.start_dart = ed[0];
      // east vertex color must match ccw labels (c*, V_1, ..., V_m):
      // duals[al] lives in <V_m, ..., V_1, c*> reversed-dual order; rotate to
      // bring c* first
      egv.color = east_col;
      disk.vertices.push_back(wgv);
      disk.vertices.push_back(egv);
      // new boundary: inner circle, east stub, reversed outer circle, west stub
      std::vector<int> cycle = g.boundary[0];
      cycle.push_back(stub_e);
      std::vector<int> outer = g.boundary[1];
      std::reverse(outer.begin(), outer.end());
      cycle.insert(cycle.end(), outer.begin(), outer.end());
      cycle.push_back(stub_w);
      disk.boundary.assign(1, cycle);
      HomVector val = evaluate(disk);
      if (first) {
        acc = val;
        first = false;
      } else {
        H.accumulate(acc, val, H.field()->one());
      }
    }
    if (!first && !H.is_zero(acc)) out[c] = std::move(acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON (format sng-1)

std::string save_graph_json(const EmbeddedGraph& g, const FusionCat& cat) {
  Json j;
  j["format"] = "sng-1";
  j["ambient"] = g.ambient == Ambient::Disk ? "disk" : "annulus";
  j["partner"] = g.partner;
  Json next = Json::array();
  for (int d : g.next) next.push_back(d);
  j["next"] = next;
  Json colors = Json::array();
  for (Label c : g.color) colors.push_back(cat.name_of(c));
  j["colors"] = colors;
  Json verts = Json::array();
  for (const auto& v : g.vertices) {
    Json jv;
    jv["start_dart"] = v.start_dart;
    Json labels = Json::array();
    for (Label l : v.color.labels) labels.push_back(cat.name_of(l));
    jv["labels"] = labels;
    Json terms = Json::array();
    for (std::size_t t = 0; t < v.color.coef.size(); ++t) {
      if (v.color.coef[t].is_zero()) continue;
      Json term;
      term["tree"] = t;
      term["coef"] = v.color.coef[t].str();
      terms.push_back(term);
    }
    jv["terms"] = terms;
    verts.push_back(jv);
  }
  j["vertices"] = verts;
  j["boundary"] = g.boundary;
  return j.dump(2) + "\n";
}

EmbeddedGraph load_graph_json(const std::string& text, const CatPtr& cat) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("graph file: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "sng-1")
      throw DataError("graph file: unsupported format tag");
    EmbeddedGraph g;
    g.ambient = j.at("ambient").get<std::string>() == "annulus" ? Ambient::Annulus : Ambient::Disk;
    g.partner = j.at("partner").get<std::vector<int>>();
    g.next = j.at("next").get<std::vector<int>>();
    for (const auto& c : j.at("colors")) g.color.push_back(cat->label(c.get<std::string>()));
    g.vertex_of.assign(g.partner.size(), -1);
    HomCtx hom(cat);
    int vid = 0;
    for (const auto& jv : j.at("vertices")) {
      GraphVertex v;
      v.start_dart = jv.at("start_dart").get<int>();
      std::vector<Label> labels;
      for (const auto& l : jv.at("labels")) labels.push_back(cat->label(l.get<std::string>()));
      v.color = hom.zero(labels);
      for (const auto& term : jv.at("terms"))
        v.color.coef.at(term.at("tree").get<std::size_t>()) =
            parse_scalar(cat->field, term.at("coef").get<std::string>());
      if (v.start_dart >= 0) {
        int d = v.start_dart;
        do {
          g.vertex_of.at(d) = vid;
          d = g.next.at(d);
        } while (d != v.start_dart);
      }
      g.vertices.push_back(std::move(v));
      ++vid;
    }
    g.boundary = j.at("boundary").get<std::vector<std::vector<int>>>();
    return g;
  } catch (const Json::exception& e) {
    throw DataError(std::string("graph file: ") + e.what());
  }
}

}  // namespace stringnet
