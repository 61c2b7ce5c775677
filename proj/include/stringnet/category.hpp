#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stringnet/matrix.hpp"

namespace stringnet {

using Label = int;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One F-block F[a,b,c;d]: the change of basis on Hom(d, a (x) b (x) c)
/// between the left-comb splitting basis indexed by (e,mu,nu) and the
/// right-fused basis indexed by (f,gamma,delta).
struct FTriple {
  Label x;
  int m1, m2;
  bool operator<(const FTriple& o) const {
    return std::tie(x, m1, m2) < std::tie(o.x, o.m1, o.m2);
  }
  bool operator==(const FTriple& o) const {
    return x == o.x && m1 == o.m1 && m2 == o.m2;
  }
};

struct FBlock {
  std::vector<FTriple> rows;  // (e, mu, nu): e in a(x)b, then e(x)c -> d
  std::vector<FTriple> cols;  // (f, gamma, delta): f in b(x)c, then a(x)f -> d
  ScalarMatrix mat;           // rows x cols
  ScalarMatrix inv;           // cols x rows
  int row_of(const FTriple& t) const;
  int col_of(const FTriple& t) const;
};

/// Skeletal data of a spherical fusion category.
class FusionCat {
 public:
  FusionCat() = default;
  FusionCat(const FusionCat& o)
      : name(o.name),
        simple_names(o.simple_names),
        unit(o.unit),
        dual(o.dual),
        fusion(o.fusion),
        qdim(o.qdim),
        sqrt_qdim(o.sqrt_qdim),
        fs_indicator(o.fs_indicator),
        field(o.field),
        f_entries(o.f_entries) {}

  std::string name;
  std::vector<std::string> simple_names;
  Label unit = 0;
  std::vector<Label> dual;
  std::vector<std::vector<std::vector<int>>> fusion;  // N[i][j][k]
  std::vector<Scalar> qdim;
  std::vector<Scalar> sqrt_qdim;
  std::vector<int> fs_indicator;  // +-1; +1 unless declared for a self-dual label
  FieldPtr field;
  // sparse F entries keyed by (a,b,c,d,e,f, mu,nu,gamma,delta); blocks with a
  // unit among a,b,c are implicitly identity and not stored
  std::map<std::array<int, 10>, Scalar> f_entries;

  std::size_t rank() const { return simple_names.size(); }
  int n(Label i, Label j, Label k) const { return fusion[i][j][k]; }
  Label dual_of(Label i) const { return dual[i]; }
  const Scalar& d(Label i) const { return qdim[i]; }
  const Scalar& sqrt_d(Label i) const { return sqrt_qdim[i]; }
  Label label(const std::string& nm) const;
  const std::string& name_of(Label i) const { return simple_names[i]; }

  Scalar total_dim_squared() const;

  /// F-block with cached inverse; identity when a, b or c is the unit.
  const FBlock& f_block(Label a, Label b, Label c, Label d) const;
  /// Scalar used when an adjacent (x, x*) pair is contracted; equals
  /// kappa_x * d_x for valid spherical data.
  const Scalar& cap_scalar(Label x) const;

  /// All k with n(i,j,k) > 0.
  const std::vector<Label>& channels(Label i, Label j) const;

  void finalize();  // builds caches; called by loaders

 private:
  mutable std::map<std::array<int, 4>, FBlock> f_cache_;
  mutable std::map<Label, Scalar> cap_cache_;
  mutable std::vector<std::vector<std::vector<Label>>> channel_cache_;
  mutable std::mutex mu_;
  Scalar f_entry(Label a, Label b, Label c, Label d, const FTriple& row,
                 const FTriple& col) const;
};

using CatPtr = std::shared_ptr<const FusionCat>;

struct CheckResult {
  std::string check;
  bool pass;
  std::string witness;  // empty when passing
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Runs every structural, dimension, pentagon and sphericality check.
ValidationReport validate(const FusionCat& cat);

/// Built-in category data; name one of vec_z2, vec_z3, fibonacci, ising.
CatPtr builtin(const std::string& name);

CatPtr load_category_json(const std::string& text);
CatPtr load_category_file(const std::string& path);
std::string save_category_json(const FusionCat& cat);

}  // namespace stringnet
