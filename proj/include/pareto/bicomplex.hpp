#ifndef PARETO_BICOMPLEX_HPP
#define PARETO_BICOMPLEX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "pareto/curve.hpp"
#include "pareto/plane.hpp"
#include "pareto/rational.hpp"

namespace pareto {

/// Sorted list of vertex indices.
using Simplex = std::vector<int>;

/// Finite simplicial complex with two generic vertex fields f and g.
///
/// Simplices are stored sorted by (dimension, lexicographic vertex list), which
/// is also the deterministic tie-break order used by every filtration.
class BifilteredComplex {
public:
  BifilteredComplex() = default;

  /// Takes every simplex explicitly. Throws InvalidInput when a face is
  /// missing or an index is out of range, GenericityViolation when two
  /// vertices share an f, g or f+g value.
  BifilteredComplex(std::vector<Rational> f, std::vector<Rational> g, std::vector<Simplex> simplices);

  /// Builds the face closure of the given top simplices first.
  static BifilteredComplex from_top_simplices(std::vector<Rational> f, std::vector<Rational> g,
                                              const std::vector<Simplex>& tops);

  std::size_t num_vertices() const { return f_.size(); }
  std::size_t num_simplices() const { return simplices_.size(); }
  int dimension() const { return dimension_; }

  const Rational& f(int v) const { return f_[static_cast<std::size_t>(v)]; }
  const Rational& g(int v) const { return g_[static_cast<std::size_t>(v)]; }
  const std::vector<Rational>& f_values() const { return f_; }
  const std::vector<Rational>& g_values() const { return g_; }

  const std::vector<Simplex>& simplices() const { return simplices_; }
  const Simplex& simplex(std::size_t i) const { return simplices_[i]; }
  int dim(std::size_t i) const { return static_cast<int>(simplices_[i].size()) - 1; }
  /// Indices of the codimension-one faces of simplex i.
  const std::vector<int>& facets(std::size_t i) const { return facets_[i]; }
  /// Largest f (resp. g) value over the vertices of simplex i.
  const Rational& f_max(std::size_t i) const { return fmax_[i]; }
  const Rational& g_max(std::size_t i) const { return gmax_[i]; }

  std::optional<std::size_t> find(const Simplex& s) const;

  /// All f and g values together; used to size the enclosing box.
  std::vector<Rational> all_values() const;

  friend bool operator==(const BifilteredComplex& x, const BifilteredComplex& y) {
    return x.f_ == y.f_ && x.g_ == y.g_ && x.simplices_ == y.simplices_;
  }

private:
  std::vector<Rational> f_;
  std::vector<Rational> g_;
  std::vector<Simplex> simplices_;
  std::vector<std::vector<int>> facets_;
  std::vector<Rational> fmax_;
  std::vector<Rational> gmax_;
  int dimension_ = -1;
};

/// Throws GenericityViolation unless f, g and f+g each have pairwise distinct
/// values.
void check_genericity(const std::vector<Rational>& f, const std::vector<Rational>& g);

/// Opt-in genericity repair: adds i*eta to f_i and to g_i. The step eta is
/// chosen below a quarter of the smallest positive gap divided by the vertex
/// count, so existing strict orders are kept and every tie is broken by the
/// vertex index.
struct Perturbation {
  std::vector<Rational> f;
  std::vector<Rational> g;
  Rational eta;
};
Perturbation perturb_by_index(const std::vector<Rational>& f, const std::vector<Rational>& g);

/// Full subcomplex of a bifiltered complex on the vertices below c.
struct SliceComplex {
  const BifilteredComplex* parent = nullptr;
  PlanePoint c;
  /// Indices into parent->simplices(), increasing.
  std::vector<int> simplices;
};

SliceComplex slice(const BifilteredComplex& K, const PlanePoint& c);

/// Betti number over GF(2); 0 for k outside [0, dim].
int betti(const SliceComplex& S, int k);

/// Betti numbers in dimensions 0..K.dimension().
std::vector<int> betti_vector(const SliceComplex& S);

/// Betti numbers of the subcomplex formed by the listed simplices (which must
/// be closed under faces), dimensions 0..K.dimension().
std::vector<int> betti_of_subset(const BifilteredComplex& K, const std::vector<int>& simplices);

/// Filtration induced by an increasing curve.
struct CurveFiltration {
  MonotoneCurve curve;
  struct Entry {
    int simplex;
    Rational height;
  };
  /// Sorted by (height, dimension, lexicographic vertices).
  std::vector<Entry> entries;

  /// Simplex indices (increasing) that have entered by height t.
  std::vector<int> prefix(const Rational& t) const;
};

/// Throws CurveTooShort when some simplex never enters.
CurveFiltration curve_filtration(const BifilteredComplex& K, const MonotoneCurve& c);

struct Bar {
  int dim = 0;
  Rational birth;
  std::optional<Rational> death;  // nullopt: essential bar
  int birth_simplex = -1;
  int death_simplex = -1;

  bool alive_at(const Rational& t) const { return birth <= t && (!death || t < *death); }
};

struct Diagram {
  /// Ordered by the filtration position of the creating simplex.
  std::vector<Bar> bars;
};

/// Standard GF(2) column reduction. Zero-length bars are dropped.
Diagram persistence(const BifilteredComplex& K, const CurveFiltration& F);

/// Persistence of an arbitrary face-respecting order with heights.
Diagram persistence_of_order(const BifilteredComplex& K, const std::vector<int>& order,
                             const std::vector<Rational>& heights);

/// Rank of H_k(slice(c1)) -> H_k(slice(c2)). Throws NotComparable unless c1
/// precedes c2.
int inclusion_rank(const BifilteredComplex& K, const PlanePoint& c1, const PlanePoint& c2, int k);

}  // namespace pareto

#endif  // PARETO_BICOMPLEX_HPP
