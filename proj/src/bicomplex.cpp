#include "pareto/bicomplex.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>

#include "pareto/error.hpp"

namespace pareto {

namespace {

bool simplex_less(const Simplex& x, const Simplex& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

void check_distinct(const std::vector<Rational>& values, const char* name) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    if (values[idx[k]] == values[idx[k + 1]]) {
      std::ostringstream os;
      os << "vertices " << std::min(idx[k], idx[k + 1]) << " and " << std::max(idx[k], idx[k + 1])
         << " share the " << name << " value " << to_string(values[idx[k]]);
      throw Error(ErrorKind::GenericityViolation, os.str());
    }
  }
}

std::optional<Rational> min_positive_gap(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  std::optional<Rational> best;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    Rational d = values[i + 1] - values[i];
    if (d > 0 && (!best || d < *best)) best = d;
  }
  return best;
}

std::vector<Rational> sums(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  std::vector<Rational> s(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) s[i] = f[i] + g[i];
  return s;
}

// Result of reducing a boundary matrix over GF(2). Columns and rows are
// positions in a face-respecting order.
struct Reduced {
  std::vector<int> low;  // -1 for a zero column
};

Reduced reduce(std::vector<std::vector<int>> columns) {
  Reduced r;
  r.low.assign(columns.size(), -1);
  std::vector<int> owner(columns.size(), -1);
  std::vector<int> scratch;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    auto& col = columns[j];
    while (!col.empty()) {
      int pivot = col.back();
      int k = owner[static_cast<std::size_t>(pivot)];
      if (k < 0) break;
      const auto& other = columns[static_cast<std::size_t>(k)];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      r.low[j] = col.back();
      owner[static_cast<std::size_t>(col.back())] = static_cast<int>(j);
    }
  }
  return r;
}

std::vector<std::vector<int>> boundary_columns(const BifilteredComplex& K, const std::vector<int>& order) {
  std::vector<int> pos(K.num_simplices(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> cols(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int face : K.facets(static_cast<std::size_t>(order[i]))) {
      int p = pos[static_cast<std::size_t>(face)];
      if (p < 0 || static_cast<std::size_t>(p) >= i)
        throw Error(ErrorKind::InvalidInput, "order is not face-respecting");
      cols[i].push_back(p);
    }
    std::sort(cols[i].begin(), cols[i].end());
  }
  return cols;
}

}  // namespace

void check_genericity(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::InvalidInput, "f and g have different lengths");
  check_distinct(f, "f");
  check_distinct(g, "g");
  check_distinct(sums(f, g), "f+g");
}

Perturbation perturb_by_index(const std::vector<Rational>& f, const std::vector<Rational>& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::InvalidInput, "f and g have different lengths");
  Rational gap(1);
  for (const auto& values : {f, g, sums(f, g)}) {
    if (auto d = min_positive_gap(values); d && *d < gap) gap = *d;
  }
  Perturbation p;
  p.eta = gap / (4 * static_cast<long>(std::max<std::size_t>(f.size(), 1)));
  p.f = f;
  p.g = g;
  for (std::size_t i = 0; i < f.size(); ++i) {
    p.f[i] += p.eta * static_cast<long>(i);
    p.g[i] += p.eta * static_cast<long>(i);
  }
  return p;
}

BifilteredComplex::BifilteredComplex(std::vector<Rational> f, std::vector<Rational> g,
                                     std::vector<Simplex> simplices)
    : f_(std::move(f)), g_(std::move(g)), simplices_(std::move(simplices)) {
  if (f_.empty()) throw Error(ErrorKind::InvalidInput, "complex has no vertices");
  check_genericity(f_, g_);
  const int n = static_cast<int>(f_.size());
  for (auto& s : simplices_) {
    if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty simplex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw Error(ErrorKind::InvalidInput, "simplex repeats a vertex");
    if (s.front() < 0 || s.back() >= n) throw Error(ErrorKind::InvalidInput, "simplex vertex out of range");
  }
  std::sort(simplices_.begin(), simplices_.end(), simplex_less);
  simplices_.erase(std::unique(simplices_.begin(), simplices_.end()), simplices_.end());

  facets_.resize(simplices_.size());
  fmax_.resize(simplices_.size());
  gmax_.resize(simplices_.size());
  std::vector<bool> seen_vertex(f_.size(), false);
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const Simplex& s = simplices_[i];
    dimension_ = std::max(dimension_, static_cast<int>(s.size()) - 1);
    fmax_[i] = f_[static_cast<std::size_t>(s.front())];
    gmax_[i] = g_[static_cast<std::size_t>(s.front())];
    for (int v : s) {
      fmax_[i] = max(fmax_[i], f_[static_cast<std::size_t>(v)]);
      gmax_[i] = max(gmax_[i], g_[static_cast<std::size_t>(v)]);
    }
    if (s.size() == 1) {
      seen_vertex[static_cast<std::size_t>(s.front())] = true;
      continue;
    }
    for (std::size_t drop = s.size(); drop-- > 0;) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != drop) face.push_back(s[j]);
      auto idx = find(face);
      if (!idx) throw Error(ErrorKind::InvalidInput, "complex is not closed under faces");
      facets_[i].push_back(static_cast<int>(*idx));
    }
  }
  for (std::size_t v = 0; v < seen_vertex.size(); ++v)
    if (!seen_vertex[v]) throw Error(ErrorKind::InvalidInput, "vertex " + std::to_string(v) + " is not a simplex");
}

BifilteredComplex BifilteredComplex::from_top_simplices(std::vector<Rational> f, std::vector<Rational> g,
                                                        const std::vector<Simplex>& tops) {
  std::set<Simplex> all;
  for (int v = 0; v < static_cast<int>(f.size()); ++v) all.insert({v});
  for (Simplex s : tops) {
    std::sort(s.begin(), s.end());
    if (s.size() > 20) throw Error(ErrorKind::InvalidInput, "simplex dimension too large");
    const unsigned full = 1u << s.size();
    for (unsigned mask = 1; mask < full; ++mask) {
      Simplex face;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (mask & (1u << j)) face.push_back(s[j]);
      all.insert(std::move(face));
    }
  }
  return BifilteredComplex(std::move(f), std::move(g), std::vector<Simplex>(all.begin(), all.end()));
}

std::optional<std::size_t> BifilteredComplex::find(const Simplex& s) const {
  auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s, simplex_less);
  if (it == simplices_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - simplices_.begin());
}

std::vector<Rational> BifilteredComplex::all_values() const {
  std::vector<Rational> v = f_;
  v.insert(v.end(), g_.begin(), g_.end());
  return v;
}

SliceComplex slice(const BifilteredComplex& K, const PlanePoint& c) {
  SliceComplex S{&K, c, {}};
  for (std::size_t i = 0; i < K.num_simplices(); ++i)
    if (K.f_max(i) <= c.a && K.g_max(i) <= c.b) S.simplices.push_back(static_cast<int>(i));
  return S;
}

std::vector<int> betti_of_subset(const BifilteredComplex& K, const std::vector<int>& simplices) {
  const int top = std::max(K.dimension(), 0);
  std::vector<int> b(static_cast<std::size_t>(top) + 1, 0);
  Reduced r = reduce(boundary_columns(K, simplices));
  for (std::size_t j = 0; j < simplices.size(); ++j) {
    int d = K.dim(static_cast<std::size_t>(simplices[j]));
    if (r.low[j] < 0) {
      ++b[static_cast<std::size_t>(d)];
    } else {
      --b[static_cast<std::size_t>(d - 1)];
    }
  }
  return b;
}

std::vector<int> betti_vector(const SliceComplex& S) { return betti_of_subset(*S.parent, S.simplices); }

int betti(const SliceComplex& S, int k) {
  if (k < 0 || k > S.parent->dimension()) return 0;
  return betti_vector(S)[static_cast<std::size_t>(k)];
}

std::vector<int> CurveFiltration::prefix(const Rational& t) const {
  std::vector<int> out;
  for (const auto& e : entries) {
    if (e.height > t) break;
    out.push_back(e.simplex);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CurveFiltration curve_filtration(const BifilteredComplex& K, const MonotoneCurve& c) {
  const PlanePoint& lo = c.front();
  const PlanePoint& hi = c.back();
  std::vector<Rational> vertex_entry(K.num_vertices());
  for (std::size_t v = 0; v < K.num_vertices(); ++v) {
    const Rational& fv = K.f(static_cast<int>(v));
    const Rational& gv = K.g(static_cast<int>(v));
    if (fv > hi.a || gv > hi.b)
      throw Error(ErrorKind::CurveTooShort, "vertex " + std::to_string(v) + " never enters the filtration");
    Rational hf = fv <= lo.a ? c.h_min() : c.height_at_f(fv);
    Rational hg = gv <= lo.b ? c.h_min() : c.height_at_g(gv);
    vertex_entry[v] = max(hf, hg);
  }
  CurveFiltration F{c, {}};
  F.entries.reserve(K.num_simplices());
  for (std::size_t i = 0; i < K.num_simplices(); ++i) {
    Rational h = vertex_entry[static_cast<std::size_t>(K.simplex(i).front())];
    for (int v : K.simplex(i)) h = max(h, vertex_entry[static_cast<std::size_t>(v)]);
    F.entries.push_back({static_cast<int>(i), h});
  }
  std::stable_sort(F.entries.begin(), F.entries.end(),
                   [](const CurveFiltration::Entry& x, const CurveFiltration::Entry& y) { return x.height < y.height; });
  return F;
}

Diagram persistence_of_order(const BifilteredComplex& K, const std::vector<int>& order,
                             const std::vector<Rational>& heights) {
  if (order.size() != heights.size()) throw Error(ErrorKind::InvalidInput, "order and heights differ in length");
  Reduced r = reduce(boundary_columns(K, order));
  std::vector<int> killer(order.size(), -1);
  for (std::size_t j = 0; j < order.size(); ++j)
    if (r.low[j] >= 0) killer[static_cast<std::size_t>(r.low[j])] = static_cast<int>(j);
  Diagram D;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (r.low[i] >= 0) continue;  // destroys a class
    Bar bar;
    bar.dim = K.dim(static_cast<std::size_t>(order[i]));
    bar.birth = heights[i];
    bar.birth_simplex = order[i];
    if (killer[i] >= 0) {
      const auto j = static_cast<std::size_t>(killer[i]);
      if (heights[j] == heights[i]) continue;
      bar.death = heights[j];
      bar.death_simplex = order[j];
    }
    D.bars.push_back(std::move(bar));
  }
  return D;
}

Diagram persistence(const BifilteredComplex& K, const CurveFiltration& F) {
  std::vector<int> order;
  std::vector<Rational> heights;
  order.reserve(F.entries.size());
  heights.reserve(F.entries.size());
  for (const auto& e : F.entries) {
    order.push_back(e.simplex);
    heights.push_back(e.height);
  }
  return persistence_of_order(K, order, heights);
}

int inclusion_rank(const BifilteredComplex& K, const PlanePoint& c1, const PlanePoint& c2, int k) {
  if (!precedes(c1, c2)) {
    std::ostringstream os;
    os << c1 << " does not precede " << c2;
    throw Error(ErrorKind::NotComparable, os.str());
  }
  SliceComplex s1 = slice(K, c1);
  SliceComplex s2 = slice(K, c2);
  std::vector<int> order = s1.simplices;
  std::vector<Rational> heights(order.size(), Rational(0));
  std::set_difference(s2.simplices.begin(), s2.simplices.end(), s1.simplices.begin(), s1.simplices.end(),
                      std::back_inserter(order));
  heights.resize(order.size(), Rational(1));
  Diagram D = persistence_of_order(K, order, heights);
  int rank = 0;
  for (const Bar& b : D.bars)
    if (b.dim == k && b.birth == 0 && !b.death) ++rank;
  return rank;
}

}  // namespace pareto
