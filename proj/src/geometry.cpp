#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>
#include <boost/geometry.hpp>
#include <boost/geometry/index/rtree.hpp>

#include "topsurg/error.hpp"
#include "topsurg/morse.hpp"

namespace topsurg {

namespace {

namespace bg = boost::geometry;
namespace bgi = boost::geometry::index;

using Vec = std::vector<double>;

double dist2(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

template <int D>
double max_nn_rtree(const std::vector<Vec>& pts, const std::vector<int>& queries) {
  using Point = bg::model::point<double, D, bg::cs::cartesian>;
  using Value = std::pair<Point, std::size_t>;
  std::vector<Value> values;
  values.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point p;
    [&]<std::size_t... J>(std::index_sequence<J...>) { (bg::set<J>(p, pts[i][J]), ...); }(std::make_index_sequence<D>{});
    values.emplace_back(p, i);
  }
  const bgi::rtree<Value, bgi::linear<8>> tree(values.begin(), values.end());
  double worst = 0;
  std::vector<Value> hits;
  for (int q : queries) {
    const auto& [p, i] = values[q];
    hits.clear();
    tree.query(bgi::nearest(p, 2), std::back_inserter(hits));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& h : hits)
      if (h.second != i) best = std::min(best, dist2(pts[i], pts[h.second]));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double max_nn_brute(const std::vector<Vec>& pts, const std::vector<int>& queries) {
  double worst = 0;
  for (std::size_t i : queries) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != i) best = std::min(best, dist2(pts[i], pts[k]));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

// Calls visit(a, b) for every pair of occupied cells a < b whose boxes come
// within reach of each other.
template <int D, typename Visit>
void cell_pairs_rtree(const std::vector<std::vector<long long>>& keys, double side, double reach,
                      Visit&& visit) {
  using Point = bg::model::point<double, D, bg::cs::cartesian>;
  using Box = bg::model::box<Point>;
  using Value = std::pair<Box, int>;
  const auto make_box = [&](const std::vector<long long>& k, double pad) {
    Point lo, hi;
    [&]<std::size_t... J>(std::index_sequence<J...>) {
      (bg::set<J>(lo, k[J] * side - pad), ...);
      (bg::set<J>(hi, (k[J] + 1) * side + pad), ...);
    }(std::make_index_sequence<D>{});
    return Box(lo, hi);
  };
  std::vector<Value> values;
  values.reserve(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) values.emplace_back(make_box(keys[c], 0), static_cast<int>(c));
  const bgi::rtree<Value, bgi::rstar<16>> tree(values.begin(), values.end());
  std::vector<Value> hits;
  for (std::size_t c = 0; c < keys.size(); ++c) {
    hits.clear();
    tree.query(bgi::intersects(make_box(keys[c], reach)), std::back_inserter(hits));
    for (const auto& h : hits)
      if (h.second > static_cast<int>(c)) visit(static_cast<int>(c), h.second);
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Uniform grid over a cloud of dimension <= 4 with cell coordinates packed
// into 16 bits each. Points are stored sorted by cell.
class Grid {
 public:
  static constexpr int kMaxDim = 4;
  static constexpr long long kSpan = 1 << 16;

  static std::optional<Grid> build(const std::vector<Vec>& pts, int dim, double side) {
    if (dim < 1 || dim > kMaxDim || !(side > 0) || pts.empty()) return std::nullopt;
    Grid g;
    g.dim_ = dim;
    g.side_ = side;
    g.origin_.assign(dim, std::numeric_limits<double>::infinity());
    Vec top(dim, -std::numeric_limits<double>::infinity());
    for (const auto& p : pts)
      for (int j = 0; j < dim; ++j) {
        g.origin_[j] = std::min(g.origin_[j], p[j]);
        top[j] = std::max(top[j], p[j]);
      }
    for (int j = 0; j < dim; ++j) {
      // Two spare cells each side so neighbour offsets never wrap.
      g.origin_[j] -= 2 * side;
      if ((top[j] - g.origin_[j]) / side + 3 >= static_cast<double>(kSpan)) return std::nullopt;
    }
    std::vector<std::uint64_t> key(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::uint64_t k = 0;
      for (int j = 0; j < dim; ++j)
        k = (k << 16) | static_cast<std::uint64_t>(std::floor((pts[i][j] - g.origin_[j]) / side));
      key[i] = k;
    }
    g.order_.resize(pts.size());
    std::iota(g.order_.begin(), g.order_.end(), 0);
    std::sort(g.order_.begin(), g.order_.end(), [&](int a, int b) { return key[a] < key[b]; });
    g.ids_.reserve(pts.size());
    for (std::size_t s = 0; s < g.order_.size();) {
      std::size_t e = s;
      while (e < g.order_.size() && key[g.order_[e]] == key[g.order_[s]]) ++e;
      g.ids_.emplace(key[g.order_[s]], static_cast<int>(g.cells_.size()));
      g.cells_.push_back(key[g.order_[s]]);
      g.starts_.push_back(static_cast<int>(s));
      s = e;
    }
    g.starts_.push_back(static_cast<int>(pts.size()));
    return g;
  }

  int dim() const { return dim_; }
  const std::vector<std::uint64_t>& cells() const { return cells_; }
  std::uint64_t cell_of(const Vec& p) const {
    std::uint64_t k = 0;
    for (int j = 0; j < dim_; ++j) k = (k << 16) | static_cast<std::uint64_t>(std::floor((p[j] - origin_[j]) / side_));
    return k;
  }
  // Index into cells(), or -1 when unoccupied.
  int id(std::uint64_t cell) const {
    const auto it = ids_.find(cell);
    return it == ids_.end() ? -1 : it->second;
  }
  std::span<const int> members_of(int id) const {
    return std::span<const int>(order_).subspan(starts_[id], starts_[id + 1] - starts_[id]);
  }
  std::span<const int> members(std::uint64_t cell) const {
    const int c = id(cell);
    return c < 0 ? std::span<const int>() : members_of(c);
  }
  struct Offset {
    std::int64_t packed;
    int norm2;  // squared length in cells
    int gap2;   // squared gap between the two cells, in cells
  };
  // Every cell offset within `reach` cells per axis, nearest first.
  std::vector<Offset> offsets(int reach) const {
    std::vector<Offset> out{{0, 0, 0}};
    for (int j = 0; j < dim_; ++j) {
      std::vector<Offset> next;
      for (const auto& o : out)
        for (int s = -reach; s <= reach; ++s) {
          const int g = std::max(std::abs(s) - 1, 0);
          next.push_back({o.packed * kSpan + s, o.norm2 + s * s, o.gap2 + g * g});
        }
      out = std::move(next);
    }
    std::stable_sort(out.begin(), out.end(), [](const Offset& a, const Offset& b) { return a.norm2 < b.norm2; });
    return out;
  }

 private:
  int dim_ = 0;
  double side_ = 0;
  Vec origin_;
  std::vector<int> order_;
  std::vector<std::uint64_t> cells_;
  std::vector<int> starts_;
  std::unordered_map<std::uint64_t, int> ids_;
};

// Exact maximum nearest-neighbour distance using cells of side h: a neighbour
// found inside the 3^d block within h is the true nearest one. Points with no
// such neighbour are returned for a slower search.
void max_nn_grid(const std::vector<Vec>& pts, const Grid& g, double h, const std::vector<int>& queries,
                 double& worst, std::vector<int>& unresolved) {
  const auto offs = g.offsets(1);
  const double h2 = h * h;
  for (int i : queries) {
    const auto home = static_cast<std::int64_t>(g.cell_of(pts[i]));
    double best = std::numeric_limits<double>::infinity();
    // Stops once below the running maximum: this point cannot raise it.
    for (std::size_t c = 0; c < offs.size() && best > worst; ++c)
      for (int k : g.members(static_cast<std::uint64_t>(home + offs[c].packed))) {
        if (k == i) continue;
        best = std::min(best, dist2(pts[i], pts[k]));
        if (best <= worst) break;
      }
    if (best > h2) unresolved.push_back(i);
    else worst = std::max(worst, best);
  }
}

using CellKey = std::vector<long long>;

struct CellHash {
  std::size_t operator()(const CellKey& k) const { return boost::hash_range(k.begin(), k.end()); }
};

// Components over a grid of side r/sqrt(d), so points sharing a cell are
// always linked and only cell pairs need checking.
std::size_t count_components_grid(const std::vector<Vec>& pts, const Grid& g, double side, double r) {
  const int d = g.dim();
  const double r2 = r * r;
  const std::size_t cells = g.cells().size();
  std::vector<Vec> lo(cells, Vec(d, std::numeric_limits<double>::infinity()));
  std::vector<Vec> hi(cells, Vec(d, -std::numeric_limits<double>::infinity()));
  for (std::size_t c = 0; c < cells; ++c)
    for (int p : g.members_of(static_cast<int>(c)))
      for (int j = 0; j < d; ++j) {
        lo[c][j] = std::min(lo[c][j], pts[p][j]);
        hi[c][j] = std::max(hi[c][j], pts[p][j]);
      }
  const auto linked = [&](int a, int b) {
    double gap2 = 0, span2 = 0;
    for (int j = 0; j < d; ++j) {
      const double gap = std::max({0.0, lo[a][j] - hi[b][j], lo[b][j] - hi[a][j]});
      const double span = std::max(hi[a][j] - lo[b][j], hi[b][j] - lo[a][j]);
      gap2 += gap * gap;
      span2 += span * span;
    }
    if (gap2 > r2) return false;
    if (span2 <= r2) return true;
    for (int p : g.members_of(a))
      for (int q : g.members_of(b))
        if (dist2(pts[p], pts[q]) <= r2) return true;
    return false;
  };

  const int reach = static_cast<int>(std::ceil(r / side - 1e-12));
  std::vector<Grid::Offset> half;
  for (const auto& o : g.offsets(reach))
    if (o.packed > 0 && o.gap2 * side * side <= r2) half.push_back(o);
  UnionFind uf(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto home = static_cast<std::int64_t>(g.cells()[c]);
    for (const auto& o : half) {
      const int b = g.id(static_cast<std::uint64_t>(home + o.packed));
      if (b >= 0 && uf.find(static_cast<int>(c)) != uf.find(b) && linked(static_cast<int>(c), b))
        uf.unite(static_cast<int>(c), b);
    }
  }
  std::size_t count = 0;
  for (std::size_t c = 0; c < cells; ++c)
    if (uf.find(static_cast<int>(c)) == static_cast<int>(c)) ++count;
  return count;
}

void check_cloud(const PointCloud& cloud) {
  for (const auto& p : cloud.points) {
    if (static_cast<int>(p.size()) != cloud.dim) {
      throw Error(ErrorKind::DimensionMismatch, "point length differs from the cloud dimension");
    }
    for (double v : p)
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite coordinate");
  }
}

// Householder reflection taking the unit vector pole to the last axis.
struct Reflection {
  Vec v;  // empty means identity
  double vv = 0;

  explicit Reflection(const Vec& pole) {
    v = pole;
    v.back() -= 1;
    vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
    if (vv < 1e-30) v.clear();
  }

  Vec apply(const Vec& x) const {
    if (v.empty()) return x;
    const double s = 2 * std::inner_product(v.begin(), v.end(), x.begin(), 0.0) / vv;
    Vec y = x;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] -= s * v[j];
    return y;
  }
};

void check_pole(const Vec& pole, int dim) {
  if (static_cast<int>(pole.size()) != dim) {
    throw Error(ErrorKind::DimensionMismatch, "pole dimension differs from the sphere's ambient dimension");
  }
  if (dim < 1) throw Error(ErrorKind::DimensionMismatch, "sphere needs ambient dimension >= 1");
  if (std::abs(std::sqrt(dist2(pole, Vec(pole.size(), 0.0))) - 1) > tol::kSphere) {
    throw Error(ErrorKind::NotOnSphere, "pole is not a unit vector");
  }
}

}  // namespace

double max_nearest_neighbor_spacing(const PointCloud& cloud) {
  check_cloud(cloud);
  const auto& pts = cloud.points;
  if (pts.size() < 2) return 0;
  std::vector<int> queries(pts.size());
  std::iota(queries.begin(), queries.end(), 0);
  double worst = 0;

  if (cloud.dim >= 1 && cloud.dim <= Grid::kMaxDim) {
    // Level sets are hypersurfaces, so spacing scales like n^(-1/(dim-1)).
    double extent = 0;
    for (int j = 0; j < cloud.dim; ++j) {
      const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                                [j](const Vec& a, const Vec& b) { return a[j] < b[j]; });
      extent = std::max(extent, (*hi)[j] - (*lo)[j]);
    }
    const double n = static_cast<double>(pts.size());
    double h = 2 * extent * (cloud.dim > 1 ? std::pow(n, -1.0 / (cloud.dim - 1)) : 1 / n);
    for (int round = 0; round < 6 && !queries.empty() && h > 0; ++round, h *= 2) {
      auto grid = Grid::build(pts, cloud.dim, h);
      // Crowded cells make the block scan quadratic; refine first.
      for (int refine = 0; round == 0 && refine < 3 && grid && grid->cells().size() * 8 < pts.size(); ++refine) {
        h /= 2;
        grid = Grid::build(pts, cloud.dim, h);
      }
      if (!grid) break;
      std::vector<int> unresolved;
      max_nn_grid(pts, *grid, h, queries, worst, unresolved);
      queries = std::move(unresolved);
      if (queries.size() * 50 < pts.size()) break;
    }
    if (queries.empty()) return std::sqrt(worst);
  }

  double rest = 0;
  switch (cloud.dim) {
    case 1: rest = max_nn_rtree<1>(pts, queries); break;
    case 2: rest = max_nn_rtree<2>(pts, queries); break;
    case 3: rest = max_nn_rtree<3>(pts, queries); break;
    case 4: rest = max_nn_rtree<4>(pts, queries); break;
    case 5: rest = max_nn_rtree<5>(pts, queries); break;
    case 6: rest = max_nn_rtree<6>(pts, queries); break;
    case 7: rest = max_nn_rtree<7>(pts, queries); break;
    case 8: rest = max_nn_rtree<8>(pts, queries); break;
    default: rest = max_nn_brute(pts, queries);
  }
  return std::max(std::sqrt(worst), rest);
}

double default_link_radius(const PointCloud& cloud) { return 2 * max_nearest_neighbor_spacing(cloud); }

std::size_t count_components(const PointCloud& cloud, double link_radius) {
  if (!(link_radius > 0)) throw Error(ErrorKind::InvalidArgument, "link radius must be positive");
  check_cloud(cloud);
  const auto& pts = cloud.points;
  if (pts.empty()) return 0;
  const int d = std::max(cloud.dim, 1);
  const double r2 = link_radius * link_radius;
  if (cloud.dim <= Grid::kMaxDim) {
    const double grid_side = link_radius / std::sqrt(static_cast<double>(d));
    if (const auto grid = Grid::build(pts, cloud.dim, grid_side)) return count_components_grid(pts, *grid, grid_side, link_radius);
  }

  // Cells of side r/sqrt(d): points sharing a cell are always linked, so only
  // cell pairs need point-level checks.
  const double side = link_radius / std::sqrt(static_cast<double>(d));
  std::unordered_map<CellKey, int, CellHash> index;
  std::vector<CellKey> keys;
  std::vector<std::vector<int>> members;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CellKey k(cloud.dim);
    for (int j = 0; j < cloud.dim; ++j) k[j] = static_cast<long long>(std::floor(pts[i][j] / side));
    auto [it, fresh] = index.emplace(k, static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(k);
      members.emplace_back();
    }
    members[it->second].push_back(static_cast<int>(i));
  }
  const std::size_t cells = keys.size();
  UnionFind uf(cells);

  // Tight bounds of each cell's points; most near cell pairs in a thin sample
  // are rejected here without a point scan.
  std::vector<Vec> lo(cells, Vec(cloud.dim, std::numeric_limits<double>::infinity()));
  std::vector<Vec> hi(cells, Vec(cloud.dim, -std::numeric_limits<double>::infinity()));
  for (std::size_t c = 0; c < cells; ++c)
    for (int p : members[c])
      for (int j = 0; j < cloud.dim; ++j) {
        lo[c][j] = std::min(lo[c][j], pts[p][j]);
        hi[c][j] = std::max(hi[c][j], pts[p][j]);
      }
  const auto linked = [&](int a, int b) {
    double gap2 = 0;
    for (int j = 0; j < cloud.dim; ++j) {
      const double g = std::max({0.0, lo[a][j] - hi[b][j], lo[b][j] - hi[a][j]});
      gap2 += g * g;
    }
    if (gap2 > r2) return false;
    for (int p : members[a])
      for (int q : members[b])
        if (dist2(pts[p], pts[q]) <= r2) return true;
    return false;
  };
  // Cells whose gap exceeds the radius cannot hold linked points.
  const auto near = [&](int a, int b) {
    double gap2 = 0;
    for (int j = 0; j < cloud.dim; ++j) {
      const long long g = std::max(0LL, std::llabs(keys[a][j] - keys[b][j]) - 1);
      gap2 += static_cast<double>(g) * g * side * side;
    }
    return gap2 <= r2;
  };

  const auto visit = [&](int a, int b) {
    if (near(a, b) && uf.find(a) != uf.find(b) && linked(a, b)) uf.unite(a, b);
  };
  switch (cloud.dim) {
    case 1: cell_pairs_rtree<1>(keys, side, link_radius, visit); break;
    case 2: cell_pairs_rtree<2>(keys, side, link_radius, visit); break;
    case 3: cell_pairs_rtree<3>(keys, side, link_radius, visit); break;
    case 4: cell_pairs_rtree<4>(keys, side, link_radius, visit); break;
    case 5: cell_pairs_rtree<5>(keys, side, link_radius, visit); break;
    case 6: cell_pairs_rtree<6>(keys, side, link_radius, visit); break;
    case 7: cell_pairs_rtree<7>(keys, side, link_radius, visit); break;
    case 8: cell_pairs_rtree<8>(keys, side, link_radius, visit); break;
    default:
      for (std::size_t a = 0; a < cells; ++a)
        for (std::size_t b = a + 1; b < cells; ++b) visit(static_cast<int>(a), static_cast<int>(b));
  }

  std::size_t count = 0;
  for (std::size_t c = 0; c < cells; ++c)
    if (uf.find(static_cast<int>(c)) == static_cast<int>(c)) ++count;
  return count;
}

std::size_t count_components(const PointCloud& cloud) {
  if (cloud.points.size() < 2) return cloud.points.size();
  const double r = default_link_radius(cloud);
  // Coincident points only: everything is one component.
  if (r == 0) return 1;
  return count_components(cloud, r);
}

PointCloud stereographic_project(const PointCloud& cloud, const Vec& pole) {
  check_cloud(cloud);
  check_pole(pole, cloud.dim);
  const Reflection h(pole);
  const int m = cloud.dim - 1;
  PointCloud out;
  out.dim = m;
  for (const auto& x : cloud.points) {
    if (std::abs(std::sqrt(dist2(x, Vec(x.size(), 0.0))) - 1) > tol::kSphere) {
      throw Error(ErrorKind::NotOnSphere, "point is not on the unit sphere");
    }
    if (std::sqrt(dist2(x, pole)) < tol::kPole) throw Error(ErrorKind::PointAtPole, "point coincides with the pole");
    const Vec y = h.apply(x);
    const double denom = 1 - y[m];
    Vec p(y.begin(), y.begin() + m);
    for (auto& v : p) v /= denom;
    out.points.push_back(std::move(p));
  }
  return out;
}

PointCloud stereographic_inverse(const PointCloud& cloud, const Vec& pole) {
  check_cloud(cloud);
  check_pole(pole, cloud.dim + 1);
  const Reflection h(pole);
  PointCloud out;
  out.dim = cloud.dim + 1;
  for (const auto& y : cloud.points) {
    const double s = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
    Vec x(out.dim);
    for (int j = 0; j < cloud.dim; ++j) x[j] = 2 * y[j] / (s + 1);
    x[cloud.dim] = (s - 1) / (s + 1);
    out.points.push_back(h.apply(x));
  }
  return out;
}

PointCloud revolve(const PointCloud& cloud, const std::vector<int>& fixed_axes, int steps, double twist,
                   bool full_turn) {
  check_cloud(cloud);
  if (steps < 3) throw Error(ErrorKind::InvalidArgument, "steps must be at least 3");
  const std::set<int> fixed(fixed_axes.begin(), fixed_axes.end());
  if (static_cast<int>(fixed.size()) != cloud.dim - 1 || fixed.size() != fixed_axes.size() ||
      (!fixed.empty() && (*fixed.begin() < 0 || *fixed.rbegin() >= cloud.dim))) {
    throw Error(ErrorKind::BadAxisSet, "fixed axes must be " + std::to_string(cloud.dim - 1) +
                                           " distinct coordinates of a " + std::to_string(cloud.dim) +
                                           "-dimensional cloud");
  }
  int rotating = 0;
  while (fixed.count(rotating)) ++rotating;
  const int axial = fixed_axes.empty() ? -1 : fixed_axes.front();
  const double span = full_turn ? 2 * std::numbers::pi : std::numbers::pi;

  PointCloud out;
  out.dim = cloud.dim + 1;
  out.points.reserve(cloud.points.size() * steps);
  for (const auto& x : cloud.points) {
    const double offset = axial >= 0 ? twist * x[axial] / 2 : 0;
    for (int k = 0; k < steps; ++k) {
      const double theta = span * k / steps + offset;
      Vec y = x;
      y[rotating] = x[rotating] * std::cos(theta);
      y.push_back(x[rotating] * std::sin(theta));
      out.points.push_back(std::move(y));
    }
  }
  return out;
}

}  // namespace topsurg
