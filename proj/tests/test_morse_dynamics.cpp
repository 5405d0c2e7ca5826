#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <numeric>
#include <numbers>
#include <random>
#include <set>

#include <Eigen/Dense>

#include "topsurg/error.hpp"
#include "topsurg/morse.hpp"

using namespace topsurg;
using Vec = std::vector<double>;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

// Negative eigenvalues of the finite-difference Hessian at the origin.
int fd_index(const MorseForm& form) {
  const int n = form.ambient_dim;
  const double h = 1e-3;
  Eigen::MatrixXd hess(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto at = [&](double da, double db) {
        Vec x(n, 0.0);
        x[a] += da;
        x[b] += db;
        return evaluate(form, x);
      };
      hess(a, b) = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
    }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
  return static_cast<int>((es.eigenvalues().array() < -1e-6).count());
}

void check_sample(const MorseForm& form, const LevelSetSample& s) {
  REQUIRE(!s.cloud.points.empty());
  for (const auto& p : s.cloud.points) {
    double n2 = 0;
    for (double v : p) n2 += v * v;
    CHECK(n2 <= 1.0);
    CHECK(std::abs(evaluate(form, p) - s.t) <= 1e-9);
  }
}

bool contains(const PointCloud& c, const Vec& q, double eps = 1e-12) {
  for (const auto& p : c.points) {
    double d = 0;
    for (std::size_t j = 0; j < p.size(); ++j) d = std::max(d, std::abs(p[j] - q[j]));
    if (d <= eps) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("evaluate") {
  CHECK(evaluate({2, 1}, {1, 0}) == -1);
  CHECK(evaluate({2, 1}, {0, 0}) == 0);
  CHECK(evaluate({4, 2}, {0.5, 0.5, 0.5, 0.5}) == 0);
  CHECK(evaluate({2, 1, true}, {1, 0}) == 1);
  CHECK(kind_of([] { evaluate({2, 1}, {0.1, 0.1, 0.1}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { evaluate({2, 1}, {1, 1}); }) == ErrorKind::OutsideDisc);
  CHECK(kind_of([] { evaluate({2, 3}, {0, 0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("gradient") {
  CHECK(gradient({2, 1}, {std::sqrt(0.5), std::sqrt(0.5)}) ==
        Vec{-2 * std::sqrt(0.5), 2 * std::sqrt(0.5)});
  CHECK(gradient({2, 1}, {0.5, 0.5}) == Vec{-1, 1});
  CHECK(gradient({5, 2}, Vec(5, 0.0)) == Vec(5, 0.0));
  CHECK(gradient({3, 1}, {0, 0.5, 0}) == Vec{0, 1, 0});
}

TEST_CASE("hessian_index") {
  CHECK(hessian_index({2, 1}) == 1);
  CHECK(hessian_index({4, 1}) == 1);
  CHECK(hessian_index({4, 2, true}) == 2);
  CHECK(hessian_index({4, 1, true}) == 3);
  for (int n = 1; n <= 6; ++n)
    for (int i = 0; i <= n; ++i)
      for (bool rev : {false, true}) {
        const MorseForm f{n, i, rev};
        CHECK(hessian_index(f) == (rev ? n - i : i));
        CHECK(hessian_index(f) == fd_index(f));
      }
}

TEST_CASE("gradient_check") {
  CHECK(gradient_check({2, 1}, {0.3, 0.4}, 1e-5) <= 1e-6);
  CHECK(gradient_check({4, 2}, {0.1, 0.2, 0.3, 0.4}, 1e-5) <= 1e-6);
  CHECK(gradient_check({3, 1}, {0, 0, 0}, 1e-5) <= 1e-6);
  CHECK(kind_of([] { gradient_check({2, 1}, {0.3, 0.4}, 1e-2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("dim 2 level curves") {
  const MorseForm f{2, 1};
  // An odd resolution puts a grid node on the x-axis.
  auto s = sample_level_set(f, -0.5, 33);
  check_sample(f, s);
  bool left = false, right = false;
  for (const auto& p : s.cloud.points) {
    if (std::abs(p[1]) < 1e-15) {
      if (std::abs(p[0] - std::sqrt(0.5)) < 1e-12) right = true;
      if (std::abs(p[0] + std::sqrt(0.5)) < 1e-12) left = true;
    }
  }
  CHECK(left);
  CHECK(right);

  s = sample_level_set(f, 0.25, 33);
  check_sample(f, s);
  CHECK(contains(s.cloud, {0, 0.5}));
  CHECK(contains(s.cloud, {0, -0.5}));

  s = sample_level_set(f, 0, 16);
  check_sample(f, s);
  CHECK(contains(s.cloud, {0, 0}));
}

TEST_CASE("dim 3 cone includes the critical point") {
  const MorseForm f{3, 1};
  const auto s = sample_level_set(f, 0, 16);
  check_sample(f, s);
  CHECK(contains(s.cloud, {0, 0, 0}));
}

TEST_CASE("samples satisfy the level equation in every dimension and index") {
  for (int n = 1; n <= 6; ++n)
    for (int i = 0; i <= n; ++i)
      for (double t : {-0.5, 0.0, 0.3}) {
        const MorseForm f{n, i};
        // Definite forms miss one side of zero; everything else is nonempty.
        const bool empty = (i == 0 && t < 0) || (i == n && t > 0);
        if (empty) {
          CHECK(kind_of([&] { sample_level_set(f, t, 8); }) == ErrorKind::EmptyLevelSet);
          continue;
        }
        const auto s = sample_level_set(f, t, 8, 1);
        check_sample(f, s);
      }
}

TEST_CASE("sampler preconditions") {
  CHECK(kind_of([] { sample_level_set({2, 1}, 1.0, 16); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { sample_level_set({2, 1}, 0.1, 4); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("time reversal is t -> -t on the parametric generators") {
  for (int n : {2, 3})
    for (int i = 1; i < n; ++i)
      for (double t : {-0.4, 0.0, 0.7}) {
        const auto a = sample_level_set({n, i, true}, t, 12);
        const auto b = sample_level_set({n, i, false}, -t, 12);
        CHECK(a.cloud.points == b.cloud.points);
        check_sample({n, i, true}, a);
      }
}

TEST_CASE("component counts") {
  CHECK(count_components(PointCloud{3, {{0.1, 0.2, 0.3}}}) == 1);
  PointCloud two{1, {{0}, {0.1}, {0.2}, {5}, {5.1}}};
  CHECK(count_components(two, 0.15) == 2);
  CHECK(count_components(two, 10) == 1);
  CHECK(kind_of([&] { count_components(two, 0); }) == ErrorKind::InvalidArgument);

  const MorseForm f{3, 1};
  CHECK(count_components(sample_level_set(f, -0.5, 32).cloud) == 2);
  CHECK(count_components(sample_level_set(f, 0.5, 32).cloud) == 1);
}

TEST_CASE("component counts agree with brute force union-find") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int dim : {1, 2, 3, 4, 5, 9}) {
    PointCloud c{dim, {}};
    for (int k = 0; k < 120; ++k) {
      Vec p(dim);
      for (auto& v : p) v = u(rng);
      c.points.push_back(p);
    }
    for (double r : {0.1, 0.3, 0.6}) {
      std::vector<int> parent(c.points.size());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
      for (std::size_t a = 0; a < c.points.size(); ++a)
        for (std::size_t b = a + 1; b < c.points.size(); ++b) {
          double d = 0;
          for (int j = 0; j < dim; ++j) d += std::pow(c.points[a][j] - c.points[b][j], 2);
          if (d <= r * r) parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
        }
      std::set<int> roots;
      for (std::size_t a = 0; a < c.points.size(); ++a) roots.insert(find(static_cast<int>(a)));
      CHECK(count_components(c, r) == roots.size());
    }
  }
}

TEST_CASE("max nearest-neighbour spacing agrees with brute force") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int dim : {1, 2, 3, 4, 6, 9}) {
    // A uniform spray plus a tight cluster and a far outlier.
    PointCloud c{dim, {}};
    for (int k = 0; k < 400; ++k) {
      Vec p(dim);
      for (auto& v : p) v = k < 200 ? u(rng) : 1e-3 * u(rng);
      c.points.push_back(p);
    }
    c.points.push_back(Vec(dim, 7.5));
    double worst = 0;
    for (std::size_t a = 0; a < c.points.size(); ++a) {
      double best = INFINITY;
      for (std::size_t b = 0; b < c.points.size(); ++b) {
        if (a == b) continue;
        double d = 0;
        for (int j = 0; j < dim; ++j) d += std::pow(c.points[a][j] - c.points[b][j], 2);
        best = std::min(best, d);
      }
      worst = std::max(worst, best);
    }
    CHECK(max_nearest_neighbor_spacing(c) == doctest::Approx(std::sqrt(worst)).epsilon(1e-12));
  }
  CHECK(max_nearest_neighbor_spacing(PointCloud{2, {{0, 0}}}) == 0);
  CHECK(max_nearest_neighbor_spacing(PointCloud{2, {{1, 1}, {1, 1}}}) == 0);
}

TEST_CASE("surgery sequences") {
  auto seq = surgery_sequence({2, 1}, {-0.5, 0, 0.5}, 32);
  REQUIRE(seq.size() == 3);
  CHECK(count_components(seq[0].cloud) == 2);
  CHECK(count_components(seq[1].cloud) == 1);
  CHECK(count_components(seq[2].cloud) == 2);

  seq = surgery_sequence({4, 2}, {-0.5, 0.5}, 16);
  REQUIRE(seq.size() == 2);
  CHECK(count_components(seq[0].cloud) == 1);
  CHECK(count_components(seq[1].cloud) == 1);

  CHECK(surgery_sequence({2, 1}, {}, 16).empty());
  CHECK(kind_of([] { surgery_sequence({2, 1}, {0.2, 0.1}, 16); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("sampling is deterministic for a seed") {
  const auto a = surgery_sequence({4, 1}, {-0.3, 0.2}, 8, 42);
  const auto b = surgery_sequence({4, 1}, {-0.3, 0.2}, 8, 42);
  CHECK(to_json(a) == to_json(b));
  const auto c = surgery_sequence({4, 1}, {-0.3, 0.2}, 8, 43);
  CHECK(to_json(a) != to_json(c));
}

TEST_CASE("stereographic projection") {
  const Vec pole{0, 0, 1};
  auto p = stereographic_project(PointCloud{3, {{1, 0, 0}, {0, 0, -1}, {0, 0.8, 0.6}}}, pole);
  REQUIRE(p.dim == 2);
  CHECK(p.points[0][0] == doctest::Approx(1));
  CHECK(p.points[0][1] == doctest::Approx(0));
  CHECK(p.points[1][0] == doctest::Approx(0));
  CHECK(p.points[1][1] == doctest::Approx(0));
  CHECK(p.points[2][0] == doctest::Approx(0));
  CHECK(p.points[2][1] == doctest::Approx(2));

  CHECK(kind_of([&] { stereographic_project(PointCloud{3, {{0, 0, 1}}}, pole); }) == ErrorKind::PointAtPole);
  CHECK(kind_of([&] { stereographic_project(PointCloud{3, {{0, 0, 0.9}}}, pole); }) == ErrorKind::NotOnSphere);
}

TEST_CASE("stereographic round trip with a general pole") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int dim : {2, 3, 5}) {
    Vec pole(dim);
    double s = 0;
    for (auto& v : pole) s += (v = g(rng)) * v;
    for (auto& v : pole) v /= std::sqrt(s);
    PointCloud c{dim, {}};
    for (int k = 0; k < 200; ++k) {
      Vec x(dim);
      double n = 0;
      for (auto& v : x) n += (v = g(rng)) * v;
      for (auto& v : x) v /= std::sqrt(n);
      c.points.push_back(x);
    }
    const auto back = stereographic_inverse(stereographic_project(c, pole), pole);
    double worst = 0;
    for (std::size_t k = 0; k < c.points.size(); ++k)
      for (int j = 0; j < dim; ++j) worst = std::max(worst, std::abs(back.points[k][j] - c.points[k][j]));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("revolve") {
  const auto s = sample_level_set({2, 1}, 0.3, 32);
  const auto r = revolve(s.cloud, {0}, 12);
  CHECK(r.dim == 3);
  CHECK(r.points.size() == s.cloud.points.size() * 12);
  for (const auto& p : r.points) CHECK(std::abs(-p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 0.3) <= 1e-9);

  const auto single = revolve(PointCloud{2, {{1, 0}}}, {0}, 4);
  REQUIRE(single.points.size() == 4);
  for (const auto& p : single.points) CHECK(p == Vec{1, 0, 0});

  CHECK(kind_of([&] { revolve(s.cloud, {0, 1}, 8); }) == ErrorKind::BadAxisSet);
  CHECK(kind_of([&] { revolve(s.cloud, {2}, 8); }) == ErrorKind::BadAxisSet);
  CHECK(kind_of([&] { revolve(s.cloud, {0}, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("revolving twice reaches the dim 4 forms") {
  const double t = -0.2;
  const auto s = sample_level_set({2, 1}, t, 16);
  const auto once = revolve(s.cloud, {0}, 8);
  // rotate z into w: -x^2 + y^2 + z^2 + w^2 = t
  for (const auto& p : revolve(once, {0, 1}, 8).points)
    CHECK(std::abs(-p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3] - t) <= 1e-9);
  // rotate x into w: -x^2 + y^2 + z^2 - w^2 = t
  for (const auto& p : revolve(once, {1, 2}, 8).points)
    CHECK(std::abs(-p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - p[3] * p[3] - t) <= 1e-9);
}

TEST_CASE("twisted revolution rotates cross-sections by the total twist") {
  // Cylinder y^2 + z^2 = 0.25 from the line pair y = +-0.5, x in [-1, 1].
  PointCloud lines{2, {}};
  for (int k = 0; k <= 10; ++k) lines.points.push_back({-1 + 0.2 * k, 0.5});
  const double twist = -3 * std::numbers::pi / 2;
  const auto r = revolve(lines, {0}, 8, twist, true);
  // Angle of the first copy at each axial position.
  double prev = 0;
  for (int k = 0; k <= 10; ++k) {
    const auto& p = r.points[static_cast<std::size_t>(k) * 8];
    CHECK(std::abs(p[1] * p[1] + p[2] * p[2] - 0.25) <= 1e-12);
    const double expected = twist * p[0] / 2;
    CHECK(std::cos(expected) * 0.5 == doctest::Approx(p[1]).epsilon(1e-9));
    CHECK(std::sin(expected) * 0.5 == doctest::Approx(p[2]).epsilon(1e-9));
    if (k > 0) CHECK(expected < prev);
    prev = expected;
  }
}

TEST_CASE("export formats round trip") {
  const auto seq = surgery_sequence({2, 1}, {-0.5, 0.5}, 8);
  auto back = parse_samples(to_json(seq));
  REQUIRE(back.size() == 2);
  CHECK(back[0].cloud.points == seq[0].cloud.points);
  CHECK(back[1].t == 0.5);
  back = parse_samples(to_csv(seq));
  REQUIRE(back.size() == 2);
  CHECK(back[1].cloud.points == seq[1].cloud.points);
  const auto obj = to_obj(seq);
  CHECK(obj.rfind("# t -0.5\nv ", 0) == 0);
  CHECK(parse_samples(to_json(seq[0])).size() == 1);
  CHECK(kind_of([] { to_obj({LevelSetSample{0, PointCloud{5, {Vec(5, 0.0)}}}}); }) ==
        ErrorKind::DimensionMismatch);
}
