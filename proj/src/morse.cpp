#include "topsurg/morse.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstring>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"

#include "topsurg/error.hpp"

namespace topsurg {

namespace {

using Vec = std::vector<double>;

double norm2(const Vec& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

void check_point(const MorseForm& form, const Vec& x) {
  validate(form);
  if (static_cast<int>(x.size()) != form.ambient_dim) {
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.size()) +
                                                  " coordinates, form expects " +
                                                  std::to_string(form.ambient_dim));
  }
  if (norm2(x) > 1 + tol::kDisc) throw Error(ErrorKind::OutsideDisc, "point lies outside the unit disc");
}

double coefficient(const MorseForm& form, int j) {
  const double c = j < form.index ? -1.0 : 1.0;
  return form.time_reversed ? -c : c;
}

double raw_value(const MorseForm& form, const Vec& x) {
  double s = 0;
  for (int j = 0; j < form.ambient_dim; ++j) s += coefficient(form, j) * x[j] * x[j];
  return s;
}

bool in_disc(const Vec& x) { return norm2(x) <= 1.0; }

// Parametric samples of -x^2 + y^2 = t.
std::vector<Vec> hyperbola(double t, int res) {
  std::vector<Vec> out;
  if (t == 0) {
    const double s_max = std::sqrt(0.5) * (1 - 1e-12);
    out.push_back({0, 0});
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        for (int k = 1; k <= res; ++k) {
          const double s = s_max * k / res;
          out.push_back({sx * s, sy * s});
        }
    return out;
  }
  // Branches cross the axis of the positive (t > 0) or negative coordinate.
  const double a = std::abs(t);
  const double half = std::sqrt((1 - a) / 2) * (1 - 1e-12);
  for (int branch : {-1, 1}) {
    for (int k = 0; k < res; ++k) {
      const double s = -half + 2 * half * k / (res - 1);
      const double r = branch * std::sqrt(s * s + a);
      out.push_back(t < 0 ? Vec{r, s} : Vec{s, r});
    }
  }
  return out;
}

// Parametric samples of -x^2 + y^2 + z^2 = t, with (y, z) in polar form. A
// meridian (x, rho) is sampled with res nodes per sheet and each node is swept
// into a ring whose angular spacing does not exceed the meridian spacing, so
// neighbouring rings and neighbouring angles are equally close.
std::vector<Vec> hyperboloid(double t, int res) {
  const double a = std::abs(t);
  std::vector<std::pair<double, double>> meridian;
  if (t < 0) {
    // Two sheets x = +-sqrt(rho^2 + |t|), rho in [0, sqrt((1 - |t|)/2)].
    const double rho_max = std::sqrt((1 - a) / 2) * (1 - 1e-12);
    for (int sheet : {-1, 1})
      for (int k = 0; k < res; ++k) {
        const double rho = rho_max * k / (res - 1);
        meridian.emplace_back(sheet * std::sqrt(rho * rho + a), rho);
      }
  } else {
    // Cone (t = 0, through the origin) or one sheet rho = sqrt(x^2 + t).
    const double x_max = std::sqrt((1 - a) / 2) * (1 - 1e-12);
    const int half = std::max(1, res / 2);
    for (int k = -half; k <= half; ++k) {
      const double x = x_max * k / half;
      meridian.emplace_back(x, std::sqrt(x * x + a));
    }
  }
  double step = 0;
  for (std::size_t k = 1; k < meridian.size(); ++k) {
    if ((meridian[k].first > 0) != (meridian[k - 1].first > 0) && t < 0) continue;  // across sheets
    step = std::max(step, std::hypot(meridian[k].first - meridian[k - 1].first,
                                     meridian[k].second - meridian[k - 1].second));
  }
  std::vector<Vec> out;
  for (const auto& [x, rho] : meridian) {
    if (rho == 0) {
      out.push_back({x, 0, 0});
      continue;
    }
    const int count = std::max(res, static_cast<int>(std::ceil(2 * std::numbers::pi * rho / step)));
    for (int j = 0; j < count; ++j) {
      const double phi = 2 * std::numbers::pi * j / count;
      out.push_back({x, rho * std::cos(phi), rho * std::sin(phi)});
    }
  }
  return out;
}

std::mt19937_64 make_rng(std::uint64_t seed, double t) {
  std::uint64_t bits = 0;
  static_assert(sizeof(bits) == sizeof(t));
  std::memcpy(&bits, &t, sizeof(t));
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(bits), static_cast<std::uint32_t>(bits >> 32)};
  return std::mt19937_64(seq);
}

// Uniform seeds in the disc, then Newton steps x -= (f - t) grad / |grad|^2.
std::vector<Vec> projected(const MorseForm& plain, double t, int res, std::uint64_t seed) {
  const int n = plain.ambient_dim;
  const double target = std::pow(static_cast<double>(res), n - 1);
  const auto wanted = static_cast<std::size_t>(target);
  const std::size_t attempts = 8 * wanted + 64;
  auto rng = make_rng(seed, t);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;

  std::vector<Vec> out;
  for (std::size_t a = 0; a < attempts && out.size() < wanted; ++a) {
    Vec x(n);
    for (auto& v : x) v = normal(rng);
    const double scale = std::pow(unit(rng), 1.0 / n) / std::sqrt(norm2(x));
    for (auto& v : x) v *= scale;
    bool ok = false;
    for (int it = 0; it < tol::kNewtonIterations; ++it) {
      const double r = raw_value(plain, x) - t;
      if (std::abs(r) <= 1e-14) {
        ok = true;
        break;
      }
      Vec g(n);
      double gg = 0;
      for (int j = 0; j < n; ++j) {
        g[j] = 2 * coefficient(plain, j) * x[j];
        gg += g[j] * g[j];
      }
      if (gg < 1e-300) break;
      for (int j = 0; j < n; ++j) x[j] -= r * g[j] / gg;
    }
    if (!ok && std::abs(raw_value(plain, x) - t) > tol::kResidual) continue;
    if (!in_disc(x)) continue;
    out.push_back(std::move(x));
  }
  if (t == 0 && !out.empty()) {
    // Rays from a few cone points back to the apex, so the singular point is
    // joined to the rest of the cone.
    const std::size_t rays = std::min<std::size_t>(out.size(), 64);
    out.push_back(Vec(n, 0.0));
    for (std::size_t r = 0; r < rays; ++r) {
      const Vec p = out[r];
      for (int k = 1; k < res; ++k) {
        Vec q = p;
        for (auto& v : q) v *= static_cast<double>(k) / res;
        out.push_back(std::move(q));
      }
    }
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void validate(const MorseForm& form) {
  if (form.ambient_dim < 1) throw Error(ErrorKind::InvalidArgument, "ambient dimension must be positive");
  if (form.index < 0 || form.index > form.ambient_dim) {
    throw Error(ErrorKind::InvalidArgument, "index must lie in [0, ambient_dim]");
  }
}

double evaluate(const MorseForm& form, const Vec& x) {
  check_point(form, x);
  return raw_value(form, x);
}

Vec gradient(const MorseForm& form, const Vec& x) {
  check_point(form, x);
  Vec g(x.size());
  for (int j = 0; j < form.ambient_dim; ++j) g[j] = 2 * coefficient(form, j) * x[j];
  return g;
}

int hessian_index(const MorseForm& form) {
  validate(form);
  const int n = form.ambient_dim;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) h(j, j) = 2 * coefficient(form, j);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  return static_cast<int>((solver.eigenvalues().array() < 0).count());
}

double gradient_check(const MorseForm& form, const Vec& x, double h) {
  if (!(h > 0 && h < 1e-3)) throw Error(ErrorKind::InvalidArgument, "step must lie in (0, 1e-3)");
  check_point(form, x);
  if (std::sqrt(norm2(x)) + h > 1) throw Error(ErrorKind::OutsideDisc, "point too close to the boundary");
  const Vec g = gradient(form, x);
  double worst = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    Vec up = x, down = x;
    up[j] += h;
    down[j] -= h;
    const double fd = (raw_value(form, up) - raw_value(form, down)) / (2 * h);
    worst = std::max(worst, std::abs(fd - g[j]));
  }
  return worst;
}

LevelSetSample sample_level_set(const MorseForm& form, double t, int resolution, std::uint64_t seed) {
  validate(form);
  if (!(t > -1 && t < 1)) throw Error(ErrorKind::InvalidArgument, "t must lie in (-1, 1)");
  if (resolution < 8) throw Error(ErrorKind::InvalidArgument, "resolution must be at least 8");

  // The reversed form at t is the plain form at -t.
  MorseForm plain = form;
  plain.time_reversed = false;
  const double level = form.time_reversed ? -t : t;
  const int n = form.ambient_dim, i = form.index;

  std::vector<Vec> points;
  if (n == 2 && i == 1) {
    points = hyperbola(level, resolution);
  } else if (n == 3 && i == 1) {
    points = hyperboloid(level, resolution);
  } else if (n == 3 && i == 2) {
    // -x^2 - y^2 + z^2 = c is the index-1 surface at -c with the negative
    // coordinate moved last.
    for (const auto& p : hyperboloid(-level, resolution)) points.push_back({p[1], p[2], p[0]});
  } else {
    points = projected(plain, level, resolution, seed);
  }

  LevelSetSample s;
  s.t = t;
  s.cloud.dim = n;
  for (auto& p : points) {
    if (!in_disc(p)) continue;
    if (std::abs(raw_value(form, p) - t) > s.residual_tol) {
      throw Error(ErrorKind::Internal, "sample point misses the level set");
    }
    s.cloud.points.push_back(std::move(p));
  }
  if (s.cloud.points.empty()) {
    throw Error(ErrorKind::EmptyLevelSet, "level set f = " + format_double(t) + " misses the unit disc");
  }
  return s;
}

std::vector<LevelSetSample> surgery_sequence(const MorseForm& form, const std::vector<double>& t_grid,
                                             int resolution, std::uint64_t seed) {
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1])) throw Error(ErrorKind::InvalidArgument, "t grid must be strictly increasing");
  }
  std::vector<std::future<LevelSetSample>> jobs;
  for (double t : t_grid) {
    jobs.push_back(std::async(std::launch::async, [=] { return sample_level_set(form, t, resolution, seed); }));
  }
  std::vector<LevelSetSample> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string to_csv(const std::vector<LevelSetSample>& samples) {
  std::ostringstream os;
  const int dim = samples.empty() ? 0 : samples.front().cloud.dim;
  os << "t";
  for (int j = 0; j < dim; ++j) os << ",x" << j;
  os << "\n";
  for (const auto& s : samples) {
    for (const auto& p : s.cloud.points) {
      os << format_double(s.t);
      for (double v : p) os << "," << format_double(v);
      os << "\n";
    }
  }
  return os.str();
}

std::string to_obj(const std::vector<LevelSetSample>& samples) {
  std::ostringstream os;
  for (const auto& s : samples) {
    if (s.cloud.dim > 4) throw Error(ErrorKind::DimensionMismatch, "OBJ export supports dimension <= 4");
    os << "# t " << format_double(s.t) << "\n";
    for (const auto& p : s.cloud.points) {
      os << "v";
      for (int j = 0; j < std::max(3, s.cloud.dim); ++j) {
        os << " " << format_double(j < static_cast<int>(p.size()) ? p[j] : 0.0);
      }
      os << "\n";
    }
  }
  return os.str();
}

namespace {

nlohmann::json sample_json(const LevelSetSample& s) {
  nlohmann::json j;
  j["t"] = s.t;
  j["dim"] = s.cloud.dim;
  j["residual_tol"] = s.residual_tol;
  j["points"] = s.cloud.points;
  return j;
}

LevelSetSample sample_from_json(const nlohmann::json& j) {
  LevelSetSample s;
  s.t = j.value("t", 0.0);
  s.residual_tol = j.value("residual_tol", tol::kResidual);
  s.cloud.points = j.at("points").get<std::vector<Vec>>();
  s.cloud.dim = j.contains("dim") ? j.at("dim").get<int>()
                                  : (s.cloud.points.empty() ? 0 : static_cast<int>(s.cloud.points[0].size()));
  for (const auto& p : s.cloud.points) {
    if (static_cast<int>(p.size()) != s.cloud.dim) {
      throw Error(ErrorKind::DimensionMismatch, "point length differs from the cloud dimension");
    }
  }
  return s;
}

}  // namespace

std::string to_json(const LevelSetSample& sample) { return sample_json(sample).dump(); }

std::string to_json(const std::vector<LevelSetSample>& samples) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : samples) j.push_back(sample_json(s));
  return j.dump();
}

std::vector<LevelSetSample> parse_samples(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  if (text[first] == '{' || text[first] == '[') {
    try {
      const auto j = nlohmann::json::parse(text);
      std::vector<LevelSetSample> out;
      if (j.is_array()) {
        for (const auto& e : j) out.push_back(sample_from_json(e));
      } else {
        out.push_back(sample_from_json(j));
      }
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::MalformedTuple, std::string("invalid sample JSON: ") + e.what());
    }
  }

  std::istringstream in{std::string(text)};
  std::string line;
  bool has_t = false;
  bool header_seen = false;
  std::vector<LevelSetSample> out;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!header_seen && !cells.empty() && !cells[0].empty() && std::isalpha(static_cast<unsigned char>(cells[0][0]))) {
      has_t = cells[0] == "t";
      header_seen = true;
      continue;
    }
    header_seen = true;
    Vec values;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(c, &used));
      } catch (const std::exception&) {
        throw Error(ErrorKind::MalformedTuple, "bad number '" + c + "' in CSV");
      }
    }
    const double t = has_t ? values.front() : 0.0;
    Vec p(values.begin() + (has_t ? 1 : 0), values.end());
    if (out.empty() || out.back().t != t) {
      out.emplace_back();
      out.back().t = t;
      out.back().cloud.dim = static_cast<int>(p.size());
    }
    if (static_cast<int>(p.size()) != out.back().cloud.dim) {
      throw Error(ErrorKind::DimensionMismatch, "CSV rows have differing lengths");
    }
    out.back().cloud.points.push_back(std::move(p));
  }
  return out;
}

}  // namespace topsurg
