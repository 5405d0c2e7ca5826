#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace topsurg {

// Numerical tolerances used across the Morse module.
namespace tol {
inline constexpr double kResidual = 1e-9;       // |f(x) - t| for emitted samples
inline constexpr double kGradientCheck = 1e-6;  // analytic vs central differences
inline constexpr double kSphere = 1e-9;         // | |x| - 1 | on the sphere
inline constexpr double kPole = 1e-6;           // minimum distance from the projection pole
inline constexpr double kDisc = 1e-12;          // slack on |x| <= 1 for rounding
inline constexpr int kNewtonIterations = 50;
}  // namespace tol

// f(x) = -x_1^2 - ... - x_i^2 + x_{i+1}^2 + ... + x_n^2 on the unit disc of
// dimension n = ambient_dim, negated when time_reversed.
struct MorseForm {
  int ambient_dim = 2;
  int index = 1;
  bool time_reversed = false;
};

struct PointCloud {
  int dim = 0;
  std::vector<std::vector<double>> points;
};

struct LevelSetSample {
  double t = 0;
  PointCloud cloud;
  double residual_tol = tol::kResidual;
};

// Throws InvalidArgument for a form with index outside [0, ambient_dim].
void validate(const MorseForm& form);

double evaluate(const MorseForm& form, const std::vector<double>& x);
std::vector<double> gradient(const MorseForm& form, const std::vector<double>& x);
// Number of negative eigenvalues of the (constant) Hessian.
int hessian_index(const MorseForm& form);
// Largest componentwise gap between the analytic gradient and central
// differences with step h.
double gradient_check(const MorseForm& form, const std::vector<double>& x, double h);

// Points of f = t inside the unit disc. Exact parametric curves and surfaces
// for (dim 2, index 1) and (dim 3, index 1 or 2); otherwise seeded random
// points pulled onto the level set by Newton steps along the gradient.
LevelSetSample sample_level_set(const MorseForm& form, double t, int resolution,
                                std::uint64_t seed = 0);

// Samples for each t of a strictly increasing grid, computed in parallel.
std::vector<LevelSetSample> surgery_sequence(const MorseForm& form, const std::vector<double>& t_grid,
                                             int resolution, std::uint64_t seed = 0);

// Largest distance from a point to its nearest neighbour; 0 for fewer than
// two points.
double max_nearest_neighbor_spacing(const PointCloud& cloud);
// Twice the maximum nearest-neighbour spacing.
double default_link_radius(const PointCloud& cloud);
// Components of the graph joining points at distance <= link_radius.
std::size_t count_components(const PointCloud& cloud, double link_radius);
std::size_t count_components(const PointCloud& cloud);

// Projection of the unit sphere S^m minus the pole onto R^m. The pole is first
// rotated to the last axis by a reflection, then the usual formula applies.
PointCloud stereographic_project(const PointCloud& cloud, const std::vector<double>& pole);
PointCloud stereographic_inverse(const PointCloud& cloud, const std::vector<double>& pole);

// Rotates the one coordinate not listed in fixed_axes into a new last
// coordinate. Copies are taken at angles pi*j/steps (2*pi*j/steps with
// full_turn), offset by twist*a/2 where a is the first fixed coordinate.
PointCloud revolve(const PointCloud& cloud, const std::vector<int>& fixed_axes, int steps,
                   double twist = 0, bool full_turn = false);

std::string to_csv(const std::vector<LevelSetSample>& samples);
// Vertices only; points of dimension < 3 are padded with zeros, dimension 4
// uses the w slot. Higher dimensions are rejected.
std::string to_obj(const std::vector<LevelSetSample>& samples);
std::string to_json(const LevelSetSample& sample);
std::string to_json(const std::vector<LevelSetSample>& samples);

// Accepts a JSON sample, a JSON array of samples, a JSON {"dim","points"}
// cloud, or CSV with an optional header and optional leading t column.
std::vector<LevelSetSample> parse_samples(std::string_view text);

}  // namespace topsurg
