#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hmcf/evolution.hpp"
#include "hmcf/grid.hpp"
#include "hmcf/kernel.hpp"

namespace hmcf {

enum class SlicePlane {
  X2Zero,  // points are (x1, x3)
  X3Zero,  // points are (x1, x2)
};

struct LevelCurve {
  SlicePlane plane = SlicePlane::X2Zero;
  std::vector<std::array<double, 2>> points;  // closed polygon, last point joins the first
};

/// Extinction time r^2 / (sqrt(12) theta) of the gauge ball under the law
/// (x1^2 + x2^2)^2 + 12 theta t (x1^2 + x2^2) + 16 x3^2 + 12 (theta t)^2 = r^4.
double ball_extinction_time(double r, double theta);
/// x3-axis intercept sqrt(r^4 - 12 (theta t)^2) / 4.
double ball_intercept(double r, double theta, double t);
/// Equatorial radius: rho_max^2 = -6 theta t + sqrt(24 (theta t)^2 + r^4).
double ball_equator_radius(double r, double theta, double t);
/// x2 = 0 slice of the exact surface. Throws Extinct if t >= t*.
LevelCurve exact_ball_curve(double r, double theta, double t, int samples = 512);

/// Zero crossings on the slice's cell edges, ordered by angle around their
/// centroid. Throws NoZeroSet if the slice has no sign change.
LevelCurve extract_zero_levelset(const ScalarField& field, SlicePlane plane);

/// Symmetric Hausdorff distance between the two closed polygons (as
/// continuous curves). Throws EmptyCurve.
double hausdorff_distance(const LevelCurve& a, const LevelCurve& b);

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> t;
  std::vector<double> value;
};

RegressionFit linear_regression(const std::vector<double>& t, const std::vector<double>& v);

struct CylinderFit {
  RegressionFit fit;  // r^2 against t over the window
  double theta = 0.0; // -slope / 2
  std::vector<double> times;   // every recorded sample
  std::vector<double> radius;
};

/// Fits r^2(t) = r^2(0) - 2 theta t using samples with r >= min_radius and
/// t >= skip_time. Needs at least 10 samples in the window.
CylinderFit fit_cylinder_law(const std::vector<double>& times, const std::vector<double>& radius, double min_radius,
                             double skip_time = 0.0);

struct CylinderParams {
  EvolutionParams evolution;  // t_end bounds the run
  double radius = 1.0;
  double half_width = 2.0;  // horizontal box [-w, w]^2
  int n = 96;               // horizontal nodes per axis
  int n3 = 4;               // periodic x3 slab
  int sample_every = 1;     // steps between radius samples
  double window_radius_factor = 4.0;  // drop samples once r < factor * eps
  double skip_time = 0.0;
};

/// Cylinder about the x3-axis on a thin x3-periodic slab; the field is
/// x3-invariant so the slab is exact for this geometry.
CylinderFit calibrate_theta_cylinder(const CylinderParams& params, const InstantonProfile& profile);

/// Instanton for the unscaled kernel J: the bump one on [-20, 20] (wider for
/// support > 4), the Gaussian one on [-40, 40] (wider for tau > 1).
InstantonProfile engine_profile(const KernelSpec& J, double beta, double h = 0.05);

struct BallParams {
  EvolutionParams evolution;
  double radius = 1.2;
  double theta = 0.0;  // law mobility, must be supplied
  std::array<double, 3> half_width{2.0, 2.0, 0.75};
  std::array<int, 3> dims{128, 128, 128};
  std::vector<double> snapshot_times;  // rounded to multiples of dt; default: 8 up to 0.5 t*
};

struct BallReport {
  double t_star = 0.0;
  std::vector<double> times;
  std::vector<double> hausdorff;
  std::vector<double> intercept;        // measured x3_top
  std::vector<double> intercept_exact;
  std::vector<double> radius;           // measured equator radius
  std::vector<double> radius_exact;
  std::vector<LevelCurve> curves;
  std::vector<LevelCurve> exact;
  double max_hausdorff_half_life = 0.0;  // over t <= 0.5 t*
  bool intercepts_decreasing = false;
};

using SnapshotHook = std::function<void(double t, const ScalarField& m)>;

BallReport validate_gauge_ball(const BallParams& params, const InstantonProfile& profile,
                               const SnapshotHook& hook = {});

struct AxisProfile {
  std::vector<double> s;      // coordinate minus the zero crossing
  std::vector<double> value;
  double crossing = 0.0;
  double max_slope = 0.0;
};

struct Profiles {
  double t = 0.0;
  AxisProfile x1;  // m(t, x1, 0, 0), x1 >= 0
  AxisProfile x3;  // m(t, 0, 0, x3), x3 >= 0
};

Profiles extract_profiles(const ScalarField& field, double t);

}  // namespace hmcf
