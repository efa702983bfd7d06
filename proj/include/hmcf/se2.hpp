#pragma once

#include <array>
#include <memory>
#include <vector>

#include "hmcf/evolution.hpp"
#include "hmcf/grid.hpp"
#include "hmcf/group.hpp"
#include "hmcf/profile.hpp"

namespace hmcf {

/// Roto-translation (x1, x2, theta), theta reduced to [0, 2 pi).
struct SE2Point {
  double x1 = 0.0;
  double x2 = 0.0;
  double theta = 0.0;

  static SE2Point make(double x1, double x2, double theta);
};

struct AlgebraCoords {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Signed angle difference in [-pi, pi).
double wrap_angle(double d);
/// Distance of two points with theta compared modulo 2 pi.
double se2_distance(const SE2Point& a, const SE2Point& b);

struct SE2Frame {
  std::array<double, 3> Y1, Y2, Y3;
};

/// Y1 = (cos t, sin t, 0), Y2 = (0, 0, 1), Y3 = [Y1, Y2] = (sin t, -cos t, 0).
SE2Frame se2_frame(const SE2Point& p);

/// Left translation (b, phi) . (x, t) = (b + R_phi x, phi + t).
SE2Point se2_compose(const SE2Point& g, const SE2Point& x);

inline constexpr double kSe2BranchTol = 1e-6;

/// Time-one flow of a1 Y1 + a2 Y2 + a3 Y3 from x0.
SE2Point se2_exp(const SE2Point& x0, const AlgebraCoords& a);
/// Inverse of se2_exp around x0; OutsideChart if |theta - theta0| >= pi.
AlgebraCoords se2_log(const SE2Point& x0, const SE2Point& y);
/// exp o (l a1, l a2, l^2 a3) o log around x0.
SE2Point se2_local_dilate(const SE2Point& x0, double lambda, const SE2Point& y);

/// log_x0(exp_{exp_x0(a)}(b)): algebra coordinates of the composed flows.
AlgebraCoords se2_flow_compose(const SE2Point& x0, const AlgebraCoords& a, const AlgebraCoords& b);

/// Grid on [-half1, half1] x [-half2, half2] x [0, 2 pi) with periodic theta
/// and far-field value `far` on the horizontal axes.
ScalarField se2_field(double half1, double half2, int n1, int n2, int ntheta, double far);

/// Y1 Y1 u + Y2 Y2 u in expanded form, centred differences, periodic theta.
ScalarField se2_sub_laplacian(const ScalarField& u);

double se2_stable_dt(const UniformGrid3& grid);
ScalarField se2_semigroup(const ScalarField& u, double tau, int substeps = 0);

/// m -> sum_a J^eps(a) m(exp_x(a)) w(a) over a tensor trapezoid in algebra
/// coordinates, trilinear interpolation at the targets. Targets leaving the
/// horizontal box read the far field; with a non-far-field horizontal
/// boundary they throw InterpolationOutOfDomain.
class AlgebraConvolution {
 public:
  AlgebraConvolution(const KernelSpec& J_eps, int nodes_per_axis = 9);
  ScalarField apply(const ScalarField& m) const;
  std::size_t nodes() const { return disp_.size(); }

 private:
  struct Node {
    double dx, dy;  // displacement at theta0 = 0, rotated by theta0
    double dtheta;
    double w;
  };
  std::vector<Node> disp_;
};

enum class Se2ShapeKind { Disc, LiftedCircle };

struct Se2Shape {
  Se2ShapeKind kind = Se2ShapeKind::LiftedCircle;
  double radius = 1.0;
  double tube = 0.4;          // lifted circle: tube radius in the (r, w theta) metric
  double theta_weight = 0.5;  // w

  double phi(const SE2Point& x) const;
};

ScalarField se2_init_field(const Se2Shape& shape, double eps, const InstantonProfile& profile, double half1,
                           double half2, int n1, int n2, int ntheta);

struct Se2Diagnostics {
  double t = 0.0;
  double min = 0.0;
  double max = 0.0;
  double projected_area = 0.0;  // (x1, x2)-area of columns containing m < 0
  double volume = 0.0;
};

Se2Diagnostics se2_diagnose(const ScalarField& m, double t);

struct Se2Trajectory {
  std::vector<double> times;
  std::vector<ScalarField> snapshots;
  std::vector<Se2Diagnostics> diagnostics;
};

/// Two-step scheme on R^2 x S^1: heat kernel -> sub-Laplacian semigroup,
/// analytic kernel -> algebra-coordinate convolution.
Se2Trajectory se2_evolve(const ScalarField& m0, const EvolutionParams& p, const std::vector<double>& snapshot_times);

/// One scheme step (built per call; se2_evolve reuses its smoother).
ScalarField se2_step(const ScalarField& m, const EvolutionParams& p);

}  // namespace hmcf
