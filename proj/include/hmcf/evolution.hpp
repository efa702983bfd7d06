#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hmcf/grid.hpp"
#include "hmcf/kernel.hpp"
#include "hmcf/profile.hpp"

namespace hmcf {

/// Parameters of the two-step scheme. `forcing` enters as tanh(beta v + a),
/// i.e. it is beta times the forcing of m = tanh(beta (J * m + a)).
/// `kernel` is given at unit scale and rescaled by eps inside the stepper.
struct EvolutionParams {
  double beta = 1.2;
  double eps = 0.1;
  double dt = 0.0075;
  double t_end = 0.5;
  double forcing = 0.0;
  KernelSpec kernel;

  double lambda() const { return dt / (eps * eps); }
  double delta() const { return lambda() / (1.0 + lambda()); }
  int total_steps() const;
  void validate() const;
};

enum class ShapeKind { GaugeBall, Cylinder, Halfspace };

struct Shape {
  ShapeKind kind = ShapeKind::GaugeBall;
  double radius = 1.2;
  GroupPoint normal{1.0, 0.0, 0.0};  // halfspace only; phi = <n, x> - offset
  double offset = 0.0;

  static Shape gauge_ball(double r) { return {ShapeKind::GaugeBall, r, {}, 0.0}; }
  static Shape cylinder(double rho) { return {ShapeKind::Cylinder, rho, {}, 0.0}; }
  static Shape halfspace(GroupPoint n, double offset = 0.0) { return {ShapeKind::Halfspace, 0.0, n, offset}; }

  /// Level function, negative inside.
  double phi(const GroupPoint& x) const;
};

/// m(x) = m-bar(phi(x) / eps). Axes along which the shape's field tends to a
/// constant get far-field boundaries, the others replicate (override with
/// `boundary`). Throws ResolutionTooCoarse if eps < 2 max(h1, h2).
ScalarField init_levelset_field(const Shape& shape, double eps, const InstantonProfile& profile,
                                const UniformGrid3& grid);
ScalarField init_levelset_field(const Shape& shape, double eps, const InstantonProfile& profile,
                                const UniformGrid3& grid, const std::array<AxisBoundary, 3>& boundary);

/// Distance from the origin to the first zero crossing along the coordinate
/// axis `axis` in direction `dir` (+1 or -1), by linear interpolation between
/// nodes. NaN if the sign never changes.
double axis_zero_crossing(const ScalarField& m, int axis, int dir);

struct StepDiagnostics {
  double t = 0.0;
  double min = 0.0;
  double max = 0.0;
  double radius_x1 = 0.0;   // crossing on the positive x1-axis
  double x3_top = 0.0;      // crossing on the positive x3-axis
  double x3_bottom = 0.0;   // crossing on the negative x3-axis (positive number)
};

StepDiagnostics diagnose(const ScalarField& m, double t);

/// Reusable stepper: holds the convolution plan or heat substep count.
class Stepper {
 public:
  Stepper(const UniformGrid3& grid, const EvolutionParams& p);
  ~Stepper();
  Stepper(Stepper&&) noexcept;
  Stepper& operator=(Stepper&&) noexcept;

  /// v = J^eps * m (analytic) or heat semigroup at time eps^2 tau.
  ScalarField smooth(const ScalarField& m) const;
  /// (1 - delta) m + delta tanh(beta v + a); far-field values follow the same map.
  ScalarField step(const ScalarField& m) const;
  const EvolutionParams& params() const;
  int heat_substeps() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ScalarField step(const ScalarField& m, const EvolutionParams& p);

struct Trajectory {
  std::vector<double> times;
  std::vector<ScalarField> snapshots;
  std::vector<StepDiagnostics> diagnostics;  // one per step, including t = 0
};

using StepObserver = std::function<void(int step, double t, const ScalarField& m)>;

/// Runs round(t_end / dt) steps; snapshot times must be multiples of dt in
/// [0, t_end] and strictly increasing.
Trajectory evolve(const ScalarField& m0, const EvolutionParams& p, const std::vector<double>& snapshot_times,
                  const StepObserver& observer = {});

struct BracketResult {
  Trajectory lower;
  Trajectory center;
  Trajectory upper;
  double min_gap = 0.0;  // min over steps of min(center - lower, upper - center)
};

/// Evolves with forcing a -+ beta delta_force eps alongside the unforced run
/// and checks pointwise ordering every step (BracketViolated otherwise).
/// Throws NoTripleRoot if the forced equilibria collapse.
BracketResult forcing_bracket(const ScalarField& m0, const EvolutionParams& p, double delta_force,
                              const std::vector<double>& snapshot_times);

}  // namespace hmcf
