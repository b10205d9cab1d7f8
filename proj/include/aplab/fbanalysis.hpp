#pragma once

#include <string>
#include <vector>

#include "aplab/field.hpp"

namespace aplab {

struct PositivitySet {
  CellMask mask;                      // {u > t_pos} on interior cells
  std::vector<std::size_t> fb_cells;  // mask cells with a non-mask interior face neighbor
};

PositivitySet positivity_set(const ScalarField& u, double t_pos);

enum class FitCheck { TwoSided, AtLeast, AtMost };

struct ExponentFit {
  std::vector<double> radii;   // usable radii (zero-sup radii dropped)
  std::vector<double> values;  // sup samples
  std::vector<double> dropped; // radii removed because the sup vanished
  double slope = 0;            // least-squares slope in log-log
  double r2 = 0;
  double target = 0;
  double tol = 0;
  bool pass = false;
  bool reliable = true;        // r2 >= 0.98
};

enum class SupMode { BallSup, SphereSup };

// Fits log(sup) against log(r). Sphere suprema are taken over the shell of
// cells whose center distance to x0 lies in [r-h, r+h]. Values are normalized
// by the first sample before the logs, which makes the slope exactly
// invariant under u -> c u for power-of-two c.
ExponentFit growth_fit(const ScalarField& u, const Point& x0, SupMode mode,
                       const std::vector<double>& radii, double target, double tol,
                       FitCheck check = FitCheck::TwoSided);

struct DensityEntry {
  double r = 0;
  double density = 0;  // |B_r cap {u>0}| / |B_r cap B_1| (discrete measures)
  bool clipped = false;
};

struct FBReport {
  Point y0{0, 0, 0};
  std::vector<DensityEntry> per_radius;
  double min_density = 0;  // tau_0 estimate
  bool degradation_alarm = false;
  std::string note;
};

// Positivity density around y0; balls reaching past the unit sphere are
// clipped to the domain and flagged. Uses the strict set {u > 0}, so the
// report is exactly invariant under positive rescaling of u.
FBReport density_report(const ScalarField& u, const Point& y0, const std::vector<double>& radii);

struct OscillationDecay {
  std::vector<double> radii;
  std::vector<double> osc;  // sup - inf over B_r(x0)
  bool monotone = false;
};

OscillationDecay oscillation_decay(const ScalarField& u, const Point& x0,
                                   const std::vector<double>& radii);

// Hausdorff distance between two finite point sets (free-boundary stability)
double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b);

std::vector<double> dyadic_radii(double r_max, double r_min);

}  // namespace aplab
