#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "aplab/energy.hpp"
#include "aplab/field.hpp"

namespace aplab {

// Analytic descriptors for problem data. Experiments specify sources as
// formulas rather than raw arrays so resolution sweeps resample the same
// continuum object at every h.

struct PowerTerm {
  double amplitude = 1.0;
  double exponent = 0.0;
  Point center{0, 0, 0};
};

struct SourceSpec {
  double constant = 0.0;
  std::vector<PowerTerm> terms;

  bool singular() const;
  // r_floor clamps the radius of negative-exponent terms (0 disables)
  double value(const Point& x, double r_floor) const;

  static SourceSpec constant_source(double v);
  static SourceSpec power(double amplitude, double exponent, const Point& center = {0, 0, 0});

  static SourceSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Singular power-law terms are sampled with the radius clamped away from the
// center; the clamp shrinks with h but spans ever more cells, so sampled
// level sets stay lattice-resolved.
ScalarField sample_source(GridPtr grid, const std::string& name, const SourceSpec& spec);
// boundary data and exact solutions are sampled without the clamp
ScalarField sample_plain(GridPtr grid, const std::string& name, const SourceSpec& spec);

struct MatrixSpec {
  enum class Kind { Identity, ScaledIdentity, Anisotropic } kind = Kind::Identity;
  double value = 1.0;  // ScaledIdentity scale
  double a = 1.0, b = 0.0;  // Anisotropic: A(x) = a I + b x x^T (b >= 0)

  static MatrixSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

MatrixField sample_matrix(GridPtr grid, const MatrixSpec& spec);

}  // namespace aplab
