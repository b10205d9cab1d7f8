#include "aplab/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace aplab {

bool SourceSpec::singular() const {
  for (const auto& t : terms)
    if (t.exponent < 0) return true;
  return false;
}

double SourceSpec::value(const Point& x, double r_floor) const {
  double v = constant;
  for (const auto& t : terms) {
    double d = dist(x, t.center);
    if (t.exponent < 0 && d < r_floor) d = r_floor;
    v += t.amplitude * std::pow(d, t.exponent);
  }
  return v;
}

SourceSpec SourceSpec::constant_source(double v) {
  SourceSpec s;
  s.constant = v;
  return s;
}

SourceSpec SourceSpec::power(double amplitude, double exponent, const Point& center) {
  SourceSpec s;
  s.terms.push_back({amplitude, exponent, center});
  return s;
}

SourceSpec SourceSpec::from_json(const nlohmann::json& j) {
  const std::string kind = j.value("kind", "constant");
  auto term_from = [](const nlohmann::json& t) {
    PowerTerm pt;
    pt.amplitude = t.value("amplitude", 1.0);
    pt.exponent = t.value("exponent", 0.0);
    if (t.contains("center")) {
      auto c = t.at("center");
      for (std::size_t a = 0; a < c.size() && a < 3; ++a) pt.center[a] = c[a].get<double>();
    }
    return pt;
  };
  SourceSpec s;
  if (kind == "constant") {
    s.constant = j.value("value", 0.0);
  } else if (kind == "power") {
    s.terms.push_back(term_from(j));
  } else if (kind == "sum") {
    s.constant = j.value("constant", 0.0);
    for (const auto& t : j.value("terms", nlohmann::json::array())) s.terms.push_back(term_from(t));
  } else {
    throw std::invalid_argument("source: unknown kind '" + kind + "'");
  }
  return s;
}

nlohmann::json SourceSpec::to_json() const {
  if (terms.empty()) return {{"kind", "constant"}, {"value", constant}};
  if (terms.size() == 1 && constant == 0.0) {
    const auto& t = terms[0];
    return {{"kind", "power"},
            {"amplitude", t.amplitude},
            {"exponent", t.exponent},
            {"center", {t.center[0], t.center[1], t.center[2]}}};
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : terms)
    arr.push_back({{"amplitude", t.amplitude},
                   {"exponent", t.exponent},
                   {"center", {t.center[0], t.center[1], t.center[2]}}});
  return {{"kind", "sum"}, {"constant", constant}, {"terms", arr}};
}

ScalarField sample_source(GridPtr grid, const std::string& name, const SourceSpec& spec) {
  const double floor = singular_sample_floor(grid->cell_size);
  ScalarField f = sample_field(grid, name, [&](const Point& x) { return spec.value(x, floor); });
  f.singular_sampled = spec.singular();
  return f;
}

ScalarField sample_plain(GridPtr grid, const std::string& name, const SourceSpec& spec) {
  return sample_field(grid, name, [&](const Point& x) { return spec.value(x, 0.0); });
}

MatrixSpec MatrixSpec::from_json(const nlohmann::json& j) {
  MatrixSpec m;
  const std::string kind = j.value("kind", "identity");
  if (kind == "identity") {
    m.kind = Kind::Identity;
  } else if (kind == "scaled_identity") {
    m.kind = Kind::ScaledIdentity;
    m.value = j.value("value", 1.0);
    if (!(m.value > 0)) throw std::invalid_argument("matrix: scale must be positive");
  } else if (kind == "anisotropic") {
    m.kind = Kind::Anisotropic;
    m.a = j.value("a", 1.0);
    m.b = j.value("b", 0.0);
    if (!(m.a > 0) || m.b < 0)
      throw std::invalid_argument("matrix: anisotropic needs a > 0 and b >= 0");
  } else {
    throw std::invalid_argument("matrix: unknown kind '" + kind + "'");
  }
  return m;
}

nlohmann::json MatrixSpec::to_json() const {
  switch (kind) {
    case Kind::Identity: return {{"kind", "identity"}};
    case Kind::ScaledIdentity: return {{"kind", "scaled_identity"}, {"value", value}};
    case Kind::Anisotropic: return {{"kind", "anisotropic"}, {"a", a}, {"b", b}};
  }
  return {};
}

MatrixField sample_matrix(GridPtr grid, const MatrixSpec& spec) {
  const int d = grid->dim;
  switch (spec.kind) {
    case MatrixSpec::Kind::Identity: return identity_matrix_field(std::move(grid));
    case MatrixSpec::Kind::ScaledIdentity: {
      const double v = spec.value;
      return sample_matrix_field(
          grid,
          [d, v](const Point&, double* out) {
            int k = 0;
            for (int i = 0; i < d; ++i)
              for (int j = i; j < d; ++j) out[k++] = (i == j) ? v : 0.0;
          },
          v, v);
    }
    case MatrixSpec::Kind::Anisotropic: {
      const double a = spec.a, b = spec.b;
      // eigenvalues are a and a + b|x|^2; box corners satisfy |x|^2 <= 3
      return sample_matrix_field(
          grid,
          [d, a, b](const Point& x, double* out) {
            int k = 0;
            for (int i = 0; i < d; ++i)
              for (int j = i; j < d; ++j) out[k++] = (i == j ? a : 0.0) + b * x[i] * x[j];
          },
          a, a + 3.0 * b);
    }
  }
  throw std::logic_error("sample_matrix: unreachable");
}

}  // namespace aplab
