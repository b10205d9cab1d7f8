#include "aplab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aplab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string header_path(const std::string& csv_path) {
  auto dot = csv_path.rfind('.');
  return (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".json";
}

}  // namespace

void write_field_csv(const std::string& path, const ScalarField& f) {
  const GridDomain& g = *f.grid;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (g.dim == 1) out << "i,x,value\n";
  if (g.dim == 2) out << "i,j,x,y,value\n";
  if (g.dim == 3) out << "i,j,k,x,y,z,value\n";
  for (std::size_t id = 0; id < g.cells; ++id) {
    auto c = g.coords(id);
    const Point x = g.center(id);
    for (int a = 0; a < g.dim; ++a) out << c[a] << ',';
    for (int a = 0; a < g.dim; ++a) out << num(x[a]) << ',';
    out << num(f.values[id]) << '\n';
  }
  nlohmann::json hdr{{"dim", g.dim}, {"resolution", g.resolution}, {"name", f.name}};
  write_json_file(header_path(path), hdr);
}

ScalarField read_field_csv(const std::string& path, GridPtr grid) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ScalarField f = make_field(std::move(grid), "loaded");
  std::string line;
  std::getline(in, line);  // header
  std::size_t row = 0;
  const int d = f.grid->dim;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    double val = 0;
    for (int c = 0; c < 2 * d + 1; ++c) {
      std::getline(ss, tok, ',');
      if (c == 2 * d) val = std::stod(tok);
    }
    if (row >= f.values.size()) throw std::runtime_error("field csv longer than grid");
    f.values[row++] = val;
  }
  if (row != f.values.size()) throw std::runtime_error("field csv shorter than grid");
  return f;
}

void write_radial_csv(const std::string& path, const RadialProfile& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "r,u\n";
  for (std::size_t i = 0; i < p.r.size(); ++i)
    out << num(p.r[i]) << ',' << num(p.u[i]) << '\n';
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? ',' : '\n');
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out << num(r[i]) << (i + 1 < r.size() ? ',' : '\n');
  }
}

}  // namespace aplab
