#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "aplab/field.hpp"
#include "aplab/radial.hpp"

namespace aplab {

// CSV with one row per cell (index per axis, coordinates, value) plus a JSON
// header file (same stem, .json) holding {dim, resolution, name}.
void write_field_csv(const std::string& path, const ScalarField& f);
ScalarField read_field_csv(const std::string& path, GridPtr grid);

void write_radial_csv(const std::string& path, const RadialProfile& p);

void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

// generic table: header row then numeric rows, serialized with max precision
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

}  // namespace aplab
