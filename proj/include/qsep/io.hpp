// JSON serialization of density matrices and reports (nlohmann/json).
//
// Density-matrix file:
//   { "labeling": "two_qubit" | "spin_3_2",
//     "matrix": [[[re, im], [re, im], [re, im], [re, im]], ... 4 rows] }

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qsep/measures.hpp"
#include "qsep/states.hpp"

namespace qsep {

inline constexpr int kReportSchemaVersion = 1;

class parse_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

inline nlohmann::json matrix_to_json(const ComplexMatrix4& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

/// Parses the 4x4 array of [re, im] pairs; no density-matrix checks.
inline ComplexMatrix4 matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw parse_error("\"matrix\" must be an array of 4 rows");
  ComplexMatrix4 m;
  for (std::size_t r = 0; r < 4; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != 4) throw parse_error("each matrix row must hold 4 entries");
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw parse_error("matrix entries must be [re, im] number pairs");
      m(r, c) = complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline nlohmann::json to_json(const DensityMatrix4& rho) {
  return {{"labeling", std::string(to_string(rho.labeling()))}, {"matrix", matrix_to_json(rho.matrix())}};
}

/// Throws parse_error on malformed input and invalid_state on a matrix that
/// is not a density matrix.
inline DensityMatrix4 density_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("density-matrix file must hold a JSON object");
  if (!j.contains("matrix")) throw parse_error("missing \"matrix\"");
  Labeling lab = Labeling::TwoQubit;
  if (j.contains("labeling")) {
    if (!j["labeling"].is_string()) throw parse_error("\"labeling\" must be a string");
    try {
      lab = parse_labeling(j["labeling"].get<std::string>());
    } catch (const error& e) {
      throw parse_error(e.what());
    }
  }
  return DensityMatrix4::from_matrix(matrix_from_json(j["matrix"]), lab);
}

inline std::string dump_density(const DensityMatrix4& rho) { return to_json(rho).dump(2) + "\n"; }

inline void write_density_file(const std::string& path, const DensityMatrix4& rho) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open " + path + " for writing");
  os << dump_density(rho);
}

inline DensityMatrix4 read_density_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what());
  }
  return density_from_json(j);
}

inline nlohmann::json to_json(const EntanglementReport& r) {
  return {{"schema_version", kReportSchemaVersion},
          {"ppt_spectrum", r.ppt_spectrum},
          {"negativity", r.negativity},
          {"concurrence", r.concurrence},
          {"min_ppt_eig", r.min_ppt_eig},
          {"separable", r.separable},
          {"boundary", r.boundary}};
}

inline EntanglementReport report_from_json(const nlohmann::json& j) {
  EntanglementReport r;
  r.ppt_spectrum = j.at("ppt_spectrum").get<std::array<double, 4>>();
  r.negativity = j.at("negativity").get<double>();
  r.concurrence = j.at("concurrence").get<double>();
  r.min_ppt_eig = j.at("min_ppt_eig").get<double>();
  r.separable = j.at("separable").get<bool>();
  r.boundary = j.at("boundary").get<bool>();
  return r;
}

}  // namespace qsep
