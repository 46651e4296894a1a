#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "morse/errors.hpp"
#include "morse/hermitian.hpp"
#include "morse/scene.hpp"

namespace morse {

// Scene files are JSON:
//   {
//     "n": 2,
//     "units": "chern",
//     "bulk_samples":     [{"weight": w, "theta": M}, ...],
//     "boundary_samples": [{"weight": w, "theta_tan": M, "levi": M}, ...]
//   }
// where a matrix M is row-major, each entry an [re, im] pair:
//   [[[3.0, 0.0]]] is the 1x1 matrix (3).
// "units" defaults to "chern"; sample arrays default to empty.

namespace detail {

using Json = nlohmann::ordered_json;

inline double require_number(const Json& j, const std::string& where) {
  if (!j.is_number())
    throw ParseError("scene: expected a number at " + where);
  return j.get<double>();
}

inline HermitianMatrix parse_matrix(const Json& j, int expected_dim,
                                    const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ParseError("scene: expected a matrix (array of rows) at " + where);
  const int dim = static_cast<int>(j.size());
  if (dim != expected_dim)
    throw DimensionMismatch("scene: matrix at " + where + " has dim " +
                            std::to_string(dim) + ", expected " +
                            std::to_string(expected_dim));
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw DimensionMismatch("scene: row " + std::to_string(r) + " at " +
                              where + " must have " + std::to_string(dim) +
                              " entries");
    for (int c = 0; c < dim; ++c) {
      const Json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2)
        throw ParseError("scene: entry (" + std::to_string(r) + "," +
                         std::to_string(c) + ") at " + where +
                         " must be an [re, im] pair");
      const std::string ctx = where + "[" + std::to_string(r) + "][" +
                              std::to_string(c) + "]";
      m(r, c) = Complex(require_number(entry[0], ctx),
                        require_number(entry[1], ctx));
    }
  }
  return HermitianMatrix(m);
}

inline double parse_weight(const Json& sample, const std::string& where,
                           long index) {
  if (!sample.contains("weight"))
    throw ParseError("scene: missing weight at " + where);
  const double w = require_number(sample["weight"], where + ".weight");
  if (w < 0.0)
    throw NegativeWeight("scene: negative weight at " + where, index);
  return w;
}

inline Json matrix_to_json(const HermitianMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.dim(); ++c) {
      const Complex e = m.entry(r, c);
      row.push_back(Json::array({e.real(), e.imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detail

inline Scene parse_scene_text(const std::string& text) {
  detail::Json doc;
  try {
    doc = detail::Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scene: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scene: top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("scene: missing integer field n");

  Scene scene;
  scene.n = doc["n"].get<int>();

  if (doc.contains("units")) {
    if (!doc["units"].is_string())
      throw ParseError("scene: units must be a string");
    const std::string u = doc["units"].get<std::string>();
    if (u == "chern")
      scene.units = Units::chern;
    else if (u == "raw")
      scene.units = Units::raw;
    else
      throw ParseError("scene: units must be \"chern\" or \"raw\", got \"" +
                       u + "\"");
  }

  if (doc.contains("bulk_samples")) {
    if (!doc["bulk_samples"].is_array())
      throw ParseError("scene: bulk_samples must be an array");
    long index = 0;
    for (const detail::Json& sample : doc["bulk_samples"]) {
      const std::string where = "bulk_samples[" + std::to_string(index) + "]";
      if (!sample.is_object())
        throw ParseError("scene: expected an object at " + where);
      const double w = detail::parse_weight(sample, where, index);
      if (!sample.contains("theta"))
        throw ParseError("scene: missing theta at " + where);
      scene.bulk.push_back(
          {w, detail::parse_matrix(sample["theta"], scene.n,
                                   where + ".theta")});
      ++index;
    }
  }

  if (doc.contains("boundary_samples")) {
    if (!doc["boundary_samples"].is_array())
      throw ParseError("scene: boundary_samples must be an array");
    long index = 0;
    for (const detail::Json& sample : doc["boundary_samples"]) {
      const std::string where =
          "boundary_samples[" + std::to_string(index) + "]";
      if (!sample.is_object())
        throw ParseError("scene: expected an object at " + where);
      const double w = detail::parse_weight(sample, where, index);
      if (!sample.contains("theta_tan") || !sample.contains("levi"))
        throw ParseError("scene: missing theta_tan or levi at " + where);
      scene.boundary.push_back(
          {w,
           detail::parse_matrix(sample["theta_tan"], scene.n - 1,
                                where + ".theta_tan"),
           detail::parse_matrix(sample["levi"], scene.n - 1,
                                where + ".levi")});
      ++index;
    }
  }

  validate_scene(scene);
  return scene;
}

inline Scene parse_scene(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("scene: cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene_text(buf.str());
}

// Re-emission uses shortest-round-trip doubles, so parse(scene_to_text(s))
// reproduces every matrix entry and weight exactly.
inline std::string scene_to_text(const Scene& scene) {
  detail::Json doc;
  doc["n"] = scene.n;
  doc["units"] = units_name(scene.units);
  detail::Json bulk = detail::Json::array();
  for (const BulkSample& s : scene.bulk) {
    detail::Json sample;
    sample["weight"] = s.weight;
    sample["theta"] = detail::matrix_to_json(s.theta);
    bulk.push_back(std::move(sample));
  }
  doc["bulk_samples"] = std::move(bulk);
  detail::Json boundary = detail::Json::array();
  for (const BoundarySample& s : scene.boundary) {
    detail::Json sample;
    sample["weight"] = s.weight;
    sample["theta_tan"] = detail::matrix_to_json(s.theta_tan);
    sample["levi"] = detail::matrix_to_json(s.levi);
    boundary.push_back(std::move(sample));
  }
  doc["boundary_samples"] = std::move(boundary);
  return doc.dump(2) + "\n";
}

}  // namespace morse
