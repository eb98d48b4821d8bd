#include "menger/curve_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "menger/error.hpp"

namespace menger {

using nlohmann::json;

std::string curve_to_json(const Curve& curve) {
  json j;
  j["dim"] = curve.dim();
  json verts = json::array();
  for (Eigen::Index i = 0; i < curve.size(); ++i) {
    json row = json::array();
    for (int d = 0; d < curve.dim(); ++d) row.push_back(curve.vertices()(d, i));
    verts.push_back(row);
  }
  j["vertices"] = verts;
  j["is_arclength"] = curve.is_arclength();
  return j.dump();
}

Curve curve_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("invalid curve JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
    throw Error(ErrorKind::BadInput, "curve JSON needs \"dim\" and \"vertices\"");
  if (!j["dim"].is_number_integer()) throw Error(ErrorKind::BadInput, "\"dim\" must be an integer");
  const int dim = j["dim"].get<int>();
  if (dim != 2 && dim != 3) throw Error(ErrorKind::BadInput, "\"dim\" must be 2 or 3");
  const json& verts = j["vertices"];
  if (!verts.is_array()) throw Error(ErrorKind::BadInput, "\"vertices\" must be an array");
  if (verts.size() < 3) throw Error(ErrorKind::BadInput, "a closed curve needs at least 3 vertices");
  Eigen::MatrixXd P(dim, static_cast<Eigen::Index>(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i) {
    const json& row = verts[i];
    if (!row.is_array() || row.size() != static_cast<size_t>(dim))
      throw Error(ErrorKind::BadInput, "vertex " + std::to_string(i) + " does not have " + std::to_string(dim) + " coordinates");
    for (int d = 0; d < dim; ++d) {
      if (!row[d].is_number()) throw Error(ErrorKind::BadInput, "non-numeric coordinate in vertex " + std::to_string(i));
      P(d, static_cast<Eigen::Index>(i)) = row[d].get<double>();
    }
  }
  Curve c{P};
  if (j.contains("is_arclength")) {
    if (!j["is_arclength"].is_boolean()) throw Error(ErrorKind::BadInput, "\"is_arclength\" must be a boolean");
    if (j["is_arclength"].get<bool>() && !c.is_arclength())
      throw Error(ErrorKind::BadInput, "file claims arc length but edge lengths differ");
  }
  return c;
}

std::string curve_to_csv(const Curve& curve) {
  std::ostringstream o;
  o << std::setprecision(17);
  for (Eigen::Index i = 0; i < curve.size(); ++i) {
    for (int d = 0; d < curve.dim(); ++d) o << (d ? "," : "") << curve.vertices()(d, i);
    o << '\n';
  }
  return o.str();
}

Curve curve_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorKind::BadInput, "bad CSV cell '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorKind::BadInput, "CSV rows have different lengths");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 3) throw Error(ErrorKind::BadInput, "a closed curve needs at least 3 vertices");
  const auto dim = static_cast<Eigen::Index>(rows.front().size());
  if (dim != 2 && dim != 3) throw Error(ErrorKind::BadInput, "CSV rows must have 2 or 3 columns");
  Eigen::MatrixXd P(dim, static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (Eigen::Index d = 0; d < dim; ++d) P(d, static_cast<Eigen::Index>(i)) = rows[i][d];
  return Curve{P};
}

namespace {
bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace

Curve read_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ends_with(path, ".json") ? curve_from_json(buf.str()) : curve_from_csv(buf.str());
}

void write_curve(const Curve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::BadInput, "cannot write " + path);
  out << (ends_with(path, ".json") ? curve_to_json(curve) + "\n" : curve_to_csv(curve));
}

}  // namespace menger
