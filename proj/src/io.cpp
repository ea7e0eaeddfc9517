#include "rescap/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rescap {

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Exact: return "exact";
    case BoundKind::Heuristic: return "heuristic";
  }
  return "heuristic";
}

BoundKind bound_kind_from_string(const std::string& s) {
  if (s == "lower") return BoundKind::Lower;
  if (s == "upper") return BoundKind::Upper;
  if (s == "exact") return BoundKind::Exact;
  if (s == "heuristic") return BoundKind::Heuristic;
  throw std::invalid_argument("unknown bound kind: " + s);
}

BoundReport make_report(std::string name, double value, BoundKind kind,
                        std::string method, double tol) {
  return BoundReport{std::move(name), value, kind, std::move(method), tol};
}

Json matrix_to_json(const Mat& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw std::invalid_argument("matrix json: expected {rows, cols, entries}");
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix json: non-positive dimensions");
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<size_t>(rows) * cols)
    throw std::invalid_argument("matrix json: entries length must equal rows*cols");
  Mat m(rows, cols);
  size_t k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c, ++k) {
      const auto& e = entries[k];
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix json: each entry must be [re, im]");
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

Json report_to_json(const BoundReport& r) {
  return Json{{"name", r.name},
              {"value", r.value},
              {"kind", to_string(r.kind)},
              {"method", r.method},
              {"tol", r.tol}};
}

BoundReport report_from_json(const Json& j) {
  BoundReport r;
  r.name = j.at("name").get<std::string>();
  r.value = j.at("value").get<double>();
  r.kind = bound_kind_from_string(j.at("kind").get<std::string>());
  r.method = j.at("method").get<std::string>();
  r.tol = j.at("tol").get<double>();
  return r;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace rescap
