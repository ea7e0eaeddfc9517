#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "rescap/io.hpp"
#include "rescap/rng.hpp"

using namespace rescap;

TEST_CASE("matrix json round trip") {
  Rng rng(1);
  Mat m = rng.ginibre(3, 2);
  Json j = matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 2);
  CHECK(j["entries"].size() == 6);
  Mat back = matrix_from_json(j);
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("matrix json rejects malformed input") {
  CHECK_THROWS(matrix_from_json(Json::object()));
  CHECK_THROWS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"entries", Json::array()}}));
  Json bad = matrix_to_json(Mat::Identity(2, 2));
  bad["entries"][0] = 3.0;  // not an [re, im] pair
  CHECK_THROWS(matrix_from_json(bad));
}

TEST_CASE("report serialization") {
  auto rep = make_report("capacity_lower", 1.5, BoundKind::Lower, "see-saw", 1e-9);
  Json j = report_to_json(rep);
  auto back = report_from_json(j);
  CHECK(back.name == rep.name);
  CHECK(back.value == rep.value);
  CHECK(back.kind == rep.kind);
  CHECK(back.method == rep.method);
  CHECK(back.tol == rep.tol);
}

TEST_CASE("file io and malformed files") {
  const std::string path = "/tmp/rescap_test_io.json";
  save_json_file(path, Json{{"x", 1}});
  CHECK(load_json_file(path)["x"] == 1);

  std::FILE* f = std::fopen(path.c_str(), "w");
  std::fputs("{not json", f);
  std::fclose(f);
  CHECK_THROWS(load_json_file(path));
  CHECK_THROWS(load_json_file("/nonexistent/path.json"));
  std::remove(path.c_str());
}

TEST_CASE("stable numeric formatting") {
  CHECK(fmt_double(1.0) == "1");
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(1e-9) == "1e-09");
  CHECK(fmt_double(2.0 / 3.0) == fmt_double(2.0 / 3.0));
}
