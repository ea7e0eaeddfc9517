#pragma once

#include <string>

#include "json.hpp"
#include "rescap/kernel.hpp"
#include "rescap/report.hpp"

namespace rescap {

using Json = nlohmann::json;

// Matrix wire format: {"rows":r,"cols":c,"entries":[[re,im],...]} row-major.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

Json report_to_json(const BoundReport& r);
BoundReport report_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// Stable numeric formatting shared by every CSV/JSON emitter.
std::string fmt_double(double v);

}  // namespace rescap
