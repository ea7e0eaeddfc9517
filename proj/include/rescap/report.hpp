#pragma once

#include <string>

namespace rescap {

enum class BoundKind { Lower, Upper, Exact, Heuristic };

std::string to_string(BoundKind k);
BoundKind bound_kind_from_string(const std::string& s);

// A named scalar bound. `kind` records which side of the truth the value
// sits on; `method` records how it was obtained; `tol` the numeric slack.
struct BoundReport {
  std::string name;
  double value = 0.0;
  BoundKind kind = BoundKind::Heuristic;
  std::string method;
  double tol = 0.0;
};

BoundReport make_report(std::string name, double value, BoundKind kind,
                        std::string method, double tol);

}  // namespace rescap
