#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rescap/rng.hpp"
#include "rescap/sdp.hpp"

using namespace rescap;

namespace {

// min lambda s.t. lambda*I - D = V >= 0 for Hermitian D
sdp::Problem eigmax_problem(const Mat& d) {
  sdp::Problem p;
  const int n = static_cast<int>(d.rows());
  int v = p.add_block(n);
  int l = p.add_block(1);
  // V - lambda*I = -D entrywise
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      std::vector<sdp::RawEntry> e = {{v, r, c, 1.0}};
      if (r == c) e.push_back({l, 0, 0, -1.0});
      sdp::add_complex_eq(p, e, -d(r, c));
    }
  sdp::add_objective(p, l, Mat::Identity(1, 1));
  return p;
}

}  // namespace

TEST_CASE("largest eigenvalue as an SDP") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  auto sol = sdp::solve(eigmax_problem(d));
  REQUIRE(sol.ok());
  CHECK(sol.primal_value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sol.gap < 1e-6);
  CHECK(sol.y.size() > 0);

  Rng rng(21);
  Mat g = rng.ginibre(4, 4);
  Mat h = (g + g.adjoint()) / 2.0;
  auto sol2 = sdp::solve(eigmax_problem(h));
  REQUIRE(sol2.ok());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  CHECK(sol2.primal_value == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-6));
}

TEST_CASE("min trace dominating a PSD matrix") {
  Rng rng(4);
  Mat a = rng.density(3) * 2.5;
  sdp::Problem p;
  int x = p.add_block(3);
  int v = p.add_block(3);
  sdp::add_matrix_eq(p, {{x, 1.0}, {v, -1.0}}, a);  // X - V = A
  sdp::add_objective(p, x, Mat::Identity(3, 3));
  auto sol = sdp::solve(p);
  REQUIRE(sol.ok());
  CHECK(sol.primal_value == doctest::Approx(a.trace().real()).epsilon(1e-6));
}

TEST_CASE("optimal discrimination matches Helstrom") {
  // states |0> and |+> with equal priors
  Mat r0 = Mat::Zero(2, 2);
  r0(0, 0) = 1;
  Mat r1 = Mat::Constant(2, 2, 0.5);

  sdp::Problem p;
  int e0 = p.add_block(2);
  int e1 = p.add_block(2);
  sdp::add_matrix_eq(p, {{e0, 1.0}, {e1, 1.0}}, Mat::Identity(2, 2));
  sdp::add_objective(p, e0, -0.5 * r0);
  sdp::add_objective(p, e1, -0.5 * r1);
  auto sol = sdp::solve(p);
  REQUIRE(sol.ok());
  const double helstrom = 0.5 * (1.0 + 0.5 * trace_norm(r0 - r1));
  CHECK(-sol.primal_value == doctest::Approx(helstrom).epsilon(1e-6));
  CHECK(-sol.primal_value == doctest::Approx(0.5 * (1.0 + 1.0 / std::sqrt(2.0))).epsilon(1e-6));
}

TEST_CASE("infeasible problem is reported") {
  sdp::Problem p;
  int x = p.add_block(2);
  std::vector<sdp::RawEntry> tr_entries = {{x, 0, 0, 1.0}, {x, 1, 1, 1.0}};
  sdp::add_complex_eq(p, tr_entries, -1.0);  // tr X = -1, X >= 0
  sdp::add_objective(p, x, Mat::Identity(2, 2));
  auto sol = sdp::solve(p);
  CHECK(!sol.ok());
  CHECK(sol.status == sdp::Status::Infeasible);
}

TEST_CASE("unbounded problem is reported") {
  // min -X_00 with only X_11 pinned leaves the objective unbounded below
  sdp::Problem p;
  int x = p.add_block(2);
  sdp::add_complex_eq(p, {{x, 1, 1, 1.0}}, 1.0);
  Mat c = Mat::Zero(2, 2);
  c(0, 0) = -1;
  sdp::add_objective(p, x, c);
  auto sol = sdp::solve(p);
  CHECK(!sol.ok());
  CHECK(sol.status == sdp::Status::Unbounded);
}

TEST_CASE("warm start is accepted") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = -1;
  d(1, 1) = 0.5;
  sdp::Problem p = eigmax_problem(d);
  p.init_x = std::vector<Mat>{5.0 * Mat::Identity(2, 2), 6.0 * Mat::Identity(1, 1)};
  auto sol = sdp::solve(p);
  REQUIRE(sol.ok());
  CHECK(sol.primal_value == doctest::Approx(0.5).epsilon(1e-6));
}
