#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rescap/channels.hpp"

using namespace rescap;

namespace {

DensityMatrix plus_state() {
  Ket v(2);
  v << 1, 1;
  return pure_state(v);
}

}  // namespace

TEST_CASE("apply and validation") {
  Rng rng(17);
  auto id2 = identity_channel(2);
  id2.validate();
  auto rho = make_state(rng.density(2));
  CHECK(op_norm(apply(id2, rho).mat - rho.mat) < 1e-12);

  auto sigma = make_state(rng.density(3));
  auto prep = constant_channel(sigma.mat, 2);
  prep.validate();
  CHECK(op_norm(apply(prep, rho).mat - sigma.mat) < 1e-12);

  CHECK(op_norm(apply(dephasing(2), plus_state()).mat - identity(2) / 2.0) < 1e-12);

  CHECK_THROWS(apply(id2, make_state(rng.density(3))));
}

TEST_CASE("adjoint action") {
  Rng rng(23);
  auto e = random_channel(rng, 2, 3);
  e.validate();
  auto rho = make_state(rng.density(2));
  Mat g = rng.ginibre(3, 3);
  Mat effect = (g + g.adjoint()) / 2.0;
  const double lhs = (effect * apply_op(e, rho.mat)).trace().real();
  const double rhs = (apply_adjoint(e, effect) * rho.mat).trace().real();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(op_norm(apply_adjoint(e, identity(3)) - identity(2)) < 1e-10);
}

TEST_CASE("compose and tensor") {
  Rng rng(5);
  auto e = random_channel(rng, 2, 2);
  auto id2 = identity_channel(2);
  CHECK(choi_trace_distance(compose(id2, e), e) < 1e-10);
  CHECK(choi_trace_distance(compose(e, id2), e) < 1e-10);

  auto deph = dephasing(2);
  CHECK(choi_trace_distance(compose(deph, deph), deph) < 1e-10);

  auto gamma = make_state(rng.density(2));
  auto cg = constant_channel(gamma.mat);
  auto both = tensor(cg, cg);
  auto joint = constant_channel(kron(gamma.mat, gamma.mat), 4);
  CHECK(choi_trace_distance(both, joint) < 1e-10);

  // parallel application factorizes on product inputs
  auto f = random_channel(rng, 2, 2);
  auto rho = make_state(rng.density(2));
  auto sig = make_state(rng.density(2));
  Mat lhs = apply_op(tensor(e, f), kron(rho.mat, sig.mat));
  Mat rhs = kron(apply_op(e, rho.mat), apply_op(f, sig.mat));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("named channels") {
  auto deph = dephasing(2);
  Mat diag_in = Mat::Zero(2, 2);
  diag_in(0, 0) = 0.3;
  diag_in(1, 1) = 0.7;
  CHECK(op_norm(apply_op(deph, diag_in) - diag_in) < 1e-12);

  CHECK(choi_trace_distance(depolarizing(2, 1.0), constant_channel(identity(2) / 2.0)) < 1e-12);

  const double p = 0.37;
  Mat zero = Mat::Zero(2, 2);
  zero(0, 0) = 1;
  Mat out = apply_op(depolarizing(2, p), zero);
  CHECK(std::abs(out(0, 0).real() - (1 - p / 2)) < 1e-12);
  CHECK(std::abs(out(1, 1).real() - p / 2) < 1e-12);

  Rng rng(2);
  Mat u = rng.haar_unitary(3);
  auto uch = unitary_channel(u);
  uch.validate();
  auto rho = make_state(rng.density(3));
  CHECK(op_norm(apply_op(uch, rho.mat) - u * rho.mat * u.adjoint()) < 1e-12);
}

TEST_CASE("group twirl") {
  auto tg1 = twirl_group(UnitaryGroup::trivial(3));
  CHECK(choi_trace_distance(tg1, identity_channel(3)) < 1e-10);

  // {I, Z} twirl kills off-diagonals
  auto tz = twirl_group(UnitaryGroup::pauli_z());
  CHECK(choi_trace_distance(tz, dephasing(2)) < 1e-10);
  CHECK(choi_trace_distance(compose(tz, tz), tz) < 1e-9);

  UnitaryGroup not_closed{{identity(2), 0.5 * identity(2)}};
  CHECK_THROWS(twirl_group(not_closed));

  CHECK(UnitaryGroup::phase_group(4).verify_closure());
  CHECK(UnitaryGroup::weyl(3).verify_closure());
}

TEST_CASE("analytic u (x) u* twirl") {
  const int d = 2;
  auto t = twirl_uu_star(d);
  t.validate();
  auto phi = max_entangled(d);
  CHECK(op_norm(apply(t, phi).mat - phi.mat) < 1e-12);
  Mat mixed = identity(4) / 4.0;
  CHECK(op_norm(apply_op(t, mixed) - mixed) < 1e-12);

  // |00><00| goes to the isotropic state with singlet fraction 1/2
  Ket v00 = Ket::Zero(4);
  v00(0) = 1;
  Mat out = apply_op(t, v00 * v00.adjoint());
  Mat expect = 0.5 * phi.mat + 0.5 * (identity(4) - phi.mat) / 3.0;
  CHECK(op_norm(out - expect) < 1e-12);

  // idempotent, and commutes with sampled U (x) U*
  CHECK(choi_trace_distance(compose(t, t), t) < 1e-9);
  Rng rng(31);
  for (int k = 0; k < 4; ++k) {
    Mat u = rng.haar_unitary(d);
    Mat uu = kron(u, u.conjugate());
    auto uch = unitary_channel(uu);
    CHECK(choi_trace_distance(compose(uch, t), compose(t, uch)) < 1e-8);
  }

  // twirl outputs are isotropic: spectrum has at most two distinct values
  Mat rho = rng.density(4);
  auto iso = herm_eig(apply_op(t, rho));
  const double lo = iso.values.minCoeff(), hi = iso.values.maxCoeff();
  for (int i = 0; i < iso.values.size(); ++i)
    CHECK((std::abs(iso.values(i) - lo) < 1e-10 || std::abs(iso.values(i) - hi) < 1e-10));
}

TEST_CASE("diamond distance") {
  auto id2 = identity_channel(2);
  auto rep0 = diamond_distance(id2, id2, DiamondMode::Exact);
  CHECK(std::abs(rep0.upper.value) < 1e-6);

  // constant channels to orthogonal pure states are perfectly distinguishable
  Mat p0 = Mat::Zero(2, 2), p1 = Mat::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  auto rep2 = diamond_distance(constant_channel(p0), constant_channel(p1), DiamondMode::Exact);
  CHECK(rep2.upper.value == doctest::Approx(2.0).epsilon(1e-6));

  // ||id - depolarizing(2,p)||_diamond = 3p/2
  for (double p : {0.2, 0.8}) {
    auto rep = diamond_distance(id2, depolarizing(2, p), DiamondMode::Exact);
    CHECK(rep.upper.value == doctest::Approx(1.5 * p).epsilon(1e-5));
    auto bracket = diamond_distance(id2, depolarizing(2, p), DiamondMode::Bracket);
    CHECK(bracket.lower.value <= rep.upper.value + 1e-6);
    CHECK(bracket.upper.value >= rep.upper.value - 1e-6);
  }

  // bracket sandwiches exact on random pairs
  Rng rng(77);
  for (int k = 0; k < 5; ++k) {
    auto e = random_channel(rng, 2, 2);
    auto f = random_channel(rng, 2, 2);
    auto ex = diamond_distance(e, f, DiamondMode::Exact);
    auto br = diamond_distance(e, f, DiamondMode::Bracket);
    REQUIRE(ex.exact);
    CHECK(br.lower.value <= ex.upper.value + 1e-6);
    CHECK(ex.upper.value <= br.upper.value + 1e-6);
  }
}
