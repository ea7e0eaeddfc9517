#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rescap/localtherm.hpp"

using namespace rescap;

namespace {

ThermalContext qubit_ctx(double p0) {
  return thermal_state(Hamiltonian::diagonal((RVec(2) << 0.0, 1.0).finished()),
                       std::log(p0 / (1 - p0)));
}

TripartiteSetup setup_07() {
  auto a = qubit_ctx(0.7);
  auto b = qubit_ctx(0.7);
  RVec ec(5);
  for (int k = 0; k < 5; ++k) ec(k) = k + 0.05 * k * k;
  auto c = thermal_state(Hamiltonian::diagonal(ec), 0.5);
  return TripartiteSetup::make(2, a, b, c);
}

}  // namespace

TEST_CASE("kappa star") {
  auto flat = thermal_state(Hamiltonian::diagonal((RVec(2) << 0.0, 1.0).finished()), 0.0);
  CHECK(kappa_star(flat, flat) == doctest::Approx(1.0));

  CHECK(kappa_star(qubit_ctx(0.7), qubit_ctx(0.6)) == doctest::Approx(0.6));

  auto cold = qubit_ctx(1.0 - 1e-6);
  CHECK(kappa_star(cold, cold) < 1e-5);
}

TEST_CASE("alternative thermal state") {
  auto ctx = qubit_ctx(0.7);
  CHECK(op_norm(alt_thermal(ctx, 0.0).mat - ctx.gamma.mat) < 1e-14);

  auto flat = thermal_state(Hamiltonian::diagonal((RVec(2) << 0.0, 1.0).finished()), 0.0);
  CHECK(op_norm(alt_thermal(flat, 0.8).mat - identity(2) / 2.0) < 1e-12);

  // boundary: gamma = diag(0.7, 0.3), kappa = 0.6 lands on diag(1, 0)
  auto edge = alt_thermal(ctx, 0.6);
  CHECK(edge.mat(0, 0).real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(edge.mat(1, 1).real()) < 1e-9);

  CHECK_THROWS(alt_thermal(ctx, 0.8));  // beyond the admissible range
}

TEST_CASE("local thermalization marginals") {
  auto setup = setup_07();
  const double ks = kappa_star(setup.ctx_a, setup.ctx_b);
  CHECK(ks == doctest::Approx(0.6));

  for (double kappa : {0.0, 0.3, ks}) {
    auto rep = verify_local_thermalization(setup, kappa, 4, 1e-9, 5);
    CHECK(rep.pass);
    CHECK(rep.max_dev_a < 1e-9);
    CHECK(rep.max_dev_bc < 1e-9);
  }

  // the built Choi matrix is a valid channel
  auto ch = build_local_thermalization(setup, ks);
  ch.validate();

  // encoded message m: the AB output is the mixer applied to the m-th
  // rotated maximally entangled state
  Ket psi = max_entangled_ket(2);
  for (int m : {0, 2}) {
    Ket cm = Ket::Zero(5);
    cm(m) = 1;
    Mat input = kron(psi * psi.adjoint(), Mat(cm * cm.adjoint()));
    Mat out = local_therm_apply(setup, ks, input);
    Mat ab = partial_trace(out, {2, 2, 5}, {0, 1});
    Mat lift = kron(identity(2), setup.v_list[m]);
    Ket phim = lift * psi;
    Mat tilde = kron(alt_thermal(setup.ctx_a, ks).mat, alt_thermal(setup.ctx_b, ks).mat);
    Mat expect = (1 - ks) * tilde + ks * phim * phim.adjoint();
    CHECK((ab - expect).cwiseAbs().maxCoeff() < 1e-12);
  }

  // the identity channel is not a local thermalization: it leaks the input
  // marginal; the constant preparation of the target marginals is one
  auto id_rep = verify_local_thermalization(identity_channel(20), setup, 2, 1e-9, 1);
  CHECK(!id_rep.pass);
  CHECK(id_rep.max_dev_states > 0.1);
  Mat target = kron(setup.ctx_a.gamma.mat,
                    kron(setup.ctx_b.gamma.mat, setup.ctx_c.gamma.mat));
  auto const_rep =
      verify_local_thermalization(constant_channel(target, 20), setup, 2, 1e-9, 1);
  CHECK(const_rep.pass);
}

TEST_CASE("fully entangled fraction") {
  CHECK(fef(max_entangled(2)).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fef(make_state(identity(4) / 4.0, {2, 2})).value == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(fef(make_state(identity(9) / 9.0, {3, 3})).value ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-9));

  // isotropic family: p + (1-p)/d^2
  for (int d : {2, 3}) {
    auto phi = max_entangled(d);
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
      Mat iso = p * phi.mat + (1 - p) * identity(d * d) / (d * d);
      auto rep = fef(make_state(iso, {d, d}), 8, 3);
      CHECK(rep.value == doctest::Approx(p + (1 - p) / (d * d)).epsilon(1e-8));
    }
  }

  // rotated maximally entangled states reach 1, and the unoptimized
  // witness is never above the reported value
  Rng rng(9);
  for (int k = 0; k < 3; ++k) {
    auto rot = max_entangled_from_unitary(rng.haar_unitary(2));
    auto rep = fef(rot, 8, k);
    CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-8));
    const double witness = (max_entangled(2).mat * rot.mat).trace().real();
    CHECK(rep.value >= witness - 1e-10);
  }
}

TEST_CASE("theorem 5 demonstration") {
  // infinite temperature: kappa* = 1, perfect success, 2 bits at eps = 0
  {
    auto setup = TripartiteSetup::make(2, 0.0, 0.0, 0.0);
    auto rep = theorem5_demo(setup);
    CHECK(rep.kappa_limit == doctest::Approx(1.0));
    CHECK(rep.success_measured == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.success_matches);
    CHECK(rep.epsilon_threshold == doctest::Approx(0.0));
    CHECK(rep.capacity_bits == doctest::Approx(2.0));
    CHECK(rep.fef_value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.marginals.pass);
  }

  // gamma = diag(0.7, 0.3): kappa* = 0.6, success 0.7, threshold 0.3
  {
    auto setup = setup_07();
    auto rep = theorem5_demo(setup);
    CHECK(rep.kappa_limit == doctest::Approx(0.6));
    CHECK(rep.success_analytic == doctest::Approx(0.7));
    CHECK(rep.success_matches);
    CHECK(rep.epsilon_threshold == doctest::Approx(0.3));
    CHECK(rep.capacity_bits == doctest::Approx(2.0));
    CHECK(rep.fef_entangled);
    CHECK(rep.marginals.pass);

    // the closed form holds along the whole admissible kappa range
    for (double kappa : {0.0, 0.15, 0.3, 0.45, 0.6}) {
      auto sweep = theorem5_demo(setup, kappa);
      CHECK(sweep.success_matches);
      CHECK(sweep.success_measured ==
            doctest::Approx((1 - kappa) / 4 + kappa).epsilon(1e-12));
    }
  }
}
