#include "rescap/localtherm.hpp"

#include <cmath>

namespace rescap {

void TripartiteSetup::validate() const {
  if (d < 2) throw std::invalid_argument("setup: d must be >= 2");
  if (dim_total() > 64) throw std::invalid_argument("setup: total dimension beyond guard");
  if (ctx_a.gamma.dim() != d || ctx_b.gamma.dim() != d || ctx_c.gamma.dim() != dim_c())
    throw std::invalid_argument("setup: context dimensions must be d, d, d^2+1");
  if (static_cast<int>(v_list.size()) != dim_c())
    throw std::invalid_argument("setup: selection list must have d^2+1 entries");
  if (op_norm(v_list.back() - identity(d)) > 1e-10)
    throw std::invalid_argument("setup: last selection unitary must be the identity");
  for (const auto& v : v_list)
    if (op_norm(v.adjoint() * v - identity(d)) > tols().eig_recon)
      throw std::invalid_argument("setup: selection entries must be unitary");
  for (const auto* ctx : {&ctx_a, &ctx_b, &ctx_c}) {
    if (ctx->beta > 0) {
      RVec e = ctx->h.energies;
      std::sort(e.begin(), e.end());
      for (int i = 0; i + 1 < e.size(); ++i)
        if (std::abs(e(i + 1) - e(i)) < 1e-12)
          throw std::invalid_argument("setup: degenerate Hamiltonian at positive beta");
    }
  }
}

TripartiteSetup TripartiteSetup::make(int d, double beta_a, double beta_b, double beta_c) {
  auto ha = Hamiltonian::diagonal(RVec::LinSpaced(d, 0.0, d - 1.0));
  auto hb = ha;
  // any non-degenerate spectrum works for C; slight anharmonicity
  RVec ec(d * d + 1);
  for (int k = 0; k < ec.size(); ++k) ec(k) = k + 0.05 * k * k;
  auto hc = Hamiltonian::diagonal(ec);
  return make(d, thermal_state(ha, beta_a), thermal_state(hb, beta_b),
              thermal_state(hc, beta_c));
}

TripartiteSetup TripartiteSetup::make(int d, ThermalContext a, ThermalContext b,
                                      ThermalContext c, std::vector<Mat> v_list) {
  TripartiteSetup s;
  s.d = d;
  s.ctx_a = std::move(a);
  s.ctx_b = std::move(b);
  s.ctx_c = std::move(c);
  if (v_list.empty()) {
    s.v_list = weyl_unitaries(d);
    s.v_list.push_back(identity(d));
  } else {
    s.v_list = std::move(v_list);
  }
  s.validate();
  return s;
}

double kappa_star(const ThermalContext& ctx_a, const ThermalContext& ctx_b) {
  if (ctx_a.gamma.dim() != ctx_b.gamma.dim())
    throw std::invalid_argument("kappa_star: dimension mismatch");
  return ctx_a.gamma.dim() * std::min(ctx_a.p_min, ctx_b.p_min);
}

DensityMatrix alt_thermal(const ThermalContext& ctx, double kappa) {
  if (kappa < 0 || kappa > 1) throw std::invalid_argument("alt_thermal: kappa outside [0,1]");
  const int d = ctx.gamma.dim();
  if (kappa >= 1.0 - 1e-12) {
    // kappa = 1 is admissible only at infinite temperature, where the
    // correction term vanishes identically
    if (op_norm(ctx.gamma.mat - identity(d) / d) > 1e-10)
      throw std::invalid_argument("alt_thermal: kappa = 1 needs the maximally mixed state");
    return ctx.gamma;
  }
  Mat g = ctx.gamma.mat + kappa / (1.0 - kappa) * (ctx.gamma.mat - identity(d) / d);
  return make_state((g + g.adjoint()) / 2.0);  // throws when kappa is inadmissible
}

namespace {

struct Dims {
  int d, dc, total;
};

// block (c, c') of x over the trailing C factor: a d^2 x d^2 operator on AB
Mat c_block(const Mat& x, const Dims& dm, int c, int cp) {
  Mat out(dm.d * dm.d, dm.d * dm.d);
  for (int ab = 0; ab < dm.d * dm.d; ++ab)
    for (int ab2 = 0; ab2 < dm.d * dm.d; ++ab2)
      out(ab, ab2) = x(ab * dm.dc + c, ab2 * dm.dc + cp);
  return out;
}

void set_c_block(Mat& x, const Dims& dm, int c, int cp, const Mat& block) {
  for (int ab = 0; ab < dm.d * dm.d; ++ab)
    for (int ab2 = 0; ab2 < dm.d * dm.d; ++ab2)
      x(ab * dm.dc + c, ab2 * dm.dc + cp) = block(ab, ab2);
}

}  // namespace

Mat local_therm_apply(const TripartiteSetup& setup, double kappa, const Mat& x) {
  const Dims dm{setup.d, setup.dim_c(), setup.dim_total()};
  if (x.rows() != dm.total || x.cols() != dm.total)
    throw std::invalid_argument("local_therm_apply: dimension mismatch");
  const double ks = kappa_star(setup.ctx_a, setup.ctx_b);
  if (kappa < 0 || kappa > ks + 1e-12)
    throw std::invalid_argument("local_therm_apply: kappa outside [0, kappa_star]");

  // stage 1: (U (x) U*) twirl on AB, C untouched
  Mat y1 = Mat::Zero(dm.total, dm.total);
  for (int c = 0; c < dm.dc; ++c)
    for (int cp = 0; cp < dm.dc; ++cp)
      set_c_block(y1, dm, c, cp, twirl_uu_star_op(dm.d, c_block(x, dm, c, cp)));

  // stage 2: controlled unitary on B selected by C, trace out C, refresh
  // to gamma_C: sum_n (I_A (x) V_n) y1^{(n,n)}_{AB} (I_A (x) V_n)^+ (x) gamma_C
  Mat ab_part = Mat::Zero(dm.d * dm.d, dm.d * dm.d);
  for (int n = 0; n < dm.dc; ++n) {
    Mat lift = kron(identity(dm.d), setup.v_list[n]);
    ab_part += lift * c_block(y1, dm, n, n) * lift.adjoint();
  }

  // stage 3: mixer on AB
  Mat tilde = kron(alt_thermal(setup.ctx_a, kappa).mat, alt_thermal(setup.ctx_b, kappa).mat);
  Mat mixed = (1.0 - kappa) * ab_part.trace() * tilde + kappa * ab_part;

  return kron(mixed, setup.ctx_c.gamma.mat);
}

ChannelChoi build_local_thermalization(const TripartiteSetup& setup, double kappa) {
  setup.validate();
  const int total = setup.dim_total();
  ChannelChoi e = channel_from_action(
      total, total, [&](const Mat& x) { return local_therm_apply(setup, kappa, x); });
  e.validate();
  return e;
}

namespace {

MarginalReport verify_marginals(const TripartiteSetup& setup,
                                const std::function<Mat(const Mat&)>& action, int samples,
                                double tol, uint64_t seed) {
  const Dims dm{setup.d, setup.dim_c(), setup.dim_total()};
  MarginalReport rep;
  const Mat gamma_a = setup.ctx_a.gamma.mat;
  const Mat gamma_bc = kron(setup.ctx_b.gamma.mat, setup.ctx_c.gamma.mat);
  const std::vector<int> dims{dm.d, dm.d, dm.dc};

  auto deviations = [&](const Mat& x, double* dev_a, double* dev_bc) {
    Mat out = action(x);
    const Complex trx = x.trace();
    Mat ma = partial_trace(out, dims, {0});
    Mat mbc = partial_trace(out, dims, {1, 2});
    *dev_a = trace_norm(ma - trx * gamma_a);
    *dev_bc = trace_norm(mbc - trx * gamma_bc);
  };

  // spanning operator basis certifies every input by linearity
  Mat basis = Mat::Zero(dm.total, dm.total);
  for (int i = 0; i < dm.total; ++i)
    for (int j = 0; j < dm.total; ++j) {
      basis(i, j) = 1;
      double da, dbc;
      deviations(basis, &da, &dbc);
      basis(i, j) = 0;
      rep.max_dev_a = std::max(rep.max_dev_a, da);
      rep.max_dev_bc = std::max(rep.max_dev_bc, dbc);
    }

  Rng rng = Rng::split(seed, 0x10CA1);
  for (int s = 0; s < samples; ++s) {
    Mat x;
    if (s % 2 == 0) {
      Ket v = rng.haar_ket(dm.total);
      x = v * v.adjoint();
    } else {
      Ket va = rng.haar_ket(dm.d), vb = rng.haar_ket(dm.d), vc = rng.haar_ket(dm.dc);
      Ket v = kron(kron(va, vb), vc);
      x = v * v.adjoint();
    }
    double da, dbc;
    deviations(x, &da, &dbc);
    rep.max_dev_states = std::max(rep.max_dev_states, std::max(da, dbc));
  }
  rep.pass = rep.max_dev_a <= tol && rep.max_dev_bc <= tol && rep.max_dev_states <= tol;
  return rep;
}

}  // namespace

MarginalReport verify_local_thermalization(const TripartiteSetup& setup, double kappa,
                                           int samples, double tol, uint64_t seed) {
  return verify_marginals(
      setup, [&](const Mat& x) { return local_therm_apply(setup, kappa, x); }, samples, tol,
      seed);
}

MarginalReport verify_local_thermalization(const ChannelChoi& channel,
                                           const TripartiteSetup& setup, int samples,
                                           double tol, uint64_t seed) {
  if (channel.d_in != setup.dim_total() || channel.d_out != setup.dim_total())
    throw std::invalid_argument("verify: channel does not act on the setup's space");
  return verify_marginals(
      setup, [&](const Mat& x) { return apply_op(channel, x); }, samples, tol, seed);
}

FefReport fef(const DensityMatrix& rho, int restarts, uint64_t seed) {
  const int dd = rho.dim();
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dd))));
  if (d * d != dd) throw std::invalid_argument("fef: state is not square bipartite");

  // <Phi_U| rho |Phi_U> = (1/d) sum conj(U_ki) U_lj rho[(k,i),(l,j)];
  // ascent step: U <- polar factor of the gradient G_ki = (1/d) sum_lj
  // U_lj rho[(k,i),(l,j)]
  auto gradient = [&](const Mat& u) {
    Mat g = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        Complex acc = 0;
        for (int l = 0; l < d; ++l)
          for (int j = 0; j < d; ++j) acc += u(l, j) * rho.mat(k * d + i, l * d + j);
        g(k, i) = acc / static_cast<double>(d);
      }
    return g;
  };
  auto value = [&](const Mat& u) {
    return ((u.adjoint() * gradient(u)).trace()).real();
  };

  FefReport rep;
  rep.restarts = restarts;
  auto weyl = weyl_unitaries(d);
  for (int r = 0; r < restarts; ++r) {
    Mat u;
    if (r == 0) {
      u = identity(d);
    } else if (r <= static_cast<int>(weyl.size())) {
      u = weyl[r - 1];
    } else {
      u = Rng::split(seed, 900 + r).haar_unitary(d);
    }
    double prev = -1.0;
    for (int it = 0; it < 200; ++it) {
      const double v = value(u);
      if (v - prev < 1e-12 && it > 0) {
        if (std::abs(v - prev) < 1e-10) rep.converged = true;
        break;
      }
      prev = v;
      Eigen::JacobiSVD<Mat> svd(gradient(u), Eigen::ComputeFullU | Eigen::ComputeFullV);
      u = svd.matrixU() * svd.matrixV().adjoint();
    }
    rep.value = std::max(rep.value, value(u));
  }
  return rep;
}

Theorem5Report theorem5_demo(const TripartiteSetup& setup, double kappa, uint64_t seed) {
  setup.validate();
  const int d = setup.d;
  const int dd = d * d;
  const Dims dm{d, setup.dim_c(), setup.dim_total()};
  Theorem5Report rep;
  rep.kappa_limit = kappa_star(setup.ctx_a, setup.ctx_b);
  rep.kappa = kappa < 0 ? rep.kappa_limit : kappa;

  // encodings |Psi+>_AB (x) |m>_C; the encoder turns message m into the
  // B-side rotated state (I (x) V_m)|Psi+>
  Ket psi_plus = max_entangled_ket(d);
  std::vector<Mat> encoded(dd);
  for (int m = 0; m < dd; ++m) {
    Mat lift = kron(identity(d), setup.v_list[m]);
    Ket phim = lift * psi_plus;
    encoded[m] = phim * phim.adjoint();
  }

  // decoder: projectors onto the encoded family (x) I_C, completion on the
  // last element
  std::vector<Mat> effects(dd);
  Mat sum = Mat::Zero(dm.total, dm.total);
  for (int m = 0; m < dd - 1; ++m) {
    effects[m] = kron(encoded[m], identity(dm.dc));
    sum += effects[m];
  }
  effects[dd - 1] = identity(dm.total) - sum;

  double acc = 0.0;
  for (int m = 0; m < dd; ++m) {
    Ket cm = Ket::Zero(dm.dc);
    cm(m) = 1;
    Mat input = kron(psi_plus * psi_plus.adjoint(), Mat(cm * cm.adjoint()));
    Mat out = local_therm_apply(setup, rep.kappa, input);
    acc += (effects[m] * out).trace().real();
  }
  rep.success_measured = acc / dd;
  rep.success_analytic = (1.0 - rep.kappa) / dd + rep.kappa;
  rep.success_matches = std::abs(rep.success_measured - rep.success_analytic) <= 1e-12;
  rep.epsilon_threshold = (1.0 - 1.0 / dd) * (1.0 - rep.kappa);
  rep.capacity_bits =
      rep.success_measured >= 1.0 - rep.epsilon_threshold - 1e-12 ? std::log2(dd) : 0.0;

  // entanglement of the AB output on the identity-selection input
  Ket clast = Ket::Zero(dm.dc);
  clast(dm.dc - 1) = 1;
  Mat input = kron(psi_plus * psi_plus.adjoint(), Mat(clast * clast.adjoint()));
  Mat out = local_therm_apply(setup, rep.kappa, input);
  Mat ab = partial_trace(out, {d, d, dm.dc}, {0, 1});
  rep.fef_value = fef(make_state((ab + ab.adjoint()) / 2.0, {d, d}), 16, seed).value;
  rep.fef_entangled = rep.fef_value > 1.0 / d + 1e-9;

  rep.marginals = verify_local_thermalization(setup, rep.kappa, 6, 1e-9, seed);
  return rep;
}

}  // namespace rescap
