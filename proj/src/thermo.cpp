#include "rescap/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rescap/capacity.hpp"
#include "rescap/resources.hpp"

namespace rescap {

namespace {
constexpr double kInfResidual = std::numeric_limits<double>::infinity();
}

int CollisionModel::dim() const {
  int d = 1;
  for (int i = 0; i < copies; ++i) d *= local_dim;
  return d;
}

void CollisionModel::validate() const {
  const int dd = dim();
  if (dd > 32) throw std::invalid_argument("collision model: dimension beyond guard");
  Mat h_total = Mat::Zero(dd, dd);
  Mat h1 = local_h.matrix();
  for (int k = 0; k < copies; ++k) {
    Mat term = identity(1);
    for (int j = 0; j < copies; ++j) term = kron(term, j == k ? h1 : identity(local_dim));
    h_total += term;
  }
  for (const auto& u : unitaries) {
    if (op_norm(u.adjoint() * u - identity(dd)) > tols().eig_recon)
      throw std::invalid_argument("collision model: generator not unitary");
    if (op_norm(u * h_total - h_total * u) > 1e-8 * std::max(1.0, op_norm(h_total)))
      throw std::invalid_argument("collision model: generator not energy preserving");
  }
  if (rates.size() != unitaries.size())
    throw std::invalid_argument("collision model: rate count mismatch");
  for (double r : rates)
    if (!(r > 0)) throw std::invalid_argument("collision model: rates must be positive");
}

namespace {

// swap of copies (i, j) on d^n dimensions
Mat pair_swap(int n, int d, int i, int j) {
  int dd = 1;
  for (int k = 0; k < n; ++k) dd *= d;
  std::vector<int> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * d;
  Mat s = Mat::Zero(dd, dd);
  for (int x = 0; x < dd; ++x) {
    const int xi = (x / stride[i]) % d;
    const int xj = (x / stride[j]) % d;
    const int y = x + (xj - xi) * stride[i] + (xi - xj) * stride[j];
    s(y, x) = 1;
  }
  return s;
}

}  // namespace

CollisionModel build_collision_model(const Hamiltonian& h, int n, SwapStyle style,
                                     double rate, double theta) {
  if (n < 1) throw std::invalid_argument("collision model: need at least one copy");
  if (!(rate > 0)) throw std::invalid_argument("collision model: rate must be positive");
  CollisionModel model;
  model.copies = n;
  model.local_dim = h.dim();
  model.local_h = h;
  const int dd = model.dim();
  if (dd > 32) throw std::invalid_argument("collision model: dimension beyond guard");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat s = pair_swap(n, h.dim(), i, j);
      if (style == SwapStyle::PartialSwap) {
        // exp(-i theta S) = cos(theta) I - i sin(theta) S
        s = std::cos(theta) * identity(dd) - kI * std::sin(theta) * s;
      }
      model.unitaries.push_back(s);
      model.rates.push_back(rate);
    }
  model.validate();
  return model;
}

namespace {

// one uniformization segment exp(s L) with s * total_rate <= ~30
Mat uniformization_segment(const CollisionModel& m, Mat rho, double s, double total_rate) {
  const double a = s * total_rate;
  Mat term = rho;
  double logw = -a;
  double wsum = std::exp(logw);
  Mat out = std::exp(logw) * rho;
  for (int j = 1; j < 500; ++j) {
    Mat next = Mat::Zero(rho.rows(), rho.cols());
    for (size_t k = 0; k < m.unitaries.size(); ++k)
      next += (m.rates[k] / total_rate) * (m.unitaries[k] * term * m.unitaries[k].adjoint());
    term = next;
    logw += std::log(a / j);
    const double w = std::exp(logw);
    out += w * term;
    wsum += w;
    if (wsum > 1.0 - 1e-16 && j > a) break;
  }
  // renormalize the Poisson tail so the map stays exactly trace preserving
  out /= wsum;
  return out;
}

// orthonormal Hermitian basis of the commutant of the generator unitaries
std::vector<Mat> commutant_basis(const CollisionModel& m) {
  const int dd = m.dim();
  const int n2 = dd * dd;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n2, n2);
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n2, n2);
  for (const auto& u : m.unitaries) {
    Eigen::MatrixXd mu(n2, n2);
    RVec basis = RVec::Zero(n2);
    for (int k = 0; k < n2; ++k) {
      basis(k) = 1.0;
      Mat x = unhvec(basis, dd);
      mu.col(k) = hvec(u * x * u.adjoint());
      basis(k) = 0.0;
    }
    acc += (mu - id).transpose() * (mu - id);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(acc);
  std::vector<Mat> out;
  const double cut = 1e-9 * std::max(1.0, es.eigenvalues().maxCoeff());
  for (int k = 0; k < n2; ++k)
    if (es.eigenvalues()(k) <= cut) out.push_back(unhvec(es.eigenvectors().col(k), dd));
  return out;
}

}  // namespace

DensityMatrix evolve(const CollisionModel& model, const DensityMatrix& rho_sb, double t) {
  if (rho_sb.dim() != model.dim()) throw std::invalid_argument("evolve: dimension mismatch");
  if (t < 0) throw std::invalid_argument("evolve: negative time");
  if (model.unitaries.empty() || t == 0.0) return rho_sb;

  if (std::isinf(t)) {
    // fixed points of the mixed-unitary generator are the joint commutant
    Mat proj = Mat::Zero(rho_sb.dim(), rho_sb.dim());
    for (const Mat& b : commutant_basis(model))
      proj += (b * rho_sb.mat).trace().real() * b;
    proj = (proj + proj.adjoint()) / 2.0;
    return make_state(proj, rho_sb.dims);
  }

  double total_rate = 0.0;
  for (double r : model.rates) total_rate += r;
  const double horizon = t * total_rate;
  const int segments = std::max(1, static_cast<int>(std::ceil(horizon / 30.0)));
  Mat state = rho_sb.mat;
  for (int s = 0; s < segments; ++s)
    state = uniformization_segment(model, state, t / segments, total_rate);
  state = (state + state.adjoint()) / 2.0;
  return make_state(state, rho_sb.dims);
}

ThermalizeCheck epsilon_thermalizes(const DensityMatrix& state_sb, const ThermalContext& ctx,
                                    int n, double epsilon) {
  const double residual = trace_norm(state_sb.mat - ctx.gamma_power(n).mat);
  return {residual <= epsilon, residual};
}

BathSizeReport min_bath_size_state(const DensityMatrix& rho, const ThermalContext& ctx,
                                   double epsilon, int n_max, int t_points,
                                   std::optional<SwapStyle> only_style) {
  if (rho.dim() != ctx.gamma.dim())
    throw std::invalid_argument("bath size: state dimension mismatch");
  auto esc = check_energy_subspace_condition(ctx.h, 4);
  if (!esc.ok)
    std::fprintf(stderr, "warning: energy subspace condition violated for this Hamiltonian\n");

  BathSizeReport rep;
  rep.epsilon = epsilon;
  const int d = ctx.gamma.dim();
  int cap = n_max;
  {
    int dd = d, nn = 1;
    while (dd * d <= 32 && nn < n_max) {
      dd *= d;
      ++nn;
    }
    cap = nn;
  }

  const double rate = 1.0;
  for (int n = 1; n <= cap; ++n) {
    Mat joint = rho.mat;
    for (int k = 1; k < n; ++k) joint = kron(joint, ctx.gamma.mat);
    std::vector<int> dims(n, d);
    DensityMatrix init{dims, joint};

    auto check = epsilon_thermalizes(init, ctx, n, epsilon);
    if (check.ok) {
      rep.n_star = n;
      rep.time = 0.0;
      rep.style = "none";
      return rep;
    }
    if (n == 1) continue;  // no collision partners

    for (SwapStyle style : {SwapStyle::FullSwap, SwapStyle::PartialSwap}) {
      if (only_style && style != *only_style) continue;
      auto model = build_collision_model(ctx.h, n, style, rate);
      // logarithmic grid, evolved incrementally, then the asymptotic state
      double prev_t = 0.0;
      DensityMatrix state = init;
      double best_finite = kInfResidual;
      for (int k = 0; k < t_points; ++k) {
        const double t = std::pow(10.0, -2.0 + 4.0 * k / (t_points - 1)) / rate;
        state = evolve(model, state, t - prev_t);
        prev_t = t;
        auto c = epsilon_thermalizes(state, ctx, n, epsilon);
        best_finite = std::min(best_finite, c.residual);
        if (c.ok) {
          rep.n_star = n;
          rep.time = t;
          rep.style = style == SwapStyle::FullSwap ? "full-swap" : "partial-swap";
          return rep;
        }
      }
      auto limit = evolve(model, init, kTimeInfinity);
      auto c = epsilon_thermalizes(limit, ctx, n, epsilon);
      // the thermal target is a fixed point and the flow contracts the
      // trace norm, so the asymptotic residual can never exceed a sampled
      // finite-time residual; check rather than assume
      if (c.residual > best_finite + 1e-9)
        std::fprintf(stderr,
                     "warning: asymptotic residual %.3e above finite-time minimum %.3e\n",
                     c.residual, best_finite);
      if (c.ok) {
        rep.n_star = n;
        rep.time = kTimeInfinity;
        rep.style = style == SwapStyle::FullSwap ? "full-swap" : "partial-swap";
        return rep;
      }
    }
  }
  return rep;  // not found
}

BathSizeReport channel_bath_size(const ChannelChoi& n_ch, const ThermalContext& ctx,
                                 double epsilon, int n_max, int probes, uint64_t seed) {
  if (n_ch.d_out != ctx.gamma.dim())
    throw std::invalid_argument("channel bath size: output dimension mismatch");

  // probe search: maximize output distance to gamma (ascent on the trace
  // norm witness), plus canonical and random probes
  std::vector<Ket> inputs;
  for (int i = 0; i < n_ch.d_in; ++i) {
    Ket v = Ket::Zero(n_ch.d_in);
    v(i) = 1;
    inputs.push_back(v);
  }
  Rng rng = Rng::split(seed, 0xBA7);
  for (int r = 0; r < probes; ++r) {
    Ket psi = rng.haar_ket(n_ch.d_in);
    for (int it = 0; it < 12; ++it) {
      Mat out = apply_op(n_ch, psi * psi.adjoint());
      out = (out + out.adjoint()) / 2.0;
      HermEig e = herm_eig(out - ctx.gamma.mat);
      Mat sign = Mat::Zero(out.rows(), out.cols());
      for (int k = 0; k < e.values.size(); ++k)
        sign += (e.values(k) >= 0 ? 1.0 : -1.0) * e.vectors.col(k) * e.vectors.col(k).adjoint();
      auto [val, vec] = top_eig(apply_adjoint(n_ch, sign));
      (void)val;
      if ((vec * vec.adjoint() - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-12) break;
      psi = vec;
    }
    inputs.push_back(psi);
  }

  BathSizeReport worst;
  worst.epsilon = epsilon;
  worst.n_star = 1;
  worst.time = 0.0;
  for (const auto& psi : inputs) {
    Mat out = apply_op(n_ch, psi * psi.adjoint());
    out = (out + out.adjoint()) / 2.0;
    auto rep = min_bath_size_state(make_state(out / out.trace().real()), ctx, epsilon, n_max);
    if (!rep.found()) return rep;  // not found dominates
    if (rep.n_star > worst.n_star) worst = rep;
  }
  return worst;
}

Theorem3Report theorem3_consistency(const ChannelChoi& n_ch, const ThermalContext& ctx,
                                    double epsilon, double delta, double kappa, int n_max,
                                    uint64_t seed) {
  auto coh = ResourceSpec::coherence(ctx.gamma.dim());
  auto thermal = ResourceSpec::athermality(ctx);
  if (!is_free_operation(thermal, n_ch).ok)
    throw std::invalid_argument("theorem3: channel is not Gibbs-preserving");
  if (!is_free_operation(coh, n_ch).ok)
    throw std::invalid_argument("theorem3: channel is not coherence non-generating");
  auto esc = check_energy_subspace_condition(ctx.h, 4);
  if (!esc.ok) throw std::invalid_argument("theorem3: energy subspace condition violated");

  Theorem3Report rep;
  CapacityOptions copts;
  copts.seed = seed;
  auto cap = one_shot_capacity_lower(n_ch, epsilon, copts);
  rep.capacity_lower = cap.report.value;

  PreservabilityOptions popts;
  popts.seed = seed;
  popts.want_argmin = false;
  rep.p_coherence_upper = preservability_bracket(coh, n_ch, popts).upper.value;

  auto proj = annihilating_projection(coh, n_ch);
  auto bath = channel_bath_size(proj, ctx, delta, n_max, 4, seed);
  rep.bath_found = bath.found();
  rep.bath_upper = bath.found() ? bath.bath_size() : n_max;
  rep.rhs = rep.p_coherence_upper +
            std::log2(rep.bath_upper + 2.0 * std::sqrt(delta) / ctx.p_min + 1.0) +
            std::log2(std::exp2(kappa) / (1.0 - epsilon));
  rep.pass = rep.capacity_lower <= rep.rhs + 1e-6;

  if (is_resource_annihilating(coh, n_ch).ok) {
    rep.a_applicable = true;
    auto p_lower =
        channel_dmax_input_lower(n_ch, constant_channel(ctx.gamma.mat, n_ch.d_in), 6, seed);
    auto bath_eps = channel_bath_size(n_ch, ctx, epsilon, n_max, 4, seed);
    const int b = bath_eps.found() ? bath_eps.bath_size() : n_max;
    rep.a_lhs = std::exp2(p_lower.value);
    rep.a_rhs = b + 2.0 * std::sqrt(epsilon) / ctx.p_min + 1.0;
    rep.a_pass = rep.a_lhs <= rep.a_rhs + 1e-6;
  }
  return rep;
}

}  // namespace rescap
