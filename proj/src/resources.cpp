#include "rescap/resources.hpp"

#include <cmath>
#include <stdexcept>

namespace rescap {

namespace {

// number of factors k with d^k = dim, or -1
int power_of(int dim, int d) {
  int k = 0, p = 1;
  while (p < dim) {
    p *= d;
    ++k;
  }
  return p == dim ? k : -1;
}

}  // namespace

ResourceSpec ResourceSpec::coherence(int d) {
  ResourceSpec s;
  s.kind = ResourceKind::Coherence;
  s.d = d;
  s.basis = identity(d);
  return s;
}

ResourceSpec ResourceSpec::coherence_in_basis(const Mat& basis) {
  const int d = static_cast<int>(basis.rows());
  if (op_norm(basis.adjoint() * basis - identity(d)) > tols().eig_recon)
    throw std::invalid_argument("coherence spec: basis not unitary");
  ResourceSpec s;
  s.kind = ResourceKind::Coherence;
  s.d = d;
  s.basis = basis;
  return s;
}

ResourceSpec ResourceSpec::athermality(ThermalContext ctx) {
  ResourceSpec s;
  s.kind = ResourceKind::Athermality;
  s.d = ctx.gamma.dim();
  s.thermal = std::move(ctx);
  return s;
}

ResourceSpec ResourceSpec::asymmetry(UnitaryGroup g) {
  if (g.elements.empty()) throw std::invalid_argument("asymmetry spec: empty group");
  ResourceSpec s;
  s.kind = ResourceKind::Asymmetry;
  s.d = g.dim();
  s.group = std::move(g);
  return s;
}

ChannelChoi ResourceSpec::dephase(int dim) const {
  if (kind != ResourceKind::Coherence)
    throw std::logic_error("dephase: only defined for coherence specs");
  if (dim == d) return dephasing_in_basis(basis);
  // tensor-power basis for composite systems
  const int k = power_of(dim, d);
  if (k < 0) throw std::invalid_argument("dephase: dimension not a power of the base");
  Mat b = basis;
  for (int i = 1; i < k; ++i) b = kron(b, basis);
  return dephasing_in_basis(b);
}

PredicateResult is_free_state(const ResourceSpec& spec, const DensityMatrix& rho, double tol) {
  switch (spec.kind) {
    case ResourceKind::Coherence: {
      const int k = power_of(rho.dim(), spec.d);
      if (k < 0) throw std::invalid_argument("is_free_state: dimension mismatch");
      Mat b = spec.basis;
      for (int i = 1; i < k; ++i) b = kron(b, spec.basis);
      Mat y = b.adjoint() * rho.mat * b;
      double mass = 0.0;
      for (int i = 0; i < y.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j)
          if (i != j) mass += std::abs(y(i, j));
      return {mass <= tol, mass};
    }
    case ResourceKind::Athermality: {
      const int k = power_of(rho.dim(), spec.d);
      if (k < 0) throw std::invalid_argument("is_free_state: dimension not a power of d");
      const double dist = trace_norm(rho.mat - spec.thermal->gamma_power(k).mat);
      return {dist <= tol, dist};
    }
    case ResourceKind::Asymmetry: {
      double worst = 0.0;
      for (const auto& u : spec.group->elements) {
        if (u.rows() != rho.dim()) throw std::invalid_argument("is_free_state: dimension mismatch");
        worst = std::max(worst, trace_norm(rho.mat - u * rho.mat * u.adjoint()));
      }
      return {worst <= tol, worst};
    }
  }
  return {};
}

PredicateResult is_free_operation(const ResourceSpec& spec, const ChannelChoi& e, double tol) {
  switch (spec.kind) {
    case ResourceKind::Coherence: {
      auto din = spec.dephase(e.d_in);
      auto dout = spec.dephase(e.d_out);
      const double dist =
          choi_trace_distance(compose(dout, compose(e, din)), compose(e, din));
      return {dist <= tol, dist};
    }
    case ResourceKind::Athermality: {
      const int k = power_of(e.d_in, spec.d);
      const int l = power_of(e.d_out, spec.d);
      if (k < 0 || l < 0)
        throw std::invalid_argument("is_free_operation: dimensions not powers of d");
      const double dist =
          trace_norm(apply_op(e, spec.thermal->gamma_power(k).mat) -
                     spec.thermal->gamma_power(l).mat);
      return {dist <= tol, dist};
    }
    case ResourceKind::Asymmetry: {
      if (e.d_in != spec.d || e.d_out != spec.d)
        throw std::invalid_argument("is_free_operation: dimension mismatch");
      double worst = 0.0;
      for (const auto& u : spec.group->elements) {
        auto uch = unitary_channel(u);
        worst = std::max(worst, choi_trace_distance(compose(uch, e), compose(e, uch)));
      }
      return {worst <= tol, worst};
    }
  }
  return {};
}

PredicateResult is_resource_annihilating(const ResourceSpec& spec, const ChannelChoi& e,
                                         double tol) {
  switch (spec.kind) {
    case ResourceKind::Coherence: {
      const double dist = choi_trace_distance(compose(spec.dephase(e.d_out), e), e);
      return {dist <= tol, dist};
    }
    case ResourceKind::Athermality: {
      const int l = power_of(e.d_out, spec.d);
      if (l < 0) throw std::invalid_argument("is_resource_annihilating: bad output dimension");
      const double dist =
          choi_trace_distance(e, constant_channel(spec.thermal->gamma_power(l).mat, e.d_in));
      return {dist <= tol, dist};
    }
    case ResourceKind::Asymmetry: {
      if (e.d_out != spec.d)
        throw std::invalid_argument("is_resource_annihilating: dimension mismatch");
      const double dist = choi_trace_distance(compose(twirl_group(*spec.group), e), e);
      return {dist <= tol, dist};
    }
  }
  return {};
}

ChannelChoi annihilating_projection(const ResourceSpec& spec, const ChannelChoi& e) {
  switch (spec.kind) {
    case ResourceKind::Coherence:
      return compose(spec.dephase(e.d_out), e);
    case ResourceKind::Athermality: {
      const int l = power_of(e.d_out, spec.d);
      if (l < 0) throw std::invalid_argument("annihilating_projection: bad output dimension");
      return constant_channel(spec.thermal->gamma_power(l).mat, e.d_in);
    }
    case ResourceKind::Asymmetry:
      return compose(twirl_group(*spec.group), e);
  }
  throw std::logic_error("unreachable");
}

std::vector<ChannelChoi> absolutely_annihilating_family(const ResourceSpec& spec, int dim) {
  std::vector<ChannelChoi> fam;
  switch (spec.kind) {
    case ResourceKind::Coherence: {
      if (dim != spec.d) throw std::invalid_argument("annihilating family: dimension mismatch");
      for (int i = 0; i < spec.d; ++i) {
        Mat p = spec.basis.col(i) * spec.basis.col(i).adjoint();
        fam.push_back(constant_channel(p, dim));
      }
      fam.push_back(constant_channel(identity(dim) / dim, dim));
      fam.push_back(spec.dephase(dim));
      fam.push_back(compose(spec.dephase(dim), depolarizing(dim, 0.3)));
      break;
    }
    case ResourceKind::Athermality: {
      const int l = power_of(dim, spec.d);
      if (l < 0) throw std::invalid_argument("annihilating family: dimension not a power of d");
      fam.push_back(constant_channel(spec.thermal->gamma_power(l).mat, dim));
      break;
    }
    case ResourceKind::Asymmetry: {
      if (dim != spec.d) throw std::invalid_argument("annihilating family: dimension mismatch");
      auto tg = twirl_group(*spec.group);
      Mat p0 = Mat::Zero(dim, dim);
      p0(0, 0) = 1;
      fam.push_back(constant_channel(apply_op(tg, p0), dim));
      fam.push_back(constant_channel(identity(dim) / dim, dim));
      fam.push_back(tg);
      fam.push_back(compose(tg, depolarizing(dim, 0.3)));
      break;
    }
  }
  return fam;
}

ChannelChoi random_coherence_nongenerating(Rng& rng, int d) {
  // incoherent unitary: permutation with phases
  auto incoherent_unitary = [&]() {
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.integer(i + 1)]);
    Mat u = Mat::Zero(d, d);
    const double twopi = 6.283185307179586476925286766559;
    for (int j = 0; j < d; ++j) u(perm[j], j) = std::polar(1.0, twopi * rng.uniform());
    return unitary_channel(u);
  };
  std::vector<std::pair<double, ChannelChoi>> parts;
  parts.emplace_back(rng.uniform(), incoherent_unitary());
  parts.emplace_back(rng.uniform(), dephasing(d));
  parts.emplace_back(rng.uniform(), compose(dephasing(d), random_channel(rng, d, d)));
  parts.emplace_back(rng.uniform(), identity_channel(d));
  double total = 0.0;
  for (auto& [w, ch] : parts) total += w;
  for (auto& [w, ch] : parts) w /= total;
  return mix(parts);
}

namespace {

// least-norm correction onto {A hvec(J) = c} followed by a PSD clip,
// iterated to a fixed point; returns false when it fails to converge
bool project_to_affine_psd(Mat& j, const Eigen::MatrixXd& a, const Eigen::VectorXd& c,
                           int iters) {
  const int dd = static_cast<int>(j.rows());
  Eigen::MatrixXd gram = a * a.transpose();
  Eigen::LDLT<Eigen::MatrixXd> fact(gram);
  for (int it = 0; it < iters; ++it) {
    RVec v = hvec(j);
    Eigen::VectorXd resid = a * v - c;
    v -= a.transpose() * fact.solve(resid);
    j = unhvec(v, dd);
    HermEig e = herm_eig(j);
    double lmin = e.values.minCoeff();
    if (lmin >= -1e-13 && resid.cwiseAbs().maxCoeff() < 1e-11) return true;
    RVec clipped = e.values.cwiseMax(0.0);
    j = e.vectors * clipped.asDiagonal() * e.vectors.adjoint();
  }
  return false;
}

}  // namespace

ChannelChoi random_gibbs_preserving(Rng& rng, const ThermalContext& ctx) {
  const int d = ctx.gamma.dim();
  const int dd = d * d;
  const Mat& gamma = ctx.gamma.mat;

  // constraint rows: trace preservation and the thermal fixed point
  std::vector<RVec> rows;
  std::vector<double> rhs;
  auto push_functional = [&](const Mat& g, Complex target) {
    Mat gh = (g + g.adjoint()) / 2.0;
    Mat ga = Complex(0, -0.5) * (g - g.adjoint());
    if (gh.cwiseAbs().maxCoeff() > 1e-14) {
      rows.push_back(hvec(gh));
      rhs.push_back(target.real());
    }
    if (ga.cwiseAbs().maxCoeff() > 1e-14) {
      rows.push_back(hvec(ga));
      rhs.push_back(target.imag());
    }
  };
  for (int i = 0; i < d; ++i)
    for (int jdx = i; jdx < d; ++jdx) {
      Mat g = Mat::Zero(dd, dd);
      for (int a = 0; a < d; ++a) g(a * d + jdx, a * d + i) = 1;  // tr_out J = I
      push_functional(g, i == jdx ? 1.0 : 0.0);
    }
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      Mat g = Mat::Zero(dd, dd);
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) g(b * d + k, a * d + i) = gamma(i, k);
      push_functional(g, gamma(a, b));
    }
  Eigen::MatrixXd amat(rows.size(), dd * dd);
  Eigen::VectorXd cvec(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    amat.row(r) = rows[r].transpose();
    cvec(r) = rhs[r];
  }

  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat j = random_channel(rng, d, d).choi;
    // pull toward the constant-gamma channel, a strictly feasible point
    j = 0.8 * j + 0.2 * kron(gamma, identity(d));
    if (!project_to_affine_psd(j, amat, cvec, 400)) continue;
    ChannelChoi e{d, d, j};
    try {
      e.validate();
    } catch (const std::exception&) {
      continue;
    }
    return e;
  }
  throw std::runtime_error("random_gibbs_preserving: rejection limit reached");
}

ChannelChoi random_gibbs_coherence_annihilating(Rng& rng, const ThermalContext& ctx) {
  const int d = ctx.gamma.dim();
  const Mat& gamma = ctx.gamma.mat;
  // output-diagonal Choi: J = sum_a |a><a| (x) M_a with {M_a^T} a POVM and
  // tr(M_a gamma) = gamma_aa
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Mat> m(d);
    Mat sum = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a) {
      Mat g = rng.ginibre(d, d);
      m[a] = g * g.adjoint();
      sum += m[a];
    }
    Mat s = psd_pinv_sqrt(sum);
    for (int a = 0; a < d; ++a) m[a] = s * m[a] * s;
    // blend toward M_a = gamma_aa I, an interior feasible point
    for (int a = 0; a < d; ++a)
      m[a] = 0.7 * m[a] + 0.3 * gamma(a, a).real() * identity(d);

    // enforce completeness and the Gibbs rows by alternating projections on
    // the stacked blocks
    bool done = false;
    for (int it = 0; it < 300 && !done; ++it) {
      // completeness
      Mat defect = identity(d);
      for (int a = 0; a < d; ++a) defect -= m[a];
      for (int a = 0; a < d; ++a) m[a] += defect / d;
      // Gibbs rows: shift along gamma to fix tr(M_a gamma) = gamma_aa while
      // keeping the completeness defect zero
      RVec shift(d);
      double mean = 0.0;
      for (int a = 0; a < d; ++a) {
        shift(a) = gamma(a, a).real() - (m[a] * gamma).trace().real();
        mean += shift(a) / d;
      }
      const double g2 = (gamma * gamma).trace().real();
      for (int a = 0; a < d; ++a) m[a] += (shift(a) - mean) / g2 * gamma + mean * identity(d);
      // PSD clip
      done = true;
      double worst = 0.0;
      for (int a = 0; a < d; ++a) {
        HermEig e = herm_eig(m[a]);
        if (e.values.minCoeff() < -1e-13) {
          RVec cl = e.values.cwiseMax(0.0);
          m[a] = e.vectors * cl.asDiagonal() * e.vectors.adjoint();
          done = false;
        }
        worst = std::max(worst, std::abs(gamma(a, a).real() - (m[a] * gamma).trace().real()));
      }
      Mat defect2 = identity(d);
      for (int a = 0; a < d; ++a) defect2 -= m[a];
      if (defect2.cwiseAbs().maxCoeff() > 1e-11 || worst > 1e-11) done = false;
    }
    if (!done) continue;

    Mat j = Mat::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) j(a * d + i, a * d + k) = m[a](i, k);
    ChannelChoi e{d, d, j};
    try {
      e.validate();
    } catch (const std::exception&) {
      continue;
    }
    return e;
  }
  throw std::runtime_error("random_gibbs_coherence_annihilating: rejection limit reached");
}

ChannelChoi random_covariant(Rng& rng, const UnitaryGroup& g) {
  const int d = g.dim();
  auto raw = random_channel(rng, d, d);
  std::vector<std::pair<double, ChannelChoi>> parts;
  const double w = 1.0 / g.order();
  for (const auto& u : g.elements) {
    auto conj = compose(unitary_channel(u), compose(raw, unitary_channel(u.adjoint().eval())));
    parts.emplace_back(w, conj);
  }
  return mix(parts);
}

}  // namespace rescap
