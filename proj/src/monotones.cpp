#include "rescap/monotones.hpp"

#include <algorithm>
#include <cmath>

#include "rescap/capacity.hpp"
#include "rescap/sdp.hpp"

namespace rescap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_safe(double x) { return std::log2(x); }

// support leak of rho outside the support of sigma
double support_leak(const Mat& rho, const Mat& sigma) {
  Mat pi = support_projector(sigma);
  const int d = static_cast<int>(rho.rows());
  Mat out = (identity(d) - pi) * rho * (identity(d) - pi);
  return out.cwiseAbs().maxCoeff();
}

}  // namespace

double dmax_ops(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows()) throw std::invalid_argument("dmax: dimension mismatch");
  if (support_leak(rho, sigma) > tols().psd) return kInf;
  Mat s = psd_pinv_sqrt(sigma);
  Mat core = s * rho * s;
  Eigen::SelfAdjointEigenSolver<Mat> es((core + core.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
  return lmax <= 0 ? -kInf : log2_safe(lmax);
}

double dmax(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return dmax_ops(rho.mat, sigma.mat);
}

BoundReport channel_dmax_cp_upper(const ChannelChoi& n, const ChannelChoi& f) {
  if (n.d_in != f.d_in || n.d_out != f.d_out)
    throw std::invalid_argument("cp upper: dimension mismatch");
  double v;
  if (support_leak(n.choi, f.choi) > tols().psd) {
    v = kInf;
  } else {
    Mat s = psd_pinv_sqrt(f.choi);
    Mat core = s * n.choi * s;
    Eigen::SelfAdjointEigenSolver<Mat> es((core + core.adjoint()) / 2.0,
                                          Eigen::EigenvaluesOnly);
    v = log2_safe(std::max(es.eigenvalues().maxCoeff(), 0.0));
  }
  return make_report("channel_dmax_upper", v, BoundKind::Upper, "cp-dominance", 1e-9);
}

namespace {

// hill-climb refinement of a pure input maximizing dmax(N(psi)||F(psi))
double refine_probe(const ChannelChoi& n, const ChannelChoi& f, Ket psi, Rng& rng,
                    int steps) {
  auto value = [&](const Ket& v) {
    Mat r = apply_op(n, v * v.adjoint());
    Mat s = apply_op(f, v * v.adjoint());
    return dmax_ops((r + r.adjoint()) / 2.0, (s + s.adjoint()) / 2.0);
  };
  double best = value(psi);
  double radius = 0.5;
  for (int it = 0; it < steps; ++it) {
    Ket cand = psi + radius * rng.haar_ket(psi.size());
    cand.normalize();
    const double v = value(cand);
    if (v > best) {
      best = v;
      psi = cand;
    } else {
      radius *= 0.7;
    }
  }
  return best;
}

std::vector<Ket> canonical_probe_kets(const Mat& basis) {
  const int d = static_cast<int>(basis.rows());
  std::vector<Ket> probes;
  // strongest witnesses first, so trimming keeps them
  Ket uniform = Ket::Zero(d);
  for (int i = 0; i < d; ++i) uniform += basis.col(i);
  probes.push_back(uniform.normalized());
  for (int i = 0; i < d; ++i) probes.push_back(basis.col(i));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      probes.push_back((basis.col(i) + basis.col(j)).normalized());
      probes.push_back((basis.col(i) + kI * basis.col(j)).normalized());
    }
  return probes;
}

}  // namespace

BoundReport channel_dmax_input_lower(const ChannelChoi& n, const ChannelChoi& f,
                                     int restarts, uint64_t seed) {
  if (n.d_in != f.d_in || n.d_out != f.d_out)
    throw std::invalid_argument("input lower: dimension mismatch");
  double best = -kInf;
  auto value = [&](const Ket& v) {
    Mat r = apply_op(n, v * v.adjoint());
    Mat s = apply_op(f, v * v.adjoint());
    return dmax_ops((r + r.adjoint()) / 2.0, (s + s.adjoint()) / 2.0);
  };
  for (const auto& psi : canonical_probe_kets(identity(n.d_in)))
    best = std::max(best, value(psi));
  for (int r = 0; r < restarts; ++r) {
    Rng rng = Rng::split(seed, 1000 + r);
    Ket psi = rng.haar_ket(n.d_in);
    best = std::max(best, refine_probe(n, f, psi, rng, 40));
    if (std::isinf(best) && best > 0) break;
  }
  return make_report("channel_dmax_lower", best, BoundKind::Lower, "probe-search", 1e-9);
}

DiscriminationResult optimal_discrimination(const std::vector<Mat>& states,
                                            const std::vector<double>& weights) {
  const int m = static_cast<int>(states.size());
  if (m == 0 || states.size() != weights.size())
    throw std::invalid_argument("discrimination: bad inputs");
  const int d = static_cast<int>(states[0].rows());
  DiscriminationResult res;
  if (m == 1) {
    res.povm = Povm{{identity(d)}};
    res.value = weights[0] * states[0].trace().real();
    res.optimal = true;
    return res;
  }

  sdp::Problem p;
  p.gap_tol = tols().sdp_gap / 10.0;
  std::vector<int> blocks(m);
  std::vector<std::pair<int, Complex>> sum;
  for (int k = 0; k < m; ++k) {
    blocks[k] = p.add_block(d);
    sum.emplace_back(blocks[k], 1.0);
    sdp::add_objective(p, blocks[k], (-weights[k] * states[k]).eval());
  }
  sdp::add_matrix_eq(p, sum, identity(d));
  auto sol = sdp::solve(p);
  if (sol.ok()) {
    res.povm.elements.resize(m);
    for (int k = 0; k < m; ++k) {
      // clean tiny negative directions before validation
      HermEig e = herm_eig((sol.x[blocks[k]] + sol.x[blocks[k]].adjoint()) / 2.0);
      RVec cl = e.values.cwiseMax(0.0);
      res.povm.elements[k] = e.vectors * cl.asDiagonal() * e.vectors.adjoint();
    }
    Mat defect = identity(d);
    for (const auto& e : res.povm.elements) defect -= e;
    res.povm.elements[0] += defect;
    res.value = -sol.primal_value;
    res.optimal = true;
    return res;
  }

  // PGM fallback, flagged as non-optimal
  std::vector<DensityMatrix> as_states;
  for (const auto& s : states) {
    Mat x = (s + s.adjoint()) / 2.0;
    as_states.push_back(make_state(x / x.trace().real()));
  }
  res.povm = pretty_good_measurement(as_states);
  res.value = 0.0;
  for (int k = 0; k < m; ++k)
    res.value += weights[k] * (res.povm.elements[k] * states[k]).trace().real();
  res.optimal = false;
  return res;
}

namespace {

// Real hvec-space matrix of a superoperator on Hermitian matrices.
Eigen::MatrixXd real_superop(int d, const std::function<Mat(const Mat&)>& f) {
  const int n = d * d;
  Eigen::MatrixXd m(n, n);
  RVec basis = RVec::Zero(n);
  for (int k = 0; k < n; ++k) {
    basis(k) = 1.0;
    m.col(k) = hvec(f(unhvec(basis, d)));
    basis(k) = 0.0;
  }
  return m;
}

// Orthonormal Hermitian rows Z with tr(Z J) = 0 characterizing Choi
// matrices of channels that are G-covariant with G-invariant outputs.
std::vector<Mat> symmetry_rows(const UnitaryGroup& g, int dd) {
  const int n = dd * dd;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const int d = g.dim();
  for (const auto& u : g.elements) {
    Mat cu = kron(u, u.conjugate());
    Eigen::MatrixXd conj_m = real_superop(dd, [&](const Mat& j) { return Mat(cu * j * cu.adjoint()); });
    Mat ou = kron(u, identity(d));
    Eigen::MatrixXd out_m = real_superop(dd, [&](const Mat& j) { return Mat(ou * j * ou.adjoint()); });
    acc += (conj_m - id).transpose() * (conj_m - id);
    acc += (out_m - id).transpose() * (out_m - id);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(acc);
  std::vector<Mat> rows;
  const double cut = 1e-9 * std::max(1.0, es.eigenvalues().maxCoeff());
  for (int k = 0; k < n; ++k)
    if (es.eigenvalues()(k) > cut) rows.push_back(unhvec(es.eigenvectors().col(k), dd));
  return rows;
}

void add_hermitian_row(sdp::Problem& p, int block, const Mat& z, double rhs) {
  sdp::Constraint c;
  sdp::BlockTerm bt;
  bt.block = block;
  const int d = static_cast<int>(z.rows());
  for (int r = 0; r < d; ++r) {
    if (std::abs(z(r, r)) > 1e-14) bt.terms.push_back({r, r, z(r, r)});
    for (int cc = r + 1; cc < d; ++cc)
      if (std::abs(z(r, cc)) > 1e-14) bt.terms.push_back({r, cc, z(r, cc)});
  }
  c.lhs.push_back(std::move(bt));
  c.rhs = rhs;
  p.constraints.push_back(std::move(c));
}

struct FamilySdpPieces {
  sdp::Problem p;
  int kblock = -1;
  int lamblock = -1;
};

// Shared scaffolding: K >= 0 in the annihilating family, tr_out K = lam I.
FamilySdpPieces family_problem(const ResourceSpec& spec, int d_in, int d_out) {
  FamilySdpPieces out;
  sdp::Problem& p = out.p;
  p.gap_tol = tols().sdp_gap / 10.0;
  const int dd = d_out * d_in;
  out.kblock = p.add_block(dd);
  out.lamblock = p.add_block(1);

  if (spec.kind == ResourceKind::Coherence) {
    // incoherent-output support pattern: rotate to the spec basis once
    if (op_norm(spec.basis - identity(spec.d)) > 1e-14)
      throw std::invalid_argument("family sdp: non-computational coherence basis unsupported here");
    for (int r = 0; r < dd; ++r)
      for (int c = r + 1; c < dd; ++c)
        if (r / d_in != c / d_in)
          sdp::add_complex_eq(p, {{out.kblock, r, c, 1.0}}, 0.0);
  } else if (spec.kind == ResourceKind::Asymmetry) {
    if (d_in != spec.d || d_out != spec.d)
      throw std::invalid_argument("family sdp: dimension mismatch");
    for (const Mat& z : symmetry_rows(*spec.group, dd))
      add_hermitian_row(p, out.kblock, z, 0.0);
  } else {
    throw std::logic_error("family sdp: athermality uses closed forms");
  }

  // tr_out K = lam I
  for (int i = 0; i < d_in; ++i)
    for (int j = i; j < d_in; ++j) {
      std::vector<sdp::RawEntry> entries;
      for (int a = 0; a < d_out; ++a) entries.push_back({out.kblock, a * d_in + i, a * d_in + j, 1.0});
      if (i == j) entries.push_back({out.lamblock, 0, 0, -1.0});
      sdp::add_complex_eq(p, entries, 0.0);
    }
  sdp::add_objective(p, out.lamblock, Mat::Identity(1, 1));
  return out;
}

BoundReport sdp_failed_report(const std::string& name, BoundKind kind) {
  return make_report(name, kInf, kind, "sdp-failed", kInf);
}

}  // namespace

PreservabilityBracket preservability_bracket(const ResourceSpec& spec, const ChannelChoi& n,
                                             const PreservabilityOptions& opts) {
  auto free_check = is_free_operation(spec, n);
  if (!free_check.ok)
    throw std::invalid_argument("preservability: channel is not a free operation (violation " +
                                std::to_string(free_check.violation) + ")");

  PreservabilityBracket out;

  // non-computational coherence basis: conjugate into the spec basis,
  // solve there, rotate the minimizer back
  if (spec.kind == ResourceKind::Coherence &&
      op_norm(spec.basis - identity(spec.d)) > 1e-14) {
    auto to = unitary_channel(spec.basis.adjoint().eval());
    auto from = unitary_channel(spec.basis);
    ChannelChoi rotated = compose(to, compose(n, from));
    auto inner = preservability_bracket(ResourceSpec::coherence(spec.d), rotated, opts);
    if (inner.argmin) inner.argmin = compose(from, compose(*inner.argmin, to));
    return inner;
  }

  if (spec.kind == ResourceKind::Athermality) {
    // the constant thermal channel is the unique annihilating channel
    auto proj = annihilating_projection(spec, n);
    out.upper = channel_dmax_cp_upper(n, proj);
    out.upper.name = "preservability_upper";
    out.lower = channel_dmax_input_lower(n, proj, opts.restarts, opts.seed);
    out.lower.name = "preservability_lower";
    out.argmin = proj;
    return out;
  }

  const int dd = n.d_out * n.d_in;

  // upper: min lam s.t. lam * (family channel) dominates n completely
  {
    FamilySdpPieces fp = family_problem(spec, n.d_in, n.d_out);
    const int vblock = fp.p.add_block(dd);
    sdp::add_matrix_eq(fp.p, {{fp.kblock, 1.0}, {vblock, -1.0}}, n.choi);
    auto sol = sdp::solve(fp.p);
    if (!sol.ok()) {
      out.upper = sdp_failed_report("preservability_upper", BoundKind::Upper);
    } else {
      const double lam = std::max(sol.primal_value, 1e-300);
      out.upper =
          make_report("preservability_upper", log2_safe(lam), BoundKind::Upper, "cp-dominance-sdp",
                      sol.gap);
      if (opts.want_argmin) {
        ChannelChoi lambda_star{n.d_in, n.d_out, sol.x[fp.kblock] / lam};
        lambda_star.choi = (lambda_star.choi + lambda_star.choi.adjoint()) / 2.0;
        // clean the SDP iterate into an exact member of the family
        lambda_star = annihilating_projection(spec, lambda_star);
        Mat ptr = partial_trace(lambda_star.choi, {n.d_out, n.d_in}, {1});
        Mat fix = psd_pinv_sqrt(ptr);
        Mat lift = kron(identity(n.d_out), fix.transpose());
        lambda_star.choi = lift * lambda_star.choi * lift.adjoint();
        lambda_star.choi = (lambda_star.choi + lambda_star.choi.adjoint()) / 2.0;
        out.argmin = lambda_star;
      }
    }
  }

  // lower: min lam s.t. lam * (family channel) dominates n on fixed probes
  {
    FamilySdpPieces fp = family_problem(spec, n.d_in, n.d_out);
    std::vector<Ket> probes = canonical_probe_kets(
        spec.kind == ResourceKind::Coherence ? spec.basis : identity(n.d_in));
    Rng rng = Rng::split(opts.seed, 4242);
    for (int k = 0; k < opts.extra_probes; ++k) probes.push_back(rng.haar_ket(n.d_in));
    // keep the solver's variable budget: any probe subset stays a valid bound
    const size_t probe_cap =
        std::max<size_t>(1, (128 - dd - 1) / std::max(1, n.d_out));
    if (probes.size() > probe_cap) probes.resize(probe_cap);
    for (const auto& psi : probes) {
      Mat rho = psi * psi.adjoint();
      Mat target = apply_op(n, rho);
      const int vb = fp.p.add_block(n.d_out);
      for (int a = 0; a < n.d_out; ++a)
        for (int b = a; b < n.d_out; ++b) {
          std::vector<sdp::RawEntry> entries;
          for (int i = 0; i < n.d_in; ++i)
            for (int k2 = 0; k2 < n.d_in; ++k2) {
              const Complex coeff = rho(i, k2);
              if (std::abs(coeff) > 1e-15)
                entries.push_back({fp.kblock, a * n.d_in + i, b * n.d_in + k2, coeff});
            }
          entries.push_back({vb, a, b, -1.0});
          sdp::add_complex_eq(fp.p, entries, target(a, b));
        }
    }
    auto sol = sdp::solve(fp.p);
    if (!sol.ok()) {
      out.lower = make_report("preservability_lower", 0.0, BoundKind::Lower,
                              "sdp-failed;trivial", 0.0);
    } else {
      const double lam = std::max(sol.primal_value, 1.0);  // lam >= 1 analytically
      out.lower = make_report("preservability_lower", log2_safe(lam), BoundKind::Lower,
                              "probe-dominance-sdp", sol.gap);
    }
  }
  return out;
}

BoundReport smoothed_preservability_upper(const ResourceSpec& spec, const ChannelChoi& n,
                                          double delta, int family_size, uint64_t seed) {
  if (delta < 0 || delta >= 1)
    throw std::invalid_argument("smoothed upper: delta outside [0,1)");
  PreservabilityOptions opts;
  opts.seed = seed;
  opts.want_argmin = false;
  auto proj = annihilating_projection(spec, n);
  const double dist_up = choi_trace_distance(n, proj);  // diamond upper bracket
  double t_max = dist_up <= 1e-14 ? 1.0 : std::min(1.0, 2.0 * delta / dist_up);
  if (delta == 0.0) t_max = 0.0;
  const int steps = std::max(2, family_size);

  double best = kInf;
  double best_tol = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double t = t_max * k / (steps - 1);
    ChannelChoi et = mix({{1.0 - t, n}, {t, proj}});
    auto br = preservability_bracket(spec, et, opts);
    if (br.upper.value < best) {
      best = br.upper.value;
      best_tol = br.upper.tol;
    }
    if (t_max == 0.0) break;
  }
  auto rep = make_report("preservability_upper_smoothed", best, BoundKind::Upper,
                         "smoothed-mixing-family", best_tol);
  return rep;
}

double info_spectrum_re_ops(const Mat& rho, const Mat& sigma, double delta) {
  if (delta < 0 || delta >= 1)
    throw std::invalid_argument("info spectrum: delta outside [0,1)");
  const int d = static_cast<int>(rho.rows());
  const double lo_cap = -64.0, hi_cap = 64.0;

  auto fval = [&](double omega) {
    Mat a = std::exp2(omega) * sigma - rho;
    HermEig e = herm_eig((a + a.adjoint()) / 2.0);
    const double thresh = -1e-13 * std::max(1.0, e.values.cwiseAbs().maxCoeff());
    double f = 0.0;
    for (int k = 0; k < d; ++k)
      if (e.values(k) >= thresh)
        f += (e.vectors.col(k).adjoint() * rho * e.vectors.col(k))(0, 0).real();
    return f;
  };

  auto eigvals = [&](double omega) {
    Mat a = std::exp2(omega) * sigma - rho;
    Eigen::SelfAdjointEigenSolver<Mat> es((a + a.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return RVec(es.eigenvalues());
  };

  // candidate omegas: eigenvalue sign crossings (eigenvalues are
  // nondecreasing in omega) plus a uniform grid
  std::vector<double> cands = {lo_cap, hi_cap};
  RVec lo_e = eigvals(lo_cap), hi_e = eigvals(hi_cap);
  for (int k = 0; k < d; ++k) {
    if (lo_e(k) < 0 && hi_e(k) >= 0) {
      double lo = lo_cap, hi = hi_cap;
      while (hi - lo > tols().omega_bisect) {
        const double mid = (lo + hi) / 2;
        if (eigvals(mid)(k) < 0)
          lo = mid;
        else
          hi = mid;
      }
      cands.push_back(lo);
      cands.push_back(hi);
      cands.push_back(hi + 1e-7);
      cands.push_back(lo - 1e-7);
    }
  }
  for (int k = 0; k <= 128; ++k) cands.push_back(lo_cap + (hi_cap - lo_cap) * k / 128.0);
  std::sort(cands.begin(), cands.end());

  double best = kNegInfinity;
  size_t best_idx = 0;
  for (size_t k = 0; k < cands.size(); ++k) {
    if (fval(cands[k]) <= delta && cands[k] > best) {
      best = cands[k];
      best_idx = k;
    }
  }
  if (best == kNegInfinity) return kNegInfinity;

  // refine toward the first infeasible candidate above
  double hi_bound = hi_cap;
  for (size_t k = best_idx + 1; k < cands.size(); ++k) {
    if (fval(cands[k]) > delta) {
      hi_bound = cands[k];
      break;
    }
    best = std::max(best, cands[k]);
  }
  if (hi_bound > best) {
    double lo = best, hi = hi_bound;
    while (hi - lo > tols().omega_bisect) {
      const double mid = (lo + hi) / 2;
      if (fval(mid) <= delta)
        lo = mid;
      else
        hi = mid;
    }
    best = hi;  // the supremum sits at the boundary
  }
  return best;
}

double info_spectrum_re(const DensityMatrix& rho, const DensityMatrix& sigma, double delta) {
  return info_spectrum_re_ops(rho.mat, sigma.mat, delta);
}

BoundReport gamma_quantity(const ResourceSpec& spec, const ChannelChoi& n, double kappa,
                           uint64_t seed, const GammaOptions& opts) {
  if (kappa <= 0 || kappa >= 1)
    throw std::invalid_argument("gamma: kappa outside (0,1)");
  auto free_check = is_free_operation(spec, n);
  if (!free_check.ok) throw std::invalid_argument("gamma: channel is not a free operation");

  ChannelChoi lambda = opts.annihilator ? *opts.annihilator : annihilating_projection(spec, n);
  const int d_out = lambda.d_out;
  const int d_in = lambda.d_in;
  int m_cap = opts.max_messages > 0 ? opts.max_messages : d_out * d_out;
  m_cap = std::min(m_cap, 25);

  auto code_sum = [&](const std::vector<Mat>& enc, const Povm& dec) {
    double s = 0.0;
    for (size_t m = 0; m < enc.size(); ++m)
      s += (dec.elements[m] * apply_op(lambda, enc[m])).trace().real();
    return s;
  };

  auto seesaw = [&](std::vector<Mat> enc) {
    const int m = static_cast<int>(enc.size());
    double prev = -1.0, cur = 0.0;
    Povm dec;
    for (int it = 0; it < opts.iters; ++it) {
      std::vector<Mat> outs(m);
      for (int k = 0; k < m; ++k) outs[k] = apply_op(lambda, enc[k]);
      auto disc = optimal_discrimination(outs, std::vector<double>(m, 1.0));
      dec = disc.povm;
      for (int k = 0; k < m; ++k) {
        auto [val, vec] = top_eig(apply_adjoint(lambda, dec.elements[k]));
        (void)val;
        enc[k] = vec * vec.adjoint();
      }
      cur = code_sum(enc, dec);
      if (cur - prev < 1e-10) break;
      prev = cur;
    }
    // square-root decoder is exact on orthogonal outputs
    {
      std::vector<DensityMatrix> outs;
      for (const auto& x : enc) {
        Mat o = apply_op(lambda, x);
        o = (o + o.adjoint()) / 2.0;
        outs.push_back(make_state(o / o.trace().real()));
      }
      cur = std::max(cur, code_sum(enc, pretty_good_measurement(outs)));
    }
    return cur;
  };

  double best = 1.0;  // a single message always scores exactly 1
  double prev_best = 0.0;
  int flat = 0;
  for (int m = 2; m <= m_cap; ++m) {
    double local = 0.0;
    for (int r = 0; r <= opts.restarts; ++r) {
      std::vector<Mat> enc(m);
      if (r == 0) {
        Mat b = spec.kind == ResourceKind::Coherence ? spec.basis : identity(d_in);
        for (int k = 0; k < m; ++k) {
          Ket v = b.col(k % d_in);
          enc[k] = v * v.adjoint();
        }
      } else {
        Rng rng = Rng::split(seed, 977 * m + r);
        for (int k = 0; k < m; ++k) {
          Ket v = rng.haar_ket(d_in);
          enc[k] = v * v.adjoint();
        }
      }
      local = std::max(local, seesaw(std::move(enc)));
    }
    best = std::max(best, local);
    if (best - prev_best < 1e-10) {
      if (++flat >= 2) break;
    } else {
      flat = 0;
    }
    prev_best = best;
  }

  if (opts.seed_codes) {
    for (const auto& code : *opts.seed_codes) {
      if (code.encodings.empty() || code.encodings[0].dim() != d_in) continue;
      std::vector<Mat> enc;
      for (const auto& s : code.encodings) enc.push_back(s.mat);
      best = std::max(best, code_sum(enc, code.decoder));
      best = std::max(best, seesaw(enc));
    }
  }

  auto rep = make_report("gamma", log2_safe(best), BoundKind::Heuristic,
                         "see-saw;single-representative", tols().sdp_gap);
  return rep;
}

}  // namespace rescap
