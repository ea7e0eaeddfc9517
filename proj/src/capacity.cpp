#include "rescap/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace rescap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530941723212145818;
}  // namespace

void CodeBook::validate() const {
  decoder.validate();
  if (static_cast<int>(encodings.size()) != decoder.size())
    throw std::invalid_argument("codebook: encoding/decoder length mismatch");
  for (const auto& s : encodings) s.validate();
}

Json codebook_to_json(const CodeBook& code) {
  Json enc = Json::array();
  for (const auto& s : code.encodings) enc.push_back(matrix_to_json(s.mat));
  Json dec = Json::array();
  for (const auto& e : code.decoder.elements) dec.push_back(matrix_to_json(e));
  return Json{{"encodings", enc}, {"decoder", dec}};
}

CodeBook codebook_from_json(const Json& j) {
  CodeBook code;
  for (const auto& m : j.at("encodings")) code.encodings.push_back(make_state(matrix_from_json(m)));
  for (const auto& m : j.at("decoder")) code.decoder.elements.push_back(matrix_from_json(m));
  code.validate();
  return code;
}

double success_probability(const ChannelChoi& n, const CodeBook& code) {
  const int m = code.m();
  if (m == 0) throw std::invalid_argument("success: empty code");
  double acc = 0.0;
  for (int k = 0; k < m; ++k)
    acc += (code.decoder.elements[k] * apply_op(n, code.encodings[k].mat)).trace().real();
  acc /= m;
  return std::clamp(acc, -1e-12, 1.0 + 1e-12) < 0 ? 0.0 : std::min(acc, 1.0);
}

std::pair<Povm, double> optimal_decoder(const ChannelChoi& n,
                                        const std::vector<DensityMatrix>& encodings,
                                        bool* certified) {
  const int m = static_cast<int>(encodings.size());
  if (m == 0) throw std::invalid_argument("optimal_decoder: no encodings");
  std::vector<Mat> outs(m);
  for (int k = 0; k < m; ++k) outs[k] = apply_op(n, encodings[k].mat);
  auto res = optimal_discrimination(outs, std::vector<double>(m, 1.0 / m));
  if (certified) *certified = res.optimal;
  return {res.povm, res.value};
}

namespace {

// See-saw for a fixed message count; returns the best code found and its
// success probability.
std::pair<CodeBook, double> optimize_code(const ChannelChoi& n, int m, int restarts,
                                          int iters, uint64_t seed) {
  CodeBook best;
  double best_ps = -1.0;

  auto evaluate = [&](std::vector<DensityMatrix> enc) {
    Povm dec;
    double ps = 0.0;
    for (int it = 0; it < iters; ++it) {
      std::vector<Mat> outs;
      outs.reserve(m);
      std::vector<DensityMatrix> out_states;
      for (const auto& s : enc) {
        Mat o = apply_op(n, s.mat);
        o = (o + o.adjoint()) / 2.0;
        outs.push_back(o);
        out_states.push_back(make_state(o / o.trace().real()));
      }
      dec = pretty_good_measurement(out_states);
      // encoding update: top eigenvector of the pulled-back effect
      bool moved = false;
      for (int k = 0; k < m; ++k) {
        auto [val, vec] = top_eig(apply_adjoint(n, dec.elements[k]));
        (void)val;
        Mat cand = vec * vec.adjoint();
        if ((cand - enc[k].mat).cwiseAbs().maxCoeff() > 1e-12) moved = true;
        enc[k] = make_state(cand, enc[k].dims);
      }
      if (!moved) break;
    }
    // keep the better of the square-root decoder (exact in the orthogonal
    // case) and the SDP decoder
    {
      std::vector<DensityMatrix> outs;
      for (const auto& s : enc) {
        Mat o = apply_op(n, s.mat);
        o = (o + o.adjoint()) / 2.0;
        outs.push_back(make_state(o / o.trace().real()));
      }
      dec = pretty_good_measurement(outs);
    }
    CodeBook pgm_code{enc, dec};
    ps = success_probability(n, pgm_code);
    if (ps > best_ps) {
      best_ps = ps;
      best = pgm_code;
    }
    auto [opt_dec, opt_ps] = optimal_decoder(n, enc);
    CodeBook code{enc, opt_dec};
    ps = success_probability(n, code);
    if (ps > best_ps) {
      best_ps = ps;
      best = code;
    }
  };

  // canonical restart: computational-basis encodings
  {
    std::vector<DensityMatrix> enc;
    for (int k = 0; k < m; ++k) {
      Ket v = Ket::Zero(n.d_in);
      v(k % n.d_in) = 1;
      enc.push_back(pure_state(v));
    }
    evaluate(std::move(enc));
  }
  for (int r = 1; r <= restarts; ++r) {
    Rng rng = Rng::split(seed, 131 * m + r);
    std::vector<DensityMatrix> enc;
    for (int k = 0; k < m; ++k) enc.push_back(pure_state(rng.haar_ket(n.d_in)));
    evaluate(std::move(enc));
  }

  // the trivial all-pass decoder guarantees 1/m
  if (best_ps < 1.0 / m) {
    std::vector<DensityMatrix> enc;
    for (int k = 0; k < m; ++k) {
      Ket v = Ket::Zero(n.d_in);
      v(k % n.d_in) = 1;
      enc.push_back(pure_state(v));
    }
    Povm dec;
    dec.elements.assign(m, Mat::Zero(n.d_out, n.d_out));
    dec.elements[0] = identity(n.d_out);
    CodeBook code{enc, dec};
    const double ps = success_probability(n, code);
    if (ps > best_ps) {
      best_ps = ps;
      best = code;
    }
  }
  return {best, best_ps};
}

}  // namespace

CapacityResult one_shot_capacity_lower(const ChannelChoi& n, double epsilon,
                                       const CapacityOptions& opts) {
  if (epsilon < 0 || epsilon >= 1)
    throw std::invalid_argument("capacity: epsilon outside [0,1)");
  CapacityResult res;

  // average success through any code is at most d_out / M
  const double hard_cap = n.d_out / (1.0 - epsilon) + 1e-9;
  int m_hi = opts.m_max > 0 ? opts.m_max : std::max(n.d_out * n.d_out, 2);
  m_hi = std::min(m_hi, static_cast<int>(std::min(hard_cap, 4096.0)));
  m_hi = std::max(m_hi, 1);

  res.best_m = 1;
  res.best_success = 1.0;
  for (int m = m_hi; m >= 1; --m) {
    auto [code, ps] = optimize_code(n, m, opts.restarts, opts.iters, opts.seed);
    res.codes.push_back(code);
    if (ps >= 1.0 - epsilon - 1e-9) {  // ties break toward accepting
      res.best_m = m;
      res.best_success = ps;
      break;
    }
  }
  res.report = make_report("capacity_lower", std::log2(static_cast<double>(res.best_m)),
                           BoundKind::Lower, "see-saw;integer-search", 1e-9);
  return res;
}

BoundsPipeline bounds_pipeline(const ResourceSpec& spec, const ChannelChoi& n, double epsilon,
                               double delta, double kappa, uint64_t seed,
                               const CapacityOptions& copts_in) {
  if (epsilon < 0 || delta < 0 || epsilon + delta >= 1)
    throw std::invalid_argument("bounds: need epsilon, delta >= 0 and epsilon + delta < 1");
  if (kappa <= 0 || kappa >= 1) throw std::invalid_argument("bounds: kappa outside (0,1)");

  BoundsPipeline out;
  CapacityOptions copts = copts_in;
  copts.seed = seed;
  auto cap = one_shot_capacity_lower(n, epsilon, copts);
  out.capacity_lower = cap.report;

  PreservabilityOptions popts;
  popts.seed = seed;
  auto bracket = preservability_bracket(spec, n, popts);
  out.p_lower = bracket.lower;
  if (delta > 0) {
    out.p_upper = smoothed_preservability_upper(spec, n, delta, 5, seed);
  } else {
    out.p_upper = bracket.upper;
  }

  // two valid pairings of (preservability upper, resourceless term): the
  // family-SDP minimizer and the canonical projection; keep the tighter sum
  GammaOptions gopts;
  gopts.seed_codes = &cap.codes;
  if (bracket.argmin) gopts.annihilator = &*bracket.argmin;
  BoundReport p_a = out.p_upper;
  BoundReport gamma_a = gamma_quantity(spec, n, kappa, seed, gopts);

  auto proj = annihilating_projection(spec, n);
  BoundReport p_b = channel_dmax_cp_upper(n, proj);
  p_b.name = "preservability_upper";
  GammaOptions gopts_b;
  gopts_b.seed_codes = &cap.codes;
  gopts_b.annihilator = &proj;
  BoundReport gamma_b = gamma_quantity(spec, n, kappa, seed, gopts_b);

  if (p_b.value + gamma_b.value < p_a.value + gamma_a.value) {
    out.p_upper = p_b;
    out.gamma = gamma_b;
  } else {
    out.gamma = gamma_a;
  }

  const double slack = std::log2(std::exp2(kappa) / (1.0 - epsilon - delta));
  out.theorem1_upper =
      make_report("theorem1_upper", out.p_upper.value + out.gamma.value + slack,
                  BoundKind::Upper, "preservability+gamma+slack;gamma-heuristic",
                  out.p_upper.tol + out.gamma.tol);
  out.consistent = out.capacity_lower.value <= out.theorem1_upper.value + 1e-6;
  return out;
}

BoundReport theorem1_upper(const ResourceSpec& spec, const ChannelChoi& n, double epsilon,
                           double delta, double kappa, uint64_t seed) {
  return bounds_pipeline(spec, n, epsilon, delta, kappa, seed).theorem1_upper;
}

BoundReport corollary1_upper(const ChannelChoi& n, const ThermalContext& gamma_ctx,
                             const ResourceSpec& spec, double epsilon, double kappa) {
  if (epsilon < 0 || epsilon >= 1 || kappa <= 0 || kappa >= 1)
    throw std::invalid_argument("corollary1: parameter domain violation");
  auto thermal_spec = ResourceSpec::athermality(gamma_ctx);
  if (!is_free_operation(thermal_spec, n).ok)
    throw std::invalid_argument("corollary1: channel is not Gibbs-preserving");
  if (!is_free_operation(spec, n).ok)
    throw std::invalid_argument("corollary1: channel is not free for the resource");

  PreservabilityOptions popts;
  popts.want_argmin = false;
  auto first = preservability_bracket(spec, n, popts).upper;
  auto proj = annihilating_projection(spec, n);
  auto second = channel_dmax_cp_upper(proj, annihilating_projection(thermal_spec, proj));
  const double slack = std::log2(std::exp2(kappa) / (1.0 - epsilon));
  return make_report("corollary1_upper", first.value + second.value + slack, BoundKind::Upper,
                     "resource+thermal-preservability", first.tol + second.tol);
}

BoundReport theorem2_lower(const ChannelChoi& n, const UnitaryGroup& g, double epsilon,
                           double delta, int probes, uint64_t seed) {
  if (!(0 <= delta && delta < epsilon && epsilon < 1))
    throw std::invalid_argument("theorem2: need 0 <= delta < epsilon < 1");
  auto spec = ResourceSpec::asymmetry(g);
  if (!is_free_operation(spec, n).ok)
    throw std::invalid_argument("theorem2: channel is not G-covariant");

  auto tg = twirl_group(g);
  const double level = epsilon - delta;
  auto wvalue = [&](const Ket& psi) {
    Mat out = apply_op(n, psi * psi.adjoint());
    out = (out + out.adjoint()) / 2.0;
    Mat sym = apply_op(tg, out);
    return info_spectrum_re_ops(out, (sym + sym.adjoint()) / 2.0, level);
  };

  double w = kNegInfinity;
  for (const auto& psi : [&] {
         std::vector<Ket> ps;
         for (int i = 0; i < n.d_in; ++i) {
           Ket v = Ket::Zero(n.d_in);
           v(i) = 1;
           ps.push_back(v);
         }
         for (int i = 0; i < n.d_in; ++i)
           for (int j = i + 1; j < n.d_in; ++j) {
             Ket v = Ket::Zero(n.d_in);
             v(i) = v(j) = 1.0 / std::sqrt(2.0);
             ps.push_back(v);
           }
         return ps;
       }())
    w = std::max(w, wvalue(psi));
  for (int r = 0; r < probes; ++r) {
    Rng rng = Rng::split(seed, 555 + r);
    Ket psi = rng.haar_ket(n.d_in);
    double best = wvalue(psi);
    double radius = 0.5;
    for (int it = 0; it < 25; ++it) {
      Ket cand = (psi + radius * rng.haar_ket(n.d_in)).normalized();
      const double v = wvalue(cand);
      if (v > best) {
        best = v;
        psi = cand;
      } else {
        radius *= 0.75;
      }
    }
    w = std::max(w, best);
  }

  double bound;
  if (w == kNegInfinity || delta == 0.0) {
    bound = 0.0;
  } else {
    bound = std::max(0.0, w / kLn2 + std::log2(delta) - 1.0);
  }
  return make_report("theorem2_lower", bound, BoundKind::Lower, "info-spectrum;twirl", 1e-9);
}

RandomCodebookReport random_codebook_experiment(const DensityMatrix& rho,
                                                const UnitaryGroup& g, int m, int trials,
                                                double kappa, uint64_t seed) {
  if (m < 1 || trials < 1) throw std::invalid_argument("codebook experiment: bad m/trials");
  if (kappa <= 0 || kappa >= 1) throw std::invalid_argument("codebook experiment: bad kappa");
  RandomCodebookReport rep;
  rep.m = m;
  rep.trials = trials;

  auto tg = twirl_group(g);
  Mat sym = apply_op(tg, rho.mat);
  rep.d_spectrum = info_spectrum_re_ops(rho.mat, (sym + sym.adjoint()) / 2.0, kappa);
  rep.analytic_rhs = (1.0 - kappa) * (1.0 - m * std::exp(-rep.d_spectrum));

  Rng rng = Rng::split(seed, 0xC0DEB00C);
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    CodebookMap map{{}, g};
    map.assignments.reserve(m);
    for (int k = 0; k < m; ++k)
      map.assignments.push_back(static_cast<int>(rng.integer(g.order())));
    std::vector<DensityMatrix> enc;
    enc.reserve(m);
    for (int k = 0; k < m; ++k) {
      const Mat& u = g.elements[map.assignments[k]];
      Mat s = u * rho.mat * u.adjoint();
      enc.push_back(make_state((s + s.adjoint()) / 2.0));
    }
    Povm dec = pretty_good_measurement(enc);
    double ps = 0.0;
    for (int k = 0; k < m; ++k) ps += (dec.elements[k] * enc[k].mat).trace().real();
    ps /= m;
    sum += ps;
    sumsq += ps * ps;
  }
  rep.empirical_mean = sum / trials;
  const double var = std::max(0.0, sumsq / trials - rep.empirical_mean * rep.empirical_mean);
  rep.std_error = std::sqrt(var / trials);
  rep.pass = rep.empirical_mean >= rep.analytic_rhs - 3.0 * rep.std_error - 1e-12;
  return rep;
}

namespace {

// exact max-weight assignment of rows to columns by subset DP (n <= 20)
double best_assignment(const Eigen::MatrixXd& w, std::vector<int>* out_cols = nullptr) {
  const int nn = static_cast<int>(w.rows());
  const int full = 1 << nn;
  std::vector<double> dp(full, -kInf);
  std::vector<int> choice(full, -1);
  dp[0] = 0.0;
  for (int mask = 0; mask < full - 1; ++mask) {
    if (dp[mask] == -kInf) continue;
    const int row = __builtin_popcount(mask);
    for (int c = 0; c < nn; ++c) {
      if (mask & (1 << c)) continue;
      const int nm = mask | (1 << c);
      const double cand = dp[mask] + w(row, c);
      if (cand > dp[nm]) {
        dp[nm] = cand;
        choice[nm] = c;
      }
    }
  }
  if (out_cols) {
    out_cols->assign(nn, -1);
    int mask = full - 1;
    for (int row = nn - 1; row >= 0; --row) {
      const int c = choice[mask];
      (*out_cols)[row] = c;
      mask &= ~(1 << c);
    }
  }
  return dp[full - 1];
}

}  // namespace

BoundReport cme_capacity(const ChannelChoi& n, double epsilon, const CmeOptions& opts) {
  const int dd = n.d_in;
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dd))));
  if (d * d != dd || n.d_out != dd)
    throw std::invalid_argument("cme: channel is not square bipartite");
  if (epsilon < 0 || epsilon >= 1) throw std::invalid_argument("cme: epsilon outside [0,1)");

  auto base = weyl_basis(d);
  const int nstates = d * d;

  // local-unitary rotations of the clock-and-shift family
  std::vector<std::pair<Mat, Mat>> rots = {{identity(d), identity(d)}};
  for (int r = 1; r < opts.rotations; ++r) {
    Rng rng = Rng::split(opts.seed, 7000 + r);
    rots.emplace_back(rng.haar_unitary(d), rng.haar_unitary(d));
  }

  auto rotated = [&](const std::pair<Mat, Mat>& ab) {
    std::vector<Mat> fam(nstates);
    Mat lift = kron(ab.first, ab.second);
    for (int k = 0; k < nstates; ++k) fam[k] = lift * base[k].mat * lift.adjoint();
    return fam;
  };

  std::vector<double> best_sum(nstates + 1, 0.0);  // best sum over M matched pairs
  for (const auto& renc : rots) {
    auto enc = rotated(renc);
    std::vector<Mat> outs(nstates);
    for (int k = 0; k < nstates; ++k) outs[k] = apply_op(n, enc[k]);
    for (const auto& rdec : rots) {
      auto dec = rotated(rdec);
      Eigen::MatrixXd g(nstates, nstates);
      for (int a = 0; a < nstates; ++a)
        for (int b = 0; b < nstates; ++b) g(a, b) = (dec[b] * outs[a]).trace().real();

      // full assignment, then its top-M prefixes
      std::vector<int> cols;
      best_assignment(g, &cols);
      std::vector<double> matched(nstates);
      for (int a = 0; a < nstates; ++a) matched[a] = g(a, cols[a]);
      std::sort(matched.rbegin(), matched.rend());
      double acc = 0.0;
      for (int m = 1; m <= nstates; ++m) {
        acc += matched[m - 1];
        best_sum[m] = std::max(best_sum[m], acc);
      }
      // greedy per M as a second route
      std::vector<std::tuple<double, int, int>> entries;
      for (int a = 0; a < nstates; ++a)
        for (int b = 0; b < nstates; ++b) entries.emplace_back(g(a, b), a, b);
      std::sort(entries.rbegin(), entries.rend());
      std::vector<bool> ru(nstates, false), cu(nstates, false);
      double gacc = 0.0;
      int picked = 0;
      for (const auto& [val, a, b] : entries) {
        if (ru[a] || cu[b]) continue;
        ru[a] = cu[b] = true;
        gacc += val;
        ++picked;
        best_sum[picked] = std::max(best_sum[picked], gacc);
      }
    }
  }

  int best_m = 0;
  for (int m = 1; m <= nstates; ++m)
    if (best_sum[m] / m >= 1.0 - epsilon - 1e-9) best_m = m;
  const double value = best_m == 0 ? -kInf : std::log2(static_cast<double>(best_m));
  return make_report("cme_capacity", best_m == 0 ? 0.0 : value,
                     best_m == 0 ? BoundKind::Exact : BoundKind::Lower,
                     best_m == 0 ? "no-code-meets-epsilon" : "weyl-family-search", 1e-9);
}

BoundReport entanglement_preservability_upper(const ChannelChoi& n) {
  const int dd = n.d_out;
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dd))));
  if (d * d != dd) throw std::invalid_argument("entanglement upper: output not bipartite");

  std::vector<ChannelChoi> candidates;
  candidates.push_back(constant_channel(identity(dd) / dd, n.d_in));
  // product of the marginals of the maximally-entangled output
  Mat out_phi = apply_op(n, max_entangled(d).mat);
  out_phi = (out_phi + out_phi.adjoint()) / 2.0;
  Mat ma = partial_trace(out_phi, {d, d}, {0});
  Mat mb = partial_trace(out_phi, {d, d}, {1});
  Mat prod = kron(ma, mb);
  prod = (prod + prod.adjoint()) / 2.0;
  candidates.push_back(constant_channel(prod / prod.trace().real(), n.d_in));
  // dephasing the output in the local product basis yields separable outputs
  candidates.push_back(compose(dephasing(dd), n));

  double best = kInf;
  double tol = 0.0;
  for (const auto& cand : candidates) {
    auto rep = channel_dmax_cp_upper(n, cand);
    if (rep.value < best) {
      best = rep.value;
      tol = rep.tol;
    }
  }
  return make_report("entanglement_p_upper", best, BoundKind::Upper,
                     "cp-dominance;separable-candidates", tol);
}

Theorem4Report theorem4_check(ConverseResource resource, const ChannelChoi& n, double epsilon,
                              double delta, const ThermalContext* ctx, uint64_t seed) {
  if (epsilon < 0 || delta < 0 || epsilon + delta >= 1)
    throw std::invalid_argument("theorem4: need epsilon + delta < 1");
  Theorem4Report rep;
  CmeOptions copts;
  copts.seed = seed;
  rep.cme_value = cme_capacity(n, epsilon, copts).value;
  if (rep.cme_value == -kInf) rep.cme_value = 0.0;

  if (resource == ConverseResource::Athermality) {
    if (!ctx) throw std::invalid_argument("theorem4: athermality needs a thermal context");
    rep.alpha = 1.0;
    auto spec = ResourceSpec::athermality(*ctx);
    if (delta > 0) {
      rep.p_upper = smoothed_preservability_upper(spec, n, delta, 5, seed).value;
    } else {
      PreservabilityOptions popts;
      popts.want_argmin = false;
      rep.p_upper = preservability_bracket(spec, n, popts).upper.value;
    }
  } else {
    rep.alpha = 0.5;
    rep.p_upper = entanglement_preservability_upper(n).value;
  }
  rep.bound = (rep.p_upper + std::log2(1.0 / (1.0 - epsilon - delta))) / rep.alpha;
  rep.margin = rep.bound - rep.cme_value;
  rep.pass = rep.margin >= -1e-6;
  return rep;
}

FefThresholdReport fef_threshold_check(ConverseResource resource, const ChannelChoi& n,
                                       double epsilon, const ThermalContext* ctx,
                                       uint64_t seed) {
  const int dd = n.d_out;
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dd))));
  if (d * d != dd) throw std::invalid_argument("fef threshold: output not bipartite");
  FefThresholdReport rep;
  if (resource == ConverseResource::Athermality) {
    if (!ctx) throw std::invalid_argument("fef threshold: athermality needs a context");
    auto spec = ResourceSpec::athermality(*ctx);
    PreservabilityOptions popts;
    popts.want_argmin = false;
    rep.p_upper = preservability_bracket(spec, n, popts).upper.value;
  } else {
    rep.p_upper = entanglement_preservability_upper(n).value;
  }
  const double fr = 1.0 / d;  // free entanglement threshold
  rep.threshold = std::log2((1.0 - epsilon) / fr);
  rep.condition = rep.p_upper < rep.threshold - 1e-9;
  CmeOptions copts;
  copts.seed = seed;
  auto cme = cme_capacity(n, epsilon, copts);
  rep.cme_value = cme.method == "no-code-meets-epsilon" ? -1.0 : cme.value;
  rep.consistent = !rep.condition || rep.cme_value < 0.0;
  return rep;
}

}  // namespace rescap
