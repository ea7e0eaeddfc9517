#include "rescap/sdp.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rescap::sdp {

namespace {

Mat dense_of(const std::vector<HermTriplet>& terms, int dim) {
  Mat a = Mat::Zero(dim, dim);
  for (const auto& t : terms) {
    if (t.r == t.c) {
      a(t.r, t.r) += t.v.real();
    } else {
      a(t.r, t.c) += t.v;
      a(t.c, t.r) += std::conj(t.v);
    }
  }
  return a;
}

// tr(A X) for a Hermitian-closure triplet list; real for Hermitian X.
double tr_ax(const std::vector<HermTriplet>& terms, const Mat& x) {
  double acc = 0.0;
  for (const auto& t : terms) {
    if (t.r == t.c) {
      acc += t.v.real() * x(t.r, t.r).real();
    } else {
      acc += 2.0 * (t.v * x(t.c, t.r)).real();
    }
  }
  return acc;
}

// Re tr(A B) for arbitrary (non-Hermitian) B.
double re_tr_ab(const std::vector<HermTriplet>& terms, const Mat& b) {
  double acc = 0.0;
  for (const auto& t : terms) {
    if (t.r == t.c) {
      acc += t.v.real() * b(t.r, t.r).real();
    } else {
      acc += (t.v * b(t.c, t.r) + std::conj(t.v) * b(t.r, t.c)).real();
    }
  }
  return acc;
}

// B = S^{-1} A X from triplets: sum of scaled outer products.
void sinv_a_x(const Mat& sinv, const std::vector<HermTriplet>& terms, const Mat& x,
              Mat& out) {
  for (const auto& t : terms) {
    if (t.r == t.c) {
      out.noalias() += t.v.real() * (sinv.col(t.r) * x.row(t.r));
    } else {
      out.noalias() += t.v * (sinv.col(t.r) * x.row(t.c));
      out.noalias() += std::conj(t.v) * (sinv.col(t.c) * x.row(t.r));
    }
  }
}

void hermitianize(Mat& a) { a = ((a + a.adjoint()) / 2.0).eval(); }

// largest alpha in (0,1] with X + alpha D >= (1-frac) boundary
double max_step(const Mat& x, const Mat& d) {
  Eigen::LLT<Mat> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  Mat l = llt.matrixL();
  Mat w = l.triangularView<Eigen::Lower>().solve(d);
  w = l.triangularView<Eigen::Lower>().solve(w.adjoint()).adjoint();
  hermitianize(w);
  Eigen::SelfAdjointEigenSolver<Mat> es(w, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return 1.0;
  return std::min(1.0, -1.0 / lmin);
}

struct Workspace {
  std::vector<Mat> x, s, sinv, rd;
  std::vector<double> y;
};

}  // namespace

Solution solve(const Problem& p) {
  const int nb = static_cast<int>(p.block_dims.size());
  const int m = static_cast<int>(p.constraints.size());
  Solution sol;
  sol.y.assign(m, 0.0);

  int total_dim = 0;
  for (int d : p.block_dims) total_dim += d;
  if (total_dim == 0 || m == 0) throw std::invalid_argument("sdp: empty problem");
  if (total_dim > 128) throw std::invalid_argument("sdp: total variable dimension beyond 128");

  std::vector<Mat> cmat(nb);
  for (int b = 0; b < nb; ++b) cmat[b] = Mat::Zero(p.block_dims[b], p.block_dims[b]);
  for (const auto& bt : p.objective) cmat[bt.block] += dense_of(bt.terms, p.block_dims[bt.block]);

  double data_scale = 1.0;
  for (int i = 0; i < m; ++i) data_scale = std::max(data_scale, std::abs(p.constraints[i].rhs));
  for (int b = 0; b < nb; ++b)
    data_scale = std::max(data_scale, cmat[b].size() ? cmat[b].cwiseAbs().maxCoeff() : 0.0);

  Workspace w;
  w.x.resize(nb);
  w.s.resize(nb);
  w.sinv.resize(nb);
  w.rd.resize(nb);
  w.y.assign(m, 0.0);
  const double zeta = std::max(1.0, std::sqrt(data_scale));
  for (int b = 0; b < nb; ++b) {
    w.x[b] = zeta * Mat::Identity(p.block_dims[b], p.block_dims[b]);
    w.s[b] = zeta * Mat::Identity(p.block_dims[b], p.block_dims[b]);
  }
  if (p.init_x) {
    for (int b = 0; b < nb; ++b) w.x[b] = (*p.init_x)[b];
  }

  auto apply_A = [&](const std::vector<Mat>& xs, int i) {
    double v = 0.0;
    for (const auto& bt : p.constraints[i].lhs) v += tr_ax(bt.terms, xs[bt.block]);
    return v;
  };

  std::vector<Mat> deltas(nb), deltax(nb), dxa(nb), dsa(nb);
  Eigen::MatrixXd big_m(m, m);
  Eigen::VectorXd rhs(m), dy(m), dy_aff(m);

  double mu = 0.0;
  int stall = 0;
  double best_infeas = 1e300;

  for (int iter = 0; iter < p.max_iter; ++iter) {
    // residuals
    double pres = 0.0;
    Eigen::VectorXd rp(m);
    for (int i = 0; i < m; ++i) {
      rp(i) = p.constraints[i].rhs - apply_A(w.x, i);
      pres = std::max(pres, std::abs(rp(i)));
    }
    double dres = 0.0;
    for (int b = 0; b < nb; ++b) w.rd[b] = cmat[b] - w.s[b];
    for (int i = 0; i < m; ++i)
      for (const auto& bt : p.constraints[i].lhs)
        w.rd[bt.block] -= w.y[i] * dense_of(bt.terms, p.block_dims[bt.block]);
    for (int b = 0; b < nb; ++b) dres = std::max(dres, w.rd[b].cwiseAbs().maxCoeff());

    double xs = 0.0;
    for (int b = 0; b < nb; ++b) xs += (w.x[b] * w.s[b]).trace().real();
    mu = xs / total_dim;

    double pobj = 0.0;
    for (int b = 0; b < nb; ++b) pobj += (cmat[b] * w.x[b]).trace().real();
    double dobj = 0.0;
    for (int i = 0; i < m; ++i) dobj += p.constraints[i].rhs * w.y[i];

    const double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double rp_norm = pres / (1.0 + data_scale);
    const double rd_norm = dres / (1.0 + data_scale);

    sol.primal_value = pobj;
    sol.dual_value = dobj;
    sol.gap = relgap;
    sol.primal_res = rp_norm;
    sol.dual_res = rd_norm;

    if (p.verbose)
      std::printf("it=%3d mu=%9.2e gap=%9.2e rp=%9.2e rd=%9.2e pobj=%12.5e dobj=%12.5e\n",
                  iter, mu, relgap, rp_norm, rd_norm, pobj, dobj);

    if (relgap <= p.gap_tol && rp_norm <= p.feas_tol && rd_norm <= p.feas_tol) {
      sol.status = Status::Optimal;
      sol.x = w.x;
      sol.s = w.s;
      sol.y = w.y;
      return sol;
    }

    // crude divergence detection
    double ynorm = 0.0;
    for (double v : w.y) ynorm = std::max(ynorm, std::abs(v));
    if (ynorm > 1e9 * (1.0 + data_scale) && rp_norm > 1e-7) {
      sol.status = Status::Infeasible;
      return sol;
    }
    if (pobj < -1e10 * (1.0 + data_scale) && rp_norm <= 1e-6) {
      sol.status = Status::Unbounded;
      return sol;
    }
    const double infeas = rp_norm + rd_norm + relgap;
    if (infeas < best_infeas * 0.999) {
      best_infeas = infeas;
      stall = 0;
    } else if (++stall > 25) {
      // converged within slack: the iterate is at the central-path floor
      if (relgap <= 10 * p.gap_tol && rp_norm <= 100 * p.feas_tol &&
          rd_norm <= 100 * p.feas_tol) {
        sol.status = Status::Optimal;
      } else {
        sol.status = (rp_norm > 1e-6) ? Status::Infeasible : Status::MaxIterations;
      }
      sol.x = w.x;
      sol.s = w.s;
      sol.y = w.y;
      return sol;
    }

    // factor S
    bool fact_ok = true;
    for (int b = 0; b < nb; ++b) {
      Eigen::LLT<Mat> llt(w.s[b]);
      if (llt.info() != Eigen::Success) {
        fact_ok = false;
        break;
      }
      w.sinv[b] = llt.solve(Mat::Identity(p.block_dims[b], p.block_dims[b]));
      hermitianize(w.sinv[b]);
    }
    if (!fact_ok) {
      sol.status = Status::NumericalFailure;
      return sol;
    }

    // Schur complement M_ij = Re tr(A_i S^{-1} A_j X)
    std::vector<Mat> tj(nb);
    for (int j = 0; j < m; ++j) {
      for (int b = 0; b < nb; ++b) tj[b] = Mat::Zero(p.block_dims[b], p.block_dims[b]);
      for (const auto& bt : p.constraints[j].lhs)
        sinv_a_x(w.sinv[bt.block], bt.terms, w.x[bt.block], tj[bt.block]);
      for (int i = 0; i < m; ++i) {
        double v = 0.0;
        for (const auto& bt : p.constraints[i].lhs) v += re_tr_ab(bt.terms, tj[bt.block]);
        big_m(i, j) = v;
      }
    }
    big_m = ((big_m + big_m.transpose()) / 2.0).eval();
    for (int i = 0; i < m; ++i) big_m(i, i) += 1e-13 * (1.0 + big_m(i, i));

    Eigen::LDLT<Eigen::MatrixXd> mf(big_m);
    if (mf.info() != Eigen::Success) {
      sol.status = Status::NumericalFailure;
      return sol;
    }

    // common rhs piece: A_i(S^{-1} Rd X)
    std::vector<Mat> srdx(nb);
    for (int b = 0; b < nb; ++b) {
      srdx[b] = w.sinv[b] * w.rd[b] * w.x[b];
    }
    auto newton_rhs = [&](double sigma_mu, const std::vector<Mat>* corr) {
      for (int i = 0; i < m; ++i) {
        double v = p.constraints[i].rhs;
        for (const auto& bt : p.constraints[i].lhs) {
          v -= sigma_mu * tr_ax(bt.terms, w.sinv[bt.block]);
          v += re_tr_ab(bt.terms, srdx[bt.block]);
          if (corr) v += re_tr_ab(bt.terms, (*corr)[bt.block]);
        }
        rhs(i) = v;
      }
    };
    auto recover_dirs = [&](const Eigen::VectorXd& dyv, double sigma_mu,
                            const std::vector<Mat>* corr) {
      for (int b = 0; b < nb; ++b) deltas[b] = w.rd[b];
      for (int i = 0; i < m; ++i)
        for (const auto& bt : p.constraints[i].lhs)
          deltas[bt.block] -= dyv(i) * dense_of(bt.terms, p.block_dims[bt.block]);
      for (int b = 0; b < nb; ++b) {
        deltax[b] = sigma_mu * w.sinv[b] - w.x[b] - w.sinv[b] * deltas[b] * w.x[b];
        if (corr) deltax[b] -= (*corr)[b];
        hermitianize(deltax[b]);
        hermitianize(deltas[b]);
      }
    };

    // predictor
    newton_rhs(0.0, nullptr);
    dy_aff = mf.solve(rhs);
    recover_dirs(dy_aff, 0.0, nullptr);
    double ap = 1.0, ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(w.x[b], deltax[b]));
      ad = std::min(ad, max_step(w.s[b], deltas[b]));
    }
    double xs_aff = 0.0;
    for (int b = 0; b < nb; ++b)
      xs_aff += ((w.x[b] + 0.98 * ap * deltax[b]) * (w.s[b] + 0.98 * ad * deltas[b]))
                    .trace()
                    .real();
    double sigma = std::pow(std::max(xs_aff, 0.0) / xs, 3.0);
    sigma = std::min(1.0, std::max(1e-8, sigma));

    // corrector with Mehrotra cross term S^{-1} dS_aff dX_aff
    std::vector<Mat> cross(nb);
    for (int b = 0; b < nb; ++b) {
      dxa[b] = deltax[b];
      dsa[b] = deltas[b];
      cross[b] = w.sinv[b] * dsa[b] * dxa[b];
    }
    newton_rhs(sigma * mu, &cross);
    dy = mf.solve(rhs);
    recover_dirs(dy, sigma * mu, &cross);

    ap = 1.0;
    ad = 1.0;
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(w.x[b], deltax[b]));
      ad = std::min(ad, max_step(w.s[b], deltas[b]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);

    for (int b = 0; b < nb; ++b) {
      w.x[b] += ap * deltax[b];
      w.s[b] += ad * deltas[b];
      hermitianize(w.x[b]);
      hermitianize(w.s[b]);
    }
    for (int i = 0; i < m; ++i) w.y[i] += ad * dy(i);
  }

  sol.status = Status::MaxIterations;
  sol.x = w.x;
  sol.s = w.s;
  sol.y = w.y;
  return sol;
}

void add_complex_eq(Problem& p, const std::vector<RawEntry>& entries, Complex rhs) {
  // split tr(X G) = rhs into Hermitian and skew parts
  auto build = [&](bool herm_part) {
    Constraint c;
    c.rhs = herm_part ? rhs.real() : rhs.imag();
    bool nonzero = false;
    for (const auto& e : entries) {
      // raw G += v e_{r,c}; functional is sum v X(r,c) = tr(X G') with
      // G'(c,r) = v. Hermitian part contributes closure triplet (c,r,v/2);
      // skew part -i(G-G+)/2 contributes (c,r,-i v/2).
      Complex tv = herm_part ? e.v / 2.0 : Complex(0, -0.5) * e.v;
      int r = e.c, cc = e.r;
      if (r == cc) {
        double dv = herm_part ? e.v.real() : e.v.imag();
        if (std::abs(dv) < 1e-15) continue;
        nonzero = true;
        bool merged = false;
        for (auto& bt : c.lhs)
          if (bt.block == e.block) {
            bt.terms.push_back({r, r, Complex(dv, 0)});
            merged = true;
            break;
          }
        if (!merged) c.lhs.push_back({e.block, {{r, r, Complex(dv, 0)}}});
        continue;
      }
      if (r > cc) {  // normalize to upper storage (r < c) to ease merging
        tv = std::conj(tv);
        std::swap(r, cc);
      }
      if (std::abs(tv) < 1e-15) continue;
      nonzero = true;
      bool merged = false;
      for (auto& bt : c.lhs)
        if (bt.block == e.block) {
          bt.terms.push_back({r, cc, tv});
          merged = true;
          break;
        }
      if (!merged) c.lhs.push_back({e.block, {{r, cc, tv}}});
    }
    if (!nonzero) {
      if (std::abs(c.rhs) > 1e-12)
        throw std::invalid_argument("sdp: inconsistent constant constraint");
      return;
    }
    p.constraints.push_back(std::move(c));
  };
  build(true);
  // skip the skew row when it is identically zero on both sides
  bool any_skew = std::abs(rhs.imag()) > 1e-15;
  for (const auto& e : entries) {
    if (e.r != e.c || std::abs(e.v.imag()) > 1e-15) {
      any_skew = true;
      break;
    }
  }
  if (any_skew) build(false);
}

void add_matrix_eq(Problem& p, const std::vector<std::pair<int, Complex>>& blocks,
                   const Mat& rhs) {
  const int d = static_cast<int>(rhs.rows());
  for (int r = 0; r < d; ++r) {
    for (int c = r; c < d; ++c) {
      std::vector<RawEntry> entries;
      entries.reserve(blocks.size());
      for (const auto& [b, coeff] : blocks) entries.push_back({b, r, c, coeff});
      add_complex_eq(p, entries, rhs(r, c));
    }
  }
}

void add_objective(Problem& p, int block, const Mat& c) {
  BlockTerm bt;
  bt.block = block;
  const int d = static_cast<int>(c.rows());
  for (int r = 0; r < d; ++r) {
    if (std::abs(c(r, r)) > 1e-16) bt.terms.push_back({r, r, c(r, r)});
    for (int cc = r + 1; cc < d; ++cc)
      if (std::abs(c(r, cc)) > 1e-16) bt.terms.push_back({r, cc, c(r, cc)});
  }
  if (!bt.terms.empty()) p.objective.push_back(std::move(bt));
}

}  // namespace rescap::sdp
