#include "rescap/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "rescap/sdp.hpp"

namespace rescap {

void ChannelChoi::validate() const {
  if (d_in <= 0 || d_out <= 0 || choi.rows() != choi_dim() || choi.cols() != choi_dim())
    throw std::invalid_argument("channel: bad dimensions");
  const double scale = std::max(1.0, choi.cwiseAbs().maxCoeff());
  if (!is_hermitian(choi, tols().hermitian * 10 * scale))
    throw std::invalid_argument("channel: Choi not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(choi, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tols().psd * scale)
    throw std::invalid_argument("channel: Choi not PSD (not completely positive)");
  Mat ptr = partial_trace(choi, {d_out, d_in}, {1});
  if (op_norm(ptr - identity(d_in)) > tols().choi_tp)
    throw std::invalid_argument("channel: not trace preserving");
}

Mat apply_op(const ChannelChoi& e, const Mat& x) {
  if (x.rows() != e.d_in || x.cols() != e.d_in)
    throw std::invalid_argument("apply: input dimension mismatch");
  Mat out = Mat::Zero(e.d_out, e.d_out);
  for (int a = 0; a < e.d_out; ++a)
    for (int b = 0; b < e.d_out; ++b) {
      Complex acc = 0;
      for (int i = 0; i < e.d_in; ++i)
        for (int k = 0; k < e.d_in; ++k)
          acc += e.choi(a * e.d_in + i, b * e.d_in + k) * x(i, k);
      out(a, b) = acc;
    }
  return out;
}

DensityMatrix apply(const ChannelChoi& e, const DensityMatrix& rho) {
  Mat out = apply_op(e, rho.mat);
  return make_state((out + out.adjoint()) / 2.0);
}

Mat apply_adjoint(const ChannelChoi& e, const Mat& effect) {
  if (effect.rows() != e.d_out || effect.cols() != e.d_out)
    throw std::invalid_argument("apply_adjoint: effect dimension mismatch");
  Mat out = Mat::Zero(e.d_in, e.d_in);
  for (int i = 0; i < e.d_in; ++i)
    for (int k = 0; k < e.d_in; ++k) {
      Complex acc = 0;
      for (int a = 0; a < e.d_out; ++a)
        for (int b = 0; b < e.d_out; ++b)
          acc += e.choi(a * e.d_in + i, b * e.d_in + k) * std::conj(effect(a, b));
      out(i, k) = std::conj(acc);
    }
  return out;
}

ChannelChoi channel_from_action(int d_in, int d_out,
                                const std::function<Mat(const Mat&)>& action) {
  ChannelChoi e;
  e.d_in = d_in;
  e.d_out = d_out;
  e.choi = Mat::Zero(d_out * d_in, d_out * d_in);
  Mat basis = Mat::Zero(d_in, d_in);
  for (int i = 0; i < d_in; ++i)
    for (int j = 0; j < d_in; ++j) {
      basis(i, j) = 1;
      Mat img = action(basis);
      basis(i, j) = 0;
      for (int a = 0; a < d_out; ++a)
        for (int b = 0; b < d_out; ++b) e.choi(a * d_in + i, b * d_in + j) = img(a, b);
    }
  return e;
}

ChannelChoi compose(const ChannelChoi& f, const ChannelChoi& e) {
  if (f.d_in != e.d_out) throw std::invalid_argument("compose: inner dimension mismatch");
  return channel_from_action(e.d_in, f.d_out,
                             [&](const Mat& x) { return apply_op(f, apply_op(e, x)); });
}

ChannelChoi tensor(const ChannelChoi& e, const ChannelChoi& f) {
  ChannelChoi g;
  g.d_in = e.d_in * f.d_in;
  g.d_out = e.d_out * f.d_out;
  g.choi = Mat::Zero(g.choi_dim(), g.choi_dim());
  for (int a1 = 0; a1 < e.d_out; ++a1)
    for (int a2 = 0; a2 < f.d_out; ++a2)
      for (int i1 = 0; i1 < e.d_in; ++i1)
        for (int i2 = 0; i2 < f.d_in; ++i2) {
          const int row = (a1 * f.d_out + a2) * g.d_in + (i1 * f.d_in + i2);
          for (int b1 = 0; b1 < e.d_out; ++b1)
            for (int b2 = 0; b2 < f.d_out; ++b2)
              for (int j1 = 0; j1 < e.d_in; ++j1)
                for (int j2 = 0; j2 < f.d_in; ++j2) {
                  const int col = (b1 * f.d_out + b2) * g.d_in + (j1 * f.d_in + j2);
                  g.choi(row, col) = e.choi(a1 * e.d_in + i1, b1 * e.d_in + j1) *
                                     f.choi(a2 * f.d_in + i2, b2 * f.d_in + j2);
                }
        }
  return g;
}

ChannelChoi mix(const std::vector<std::pair<double, ChannelChoi>>& parts) {
  if (parts.empty()) throw std::invalid_argument("mix: empty");
  ChannelChoi out = parts[0].second;
  out.choi *= parts[0].first;
  for (size_t k = 1; k < parts.size(); ++k) {
    if (parts[k].second.d_in != out.d_in || parts[k].second.d_out != out.d_out)
      throw std::invalid_argument("mix: dimension mismatch");
    out.choi += parts[k].first * parts[k].second.choi;
  }
  return out;
}

ChannelChoi identity_channel(int d) {
  Ket omega = std::sqrt(static_cast<double>(d)) * max_entangled_ket(d);
  ChannelChoi e;
  e.d_in = e.d_out = d;
  e.choi = omega * omega.adjoint();
  return e;
}

ChannelChoi unitary_channel(const Mat& u) {
  const int d = static_cast<int>(u.rows());
  return channel_from_action(d, d, [&](const Mat& x) { return Mat(u * x * u.adjoint()); });
}

ChannelChoi dephasing(int d) {
  return channel_from_action(d, d, [&](const Mat& x) {
    Mat out = Mat::Zero(d, d);
    out.diagonal() = x.diagonal();
    return out;
  });
}

ChannelChoi dephasing_in_basis(const Mat& basis) {
  const int d = static_cast<int>(basis.rows());
  return channel_from_action(d, d, [&](const Mat& x) {
    Mat y = basis.adjoint() * x * basis;
    Mat out = Mat::Zero(d, d);
    out.diagonal() = y.diagonal();
    return Mat(basis * out * basis.adjoint());
  });
}

ChannelChoi depolarizing(int d, double p) {
  if (p < 0 || p > 1) throw std::invalid_argument("depolarizing: p outside [0,1]");
  return channel_from_action(d, d, [&](const Mat& x) {
    return Mat((1.0 - p) * x + p * x.trace() * identity(d) / static_cast<double>(d));
  });
}

ChannelChoi constant_channel(const Mat& sigma, int d_in) {
  const int d_out = static_cast<int>(sigma.rows());
  if (d_in <= 0) d_in = d_out;
  return channel_from_action(d_in, d_out,
                             [&](const Mat& x) { return Mat(x.trace() * sigma); });
}

ChannelChoi random_channel(Rng& rng, int d_in, int d_out, int kraus_rank) {
  if (kraus_rank <= 0) kraus_rank = d_in * d_out;
  const int dd = d_in * d_out;
  Mat g = rng.ginibre(dd, kraus_rank);
  Mat raw = g * g.adjoint();
  Mat r = partial_trace(raw, {d_out, d_in}, {1});
  Mat a = psd_pinv_sqrt(r);
  Mat lift = kron(identity(d_out), a);
  ChannelChoi e;
  e.d_in = d_in;
  e.d_out = d_out;
  e.choi = lift * raw * lift.adjoint();
  e.choi = (e.choi + e.choi.adjoint()) / 2.0;
  return e;
}

bool UnitaryGroup::verify_closure(double tol) const {
  const int d = dim();
  auto find_member = [&](const Mat& u) {
    for (const auto& k : elements) {
      Complex ph = (k.adjoint() * u).trace() / static_cast<double>(d);
      if (std::abs(ph) < 1e-12) continue;
      ph /= std::abs(ph);
      if (op_norm(u - ph * k) <= tol) return true;
    }
    return false;
  };
  for (const auto& g : elements) {
    if (op_norm(g.adjoint() * g - identity(d)) > tol) return false;
    if (!find_member(g.adjoint())) return false;
    for (const auto& h : elements)
      if (!find_member(g * h)) return false;
  }
  return true;
}

UnitaryGroup UnitaryGroup::trivial(int d) { return UnitaryGroup{{identity(d)}}; }

UnitaryGroup UnitaryGroup::pauli_z() {
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  return UnitaryGroup{{identity(2), z}};
}

UnitaryGroup UnitaryGroup::phase_group(int order) {
  if (order < 1) throw std::invalid_argument("phase_group: order must be positive");
  UnitaryGroup g;
  const double twopi = 6.283185307179586476925286766559;
  for (int k = 0; k < order; ++k) {
    Mat u = identity(2);
    u(1, 1) = std::polar(1.0, twopi * k / order);
    g.elements.push_back(u);
  }
  return g;
}

UnitaryGroup UnitaryGroup::weyl(int d) { return UnitaryGroup{weyl_unitaries(d)}; }

ChannelChoi twirl_group(const UnitaryGroup& g) {
  if (g.elements.empty()) throw std::invalid_argument("twirl_group: empty group");
  if (!g.verify_closure()) throw std::invalid_argument("twirl_group: element list not closed");
  const int d = g.dim();
  const double w = 1.0 / g.order();
  return channel_from_action(d, d, [&](const Mat& x) {
    Mat out = Mat::Zero(d, d);
    for (const auto& u : g.elements) out += u * x * u.adjoint();
    return Mat(w * out);
  });
}

Mat twirl_uu_star_op(int d, const Mat& y) {
  const int dd = d * d;
  if (y.rows() != dd || y.cols() != dd)
    throw std::invalid_argument("twirl: operator dimension mismatch");
  Ket phi = max_entangled_ket(d);
  const Complex overlap = phi.adjoint() * y * phi;
  const Complex rest = y.trace() - overlap;
  Mat proj = phi * phi.adjoint();
  return overlap * proj + rest / static_cast<double>(dd - 1) * (identity(dd) - proj);
}

ChannelChoi twirl_uu_star(int d) {
  return channel_from_action(d * d, d * d,
                             [&](const Mat& x) { return twirl_uu_star_op(d, x); });
}

double choi_trace_distance(const ChannelChoi& e, const ChannelChoi& f) {
  if (e.d_in != f.d_in || e.d_out != f.d_out)
    throw std::invalid_argument("choi distance: dimension mismatch");
  return trace_norm(e.choi - f.choi);
}

DiamondReport diamond_distance(const ChannelChoi& e, const ChannelChoi& f, DiamondMode mode) {
  if (e.d_in != f.d_in || e.d_out != f.d_out)
    throw std::invalid_argument("diamond: dimension mismatch");
  const double tn = choi_trace_distance(e, f);
  DiamondReport rep;
  rep.lower = make_report("diamond_lower", tn / e.d_in, BoundKind::Lower, "choi-bracket", 1e-12);
  rep.upper = make_report("diamond_upper", tn, BoundKind::Upper, "choi-bracket", 1e-12);
  if (mode == DiamondMode::Bracket) return rep;

  const int dd = e.choi_dim();
  if (dd > 36)
    throw std::invalid_argument("diamond exact: dimension beyond SDP guard");

  // max 2 tr(J W) s.t. 0 <= W <= I_out (x) rho, rho a state on the input
  Mat j = e.choi - f.choi;
  sdp::Problem p;
  p.gap_tol = tols().sdp_gap / 10.0;
  const int bw = p.add_block(dd);
  const int bv = p.add_block(dd);
  const int br = p.add_block(e.d_in);
  for (int r = 0; r < dd; ++r) {
    for (int c = r; c < dd; ++c) {
      std::vector<sdp::RawEntry> entries = {{bw, r, c, 1.0}, {bv, r, c, 1.0}};
      const int ar = r / e.d_in, ir = r % e.d_in;
      const int ac = c / e.d_in, ic = c % e.d_in;
      if (ar == ac) entries.push_back({br, ir, ic, -1.0});
      sdp::add_complex_eq(p, entries, 0.0);
    }
  }
  std::vector<sdp::RawEntry> tr_rho;
  for (int i = 0; i < e.d_in; ++i) tr_rho.push_back({br, i, i, 1.0});
  sdp::add_complex_eq(p, tr_rho, 1.0);
  sdp::add_objective(p, bw, -2.0 * j);

  auto sol = sdp::solve(p);
  if (!sol.ok()) {
    rep.lower.method = "sdp-failed;choi-bracket";
    rep.upper.method = "sdp-failed;choi-bracket";
    return rep;
  }
  const double val = -sol.primal_value;
  rep.exact = true;
  rep.lower = make_report("diamond", val, BoundKind::Exact, "sdp", sol.gap);
  rep.upper = rep.lower;
  return rep;
}

}  // namespace rescap
