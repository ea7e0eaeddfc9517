#include "rescap/kernel.hpp"

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace rescap {

Tolerances& tols() {
  static Tolerances t;
  return t;
}

bool Tolerances::set(const std::string& name, double value) {
  bool found = false;
  get(name, &found);
  if (!found) return false;
  if (name == "hermitian") hermitian = value;
  else if (name == "psd") psd = value;
  else if (name == "trace_one") trace_one = value;
  else if (name == "eig_recon") eig_recon = value;
  else if (name == "support_rel") support_rel = value;
  else if (name == "choi_tp") choi_tp = value;
  else if (name == "povm_sum") povm_sum = value;
  else if (name == "free_op") free_op = value;
  else if (name == "sdp_gap") sdp_gap = value;
  else if (name == "energy_rel") energy_rel = value;
  else if (name == "omega_bisect") omega_bisect = value;
  return true;
}

double Tolerances::get(const std::string& name, bool* found) const {
  if (found) *found = true;
  if (name == "hermitian") return hermitian;
  if (name == "psd") return psd;
  if (name == "trace_one") return trace_one;
  if (name == "eig_recon") return eig_recon;
  if (name == "support_rel") return support_rel;
  if (name == "choi_tp") return choi_tp;
  if (name == "povm_sum") return povm_sum;
  if (name == "free_op") return free_op;
  if (name == "sdp_gap") return sdp_gap;
  if (name == "energy_rel") return energy_rel;
  if (name == "omega_bisect") return omega_bisect;
  if (found) *found = false;
  return 0.0;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat kron(const Mat& a, const Mat& b, const Mat& c) { return kron(kron(a, b), c); }

Ket kron(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

int dim_product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

Mat partial_trace(const Mat& a, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  if (a.rows() != a.cols()) throw std::invalid_argument("partial_trace: matrix not square");
  if (a.rows() != dim_product(dims))
    throw std::invalid_argument("partial_trace: dims do not match matrix dimension");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = true;
  }

  std::vector<int> kdims, tdims, kpos, tpos;
  for (int i = 0; i < n; ++i) {
    if (kept[i]) { kdims.push_back(dims[i]); kpos.push_back(i); }
    else { tdims.push_back(dims[i]); tpos.push_back(i); }
  }
  const int dk = dim_product(kdims);
  const int dt = dim_product(tdims);

  // strides of each factor in the row-major composite index
  std::vector<int> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  auto full_index = [&](int kidx, int tidx) {
    int idx = 0;
    for (int i = static_cast<int>(kpos.size()) - 1; i >= 0; --i) {
      idx += (kidx % kdims[i]) * stride[kpos[i]];
      kidx /= kdims[i];
    }
    for (int i = static_cast<int>(tpos.size()) - 1; i >= 0; --i) {
      idx += (tidx % tdims[i]) * stride[tpos[i]];
      tidx /= tdims[i];
    }
    return idx;
  };

  Mat out = Mat::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c)
      for (int t = 0; t < dt; ++t)
        out(r, c) += a(full_index(r, t), full_index(c, t));
  return out;
}

bool is_hermitian(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermEig herm_eig(const Mat& a) {
  if (!is_hermitian(a, tols().hermitian * std::max(1.0, a.cwiseAbs().maxCoeff())))
    throw std::invalid_argument("herm_eig: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es((a + a.adjoint()) / 2.0);
  if (es.info() != Eigen::Success) throw std::runtime_error("herm_eig: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

// Shared spectral-function core with the relative support cutoff.
Mat psd_spectral(const Mat& a, bool invert, bool* rank_out = nullptr) {
  HermEig e = herm_eig(a);
  const double lmax = e.values.size() ? std::max(0.0, e.values.maxCoeff()) : 0.0;
  if (e.values.size() && e.values.minCoeff() < -tols().psd * std::max(1.0, lmax))
    throw std::invalid_argument("psd spectral function: negative eigenvalue beyond tolerance");
  const double cutoff = tols().support_rel * std::max(lmax, 1e-300);
  RVec f(e.values.size());
  int rank = 0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) <= cutoff) { f(i) = 0.0; continue; }
    ++rank;
    f(i) = invert ? 1.0 / std::sqrt(e.values(i)) : std::sqrt(e.values(i));
  }
  if (rank_out) *rank_out = rank;
  return e.vectors * f.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

Mat psd_sqrt(const Mat& a) { return psd_spectral(a, false); }
Mat psd_pinv_sqrt(const Mat& a) { return psd_spectral(a, true); }

Mat support_projector(const Mat& a) {
  Mat s = psd_pinv_sqrt(a);
  return s * a * s;
}

double trace_norm(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("trace_norm: matrix not square");
  return a.jacobiSvd().singularValues().sum();
}

double op_norm(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("op_norm: matrix not square");
  if (a.rows() == 0) return 0.0;
  return a.jacobiSvd().singularValues()(0);
}

Mat expm(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix not square");
  const double nrm = a.cwiseAbs().sum();
  if (!std::isfinite(nrm) || nrm > 1e4)
    throw std::invalid_argument("expm: norm too large, refusing to exponentiate");
  return a.exp();
}

Mat identity(int d) { return Mat::Identity(d, d); }

std::pair<double, Ket> top_eig(const Mat& hermitian) {
  HermEig e = herm_eig(hermitian);
  const Eigen::Index last = e.values.size() - 1;
  return {e.values(last), e.vectors.col(last)};
}

RVec hvec(const Mat& x) {
  const int d = static_cast<int>(x.rows());
  RVec v(d * d);
  int k = 0;
  const double s = std::sqrt(2.0);
  for (int i = 0; i < d; ++i) v(k++) = x(i, i).real();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      v(k++) = s * x(i, j).real();
      v(k++) = s * x(i, j).imag();
    }
  return v;
}

Mat unhvec(const RVec& v, int d) {
  Mat x(d, d);
  int k = 0;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) x(i, i) = v(k++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = s * v(k++);
      const double im = s * v(k++);
      x(i, j) = Complex(re, im);
      x(j, i) = Complex(re, -im);
    }
  return x;
}

}  // namespace rescap
