#include "rescap/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rescap {

void DensityMatrix::validate() const {
  if (mat.rows() != mat.cols()) throw std::invalid_argument("state: matrix not square");
  if (!dims.empty() && dim_product(dims) != mat.rows())
    throw std::invalid_argument("state: factor dims do not match matrix dimension");
  if (!is_hermitian(mat, tols().hermitian))
    throw std::invalid_argument("state: not Hermitian");
  if (std::abs(mat.trace().real() - 1.0) > tols().trace_one)
    throw std::invalid_argument("state: trace not 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tols().psd)
    throw std::invalid_argument("state: negative eigenvalue");
}

DensityMatrix make_state(Mat m, std::vector<int> dims) {
  if (dims.empty()) dims = {static_cast<int>(m.rows())};
  DensityMatrix rho{std::move(dims), std::move(m)};
  rho.validate();
  return rho;
}

DensityMatrix pure_state(const Ket& psi, std::vector<int> dims) {
  Ket v = psi.normalized();
  return make_state(v * v.adjoint(), std::move(dims));
}

Hamiltonian Hamiltonian::diagonal(RVec e) {
  Hamiltonian h;
  h.eigenbasis = Mat::Identity(e.size(), e.size());
  h.energies = std::move(e);
  return h;
}

void Hamiltonian::validate() const {
  if (!energies.allFinite()) throw std::invalid_argument("hamiltonian: non-finite energy");
  if (eigenbasis.rows() != energies.size() || eigenbasis.cols() != energies.size())
    throw std::invalid_argument("hamiltonian: basis dimension mismatch");
  if (op_norm(eigenbasis.adjoint() * eigenbasis - identity(dim())) > tols().eig_recon)
    throw std::invalid_argument("hamiltonian: basis not unitary");
}

ThermalContext thermal_state(const Hamiltonian& h, double beta) {
  h.validate();
  if (beta < 0) throw std::invalid_argument("thermal_state: beta must be nonnegative");
  const int d = h.dim();
  // weights relative to the ground state for stability
  const double e0 = h.energies.minCoeff();
  RVec w(d);
  for (int i = 0; i < d; ++i) w(i) = std::exp(-beta * (h.energies(i) - e0));
  const double z = w.sum();
  w /= z;
  Mat g = h.eigenbasis * w.asDiagonal() * h.eigenbasis.adjoint();
  ThermalContext ctx;
  ctx.h = h;
  ctx.beta = beta;
  ctx.gamma = make_state((g + g.adjoint()) / 2.0);
  ctx.p_min = w.minCoeff();
  return ctx;
}

DensityMatrix ThermalContext::gamma_power(int k) const {
  if (k < 1) throw std::invalid_argument("gamma_power: k must be positive");
  Mat out = gamma.mat;
  for (int i = 1; i < k; ++i) out = kron(out, gamma.mat);
  std::vector<int> dims(k, gamma.dim());
  return DensityMatrix{dims, out};
}

void Povm::validate() const {
  if (elements.empty()) throw std::invalid_argument("povm: empty");
  const int d = dim();
  Mat sum = Mat::Zero(d, d);
  for (const auto& e : elements) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("povm: dimension mismatch");
    if (!is_hermitian(e, tols().hermitian * 10))
      throw std::invalid_argument("povm: element not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tols().psd)
      throw std::invalid_argument("povm: element not PSD");
    sum += e;
  }
  if (op_norm(sum - identity(d)) > tols().povm_sum)
    throw std::invalid_argument("povm: elements do not sum to identity");
}

Ket max_entangled_ket(int d) {
  Ket v = Ket::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) v(i * d + i) = a;
  return v;
}

DensityMatrix max_entangled(int d) {
  return pure_state(max_entangled_ket(d), {d, d});
}

DensityMatrix max_entangled_from_unitary(const Mat& u) {
  const int d = static_cast<int>(u.rows());
  if (op_norm(u.adjoint() * u - identity(d)) > tols().eig_recon)
    throw std::invalid_argument("max_entangled_from_unitary: input not unitary");
  Ket v = kron(u, identity(d)) * max_entangled_ket(d);
  return pure_state(v, {d, d});
}

std::vector<Mat> weyl_unitaries(int d) {
  if (d < 2) throw std::invalid_argument("weyl_unitaries: d must be >= 2");
  Mat shift = Mat::Zero(d, d);  // X|j> = |j+1 mod d>
  for (int j = 0; j < d; ++j) shift((j + 1) % d, j) = 1;
  Mat clock = Mat::Zero(d, d);  // Z|j> = w^j |j>
  const double twopi = 6.283185307179586476925286766559;
  for (int j = 0; j < d; ++j) clock(j, j) = std::polar(1.0, twopi * j / d);
  std::vector<Mat> ws;
  ws.reserve(d * d);
  Mat xa = identity(d);
  for (int a = 0; a < d; ++a) {
    Mat w = xa;
    for (int b = 0; b < d; ++b) {
      ws.push_back(w);
      w = w * clock;
    }
    xa = shift * xa;
  }
  return ws;
}

std::vector<DensityMatrix> weyl_basis(int d) {
  std::vector<DensityMatrix> states;
  states.reserve(d * d);
  for (const Mat& w : weyl_unitaries(d)) states.push_back(max_entangled_from_unitary(w));
  return states;
}

Povm pretty_good_measurement(const std::vector<DensityMatrix>& states) {
  if (states.empty()) throw std::invalid_argument("pgm: empty state list");
  const int d = states[0].dim();
  Mat total = Mat::Zero(d, d);
  for (const auto& s : states) {
    if (s.dim() != d) throw std::invalid_argument("pgm: dimension mismatch");
    total += s.mat;
  }
  Mat s = psd_pinv_sqrt(total);
  Povm povm;
  povm.elements.reserve(states.size());
  Mat sum = Mat::Zero(d, d);
  for (const auto& st : states) {
    Mat e = s * st.mat * s;
    e = (e + e.adjoint()) / 2.0;
    povm.elements.push_back(e);
    sum += e;
  }
  povm.elements[0] += identity(d) - sum;  // identity completion on element 0
  povm.validate();
  return povm;
}

namespace {

// next composition of M into d nonnegative parts, lexicographic; returns
// false after the last one
bool next_composition(std::vector<int>& m, int total) {
  const int d = static_cast<int>(m.size());
  for (int i = d - 2; i >= 0; --i) {
    if (m[i] > 0) {
      --m[i];
      int rest = total;
      for (int j = 0; j <= i; ++j) rest -= m[j];
      for (int j = i + 1; j < d; ++j) m[j] = 0;
      m[i + 1] = rest;
      return true;
    }
  }
  return false;
}

double comp_count(int total, int parts) {
  // C(total + parts - 1, parts - 1)
  double c = 1.0;
  for (int i = 1; i <= parts - 1; ++i) c = c * (total + i) / i;
  return c;
}

}  // namespace

EnergySubspaceResult check_energy_subspace_condition(const Hamiltonian& h, int m_max) {
  if (m_max < 1) throw std::invalid_argument("energy subspace: m_max must be >= 1");
  const int d = h.dim();
  double total_count = 0;
  for (int mm = 1; mm <= m_max; ++mm) total_count += comp_count(mm, d);
  if (total_count > 1e7)
    throw std::invalid_argument("energy subspace: composition count beyond guard");

  EnergySubspaceResult res;
  const double scale = std::max(1.0, h.energies.cwiseAbs().maxCoeff());
  for (int mm = 1; mm <= m_max; ++mm) {
    std::vector<std::pair<double, std::vector<int>>> sums;
    std::vector<int> comp(d, 0);
    comp[0] = mm;
    do {
      double e = 0.0;
      for (int i = 0; i < d; ++i) e += comp[i] * h.energies(i);
      sums.emplace_back(e, comp);
      ++res.total;
    } while (next_composition(comp, mm));
    std::sort(sums.begin(), sums.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i + 1 < sums.size(); ++i) {
      if (std::abs(sums[i].first - sums[i + 1].first) <= tols().energy_rel * scale * mm) {
        res.ok = false;
        res.m1 = sums[i].second;
        res.m2 = sums[i + 1].second;
        return res;
      }
    }
  }
  return res;
}

}  // namespace rescap
