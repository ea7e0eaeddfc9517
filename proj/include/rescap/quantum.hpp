#pragma once

#include <optional>
#include <vector>

#include "rescap/kernel.hpp"

namespace rescap {

// Positive unit-trace operator on a tensor-factored space.
struct DensityMatrix {
  std::vector<int> dims;
  Mat mat;

  int dim() const { return static_cast<int>(mat.rows()); }
  void validate() const;  // throws when the state invariants fail
};

DensityMatrix make_state(Mat m, std::vector<int> dims = {});
DensityMatrix pure_state(const Ket& psi, std::vector<int> dims = {});

struct Hamiltonian {
  RVec energies;
  Mat eigenbasis;  // columns; identity for a diagonal Hamiltonian

  int dim() const { return static_cast<int>(energies.size()); }
  Mat matrix() const { return eigenbasis * energies.asDiagonal() * eigenbasis.adjoint(); }
  static Hamiltonian diagonal(RVec e);
  void validate() const;
};

struct ThermalContext {
  Hamiltonian h;
  double beta = 0.0;
  DensityMatrix gamma;
  double p_min = 0.0;

  // gamma^{(x) k}
  DensityMatrix gamma_power(int k) const;
};

// gamma = exp(-beta H) / Z
ThermalContext thermal_state(const Hamiltonian& h, double beta);

struct Povm {
  std::vector<Mat> elements;

  int size() const { return static_cast<int>(elements.size()); }
  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
  void validate() const;
};

// |Phi+> = sum_i |ii>/sqrt(d) on C^d (x) C^d and its local-unitary orbit.
Ket max_entangled_ket(int d);
DensityMatrix max_entangled(int d);
DensityMatrix max_entangled_from_unitary(const Mat& u);

// Clock-and-shift unitaries X^a Z^b, index a*d + b; the last one is X^{d-1}Z^{d-1}.
std::vector<Mat> weyl_unitaries(int d);
// d^2 orthonormal maximally entangled states (W_ab (x) I)|Phi+>.
std::vector<DensityMatrix> weyl_basis(int d);

// Square-root measurement E_m = S sigma_m S, S = (sum sigma_m)^{-1/2} on the
// support, with the identity completion folded into element 0.
Povm pretty_good_measurement(const std::vector<DensityMatrix>& states);

struct EnergySubspaceResult {
  bool ok = true;
  // first violating multiplicity vectors when !ok
  std::vector<int> m1, m2;
  int total = 0;  // composition count examined
};

// Distinctness of all energy sums over compositions of every M <= m_max.
EnergySubspaceResult check_energy_subspace_condition(const Hamiltonian& h, int m_max);

}  // namespace rescap
