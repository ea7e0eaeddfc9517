#pragma once

#include <string>

namespace rescap {

// Central numeric tolerance record. Every module reads its defaults from
// here; the CLI can override individual entries by name (--tol name=value).
struct Tolerances {
  double hermitian = 1e-10;    // max |A_ij - conj(A_ji)|
  double psd = 1e-9;           // eigenvalue floor for positivity checks
  double trace_one = 1e-10;    // |tr(rho) - 1|
  double eig_recon = 1e-9;     // eigendecomposition reconstruction error
  double support_rel = 1e-10;  // pseudo-inverse support cutoff, relative to lambda_max
  double choi_tp = 1e-9;       // trace preservation of a Choi matrix
  double povm_sum = 1e-9;      // POVM completeness
  double free_op = 1e-8;       // free-operation predicate tolerance
  double sdp_gap = 1e-6;       // SDP duality gap target
  double energy_rel = 1e-9;    // relative distinctness of energy sums
  double omega_bisect = 1e-9;  // bisection tolerance on the spectral parameter

  // Named lookup used by the CLI. Returns false for unknown names.
  bool set(const std::string& name, double value);
  double get(const std::string& name, bool* found = nullptr) const;
};

Tolerances& tols();

}  // namespace rescap
