#pragma once

#include <optional>
#include <vector>

#include "rescap/kernel.hpp"

namespace rescap::sdp {

// Standard-form dense semidefinite program over complex Hermitian blocks:
//
//   minimize    sum_b tr(C_b X_b)
//   subject to  sum_b tr(A_{i,b} X_b) = rhs_i,   X_b >= 0.
//
// Matrices are stored as Hermitian-closure triplets: a triplet (r, c, v)
// with r != c stands for v e_rc + conj(v) e_cr; with r == c it stands for
// Re(v) e_rr.
struct HermTriplet {
  int r = 0, c = 0;
  Complex v;
};

struct BlockTerm {
  int block = 0;
  std::vector<HermTriplet> terms;
};

struct Constraint {
  std::vector<BlockTerm> lhs;
  double rhs = 0.0;
};

struct Problem {
  std::vector<int> block_dims;
  std::vector<Constraint> constraints;
  std::vector<BlockTerm> objective;
  int max_iter = 200;
  double gap_tol = 1e-7;
  double feas_tol = 1e-8;
  bool verbose = false;
  // optional strictly feasible warm start (one matrix per block)
  std::optional<std::vector<Mat>> init_x;

  int add_block(int dim) {
    block_dims.push_back(dim);
    return static_cast<int>(block_dims.size()) - 1;
  }
};

enum class Status { Optimal, MaxIterations, Infeasible, Unbounded, NumericalFailure };

struct Solution {
  Status status = Status::NumericalFailure;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;        // |primal - dual| / (1 + |primal| + |dual|)
  double primal_res = 0.0;
  double dual_res = 0.0;
  std::vector<Mat> x;      // primal blocks
  std::vector<Mat> s;      // dual slack blocks
  std::vector<double> y;   // dual multipliers (certificate)
  bool ok() const { return status == Status::Optimal; }
};

Solution solve(const Problem& p);

// --- constraint building helpers ---------------------------------------

// One raw (non-Hermitian) entry G += v e_{r,c} of a complex linear
// functional tr(X G) on a block.
struct RawEntry {
  int block = 0;
  int r = 0, c = 0;
  Complex v;
};

// Adds the complex equation  sum_k v_k X_{block_k}(r_k, c_k) = rhs  as one
// or two real constraints (Hermitian and anti-Hermitian parts).
void add_complex_eq(Problem& p, const std::vector<RawEntry>& entries, Complex rhs);

// Entrywise equality of a Hermitian-valued block expression
// sum_k coeff_k X_{block_k} = rhs (all square, equal dims). Upper-triangle
// enumeration, no redundant rows.
void add_matrix_eq(Problem& p, const std::vector<std::pair<int, Complex>>& blocks,
                   const Mat& rhs);

// Objective contribution tr(C X_block) for Hermitian C.
void add_objective(Problem& p, int block, const Mat& c);

}  // namespace rescap::sdp
