#pragma once

#include <functional>
#include <vector>

#include "rescap/quantum.hpp"
#include "rescap/report.hpp"
#include "rescap/rng.hpp"

namespace rescap {

// A linear map between operator spaces stored as an unnormalized Choi
// matrix J(E) = sum_ij E(|i><j|) (x) |i><j| with the output factor first:
// J[(a,i),(b,j)] = E(|i><j|)[a,b].
struct ChannelChoi {
  int d_in = 0;
  int d_out = 0;
  Mat choi;

  int choi_dim() const { return d_out * d_in; }
  void validate() const;  // complete positivity + trace preservation
};

// Linear action on an arbitrary input operator.
Mat apply_op(const ChannelChoi& e, const Mat& x);
DensityMatrix apply(const ChannelChoi& e, const DensityMatrix& rho);
// Adjoint (Heisenberg) action on an effect: tr(E N(rho)) = tr(N^t(E) rho).
Mat apply_adjoint(const ChannelChoi& e, const Mat& effect);

// Builds the Choi matrix of a linear map given its action.
ChannelChoi channel_from_action(int d_in, int d_out,
                                const std::function<Mat(const Mat&)>& action);

ChannelChoi compose(const ChannelChoi& f, const ChannelChoi& e);  // f after e
ChannelChoi tensor(const ChannelChoi& e, const ChannelChoi& f);
ChannelChoi mix(const std::vector<std::pair<double, ChannelChoi>>& parts);

ChannelChoi identity_channel(int d);
ChannelChoi unitary_channel(const Mat& u);
ChannelChoi dephasing(int d);
ChannelChoi dephasing_in_basis(const Mat& basis);
ChannelChoi depolarizing(int d, double p);
ChannelChoi constant_channel(const Mat& sigma, int d_in = 0);

// Haar-random CPTP map via the Ginibre construction.
ChannelChoi random_channel(Rng& rng, int d_in, int d_out, int kraus_rank = 0);

struct UnitaryGroup {
  std::vector<Mat> elements;

  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
  int order() const { return static_cast<int>(elements.size()); }
  // closure under products and inverses, up to global phase
  bool verify_closure(double tol = 1e-8) const;

  static UnitaryGroup trivial(int d);
  static UnitaryGroup pauli_z();
  static UnitaryGroup phase_group(int order);  // qubit diag(1, e^{2 pi i k/order})
  static UnitaryGroup weyl(int d);             // projective clock-and-shift group
};

// Group average (1/|G|) sum_g U_g (.) U_g^t as a channel.
ChannelChoi twirl_group(const UnitaryGroup& g);

// Analytic (U (x) U*) twirl on a d x d bipartite space: the projection onto
// span{Phi+, I}. Exact, no Haar sampling.
ChannelChoi twirl_uu_star(int d);
// Its action on an arbitrary operator, usable without building the Choi.
Mat twirl_uu_star_op(int d, const Mat& y);

double choi_trace_distance(const ChannelChoi& e, const ChannelChoi& f);

enum class DiamondMode { Exact, Bracket };

struct DiamondReport {
  BoundReport lower;
  BoundReport upper;
  bool exact = false;
};

// Diamond-norm distance ||E - F||_diamond. Exact mode solves the SDP;
// bracket mode returns [||J(E)-J(F)||_1 / d_in, ||J(E)-J(F)||_1].
DiamondReport diamond_distance(const ChannelChoi& e, const ChannelChoi& f,
                               DiamondMode mode = DiamondMode::Bracket);

}  // namespace rescap
