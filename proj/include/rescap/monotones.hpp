#pragma once

#include <limits>
#include <vector>

#include "rescap/resources.hpp"

namespace rescap {

struct CodeBook;  // capacity module

// Max-relative entropy log2 inf{lambda : rho <= lambda sigma}; +infinity
// when the support of rho leaks outside the support of sigma.
double dmax(const DensityMatrix& rho, const DensityMatrix& sigma);
double dmax_ops(const Mat& rho, const Mat& sigma);

// Certified upper bound via complete-positivity dominance:
// log2 lambda_max(J(f)^{-1/2} J(n) J(f)^{-1/2}) on the support of J(f).
BoundReport channel_dmax_cp_upper(const ChannelChoi& n, const ChannelChoi& f);

// Certified lower bound from trivial-ancilla input search.
BoundReport channel_dmax_input_lower(const ChannelChoi& n, const ChannelChoi& f,
                                     int restarts = 8, uint64_t seed = 1);

// Optimal discrimination of weighted states: maximize sum_m w_m tr(E_m s_m)
// over POVMs. Uniform weights 1/M give the best average success.
struct DiscriminationResult {
  Povm povm;
  double value = 0.0;
  bool optimal = false;  // false when the PGM fallback was used
};
DiscriminationResult optimal_discrimination(const std::vector<Mat>& states,
                                            const std::vector<double>& weights);

struct PreservabilityOptions {
  int restarts = 6;
  uint64_t seed = 1;
  int extra_probes = 2;  // random probes added to the canonical set
  bool want_argmin = true;
};

struct PreservabilityBracket {
  BoundReport lower;
  BoundReport upper;
  // annihilating channel achieving the upper bound (when available)
  std::optional<ChannelChoi> argmin;
};

// Bracket on the distance-to-annihilating monotone for the given resource.
// Athermality uses the closed forms against the constant thermal channel;
// coherence and asymmetry solve SDPs over the annihilating family.
PreservabilityBracket preservability_bracket(const ResourceSpec& spec, const ChannelChoi& n,
                                             const PreservabilityOptions& opts = {});

// Upper bound minimized over the mixing family (1-t) n + t proj(n) with t
// constrained so the diamond bracket certifies closeness 2*delta.
BoundReport smoothed_preservability_upper(const ResourceSpec& spec, const ChannelChoi& n,
                                          double delta, int family_size = 5,
                                          uint64_t seed = 1);

// Information spectrum relative entropy: sup of omega with
// tr(rho Pi_{rho <= 2^omega sigma}) <= delta, base 2, range [-64, 64].
// Returns -infinity when no feasible omega exists on the range.
double info_spectrum_re(const DensityMatrix& rho, const DensityMatrix& sigma, double delta);
double info_spectrum_re_ops(const Mat& rho, const Mat& sigma, double delta);

constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();

struct GammaOptions {
  int restarts = 2;
  int iters = 14;
  int max_messages = 0;                       // default d_out^2
  const ChannelChoi* annihilator = nullptr;   // override the canonical projection
  const std::vector<CodeBook>* seed_codes = nullptr;
};

// log2 of the best discrimination sum achievable through a resourceless
// version of n; heuristic see-saw over codes.
BoundReport gamma_quantity(const ResourceSpec& spec, const ChannelChoi& n, double kappa,
                           uint64_t seed, const GammaOptions& opts = {});

}  // namespace rescap
