#pragma once

#include "rescap/io.hpp"
#include "rescap/monotones.hpp"

namespace rescap {

// An M-code: encoding states plus decoding POVM.
struct CodeBook {
  std::vector<DensityMatrix> encodings;
  Povm decoder;

  int m() const { return static_cast<int>(encodings.size()); }
  void validate() const;
};

// wire format for reproducing codes: {"encodings":[matrix...],"decoder":[matrix...]}
Json codebook_to_json(const CodeBook& code);
CodeBook codebook_from_json(const Json& j);

// message -> group element assignments for group-orbit codes
struct CodebookMap {
  std::vector<int> assignments;
  UnitaryGroup group;
};

// (1/M) sum_m tr(E_m N(rho_m)), clamped to [0,1].
double success_probability(const ChannelChoi& n, const CodeBook& code);

// SDP-optimal uniform-prior decoder for the given encodings.
std::pair<Povm, double> optimal_decoder(const ChannelChoi& n,
                                        const std::vector<DensityMatrix>& encodings,
                                        bool* certified = nullptr);

struct CapacityOptions {
  int m_max = 0;  // 0: automatic cap
  int restarts = 3;
  int iters = 10;
  uint64_t seed = 1;
};

struct CapacityResult {
  BoundReport report;
  int best_m = 1;
  double best_success = 1.0;
  std::vector<CodeBook> codes;  // best code found for each message count tried
};

// Largest M admitting average success >= 1 - epsilon, by descending
// integer search with see-saw code optimization. Deterministic per seed.
CapacityResult one_shot_capacity_lower(const ChannelChoi& n, double epsilon,
                                       const CapacityOptions& opts = {});

struct BoundsPipeline {
  BoundReport capacity_lower;
  BoundReport p_lower;
  BoundReport p_upper;          // smoothed when delta > 0
  BoundReport gamma;
  BoundReport theorem1_upper;
  std::optional<BoundReport> corollary1_upper;
  bool consistent = false;  // capacity_lower <= theorem1_upper + 1e-6
};

// Full upper-bound pipeline: preservability + resourceless term + slack.
BoundsPipeline bounds_pipeline(const ResourceSpec& spec, const ChannelChoi& n, double epsilon,
                               double delta, double kappa, uint64_t seed,
                               const CapacityOptions& copts = {});

BoundReport theorem1_upper(const ResourceSpec& spec, const ChannelChoi& n, double epsilon,
                           double delta, double kappa, uint64_t seed);

// Gibbs-preserving refinement: P_spec(n) + P_thermal(proj(n)) + slack.
BoundReport corollary1_upper(const ChannelChoi& n, const ThermalContext& gamma_ctx,
                             const ResourceSpec& spec, double epsilon, double kappa);

// Asymmetry lower bound max{0, W/ln2 + log2(delta) - 1} with W the best
// probe value of the information spectrum relative entropy against the
// twirled channel.
BoundReport theorem2_lower(const ChannelChoi& n, const UnitaryGroup& g, double epsilon,
                           double delta, int probes = 8, uint64_t seed = 1);

struct RandomCodebookReport {
  int m = 0;
  int trials = 0;
  double empirical_mean = 0.0;
  double std_error = 0.0;
  double d_spectrum = 0.0;  // D_s^kappa(rho || T_G(rho))
  double analytic_rhs = 0.0;
  bool pass = false;  // empirical_mean >= analytic_rhs - 3 std_error
};

// Monte-Carlo check of the random-codebook success bound with group-orbit
// encodings and the square-root decoder.
RandomCodebookReport random_codebook_experiment(const DensityMatrix& rho,
                                                const UnitaryGroup& g, int m, int trials,
                                                double kappa, uint64_t seed);

struct CmeOptions {
  int rotations = 4;  // local-unitary rotations of the clock-and-shift family
  uint64_t seed = 1;
};

// Capacity restricted to orthonormal maximally entangled encodings and
// projective maximally entangled decodings; lower bound by family search.
BoundReport cme_capacity(const ChannelChoi& n, double epsilon, const CmeOptions& opts = {});

enum class ConverseResource { Athermality, EntanglementFamily };

// Certified preservability upper bound for the entanglement-family
// resources: best dominance over constant separable-output candidates.
BoundReport entanglement_preservability_upper(const ChannelChoi& n);

struct Theorem4Report {
  double cme_value = 0.0;
  double p_upper = 0.0;
  double alpha = 1.0;
  double bound = 0.0;   // (p_upper + log2(1/(1-eps-delta))) / alpha
  double margin = 0.0;  // bound - cme_value
  bool pass = false;
};

Theorem4Report theorem4_check(ConverseResource resource, const ChannelChoi& n, double epsilon,
                              double delta, const ThermalContext* ctx = nullptr,
                              uint64_t seed = 1);

struct FefThresholdReport {
  double p_upper = 0.0;
  double threshold = 0.0;  // log2((1-eps)/F^R(d))
  bool condition = false;  // p_upper < threshold
  double cme_value = 0.0;
  bool consistent = true;  // condition implies cme_value == 0
};

FefThresholdReport fef_threshold_check(ConverseResource resource, const ChannelChoi& n,
                                       double epsilon, const ThermalContext* ctx = nullptr,
                                       uint64_t seed = 1);

}  // namespace rescap
