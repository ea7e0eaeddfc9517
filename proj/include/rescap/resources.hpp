#pragma once

#include <optional>
#include <vector>

#include "rescap/channels.hpp"

namespace rescap {

enum class ResourceKind { Coherence, Athermality, Asymmetry };

// A state resource theory: what counts as free, and in which structure.
struct ResourceSpec {
  ResourceKind kind = ResourceKind::Coherence;
  int d = 0;                              // base system dimension
  Mat basis;                              // coherence: incoherent basis (unitary)
  std::optional<ThermalContext> thermal;  // athermality
  std::optional<UnitaryGroup> group;      // asymmetry

  static ResourceSpec coherence(int d);
  static ResourceSpec coherence_in_basis(const Mat& basis);
  static ResourceSpec athermality(ThermalContext ctx);
  static ResourceSpec asymmetry(UnitaryGroup g);

  // dephasing in the spec basis (coherence only)
  ChannelChoi dephase(int dim) const;
};

struct PredicateResult {
  bool ok = false;
  double violation = 0.0;  // worst violation magnitude, for diagnostics
};

PredicateResult is_free_state(const ResourceSpec& spec, const DensityMatrix& rho,
                              double tol = tols().free_op);
PredicateResult is_free_operation(const ResourceSpec& spec, const ChannelChoi& e,
                                  double tol = tols().free_op);
PredicateResult is_resource_annihilating(const ResourceSpec& spec, const ChannelChoi& e,
                                         double tol = tols().free_op);

// Canonical annihilating channel built from e: dephase∘e (coherence),
// twirl∘e (asymmetry), the constant thermal channel (athermality).
ChannelChoi annihilating_projection(const ResourceSpec& spec, const ChannelChoi& e);

// A constructive family of channels that stay annihilating under tensoring
// with any annihilating channel. See docs/annihilating-family.md.
std::vector<ChannelChoi> absolutely_annihilating_family(const ResourceSpec& spec, int dim);

// --- seeded generators (test scaffolding, not part of the theory) -------

// Coherence non-generating channel: mixture of incoherent unitaries,
// dephased channels, and identity.
ChannelChoi random_coherence_nongenerating(Rng& rng, int d);
// Gibbs-preserving channel via projection-and-rescale with rejection.
ChannelChoi random_gibbs_preserving(Rng& rng, const ThermalContext& ctx);
// Gibbs-preserving channel that is also coherence annihilating.
ChannelChoi random_gibbs_coherence_annihilating(Rng& rng, const ThermalContext& ctx);
// G-covariant channel via group averaging.
ChannelChoi random_covariant(Rng& rng, const UnitaryGroup& g);

}  // namespace rescap
