#pragma once

#include "rescap/channels.hpp"

namespace rescap {

enum class SwapStyle { FullSwap, PartialSwap };

// Poisson collision dynamics on n identical copies: pairwise (partial)
// swaps occurring at the given rate, all energy preserving.
struct CollisionModel {
  int copies = 0;
  int local_dim = 0;
  Hamiltonian local_h;
  std::vector<Mat> unitaries;  // on the full (local_dim^copies)-dim space
  std::vector<double> rates;

  int dim() const;
  void validate() const;  // unitarity + commutation with the total Hamiltonian
};

CollisionModel build_collision_model(const Hamiltonian& h, int n, SwapStyle style,
                                     double rate, double theta = 0.78539816339744830962);

constexpr double kTimeInfinity = std::numeric_limits<double>::infinity();

// Master-equation evolution by uniformization; t may be infinite, in which
// case the state is projected onto the kernel of the generator.
DensityMatrix evolve(const CollisionModel& model, const DensityMatrix& rho_sb, double t);

struct ThermalizeCheck {
  bool ok = false;
  double residual = 0.0;
};

// || state - gamma^{(x) n} ||_1 <= epsilon
ThermalizeCheck epsilon_thermalizes(const DensityMatrix& state_sb, const ThermalContext& ctx,
                                    int n, double epsilon);

struct BathSizeReport {
  int n_star = -1;  // total copies achieving thermalization; -1 when not found
  double epsilon = 0.0;
  double time = 0.0;  // kTimeInfinity for the asymptotic protocol
  std::string style;
  bool found() const { return n_star >= 1; }
  int bath_size() const { return n_star - 1; }
};

// Smallest total copy count n whose canonical swap protocol brings
// rho (x) gamma^{(x)(n-1)} within epsilon of gamma^{(x) n}. The reported
// size is protocol-achieved, hence an upper bound. `only_style` restricts
// the protocol family; by default both styles are tried.
BathSizeReport min_bath_size_state(const DensityMatrix& rho, const ThermalContext& ctx,
                                   double epsilon, int n_max, int t_points = 16,
                                   std::optional<SwapStyle> only_style = {});

// sup over probe inputs of the per-output bath size, minus one.
BathSizeReport channel_bath_size(const ChannelChoi& n_ch, const ThermalContext& ctx,
                                 double epsilon, int n_max, int probes = 6,
                                 uint64_t seed = 1);

struct Theorem3Report {
  double capacity_lower = 0.0;
  double p_coherence_upper = 0.0;
  int bath_upper = 0;
  bool bath_found = false;
  double rhs = 0.0;
  bool pass = false;
  // necessary-condition check for coherence-annihilating channels
  bool a_applicable = false;
  double a_lhs = 0.0;
  double a_rhs = 0.0;
  bool a_pass = true;
};

// capacity_lower <= coherence preservability + log2(bath + 2 sqrt(delta)/p_min + 1)
// + log2(2^kappa / (1-epsilon)), all bound directions sound.
Theorem3Report theorem3_consistency(const ChannelChoi& n_ch, const ThermalContext& ctx,
                                    double epsilon, double delta, double kappa,
                                    int n_max = 4, uint64_t seed = 1);

}  // namespace rescap
