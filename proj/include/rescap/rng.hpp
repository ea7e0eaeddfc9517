#pragma once

#include <cstdint>
#include <random>

#include "rescap/kernel.hpp"

namespace rescap {

// Deterministic RNG with platform-independent derived samples. std
// distributions are avoided on purpose: their output is not pinned by the
// standard, and sweep outputs must be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  // Independent stream for worker `stream` of a seeded run.
  static Rng split(uint64_t seed, uint64_t stream);

  uint64_t raw() { return gen_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double normal();
  Complex cnormal() { double re = normal(); double im = normal(); return {re, im}; }

  // uniform integer in [0, n)
  uint64_t integer(uint64_t n);

  Ket haar_ket(int d);
  Mat haar_unitary(int d);
  Mat ginibre(int rows, int cols);

  // Random density matrix of rank r (Ginibre ensemble).
  Mat density(int d, int rank = 0);

 private:
  std::mt19937_64 gen_;
};

}  // namespace rescap
