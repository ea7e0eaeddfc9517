#include "rescap/rng.hpp"

namespace rescap {

namespace {
uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Rng Rng::split(uint64_t seed, uint64_t stream) {
  return Rng(splitmix64(seed ^ splitmix64(stream + 0x51ed2701)));
}

double Rng::normal() {
  // Box-Muller; one variate per call keeps the stream layout simple.
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

uint64_t Rng::integer(uint64_t n) {
  if (n == 0) return 0;
  const uint64_t bound = UINT64_MAX - UINT64_MAX % n;
  uint64_t x = gen_();
  while (x >= bound) x = gen_();
  return x % n;
}

Ket Rng::haar_ket(int d) {
  Ket v(d);
  for (int i = 0; i < d; ++i) v(i) = cnormal();
  v.normalize();
  return v;
}

Mat Rng::ginibre(int rows, int cols) {
  Mat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cnormal();
  return g;
}

Mat Rng::haar_unitary(int d) {
  Mat g = ginibre(d, d);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phase ambiguity so the distribution is Haar
  for (int i = 0; i < d; ++i) {
    Complex ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

Mat Rng::density(int d, int rank) {
  if (rank <= 0 || rank > d) rank = d;
  Mat g = ginibre(d, rank);
  Mat rho = g * g.adjoint();
  rho /= rho.trace();
  return (rho + rho.adjoint()) / 2.0;
}

}  // namespace rescap
