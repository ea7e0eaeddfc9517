#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "rescap/tolerances.hpp"

namespace rescap {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

constexpr Complex kI{0.0, 1.0};

// Tensor (Kronecker) product, dimensions multiply.
Mat kron(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b, const Mat& c);
Ket kron(const Ket& a, const Ket& b);

// Trace over the factors not listed in `keep`. `dims` are the factor
// dimensions of a square matrix in row-major composite indexing; `keep`
// is an ascending list of factor positions. Preserves the total trace.
Mat partial_trace(const Mat& a, const std::vector<int>& dims,
                  const std::vector<int>& keep);

bool is_hermitian(const Mat& a, double tol = tols().hermitian);

struct HermEig {
  RVec values;  // ascending
  Mat vectors;  // columns are the eigenvectors, unitary
};

// Eigendecomposition of a Hermitian matrix. Throws on non-Hermitian input.
HermEig herm_eig(const Mat& a);

// Principal square root of a PSD matrix. Eigenvalues below the relative
// support cutoff are treated as zero; eigenvalues below -tols().psd throw.
Mat psd_sqrt(const Mat& a);

// Pseudo-inverse square root restricted to the support of a.
Mat psd_pinv_sqrt(const Mat& a);

// Projector onto the support of a PSD matrix.
Mat support_projector(const Mat& a);

double trace_norm(const Mat& a);  // sum of singular values
double op_norm(const Mat& a);     // largest singular value

// Matrix exponential (scaling-and-squaring).
Mat expm(const Mat& a);

Mat identity(int d);

// Largest eigenvalue of a Hermitian matrix together with its eigenvector.
std::pair<double, Ket> top_eig(const Mat& hermitian);

// Row-major composite index helpers.
int dim_product(const std::vector<int>& dims);

// Isometric real coordinates of a Hermitian d x d matrix (d^2 entries):
// diagonal first, then sqrt(2)*Re and sqrt(2)*Im of the upper triangle.
// tr(X Y) = hvec(X).dot(hvec(Y)).
RVec hvec(const Mat& x);
Mat unhvec(const RVec& v, int d);

}  // namespace rescap
