#ifndef GLPN_LINALG_HPP
#define GLPN_LINALG_HPP

#include <vector>

#include "glpn/dense_matrix.hpp"

namespace glpn {

/// Matrix product a * b. Throws DimensionError on inner-dimension mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

/// a * b^T without forming the transpose.
DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b);

/// a^T * b without forming the transpose.
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double s);
DenseMatrix transpose(const DenseMatrix& a);

double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
double trace(const DenseMatrix& a);

/// Result of a symmetric eigendecomposition: m = V diag(lambda) V^T with the
/// eigenvalues ascending and V's columns orthonormal.
struct SymEigen {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi eigendecomposition for symmetric matrices.
///
/// The input must be square and symmetric within 1e-10 entry-wise; it is
/// symmetrized as (m + m^T)/2 before iterating. Convergence is declared when
/// the off-diagonal Frobenius norm drops below tol * max(1, ||m||_F), and a
/// ConvergenceError carrying the residual is thrown after 100 sweeps without
/// reaching it.
SymEigen sym_eigen(const DenseMatrix& m, double tol = 1e-12);

/// Thin SVD: m = U diag(sigma) V^T, singular values descending.
struct ThinSvd {
    DenseMatrix u;              // rows x k
    std::vector<double> sigma;  // k = min(rows, cols), descending, >= 0
    DenseMatrix v;              // cols x k
};

/// SVD via sym_eigen of the smaller Gram matrix. Adequate for desk-scale
/// inputs; singular values below 1e-8 * max(1, sigma_max) are flushed to zero
/// and their singular vectors completed to an orthonormal basis.
ThinSvd svd_thin(const DenseMatrix& m);

}  // namespace glpn

#endif  // GLPN_LINALG_HPP
