#ifndef GLPN_GRAPH_HPP
#define GLPN_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "glpn/dense_matrix.hpp"

namespace glpn {

/// Graph data: symmetric nonnegative adjacency with zero diagonal, node
/// features, and a 0/1 observation mask (1 = observed). Labels are optional.
struct Graph {
    DenseMatrix adjacency;  // n x n
    DenseMatrix features;   // n x d
    DenseMatrix mask;       // n x d, entries in {0,1}
    std::optional<std::vector<int>> labels;

    std::size_t n() const noexcept { return adjacency.rows(); }
    std::size_t d() const noexcept { return features.cols(); }

    /// Throws ContractError when any invariant is violated. Only observed
    /// feature entries are required to be finite.
    void validate() const;
};

/// Augmented normalized Laplacian I - D~^{-1/2} (A+I) D~^{-1/2}.
/// Symmetric PSD with spectrum in [0, 2). Throws ContractError for
/// asymmetric, negative-entry, or nonzero-diagonal adjacency.
DenseMatrix augmented_laplacian(const DenseMatrix& adjacency);

/// Weighted degree vector (row sums of the adjacency).
std::vector<double> degrees(const DenseMatrix& adjacency);

/// Per-graph spectral data computed once and shared read-only.
struct SpectralCache {
    DenseMatrix laplacian;           // augmented normalized Laplacian
    std::vector<double> degree;      // weighted degrees of A (no self-loop)
    std::vector<double> eigenvalues; // ascending, in [0, 2)
    double lambda_max = 0.0;
    double lambda_one = 0.0;  // nonzero eigenvalue closest to 1 (0 if none)

    static SpectralCache build(const DenseMatrix& adjacency);
};

/// Dirichlet energy tr(X^T L X) evaluated without forming L X^T products.
double dirichlet_energy(const DenseMatrix& features, const DenseMatrix& laplacian);

/// Pairwise form: 1/2 sum_ij A_ij || X_i/sqrt(1+D_i) - X_j/sqrt(1+D_j) ||^2.
/// Agrees with the trace form; both are exposed so each can check the other.
double dirichlet_energy_pairwise(const DenseMatrix& features, const DenseMatrix& adjacency,
                                 const std::vector<double>& degree);

/// Lower bound |E_D(Xhat) - E_D(X)| / (2 B lambda_max) on the Frobenius
/// distance ||Xhat - X||, with B = max(||Xhat||_F, ||X||_F). Returns 0 when
/// both inputs are zero or the graph has no spectrum to speak of.
double energy_gap_lower_bound(const DenseMatrix& xhat, const DenseMatrix& x,
                              const SpectralCache& cache);

/// Mean over nodes of the fraction of neighbors sharing the node's label.
/// Throws ContractError naming the first isolated node.
double homophily_ratio(const DenseMatrix& adjacency, const std::vector<int>& labels);

/// Thresholded Gaussian kernel adjacency: exp(-(dist/sigma)^2) where that
/// exceeds the threshold, zero otherwise and on the diagonal.
DenseMatrix gaussian_kernel_adjacency(const DenseMatrix& distances, double sigma,
                                      double threshold);

/// 0/1 adjacency from an undirected edge list; duplicates and reversed edges
/// coalesce. Self-loops and out-of-range ids are rejected.
DenseMatrix binary_adjacency(std::size_t n,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Simple-GCN propagation filter P = I - laplacian.
DenseMatrix gcn_filter(const DenseMatrix& laplacian);

}  // namespace glpn

#endif  // GLPN_GRAPH_HPP
