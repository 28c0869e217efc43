#include "glpn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glpn/errors.hpp"
#include "glpn/linalg.hpp"

namespace glpn {

namespace {

void check_adjacency(const DenseMatrix& a, const char* where) {
    if (a.rows() != a.cols()) {
        throw ContractError(std::string(where) + ": adjacency is not square");
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 0.0) {
            throw ContractError(std::string(where) + ": nonzero diagonal at node " +
                                std::to_string(i));
        }
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - a(j, i)) > 1e-12) {
                throw ContractError(std::string(where) + ": asymmetric adjacency at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
            }
            if (a(i, j) < 0.0) {
                throw ContractError(std::string(where) + ": negative weight at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

}  // namespace

void Graph::validate() const {
    check_adjacency(adjacency, "Graph");
    if (n() < 1 || d() < 1) {
        throw ContractError("Graph: n and d must be at least 1");
    }
    if (features.rows() != n()) {
        throw ContractError("Graph: features row count does not match adjacency");
    }
    if (!mask.same_shape(features)) {
        throw ContractError("Graph: mask shape does not match features");
    }
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const double m = mask.data()[i];
        if (m != 0.0 && m != 1.0) {
            throw ContractError("Graph: mask entries must be 0 or 1");
        }
        if (m == 1.0 && !std::isfinite(features.data()[i])) {
            throw ContractError("Graph: observed feature entry is not finite");
        }
    }
    if (labels && labels->size() != n()) {
        throw ContractError("Graph: label count does not match node count");
    }
}

std::vector<double> degrees(const DenseMatrix& adjacency) {
    std::vector<double> deg(adjacency.rows(), 0.0);
    for (std::size_t i = 0; i < adjacency.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < adjacency.cols(); ++j) s += adjacency(i, j);
        deg[i] = s;
    }
    return deg;
}

DenseMatrix augmented_laplacian(const DenseMatrix& adjacency) {
    check_adjacency(adjacency, "augmented_laplacian");
    const std::size_t n = adjacency.rows();
    const std::vector<double> deg = degrees(adjacency);
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(deg[i] + 1.0);

    DenseMatrix lap(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double a_tilde = adjacency(i, j) + (i == j ? 1.0 : 0.0);
            lap(i, j) = (i == j ? 1.0 : 0.0) - inv_sqrt[i] * a_tilde * inv_sqrt[j];
        }
    }
    return lap;
}

SpectralCache SpectralCache::build(const DenseMatrix& adjacency) {
    SpectralCache cache;
    cache.laplacian = augmented_laplacian(adjacency);
    cache.degree = degrees(adjacency);
    SymEigen eig = sym_eigen(cache.laplacian);
    cache.eigenvalues = std::move(eig.eigenvalues);
    cache.lambda_max = cache.eigenvalues.empty() ? 0.0 : cache.eigenvalues.back();
    // Nonzero eigenvalue closest to 1; ties break toward the smaller value.
    double best = 0.0, best_dist = 2.0;
    for (double ev : cache.eigenvalues) {
        if (ev <= 1e-8) continue;
        const double dist = std::abs(ev - 1.0);
        if (dist < best_dist - 1e-15) {
            best_dist = dist;
            best = ev;
        }
    }
    cache.lambda_one = best;
    return cache;
}

double dirichlet_energy(const DenseMatrix& features, const DenseMatrix& laplacian) {
    if (laplacian.rows() != laplacian.cols() || laplacian.rows() != features.rows()) {
        throw DimensionError("dirichlet_energy: laplacian/features shape mismatch");
    }
    // tr(X^T L X) = sum_ij L_ij <X_i, X_j>
    double energy = 0.0;
    const std::size_t n = features.rows(), d = features.cols();
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = features.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double lij = laplacian(i, j);
            if (lij == 0.0) continue;
            const double* xj = features.row_ptr(j);
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += xi[k] * xj[k];
            energy += lij * dot;
        }
    }
    return energy;
}

double dirichlet_energy_pairwise(const DenseMatrix& features, const DenseMatrix& adjacency,
                                 const std::vector<double>& degree) {
    if (adjacency.rows() != features.rows() || degree.size() != features.rows()) {
        throw DimensionError("dirichlet_energy_pairwise: shape mismatch");
    }
    const std::size_t n = features.rows(), d = features.cols();
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(1.0 + degree[i]);
    double energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = features.row_ptr(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double aij = adjacency(i, j);
            if (aij == 0.0) continue;
            const double* xj = features.row_ptr(j);
            double dist2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = xi[k] * inv_sqrt[i] - xj[k] * inv_sqrt[j];
                dist2 += diff * diff;
            }
            energy += aij * dist2;
        }
    }
    return 0.5 * energy;
}

double energy_gap_lower_bound(const DenseMatrix& xhat, const DenseMatrix& x,
                              const SpectralCache& cache) {
    if (!xhat.same_shape(x)) {
        throw DimensionError("energy_gap_lower_bound: shape mismatch");
    }
    const double b = std::max(frobenius_norm(xhat), frobenius_norm(x));
    if (b == 0.0 || cache.lambda_max <= 0.0) return 0.0;
    const double gap = std::abs(dirichlet_energy(xhat, cache.laplacian) -
                                dirichlet_energy(x, cache.laplacian));
    return gap / (2.0 * b * cache.lambda_max);
}

double homophily_ratio(const DenseMatrix& adjacency, const std::vector<int>& labels) {
    check_adjacency(adjacency, "homophily_ratio");
    const std::size_t n = adjacency.rows();
    if (labels.size() != n) {
        throw ContractError("homophily_ratio: label count does not match node count");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t neighbors = 0, same = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (adjacency(i, j) > 0.0) {
                ++neighbors;
                if (labels[j] == labels[i]) ++same;
            }
        }
        if (neighbors == 0) {
            throw ContractError("homophily_ratio: node " + std::to_string(i) +
                                " has no neighbors");
        }
        total += static_cast<double>(same) / static_cast<double>(neighbors);
    }
    return total / static_cast<double>(n);
}

DenseMatrix gaussian_kernel_adjacency(const DenseMatrix& distances, double sigma,
                                      double threshold) {
    if (sigma <= 0.0) {
        throw ContractError("gaussian_kernel_adjacency: sigma must be positive");
    }
    if (threshold < 0.0 || threshold >= 1.0) {
        throw ContractError("gaussian_kernel_adjacency: threshold must lie in [0, 1)");
    }
    if (distances.rows() != distances.cols()) {
        throw ContractError("gaussian_kernel_adjacency: distance matrix is not square");
    }
    const std::size_t n = distances.rows();
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dist = 0.5 * (distances(i, j) + distances(j, i));
            if (dist < 0.0) {
                throw ContractError("gaussian_kernel_adjacency: negative distance");
            }
            const double w = std::exp(-(dist / sigma) * (dist / sigma));
            a(i, j) = (w > threshold) ? w : 0.0;
        }
    }
    return a;
}

DenseMatrix binary_adjacency(std::size_t n,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    DenseMatrix a(n, n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw DataError("binary_adjacency: edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ") out of range for n=" + std::to_string(n));
        }
        if (u == v) {
            throw DataError("binary_adjacency: self-loop at node " + std::to_string(u));
        }
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    return a;
}

DenseMatrix gcn_filter(const DenseMatrix& laplacian) {
    DenseMatrix p = scale(laplacian, -1.0);
    for (std::size_t i = 0; i < p.rows(); ++i) p(i, i) += 1.0;
    return p;
}

}  // namespace glpn
