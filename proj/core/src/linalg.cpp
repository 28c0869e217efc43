#include "glpn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "glpn/errors.hpp"

namespace glpn {

namespace {

void check_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()));
    }
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    DenseMatrix c(n, m);
    // i-k-j order keeps the inner loop contiguous in both b and c.
    for (std::size_t i = 0; i < n; ++i) {
        double* ci = c.row_ptr(i);
        const double* ai = a.row_ptr(i);
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double av = ai[kk];
            if (av == 0.0) continue;
            const double* bk = b.row_ptr(kk);
            for (std::size_t j = 0; j < m; ++j) ci[j] += av * bk[j];
        }
    }
    return c;
}

DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols()) {
        throw DimensionError("matmul_nt: inner dimensions " + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.cols()));
    }
    const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
    DenseMatrix c(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        const double* ai = a.row_ptr(i);
        double* ci = c.row_ptr(i);
        for (std::size_t j = 0; j < m; ++j) {
            const double* bj = b.row_ptr(j);
            double acc = 0.0;
            for (std::size_t kk = 0; kk < k; ++kk) acc += ai[kk] * bj[kk];
            ci[j] = acc;
        }
    }
    return c;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("matmul_tn: inner dimensions " + std::to_string(a.rows()) +
                             " vs " + std::to_string(b.rows()));
    }
    const std::size_t n = a.cols(), k = a.rows(), m = b.cols();
    DenseMatrix c(n, m);
    for (std::size_t kk = 0; kk < k; ++kk) {
        const double* ak = a.row_ptr(kk);
        const double* bk = b.row_ptr(kk);
        for (std::size_t i = 0; i < n; ++i) {
            const double av = ak[i];
            if (av == 0.0) continue;
            double* ci = c.row_ptr(i);
            for (std::size_t j = 0; j < m; ++j) ci[j] += av * bk[j];
        }
    }
    return c;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    check_same_shape(a, b, "add");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    check_same_shape(a, b, "subtract");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
    check_same_shape(a, b, "hadamard");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= b.data()[i];
    return c;
}

DenseMatrix scale(const DenseMatrix& a, double s) {
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.data()[i] *= s;
    return c;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    }
    return t;
}

double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.values()) s += v * v;
    return std::sqrt(s);
}

double max_abs(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.values()) s = std::max(s, std::abs(v));
    return s;
}

double trace(const DenseMatrix& a) {
    const std::size_t n = std::min(a.rows(), a.cols());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a(i, i);
    return s;
}

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) s += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(s);
}

}  // namespace

SymEigen sym_eigen(const DenseMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw ContractError("sym_eigen: matrix is not square");
    }
    if (tol <= 0.0) {
        throw ContractError("sym_eigen: tol must be positive");
    }
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-10) {
                throw ContractError("sym_eigen: asymmetric input at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
            }
        }
    }
    m.require_finite("sym_eigen");

    // Work on the symmetrized copy.
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));
    }
    DenseMatrix v = DenseMatrix::identity(n);

    const double stop = tol * std::max(1.0, frobenius_norm(a));
    constexpr int kMaxSweeps = 100;
    double off = off_diagonal_norm(a);
    for (int sweep = 0; sweep < kMaxSweeps && off > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Rotate rows/columns p and q of a.
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = off_diagonal_norm(a);
    }
    if (off > stop) {
        throw ConvergenceError("sym_eigen: Jacobi sweeps exhausted", off);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    SymEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

namespace {

// Gram-Schmidt completion: fill the columns of u listed in `missing` with unit
// vectors orthogonal to all existing columns.
void complete_basis(DenseMatrix& u, const std::vector<std::size_t>& filled,
                    const std::vector<std::size_t>& missing) {
    const std::size_t nrows = u.rows();
    std::vector<std::size_t> have = filled;
    std::size_t next_canonical = 0;
    for (std::size_t col : missing) {
        for (; next_canonical <= nrows; ++next_canonical) {
            if (next_canonical == nrows) {
                throw ConvergenceError("svd_thin: basis completion failed", 0.0);
            }
            std::vector<double> cand(nrows, 0.0);
            cand[next_canonical] = 1.0;
            for (std::size_t h : have) {
                double dot = 0.0;
                for (std::size_t i = 0; i < nrows; ++i) dot += cand[i] * u(i, h);
                for (std::size_t i = 0; i < nrows; ++i) cand[i] -= dot * u(i, h);
            }
            double norm = 0.0;
            for (double x : cand) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 0.5) {
                for (std::size_t i = 0; i < nrows; ++i) u(i, col) = cand[i] / norm;
                have.push_back(col);
                ++next_canonical;
                break;
            }
        }
    }
}

}  // namespace

ThinSvd svd_thin(const DenseMatrix& m) {
    m.require_finite("svd_thin");
    const bool tall = m.rows() >= m.cols();
    const std::size_t k = std::min(m.rows(), m.cols());

    // Eigendecompose the smaller Gram matrix.
    const DenseMatrix gram = tall ? matmul_tn(m, m) : matmul_nt(m, m);
    SymEigen eig = sym_eigen(gram, 1e-14);

    ThinSvd out;
    out.sigma.resize(k);
    DenseMatrix small(gram.rows(), k);  // singular vectors on the Gram side
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = gram.rows() - 1 - j;  // descending eigenvalues
        out.sigma[j] = std::sqrt(std::max(0.0, eig.eigenvalues[src]));
        for (std::size_t i = 0; i < gram.rows(); ++i) {
            small(i, j) = eig.eigenvectors(i, src);
        }
    }
    const double sigma_max = out.sigma.empty() ? 0.0 : out.sigma[0];
    const double floor = 1e-8 * std::max(1.0, sigma_max);

    // Propagate to the other side: u_j = m v_j / sigma_j (or v_j = m^T u_j).
    DenseMatrix big(tall ? m.rows() : m.cols(), k);
    std::vector<std::size_t> filled, missing;
    for (std::size_t j = 0; j < k; ++j) {
        if (out.sigma[j] < floor) {
            out.sigma[j] = 0.0;
            missing.push_back(j);
            continue;
        }
        for (std::size_t i = 0; i < big.rows(); ++i) {
            double acc = 0.0;
            if (tall) {
                for (std::size_t c = 0; c < m.cols(); ++c) acc += m(i, c) * small(c, j);
            } else {
                for (std::size_t r = 0; r < m.rows(); ++r) acc += m(r, i) * small(r, j);
            }
            big(i, j) = acc / out.sigma[j];
        }
        filled.push_back(j);
    }
    complete_basis(big, filled, missing);

    if (tall) {
        out.u = std::move(big);
        out.v = std::move(small);
    } else {
        out.u = std::move(small);
        out.v = std::move(big);
    }
    return out;
}

}  // namespace glpn
