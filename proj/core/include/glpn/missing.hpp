#ifndef GLPN_MISSING_HPP
#define GLPN_MISSING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "glpn/dense_matrix.hpp"

namespace glpn {

enum class Mechanism { kMcar, kMar, kMnar };

std::string to_string(Mechanism m);
Mechanism mechanism_from_string(const std::string& s);

/// How to generate an observation mask. `ratio` is the target missing
/// fraction. For MAR, a `mar_driver_fraction` of the columns (never masked)
/// drive the missingness of the remaining columns, and an
/// `mar_observed_fraction` of nodes is kept fully observed before masking.
struct MaskSpec {
    Mechanism mechanism = Mechanism::kMcar;
    double ratio = 0.2;
    std::uint64_t seed = 1;
    double mar_observed_fraction = 0.2;  // MAR: fraction of nodes never masked
    double mar_driver_fraction = 0.3;    // MAR: fraction of columns that drive

    void validate() const;
};

/// MCAR: each entry independently missing with probability spec.ratio.
DenseMatrix mcar_mask(std::size_t n, std::size_t d, const MaskSpec& spec);

/// MAR: a never-masked driver column subset determines the missingness of the
/// remaining columns through a logistic model; the intercept is calibrated by
/// bisection so the realized missing fraction of maskable entries matches
/// spec.ratio within 0.01.
DenseMatrix mar_mask(const DenseMatrix& features, const MaskSpec& spec);

/// MNAR: ceil(ratio * n) nodes drawn without replacement lose their entire
/// feature vector.
DenseMatrix mnar_mask(std::size_t n, std::size_t d, const MaskSpec& spec);

/// Dispatch on spec.mechanism.
DenseMatrix make_mask(const DenseMatrix& features, const MaskSpec& spec);

/// Per-column [0,1] scaling computed from observed entries only.
struct ScalingRecord {
    std::vector<double> col_min;
    std::vector<double> col_max;

    double to_scaled(double v, std::size_t col) const;
    double to_original(double v, std::size_t col) const;
};

/// MinMax-scale using observed entries only; constant columns map to 0.5.
/// Throws DataError on a fully missing column. The inverse transform through
/// the returned record round-trips within 1e-12.
std::pair<DenseMatrix, ScalingRecord> minmax_scale(const DenseMatrix& features,
                                                   const DenseMatrix& mask);

DenseMatrix minmax_unscale(const DenseMatrix& scaled, const ScalingRecord& record);

}  // namespace glpn

#endif  // GLPN_MISSING_HPP
