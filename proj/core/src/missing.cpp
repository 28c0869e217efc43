#include "glpn/missing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "glpn/errors.hpp"
#include "glpn/rng.hpp"

namespace glpn {

std::string to_string(Mechanism m) {
    switch (m) {
        case Mechanism::kMcar: return "mcar";
        case Mechanism::kMar: return "mar";
        case Mechanism::kMnar: return "mnar";
    }
    return "?";
}

Mechanism mechanism_from_string(const std::string& s) {
    if (s == "mcar" || s == "MCAR") return Mechanism::kMcar;
    if (s == "mar" || s == "MAR") return Mechanism::kMar;
    if (s == "mnar" || s == "MNAR") return Mechanism::kMnar;
    throw DataError("unknown missing mechanism: " + s);
}

void MaskSpec::validate() const {
    if (ratio < 0.0 || ratio > 1.0) {
        throw ContractError("MaskSpec: ratio must lie in [0, 1]");
    }
    if (mar_observed_fraction <= 0.0 || mar_observed_fraction >= 1.0 ||
        mar_driver_fraction <= 0.0 || mar_driver_fraction >= 1.0) {
        throw ContractError("MaskSpec: MAR fractions must lie in (0, 1)");
    }
}

DenseMatrix mcar_mask(std::size_t n, std::size_t d, const MaskSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    DenseMatrix mask(n, d, 1.0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (rng.uniform01() < spec.ratio) mask.data()[i] = 0.0;
    }
    return mask;
}

DenseMatrix mnar_mask(std::size_t n, std::size_t d, const MaskSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::size_t k = static_cast<std::size_t>(std::ceil(spec.ratio * static_cast<double>(n)));
    std::vector<std::size_t> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    rng.shuffle(nodes);
    DenseMatrix mask(n, d, 1.0);
    for (std::size_t t = 0; t < std::min(k, n); ++t) {
        for (std::size_t j = 0; j < d; ++j) mask(nodes[t], j) = 0.0;
    }
    return mask;
}

DenseMatrix mar_mask(const DenseMatrix& features, const MaskSpec& spec) {
    spec.validate();
    features.require_finite("mar_mask");
    const std::size_t n = features.rows(), d = features.cols();
    if (d < 2) {
        throw ContractError("mar_mask: need at least 2 columns for a driver/target split");
    }
    Rng rng(spec.seed);

    const std::size_t n_drivers = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(spec.mar_driver_fraction * static_cast<double>(d))));
    std::vector<std::size_t> cols(d);
    std::iota(cols.begin(), cols.end(), 0);
    rng.shuffle(cols);
    std::vector<bool> is_driver(d, false);
    for (std::size_t t = 0; t < std::min(n_drivers, d - 1); ++t) is_driver[cols[t]] = true;

    // Fully observed node subset, kept out of the masking entirely.
    const std::size_t n_protected = static_cast<std::size_t>(
        std::llround(spec.mar_observed_fraction * static_cast<double>(n)));
    std::vector<std::size_t> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    rng.shuffle(nodes);
    std::vector<bool> is_protected(n, false);
    for (std::size_t t = 0; t < n_protected; ++t) is_protected[nodes[t]] = true;

    // Unit-norm logistic weights over the driver columns.
    std::vector<double> w;
    for (std::size_t j = 0; j < d; ++j) {
        if (is_driver[j]) w.push_back(rng.normal());
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(std::max(norm, 1e-30));
    for (double& x : w) x /= norm;

    std::vector<double> score(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t t = 0;
        for (std::size_t j = 0; j < d; ++j) {
            if (is_driver[j]) score[i] += w[t++] * features(i, j);
        }
    }

    // Bisection on the intercept so the mean missing probability over the
    // maskable entries hits the target ratio.
    double lo = -40.0, hi = 40.0;
    auto mean_prob = [&](double b) {
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_protected[i]) continue;
            acc += 1.0 / (1.0 + std::exp(-(score[i] + b)));
            ++count;
        }
        return count ? acc / static_cast<double>(count) : 0.0;
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mean_prob(mid) > spec.ratio) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double intercept = 0.5 * (lo + hi);

    DenseMatrix mask(n, d, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_protected[i]) continue;
        const double p = 1.0 / (1.0 + std::exp(-(score[i] + intercept)));
        for (std::size_t j = 0; j < d; ++j) {
            if (is_driver[j]) continue;
            if (rng.uniform01() < p) mask(i, j) = 0.0;
        }
    }
    return mask;
}

DenseMatrix make_mask(const DenseMatrix& features, const MaskSpec& spec) {
    switch (spec.mechanism) {
        case Mechanism::kMcar: return mcar_mask(features.rows(), features.cols(), spec);
        case Mechanism::kMar: return mar_mask(features, spec);
        case Mechanism::kMnar: return mnar_mask(features.rows(), features.cols(), spec);
    }
    throw ContractError("make_mask: bad mechanism");
}

double ScalingRecord::to_scaled(double v, std::size_t col) const {
    const double span = col_max[col] - col_min[col];
    if (span <= 0.0) return 0.5;
    return (v - col_min[col]) / span;
}

double ScalingRecord::to_original(double v, std::size_t col) const {
    const double span = col_max[col] - col_min[col];
    if (span <= 0.0) return col_min[col];
    return v * span + col_min[col];
}

std::pair<DenseMatrix, ScalingRecord> minmax_scale(const DenseMatrix& features,
                                                   const DenseMatrix& mask) {
    if (!features.same_shape(mask)) {
        throw DimensionError("minmax_scale: features/mask shape mismatch");
    }
    const std::size_t n = features.rows(), d = features.cols();
    ScalingRecord rec;
    rec.col_min.assign(d, 0.0);
    rec.col_max.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        bool seen = false;
        double lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask(i, j) == 0.0) continue;
            const double v = features(i, j);
            if (!seen) {
                lo = hi = v;
                seen = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (!seen) {
            throw DataError("minmax_scale: column " + std::to_string(j) + " has no observed entry");
        }
        rec.col_min[j] = lo;
        rec.col_max[j] = hi;
    }
    DenseMatrix scaled(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            scaled(i, j) = rec.to_scaled(features(i, j), j);
        }
    }
    return {std::move(scaled), std::move(rec)};
}

DenseMatrix minmax_unscale(const DenseMatrix& scaled, const ScalingRecord& record) {
    if (scaled.cols() != record.col_min.size()) {
        throw DimensionError("minmax_unscale: record does not match column count");
    }
    DenseMatrix out(scaled.rows(), scaled.cols());
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t j = 0; j < scaled.cols(); ++j) {
            out(i, j) = record.to_original(scaled(i, j), j);
        }
    }
    return out;
}

}  // namespace glpn
