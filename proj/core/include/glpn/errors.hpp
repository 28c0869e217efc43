#ifndef GLPN_ERRORS_HPP
#define GLPN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace glpn {

/// Shape or dimension mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A precondition on the input values was violated (asymmetry, NaN, bad range, ...).
class ContractError : public std::invalid_argument {
public:
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative solver exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed or inconsistent input data (files, masks, labels).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Training produced a non-finite loss.
class TrainingDivergence : public std::runtime_error {
public:
    TrainingDivergence(const std::string& what, std::size_t epoch)
        : std::runtime_error(what + " at epoch " + std::to_string(epoch)), epoch_(epoch) {}
    std::size_t epoch() const noexcept { return epoch_; }

private:
    std::size_t epoch_;
};

}  // namespace glpn

#endif  // GLPN_ERRORS_HPP
