#ifndef TREEDOM_COMMON_HPP
#define TREEDOM_COMMON_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace treedom {

inline constexpr const char* kVersion = "0.1.0";

/// Thrown when a documented hypothesis of an operation is violated
/// (the CLI maps this to exit code 2).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an input object exceeds a size cap.
struct SizeError : std::length_error {
    using std::length_error::length_error;
};

/// Thrown when two internal computation routes disagree.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Thrown when a requested derivative does not exist at the evaluation point.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x))
        throw std::domain_error(std::string(name) + " must be finite");
}

/// log(cosh(x)) without overflow for large |x|.
inline double log_cosh(double x) {
    const double ax = std::fabs(x);
    if (ax > 30.0)
        return ax - 0.6931471805599453094;  // log 2; e^{-2|x|} below double precision
    return ax + std::log1p(std::exp(-2.0 * ax)) - 0.6931471805599453094;
}

/// 1 / (1 + e^{-x}), stable on both tails.
inline double logistic(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace treedom

#endif
