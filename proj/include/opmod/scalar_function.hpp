#pragma once

#include <functional>
#include <optional>
#include <string>

#include "opmod/matrix.hpp"

namespace opmod {

/// Thrown when a divided difference hits coincident nodes and the function
/// carries no derivative.
class coincident_node_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A scalar function of a real variable, possibly complex-valued, with an
// optional derivative (needed only at coincident divided-difference nodes).
// Evaluation callables must be safe to invoke concurrently.
struct ScalarFunction {
    std::function<cplx(double)> eval;
    std::optional<std::function<cplx(double)>> deriv;
    std::string tag;

    cplx operator()(double x) const { return eval(x); }
};

// Named builtins.  These back the CLI descriptor grammar:
//   abs | power:<alpha> | exp_i:<sigma> | trig:<d>:<re,im,...> | smoothstep

ScalarFunction fn_identity();
ScalarFunction fn_abs();
/// |t|^alpha, alpha > 0.
ScalarFunction fn_power(double alpha);
/// e^{i sigma t}.
ScalarFunction fn_exp_i(double sigma);
/// C^inf step: 0 for t <= 0, 1 for t >= 1, g(t) = h(t)/(h(t)+h(1-t)) between,
/// h(t) = exp(-1/t).
ScalarFunction fn_smoothstep();
/// f(t) = a t + b.
ScalarFunction fn_affine(cplx a, cplx b);

/// |t|^alpha flattened smoothly to a constant for |t| >= hi; equal to
/// fn_power on [-lo, lo].  Keeps windowed spectral analysis wrap-free.
ScalarFunction fn_power_windowed(double alpha, double lo, double hi);

/// Parse a CLI descriptor ("exp_i:2.5", "power:0.5", ...).  Throws
/// invalid_parameter on grammar errors.
ScalarFunction parse_function_descriptor(const std::string& descriptor);

} // namespace opmod
