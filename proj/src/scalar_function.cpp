#include "opmod/scalar_function.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace opmod {

namespace {

double expm1_inv(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth01(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = expm1_inv(t);
    const double b = expm1_inv(1.0 - t);
    return a / (a + b);
}

double smooth01_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double h = 1e-7;
    return (smooth01(t + h) - smooth01(t - h)) / (2.0 * h);
}

} // namespace

ScalarFunction fn_identity() {
    return {[](double t) { return cplx(t, 0.0); },
            [](double) { return cplx(1.0, 0.0); },
            "identity"};
}

ScalarFunction fn_abs() {
    return {[](double t) { return cplx(std::abs(t), 0.0); },
            [](double t) -> cplx {
                if (t == 0.0) throw coincident_node_error("abs: derivative undefined at 0");
                return cplx(t > 0.0 ? 1.0 : -1.0, 0.0);
            },
            "abs"};
}

ScalarFunction fn_power(double alpha) {
    if (!(alpha > 0.0)) throw invalid_parameter("power: alpha must be positive");
    return {[alpha](double t) { return cplx(std::pow(std::abs(t), alpha), 0.0); },
            [alpha](double t) -> cplx {
                if (t == 0.0) throw coincident_node_error("power: derivative undefined at 0");
                const double s = t > 0.0 ? 1.0 : -1.0;
                return cplx(s * alpha * std::pow(std::abs(t), alpha - 1.0), 0.0);
            },
            "power:" + std::to_string(alpha)};
}

ScalarFunction fn_exp_i(double sigma) {
    return {[sigma](double t) { return std::polar(1.0, sigma * t); },
            [sigma](double t) { return cplx(0.0, sigma) * std::polar(1.0, sigma * t); },
            "exp_i:" + std::to_string(sigma)};
}

ScalarFunction fn_smoothstep() {
    return {[](double t) { return cplx(smooth01(t), 0.0); },
            [](double t) { return cplx(smooth01_deriv(t), 0.0); },
            "smoothstep"};
}

ScalarFunction fn_affine(cplx a, cplx b) {
    return {[a, b](double t) { return a * t + b; },
            [a](double) { return a; },
            "affine"};
}

ScalarFunction fn_power_windowed(double alpha, double lo, double hi) {
    if (!(alpha > 0.0 && 0.0 < lo && lo < hi))
        throw invalid_parameter("power_windowed: need alpha > 0 and 0 < lo < hi");
    // f(t) = rho(|t|)^alpha where rho is a C^2 saturating ramp: identity on
    // [0, lo], slope cos^2(pi u / 2) on [lo, hi], exactly constant beyond hi.
    // Constant tails keep periodic-window spectral analysis wrap-free.
    auto rho = [lo, hi](double a) {
        if (a <= lo) return a;
        const double w = hi - lo;
        const double u = std::min((a - lo) / w, 1.0);
        return lo + w * (0.5 * u + std::sin(M_PI * u) / (2.0 * M_PI));
    };
    auto eval = [alpha, rho](double t) -> cplx {
        return cplx(std::pow(rho(std::abs(t)), alpha), 0.0);
    };
    return {eval, std::nullopt, "power_windowed:" + std::to_string(alpha)};
}

ScalarFunction parse_function_descriptor(const std::string& descriptor) {
    std::vector<std::string> parts;
    {
        std::stringstream ss(descriptor);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
    }
    if (parts.empty()) throw invalid_parameter("empty function descriptor");
    const std::string& name = parts[0];
    auto want = [&](std::size_t n) {
        if (parts.size() != n)
            throw invalid_parameter("descriptor '" + descriptor + "': wrong number of fields");
    };
    if (name == "abs") {
        want(1);
        return fn_abs();
    }
    if (name == "smoothstep") {
        want(1);
        return fn_smoothstep();
    }
    if (name == "power") {
        want(2);
        return fn_power(std::stod(parts[1]));
    }
    if (name == "exp_i") {
        want(2);
        return fn_exp_i(std::stod(parts[1]));
    }
    if (name == "trig") {
        // trig:d:re,im,re,im,...  with 2d+1 complex coefficients c_{-d}..c_d;
        // f(t) = sum c_k e^{ikt}.
        want(3);
        const int d = std::stoi(parts[1]);
        if (d < 0) throw invalid_parameter("trig: degree must be >= 0");
        std::vector<double> flat;
        std::stringstream ss(parts[2]);
        std::string item;
        while (std::getline(ss, item, ',')) flat.push_back(std::stod(item));
        if (flat.size() != 2 * (2 * static_cast<std::size_t>(d) + 1))
            throw invalid_parameter("trig: expected 2*(2d+1) numbers");
        std::vector<cplx> coeffs(2 * d + 1);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            coeffs[k] = cplx(flat[2 * k], flat[2 * k + 1]);
        auto eval = [coeffs, d](double t) {
            cplx acc(0.0, 0.0);
            for (int k = -d; k <= d; ++k)
                acc += coeffs[static_cast<std::size_t>(k + d)] * std::polar(1.0, k * t);
            return acc;
        };
        auto deriv = [coeffs, d](double t) {
            cplx acc(0.0, 0.0);
            for (int k = -d; k <= d; ++k)
                acc += coeffs[static_cast<std::size_t>(k + d)] * cplx(0.0, k) *
                       std::polar(1.0, k * t);
            return acc;
        };
        return {eval, deriv, descriptor};
    }
    throw invalid_parameter("unknown function descriptor: " + descriptor);
}

} // namespace opmod
