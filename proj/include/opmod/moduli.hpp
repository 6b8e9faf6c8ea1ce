#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opmod/matrix.hpp"
#include "opmod/scalar_function.hpp"

namespace opmod {

// Which operator modulus of continuity is being probed:
//   pair: sup ||f(A)-f(B)||,        ||A-B|| < delta
//   c1:   sup ||f(A)R-Rf(A)||, R=R^*, ||R||<=1, ||AR-RA|| < delta
//   c2:   same with arbitrary R
//   c3:   sup ||f(A)R-Rf(B)||,      ||R||<=1, ||AR-RB|| < delta
enum class ModulusFlavor { pair, c1, c2, c3 };

std::string flavor_name(ModulusFlavor flavor);

struct ModulusWitness {
    ModulusFlavor flavor = ModulusFlavor::pair;
    ComplexMatrix a; // Hermitian
    ComplexMatrix b; // Hermitian; used by pair and c3
    ComplexMatrix r; // contraction; used by c1/c2/c3
    double value = 0.0;
    double constraint = 0.0;
};

/// Recompute ||f(A)-f(B)|| resp. ||f(A)R-Rf(B)|| from the stored matrices.
double witness_value(const ScalarFunction& f, const ModulusWitness& w);
/// Recompute ||A-B|| resp. ||AR-RB||.
double witness_constraint(const ModulusWitness& w);

// Certified lower bounds for a modulus on a delta grid, one witness each.
struct ModulusEstimate {
    ModulusFlavor flavor = ModulusFlavor::pair;
    std::vector<double> delta_grid;
    std::vector<double> lower_bounds;
    std::vector<ModulusWitness> witnesses;
};

/// Random instances (sizes 1..16, incl. scalar reductions) plus hill-climb
/// refinement; every reported bound is reproducible from its witness.
ModulusEstimate estimate_modulus(const ScalarFunction& f, ModulusFlavor flavor,
                                 const std::vector<double>& delta_grid, int budget,
                                 std::uint64_t seed);

// ----- The phi/shift construction (lower bound for Omega^flat) -----
//
// Realizes, at grid scale, the multiplication-by-phi against translation
// pair: A is a spectral derivative on the periodic N-point grid whose symbol
// equals the true derivative below 0.3 * Nyquist and is tapered smoothly to
// zero at the Nyquist edge (the raw sawtooth symbol would put O(q) mass into
// the commutator through the Nyquist wrap).  e^{iA} is the exact one-unit
// grid translation on the untapered band, where the certificate vectors
// live.  R is multiplication by a mollified two-periodic triangle wave.
struct PhiShiftInstance {
    std::size_t points = 0; // N
    std::size_t per_unit = 0; // q grid points per unit cell
    double epsilon = 0.0;
    double delta_target = 2.0;

    std::vector<double> phi;    // diagonal of R on the grid
    std::vector<double> symbol; // A's frequency multipliers, DFT index order

    double phi_max = 0.0;         // ||R|| = max |phi| <= 1
    double commutator_norm = 0.0; // ||AR - RA||, power iteration
    double eta = 0.0;             // ||AR-RA|| <= 2 (1 + eta)
    double f_commutator_lower = 0.0; // certified ||e^{iA} R - R e^{iA}|| bound

    /// Dense N x N materializations (unit-test scale; N <= 2048).
    HermitianMatrix dense_a() const;
    HermitianMatrix dense_r() const;

    /// A w (spectral), R w, and e^{i sigma A} w as explicit grid actions.
    std::vector<cplx> apply_a(const std::vector<cplx>& w) const;
    std::vector<cplx> apply_r(const std::vector<cplx>& w) const;
    std::vector<cplx> apply_exp_ia(double sigma, const std::vector<cplx>& w) const;

    /// Certified lower bound for Omega_f^flat(delta), f = e^{i sigma t}:
    /// scale R by tau = min(1, sigma delta (1-1e-9)/||AR-RA||).
    double omega_flat_lower(double sigma, double delta) const;
};

/// Build the instance; requires N = q * (even cell count), q >= 16.
PhiShiftInstance phi_shift_instance(std::size_t n_points, double epsilon, std::size_t q,
                                    double delta_target);

// ----- The geometric diagonal construction (|t| is not operator Lipschitz) -----
//
// Interleaved geometric sequences lambda_j = 2^{a_j} > 0, mu_j = -2^{b_j} < 0
// with a_0 = 0, b_j = a_j + j + 2, a_{j+1} = b_j + j + 3, so the gap
// conditions 2^{j+1} lambda_j < |mu_j| and 2^{j+2} |mu_j| < lambda_{j+1}
// hold with factor-two slack.  Exponents are kept as integers; the double
// lists overflow beyond n ~ 20 while ratio computations stay exponent-safe.
struct GeometricDiagInstance {
    std::vector<long> lambda_exp; // a_j
    std::vector<long> mu_exp;     // b_j (|mu_j| = 2^{b_j})

    std::vector<double> lambda() const; // 2^{a_j}; +inf past the double range
    std::vector<double> mu() const;     // -2^{b_j}
    /// R = { t_jk / (lambda_j - mu_k) }, lower-triangular-ones t; n <= 20.
    ComplexMatrix r_matrix() const;

    /// Divided differences m_jk = (|lambda_j| - |mu_k|)/(lambda_j - mu_k),
    /// computed from exponent differences (any n).
    ComplexMatrix divided_difference_matrix() const;

    /// ||f(A)R - Rf(B)|| / ||AR - RB|| for f = |t|: equals
    /// ||M * T|| / ||T|| with T the lower-triangular all-ones pattern.
    double abs_ratio() const;
};

GeometricDiagInstance geometric_diag_instance(std::size_t n);

// ----- Gap table (Omega vs Omega^flat for f = e^{i sigma t}) -----

struct GapRow {
    double delta = 0.0;
    double omega_lower_pair = 0.0;  // searched
    double omega_upper_pair = 0.0;  // 2 sin(sigma delta / 2), delta <= pi/sigma
    double omega_flat_lower = 0.0;  // phi/shift certificate, scaled
    double omega_flat_exact = 0.0;  // min(2, sigma delta)
};

struct GapDemo {
    double sigma = 1.0;
    std::vector<GapRow> rows;
    ModulusEstimate pair_estimate; // witnesses for the searched column
    PhiShiftInstance instance;
};

GapDemo gap_demo(double sigma, const std::vector<double>& delta_grid, std::size_t n_points,
                 double epsilon, std::size_t q, int budget, std::uint64_t seed);

// ----- Monotonicity refinement (delta -> delta^{-1} Omega^flat(delta)) -----

struct MonotonicityRefinement {
    std::size_t from_index = 0; // witness taken from delta_grid[from_index]
    std::size_t to_index = 0;   // re-scaled onto delta_grid[to_index]
    double scaled_bound = 0.0;
    double original_bound = 0.0;
    bool improved = false;
};

struct MonotonicityReport {
    std::vector<MonotonicityRefinement> refinements;
    /// Lower bounds after folding every valid scaled witness in.
    std::vector<double> refined_bounds;
};

/// For delta_1 < delta_2 any flavor-c witness at delta_2 scales (R -> tau R,
/// tau = delta_1/delta_2) to a valid delta_1 witness with value tau * bound.
/// Pair-flavor estimates get no refinement (the paper leaves that open).
MonotonicityReport monotonicity_check(const ScalarFunction& f, const ModulusEstimate& estimates);

} // namespace opmod
