#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhc/gates.hpp"
#include "qhc/linalg.hpp"

namespace qhc::schur {

/// H(input) = [[C(input), A], [Aᵀ, B]]. Columns of A are the coupling
/// vectors u(1..l); C is indexed by the most-significant-first input index.
struct BlockPartition {
    int input_arity = 0;
    std::vector<SymMatrix> C;
    Matrix A;
    SymMatrix B;

    std::size_t block_order() const { return C.empty() ? 0 : C.front().order(); }
    std::size_t output_count() const { return B.order(); }
};

/// Off-diagonal slot (i, j) driven by one input variable with unit coupling.
using InputSlot = std::pair<std::size_t, std::size_t>;

/// C(input) = C0 + Σ x_var·(E_ij + E_ji) over the given slots.
std::vector<SymMatrix> c_family(const SymMatrix& c0, std::span<const InputSlot> slots);

/// α at (0,1), β at (2,3): the 4×4 form solved in closed form.
std::vector<SymMatrix> half_adder_c_family(const SymMatrix& c00);
/// α at (0,1), β at (2,3), γ at (4,5): the 6×6 form of the full-adder solver.
std::vector<SymMatrix> full_adder_c_family(const SymMatrix& c000);

/// Throws Error(SingularC) when C(input) is not invertible.
SymMatrix schur_complement(const BlockPartition& p, std::uint32_t input);
SymMatrix assemble(const BlockPartition& p, std::uint32_t input);
gates::HamiltonianFn assembled_family(BlockPartition p);

/// C_a⁻¹ − C000⁻¹ through the projected update on `positions`. Throws
/// SingularProjection when the projected middle matrix is singular and
/// BadInput when C_a − C000 has support outside positions × positions.
SymMatrix woodbury_diff(const SymMatrix& c000, const SymMatrix& c_a, std::span<const std::size_t> positions);

/// Three residuals, all zero iff uC₁₁⁻¹v = uC₀₁⁻¹v = uC₁₀⁻¹v and vC₀₁⁻¹v = vC₁₀⁻¹v.
Vector residuals_half_adder(std::span<const SymMatrix> c_family, std::span<const double> u,
                            std::span<const double> v);

/// Eleven residuals: two for the uu equalities, two for vv, five for uv and
/// two for the t relations with t fitted by least squares.
Vector residuals_full_adder(std::span<const SymMatrix> c_family, std::span<const double> u,
                            std::span<const double> v);

struct HalfAdderParams {
    double v1 = 1.0;
    double v3 = 1.0;
    double u1 = 0.0;
    double r = 1.0;
    double s = 1.0;
    int branch = 0; ///< bit 0: root of v̂₂, bit 1: root of v̂₄ (0 = minus root)
};

/// Closed-form family solver for the 4×4 form. The result is validated:
/// residuals below 1e-8 and the assembled matrices realize the half adder
/// (carry read on state 4, sum on state 5). Throws NoRealRoot, SingularT,
/// DegenerateKernel or BadParams.
BlockPartition solve_half_adder(const SymMatrix& c00, const HalfAdderParams& params);

struct SchurAux {
    double q = 0, r = 0, s = 0, t = 0;
    double lambda = 0, sigma = 0, tau = 0;
    SymMatrix Q;
    SymMatrix Qprime;
    SymMatrix R;
    std::map<std::string, Matrix> T_sub; ///< keys "12", "34", "56", "1234", "1256", "3456"
};

enum class CandidateStatus { Valid, NoConvergence, NoRealRoot, SingularT, QrsDegenerate, ValidationFailed };
std::string_view status_name(CandidateStatus s);

struct FullAdderCandidate {
    int seed_index = 0;
    int branch = 0;
    Vector x0;
    Vector x; ///< (v̂₁, v̂₃, v̂₅) at exit
    int iterations = 0;
    double residual_norm = 0.0;       ///< |f|∞ of the reduced system
    double full_residual_norm = 0.0;  ///< |residuals_full_adder|∞ of the assembled (u, v)
    CandidateStatus status = CandidateStatus::NoConvergence;
    std::string message;
    std::optional<BlockPartition> partition;
    std::optional<SchurAux> aux;
};

struct FullAdderOptions {
    int seeds = 200;
    std::uint64_t rng_seed = 0;
    double seed_range = 2.0;
    double fd_step = 1e-6;
    int max_iterations = 200;
    double tol = 1e-10;
    double max_abs_x = 1e3;
    gates::VerifyOptions verify{0.05, 1e-8, true};
};

/// Newton run on the reduced 3-equation system from one starting point and
/// one branch combination (bit k selects the root for v̂_{2k+2}).
FullAdderCandidate solve_full_adder_from(const SymMatrix& c000, std::span<const double> x0, int branch,
                                         const FullAdderOptions& opt = {});

/// Every seed × branch run, ordered by (seed index, branch). Throws SingularC
/// when C000 is not invertible and SingularT when a projected block is.
std::vector<FullAdderCandidate> solve_full_adder(const SymMatrix& c000, const FullAdderOptions& opt = {});

/// Reduced residuals f(v̂₁, v̂₃, v̂₅) for a branch; exposed for tests.
Vector full_adder_reduced_residuals(const SymMatrix& c000, std::span<const double> x, int branch);

struct ConstraintCount {
    int equations = 0;
    int variables = 0;
    int symmetry = 0;
    int output_compatibility = 0;
    int input_compatibility = 0;
    std::map<std::string, int> class_multiplicity; ///< output string → number of inputs
};

/// Tally for the n-bit adder with one 2×2 block per input bit.
ConstraintCount count_constraints(int n);
inline ConstraintCount count_constraints_2bit() { return count_constraints(2); }

} // namespace qhc::schur
