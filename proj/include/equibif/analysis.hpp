#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "equibif/representation.hpp"
#include "equibif/spectrum.hpp"

namespace equibif {

// One term c · u_1^{e_1}···u_p^{e_p} · λ^m with a rational coefficient.
struct Monomial {
    Rational coeff;
    std::vector<int> exponents;
    int lambda_power = 0;
};

// F(u, λ) as a finite list of monomials; gradients and hessians are formal
// and exact at rational points.
struct PolynomialPotential {
    int dim = 0;
    std::vector<Monomial> monomials;

    double eval(const Eigen::VectorXd& u, double lambda) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& u, double lambda) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& u, double lambda) const;
    // ∂/∂λ of the gradient (for continuation).
    Eigen::VectorXd gradient_lambda(const Eigen::VectorXd& u, double lambda) const;

    PolynomialPotential derivative(int var) const;
    std::vector<Rational> gradient_exact(const std::vector<Rational>& u, const Rational& lambda) const;
    std::vector<std::vector<Rational>> hessian_exact(const std::vector<Rational>& u,
                                                     const Rational& lambda) const;
    // Splits off the part with the given λ-power (coefficients keep u-exponents).
    PolynomialPotential lambda_part(int power) const;
    // Substitutes u -> u + shift (exact multinomial expansion).
    PolynomialPotential shifted(const std::vector<Rational>& shift) const;
    int max_lambda_power() const;
    int degree() const;  // total degree in u
};

// Eigenvalue of the potential hessian A at the base point, classified
// against the slice splitting. `exact` marks values certified by rational
// rank computation; these participate in exact Λ arithmetic.
struct HessianEigenvalue {
    Rational value;
    bool exact = false;
    double numeric = 0.0;
    int mult_total = 0;
    int mult_tangent = 0;     // kernel directions along the orbit
    int mult_fixed = 0;       // μ_B: multiplicity inside W^H
    int mult_complement = 0;  // μ_C
    Eigen::MatrixXd vectors;             // p × mult_total, orthonormal
    Eigen::MatrixXd vectors_fixed;       // p × mult_fixed, basis of eigenspace ∩ W^H
    Eigen::MatrixXd vectors_complement;  // p × mult_complement
};

struct EllipticProblem {
    BoxDomain domain;
    OrthogonalRepresentation rep;
    PolynomialPotential potential;
    std::vector<Rational> base_point_exact;
    Eigen::VectorXd base_point;
    SlicePackage slice;

    Eigen::MatrixXd hessian_at_base;                     // A = ∇²F(u0, 1)
    std::vector<std::vector<Rational>> hessian_exact;    // same, exact
    std::vector<HessianEigenvalue> hessian_spectrum;     // classified clusters

    Rational max_abs_alpha() const;
    const BoxDomain& box() const { return domain; }
};

// Validates (a2), (a4), (a5) and assembles the derived data. Optionally the
// config may declare the rational spectrum of A; declared values are verified
// against the numeric solve and the exact matrix.
EllipticProblem make_problem(BoxDomain domain, OrthogonalRepresentation rep, PolynomialPotential pot,
                             std::vector<Rational> base_point,
                             const std::vector<Rational>& declared_spectrum = {});

// F(u, λ) = λ/2 (Au,u) − λ(Au0,u) + F0(u−u0, λ); returns A and F0 with
// exact assertions that F0 has vanishing gradient and hessian at 0.
struct PotentialDecomposition {
    std::vector<std::vector<Rational>> quadratic_matrix;  // A, exact
    PolynomialPotential remainder;                        // F0 (argument is u−u0)
};
PotentialDecomposition decompose_potential(const PolynomialPotential& pot,
                                           const std::vector<Rational>& u0);

// Projections of A onto the fixed slice and its complement, with a zero-check
// on the tangent block.
struct BlockDecomposition {
    Eigen::MatrixXd fixed_block;       // B(u0), p1×p1
    Eigen::MatrixXd complement_block;  // C(u0), p2×p2
    std::vector<double> fixed_eigenvalues;
    std::vector<double> complement_eigenvalues;
};
BlockDecomposition block_decompose(const Eigen::MatrixXd& a, const SlicePackage& slice);

// Spectrum of Id − L_{λA} on the retained modes: values (β−λα)/(1+β).
struct OperatorSpectrumEntry {
    Rational value;
    Rational alpha;
    Rational beta;
    int multiplicity = 0;  // μ_A(α) · dim V_{-Δ}(β)
};
struct OperatorSpectrum {
    std::vector<OperatorSpectrumEntry> entries;  // ascending by value
    int dim_negative_total = 0;                  // dim W(λ)
    int dim_negative_fixed = 0;                  // contribution of σ(B)
    int dim_negative_complement = 0;             // contribution of σ(C)
};
OperatorSpectrum operator_spectrum(const EllipticProblem& p, const Rational& lambda,
                                   const Rational& cutoff);

struct CriterionTerm {
    Rational b;      // eigenvalue of B(u0)
    Rational beta;   // matching Laplace eigenvalue λ0·b
    int mu_B = 0;
    int dim_V_beta = 0;
};

struct KernelVector {
    Eigen::VectorXd component_direction;  // eigenvector of A
    Rational alpha;
    Rational beta;
    std::vector<std::vector<int>> spatial_indices;  // multi-indices of the β eigenspace
    bool fixed_by_isotropy = false;
};

struct KernelInfo {
    int dim_V = 0;    // degeneracy beyond the orbit directions
    int dim_VH = 0;   // its H-fixed part
    std::vector<KernelVector> basis;        // full kernel directions
    std::vector<KernelVector> fixed_basis;  // restricted to W^H directions
};
KernelInfo kernel_fixed_dimension(const EllipticProblem& p, const Rational& lambda0);

enum class Verdict { GlobalBifurcation, Inconclusive };
std::string to_string(Verdict v);

struct BifurcationCertificate {
    Verdict verdict = Verdict::Inconclusive;
    int criterion_sum = 0;
    std::vector<CriterionTerm> terms;
    KernelInfo kernel;
};
// λ0 must belong to Λ (contract violation otherwise).
BifurcationCertificate global_bifurcation_test(const EllipticProblem& p, const Rational& lambda0);

struct CandidatePoint {
    Rational lambda0;
    std::vector<std::pair<Rational, Rational>> pairs;  // (α_j, β_k) with β = λ0·α
    BifurcationCertificate certificate;
};
// Λ ∩ [lo, hi] with annotations and verdicts; enumerates as much spectrum as
// the window requires.
std::vector<CandidatePoint> bifurcation_candidates(const EllipticProblem& p, const Rational& lo,
                                                   const Rational& hi);

}  // namespace equibif
