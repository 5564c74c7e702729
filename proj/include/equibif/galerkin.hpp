#pragma once

#include <functional>

#include "equibif/analysis.hpp"
#include "equibif/continuation.hpp"

namespace equibif {

struct GalerkinOptions {
    Rational basis_cutoff = Rational(0);  // 0: derive from window/candidates
    int quad_points_per_axis = 0;         // 0: (2·deg F + 2)·(k_max + 1)
};

// Spectral Galerkin discretization of the energy functional in the cosine
// eigenbasis tensored with an A-eigenvector frame. Coefficients are stored
// mode-major: c[mode·p + j], u(x) = Σ c_{mj} v̂_m(x) f_j with L²-normalized
// spatial modes. In this frame the H¹ Gram matrix is diag(1 + β_m) and the
// linearization at the trivial solution is diagonal.
class GalerkinSystem : public ContinuationSystem {
public:
    struct Mode {
        std::vector<int> index;
        Rational beta;
        double beta_f = 0.0;
        double inv_l2norm = 0.0;  // 1/‖v_index‖_{L²}
    };

    GalerkinSystem(EllipticProblem problem, const GalerkinOptions& opts);

    int unknowns() const override { return m_; }
    Eigen::VectorXd residual(const Eigen::VectorXd& c, double lambda) const override;
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& c, double lambda) const override;
    Eigen::VectorXd residual_lambda(const Eigen::VectorXd& c, double lambda) const override;
    Eigen::VectorXd trivial_coefficients() const override { return trivial_; }
    double solution_norm(const Eigen::VectorXd& c) const override;  // discrete H¹
    int negative_eigenvalue_count(const Eigen::VectorXd& c, double lambda) const override;
    Eigen::VectorXd phase_row() const override { return phase_row_; }

    const EllipticProblem& problem() const { return problem_; }
    const std::vector<Mode>& modes() const { return modes_; }
    int components() const { return p_; }
    // α (frame eigenvalue) per component column
    const std::vector<double>& frame_alphas() const { return alpha_; }
    const Eigen::MatrixXd& frame() const { return frame_; }
    int quad_points_per_axis() const { return quad_per_axis_; }

    // L² (weak-form) and H¹-normalized linearization spectra at a point.
    struct SpectrumAtPoint {
        std::vector<double> weak;  // eigenvalues of the assembled Jacobian
        std::vector<double> h1;    // eigenvalues after the (1+β)^{-1/2} rescale
    };
    SpectrumAtPoint linearization_spectrum(const Eigen::VectorXd& c, double lambda) const;

    // Group action on coefficient vectors (blockwise per spatial mode).
    Eigen::VectorXd apply_group_element(const Eigen::VectorXd& c, int element) const;  // finite
    Eigen::VectorXd apply_rotation(const Eigen::VectorXd& c, double theta) const;      // circle

    // Coefficients of a kernel mode v_index · direction, H¹-normalized.
    Eigen::VectorXd kernel_mode_coefficients(const std::vector<int>& index,
                                             const Eigen::VectorXd& direction) const;

    // Quadrature of a scalar function over the box (used by tests).
    double integrate(const std::function<double(const Eigen::VectorXd&)>& f) const;

    // Projection norm of (c − trivial) onto modes outside the H-fixed frame
    // columns; stays small along branches started in the fixed subspace.
    double complement_component_norm(const Eigen::VectorXd& c) const;

private:
    EllipticProblem problem_;
    std::vector<Mode> modes_;
    int p_ = 0;
    int m_ = 0;
    Eigen::MatrixXd frame_;          // p×p, columns ordered tangent | fixed | complement
    std::vector<double> alpha_;      // per column
    std::vector<int> block_of_col_;  // 0 tangent, 1 fixed, 2 complement
    Eigen::MatrixXd quad_points_;    // Q×N
    Eigen::VectorXd quad_weights_;   // Q
    Eigen::MatrixXd basis_values_;   // Q×modes, v̂_m(x_q)
    Eigen::VectorXd trivial_;
    Eigen::VectorXd phase_row_;
    int quad_per_axis_ = 0;

    Eigen::MatrixXd coeff_matrix(const Eigen::VectorXd& c) const;  // modes×p view
    Eigen::VectorXd flatten(const Eigen::MatrixXd& cm) const;
};

struct BranchPredictor {
    Eigen::VectorXd coeffs;       // ũ0 ± δ·ψ
    Eigen::VectorXd direction;    // ψ (H¹-normalized)
    double lambda = 0.0;          // λ0 ± δλ on the side where dim W jumps
    double amplitude = 0.0;       // signed δ
    int kernel_index = 0;
    int sign = +1;
};

// Predictors along the H-fixed kernel directions at a flagged candidate.
// Throws on an empty kernel and rejects degenerate amplitudes.
std::vector<BranchPredictor> branch_switch(const GalerkinSystem& sys, const Rational& lambda0,
                                           double amplitude, double dlambda);

// First corrected point for a predictor: Newton with the amplitude pinned
// (λ free), falling back onto the bifurcating branch rather than the trivial
// family.
NewtonResult correct_predictor(const GalerkinSystem& sys, const BranchPredictor& pred,
                               const NewtonOptions& opts);

// True when the first points of the branches coincide after optimal group
// alignment (finite groups: all elements; circle: sampled angles).
bool branches_equivalent(const GalerkinSystem& sys, const Branch& a, const Branch& b, double tol = 1e-8);

// Default basis cutoff: 4·max|Λ∩window|·max|α| (at least the largest kernel
// eigenvalue plus one).
Rational default_basis_cutoff(const EllipticProblem& p, const Rational& window_lo,
                              const Rational& window_hi);

}  // namespace equibif
