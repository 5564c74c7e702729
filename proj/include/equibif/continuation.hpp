#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace equibif {

// Square nonlinear system r(c, λ) = 0 traced by the pseudo-arclength engine.
// The Galerkin discretization implements this; tests drive the engine with
// synthetic systems as well.
class ContinuationSystem {
public:
    virtual ~ContinuationSystem() = default;
    virtual int unknowns() const = 0;
    virtual Eigen::VectorXd residual(const Eigen::VectorXd& c, double lambda) const = 0;
    virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& c, double lambda) const = 0;
    virtual Eigen::VectorXd residual_lambda(const Eigen::VectorXd& c, double lambda) const = 0;
    virtual Eigen::VectorXd trivial_coefficients() const = 0;
    // distance to the trivial family in the solution norm
    virtual double solution_norm(const Eigen::VectorXd& c) const = 0;
    virtual int negative_eigenvalue_count(const Eigen::VectorXd& c, double lambda) const = 0;
    // orbit-phase gauge row (empty when the symmetry group is finite)
    virtual Eigen::VectorXd phase_row() const { return Eigen::VectorXd(); }
};

struct BranchPoint {
    Eigen::VectorXd coeffs;
    double lambda = 0.0;
    double norm = 0.0;      // ‖u − ũ0‖
    double residual = 0.0;  // augmented residual after correction
    int negative_count = 0;
};

struct NewtonOptions {
    double tol = 1e-10;
    int max_iter = 25;
};

struct NewtonResult {
    bool converged = false;
    BranchPoint point;  // last iterate when not converged
    int iterations = 0;
    double phase_residual = 0.0;
};

// Correct at fixed λ (with the phase gauge when present).
NewtonResult newton_correct(const ContinuationSystem& sys, const Eigen::VectorXd& guess, double lambda,
                            const NewtonOptions& opts);

// Correct with one extra scalar constraint <row_c, c> + row_lambda·λ = target
// and λ free; used for arclength steps and amplitude-pinned branch switching.
NewtonResult newton_correct_constrained(const ContinuationSystem& sys, const Eigen::VectorXd& guess,
                                        double lambda_guess, const Eigen::VectorXd& row_c,
                                        double row_lambda, double target, const NewtonOptions& opts);

enum class Termination { ReconnectedTrivial, ExitedNormBound, ExitedLambdaWindow, StepLimit, Stalled };
std::string to_string(Termination t);

struct Branch {
    double origin_lambda = 0.0;
    int kernel_index = 0;  // which predictor spawned the branch
    int sign = +1;
    std::vector<BranchPoint> points;
    Termination termination = Termination::Stalled;
    std::optional<double> reconnect_lambda;
};

struct ContinuationConfig {
    NewtonOptions newton;
    double step_init = 1e-2;
    double step_min = 1e-5;
    double step_max = 0.5;
    double step_grow = 1.3;
    int grow_after = 3;
    int max_steps = 1000;
    double norm_bound = 50.0;
    double lambda_min = -10.0;
    double lambda_max = 10.0;
    double reconnect_tol = 1e-3;
    double lambda_tol = 1e-3;
    std::vector<double> candidate_lambdas;  // Λ within the window, for reconnect checks
};

// Pseudo-arclength predictor/corrector with adaptive steps; every accepted
// point satisfies the Newton tolerance. All outcomes are statuses.
Branch continue_branch(const ContinuationSystem& sys, const BranchPoint& start,
                       const Eigen::VectorXd& initial_direction, double initial_dlambda,
                       const ContinuationConfig& cfg);

struct BranchClassification {
    Termination termination;
    bool consistent_with_alternative = false;
    std::string description;
};
BranchClassification classify_branch(const Branch& b);

}  // namespace equibif
