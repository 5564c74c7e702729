#include "equibif/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "equibif/errors.hpp"

namespace equibif {

namespace {

BranchPoint make_point(const ContinuationSystem& sys, const Eigen::VectorXd& c, double lambda,
                       double residual) {
    BranchPoint p;
    p.coeffs = c;
    p.lambda = lambda;
    p.norm = sys.solution_norm(c);
    p.residual = residual;
    p.negative_count = sys.negative_eigenvalue_count(c, lambda);
    return p;
}

}  // namespace

NewtonResult newton_correct(const ContinuationSystem& sys, const Eigen::VectorXd& guess, double lambda,
                            const NewtonOptions& opts) {
    const int m = sys.unknowns();
    const Eigen::VectorXd phase = sys.phase_row();
    const bool gauged = phase.size() > 0;
    const int n = m + (gauged ? 1 : 0);
    const Eigen::VectorXd c0 = sys.trivial_coefficients();

    Eigen::VectorXd c = guess;
    double nu = 0.0;
    NewtonResult out;
    for (int it = 0; it <= opts.max_iter; ++it) {
        Eigen::VectorXd r = sys.residual(c, lambda);
        Eigen::VectorXd aug(n);
        aug.head(m) = gauged ? Eigen::VectorXd(r + nu * phase) : r;
        if (gauged) aug(m) = phase.dot(c - c0);
        const double rnorm = aug.norm();
        out.iterations = it;
        out.point = make_point(sys, c, lambda, rnorm);
        if (gauged) out.phase_residual = std::abs(phase.dot(c - c0));
        if (rnorm < opts.tol) {
            out.converged = true;
            return out;
        }
        if (it == opts.max_iter) break;

        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
        jac.topLeftCorner(m, m) = sys.jacobian(c, lambda);
        if (gauged) {
            jac.block(0, m, m, 1) = phase;
            jac.block(m, 0, 1, m) = phase.transpose();
        }
        Eigen::VectorXd delta = jac.fullPivLu().solve(-aug);
        if (!delta.allFinite()) break;
        c += delta.head(m);
        if (gauged) nu += delta(m);
    }
    return out;
}

NewtonResult newton_correct_constrained(const ContinuationSystem& sys, const Eigen::VectorXd& guess,
                                        double lambda_guess, const Eigen::VectorXd& row_c,
                                        double row_lambda, double target, const NewtonOptions& opts) {
    const int m = sys.unknowns();
    const Eigen::VectorXd phase = sys.phase_row();
    const bool gauged = phase.size() > 0;
    const int n = m + 1 + (gauged ? 1 : 0);
    const Eigen::VectorXd c0 = sys.trivial_coefficients();

    Eigen::VectorXd c = guess;
    double lambda = lambda_guess;
    double nu = 0.0;
    NewtonResult out;
    for (int it = 0; it <= opts.max_iter; ++it) {
        Eigen::VectorXd r = sys.residual(c, lambda);
        Eigen::VectorXd aug(n);
        aug.head(m) = gauged ? Eigen::VectorXd(r + nu * phase) : r;
        aug(m) = row_c.dot(c) + row_lambda * lambda - target;
        if (gauged) aug(m + 1) = phase.dot(c - c0);
        const double rnorm = aug.norm();
        out.iterations = it;
        out.point = make_point(sys, c, lambda, rnorm);
        if (gauged) out.phase_residual = std::abs(phase.dot(c - c0));
        if (rnorm < opts.tol) {
            out.converged = true;
            return out;
        }
        if (it == opts.max_iter) break;

        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
        jac.topLeftCorner(m, m) = sys.jacobian(c, lambda);
        jac.block(0, m, m, 1) = sys.residual_lambda(c, lambda);
        jac.block(m, 0, 1, m) = row_c.transpose();
        jac(m, m) = row_lambda;
        if (gauged) {
            jac.block(0, m + 1, m, 1) = phase;
            jac.block(m + 1, 0, 1, m) = phase.transpose();
        }
        Eigen::VectorXd delta = jac.fullPivLu().solve(-aug);
        if (!delta.allFinite()) break;
        c += delta.head(m);
        lambda += delta(m);
        if (gauged) nu += delta(m + 1);
    }
    return out;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::ReconnectedTrivial: return "ReconnectedTrivial";
        case Termination::ExitedNormBound: return "ExitedNormBound";
        case Termination::ExitedLambdaWindow: return "ExitedLambdaWindow";
        case Termination::StepLimit: return "StepLimit";
        case Termination::Stalled: return "Stalled";
    }
    return "Stalled";
}

namespace {

// Branch tangent: null-ish direction of [J, r_λ] selected by the previous
// direction (and the phase gauge when present).
Eigen::VectorXd branch_tangent(const ContinuationSystem& sys, const BranchPoint& at,
                               const Eigen::VectorXd& prev) {
    const int m = sys.unknowns();
    const Eigen::VectorXd phase = sys.phase_row();
    const bool gauged = phase.size() > 0;
    const int n = m + 1 + (gauged ? 1 : 0);

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    jac.topLeftCorner(m, m) = sys.jacobian(at.coeffs, at.lambda);
    jac.block(0, m, m, 1) = sys.residual_lambda(at.coeffs, at.lambda);
    jac.block(m, 0, 1, m) = prev.head(m).transpose();
    jac(m, m) = prev(m);
    if (gauged) {
        jac.block(0, m + 1, m, 1) = phase;
        jac.block(m + 1, 0, 1, m) = phase.transpose();
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(m) = 1.0;
    Eigen::VectorXd z = jac.fullPivLu().solve(rhs);
    Eigen::VectorXd t = z.head(m + 1);
    const double nrm = t.norm();
    if (!(nrm > 0.0) || !t.allFinite()) return prev;
    t /= nrm;
    if (t.dot(prev) < 0) t = -t;
    return t;
}

}  // namespace

Branch continue_branch(const ContinuationSystem& sys, const BranchPoint& start,
                       const Eigen::VectorXd& initial_direction, double initial_dlambda,
                       const ContinuationConfig& cfg) {
    const int m = sys.unknowns();
    Branch branch;
    branch.origin_lambda = start.lambda;
    branch.points.push_back(start);

    // extended current direction in (c, λ)
    Eigen::VectorXd prev(m + 1);
    prev.head(m) = initial_direction;
    prev(m) = initial_dlambda;
    if (prev.norm() == 0.0) prev(m) = 1.0;
    prev.normalize();

    BranchPoint current = start;
    double h = cfg.step_init;
    int successes = 0;
    // reconnect checks arm only after the branch has genuinely left the
    // trivial neighborhood
    bool armed = current.norm > 5.0 * cfg.reconnect_tol;

    for (int step = 0; step < cfg.max_steps; ++step) {
        const Eigen::VectorXd t = branch_tangent(sys, current, prev);
        const Eigen::VectorXd pred_c = current.coeffs + h * t.head(m);
        const double pred_l = current.lambda + h * t(m);
        Eigen::VectorXd ext(m + 1);
        ext.head(m) = pred_c;
        ext(m) = pred_l;
        auto res = newton_correct_constrained(sys, pred_c, pred_l, t.head(m), t(m), t.dot(ext), cfg.newton);
        if (!res.converged) {
            h *= 0.5;
            successes = 0;
            if (h < cfg.step_min) {
                branch.termination = Termination::Stalled;
                return branch;
            }
            continue;
        }
        current = res.point;
        prev = t;
        branch.points.push_back(current);
        if (++successes >= cfg.grow_after) {
            h = std::min(h * cfg.step_grow, cfg.step_max);
            successes = 0;
        }

        if (current.norm > cfg.norm_bound) {
            branch.termination = Termination::ExitedNormBound;
            return branch;
        }
        if (current.lambda < cfg.lambda_min || current.lambda > cfg.lambda_max) {
            branch.termination = Termination::ExitedLambdaWindow;
            return branch;
        }
        if (!armed && current.norm > 5.0 * cfg.reconnect_tol) armed = true;
        if (armed && current.norm < cfg.reconnect_tol) {
            double best = std::numeric_limits<double>::infinity();
            for (double l : cfg.candidate_lambdas) best = std::min(best, std::abs(l - current.lambda));
            if (best < cfg.lambda_tol) {
                branch.termination = Termination::ReconnectedTrivial;
                branch.reconnect_lambda = current.lambda;
                return branch;
            }
        }
    }
    branch.termination = Termination::StepLimit;
    return branch;
}

BranchClassification classify_branch(const Branch& b) {
    BranchClassification c;
    c.termination = b.termination;
    switch (b.termination) {
        case Termination::ReconnectedTrivial:
            c.consistent_with_alternative = true;
            c.description = "consistent: meets the trivial family at another candidate level";
            break;
        case Termination::ExitedNormBound:
            c.consistent_with_alternative = true;
            c.description = "consistent: unbounded within the norm box";
            break;
        case Termination::ExitedLambdaWindow:
            c.consistent_with_alternative = true;
            c.description = "consistent: leaves the lambda window";
            break;
        case Termination::StepLimit:
            c.consistent_with_alternative = false;
            c.description = "inconclusive numerics: step limit reached";
            break;
        case Termination::Stalled:
            c.consistent_with_alternative = false;
            c.description = "inconclusive numerics: steps collapsed below the minimum";
            break;
    }
    return c;
}

}  // namespace equibif
