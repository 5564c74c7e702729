#include "equibif/galerkin.hpp"

#include <algorithm>
#include <cmath>

#include "equibif/errors.hpp"

namespace equibif {

namespace {

// Gauss–Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

}  // namespace

GalerkinSystem::GalerkinSystem(EllipticProblem problem, const GalerkinOptions& opts)
    : problem_(std::move(problem)) {
    if (opts.basis_cutoff <= Rational(0))
        throw ContractViolation("Galerkin basis cutoff must be positive");
    const BoxDomain& box = problem_.domain;
    p_ = problem_.rep.dim;

    for (const auto& entry : neumann_spectrum(box, opts.basis_cutoff)) {
        for (const auto& index : entry.indices) {
            Mode m;
            m.index = index;
            m.beta = entry.value;
            m.beta_f = entry.value_float;
            m.inv_l2norm = 1.0 / std::sqrt(eigenfunction_norm_sq(box, index));
            modes_.push_back(std::move(m));
        }
    }
    m_ = static_cast<int>(modes_.size()) * p_;

    // component frame: orbit tangent, then W^H eigenvectors, then the rest
    frame_ = Eigen::MatrixXd(p_, p_);
    alpha_.clear();
    block_of_col_.clear();
    int col = 0;
    for (int i = 0; i < problem_.slice.p0; ++i, ++col) {
        frame_.col(col) = problem_.slice.tangent.col(i);
        alpha_.push_back(0.0);
        block_of_col_.push_back(0);
    }
    for (const auto& h : problem_.hessian_spectrum)
        for (int i = 0; i < h.mult_fixed; ++i, ++col) {
            frame_.col(col) = h.vectors_fixed.col(i);
            alpha_.push_back(h.numeric);
            block_of_col_.push_back(1);
        }
    for (const auto& h : problem_.hessian_spectrum)
        for (int i = 0; i < h.mult_complement; ++i, ++col) {
            frame_.col(col) = h.vectors_complement.col(i);
            alpha_.push_back(h.numeric);
            block_of_col_.push_back(2);
        }
    if (col != p_) throw NumericalError("component frame is incomplete");
    const double frame_defect =
        (frame_.transpose() * frame_ - Eigen::MatrixXd::Identity(p_, p_)).cwiseAbs().maxCoeff();
    if (frame_defect > 1e-9)
        throw NumericalError("component frame is not orthonormal (defect " + std::to_string(frame_defect) + ")");

    // tensor Gauss–Legendre grid
    int kdeg = std::max(2, problem_.potential.degree());
    std::vector<std::vector<double>> axis_nodes(box.dimension), axis_weights(box.dimension);
    quad_per_axis_ = opts.quad_points_per_axis;
    if (quad_per_axis_ <= 0) {
        int kmax = 0;
        for (const auto& m : modes_)
            for (int k : m.index) kmax = std::max(kmax, k);
        quad_per_axis_ = (2 * kdeg + 2) * (kmax + 1);
    }
    long long total = 1;
    for (int axis = 0; axis < box.dimension; ++axis) {
        std::vector<double> nodes, weights;
        gauss_legendre(quad_per_axis_, nodes, weights);
        const double L = box.side_length(axis);
        axis_nodes[axis].resize(quad_per_axis_);
        axis_weights[axis].resize(quad_per_axis_);
        for (int i = 0; i < quad_per_axis_; ++i) {
            axis_nodes[axis][i] = 0.5 * L * (nodes[i] + 1.0);
            axis_weights[axis][i] = 0.5 * L * weights[i];
        }
        total *= quad_per_axis_;
        if (total > 2000000) throw NumericalError("quadrature grid exceeds 2·10^6 points");
    }
    quad_points_ = Eigen::MatrixXd(total, box.dimension);
    quad_weights_ = Eigen::VectorXd(total);
    for (long long q = 0; q < total; ++q) {
        long long rest = q;
        double w = 1.0;
        for (int axis = 0; axis < box.dimension; ++axis) {
            const int i = static_cast<int>(rest % quad_per_axis_);
            rest /= quad_per_axis_;
            quad_points_(q, axis) = axis_nodes[axis][i];
            w *= axis_weights[axis][i];
        }
        quad_weights_(q) = w;
    }

    basis_values_ = Eigen::MatrixXd(total, modes_.size());
    for (long long q = 0; q < total; ++q)
        for (std::size_t m = 0; m < modes_.size(); ++m)
            basis_values_(q, m) =
                eigenfunction_value(box, modes_[m].index, quad_points_.row(q)) * modes_[m].inv_l2norm;

    // trivial solution coefficients: the constant function u0
    trivial_ = Eigen::VectorXd::Zero(m_);
    int const_mode = -1;
    for (std::size_t m = 0; m < modes_.size(); ++m)
        if (std::all_of(modes_[m].index.begin(), modes_[m].index.end(), [](int k) { return k == 0; }))
            const_mode = static_cast<int>(m);
    if (const_mode < 0) throw NumericalError("constant mode missing from the basis");
    const Eigen::VectorXd u0f = frame_.transpose() * problem_.base_point;
    for (int j = 0; j < p_; ++j) trivial_(const_mode * p_ + j) = u0f(j) / modes_[const_mode].inv_l2norm;

    // orbit-phase gauge row for the circle with a one-dimensional orbit
    if (!problem_.rep.group.is_finite() && problem_.slice.p0 == 1) {
        const Eigen::VectorXd t0 = problem_.rep.infinitesimal_generator() * problem_.base_point;
        Eigen::VectorXd row = Eigen::VectorXd::Zero(m_);
        const Eigen::VectorXd t0f = frame_.transpose() * t0;
        for (int j = 0; j < p_; ++j) row(const_mode * p_ + j) = t0f(j) / modes_[const_mode].inv_l2norm;
        phase_row_ = row.normalized();
    }
}

Eigen::MatrixXd GalerkinSystem::coeff_matrix(const Eigen::VectorXd& c) const {
    Eigen::MatrixXd cm(modes_.size(), p_);
    for (std::size_t m = 0; m < modes_.size(); ++m)
        for (int j = 0; j < p_; ++j) cm(m, j) = c(static_cast<int>(m) * p_ + j);
    return cm;
}

Eigen::VectorXd GalerkinSystem::flatten(const Eigen::MatrixXd& cm) const {
    Eigen::VectorXd c(m_);
    for (std::size_t m = 0; m < modes_.size(); ++m)
        for (int j = 0; j < p_; ++j) c(static_cast<int>(m) * p_ + j) = cm(m, j);
    return c;
}

Eigen::VectorXd GalerkinSystem::residual(const Eigen::VectorXd& c, double lambda) const {
    const Eigen::MatrixXd cm = coeff_matrix(c);
    const Eigen::MatrixXd u_std = basis_values_ * cm * frame_.transpose();  // Q×p
    Eigen::MatrixXd g(u_std.rows(), p_);
    for (Eigen::Index q = 0; q < u_std.rows(); ++q)
        g.row(q) = problem_.potential.gradient(u_std.row(q).transpose(), lambda).transpose();
    const Eigen::MatrixXd nonlinear =
        basis_values_.transpose() * (quad_weights_.asDiagonal() * (g * frame_));
    Eigen::MatrixXd r(modes_.size(), p_);
    for (std::size_t m = 0; m < modes_.size(); ++m)
        r.row(m) = modes_[m].beta_f * cm.row(m) - nonlinear.row(m);
    return flatten(r);
}

Eigen::MatrixXd GalerkinSystem::jacobian(const Eigen::VectorXd& c, double lambda) const {
    const Eigen::MatrixXd cm = coeff_matrix(c);
    const Eigen::MatrixXd u_std = basis_values_ * cm * frame_.transpose();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m_, m_);
    const std::size_t nm = modes_.size();
    for (Eigen::Index q = 0; q < u_std.rows(); ++q) {
        const Eigen::MatrixXd hf =
            frame_.transpose() * problem_.potential.hessian(u_std.row(q).transpose(), lambda) * frame_;
        const double w = quad_weights_(q);
        for (std::size_t m = 0; m < nm; ++m) {
            const double bm = basis_values_(q, m);
            if (bm == 0.0) continue;
            for (std::size_t l = 0; l < nm; ++l) {
                const double f = w * bm * basis_values_(q, l);
                if (f == 0.0) continue;
                jac.block(static_cast<int>(m) * p_, static_cast<int>(l) * p_, p_, p_) -= f * hf;
            }
        }
    }
    for (std::size_t m = 0; m < nm; ++m)
        for (int j = 0; j < p_; ++j) jac(m * p_ + j, m * p_ + j) += modes_[m].beta_f;

    const double asym = (jac - jac.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
        throw NumericalError("assembled Jacobian is not symmetric (defect " + std::to_string(asym) + ")");
    return 0.5 * (jac + jac.transpose());
}

Eigen::VectorXd GalerkinSystem::residual_lambda(const Eigen::VectorXd& c, double lambda) const {
    const Eigen::MatrixXd cm = coeff_matrix(c);
    const Eigen::MatrixXd u_std = basis_values_ * cm * frame_.transpose();
    Eigen::MatrixXd g(u_std.rows(), p_);
    for (Eigen::Index q = 0; q < u_std.rows(); ++q)
        g.row(q) = problem_.potential.gradient_lambda(u_std.row(q).transpose(), lambda).transpose();
    const Eigen::MatrixXd nonlinear =
        basis_values_.transpose() * (quad_weights_.asDiagonal() * (g * frame_));
    return flatten(-nonlinear);
}

double GalerkinSystem::solution_norm(const Eigen::VectorXd& c) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < modes_.size(); ++m) {
        const double wm = 1.0 + modes_[m].beta_f;
        for (int j = 0; j < p_; ++j) {
            const double d = c(static_cast<int>(m) * p_ + j) - trivial_(static_cast<int>(m) * p_ + j);
            acc += wm * d * d;
        }
    }
    return std::sqrt(acc);
}

int GalerkinSystem::negative_eigenvalue_count(const Eigen::VectorXd& c, double lambda) const {
    const auto sp = linearization_spectrum(c, lambda);
    int count = 0;
    for (double v : sp.h1)
        if (v < -1e-10) ++count;
    return count;
}

GalerkinSystem::SpectrumAtPoint GalerkinSystem::linearization_spectrum(const Eigen::VectorXd& c,
                                                                       double lambda) const {
    const Eigen::MatrixXd jac = jacobian(c, lambda);
    Eigen::VectorXd dinv(m_);
    for (std::size_t m = 0; m < modes_.size(); ++m)
        for (int j = 0; j < p_; ++j)
            dinv(static_cast<int>(m) * p_ + j) = 1.0 / std::sqrt(1.0 + modes_[m].beta_f);
    SpectrumAtPoint out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> weak(jac);
    out.weak.assign(weak.eigenvalues().data(), weak.eigenvalues().data() + m_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> h1(dinv.asDiagonal() * jac * dinv.asDiagonal());
    out.h1.assign(h1.eigenvalues().data(), h1.eigenvalues().data() + m_);
    return out;
}

Eigen::VectorXd GalerkinSystem::apply_group_element(const Eigen::VectorXd& c, int element) const {
    const Eigen::MatrixXd r = frame_.transpose() * problem_.rep.matrix(element) * frame_;
    return flatten(coeff_matrix(c) * r.transpose());
}

Eigen::VectorXd GalerkinSystem::apply_rotation(const Eigen::VectorXd& c, double theta) const {
    const Eigen::MatrixXd r = frame_.transpose() * problem_.rep.circle_matrix(theta) * frame_;
    return flatten(coeff_matrix(c) * r.transpose());
}

Eigen::VectorXd GalerkinSystem::kernel_mode_coefficients(const std::vector<int>& index,
                                                         const Eigen::VectorXd& direction) const {
    int mode = -1;
    for (std::size_t m = 0; m < modes_.size(); ++m)
        if (modes_[m].index == index) mode = static_cast<int>(m);
    if (mode < 0) throw ContractViolation("kernel mode is not contained in the Galerkin basis");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m_);
    const Eigen::VectorXd df = frame_.transpose() * direction;
    for (int j = 0; j < p_; ++j) c(mode * p_ + j) = df(j) / modes_[mode].inv_l2norm;
    // H¹ normalization
    const double h1 = std::sqrt((1.0 + modes_[mode].beta_f)) * c.segment(mode * p_, p_).norm();
    return c / h1;
}

double GalerkinSystem::integrate(const std::function<double(const Eigen::VectorXd&)>& f) const {
    double acc = 0.0;
    for (Eigen::Index q = 0; q < quad_points_.rows(); ++q)
        acc += quad_weights_(q) * f(quad_points_.row(q).transpose());
    return acc;
}

double GalerkinSystem::complement_component_norm(const Eigen::VectorXd& v) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < modes_.size(); ++m)
        for (int j = 0; j < p_; ++j)
            if (block_of_col_[j] == 2) {
                const double d = v(static_cast<int>(m) * p_ + j);
                acc += d * d;
            }
    return std::sqrt(acc);
}

std::vector<BranchPredictor> branch_switch(const GalerkinSystem& sys, const Rational& lambda0,
                                           double amplitude, double dlambda) {
    if (amplitude <= 0.0) throw ContractViolation("degenerate predictor amplitude rejected");
    const KernelInfo kernel = kernel_fixed_dimension(sys.problem(), lambda0);
    if (kernel.fixed_basis.empty())
        throw ContractViolation("empty fixed kernel at lambda0 = " + to_string(lambda0));

    // side where the negative space grows: λ0 > 0 pairs have α > 0 (right),
    // λ0 < 0 pairs have α < 0 (left); at λ0 = 0 compare both gains
    int gain_plus = 0, gain_minus = 0;
    for (const auto& kv : kernel.basis) {
        const int d = static_cast<int>(kv.spatial_indices.size());
        if (kv.alpha > Rational(0))
            gain_plus += d;
        else if (kv.alpha < Rational(0))
            gain_minus += d;
    }
    const int side = gain_plus >= gain_minus ? +1 : -1;

    std::vector<BranchPredictor> out;
    int counter = 0;
    const Eigen::VectorXd trivial = sys.trivial_coefficients();
    for (const auto& kv : kernel.fixed_basis) {
        for (const auto& index : kv.spatial_indices) {
            const Eigen::VectorXd psi = sys.kernel_mode_coefficients(index, kv.component_direction);
            for (int sign : {+1, -1}) {
                BranchPredictor bp;
                bp.direction = psi;
                bp.amplitude = sign * amplitude;
                bp.coeffs = trivial + bp.amplitude * psi;
                bp.lambda = to_double(lambda0) + side * dlambda;
                bp.kernel_index = counter;
                bp.sign = sign;
                out.push_back(std::move(bp));
            }
            ++counter;
        }
    }
    return out;
}

NewtonResult correct_predictor(const GalerkinSystem& sys, const BranchPredictor& pred,
                               const NewtonOptions& opts) {
    const double target = pred.direction.dot(sys.trivial_coefficients()) + pred.amplitude;
    return newton_correct_constrained(sys, pred.coeffs, pred.lambda, pred.direction, 0.0, target, opts);
}

bool branches_equivalent(const GalerkinSystem& sys, const Branch& a, const Branch& b, double tol) {
    if (a.points.empty() || b.points.empty()) return false;
    const BranchPoint& pa = a.points.front();
    const BranchPoint& pb = b.points.front();
    if (std::abs(pa.lambda - pb.lambda) > 1e-6 * (1.0 + std::abs(pb.lambda))) return false;
    const double scale = 1.0 + pb.coeffs.norm();
    double best = (pa.coeffs - pb.coeffs).norm();
    if (sys.problem().rep.group.is_finite()) {
        for (int g = 0; g < sys.problem().rep.group.order; ++g)
            best = std::min(best, (sys.apply_group_element(pa.coeffs, g) - pb.coeffs).norm());
    } else {
        for (int k = 0; k < 256; ++k)
            best = std::min(best, (sys.apply_rotation(pa.coeffs, 2.0 * M_PI * k / 256.0) - pb.coeffs).norm());
    }
    return best <= tol * scale;
}

Rational default_basis_cutoff(const EllipticProblem& p, const Rational& window_lo,
                              const Rational& window_hi) {
    const auto candidates = bifurcation_candidates(p, window_lo, window_hi);
    Rational max_abs_lambda(0);
    for (const auto& c : candidates) {
        const Rational a = c.lambda0 >= Rational(0) ? c.lambda0 : -c.lambda0;
        if (a > max_abs_lambda) max_abs_lambda = a;
    }
    Rational cutoff = Rational(4) * max_abs_lambda * p.max_abs_alpha();
    // always keep at least the kernel modes plus a margin
    for (const auto& c : candidates)
        for (const auto& [alpha, beta] : c.pairs)
            if (beta + Rational(1) > cutoff) cutoff = beta + Rational(1);
    if (cutoff < Rational(1)) cutoff = Rational(1);
    return cutoff;
}

}  // namespace equibif
