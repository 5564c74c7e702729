#include "equibif/representation.hpp"

#include <cmath>
#include <numeric>

#include "equibif/errors.hpp"

namespace equibif {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kFixTol = 1e-10;

void check_orthogonal(const Eigen::MatrixXd& m, int element) {
    const int p = static_cast<int>(m.rows());
    if (m.cols() != p) throw ValidationError("representation matrix is not square");
    if (p == 0) return;
    const double err = (m.transpose() * m - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff();
    if (err > kOrthoTol)
        throw ValidationError("representation matrix for element " + std::to_string(element) +
                              " is not orthogonal (defect " + std::to_string(err) + ")");
}

}  // namespace

OrthogonalRepresentation OrthogonalRepresentation::finite_from_generators(
    const GroupDescriptor& g, const std::vector<std::pair<int, Eigen::MatrixXd>>& generators) {
    if (!g.is_finite()) throw ValidationError("generator matrices require a finite group");
    int p = -1;
    for (const auto& [el, m] : generators) {
        if (el < 0 || el >= g.order) throw ValidationError("generator element index out of range");
        if (p < 0) p = static_cast<int>(m.rows());
        if (m.rows() != p || m.cols() != p)
            throw ValidationError("generator matrices have inconsistent dimensions");
    }
    if (p < 0) p = 0;

    std::vector<Eigen::MatrixXd> mats(g.order);
    std::vector<char> have(g.order, 0);
    mats[g.identity] = Eigen::MatrixXd::Identity(p, p);
    have[g.identity] = 1;
    for (const auto& [el, m] : generators) {
        if (have[el] && (mats[el] - m).cwiseAbs().maxCoeff() > kOrthoTol)
            throw ValidationError("conflicting generator matrices for element " + std::to_string(el));
        mats[el] = m;
        have[el] = 1;
    }
    // grow the known set by multiplying with generators on either side
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < g.order; ++a) {
            if (!have[a]) continue;
            for (const auto& [el, m] : generators) {
                const int ae = g.op(a, el);
                if (!have[ae]) {
                    mats[ae] = mats[a] * m;
                    have[ae] = 1;
                    grew = true;
                }
                const int ea = g.op(el, a);
                if (!have[ea]) {
                    mats[ea] = m * mats[a];
                    have[ea] = 1;
                    grew = true;
                }
            }
        }
    }
    for (int a = 0; a < g.order; ++a)
        if (!have[a])
            throw ValidationError("generators do not generate the group (element " + std::to_string(a) +
                                  " unreachable)");
    return finite_from_matrices(g, std::move(mats));
}

OrthogonalRepresentation OrthogonalRepresentation::finite_from_matrices(const GroupDescriptor& g,
                                                                        std::vector<Eigen::MatrixXd> all) {
    if (!g.is_finite()) throw ValidationError("matrix list requires a finite group");
    if (static_cast<int>(all.size()) != g.order)
        throw ValidationError("representation needs one matrix per group element");
    OrthogonalRepresentation rep;
    rep.group = g;
    rep.dim = all.empty() ? 0 : static_cast<int>(all[0].rows());
    rep.matrices = std::move(all);
    for (int a = 0; a < g.order; ++a) check_orthogonal(rep.matrices[a], a);
    if (rep.dim > 0) {
        for (int a = 0; a < g.order; ++a)
            for (int b = 0; b < g.order; ++b) {
                const double err =
                    (rep.matrices[a] * rep.matrices[b] - rep.matrices[g.op(a, b)]).cwiseAbs().maxCoeff();
                if (err > kOrthoTol)
                    throw ValidationError("matrices do not respect the multiplication table at (" +
                                          std::to_string(a) + "," + std::to_string(b) + ")");
            }
    }
    return rep;
}

OrthogonalRepresentation OrthogonalRepresentation::circle_rep(std::vector<int> w, int trivial) {
    for (int m : w)
        if (m < 1) throw ValidationError("circle weights must be positive integers");
    if (trivial < 0) throw ValidationError("trivial block count must be nonnegative");
    OrthogonalRepresentation rep;
    rep.group = GroupDescriptor::circle();
    rep.weights = std::move(w);
    rep.trivial_blocks = trivial;
    rep.dim = 2 * static_cast<int>(rep.weights.size()) + trivial;
    return rep;
}

OrthogonalRepresentation OrthogonalRepresentation::trivial_rep(const GroupDescriptor& g, int dim) {
    if (g.is_finite()) {
        std::vector<Eigen::MatrixXd> mats(g.order, Eigen::MatrixXd::Identity(dim, dim));
        return finite_from_matrices(g, std::move(mats));
    }
    return circle_rep({}, dim);
}

OrthogonalRepresentation OrthogonalRepresentation::coset_permutation(const GroupDescriptor& g,
                                                                     const Subgroup& h) {
    if (!g.is_finite()) throw ValidationError("coset permutation representation requires a finite group");
    const auto reps = left_coset_representatives(g, h);
    const int n = static_cast<int>(reps.size());
    // coset index lookup: element -> index of its coset
    std::vector<int> coset_of(g.order, -1);
    for (int i = 0; i < n; ++i)
        for (int s : h.elements) coset_of[g.op(reps[i], s)] = i;
    std::vector<Eigen::MatrixXd> mats(g.order, Eigen::MatrixXd::Zero(n, n));
    for (int a = 0; a < g.order; ++a)
        for (int i = 0; i < n; ++i) mats[a](coset_of[g.op(a, reps[i])], i) = 1.0;
    return finite_from_matrices(g, std::move(mats));
}

OrthogonalRepresentation OrthogonalRepresentation::direct_sum(const OrthogonalRepresentation& a,
                                                              const OrthogonalRepresentation& b) {
    if (a.group.kind != b.group.kind)
        throw ValidationError("direct sum requires representations of the same group");
    if (a.group.kind == GroupKind::Finite) {
        if (a.group.order != b.group.order || a.group.mul != b.group.mul)
            throw ValidationError("direct sum requires representations of the same group");
        std::vector<Eigen::MatrixXd> mats(a.group.order);
        const int p = a.dim + b.dim;
        for (int g = 0; g < a.group.order; ++g) {
            mats[g] = Eigen::MatrixXd::Zero(p, p);
            mats[g].topLeftCorner(a.dim, a.dim) = a.matrices[g];
            mats[g].bottomRightCorner(b.dim, b.dim) = b.matrices[g];
        }
        return finite_from_matrices(a.group, std::move(mats));
    }
    std::vector<int> w = a.weights;
    w.insert(w.end(), b.weights.begin(), b.weights.end());
    return circle_rep(std::move(w), a.trivial_blocks + b.trivial_blocks);
}

Eigen::MatrixXd OrthogonalRepresentation::circle_matrix(double theta) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    int at = 0;
    for (int w : weights) {
        const double c = std::cos(w * theta), s = std::sin(w * theta);
        m(at, at) = c;
        m(at, at + 1) = -s;
        m(at + 1, at) = s;
        m(at + 1, at + 1) = c;
        at += 2;
    }
    for (int i = 0; i < trivial_blocks; ++i) m(at + i, at + i) = 1.0;
    return m;
}

Eigen::MatrixXd OrthogonalRepresentation::infinitesimal_generator() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    int at = 0;
    for (int w : weights) {
        m(at, at + 1) = -w;
        m(at + 1, at) = w;
        at += 2;
    }
    return m;
}

Eigen::MatrixXd averaging_projector(const OrthogonalRepresentation& rep, const Subgroup& h) {
    const int p = rep.dim;
    if (rep.group.is_finite()) {
        if (h.kind != GroupKind::Finite) throw ContractViolation("subgroup kind does not match group");
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
        for (int x : h.elements) acc += rep.matrix(x);
        return acc / static_cast<double>(h.elements.size());
    }
    if (h.kind != GroupKind::Circle) throw ContractViolation("subgroup kind does not match group");
    if (h.is_full_circle()) {
        // exact average over the whole circle: rotation blocks integrate to zero
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
        const int at = 2 * static_cast<int>(rep.weights.size());
        for (int i = 0; i < rep.trivial_blocks; ++i) m(at + i, at + i) = 1.0;
        return m;
    }
    // exact average over Z_m: a weight-w block survives iff m | w
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p, p);
    int at = 0;
    for (int w : rep.weights) {
        if (w % h.circle_order == 0) {
            m(at, at) = 1.0;
            m(at + 1, at + 1) = 1.0;
        }
        at += 2;
    }
    for (int i = 0; i < rep.trivial_blocks; ++i) m(at + i, at + i) = 1.0;
    return m;
}

FixedSubspace fixed_subspace(const OrthogonalRepresentation& rep, const Subgroup& h) {
    const int p = rep.dim;
    FixedSubspace out;
    if (p == 0) {
        out.basis = Eigen::MatrixXd(0, 0);
        return out;
    }

    if (!rep.group.is_finite()) {
        // exact: weight-w block fixed by Z_m iff m | w; full circle fixes only
        // trivial blocks
        std::vector<int> cols;
        int at = 0;
        for (int w : rep.weights) {
            const bool fixed = !h.is_full_circle() && (w % h.circle_order == 0);
            if (fixed) {
                cols.push_back(at);
                cols.push_back(at + 1);
            }
            at += 2;
        }
        for (int i = 0; i < rep.trivial_blocks; ++i) cols.push_back(at + i);
        out.dimension = static_cast<int>(cols.size());
        out.basis = Eigen::MatrixXd::Zero(p, out.dimension);
        for (int i = 0; i < out.dimension; ++i) out.basis(cols[i], i) = 1.0;
        return out;
    }

    const Eigen::MatrixXd proj = averaging_projector(rep, h);
    const double tr = proj.trace();
    const double rounded = std::round(tr);
    if (std::abs(tr - rounded) > 1e-6)
        throw NumericalError("averaging projector trace " + std::to_string(tr) +
                             " is not close to an integer (numerical degeneracy)");
    const int k = static_cast<int>(rounded);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
    int near_one = 0;
    for (int i = 0; i < p; ++i) {
        const double ev = es.eigenvalues()(i);
        if (std::abs(ev - 1.0) < 1e-6)
            ++near_one;
        else if (std::abs(ev) > 1e-6)
            throw NumericalError("averaging projector eigenvalue " + std::to_string(ev) +
                                 " is neither 0 nor 1");
    }
    if (near_one != k)
        throw NumericalError("projector rank/trace mismatch: trace " + std::to_string(k) + ", rank " +
                             std::to_string(near_one));
    out.dimension = k;
    out.basis = es.eigenvectors().rightCols(k);  // eigenvalues ascending
    return out;
}

Subgroup isotropy_group(const OrthogonalRepresentation& rep, const Eigen::VectorXd& u0) {
    if (rep.group.is_finite()) {
        std::vector<int> elems;
        for (int a = 0; a < rep.group.order; ++a)
            if ((rep.matrix(a) * u0 - u0).norm() < kFixTol) elems.push_back(a);
        return Subgroup::finite(std::move(elems));
    }
    // circle: Z_d with d = gcd of weights over blocks where u0 is nonzero;
    // full circle when u0 only touches trivial blocks
    int d = 0;
    int at = 0;
    for (int w : rep.weights) {
        if (u0.segment(at, 2).norm() > 1e-12) d = std::gcd(d, w);
        at += 2;
    }
    if (d == 0) return Subgroup::circle_full();
    return Subgroup::circle_cyclic(d);
}

Eigen::MatrixXd orbit_tangent(const OrthogonalRepresentation& rep, const Eigen::VectorXd& u0) {
    if (rep.group.is_finite()) return Eigen::MatrixXd(rep.dim, 0);
    Eigen::VectorXd t = rep.infinitesimal_generator() * u0;
    if (t.norm() < 1e-12) return Eigen::MatrixXd(rep.dim, 0);
    return t.normalized();
}

SlicePackage build_slice(const OrthogonalRepresentation& rep, const Eigen::VectorXd& u0) {
    if (u0.size() != rep.dim) throw ContractViolation("base point dimension does not match representation");
    SlicePackage s;
    s.base_point = u0;
    s.isotropy = isotropy_group(rep, u0);
    s.tangent = orbit_tangent(rep, u0);
    s.p0 = static_cast<int>(s.tangent.cols());

    const int p = rep.dim;
    // slice = orthogonal complement of the tangent space
    Eigen::MatrixXd slice;
    if (s.p0 == 0) {
        slice = Eigen::MatrixXd::Identity(p, p);
    } else {
        Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(p, p) - s.tangent * s.tangent.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
        slice = es.eigenvectors().rightCols(p - s.p0);
    }
    s.slice = slice;

    // split the slice into H-fixed part and its complement
    const Eigen::MatrixXd ph = averaging_projector(rep, s.isotropy);
    const Eigen::MatrixXd small = slice.transpose() * ph * slice;  // projector acting on the slice
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
    int p1 = 0;
    for (int i = 0; i < small.rows(); ++i) {
        const double ev = es.eigenvalues()(i);
        if (std::abs(ev - 1.0) < 1e-6)
            ++p1;
        else if (std::abs(ev) > 1e-6)
            throw NumericalError("slice projector eigenvalue " + std::to_string(ev) + " is neither 0 nor 1");
    }
    s.p1 = p1;
    s.p2 = p - s.p0 - p1;
    s.fixed_slice = slice * es.eigenvectors().rightCols(p1);
    s.fixed_slice_complement = slice * es.eigenvectors().leftCols(s.p2);

    // every fixed-slice column must be H-fixed
    if (s.p1 > 0) {
        const double defect = (ph * s.fixed_slice - s.fixed_slice).cwiseAbs().maxCoeff();
        if (defect > kFixTol)
            throw NumericalError("fixed-slice basis is not H-fixed (defect " + std::to_string(defect) + ")");
    }
    return s;
}

}  // namespace equibif
