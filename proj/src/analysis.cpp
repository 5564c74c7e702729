#include "equibif/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "equibif/errors.hpp"

namespace equibif {

namespace {

Rational rational_pow(const Rational& base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

double dpow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

// Exact rank by Gaussian elimination over the rationals.
int rational_rank(std::vector<std::vector<Rational>> m) {
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != Rational(0)) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][col] == Rational(0)) continue;
            const Rational f = m[r][col] / m[rank][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

double PolynomialPotential::eval(const Eigen::VectorXd& u, double lambda) const {
    double acc = 0.0;
    for (const auto& m : monomials) {
        double term = to_double(m.coeff) * dpow(lambda, m.lambda_power);
        for (int i = 0; i < dim; ++i) term *= dpow(u(i), m.exponents[i]);
        acc += term;
    }
    return acc;
}

PolynomialPotential PolynomialPotential::derivative(int var) const {
    PolynomialPotential out;
    out.dim = dim;
    for (const auto& m : monomials) {
        if (m.exponents[var] == 0) continue;
        Monomial d = m;
        d.coeff *= Rational(m.exponents[var]);
        d.exponents[var] -= 1;
        out.monomials.push_back(std::move(d));
    }
    return out;
}

Eigen::VectorXd PolynomialPotential::gradient(const Eigen::VectorXd& u, double lambda) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
    for (const auto& m : monomials) {
        const double base = to_double(m.coeff) * dpow(lambda, m.lambda_power);
        for (int v = 0; v < dim; ++v) {
            if (m.exponents[v] == 0) continue;
            double term = base * m.exponents[v];
            for (int i = 0; i < dim; ++i) term *= dpow(u(i), i == v ? m.exponents[i] - 1 : m.exponents[i]);
            g(v) += term;
        }
    }
    return g;
}

Eigen::MatrixXd PolynomialPotential::hessian(const Eigen::VectorXd& u, double lambda) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& m : monomials) {
        const double base = to_double(m.coeff) * dpow(lambda, m.lambda_power);
        for (int v = 0; v < dim; ++v) {
            if (m.exponents[v] == 0) continue;
            for (int w = v; w < dim; ++w) {
                int factor;
                if (w == v) {
                    if (m.exponents[v] < 2) continue;
                    factor = m.exponents[v] * (m.exponents[v] - 1);
                } else {
                    if (m.exponents[w] == 0) continue;
                    factor = m.exponents[v] * m.exponents[w];
                }
                double term = base * factor;
                for (int i = 0; i < dim; ++i) {
                    int e = m.exponents[i];
                    if (i == v) e -= 1;
                    if (i == w) e -= 1;
                    term *= dpow(u(i), e);
                }
                h(v, w) += term;
                if (w != v) h(w, v) += term;
            }
        }
    }
    return h;
}

Eigen::VectorXd PolynomialPotential::gradient_lambda(const Eigen::VectorXd& u, double lambda) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
    for (const auto& m : monomials) {
        if (m.lambda_power == 0) continue;
        const double base = to_double(m.coeff) * m.lambda_power * dpow(lambda, m.lambda_power - 1);
        for (int v = 0; v < dim; ++v) {
            if (m.exponents[v] == 0) continue;
            double term = base * m.exponents[v];
            for (int i = 0; i < dim; ++i) term *= dpow(u(i), i == v ? m.exponents[i] - 1 : m.exponents[i]);
            g(v) += term;
        }
    }
    return g;
}

std::vector<Rational> PolynomialPotential::gradient_exact(const std::vector<Rational>& u,
                                                          const Rational& lambda) const {
    std::vector<Rational> g(dim, Rational(0));
    for (const auto& m : monomials) {
        const Rational base = m.coeff * rational_pow(lambda, m.lambda_power);
        for (int v = 0; v < dim; ++v) {
            if (m.exponents[v] == 0) continue;
            Rational term = base * Rational(m.exponents[v]);
            for (int i = 0; i < dim; ++i)
                term *= rational_pow(u[i], i == v ? m.exponents[i] - 1 : m.exponents[i]);
            g[v] += term;
        }
    }
    return g;
}

std::vector<std::vector<Rational>> PolynomialPotential::hessian_exact(const std::vector<Rational>& u,
                                                                      const Rational& lambda) const {
    std::vector<std::vector<Rational>> h(dim, std::vector<Rational>(dim, Rational(0)));
    for (const auto& m : monomials) {
        const Rational base = m.coeff * rational_pow(lambda, m.lambda_power);
        for (int v = 0; v < dim; ++v) {
            if (m.exponents[v] == 0) continue;
            for (int w = v; w < dim; ++w) {
                long long factor;
                if (w == v) {
                    if (m.exponents[v] < 2) continue;
                    factor = static_cast<long long>(m.exponents[v]) * (m.exponents[v] - 1);
                } else {
                    if (m.exponents[w] == 0) continue;
                    factor = static_cast<long long>(m.exponents[v]) * m.exponents[w];
                }
                Rational term = base * Rational(factor);
                for (int i = 0; i < dim; ++i) {
                    int e = m.exponents[i];
                    if (i == v) e -= 1;
                    if (i == w) e -= 1;
                    term *= rational_pow(u[i], e);
                }
                h[v][w] += term;
                if (w != v) h[w][v] += term;
            }
        }
    }
    return h;
}

PolynomialPotential PolynomialPotential::lambda_part(int power) const {
    PolynomialPotential out;
    out.dim = dim;
    for (const auto& m : monomials)
        if (m.lambda_power == power) out.monomials.push_back(m);
    return out;
}

PolynomialPotential PolynomialPotential::shifted(const std::vector<Rational>& shift) const {
    // expand each variable power (w_i + s_i)^e by the binomial theorem
    PolynomialPotential out;
    out.dim = dim;
    std::map<std::pair<std::vector<int>, int>, Rational> acc;
    for (const auto& m : monomials) {
        std::vector<std::pair<std::vector<int>, Rational>> terms = {{std::vector<int>(dim, 0), m.coeff}};
        for (int i = 0; i < dim; ++i) {
            const int e = m.exponents[i];
            if (e == 0) continue;
            std::vector<std::pair<std::vector<int>, Rational>> next;
            // binomial coefficients for (w + s)^e
            std::vector<Rational> binom(e + 1, Rational(1));
            for (int k = 1; k <= e; ++k) binom[k] = binom[k - 1] * Rational(e - k + 1) / Rational(k);
            for (const auto& [exps, coeff] : terms) {
                for (int k = 0; k <= e; ++k) {  // w^k s^{e-k}
                    auto ex = exps;
                    ex[i] = k;
                    next.emplace_back(std::move(ex), coeff * binom[k] * rational_pow(shift[i], e - k));
                }
            }
            terms = std::move(next);
        }
        for (auto& [exps, coeff] : terms) acc[{exps, m.lambda_power}] += coeff;
    }
    for (auto& [key, coeff] : acc) {
        if (coeff == Rational(0)) continue;
        Monomial m;
        m.exponents = key.first;
        m.lambda_power = key.second;
        m.coeff = coeff;
        out.monomials.push_back(std::move(m));
    }
    return out;
}

int PolynomialPotential::max_lambda_power() const {
    int p = 0;
    for (const auto& m : monomials) p = std::max(p, m.lambda_power);
    return p;
}

int PolynomialPotential::degree() const {
    int d = 0;
    for (const auto& m : monomials) {
        int t = 0;
        for (int e : m.exponents) t += e;
        d = std::max(d, t);
    }
    return d;
}

namespace {

// Combines like monomials and drops zero coefficients.
PolynomialPotential normalized(const PolynomialPotential& pot) {
    std::map<std::pair<std::vector<int>, int>, Rational> acc;
    for (const auto& m : pot.monomials) acc[{m.exponents, m.lambda_power}] += m.coeff;
    PolynomialPotential out;
    out.dim = pot.dim;
    for (const auto& [key, coeff] : acc) {
        if (coeff == Rational(0)) continue;
        Monomial m;
        m.exponents = key.first;
        m.lambda_power = key.second;
        m.coeff = coeff;
        out.monomials.push_back(std::move(m));
    }
    return out;
}

}  // namespace

PotentialDecomposition decompose_potential(const PolynomialPotential& pot,
                                           const std::vector<Rational>& u0) {
    if (static_cast<int>(u0.size()) != pot.dim)
        throw ContractViolation("base point dimension does not match potential");
    const int p = pot.dim;

    // (a2): per λ-power parts, the gradient must vanish at u0 and the hessian
    // must vanish except at power one
    for (int m = 0; m <= pot.max_lambda_power(); ++m) {
        const auto part = pot.lambda_part(m);
        const auto g = part.gradient_exact(u0, Rational(1));
        for (const auto& gi : g)
            if (gi != Rational(0))
                throw ValidationError("base point is not a critical point for all lambda (gradient of the "
                                      "lambda^" + std::to_string(m) + " part does not vanish)");
        if (m == 1) continue;
        const auto h = part.hessian_exact(u0, Rational(1));
        for (const auto& row : h)
            for (const auto& v : row)
                if (v != Rational(0))
                    throw ValidationError("hessian at the base point is not linear in lambda (lambda^" +
                                          std::to_string(m) + " part has nonzero hessian)");
    }

    PotentialDecomposition out;
    out.quadratic_matrix = pot.lambda_part(1).hessian_exact(u0, Rational(1));

    // F0(w, λ) = F(w + u0, λ) − λ/2 (Aw, w) + λ/2 (Au0, u0)
    PolynomialPotential f0 = pot.shifted(u0);
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) {
            const Rational a = out.quadratic_matrix[i][j];
            if (a == Rational(0)) continue;
            Monomial m;
            m.exponents.assign(p, 0);
            m.exponents[i] += 1;
            m.exponents[j] += 1;
            m.lambda_power = 1;
            m.coeff = (i == j) ? -a / Rational(2) : -a;
            f0.monomials.push_back(std::move(m));
        }
    Rational c0(0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) c0 += out.quadratic_matrix[i][j] * u0[i] * u0[j];
    if (c0 != Rational(0)) {
        Monomial m;
        m.exponents.assign(p, 0);
        m.lambda_power = 1;
        m.coeff = c0 / Rational(2);
        f0.monomials.push_back(std::move(m));
    }

    f0 = normalized(f0);

    // assert the decomposition: F0 has zero gradient and hessian at 0
    const std::vector<Rational> zero(p, Rational(0));
    for (int m = 0; m <= f0.max_lambda_power(); ++m) {
        const auto part = f0.lambda_part(m);
        for (const auto& gi : part.gradient_exact(zero, Rational(1)))
            if (gi != Rational(0)) throw NumericalError("potential decomposition: remainder gradient nonzero");
        for (const auto& row : part.hessian_exact(zero, Rational(1)))
            for (const auto& v : row)
                if (v != Rational(0))
                    throw NumericalError("potential decomposition: remainder hessian nonzero");
    }
    out.remainder = std::move(f0);
    return out;
}

BlockDecomposition block_decompose(const Eigen::MatrixXd& a, const SlicePackage& slice) {
    if (slice.p0 > 0) {
        const double defect = (a * slice.tangent).cwiseAbs().maxCoeff();
        if (defect > 1e-9)
            throw ValidationError("hessian does not vanish on the orbit tangent space (defect " +
                                  std::to_string(defect) + ")");
    }
    BlockDecomposition out;
    out.fixed_block = slice.fixed_slice.transpose() * a * slice.fixed_slice;
    out.complement_block = slice.fixed_slice_complement.transpose() * a * slice.fixed_slice_complement;
    if (slice.p1 > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.fixed_block);
        out.fixed_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + slice.p1);
    }
    if (slice.p2 > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out.complement_block);
        out.complement_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + slice.p2);
    }
    return out;
}

namespace {

std::vector<HessianEigenvalue> classify_hessian_spectrum(
    const std::vector<std::vector<Rational>>& a_exact, const Eigen::MatrixXd& a,
    const SlicePackage& slice, const std::vector<Rational>& declared) {
    const int p = static_cast<int>(a.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const Eigen::VectorXd ev = es.eigenvalues();
    const Eigen::MatrixXd vecs = es.eigenvectors();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

    // cluster at relative gap 1e-8
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= p; ++i) {
        if (i == p || ev(i) - ev(i - 1) > 1e-8 * scale) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }

    std::vector<char> declared_used(declared.size(), 0);
    std::vector<HessianEigenvalue> out;
    for (auto [b, e] : clusters) {
        HessianEigenvalue h;
        h.mult_total = e - b;
        double mean = 0.0;
        for (int i = b; i < e; ++i) mean += ev(i);
        mean /= h.mult_total;
        h.numeric = mean;
        h.vectors = vecs.middleCols(b, h.mult_total);

        // rational candidate: declared value if one matches, else continued fractions
        std::optional<Rational> cand;
        for (std::size_t i = 0; i < declared.size(); ++i) {
            if (std::abs(to_double(declared[i]) - mean) < 1e-6 * scale) {
                cand = declared[i];
                declared_used[i] = 1;
                break;
            }
        }
        if (!cand) cand = rationalize(mean, 1000000, 1e-9 * scale);
        if (cand) {
            // exact verification: dim ker(A − rI) must equal the cluster size
            auto shifted = a_exact;
            for (int i = 0; i < p; ++i) shifted[i][i] -= *cand;
            if (p - rational_rank(std::move(shifted)) == h.mult_total) {
                h.value = *cand;
                h.exact = true;
            }
        }
        if (!h.exact) {
            auto approx = rationalize(mean, 1000000000000LL, 1e-6 * scale);
            h.value = approx.value_or(Rational(0));
        }

        // block multiplicities via projector traces
        const Eigen::MatrixXd pe = h.vectors * h.vectors.transpose();
        auto block_mult = [&](const Eigen::MatrixXd& basis) {
            if (basis.cols() == 0) return 0;
            const double tr = (basis.transpose() * pe * basis).trace();
            const double r = std::round(tr);
            if (std::abs(tr - r) > 1e-6)
                throw NumericalError("eigenspace does not split along the slice blocks (trace " +
                                     std::to_string(tr) + ")");
            return static_cast<int>(r);
        };
        h.mult_tangent = block_mult(slice.tangent);
        h.mult_fixed = block_mult(slice.fixed_slice);
        h.mult_complement = block_mult(slice.fixed_slice_complement);
        if (h.mult_tangent + h.mult_fixed + h.mult_complement != h.mult_total)
            throw NumericalError("eigenspace block multiplicities do not sum to the cluster size");

        // bases of eigenspace ∩ W^H and eigenspace ∩ (W^H)⊥
        auto block_basis = [&](const Eigen::MatrixXd& block, int mult) {
            if (mult == 0) return Eigen::MatrixXd(p, 0);
            const Eigen::MatrixXd pw = block * block.transpose();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ei(h.vectors.transpose() * pw * h.vectors);
            return Eigen::MatrixXd(h.vectors * ei.eigenvectors().rightCols(mult));
        };
        h.vectors_fixed = block_basis(slice.fixed_slice, h.mult_fixed);
        h.vectors_complement = block_basis(slice.fixed_slice_complement, h.mult_complement);
        out.push_back(std::move(h));
    }

    for (std::size_t i = 0; i < declared.size(); ++i)
        if (!declared_used[i])
            throw ValidationError("declared eigenvalue " + to_string(declared[i]) +
                                  " does not match the numeric hessian spectrum");
    return out;
}

void check_invariance(const OrthogonalRepresentation& rep, const PolynomialPotential& pot) {
    std::mt19937 rng(20240811u);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double lambdas[] = {0.7, -1.3};
    for (int trial = 0; trial < 4; ++trial) {
        Eigen::VectorXd u(pot.dim);
        for (int i = 0; i < pot.dim; ++i) u(i) = normal(rng);
        for (double lam : lambdas) {
            const double ref = pot.eval(u, lam);
            const double tol = 1e-10 * (1.0 + std::abs(ref));
            if (rep.group.is_finite()) {
                for (int a = 0; a < rep.group.order; ++a) {
                    const double val = pot.eval(rep.matrix(a) * u, lam);
                    if (std::abs(val - ref) > tol)
                        throw ValidationError("potential is not invariant under group element " +
                                              std::to_string(a));
                }
            } else {
                for (int k = 1; k <= 8; ++k) {
                    const double theta = 0.61803398875 * k * 2.0 * M_PI;
                    const double val = pot.eval(rep.circle_matrix(theta) * u, lam);
                    if (std::abs(val - ref) > tol)
                        throw ValidationError("potential is not invariant under the rotation by " +
                                              std::to_string(theta));
                }
            }
        }
    }
}

}  // namespace

Rational EllipticProblem::max_abs_alpha() const {
    Rational m(0);
    for (const auto& h : hessian_spectrum) {
        if (!h.exact) continue;
        const Rational a = h.value >= Rational(0) ? h.value : -h.value;
        if (a > m) m = a;
    }
    return m;
}

EllipticProblem make_problem(BoxDomain domain, OrthogonalRepresentation rep, PolynomialPotential pot,
                             std::vector<Rational> base_point,
                             const std::vector<Rational>& declared_spectrum) {
    if (pot.dim != rep.dim) throw ValidationError("potential dimension does not match the representation");
    if (static_cast<int>(base_point.size()) != rep.dim)
        throw ValidationError("base point dimension does not match the representation");
    for (const auto& m : pot.monomials) {
        if (static_cast<int>(m.exponents.size()) != pot.dim)
            throw ValidationError("monomial exponent vector has wrong length");
        for (int e : m.exponents)
            if (e < 0) throw ValidationError("monomial exponents must be nonnegative");
        if (m.lambda_power < 0) throw ValidationError("lambda powers must be nonnegative");
    }

    EllipticProblem p;
    p.domain = std::move(domain);
    p.rep = std::move(rep);
    p.potential = std::move(pot);
    p.base_point_exact = std::move(base_point);
    p.base_point = Eigen::VectorXd(p.rep.dim);
    for (int i = 0; i < p.rep.dim; ++i) p.base_point(i) = to_double(p.base_point_exact[i]);

    check_invariance(p.rep, p.potential);                             // (a4)
    const auto decomp = decompose_potential(p.potential, p.base_point_exact);  // (a2)
    p.hessian_exact = decomp.quadratic_matrix;
    p.hessian_at_base = Eigen::MatrixXd(p.rep.dim, p.rep.dim);
    for (int i = 0; i < p.rep.dim; ++i)
        for (int j = 0; j < p.rep.dim; ++j) p.hessian_at_base(i, j) = to_double(p.hessian_exact[i][j]);

    p.slice = build_slice(p.rep, p.base_point);

    // (a5): the kernel of A is exactly the orbit tangent space
    const int kernel_dim = p.rep.dim - rational_rank(p.hessian_exact);
    if (kernel_dim != p.slice.p0)
        throw ValidationError("orbit is degenerate: dim ker A = " + std::to_string(kernel_dim) +
                              " but the orbit dimension is " + std::to_string(p.slice.p0));
    if (p.slice.p0 > 0) {
        const double defect = (p.hessian_at_base * p.slice.tangent).cwiseAbs().maxCoeff();
        if (defect > 1e-9)
            throw ValidationError("hessian does not vanish on the orbit tangent space");
    }

    p.hessian_spectrum = classify_hessian_spectrum(p.hessian_exact, p.hessian_at_base, p.slice,
                                                   declared_spectrum);
    return p;
}

OperatorSpectrum operator_spectrum(const EllipticProblem& p, const Rational& lambda,
                                   const Rational& cutoff) {
    // the cutoff must cover every sign change: β < λ·α demands β ≤ cutoff
    for (const auto& h : p.hessian_spectrum) {
        if (!h.exact)
            throw NumericalError("hessian eigenvalue " + std::to_string(h.numeric) +
                                 " is not certified rational; declare the spectrum in the config");
        if (lambda * h.value > cutoff)
            throw NumericalError("spectrum cutoff " + to_string(cutoff) +
                                 " does not cover the sign change at beta = " + to_string(lambda * h.value));
    }
    const auto spectrum = neumann_spectrum(p.domain, cutoff);
    OperatorSpectrum out;
    for (const auto& entry : spectrum) {
        for (const auto& h : p.hessian_spectrum) {
            OperatorSpectrumEntry e;
            e.alpha = h.value;
            e.beta = entry.value;
            e.value = (entry.value - lambda * h.value) / (Rational(1) + entry.value);
            e.multiplicity = h.mult_total * entry.multiplicity();
            out.entries.push_back(std::move(e));
            if (entry.value < lambda * h.value) {
                out.dim_negative_total += h.mult_total * entry.multiplicity();
                out.dim_negative_fixed += h.mult_fixed * entry.multiplicity();
                out.dim_negative_complement += h.mult_complement * entry.multiplicity();
            }
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.beta != b.beta) return a.beta < b.beta;
        return a.alpha < b.alpha;
    });
    return out;
}

namespace {

// Smallest spectrum cutoff that contains every β = λ0·α pairing.
Rational kernel_cutoff(const EllipticProblem& p, const Rational& lambda0) {
    Rational m(1);
    for (const auto& h : p.hessian_spectrum) {
        if (!h.exact) continue;
        const Rational beta = lambda0 * h.value;
        if (beta > m) m = beta;
    }
    return m;
}

}  // namespace

KernelInfo kernel_fixed_dimension(const EllipticProblem& p, const Rational& lambda0) {
    for (const auto& h : p.hessian_spectrum)
        if (!h.exact)
            throw NumericalError("kernel dimensions need a certified rational hessian spectrum");

    const auto spectrum = neumann_spectrum(p.domain, kernel_cutoff(p, lambda0));
    std::map<Rational, int> beta_index;
    for (int i = 0; i < static_cast<int>(spectrum.size()); ++i) beta_index[spectrum[i].value] = i;

    KernelInfo info;
    for (const auto& h : p.hessian_spectrum) {
        if (h.value == Rational(0)) continue;  // orbit directions are not degeneracies
        const Rational beta = lambda0 * h.value;
        auto it = beta_index.find(beta);
        if (it == beta_index.end()) continue;
        const EigenvalueEntry& entry = spectrum[it->second];
        info.dim_V += h.mult_total * entry.multiplicity();
        info.dim_VH += h.mult_fixed * entry.multiplicity();
        for (int c = 0; c < h.mult_total; ++c) {
            KernelVector kv;
            kv.component_direction = h.vectors.col(c);
            kv.alpha = h.value;
            kv.beta = beta;
            kv.spatial_indices = entry.indices;
            info.basis.push_back(kv);
        }
        for (int c = 0; c < h.mult_fixed; ++c) {
            KernelVector kv;
            kv.component_direction = h.vectors_fixed.col(c);
            kv.alpha = h.value;
            kv.beta = beta;
            kv.spatial_indices = entry.indices;
            kv.fixed_by_isotropy = true;
            info.fixed_basis.push_back(kv);
        }
    }
    return info;
}

std::string to_string(Verdict v) {
    return v == Verdict::GlobalBifurcation ? "GlobalBifurcation" : "Inconclusive";
}

BifurcationCertificate global_bifurcation_test(const EllipticProblem& p, const Rational& lambda0) {
    BifurcationCertificate cert;
    cert.kernel = kernel_fixed_dimension(p, lambda0);
    if (cert.kernel.dim_V == 0)
        throw ContractViolation("lambda0 = " + to_string(lambda0) +
                                " is not a bifurcation candidate (no degeneracy)");

    const auto spectrum = neumann_spectrum(p.domain, kernel_cutoff(p, lambda0));
    std::map<Rational, int> beta_mult;
    for (const auto& e : spectrum) beta_mult[e.value] = e.multiplicity();

    // sum over eigenvalues of B(u0) whose λ0-multiple is a Laplace eigenvalue;
    // at λ0 = 0 every b pairs with β = 0 and the one-dimensional constant
    // eigenspace supplies the special-case count
    for (const auto& h : p.hessian_spectrum) {
        if (h.mult_fixed == 0 || h.value == Rational(0)) continue;
        const Rational beta = lambda0 * h.value;
        auto it = beta_mult.find(beta);
        if (it == beta_mult.end()) continue;
        CriterionTerm t;
        t.b = h.value;
        t.beta = beta;
        t.mu_B = h.mult_fixed;
        t.dim_V_beta = it->second;
        cert.criterion_sum += t.mu_B * t.dim_V_beta;
        cert.terms.push_back(std::move(t));
    }
    cert.verdict = (cert.criterion_sum % 2 == 1) ? Verdict::GlobalBifurcation : Verdict::Inconclusive;
    return cert;
}

std::vector<CandidatePoint> bifurcation_candidates(const EllipticProblem& p, const Rational& lo,
                                                   const Rational& hi) {
    if (lo > hi) throw ContractViolation("empty lambda window");
    for (const auto& h : p.hessian_spectrum)
        if (!h.exact)
            throw NumericalError("bifurcation candidates need a certified rational hessian spectrum; "
                                 "declare the eigenvalues in the config");

    // β range needed to cover λ0 = β/α inside the window
    Rational beta_bound(1);
    for (const auto& h : p.hessian_spectrum) {
        if (h.value == Rational(0)) continue;
        for (const Rational& endpoint : {lo * h.value, hi * h.value})
            if (endpoint > beta_bound) beta_bound = endpoint;
    }
    const auto spectrum = neumann_spectrum(p.domain, beta_bound);

    std::map<Rational, std::vector<std::pair<Rational, Rational>>> found;
    for (const auto& h : p.hessian_spectrum) {
        if (h.value == Rational(0)) continue;
        for (const auto& entry : spectrum) {
            const Rational lambda0 = entry.value / h.value;
            if (lambda0 < lo || lambda0 > hi) continue;
            found[lambda0].emplace_back(h.value, entry.value);
        }
    }

    std::vector<CandidatePoint> out;
    for (auto& [lambda0, pairs] : found) {
        CandidatePoint c;
        c.lambda0 = lambda0;
        std::sort(pairs.begin(), pairs.end());
        c.pairs = std::move(pairs);
        c.certificate = global_bifurcation_test(p, lambda0);
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace equibif
