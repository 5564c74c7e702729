#include "equibif/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "equibif/errors.hpp"

namespace equibif {

namespace {

constexpr std::size_t kMaxIndices = 1000000;

void check_domain(const BoxDomain& d) {
    if (d.dimension < 1) throw ValidationError("box dimension must be at least 1");
    if (static_cast<int>(d.lengths_sq.size()) != d.dimension)
        throw ValidationError("box needs one squared side length per axis");
    for (const auto& r : d.lengths_sq)
        if (r <= Rational(0)) throw ValidationError("squared side lengths must be positive");
}

}  // namespace

double BoxDomain::side_length(int axis) const {
    return M_PI * std::sqrt(to_double(lengths_sq[axis]));
}

double BoxDomain::volume() const {
    double v = 1.0;
    for (int i = 0; i < dimension; ++i) v *= side_length(i);
    return v;
}

std::vector<EigenvalueEntry> neumann_spectrum(const BoxDomain& d, const Rational& cutoff) {
    check_domain(d);
    if (cutoff <= Rational(0)) throw ContractViolation("spectrum cutoff must be positive");

    // per-axis bounds: k² <= cutoff · r_i
    std::vector<int> kmax(d.dimension);
    std::size_t est = 1;
    for (int i = 0; i < d.dimension; ++i) {
        const double bound = std::sqrt(to_double(cutoff * d.lengths_sq[i]));
        kmax[i] = static_cast<int>(std::floor(bound + 1e-9));
        est *= static_cast<std::size_t>(kmax[i]) + 1;
        if (est > kMaxIndices)
            throw NumericalError("spectrum cutoff would enumerate more than 10^6 indices");
    }

    std::map<Rational, std::vector<std::vector<int>>> groups;
    std::vector<int> idx(d.dimension, 0);
    // depth-first walk over the index lattice, pruning by the running sum
    auto walk = [&](auto&& self, int axis, const Rational& acc) -> void {
        if (axis == d.dimension) {
            groups[acc].push_back(idx);
            return;
        }
        for (long long k = 0;; ++k) {
            const Rational val = acc + Rational(k * k) / d.lengths_sq[axis];
            if (val > cutoff) break;
            idx[axis] = static_cast<int>(k);
            self(self, axis + 1, val);
        }
    };
    walk(walk, 0, Rational(0));

    std::vector<EigenvalueEntry> out;
    out.reserve(groups.size());
    for (auto& [val, indices] : groups) {
        EigenvalueEntry e;
        e.value = val;
        e.value_float = to_double(val);
        std::sort(indices.begin(), indices.end());
        e.indices = std::move(indices);
        out.push_back(std::move(e));
    }
    return out;
}

double eigenfunction_value(const BoxDomain& d, const std::vector<int>& index, const Eigen::VectorXd& x) {
    double v = 1.0;
    for (int i = 0; i < d.dimension; ++i)
        v *= std::cos(index[i] * M_PI * x(i) / d.side_length(i));
    return v;
}

double eigenfunction_eval(const EigenvalueEntry& e, const BoxDomain& d, const std::vector<int>& index,
                          const Eigen::VectorXd& x) {
    if (static_cast<int>(index.size()) != d.dimension)
        throw ContractViolation("multi-index dimension does not match the box");
    if (std::find(e.indices.begin(), e.indices.end(), index) == e.indices.end())
        throw ContractViolation("multi-index is not listed in the eigenvalue entry");
    return eigenfunction_value(d, index, x);
}

double eigenfunction_norm_sq(const BoxDomain& d, const std::vector<int>& index) {
    double v = 1.0;
    for (int i = 0; i < d.dimension; ++i) v *= d.side_length(i) / (index[i] > 0 ? 2.0 : 1.0);
    return v;
}

SimplicityReport simplicity_report(const BoxDomain& d, const Rational& cutoff) {
    check_domain(d);
    if (d.dimension != 2) throw ContractViolation("simplicity report is defined for two-dimensional boxes");
    SimplicityReport r;
    if (d.incommensurable) {
        r.simple = true;
        r.certified_by_flag = true;
        return r;
    }
    for (const auto& e : neumann_spectrum(d, cutoff)) {
        if (e.multiplicity() > 1) {
            r.simple = false;
            r.first_violation = e;
            return r;
        }
    }
    r.simple = true;  // within the cutoff only
    return r;
}

}  // namespace equibif
