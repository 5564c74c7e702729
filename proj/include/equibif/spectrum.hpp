#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "equibif/rational.hpp"

namespace equibif {

// Box [0, π·sqrt(r_1)] × ... × [0, π·sqrt(r_N)]; the squared side lengths r_i
// are exact rationals so the Neumann eigenvalues β = Σ k_i²/r_i group by
// exact equality. The incommensurable flag asserts r_1/r_2 ∉ Q² in the sense
// of Lemma-style simplicity reporting (it cannot be represented by the
// rational data itself).
struct BoxDomain {
    int dimension = 1;
    std::vector<Rational> lengths_sq;
    bool incommensurable = false;

    double side_length(int axis) const;  // π·sqrt(r_axis)
    double volume() const;
};

struct EigenvalueEntry {
    Rational value;  // β (normalized by π²)
    double value_float = 0.0;
    std::vector<std::vector<int>> indices;

    int multiplicity() const { return static_cast<int>(indices.size()); }
};

// All Neumann eigenvalues with β <= cutoff, ascending, grouped by exact
// rational equality. The first entry is always β = 0 with multiplicity 1.
std::vector<EigenvalueEntry> neumann_spectrum(const BoxDomain& d, const Rational& cutoff);

// cos(k_1 π x_1 / L_1) ··· cos(k_N π x_N / L_N); the index must belong to the
// entry.
double eigenfunction_eval(const EigenvalueEntry& e, const BoxDomain& d, const std::vector<int>& index,
                          const Eigen::VectorXd& x);
// Same, without an entry membership check (internal helper for assembly).
double eigenfunction_value(const BoxDomain& d, const std::vector<int>& index, const Eigen::VectorXd& x);

// Squared L² norm of the (unnormalized) eigenfunction, exact as a rational
// times the (transcendental) volume factor: returns the product of per-axis
// factors L_i or L_i/2 as a double.
double eigenfunction_norm_sq(const BoxDomain& d, const std::vector<int>& index);

struct SimplicityReport {
    bool simple = false;
    bool certified_by_flag = false;  // true: simplicity holds for all β, not just scanned ones
    std::optional<EigenvalueEntry> first_violation;
};

// Two-dimensional boxes only: incommensurable flag certifies simplicity
// outright; otherwise the enumerated spectrum is scanned up to the cutoff.
SimplicityReport simplicity_report(const BoxDomain& d, const Rational& cutoff);

}  // namespace equibif
