#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "equibif/group.hpp"

namespace equibif {

// Orthogonal action of a group on R^p. Finite groups carry one matrix per
// element (built from generator images); the circle acts in block-rotation
// form: r two-dimensional blocks with integer weights m_i >= 1 followed by
// trivial_blocks fixed coordinates, p = 2r + trivial_blocks.
struct OrthogonalRepresentation {
    GroupDescriptor group;
    int dim = 0;
    std::vector<Eigen::MatrixXd> matrices;  // finite: indexed by element
    std::vector<int> weights;               // circle
    int trivial_blocks = 0;                 // circle

    static OrthogonalRepresentation finite_from_generators(
        const GroupDescriptor& g, const std::vector<std::pair<int, Eigen::MatrixXd>>& generators);
    static OrthogonalRepresentation finite_from_matrices(const GroupDescriptor& g,
                                                         std::vector<Eigen::MatrixXd> all);
    static OrthogonalRepresentation circle_rep(std::vector<int> weights, int trivial_blocks);
    static OrthogonalRepresentation trivial_rep(const GroupDescriptor& g, int dim);
    // Permutation action of g on the left cosets of h.
    static OrthogonalRepresentation coset_permutation(const GroupDescriptor& g, const Subgroup& h);
    static OrthogonalRepresentation direct_sum(const OrthogonalRepresentation& a,
                                               const OrthogonalRepresentation& b);

    const Eigen::MatrixXd& matrix(int element) const { return matrices[element]; }
    Eigen::MatrixXd circle_matrix(double theta) const;
    // d/dθ of the circle action at θ = 0.
    Eigen::MatrixXd infinitesimal_generator() const;
};

Eigen::MatrixXd averaging_projector(const OrthogonalRepresentation& rep, const Subgroup& h);

struct FixedSubspace {
    Eigen::MatrixXd basis;  // dim x k, orthonormal columns
    int dimension = 0;
};
FixedSubspace fixed_subspace(const OrthogonalRepresentation& rep, const Subgroup& h);

Subgroup isotropy_group(const OrthogonalRepresentation& rep, const Eigen::VectorXd& u0);

// Orthonormal basis of the orbit tangent space at u0 (empty for finite groups).
Eigen::MatrixXd orbit_tangent(const OrthogonalRepresentation& rep, const Eigen::VectorXd& u0);

// Orthogonal splitting R^p = T ⊕ W^H ⊕ (W^H)⊥ at a base point, where T is the
// orbit tangent space, W = T⊥ the slice and H the isotropy group of u0.
struct SlicePackage {
    Eigen::VectorXd base_point;
    Subgroup isotropy;
    Eigen::MatrixXd tangent;                 // p x p0
    Eigen::MatrixXd slice;                   // p x (p-p0)
    Eigen::MatrixXd fixed_slice;             // p x p1
    Eigen::MatrixXd fixed_slice_complement;  // p x p2
    int p0 = 0, p1 = 0, p2 = 0;
};
SlicePackage build_slice(const OrthogonalRepresentation& rep, const Eigen::VectorXd& u0);

}  // namespace equibif
