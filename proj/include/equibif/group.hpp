#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equibif/rational.hpp"

namespace equibif {

enum class GroupKind { Finite, Circle };

// A finite group given by its multiplication table, or the circle group
// (which carries no table; its elements are angles).
struct GroupDescriptor {
    GroupKind kind = GroupKind::Finite;
    int order = 0;
    std::vector<std::vector<int>> mul;  // mul[a][b] = a*b, finite only
    int identity = 0;
    std::vector<int> inverse;

    static GroupDescriptor finite_from_table(std::vector<std::vector<int>> table);
    static GroupDescriptor cyclic(int n);
    static GroupDescriptor dihedral(int n);   // order 2n, n >= 1
    static GroupDescriptor symmetric(int n);  // order n!
    static GroupDescriptor circle();
    // "cyclic:4", "dihedral:3", "symmetric:4", "circle"
    static std::optional<GroupDescriptor> from_preset(const std::string& name);

    bool is_finite() const { return kind == GroupKind::Finite; }
    int op(int a, int b) const { return mul[a][b]; }
    int inv(int a) const { return inverse[a]; }
};

// Finite case: a sorted element-index set closed under the table.
// Circle case: Z_m (circle_order = m) or the full circle (circle_order = 0).
struct Subgroup {
    GroupKind kind = GroupKind::Finite;
    std::vector<int> elements;
    int circle_order = 1;

    static Subgroup finite(std::vector<int> elems);
    static Subgroup circle_cyclic(int m);
    static Subgroup circle_full();

    bool is_full_circle() const { return kind == GroupKind::Circle && circle_order == 0; }
    int order() const { return kind == GroupKind::Finite ? static_cast<int>(elements.size()) : circle_order; }
    bool contains(int element) const;
};

struct ConjClass {
    Subgroup representative;        // lexicographically smallest member
    std::vector<Subgroup> members;  // all conjugates, sorted (finite case)
    std::string name;
};

// Classes ordered by (subgroup order, lexicographic representative element
// set); with that order the mark matrix is lower triangular.
struct TableOfMarks {
    GroupDescriptor group;
    std::vector<ConjClass> classes;
    std::vector<std::vector<long long>> marks;  // marks[i][j] = |(G/H_i)^{K_j}|

    int class_index_of(const Subgroup& s) const;  // -1 if not found
};

// Finite: all conjugacy classes of subgroups. Circle: Z_1..Z_cutoff plus the
// full circle; the caller must supply a positive cutoff.
std::vector<ConjClass> enumerate_subgroup_classes(const GroupDescriptor& g, int circle_cutoff = 0);

TableOfMarks table_of_marks(const GroupDescriptor& g);

// Solves for integer coordinates x with sum_i x_i * marks[i][k] = marks_in[k];
// throws NumericalError if the solution is not integral.
std::vector<long long> marks_to_coordinates(const TableOfMarks& t, const std::vector<Rational>& marks_in);
std::vector<long long> coordinates_to_marks(const TableOfMarks& t, const std::vector<long long>& coords);

// Subgroup utilities (finite groups).
Subgroup subgroup_closure(const GroupDescriptor& g, const std::vector<int>& generators);
Subgroup conjugate_subgroup(const GroupDescriptor& g, const Subgroup& h, int by);
bool subgroup_subset(const Subgroup& inner, const Subgroup& outer);
std::vector<int> left_coset_representatives(const GroupDescriptor& g, const Subgroup& h);

// Reindexes a subgroup as a standalone group (0..|H|-1).
struct SubgroupAsGroup {
    GroupDescriptor group;
    std::vector<int> parent_of_local;  // local index -> parent element
    std::vector<int> local_of_parent;  // parent element -> local index or -1
};
SubgroupAsGroup subgroup_as_group(const GroupDescriptor& g, const Subgroup& h);

}  // namespace equibif
