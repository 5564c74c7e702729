#pragma once

#include <vector>

#include "equibif/group.hpp"
#include "equibif/representation.hpp"

namespace equibif {

// Integer coordinates over the conjugacy classes of subgroups, in the basis
// of coset spaces [G/H] ordered as in the TableOfMarks.
struct BurnsideElement {
    std::vector<long long> coords;

    bool operator==(const BurnsideElement& o) const { return coords == o.coords; }
};

BurnsideElement burnside_unit(const TableOfMarks& t);  // [G/G]
BurnsideElement burnside_add(const BurnsideElement& a, const BurnsideElement& b);
BurnsideElement burnside_negate(const BurnsideElement& a);
// Markwise product followed by coordinate recovery.
BurnsideElement burnside_multiply(const TableOfMarks& t, const BurnsideElement& a, const BurnsideElement& b);

// Equivariant Euler characteristic of the compactified induced space built
// from a subgroup representation w of h: for each class (K) the mark is
//   sum over cosets gH with g^{-1}Kg ⊆ H of (-1)^{dim w-fixed(g^{-1}Kg)},
// and coordinates are recovered through the table of marks. w must be a
// representation of subgroup_as_group(t.group, h).group.
BurnsideElement euler_characteristic_smash(const TableOfMarks& t, const Subgroup& h,
                                           const OrthogonalRepresentation& w);
std::vector<long long> smash_marks(const TableOfMarks& t, const Subgroup& h,
                                   const OrthogonalRepresentation& w);

struct MainTheoremReport {
    BurnsideElement with_augmentation;  // coordinates of the W ⊕ V space
    BurnsideElement base;               // coordinates of the W space
    int dim_WH = 0;                     // fixed dimension of w under all of h
    int dim_VH = 0;
    bool hypothesis_met = false;  // dim_VH odd
    bool coords_differ_at_h = false;
    long long coord_with = 0, coord_base = 0;  // the (H)-coordinates
    int h_class_index = -1;
};

// Computes both characteristics and compares their (H)-coordinates; when
// dim V^H is odd they must differ (sign flip of (-1)^{dim W^H}).
MainTheoremReport verify_main_theorem(const TableOfMarks& t, const Subgroup& h,
                                      const OrthogonalRepresentation& w,
                                      const OrthogonalRepresentation& v);

}  // namespace equibif
