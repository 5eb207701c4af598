#pragma once

// Hand-written expectations for the staged chain expressions: which operator
// occupies each slot of each item and which exponent it carries.  These were
// transcribed item by item from the written displays, so they pin the builder
// against transcription drift rather than re-deriving its index rule.

#include <vector>

#include "opord/chain.hpp"
#include "opord/exponents.hpp"

namespace opord::fixtures {

struct SlotRow {
    int factor_index;        // operator subscript carried by the slot
    double factor_exponent;  // half exponent on each side of the sandwich
    double core_exponent;    // stage power applied to the nested bracket
};

struct ItemTable {
    int k;                       // item number
    int lhs_index;               // subscript of the plain-power side
    int core_index;              // subscript at the centre of the nest
    opord::Direction direction;  // which way the comparison points
    std::vector<SlotRow> slots;  // innermost first
};

// Five-operator tower, n = 2: items read off the four written displays.
inline std::vector<ItemTable> five_chain_items(const opord::FurutaParams& fp) {
    const double t1 = fp.t[0], t2 = fp.t[1], r = fp.r;
    const double p1 = fp.p[0], p2 = fp.p[1], p3 = fp.p[2], p4 = fp.p[3];
    using D = opord::Direction;
    return {
        {1, 5, 1, D::lhs_geq_rhs,
         {{2, -t1 / 2, p1}, {3, t1 / 2, p2}, {4, -t2 / 2, p3}, {5, r / 2, p4}}},
        {2, 5, 2, D::lhs_geq_rhs,
         {{3, -t1 / 2, p1}, {4, t1 / 2, p2}, {5, -t2 / 2, p3}, {5, r / 2, p4}}},
        {3, 1, 4, D::lhs_leq_rhs,
         {{3, -t1 / 2, p1}, {2, t1 / 2, p2}, {1, -t2 / 2, p3}, {1, r / 2, p4}}},
        {4, 1, 5, D::lhs_leq_rhs,
         {{4, -t1 / 2, p1}, {3, t1 / 2, p2}, {2, -t2 / 2, p3}, {1, r / 2, p4}}},
    };
}

// Seven-operator tower, n = 3: the first, second, fifth and sixth items,
// covering both directions away from their hard-coded first displays.
inline std::vector<ItemTable> seven_chain_items(const opord::FurutaParams& fp) {
    const double t1 = fp.t[0], t2 = fp.t[1], t3 = fp.t[2], r = fp.r;
    const double p1 = fp.p[0], p2 = fp.p[1], p3 = fp.p[2];
    const double p4 = fp.p[3], p5 = fp.p[4], p6 = fp.p[5];
    using D = opord::Direction;
    return {
        {1, 7, 1, D::lhs_geq_rhs,
         {{2, -t1 / 2, p1},
          {3, t1 / 2, p2},
          {4, -t2 / 2, p3},
          {5, t2 / 2, p4},
          {6, -t3 / 2, p5},
          {7, r / 2, p6}}},
        {2, 7, 2, D::lhs_geq_rhs,
         {{3, -t1 / 2, p1},
          {4, t1 / 2, p2},
          {5, -t2 / 2, p3},
          {6, t2 / 2, p4},
          {7, -t3 / 2, p5},
          {7, r / 2, p6}}},
        {5, 1, 6, D::lhs_leq_rhs,
         {{5, -t1 / 2, p1},
          {4, t1 / 2, p2},
          {3, -t2 / 2, p3},
          {2, t2 / 2, p4},
          {1, -t3 / 2, p5},
          {1, r / 2, p6}}},
        {6, 1, 7, D::lhs_leq_rhs,
         {{6, -t1 / 2, p1},
          {5, t1 / 2, p2},
          {4, -t2 / 2, p3},
          {3, t2 / 2, p4},
          {2, -t3 / 2, p5},
          {1, r / 2, p6}}},
    };
}

// Four-operator tower, n = 2: the item just past the midpoint, where the
// descending indices clamp at the bottom one stage early.
inline std::vector<ItemTable> four_chain_items(const opord::FurutaParams& fp) {
    const double t1 = fp.t[0], t2 = fp.t[1], r = fp.r;
    const double p1 = fp.p[0], p2 = fp.p[1], p3 = fp.p[2], p4 = fp.p[3];
    using D = opord::Direction;
    return {
        {1, 4, 1, D::lhs_geq_rhs,
         {{2, -t1 / 2, p1}, {3, t1 / 2, p2}, {4, -t2 / 2, p3}, {4, r / 2, p4}}},
        {3, 1, 4, D::lhs_leq_rhs,
         {{3, -t1 / 2, p1}, {2, t1 / 2, p2}, {1, -t2 / 2, p3}, {1, r / 2, p4}}},
    };
}

// Two-operator tower, n = 1: the single ascending item.
inline std::vector<ItemTable> two_chain_items(const opord::FurutaParams& fp) {
    const double t1 = fp.t[0], r = fp.r;
    const double p1 = fp.p[0], p2 = fp.p[1];
    using D = opord::Direction;
    return {
        {1, 2, 1, D::lhs_geq_rhs, {{2, -t1 / 2, p1}, {2, r / 2, p2}}},
    };
}

}  // namespace opord::fixtures
