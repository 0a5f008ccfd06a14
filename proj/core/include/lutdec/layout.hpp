#pragma once

#include <vector>

#include "lutdec/bits.hpp"

namespace lutdec {

enum class StabType : u8 { X = 0, Z = 1 };

inline StabType other(StabType t) { return t == StabType::X ? StabType::Z : StabType::X; }
const char* name(StabType t);

// Rotated surface code on a d x d grid of data qubits, indexed row-major.
//
// Stabilizers sit on the plaquette grid (r, c) with r, c in [-1, d-1]; a
// plaquette covers the up-to-four data qubits at its corners. Interior
// plaquettes are checkerboard colored: X-type iff (r + c) is odd. Weight-2
// half-plaquettes appear on the top/bottom edges for X stabilizers and on
// the left/right edges for Z stabilizers, keeping the same coloring rule.
// This orientation gives 8 X / 7 Z stabilizers at d=4 and puts logical Z on
// the top row of data qubits and logical X on the left column.
struct CodeLayout {
    int distance = 0;
    int n_data = 0;
    std::vector<std::vector<int>> x_stabilizers;  // sorted supports
    std::vector<std::vector<int>> z_stabilizers;
    std::vector<int> logical_z_support;  // top row
    std::vector<int> logical_x_support;  // left column
    // boundary_qubits[t]: data qubits in exactly one support of type t;
    // error chains of the type detected by t may terminate there.
    std::vector<int> x_boundary_qubits;
    std::vector<int> z_boundary_qubits;
    std::vector<u64> x_support_masks;  // supports as bitmasks over data qubits
    std::vector<u64> z_support_masks;

    const std::vector<std::vector<int>>& stabilizers(StabType t) const {
        return t == StabType::X ? x_stabilizers : z_stabilizers;
    }
    const std::vector<int>& boundary_qubits(StabType t) const {
        return t == StabType::X ? x_boundary_qubits : z_boundary_qubits;
    }
    const std::vector<u64>& support_masks(StabType t) const {
        return t == StabType::X ? x_support_masks : z_support_masks;
    }
    int stab_count(StabType t) const { return int(stabilizers(t).size()); }
};

CodeLayout build_layout(int d);

// Bit i of the result is the parity of data_errors over the support of
// stabilizer i of the given type.
u64 syndrome_of(const CodeLayout& layout, StabType type, u64 data_errors);

}  // namespace lutdec
