#include "doctest.h"
#include "lutdec/layout.hpp"

#include <algorithm>
#include <set>

using namespace lutdec;

namespace {

int overlap(const std::vector<int>& a, const std::vector<int>& b) {
    int n = 0;
    for (int q : a)
        if (std::find(b.begin(), b.end(), q) != b.end()) ++n;
    return n;
}

}  // namespace

TEST_CASE("stabilizer and qubit counts match the published tuples") {
    struct Row {
        int d, n_data, n_x, n_z;
    };
    for (Row row : {Row{3, 9, 4, 4}, Row{4, 16, 8, 7}, Row{5, 25, 12, 12}}) {
        CodeLayout layout = build_layout(row.d);
        CHECK(layout.n_data == row.n_data);
        CHECK(layout.stab_count(StabType::X) == row.n_x);
        CHECK(layout.stab_count(StabType::Z) == row.n_z);
        CHECK(row.n_data + row.n_x + row.n_z == row.d * row.d + row.d * row.d - 1);
    }
}

TEST_CASE("every data qubit sits in one or two supports of each type") {
    for (int d : {3, 4, 5}) {
        CodeLayout layout = build_layout(d);
        for (StabType type : {StabType::X, StabType::Z}) {
            std::vector<int> degree(layout.n_data, 0);
            for (const auto& support : layout.stabilizers(type)) {
                CHECK((support.size() == 2 || support.size() == 4));
                CHECK(std::is_sorted(support.begin(), support.end()));
                for (int q : support) {
                    CHECK(q >= 0);
                    CHECK(q < layout.n_data);
                    ++degree[q];
                }
            }
            for (int q = 0; q < layout.n_data; ++q) {
                CHECK(degree[q] >= 1);
                CHECK(degree[q] <= 2);
            }
            // boundary qubits are exactly the degree-1 qubits
            std::set<int> boundary(layout.boundary_qubits(type).begin(),
                                   layout.boundary_qubits(type).end());
            for (int q = 0; q < layout.n_data; ++q)
                CHECK(boundary.count(q) == (degree[q] == 1 ? 1 : 0));
        }
    }
}

TEST_CASE("logical operators have weight d and commute with stabilizers") {
    for (int d : {3, 4, 5}) {
        CodeLayout layout = build_layout(d);
        CHECK(int(layout.logical_z_support.size()) == d);
        CHECK(int(layout.logical_x_support.size()) == d);
        // logical Z (Z on its support) must commute with every X stabilizer:
        // even overlap; symmetrically for logical X vs Z stabilizers.
        for (const auto& s : layout.x_stabilizers)
            CHECK(overlap(layout.logical_z_support, s) % 2 == 0);
        for (const auto& s : layout.z_stabilizers)
            CHECK(overlap(layout.logical_x_support, s) % 2 == 0);
        // the two logicals anticommute: odd overlap
        CHECK(overlap(layout.logical_z_support, layout.logical_x_support) % 2 == 1);
    }
}

TEST_CASE("weight-2 supports only occur on the lattice boundary") {
    for (int d : {3, 4, 5}) {
        CodeLayout layout = build_layout(d);
        for (StabType type : {StabType::X, StabType::Z}) {
            for (const auto& support : layout.stabilizers(type)) {
                if (support.size() != 2) continue;
                // both qubits of a half-plaquette lie on the same lattice edge
                bool same_row = support[0] / d == support[1] / d &&
                                (support[0] / d == 0 || support[0] / d == d - 1);
                bool same_col = support[0] % d == support[1] % d &&
                                (support[0] % d == 0 || support[0] % d == d - 1);
                CHECK((same_row || same_col));
            }
        }
    }
}

TEST_CASE("syndrome_of is linear and matches supports") {
    for (int d : {3, 4}) {
        CodeLayout layout = build_layout(d);
        for (StabType type : {StabType::X, StabType::Z}) {
            // single-qubit errors light up exactly the supports containing it
            for (int q = 0; q < layout.n_data; ++q) {
                u64 syndrome = syndrome_of(layout, type, bit(q));
                const auto& stabs = layout.stabilizers(type);
                for (int s = 0; s < int(stabs.size()); ++s) {
                    bool in_support =
                        std::find(stabs[s].begin(), stabs[s].end(), q) != stabs[s].end();
                    CHECK(bool(syndrome & bit(s)) == in_support);
                }
            }
            // linearity
            for (u64 a : {u64(0b101), u64(0b11000), u64(0x1ff)})
                for (u64 b : {u64(0b1), u64(0b10110)})
                    CHECK(syndrome_of(layout, type, a ^ b) ==
                          (syndrome_of(layout, type, a) ^ syndrome_of(layout, type, b)));
        }
    }
}

TEST_CASE("build_layout validates distance and is deterministic") {
    CHECK_THROWS(build_layout(1));
    CHECK_THROWS(build_layout(0));
    CHECK_THROWS(build_layout(9));
    CodeLayout a = build_layout(4), b = build_layout(4);
    CHECK(a.x_stabilizers == b.x_stabilizers);
    CHECK(a.z_stabilizers == b.z_stabilizers);
    CHECK(a.logical_z_support == b.logical_z_support);
}
