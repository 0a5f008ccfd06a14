#include "lutdec/layout.hpp"

#include <algorithm>
#include <stdexcept>

namespace lutdec {

const char* name(StabType t) { return t == StabType::X ? "X" : "Z"; }

CodeLayout build_layout(int d) {
    if (d < 2) throw std::invalid_argument("code distance must be >= 2");
    if (d > 8) throw std::invalid_argument("code distance > 8 exceeds 64-qubit word width");

    CodeLayout layout;
    layout.distance = d;
    layout.n_data = d * d;

    auto qubit = [d](int r, int c) { return r * d + c; };
    auto in_grid = [d](int r, int c) { return r >= 0 && r < d && c >= 0 && c < d; };

    // Raster scan over the plaquette grid; supports collected in sorted order.
    for (int r = -1; r < d; ++r) {
        for (int c = -1; c < d; ++c) {
            std::vector<int> support;
            for (int dr = 0; dr <= 1; ++dr)
                for (int dc = 0; dc <= 1; ++dc)
                    if (in_grid(r + dr, c + dc)) support.push_back(qubit(r + dr, c + dc));
            bool x_type = ((r + c) & 1) != 0;
            bool keep = false;
            if (support.size() == 4) {
                keep = true;  // interior
            } else if (support.size() == 2) {
                bool top_bottom = (r == -1 || r == d - 1);
                keep = x_type ? top_bottom : !top_bottom;
            }
            if (!keep) continue;
            std::sort(support.begin(), support.end());
            (x_type ? layout.x_stabilizers : layout.z_stabilizers).push_back(std::move(support));
        }
    }

    for (int c = 0; c < d; ++c) layout.logical_z_support.push_back(qubit(0, c));
    for (int r = 0; r < d; ++r) layout.logical_x_support.push_back(qubit(r, 0));

    auto boundary = [&](const std::vector<std::vector<int>>& stabs) {
        std::vector<int> deg(layout.n_data, 0);
        for (const auto& s : stabs)
            for (int q : s) ++deg[q];
        std::vector<int> out;
        for (int q = 0; q < layout.n_data; ++q)
            if (deg[q] == 1) out.push_back(q);
        return out;
    };
    layout.x_boundary_qubits = boundary(layout.x_stabilizers);
    layout.z_boundary_qubits = boundary(layout.z_stabilizers);

    auto masks = [](const std::vector<std::vector<int>>& stabs) {
        std::vector<u64> out;
        out.reserve(stabs.size());
        for (const auto& s : stabs) {
            u64 m = 0;
            for (int q : s) m |= bit(q);
            out.push_back(m);
        }
        return out;
    };
    layout.x_support_masks = masks(layout.x_stabilizers);
    layout.z_support_masks = masks(layout.z_stabilizers);
    return layout;
}

u64 syndrome_of(const CodeLayout& layout, StabType type, u64 data_errors) {
    if (data_errors & ~mask_low(layout.n_data))
        throw std::invalid_argument("error vector longer than data qubit count");
    const auto& masks = layout.support_masks(type);
    u64 syndrome = 0;
    for (std::size_t i = 0; i < masks.size(); ++i)
        if (parity(data_errors & masks[i])) syndrome |= bit(int(i));
    return syndrome;
}

}  // namespace lutdec
