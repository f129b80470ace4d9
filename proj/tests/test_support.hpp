#pragma once

// Test-only oracles, independent of the library paths they referee.

#include "cadent/rules.hpp"
#include "cadent/spacetime.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace cadent::testing {

/// Exhaustive permutativity check on the effective window: for every fixed
/// choice of the other coordinates, the extreme coordinate must act as a
/// permutation of Z_r.
struct BrutePermutativity {
    bool left = false;
    bool right = false;
};

inline BrutePermutativity brute_force_permutativity(const LocalRule& rule) {
    const auto eff = effective_span(rule);
    BrutePermutativity out;
    if (!eff) return out;
    const std::int64_t r = rule.modulus();
    const auto width = static_cast<std::size_t>(eff->width());
    std::vector<Sym> window(width, 0);
    auto effective_apply = [&](const std::vector<Sym>& w) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < width; ++i)
            acc = (acc + rule.coeff(eff->lo + static_cast<std::int64_t>(i)) * w[i]) % r;
        return acc;
    };
    auto check_end = [&](std::size_t moving) {
        std::vector<Sym> w(width, 0);
        while (true) {
            std::set<Sym> values;
            for (Sym v = 0; v < r; ++v) {
                w[moving] = v;
                values.insert(effective_apply(w));
            }
            if (static_cast<std::int64_t>(values.size()) != r) return false;
            // odometer over the fixed coordinates
            std::size_t i = 0;
            for (; i < width; ++i) {
                if (i == moving) continue;
                if (++w[i] < r) break;
                w[i] = 0;
            }
            if (i >= width) return true;
        }
    };
    out.left = check_end(0);
    out.right = width == 1 ? out.left : check_end(width - 1);
    return out;
}

/// Read the symbol of cell (site, time) out of a simulated diagram.
inline Sym diagram_at(const SpaceTimeDiagram& d, std::int64_t site, std::int64_t time) {
    const ConeRow& row = d.rows[static_cast<std::size_t>(time)];
    return row.values[static_cast<std::size_t>(site - row.left)];
}

}  // namespace cadent::testing
