#pragma once

#include "cadent/modmatrix.hpp"
#include "cadent/rational.hpp"
#include "cadent/rules.hpp"
#include "cadent/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cadent {

/// Entropy of the joint distribution of the given cells under the uniform
/// product measure: the cells are a linear image of the uniform initial
/// window, so the distribution is uniform on that image and the entropy is
/// the log image size. Exact counting, no sampling.
inline double joint_entropy(const LocalRule& rule, const CellSet& cells) {
    if (cells.empty()) return 0.0;
    return log_image_size(cells_to_matrix(rule, cells).matrix);
}

/// H(target | given) = H(target u given) - H(given); nonnegative.
inline double conditional_entropy(const LocalRule& rule, const CellSet& target,
                                  const CellSet& given) {
    const double v = joint_entropy(rule, target.united(given)) - joint_entropy(rule, given);
    return std::max(0.0, v);
}

enum class ConvergenceStatus { converged, lower_bound, max_depth };

inline const char* to_string(ConvergenceStatus s) {
    switch (s) {
        case ConvergenceStatus::converged: return "converged";
        case ConvergenceStatus::lower_bound: return "lower_bound";
        case ConvergenceStatus::max_depth: return "max_depth";
    }
    return "?";
}

/// Result of an entropy-rate computation. differences[m] is the increment
/// H(rows 0..m) - H(rows 0..m-1) of the windowed diagram; the sequence is
/// nonincreasing and its limit is the entropy of the map relative to the
/// window partition. `converged` is only claimed when that partition is a
/// known generator (bipermutative rule whose effective span contains 0 and
/// fits the window); otherwise a stabilized value is reported as lower_bound.
struct EntropyEstimate {
    double value = 0.0;
    ConvergenceStatus status = ConvergenceStatus::max_depth;
    std::vector<double> differences;
    std::int64_t window_halfwidth = 0;
};

/// Window halfwidth matching the rule reach: max(|effective lo|, |effective hi|).
inline std::int64_t default_window_halfwidth(const LocalRule& rule) {
    const auto eff = effective_span(rule);
    if (!eff) return 0;
    return std::max(std::llabs(eff->lo), std::llabs(eff->hi));
}

inline EntropyEstimate entropy_rate(const LocalRule& rule, std::int64_t window_halfwidth,
                                    std::int64_t max_rows = 12, double tol = 1e-9) {
    if (window_halfwidth < 0)
        throw std::invalid_argument("entropy_rate: window halfwidth must be nonnegative");
    if (max_rows < 2) throw std::invalid_argument("entropy_rate: need at least two rows");
    EntropyEstimate est;
    est.window_halfwidth = window_halfwidth;

    const auto eff = effective_span(rule);
    bool exact = false;
    if (!eff) {
        exact = true;  // zero rule: the diagram vanishes after one step, 0 is exact
    } else {
        const auto rep = permutativity(rule);
        exact = rep.bipermutative && eff->lo <= 0 && 0 <= eff->hi &&
                window_halfwidth >= std::max(-eff->lo, eff->hi);
    }

    double prev_joint = 0.0;
    for (std::int64_t m = 0; m <= max_rows; ++m) {
        const CellSet cells = CellSet::block(0, m, -window_halfwidth, window_halfwidth);
        const double joint = joint_entropy(rule, cells);
        const double delta = joint - prev_joint;
        prev_joint = joint;
        est.differences.push_back(delta);
        if (m >= 1 &&
            std::abs(delta - est.differences[static_cast<std::size_t>(m - 1)]) <= tol) {
            est.value = delta;
            est.status = exact ? ConvergenceStatus::converged : ConvergenceStatus::lower_bound;
            return est;
        }
    }
    est.value = est.differences.back();
    est.status = ConvergenceStatus::max_depth;
    return est;
}

inline EntropyEstimate entropy_rate(const LocalRule& rule) {
    return entropy_rate(rule, default_window_halfwidth(rule));
}

/// Proven closed form only: a bipermutative rule with symmetric effective
/// span [-k, k] has entropy 2k log r. Everything else returns nullopt and
/// callers fall back to entropy_rate.
inline std::optional<double> closed_form_entropy(const LocalRule& rule) {
    const auto rep = permutativity(rule);
    if (!rep.bipermutative || !rep.effective_span) return std::nullopt;
    if (rep.effective_span->lo != -rep.effective_span->hi) return std::nullopt;
    return 2.0 * static_cast<double>(rep.effective_span->hi) *
           std::log(static_cast<double>(rule.modulus()));
}

/// Closed plane segment from (a, 0) to (a + 1/omega, 1); omega > 0.
struct IntervalSpec {
    Rational a;
    Rational omega;

    IntervalSpec(Rational a_, Rational omega_) : a(a_), omega(omega_) {
        if (omega <= Rational(0)) throw std::invalid_argument("IntervalSpec: slope must be positive");
    }

    /// Site of the upper endpoint, a + 1/omega.
    Rational upper_site() const { return a + Rational(1) / omega; }

    friend bool operator==(const IntervalSpec&, const IntervalSpec&) = default;
};

/// Slide the interval one time unit along its own slope: a' = a + 1/omega.
inline IntervalSpec advance_interval(const IntervalSpec& I) {
    return IntervalSpec(I.upper_site(), I.omega);
}

/// Cells for one side of the truncated right/left entropies, in raw
/// diagram-relative times: the future row at time +1, conditioning rows at
/// times -q for q = 0..depth. On the right side a row starts at the ceiling
/// of the boundary a + q/omega and runs `width` sites rightward; the left
/// side mirrors with floors running leftward.
struct RlCellLayout {
    std::vector<ObservationCell> future;        // time +1
    std::vector<ObservationCell> conditioning;  // times 0, -1, ..., -depth
};

inline RlCellLayout rl_cell_layout(const IntervalSpec& I, std::int64_t depth, std::int64_t width,
                                   bool right_side) {
    RlCellLayout out;
    if (width <= 0) return out;
    auto row = [&](const Rational& boundary, std::int64_t time,
                   std::vector<ObservationCell>& dest) {
        if (right_side) {
            const std::int64_t start = rational_ceil(boundary);
            for (std::int64_t s = start; s < start + width; ++s) dest.push_back({s, time});
        } else {
            const std::int64_t end = rational_floor(boundary);
            for (std::int64_t s = end - width + 1; s <= end; ++s) dest.push_back({s, time});
        }
    };
    row(I.upper_site(), 1, out.future);
    for (std::int64_t q = 0; q <= depth; ++q)
        row(I.a + Rational(q) / I.omega, -q, out.conditioning);
    return out;
}

/// Truncated right and left entropies of an interval: entropy of the future
/// row conditioned on the past staircase, both cut to `width` sites per row
/// and `depth` past rows. All cells are translated together so times are
/// nonnegative; the applied offset is reported. Deepening the conditioning
/// can only lower the values; widening grows the future and the conditioning
/// at once and need not be monotone.
struct RightLeftEntropy {
    double right = 0.0;
    double left = 0.0;
    std::int64_t time_offset = 0;
};

inline RightLeftEntropy right_left_entropies(const LocalRule& rule, const IntervalSpec& I,
                                             std::int64_t depth, std::int64_t width) {
    if (depth < 1) throw std::invalid_argument("right_left_entropies: depth must be at least 1");
    if (width < 0) throw std::invalid_argument("right_left_entropies: width must be nonnegative");
    RightLeftEntropy out;
    if (width == 0) return out;
    out.time_offset = depth;
    for (const bool right_side : {true, false}) {
        RlCellLayout layout = rl_cell_layout(I, depth, width, right_side);
        std::vector<ObservationCell> all = layout.future;
        all.insert(all.end(), layout.conditioning.begin(), layout.conditioning.end());
        const std::int64_t offset = CellSet::normalized(std::move(all)).second;
        std::vector<ObservationCell> fut = layout.future, cond = layout.conditioning;
        for (auto& c : fut) c.time += offset;
        for (auto& c : cond) c.time += offset;
        const double h = conditional_entropy(rule, CellSet(std::move(fut)), CellSet(std::move(cond)));
        (right_side ? out.right : out.left) = h;
    }
    return out;
}

}  // namespace cadent
