#pragma once

#include "cadent/entropy.hpp"
#include "cadent/rational.hpp"
#include "cadent/rules.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadent {

/// Lattice direction (p, q): p shift steps and q >= 0 automaton steps.
struct DirectionVector {
    std::int64_t p = 0;
    std::int64_t q = 0;

    friend bool operator==(const DirectionVector&, const DirectionVector&) = default;
};

/// Entropy in lattice direction (p, q), computed as the entropy rate of the
/// composed rule of shift^p T^q. Pure shift directions (q = 0) have the
/// known value |p| log r, reported directly.
inline EntropyEstimate directional_entropy(const LocalRule& rule, DirectionVector v,
                                           std::int64_t max_rows = 12, double tol = 1e-9) {
    if (v.q < 0)
        throw std::invalid_argument("directional_entropy: time component must be nonnegative");
    if (v.p == 0 && v.q == 0) throw std::invalid_argument("directional_entropy: zero direction");
    if (v.q == 0) {
        EntropyEstimate est;
        est.value = static_cast<double>(std::llabs(v.p)) *
                    std::log(static_cast<double>(rule.modulus()));
        est.status = ConvergenceStatus::converged;
        est.window_halfwidth = 0;
        return est;
    }
    const LocalRule composed = compose_direction(rule, v.p, v.q);
    return entropy_rate(composed, default_window_halfwidth(composed), max_rows, tol);
}

struct HomogeneityRow {
    std::int64_t u = 0;
    double value = 0.0;
    double ratio = 0.0;  // value / u
};

/// First-degree homogeneity probe: h along u*(p, q) against u * h(p, q).
struct HomogeneityReport {
    DirectionVector direction;
    double base_value = 0.0;
    std::vector<HomogeneityRow> rows;
    double max_deviation = 0.0;  // max |ratio - base_value|
    bool passed = false;
};

inline HomogeneityReport homogeneity_check(const LocalRule& rule, DirectionVector v,
                                           std::int64_t u_max, double tol = 1e-9) {
    if (u_max < 2) throw std::invalid_argument("homogeneity_check: u_max must be at least 2");
    HomogeneityReport rep;
    rep.direction = v;
    for (std::int64_t u = 1; u <= u_max; ++u) {
        const DirectionVector uv{u * v.p, u * v.q};
        const double h = directional_entropy(rule, uv).value;
        rep.rows.push_back({u, h, h / static_cast<double>(u)});
    }
    rep.base_value = rep.rows.front().value;
    for (const auto& row : rep.rows)
        rep.max_deviation = std::max(rep.max_deviation, std::abs(row.ratio - rep.base_value));
    rep.passed = rep.max_deviation <= tol;
    return rep;
}

/// Continued-fraction expansion of a rational, floor convention: x = [a0; a1,
/// a2, ...] with a_i >= 1 past the first term. Terminates exactly.
inline std::vector<std::int64_t> continued_fraction_terms(Rational x) {
    std::vector<std::int64_t> terms;
    while (true) {
        const std::int64_t fl = rational_floor(x);
        terms.push_back(fl);
        const Rational frac = x - Rational(fl);
        if (frac == Rational(0)) break;
        x = Rational(1) / frac;
    }
    return terms;
}

/// Convergents (m_i, n_i) of a continued fraction by the standard
/// recurrence; n_i >= 1 throughout.
inline std::vector<DirectionVector> convergents(std::span<const std::int64_t> cf_terms,
                                                std::int64_t count) {
    if (cf_terms.empty()) throw std::invalid_argument("convergents: empty term list");
    if (count < 1) throw std::invalid_argument("convergents: count must be at least 1");
    for (std::size_t i = 1; i < cf_terms.size(); ++i)
        if (cf_terms[i] < 1)
            throw std::invalid_argument("convergents: terms after the first must be positive");
    std::vector<DirectionVector> out;
    // p_i = a_i p_{i-1} + p_{i-2}, q_i = a_i q_{i-1} + q_{i-2}, seeds (1, 0) and (0, 1)
    std::int64_t prev_p = 1, prev_q = 0, prevprev_p = 0, prevprev_q = 1;
    for (std::size_t i = 0; i < cf_terms.size() && static_cast<std::int64_t>(out.size()) < count;
         ++i) {
        const std::int64_t a = cf_terms[i];
        const std::int64_t p = a * prev_p + prevprev_p;
        const std::int64_t q = a * prev_q + prevprev_q;
        prevprev_p = prev_p;
        prevprev_q = prev_q;
        prev_p = p;
        prev_q = q;
        out.push_back({p, q});
    }
    return out;
}

/// Convergents of a rational slope; the list stops at the exact fraction.
inline std::vector<DirectionVector> convergents(const Rational& omega0, std::int64_t count) {
    const auto terms = continued_fraction_terms(omega0);
    return convergents(std::span<const std::int64_t>(terms), count);
}

/// Entropy per unit of direction length along a sequence of lattice
/// directions approaching a slope. No limit value is asserted; the report
/// carries the computed sequence and the largest consecutive gap over its
/// second half.
struct DirectionLimitReport {
    std::vector<std::int64_t> omega_terms;       // continued-fraction terms, when given
    std::vector<DirectionVector> directions;     // (m_i, n_i)
    std::vector<double> h_values;                // h_{m_i, n_i} in nats
    std::vector<double> c_values;                // h / sqrt(m^2 + n^2)
    std::vector<std::int64_t> windows;           // window halfwidth used per direction
    double cauchy_gap = 0.0;
};

namespace detail {

inline void fill_direction_limit(const LocalRule& rule, DirectionLimitReport& rep) {
    for (const DirectionVector& v : rep.directions) {
        const EntropyEstimate est = directional_entropy(rule, v);
        const double len = std::sqrt(static_cast<double>(v.p * v.p + v.q * v.q));
        rep.h_values.push_back(est.value);
        rep.c_values.push_back(est.value / len);
        rep.windows.push_back(est.window_halfwidth);
    }
    // max |c_{i+1} - c_i| over the second half of the sequence
    const std::size_t n = rep.c_values.size();
    for (std::size_t i = n / 2; i + 1 < n; ++i)
        rep.cauchy_gap = std::max(rep.cauchy_gap, std::abs(rep.c_values[i + 1] - rep.c_values[i]));
    if (n == 2) rep.cauchy_gap = std::abs(rep.c_values[1] - rep.c_values[0]);
}

}  // namespace detail

/// Rational slope p/q: the sequence is the exact multiples (i p, i q), and by
/// homogeneity every c_i equals h_{p,q} / sqrt(p^2 + q^2).
inline DirectionLimitReport unit_length_entropy(const LocalRule& rule, const Rational& omega0,
                                                std::int64_t depth) {
    if (depth < 2) throw std::invalid_argument("unit_length_entropy: depth must be at least 2");
    DirectionLimitReport rep;
    const std::int64_t p = omega0.numerator(), q = omega0.denominator();
    for (std::int64_t i = 1; i <= depth; ++i) rep.directions.push_back({i * p, i * q});
    detail::fill_direction_limit(rule, rep);
    return rep;
}

/// Irrational slope given by continued-fraction terms: the sequence is the
/// convergents, exact integer directions.
inline DirectionLimitReport unit_length_entropy(const LocalRule& rule,
                                                std::span<const std::int64_t> cf_terms,
                                                std::int64_t depth) {
    if (depth < 2) throw std::invalid_argument("unit_length_entropy: depth must be at least 2");
    DirectionLimitReport rep;
    rep.omega_terms.assign(cf_terms.begin(), cf_terms.end());
    rep.directions = convergents(cf_terms, depth);
    detail::fill_direction_limit(rule, rep);
    return rep;
}

/// One compared pair of truncated interval entropies.
struct IntervalComparisonRow {
    std::int64_t iteration = 0;
    double inner_sum = 0.0;  // H_r + H_l of the advanced inner interval
    double outer_sum = 0.0;
};

struct MonotonicityVerdict {
    bool passed = true;
    std::vector<IntervalComparisonRow> rows;
    std::vector<std::int64_t> violations;  // iterations where inner_sum > outer_sum
};

namespace detail {

inline bool cells_subset(const std::vector<ObservationCell>& inner,
                         const std::vector<ObservationCell>& outer) {
    for (const auto& c : inner)
        if (std::find(outer.begin(), outer.end(), c) == outer.end()) return false;
    return true;
}

}  // namespace detail

/// Check that the truncated H_r + H_l of a nested inner interval never
/// exceeds the outer one as both slide along their (shared) slope. The inner
/// future rows must be sub-rows of the outer ones; both futures are
/// conditioned on the outer interval's truncated staircase, which isolates
/// the future refinement the ordering comes from. (Truncating the
/// conditioning per interval instead breaks the ordering: a narrow staircase
/// can miss exactly the cells that pin the future row down.)
inline MonotonicityVerdict interval_monotonicity_suite(const LocalRule& rule,
                                                       const IntervalSpec& outer,
                                                       const IntervalSpec& inner,
                                                       std::int64_t iterations, std::int64_t depth,
                                                       std::int64_t outer_width,
                                                       std::int64_t inner_width, double tol = 1e-9) {
    if (inner.omega != outer.omega)
        throw std::invalid_argument("interval_monotonicity_suite: slopes differ");
    if (iterations < 0)
        throw std::invalid_argument("interval_monotonicity_suite: negative iteration count");
    MonotonicityVerdict verdict;
    IntervalSpec out_i = outer, in_i = inner;
    for (std::int64_t i = 0; i <= iterations; ++i) {
        IntervalComparisonRow row{i, 0.0, 0.0};
        for (const bool side : {true, false}) {
            const RlCellLayout lo = rl_cell_layout(out_i, depth, outer_width, side);
            const RlCellLayout li = rl_cell_layout(in_i, depth, inner_width, side);
            if (!detail::cells_subset(li.future, lo.future))
                throw std::invalid_argument(
                    "interval_monotonicity_suite: inner future cells not contained in outer "
                    "future cells at iteration " +
                    std::to_string(i));
            std::vector<ObservationCell> all = lo.future;
            all.insert(all.end(), lo.conditioning.begin(), lo.conditioning.end());
            const std::int64_t offset = CellSet::normalized(std::move(all)).second;
            auto shifted = [offset](std::vector<ObservationCell> v) {
                for (auto& c : v) c.time += offset;
                return CellSet(std::move(v));
            };
            const CellSet cond = shifted(lo.conditioning);
            row.outer_sum += conditional_entropy(rule, shifted(lo.future), cond);
            row.inner_sum += conditional_entropy(rule, shifted(li.future), cond);
        }
        verdict.rows.push_back(row);
        if (row.inner_sum > row.outer_sum + tol) {
            verdict.passed = false;
            verdict.violations.push_back(i);
        }
        out_i = advance_interval(out_i);
        in_i = advance_interval(in_i);
    }
    return verdict;
}

}  // namespace cadent
