#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadent {

/// Symbol value / residue mod r. Kept at 64 bits so intermediate products of
/// reduced residues never overflow (moduli are capped at 2^31 - 1).
using Sym = std::int64_t;

/// Canonical representative of v mod r in [0, r).
inline std::int64_t mod_reduce(std::int64_t v, std::int64_t r) {
    std::int64_t m = v % r;
    return m < 0 ? m + r : m;
}

/// Closed integer interval [lo, hi] of lattice sites.
struct Span {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::int64_t width() const { return hi - lo + 1; }
    bool contains(std::int64_t s) const { return lo <= s && s <= hi; }
    friend bool operator==(const Span&, const Span&) = default;
};

/// Local rule of an additive one-dimensional cellular automaton over Z_r.
/// One update step replaces every site value by
///
///     x_n  <-  sum_{i in [lo, hi]} coeff(i) * x_{n+i}   (mod r).
///
/// The span is kept exactly as declared; zero coefficients at the ends stay
/// part of the window bookkeeping. Classification (permutativity) looks only
/// at the outermost nonzero coefficients.
class LocalRule {
public:
    static constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

    LocalRule(std::int64_t modulus, std::int64_t lo, std::int64_t hi, std::vector<Sym> coeffs)
        : modulus_(modulus), span_{lo, hi}, coeffs_(std::move(coeffs)) {
        if (modulus_ < 2)
            throw std::invalid_argument("LocalRule: modulus must be at least 2, got " +
                                        std::to_string(modulus_));
        if (modulus_ > kMaxModulus)
            throw std::invalid_argument("LocalRule: modulus exceeds supported limit 2^31-1");
        if (lo > hi)
            throw std::invalid_argument("LocalRule: empty span [" + std::to_string(lo) + ".." +
                                        std::to_string(hi) + "]");
        if (coeffs_.size() != static_cast<std::size_t>(span_.width()))
            throw std::invalid_argument(
                "LocalRule: span [" + std::to_string(lo) + ".." + std::to_string(hi) + "] needs " +
                std::to_string(span_.width()) + " coefficients, got " +
                std::to_string(coeffs_.size()));
        for (auto& c : coeffs_) c = mod_reduce(c, modulus_);
    }

    std::int64_t modulus() const { return modulus_; }
    Span span() const { return span_; }

    /// Coefficient at offset i; zero outside the declared span.
    Sym coeff(std::int64_t i) const {
        return span_.contains(i) ? coeffs_[static_cast<std::size_t>(i - span_.lo)] : 0;
    }

    /// Coefficients left to right over the declared span.
    const std::vector<Sym>& coeffs() const { return coeffs_; }

    friend bool operator==(const LocalRule&, const LocalRule&) = default;

private:
    std::int64_t modulus_;
    Span span_;
    std::vector<Sym> coeffs_;
};

/// The rule of the identity map: a single coefficient 1 at offset 0.
inline LocalRule identity_rule(std::int64_t modulus) { return LocalRule(modulus, 0, 0, {1}); }

/// Evaluate the rule on one window of symbols (window[0] sits at span().lo).
inline Sym apply_local(const LocalRule& rule, std::span<const Sym> window) {
    const auto width = static_cast<std::size_t>(rule.span().width());
    if (window.size() != width)
        throw std::invalid_argument("apply_local: window length " + std::to_string(window.size()) +
                                    " does not match rule span width " + std::to_string(width));
    const std::int64_t r = rule.modulus();
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < width; ++i)
        acc = (acc + rule.coeffs()[i] * mod_reduce(window[i], r)) % r;
    return acc;
}

/// Rule of the composed map T_a . T_b: coefficient sequences convolve and
/// spans add.
inline LocalRule convolve(const LocalRule& a, const LocalRule& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("convolve: mismatched moduli");
    const std::int64_t r = a.modulus();
    const Span sa = a.span(), sb = b.span();
    const Span sc{sa.lo + sb.lo, sa.hi + sb.hi};
    std::vector<Sym> out(static_cast<std::size_t>(sc.width()), 0);
    for (std::int64_t i = sa.lo; i <= sa.hi; ++i) {
        const Sym ci = a.coeff(i);
        if (ci == 0) continue;
        for (std::int64_t j = sb.lo; j <= sb.hi; ++j) {
            auto& slot = out[static_cast<std::size_t>(i + j - sc.lo)];
            slot = (slot + ci * b.coeff(j)) % r;
        }
    }
    return LocalRule(r, sc.lo, sc.hi, std::move(out));
}

/// Rule of the iterated map T^u: the u-fold convolution power. u = 0 gives
/// the identity rule.
inline LocalRule rule_power(const LocalRule& rule, std::int64_t iterations) {
    if (iterations < 0)
        throw std::invalid_argument("rule_power: iteration count must be nonnegative");
    if (iterations == 1) return rule;
    LocalRule acc = identity_rule(rule.modulus());
    for (std::int64_t i = 0; i < iterations; ++i) acc = convolve(acc, rule);
    return acc;
}

/// Rule generating shift^i . T_rule: same coefficients on the span moved by i.
inline LocalRule rule_shift(const LocalRule& rule, std::int64_t i) {
    return LocalRule(rule.modulus(), rule.span().lo + i, rule.span().hi + i, rule.coeffs());
}

/// Rule generating shift^p . T^q (the lattice-direction composition). q must
/// be nonnegative: the action has no inverse time step.
inline LocalRule compose_direction(const LocalRule& rule, std::int64_t p, std::int64_t q) {
    if (q < 0) throw std::invalid_argument("compose_direction: time component must be nonnegative");
    return rule_shift(rule_power(rule, q), p);
}

/// Outermost nonzero coefficient offsets, or nullopt for the zero rule.
inline std::optional<Span> effective_span(const LocalRule& rule) {
    const Span s = rule.span();
    std::int64_t lo = s.lo;
    while (lo <= s.hi && rule.coeff(lo) == 0) ++lo;
    if (lo > s.hi) return std::nullopt;
    std::int64_t hi = s.hi;
    while (rule.coeff(hi) == 0) --hi;
    return Span{lo, hi};
}

struct PermutativityReport {
    bool left_permutative = false;
    bool right_permutative = false;
    bool bipermutative = false;
    std::optional<Span> effective_span;  // nullopt marks the zero rule
};

/// Classify the rule by its extreme coefficients. For additive rules an end
/// of the effective span is permutative exactly when its coefficient is a
/// unit mod r. The zero rule reports both flags false.
inline PermutativityReport permutativity(const LocalRule& rule) {
    PermutativityReport rep;
    rep.effective_span = effective_span(rule);
    if (!rep.effective_span) return rep;
    rep.left_permutative = std::gcd(rule.coeff(rep.effective_span->lo), rule.modulus()) == 1;
    rep.right_permutative = std::gcd(rule.coeff(rep.effective_span->hi), rule.modulus()) == 1;
    rep.bipermutative = rep.left_permutative && rep.right_permutative;
    return rep;
}

}  // namespace cadent
