#pragma once

#include "cadent/rational.hpp"
#include "cadent/rules.hpp"
#include "cadent/spacetime.hpp"

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cadent {

namespace detail {

inline std::int64_t parse_int(std::string_view text, const std::string& what) {
    std::size_t pos = 0;
    std::int64_t value = 0;
    try {
        value = std::stoll(std::string(text), &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from '" + std::string(text) + "'");
    }
    if (pos != text.size())
        throw std::invalid_argument("trailing characters in " + what + " '" + std::string(text) +
                                    "'");
    return value;
}

inline std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            break;
        }
        parts.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

}  // namespace detail

/// Parse the rule literal `r=2 span=-1..1 coeffs=1,0,1`: whitespace-separated
/// key=value triples in any order, coefficients listed left to right.
inline LocalRule parse_rule_literal(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string token;
    bool have_r = false, have_span = false, have_coeffs = false;
    std::int64_t r = 0, lo = 0, hi = 0;
    std::vector<Sym> coeffs;
    while (in >> token) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("rule literal: expected key=value, got '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "r") {
            r = detail::parse_int(value, "modulus");
            have_r = true;
        } else if (key == "span") {
            const std::size_t dots = value.find("..");
            if (dots == std::string::npos)
                throw std::invalid_argument("rule literal: span must look like lo..hi, got '" +
                                            value + "'");
            lo = detail::parse_int(value.substr(0, dots), "span lower end");
            hi = detail::parse_int(value.substr(dots + 2), "span upper end");
            have_span = true;
        } else if (key == "coeffs") {
            for (const auto& part : detail::split(value, ','))
                coeffs.push_back(detail::parse_int(part, "coefficient"));
            have_coeffs = true;
        } else {
            throw std::invalid_argument("rule literal: unknown key '" + key + "'");
        }
    }
    if (!have_r || !have_span || !have_coeffs)
        throw std::invalid_argument("rule literal: need r=, span= and coeffs=");
    return LocalRule(r, lo, hi, std::move(coeffs));
}

inline std::string format_rule_literal(const LocalRule& rule) {
    std::ostringstream out;
    out << "r=" << rule.modulus() << " span=" << rule.span().lo << ".." << rule.span().hi
        << " coeffs=";
    for (std::size_t i = 0; i < rule.coeffs().size(); ++i) {
        if (i) out << ',';
        out << rule.coeffs()[i];
    }
    return out.str();
}

/// Parse a cell list `site,time;site,time;...` (times may be negative; the
/// caller decides whether to translate).
inline std::vector<ObservationCell> parse_cells_literal(std::string_view text) {
    std::vector<ObservationCell> cells;
    for (const auto& pair : detail::split(text, ';')) {
        if (pair.empty()) continue;
        const auto parts = detail::split(pair, ',');
        if (parts.size() != 2)
            throw std::invalid_argument("cell literal: expected site,time, got '" + pair + "'");
        cells.push_back({detail::parse_int(parts[0], "cell site"),
                         detail::parse_int(parts[1], "cell time")});
    }
    if (cells.empty()) throw std::invalid_argument("cell literal: empty list");
    return cells;
}

/// Parse `p/q` or a plain integer as an exact rational.
inline Rational parse_rational(std::string_view text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(detail::parse_int(text, "rational"));
    const std::int64_t num = detail::parse_int(text.substr(0, slash), "numerator");
    const std::int64_t den = detail::parse_int(text.substr(slash + 1), "denominator");
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    return Rational(num, den);
}

/// Parse a direction `p,q`.
inline std::pair<std::int64_t, std::int64_t> parse_direction(std::string_view text) {
    const auto parts = detail::split(text, ',');
    if (parts.size() != 2)
        throw std::invalid_argument("direction: expected p,q, got '" + std::string(text) + "'");
    return {detail::parse_int(parts[0], "direction p"), detail::parse_int(parts[1], "direction q")};
}

/// Parse a comma-separated symbol list.
inline std::vector<Sym> parse_symbols(std::string_view text) {
    std::vector<Sym> out;
    for (const auto& part : detail::split(text, ',')) out.push_back(detail::parse_int(part, "symbol"));
    return out;
}

}  // namespace cadent
