#pragma once

#include "cadent/modmatrix.hpp"
#include "cadent/rules.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cadent {

/// One observed lattice point of a space-time diagram: the symbol at `site`
/// after `time` update steps. Time is nonnegative; joins that reach into the
/// past are brought here by a uniform time translation (the invariant
/// measure does not see the offset).
struct ObservationCell {
    std::int64_t site = 0;
    std::int64_t time = 0;

    friend bool operator==(const ObservationCell&, const ObservationCell&) = default;
    friend bool operator<(const ObservationCell& a, const ObservationCell& b) {
        return a.time != b.time ? a.time < b.time : a.site < b.site;
    }
};

/// Finite set of observation cells, deduplicated and iterated in (time, site)
/// order.
class CellSet {
public:
    CellSet() = default;

    explicit CellSet(std::vector<ObservationCell> cells) : cells_(std::move(cells)) {
        for (const auto& c : cells_)
            if (c.time < 0)
                throw std::invalid_argument("CellSet: negative time " + std::to_string(c.time) +
                                            "; translate the query first");
        std::sort(cells_.begin(), cells_.end());
        cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    }

    /// Translate raw cells (possibly negative times) so min time becomes 0.
    /// Returns the set and the offset that was added to every time.
    static std::pair<CellSet, std::int64_t> normalized(std::vector<ObservationCell> raw) {
        std::int64_t offset = 0;
        if (!raw.empty()) {
            std::int64_t tmin = raw.front().time;
            for (const auto& c : raw) tmin = std::min(tmin, c.time);
            offset = tmin < 0 ? -tmin : 0;
            for (auto& c : raw) c.time += offset;
        }
        return {CellSet(std::move(raw)), offset};
    }

    /// All cells of one time row over sites [site_lo, site_hi].
    static CellSet row(std::int64_t time, std::int64_t site_lo, std::int64_t site_hi) {
        return block(time, time, site_lo, site_hi);
    }

    /// Full rectangle of cells, times [time_lo, time_hi] x sites [site_lo, site_hi].
    static CellSet block(std::int64_t time_lo, std::int64_t time_hi, std::int64_t site_lo,
                         std::int64_t site_hi) {
        std::vector<ObservationCell> v;
        for (std::int64_t t = time_lo; t <= time_hi; ++t)
            for (std::int64_t s = site_lo; s <= site_hi; ++s) v.push_back({s, t});
        return CellSet(std::move(v));
    }

    const std::vector<ObservationCell>& cells() const { return cells_; }
    bool empty() const { return cells_.empty(); }
    std::size_t size() const { return cells_.size(); }

    CellSet united(const CellSet& other) const {
        std::vector<ObservationCell> v = cells_;
        v.insert(v.end(), other.cells_.begin(), other.cells_.end());
        return CellSet(std::move(v));
    }

    bool contains_all(const CellSet& other) const {
        return std::includes(cells_.begin(), cells_.end(), other.cells_.begin(),
                             other.cells_.end());
    }

    friend bool operator==(const CellSet&, const CellSet&) = default;

private:
    std::vector<ObservationCell> cells_;
};

/// Smallest initial-configuration window that determines every cell: the
/// value at (s, t) depends on sites [s + t*lo, s + t*hi]. Empty set -> nullopt.
inline std::optional<Span> dependence_hull(const LocalRule& rule, const CellSet& cells) {
    if (cells.empty()) return std::nullopt;
    const Span sp = rule.span();
    bool first = true;
    Span hull{};
    for (const auto& c : cells.cells()) {
        const Span w{c.site + c.time * sp.lo, c.site + c.time * sp.hi};
        if (first) {
            hull = w;
            first = false;
        } else {
            hull.lo = std::min(hull.lo, w.lo);
            hull.hi = std::max(hull.hi, w.hi);
        }
    }
    return hull;
}

/// One row of a space-time diagram; values[i] sits at site left + i.
struct ConeRow {
    std::int64_t left = 0;
    std::vector<Sym> values;
};

struct SpaceTimeDiagram {
    std::vector<ConeRow> rows;  // rows[t] is the configuration after t steps
};

/// Evolve an initial segment on [left, left + len - 1] without wraparound.
/// Row j lives on [left - j*lo, right - j*hi]; the window must be wide enough
/// that the last row is nonempty.
inline SpaceTimeDiagram simulate_cone(const LocalRule& rule, std::span<const Sym> initial,
                                      std::int64_t left, std::int64_t steps) {
    if (steps < 0) throw std::invalid_argument("simulate_cone: negative step count");
    if (initial.empty()) throw std::invalid_argument("simulate_cone: empty initial segment");
    const Span sp = rule.span();
    const std::int64_t right = left + static_cast<std::int64_t>(initial.size()) - 1;
    if (right - steps * sp.hi < left - steps * sp.lo)
        throw std::invalid_argument("simulate_cone: window exhausted before step " +
                                    std::to_string(steps));
    SpaceTimeDiagram d;
    d.rows.reserve(static_cast<std::size_t>(steps) + 1);
    ConeRow row0{left, std::vector<Sym>(initial.begin(), initial.end())};
    for (auto& v : row0.values) v = mod_reduce(v, rule.modulus());
    d.rows.push_back(std::move(row0));
    const auto width = static_cast<std::size_t>(sp.width());
    for (std::int64_t j = 1; j <= steps; ++j) {
        const ConeRow& prev = d.rows.back();
        ConeRow next;
        next.left = prev.left - sp.lo;
        const std::int64_t next_right =
            prev.left + static_cast<std::int64_t>(prev.values.size()) - 1 - sp.hi;
        next.values.resize(static_cast<std::size_t>(next_right - next.left + 1));
        for (std::int64_t n = next.left; n <= next_right; ++n) {
            const auto offset = static_cast<std::size_t>(n + sp.lo - prev.left);
            next.values[static_cast<std::size_t>(n - next.left)] =
                apply_local(rule, std::span<const Sym>(prev.values).subspan(offset, width));
        }
        d.rows.push_back(std::move(next));
    }
    return d;
}

/// Evolve a length-N configuration with indices wrapping mod N. Demo output
/// only; never used by the entropy computations.
inline SpaceTimeDiagram simulate_cyclic(const LocalRule& rule, std::span<const Sym> config,
                                        std::int64_t steps) {
    if (steps < 0) throw std::invalid_argument("simulate_cyclic: negative step count");
    const std::int64_t n = static_cast<std::int64_t>(config.size());
    if (n < rule.span().width())
        throw std::invalid_argument("simulate_cyclic: ring of " + std::to_string(n) +
                                    " sites is narrower than the rule span");
    SpaceTimeDiagram d;
    ConeRow row0{0, std::vector<Sym>(config.begin(), config.end())};
    for (auto& v : row0.values) v = mod_reduce(v, rule.modulus());
    d.rows.push_back(std::move(row0));
    const Span sp = rule.span();
    for (std::int64_t j = 1; j <= steps; ++j) {
        const ConeRow& prev = d.rows.back();
        ConeRow next{0, std::vector<Sym>(static_cast<std::size_t>(n), 0)};
        for (std::int64_t s = 0; s < n; ++s) {
            std::int64_t acc = 0;
            for (std::int64_t i = sp.lo; i <= sp.hi; ++i) {
                const std::int64_t idx = mod_reduce(s + i, n);
                acc = (acc + rule.coeff(i) * prev.values[static_cast<std::size_t>(idx)]) %
                      rule.modulus();
            }
            next.values[static_cast<std::size_t>(s)] = acc;
        }
        d.rows.push_back(std::move(next));
    }
    return d;
}

/// Plain-text dump: header line with the leftmost column index, one row per
/// time step, symbols as digits (single characters for r <= 10, otherwise
/// comma separated).
inline std::string format_diagram(const SpaceTimeDiagram& d, std::int64_t modulus) {
    std::int64_t global_left = 0;
    bool first = true;
    for (const auto& row : d.rows) {
        if (first || row.left < global_left) global_left = row.left;
        first = false;
    }
    std::ostringstream out;
    out << "# left=" << global_left << "\n";
    for (const auto& row : d.rows) {
        const auto pad = static_cast<std::size_t>(row.left - global_left);
        if (modulus <= 10) {
            out << std::string(pad, ' ');
            for (const Sym v : row.values) out << v;
        } else {
            out << std::string(pad, ' ');
            for (std::size_t i = 0; i < row.values.size(); ++i) {
                if (i) out << ',';
                out << row.values[i];
            }
        }
        out << "\n";
    }
    return out.str();
}

/// A cell set linearized as a matrix over Z_r acting on the dependence-hull
/// window: row of cell (s, t) holds the t-step iterated-rule coefficients
/// shifted to s, so matrix * initial window reproduces the simulated values.
struct LinearizedCells {
    MatrixZr matrix;
    std::optional<Span> window;  // column j is site window->lo + j
};

inline LinearizedCells cells_to_matrix(const LocalRule& rule, const CellSet& cells) {
    const auto hull = dependence_hull(rule, cells);
    if (!hull) return {MatrixZr(rule.modulus(), 0, 0), std::nullopt};
    MatrixZr m(rule.modulus(), cells.size(), static_cast<std::size_t>(hull->width()));
    std::map<std::int64_t, LocalRule> powers;
    std::size_t row = 0;
    for (const auto& c : cells.cells()) {
        auto it = powers.find(c.time);
        if (it == powers.end()) it = powers.emplace(c.time, rule_power(rule, c.time)).first;
        const LocalRule& p = it->second;
        for (std::int64_t i = p.span().lo; i <= p.span().hi; ++i)
            m.set(row, static_cast<std::size_t>(c.site + i - hull->lo), p.coeff(i));
        ++row;
    }
    return {std::move(m), hull};
}

}  // namespace cadent
