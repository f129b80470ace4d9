#pragma once

#include "cadent/rules.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadent {

/// Dense matrix over Z_r with entries kept reduced to [0, r).
class MatrixZr {
public:
    MatrixZr(std::int64_t modulus, std::size_t rows, std::size_t cols)
        : modulus_(modulus), rows_(rows), cols_(cols), e_(rows * cols, 0) {
        if (modulus_ < 2) throw std::invalid_argument("MatrixZr: modulus must be at least 2");
        if (modulus_ > LocalRule::kMaxModulus)
            throw std::invalid_argument("MatrixZr: modulus exceeds supported limit 2^31-1");
    }

    static MatrixZr identity(std::int64_t modulus, std::size_t n) {
        MatrixZr m(modulus, n, n);
        for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = 1;
        return m;
    }

    std::int64_t modulus() const { return modulus_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v) {
        e_[i * cols_ + j] = mod_reduce(v, modulus_);
    }

    friend bool operator==(const MatrixZr&, const MatrixZr&) = default;

private:
    std::int64_t modulus_;
    std::size_t rows_, cols_;
    std::vector<std::int64_t> e_;

    friend class GaussWork;
};

inline MatrixZr multiply(const MatrixZr& a, const MatrixZr& b) {
    if (a.modulus() != b.modulus() || a.cols() != b.rows())
        throw std::invalid_argument("multiply: incompatible matrices");
    const std::int64_t r = a.modulus();
    MatrixZr c(r, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::int64_t aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.set(i, j, c(i, j) + aik * b(k, j));
        }
    return c;
}

/// Matrix-vector product over Z_r.
inline std::vector<Sym> apply_matrix(const MatrixZr& m, std::span<const Sym> x) {
    if (x.size() != m.cols()) throw std::invalid_argument("apply_matrix: vector length mismatch");
    const std::int64_t r = m.modulus();
    std::vector<Sym> y(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            acc = (acc + m(i, j) * mod_reduce(x[j], r)) % r;
        y[i] = acc;
    }
    return y;
}

/// Extended gcd: g = gcd(a, b) >= 0 with x*a + y*b == g.
struct Egcd {
    std::int64_t g, x, y;
};

inline Egcd egcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

/// Multiplicative inverse of a unit mod r.
inline std::int64_t unit_inverse(std::int64_t u, std::int64_t r) {
    const Egcd e = egcd(mod_reduce(u, r), r);
    if (e.g != 1) throw std::invalid_argument("unit_inverse: argument is not a unit");
    return mod_reduce(e.x, r);
}

/// A unit u mod r with u*a == gcd(a, r) (mod r). Returns 1 for a == 0.
/// Any lift of (a/g)^{-1} mod r/g that is coprime to r works; candidates come
/// in steps of r/g and one of the first g is a unit.
inline std::int64_t unit_scaling_to_gcd(std::int64_t a, std::int64_t r) {
    a = mod_reduce(a, r);
    if (a == 0) return 1;
    const std::int64_t g = std::gcd(a, r);
    const std::int64_t ap = a / g, rp = r / g;
    std::int64_t u = mod_reduce(egcd(ap, rp).x, rp);
    while (std::gcd(u, r) != 1) u += rp;
    return u;
}

/// Diagonal of a divisor-chain diagonalization of a matrix over Z_r. Entries
/// are canonical divisors of r (0 stands for the zero ideal) and each entry
/// divides the next, so the multiset doubles as the invariant factors of the
/// image.
struct DiagonalForm {
    std::int64_t modulus = 2;
    std::vector<std::int64_t> diag;

    /// |image of d -> d*x| per diagonal entry: r / gcd(d, r), exact integers.
    std::vector<std::int64_t> image_factors() const {
        std::vector<std::int64_t> f;
        f.reserve(diag.size());
        for (const std::int64_t d : diag) f.push_back(modulus / std::gcd(d, modulus));
        return f;
    }

    double log_image_size() const {
        double s = 0.0;
        for (const std::int64_t d : diag) s += std::log(static_cast<double>(modulus / std::gcd(d, modulus)));
        return s;
    }

    bool divisor_chain_ok() const {
        auto ideal = [this](std::int64_t d) { return d == 0 ? modulus : d; };
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i] != 0 && modulus % diag[i] != 0) return false;
            if (ideal(diag[i + 1]) % ideal(diag[i]) != 0) return false;
        }
        if (!diag.empty() && diag.back() != 0 && modulus % diag.back() != 0) return false;
        return true;
    }
};

/// Diagonalization together with the invertible transforms that realize it:
/// diag(form) = row_transform * M * col_transform, and the *_inv matrices are
/// two-sided inverses accumulated from the elementary steps.
struct Diagonalization {
    DiagonalForm form;
    MatrixZr row_transform, row_transform_inv;  // m x m
    MatrixZr col_transform, col_transform_inv;  // n x n
};

/// In-place elimination state. Row ops act as W <- E W, column ops as
/// W <- W F; both kinds are elementary (determinant a unit), and when
/// tracking is on the transforms and their inverses are updated alongside.
class GaussWork {
public:
    GaussWork(const MatrixZr& m, bool track)
        : w_(m),
          track_(track),
          u_(MatrixZr::identity(m.modulus(), m.rows())),
          u_inv_(MatrixZr::identity(m.modulus(), m.rows())),
          v_(MatrixZr::identity(m.modulus(), m.cols())),
          v_inv_(MatrixZr::identity(m.modulus(), m.cols())) {}

    void run() {
        const std::size_t lim = std::min(w_.rows(), w_.cols());
        std::size_t t = 0;
        for (; t < lim; ++t) {
            if (!select_pivot(t)) break;
            clear_cross(t);
        }
        normalize_diagonal(lim);
        enforce_chain(lim);
    }

    const MatrixZr& work() const { return w_; }
    DiagonalForm diagonal() const {
        DiagonalForm d;
        d.modulus = w_.modulus();
        const std::size_t lim = std::min(w_.rows(), w_.cols());
        d.diag.reserve(lim);
        for (std::size_t i = 0; i < lim; ++i) d.diag.push_back(w_(i, i));
        return d;
    }
    MatrixZr take_u() { return u_; }
    MatrixZr take_u_inv() { return u_inv_; }
    MatrixZr take_v() { return v_; }
    MatrixZr take_v_inv() { return v_inv_; }

private:
    MatrixZr w_;
    bool track_;
    MatrixZr u_, u_inv_, v_, v_inv_;

    std::int64_t r() const { return w_.modulus(); }

    static void combine_rows_of(MatrixZr& m, std::size_t i, std::size_t j, std::int64_t x,
                                std::int64_t y, std::int64_t z, std::int64_t t) {
        const std::int64_t r = m.modulus();
        const std::int64_t xr = mod_reduce(x, r), yr = mod_reduce(y, r);
        const std::int64_t zr = mod_reduce(z, r), tr = mod_reduce(t, r);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const std::int64_t wi = m(i, c), wj = m(j, c);
            m.set(i, c, xr * wi + yr * wj);
            m.set(j, c, zr * wi + tr * wj);
        }
    }

    static void combine_cols_of(MatrixZr& m, std::size_t i, std::size_t j, std::int64_t x,
                                std::int64_t y, std::int64_t z, std::int64_t t) {
        const std::int64_t r = m.modulus();
        const std::int64_t xr = mod_reduce(x, r), yr = mod_reduce(y, r);
        const std::int64_t zr = mod_reduce(z, r), tr = mod_reduce(t, r);
        for (std::size_t row = 0; row < m.rows(); ++row) {
            const std::int64_t wi = m(row, i), wj = m(row, j);
            m.set(row, i, xr * wi + yr * wj);
            m.set(row, j, zr * wi + tr * wj);
        }
    }

    static void swap_rows_of(MatrixZr& m, std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const std::int64_t tmp = m(i, c);
            m.set(i, c, m(j, c));
            m.set(j, c, tmp);
        }
    }

    static void swap_cols_of(MatrixZr& m, std::size_t i, std::size_t j) {
        for (std::size_t row = 0; row < m.rows(); ++row) {
            const std::int64_t tmp = m(row, i);
            m.set(row, i, m(row, j));
            m.set(row, j, tmp);
        }
    }

    static void scale_row_of(MatrixZr& m, std::size_t i, std::int64_t s) {
        for (std::size_t c = 0; c < m.cols(); ++c) m.set(i, c, m(i, c) * s);
    }

    // rows (i, j) <- (x ri + y rj, z ri + t rj), determinant x t - y z == 1
    void row_op(std::size_t i, std::size_t j, std::int64_t x, std::int64_t y, std::int64_t z,
                std::int64_t t) {
        combine_rows_of(w_, i, j, x, y, z, t);
        if (!track_) return;
        combine_rows_of(u_, i, j, x, y, z, t);
        combine_cols_of(u_inv_, i, j, t, -z, -y, x);
    }

    // cols (i, j) <- (x ci + y cj, z ci + t cj), determinant x t - y z == 1
    void col_op(std::size_t i, std::size_t j, std::int64_t x, std::int64_t y, std::int64_t z,
                std::int64_t t) {
        combine_cols_of(w_, i, j, x, y, z, t);
        if (!track_) return;
        combine_cols_of(v_, i, j, x, y, z, t);
        combine_rows_of(v_inv_, i, j, t, -z, -y, x);
    }

    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        swap_rows_of(w_, i, j);
        if (!track_) return;
        swap_rows_of(u_, i, j);
        swap_cols_of(u_inv_, i, j);
    }

    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        swap_cols_of(w_, i, j);
        if (!track_) return;
        swap_cols_of(v_, i, j);
        swap_rows_of(v_inv_, i, j);
    }

    void row_scale(std::size_t i, std::int64_t unit) {
        if (unit == 1) return;
        scale_row_of(w_, i, unit);
        if (!track_) return;
        scale_row_of(u_, i, unit);
        const std::int64_t inv = unit_inverse(unit, r());
        for (std::size_t row = 0; row < u_inv_.rows(); ++row)
            u_inv_.set(row, i, u_inv_(row, i) * inv);
    }

    /// Pivot with minimal gcd(entry, r); ties take the lowest row, then the
    /// lowest column. Returns false when the trailing block is zero.
    bool select_pivot(std::size_t t) {
        std::int64_t best_gcd = 0;
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = t; i < w_.rows(); ++i)
            for (std::size_t j = t; j < w_.cols(); ++j) {
                const std::int64_t e = w_(i, j);
                if (e == 0) continue;
                const std::int64_t g = std::gcd(e, r());
                if (!found || g < best_gcd) {
                    found = true;
                    best_gcd = g;
                    bi = i;
                    bj = j;
                }
            }
        if (!found) return false;
        row_swap(t, bi);
        col_swap(t, bj);
        return true;
    }

    struct Combine {
        std::int64_t x, y, z, t;
    };

    /// Elementary 2x2 op sending (a, b) to (gcd(a, b), 0). A plain shear when
    /// the pivot already divides the entry, so the pivot only changes when it
    /// strictly shrinks -- the elimination loops terminate on that.
    static Combine elimination_op(std::int64_t a, std::int64_t b) {
        if (a != 0 && b % a == 0) return {1, 0, -(b / a), 1};
        const Egcd e = egcd(a, b);
        return {e.x, e.y, -(b / e.g), a / e.g};
    }

    /// Zero out column t below the pivot and row t right of it. Column and
    /// row passes can refill each other only while the pivot keeps strictly
    /// shrinking, so the loop terminates.
    void clear_cross(std::size_t t) {
        while (true) {
            for (std::size_t i = t + 1; i < w_.rows(); ++i) {
                const std::int64_t b = w_(i, t);
                if (b == 0) continue;
                const Combine c = elimination_op(w_(t, t), b);
                row_op(t, i, c.x, c.y, c.z, c.t);
            }
            for (std::size_t j = t + 1; j < w_.cols(); ++j) {
                const std::int64_t b = w_(t, j);
                if (b == 0) continue;
                const Combine c = elimination_op(w_(t, t), b);
                col_op(t, j, c.x, c.y, c.z, c.t);
            }
            bool dirty = false;
            for (std::size_t i = t + 1; i < w_.rows() && !dirty; ++i) dirty = w_(i, t) != 0;
            if (!dirty) return;
        }
    }

    /// Scale every pivot to its gcd with r so diagonal entries are canonical
    /// divisors of r.
    void normalize_diagonal(std::size_t lim) {
        for (std::size_t t = 0; t < lim; ++t) {
            const std::int64_t d = w_(t, t);
            if (d == 0) continue;
            row_scale(t, unit_scaling_to_gcd(d, r()));
        }
    }

    /// Repair the divisor chain: couple a violating adjacent pair through a
    /// column addition and re-eliminate the 2x2 block, which replaces the
    /// pair by (gcd, lcm). Repeated sweeps sort the prime exponents.
    void enforce_chain(std::size_t lim) {
        if (lim < 2) return;
        auto ideal = [this](std::int64_t d) { return d == 0 ? r() : d; };
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t t = 0; t + 1 < lim; ++t) {
                const std::int64_t a = w_(t, t), b = w_(t + 1, t + 1);
                if (ideal(b) % ideal(a) == 0) continue;
                changed = true;
                col_op(t, t + 1, 1, 1, 0, 1);  // col_t += col_{t+1}
                const Combine c = elimination_op(w_(t, t), w_(t + 1, t));
                row_op(t, t + 1, c.x, c.y, c.z, c.t);
                const std::int64_t g = w_(t, t);
                const std::int64_t f = w_(t, t + 1) / g;  // exact: g divides the fill-in
                col_op(t, t + 1, 1, 0, -f, 1);
            }
        }
    }
};

/// Divisor-chain diagonalization over Z_r via gcd-driven pivoting; all
/// arithmetic stays inside [0, r).
inline DiagonalForm diagonalize(const MatrixZr& m) {
    GaussWork g(m, /*track=*/false);
    g.run();
    return g.diagonal();
}

/// Diagonalization plus the accumulated elementary transforms, for callers
/// that want to check diag = U * M * V with invertible U, V.
inline Diagonalization diagonalize_with_transforms(const MatrixZr& m) {
    GaussWork g(m, /*track=*/true);
    g.run();
    return Diagonalization{g.diagonal(), g.take_u(), g.take_u_inv(), g.take_v(), g.take_v_inv()};
}

/// Natural log of |{Mx : x in Z_r^n}|.
inline double log_image_size(const MatrixZr& m) { return diagonalize(m).log_image_size(); }

/// Natural log of |{x : Mx = 0}| = n log r - log|image|.
inline double log_kernel_size(const MatrixZr& m) {
    return static_cast<double>(m.cols()) * std::log(static_cast<double>(m.modulus())) -
           log_image_size(m);
}

}  // namespace cadent
