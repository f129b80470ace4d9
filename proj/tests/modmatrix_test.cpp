#include "cadent/modmatrix.hpp"
#include "cadent/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace cadent;
using Catch::Approx;

namespace {

MatrixZr from_rows(std::int64_t modulus, std::vector<std::vector<std::int64_t>> rows) {
    MatrixZr m(modulus, rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, rows[i][j]);
    return m;
}

MatrixZr random_matrix(TestRng& rng, std::int64_t r, std::size_t rows, std::size_t cols) {
    MatrixZr m(r, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rng.below(r));
    return m;
}

}  // namespace

TEST_CASE("diagonalize small cases") {
    CHECK(diagonalize(from_rows(4, {{2}})).diag == std::vector<std::int64_t>{2});
    CHECK(diagonalize(MatrixZr::identity(7, 3)).diag == std::vector<std::int64_t>{1, 1, 1});

    // 2x2 diag(2,3) mod 6: image of (x,y) -> (2x,3y) has 3*2 = 6 elements
    const MatrixZr m = from_rows(6, {{2, 0}, {0, 3}});
    const DiagonalForm d = diagonalize(m);
    CHECK(d.diag == std::vector<std::int64_t>{1, 0});
    CHECK(enumerate_image_size(m) == 6);
    CHECK(image_size_from_diagonal(m) == 6);
}

TEST_CASE("log_image_size and log_kernel_size") {
    const double log5 = std::log(5.0);
    CHECK(log_image_size(MatrixZr::identity(5, 4)) == Approx(4 * log5).margin(1e-12));
    CHECK(log_image_size(from_rows(4, {{2}})) == Approx(std::log(2.0)).margin(1e-12));
    CHECK(log_image_size(MatrixZr(3, 2, 2)) == Approx(0.0).margin(1e-12));

    CHECK(log_kernel_size(MatrixZr::identity(5, 4)) == Approx(0.0).margin(1e-12));
    CHECK(log_kernel_size(MatrixZr(5, 3, 2)) == Approx(2 * log5).margin(1e-12));
    CHECK(log_kernel_size(from_rows(4, {{2}})) == Approx(std::log(2.0)).margin(1e-12));
}

TEST_CASE("empty matrices") {
    CHECK(log_image_size(MatrixZr(3, 0, 0)) == Approx(0.0));
    CHECK(log_image_size(MatrixZr(3, 0, 2)) == Approx(0.0));
    CHECK(log_image_size(MatrixZr(3, 2, 0)) == Approx(0.0));
    CHECK(log_kernel_size(MatrixZr(3, 0, 2)) == Approx(2 * std::log(3.0)));
}

TEST_CASE("diagonal form is a canonical divisor chain") {
    TestRng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t r = rng.in(2, 12);
        const MatrixZr m = random_matrix(rng, r, rng.in(1, 6), rng.in(1, 6));
        const DiagonalForm d = diagonalize(m);
        CHECK(d.divisor_chain_ok());
    }
}

TEST_CASE("diagonalization transforms reconstruct the matrix") {
    TestRng rng(43);
    for (int trial = 0; trial < 120; ++trial) {
        const std::int64_t r = rng.in(2, 12);
        const std::size_t rows = rng.in(1, 5), cols = rng.in(1, 5);
        const MatrixZr m = random_matrix(rng, r, rows, cols);
        const Diagonalization full = diagonalize_with_transforms(m);

        CHECK(multiply(full.row_transform, full.row_transform_inv) == MatrixZr::identity(r, rows));
        CHECK(multiply(full.col_transform_inv, full.col_transform) == MatrixZr::identity(r, cols));

        MatrixZr expected(r, rows, cols);
        for (std::size_t i = 0; i < full.form.diag.size(); ++i)
            expected.set(i, i, full.form.diag[i]);
        CHECK(multiply(multiply(full.row_transform, m), full.col_transform) == expected);
        CHECK(multiply(multiply(full.row_transform_inv, expected), full.col_transform_inv) == m);
    }
}

TEST_CASE("image size equals exhaustive enumeration") {
    TestRng rng(44);
    for (int trial = 0; trial < 120; ++trial) {
        std::int64_t r, cols;
        do {
            r = rng.in(2, 12);
            cols = rng.in(1, 6);
        } while (std::pow(static_cast<double>(r), static_cast<double>(cols)) > 20000.0);
        const MatrixZr m = random_matrix(rng, r, rng.in(1, 6), cols);
        CHECK(image_size_from_diagonal(m) == enumerate_image_size(m));
        CHECK(std::llround(std::exp(log_image_size(m))) ==
              static_cast<std::int64_t>(enumerate_image_size(m)));
    }
}

TEST_CASE("rank-nullity over the finite module") {
    TestRng rng(45);
    for (int trial = 0; trial < 150; ++trial) {
        const std::int64_t r = rng.in(2, 12);
        const MatrixZr m = random_matrix(rng, r, rng.in(1, 6), rng.in(1, 6));
        const double total = static_cast<double>(m.cols()) * std::log(static_cast<double>(r));
        CHECK(log_image_size(m) + log_kernel_size(m) == Approx(total).margin(1e-12));
    }
}

TEST_CASE("image size invariant under permutations and unit scalings") {
    TestRng rng(46);
    for (int trial = 0; trial < 80; ++trial) {
        const std::int64_t r = rng.in(2, 12);
        const std::size_t rows = rng.in(2, 5), cols = rng.in(2, 5);
        const MatrixZr m = random_matrix(rng, r, rows, cols);
        const double base = log_image_size(m);

        MatrixZr swapped = m;
        const std::size_t i = rng.below(rows), j = rng.below(rows);
        for (std::size_t c = 0; c < cols; ++c) {
            const std::int64_t tmp = swapped(i, c);
            swapped.set(i, c, swapped(j, c));
            swapped.set(j, c, tmp);
        }
        CHECK(log_image_size(swapped) == Approx(base).margin(1e-12));

        std::int64_t unit = 0;
        do {
            unit = rng.in(1, r - 1);
        } while (std::gcd(unit, r) != 1);
        MatrixZr scaled = m;
        const std::size_t col = rng.below(cols);
        for (std::size_t row = 0; row < rows; ++row) scaled.set(row, col, scaled(row, col) * unit);
        CHECK(log_image_size(scaled) == Approx(base).margin(1e-12));
    }
}

TEST_CASE("egcd and unit helpers") {
    TestRng rng(47);
    for (int trial = 0; trial < 300; ++trial) {
        const std::int64_t a = rng.in(0, 80), b = rng.in(0, 80);
        const Egcd e = egcd(a, b);
        CHECK(e.g == std::gcd(a, b));
        CHECK(e.x * a + e.y * b == e.g);
    }
    for (std::int64_t r = 2; r <= 16; ++r) {
        for (std::int64_t a = 0; a < r; ++a) {
            const std::int64_t u = unit_scaling_to_gcd(a, r);
            CHECK(std::gcd(u, r) == 1);
            CHECK(mod_reduce(u * a, r) == (a == 0 ? 0 : std::gcd(a, r)));
        }
    }
}
