#include <doctest.h>

#include <memory>
#include <vector>

#include "bordism/double_complex.hpp"
#include "bordism/spectral_sequence.hpp"

using namespace bordism;

namespace {

// Rank by elimination on a byte copy of the operator, independent of gf2.
std::size_t byte_rank(const BoundaryMatrix& m) {
    std::vector<std::vector<std::uint8_t>> rows(m.n_source(), std::vector<std::uint8_t>(m.n_target()));
    for (std::size_t s = 0; s < m.n_source(); ++s) {
        for (const auto t : m.image(s)) rows[s][t] ^= 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.n_target() && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] != 0) {
                for (std::size_t j = c; j < m.n_target(); ++j) rows[i][j] ^= rows[r][j];
            }
        }
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("support of the double complex") {
    CHECK(in_support(3, -1, -1));
    CHECK(in_support(3, -1, 1));
    CHECK_FALSE(in_support(3, -1, 2));
    CHECK(in_support(3, 0, 1));
    CHECK(in_support(3, 2, -1));
    CHECK_FALSE(in_support(3, 1, 1));
    CHECK_FALSE(in_support(3, 3, -1));
}

TEST_CASE("dimensions of B_{p,q}") {
    for (int n = 1; n <= 4; ++n) {
        const auto b = build_double_complex(n);
        const auto& d = b.classes();
        CHECK(b.dim(-1, -1) == static_cast<std::size_t>(n));
        for (int q = 0; q <= n - 2; ++q) CHECK(BigInt(b.dim(-1, q)) == n * f_count(n, q));
        for (int p = 0; p <= n - 1; ++p) CHECK(b.dim(p, -1) == d.count(p));
        for (int p = 0; p <= n - 2; ++p) {
            for (int q = 0; p + q <= n - 2; ++q) CHECK(BigInt(b.dim(p, q)) == BigInt(d.count(p)) * link_count(n, p, q));
        }
    }
}

TEST_CASE("differentials square to zero and squares commute") {
    for (int n = 1; n <= 4; ++n) {
        const auto b = build_double_complex(n);
        CHECK(b.squares_commute());
        for (int p = -1; p <= n - 1; ++p) {
            for (int q = -1; q <= n - 2; ++q) {
                if (!in_support(n, p, q)) continue;
                if (in_support(n, p - 1, q)) CHECK(b.horizontal(p, q).then(b.horizontal(p - 1, q)).is_zero());
                if (in_support(n, p, q - 1)) CHECK(b.vertical(p, q).then(b.vertical(p, q - 1)).is_zero());
            }
        }
    }
}

TEST_CASE("basis elements round-trip through their indices") {
    const auto b = build_double_complex(3);
    for (int p = -1; p <= 2; ++p) {
        for (int q = -1; q <= 1; ++q) {
            if (!in_support(3, p, q)) continue;
            for (std::size_t i = 0; i < b.dim(p, q); ++i) {
                const auto e = b.element(p, q, i);
                CHECK(e.p == p);
                CHECK(e.q == q);
                CHECK(b.index_of(e) == i);
            }
        }
    }
    CHECK_THROWS(b.horizontal(1, 1));
}

TEST_CASE("total complex: degrees, blocks and homology by independent elimination") {
    for (int n = 1; n <= 3; ++n) {
        const auto t = build_total_complex(n);
        CHECK(t.chain_complex().is_chain_complex());
        for (int l = -2; l <= n - 2; ++l) {
            std::size_t sum = 0;
            for (const auto& [p, q] : t.positions(l)) {
                CHECK(t.offset(p, q) == sum);
                sum += t.bicomplex().dim(p, q);
            }
            CHECK(sum == t.dim(l));
            for (std::size_t i = 0; i < t.dim(l); ++i) CHECK(t.index_of(t.element(l, i)) == i);
        }
        for (int l = -2; l <= n - 2; ++l) {
            const std::size_t out = byte_rank(t.boundary(l));
            const std::size_t in = l + 1 <= n - 2 ? byte_rank(t.boundary(l + 1)) : 0;
            const std::size_t h = t.dim(l) - out - in;
            CHECK(t.homology_dim(l) == h);
            if (l != n - 2) CHECK(h == 0);
            if (l == n - 2) CHECK(BigInt(h) == dimension_formula(n));
        }
    }
    CHECK(build_total_complex(3).homology_dim(1) == 32);
}

TEST_CASE("restrict and embed are inverse on blocks") {
    const auto t = build_total_complex(3);
    BitVector chain(t.dim(1));
    for (std::size_t i = 0; i < chain.size(); i += 3) chain.set(i);
    BitVector rebuilt(t.dim(1));
    for (const auto& [p, q] : t.positions(1)) rebuilt ^= t.embed(p, q, t.restrict_to(p, q, chain));
    CHECK(rebuilt == chain);
}

TEST_CASE("faithful basis built from frames matches the top degree") {
    for (int n = 1; n <= 4; ++n) {
        const auto t = build_total_complex(n);
        const auto basis = faithful_basis_n_minus_2(n);
        REQUIRE(basis.size() == t.dim(n - 2));
        for (std::size_t i = 0; i < basis.size(); ++i) CHECK(basis[i] == t.element(n - 2, i));
    }
    CHECK(faithful_basis_n_minus_2(3).size() == 119);
    CHECK(faithful_basis_n_minus_2(4).size() == 6048);
}
