#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "bordism/representations.hpp"
#include "bordism/spectral_sequence.hpp"

using namespace bordism;

namespace {

// Sorted multisets of n+1 nonzero masks whose span is everything.
std::vector<std::vector<Mask>> brute_faithful(int n) {
    std::vector<std::vector<Mask>> out;
    const Mask top = (Mask{1} << n) - 1;
    std::vector<Mask> cur;
    const auto rec = [&](auto&& self, Mask from) -> void {
        if (static_cast<int>(cur.size()) == n + 1) {
            std::set<Mask> span{0};
            for (const Mask v : cur) {
                std::set<Mask> next = span;
                for (const Mask s : span) next.insert(s ^ v);
                span = next;
            }
            if (span.size() == (std::size_t{1} << n)) out.push_back(cur);
            return;
        }
        for (Mask v = from; v <= top; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

// The membership criterion restated with pairwise equiv_rho instead of
// canonical invariants.
bool lls_pairwise(const RepPolynomial& f) {
    std::vector<FaithfulRep> monos(f.begin(), f.end());
    const int n = f.n();
    for (Mask rho = 1; rho < (Mask{1} << n); ++rho) {
        std::vector<std::size_t> with;
        for (std::size_t i = 0; i < monos.size(); ++i) {
            if (chi(rho, monos[i]) > 0) with.push_back(i);
        }
        std::vector<bool> used(with.size(), false);
        for (std::size_t a = 0; a < with.size(); ++a) {
            if (used[a]) continue;
            std::vector<std::size_t> cls;
            for (std::size_t b = a; b < with.size(); ++b) {
                if (!used[b] && equiv_rho(monos[with[a]], monos[with[b]], rho)) {
                    used[b] = true;
                    cls.push_back(with[b]);
                }
            }
            if (cls.size() % 2 != 0) return false;
            if (chi(rho, monos[cls.front()]) == 2) {
                std::map<Mask, int> parity;
                for (const auto i : cls) {
                    for (const Mask x : monos[i].factors()) parity[x] ^= 1;
                }
                for (const auto& [x, par] : parity) {
                    if (par != 0) return false;
                }
            }
        }
    }
    return true;
}

std::size_t byte_kernel_dim(const std::vector<std::vector<std::uint8_t>>& cols_major, std::size_t rows) {
    // Columns given as vectors; rank by elimination on the transposed copy.
    auto a = cols_major;
    std::size_t r = 0;
    for (std::size_t c = 0; c < rows && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            if (a[i][c] != 0) {
                for (std::size_t j = c; j < rows; ++j) a[i][j] ^= a[r][j];
            }
        }
        ++r;
    }
    return a.size() - r;
}

RepPolynomial single(const FaithfulRep& tau) {
    RepPolynomial f(tau.n());
    f.toggle(tau);
    return f;
}

}  // namespace

TEST_CASE("faithful representations") {
    for (int n = 1; n <= 3; ++n) {
        const auto reps = enumerate_faithful_reps(n);
        const auto want = brute_faithful(n);
        REQUIRE(reps.size() == want.size());
        for (std::size_t i = 0; i < reps.size(); ++i) CHECK(reps[i].factors() == want[i]);
    }
    CHECK(enumerate_faithful_reps(4).size() == 6048);
    CHECK(is_faithful(2, {1, 2, 3}));
    CHECK(is_faithful(2, {1, 1, 2}));
    CHECK_FALSE(is_faithful(2, {1, 1, 1}));
    CHECK_FALSE(is_faithful(2, {0, 1, 2}));
    CHECK_FALSE(is_faithful(2, {1, 2}));
    CHECK_THROWS_AS(FaithfulRep(2, {3, 3, 3}), std::invalid_argument);
    CHECK(FaithfulRep(3, {0b110, 0b001, 0b010, 0b100}).factors() == std::vector<Mask>{1, 2, 4, 6});
}

TEST_CASE("multiplicity and restriction invariant") {
    const FaithfulRep tau(2, {1, 1, 2});
    CHECK(chi(1, tau) == 2);
    CHECK(chi(2, tau) == 1);
    CHECK(chi(3, tau) == 0);
    // Removing one copy of 1 leaves {1, 2} -> {min(1,0), min(2,3)} = {0, 2}.
    CHECK(restriction_invariant(tau, 1) == std::vector<Mask>{0, 2});
    CHECK_THROWS_AS(restriction_invariant(tau, 3), std::domain_error);
    CHECK_THROWS_AS(equiv_rho(tau, FaithfulRep(2, {1, 2, 3}), 3), std::domain_error);
    CHECK(equiv_rho(FaithfulRep(2, {1, 2, 3}), FaithfulRep(2, {1, 2, 2}), 1));
}

TEST_CASE("dual bases") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        std::vector<Mask> basis;
        while (static_cast<int>(basis.size()) < n) {
            const Mask v = static_cast<Mask>(rng() % ((1U << n) - 1) + 1);
            basis.push_back(v);
            if (mask_rank(basis) != basis.size()) basis.pop_back();
        }
        const auto dual = dual_basis(n, basis);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) CHECK(pairing(basis[static_cast<std::size_t>(i)], dual[static_cast<std::size_t>(j)]) == (i == j ? 1 : 0));
        }
    }
}

TEST_CASE("dual map is a bijection onto the top-degree basis") {
    for (int n = 1; n <= 3; ++n) {
        const auto t = build_total_complex(n);
        std::set<std::size_t> hit;
        for (const auto& tau : enumerate_faithful_reps(n)) {
            const auto b = dual_D(tau);
            CHECK(b.p + b.q == n - 2);
            const auto idx = t.index_of(b);
            REQUIRE(idx.has_value());
            CHECK(hit.insert(*idx).second);
            CHECK(dual_inverse(n, b) == tau);
        }
        CHECK(hit.size() == t.dim(n - 2));
    }
}

TEST_CASE("presentation of a monomial") {
    const FaithfulRep tau(3, {0b001, 0b010, 0b100, 0b111});
    const auto pr = present(tau, 3);
    CHECK(pr.leftover == 0b111);
    CHECK(pr.basis.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(pr.support[i]);
    const auto b = dual_D(tau);
    // All three dual vectors are supported: a bottom-row element.
    CHECK(b.kind == BasisKind::BottomRow);
    CHECK_THROWS_AS(present(FaithfulRep(2, {1, 1, 2}), 2), std::invalid_argument);
}

TEST_CASE("boundary of D(tau) splits over the distinct factors") {
    for (int n = 2; n <= 3; ++n) {
        const auto t = build_total_complex(n);
        for (const auto& tau : enumerate_faithful_reps(n)) {
            auto factors = tau.factors();
            factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
            BitVector sum(t.dim(n - 3));
            for (const Mask rho : factors) sum ^= partial_rho(t, tau, rho);
            CHECK(t.boundary(n - 2).apply(dual_chain(t, single(tau))) == sum);
        }
        const auto all = enumerate_faithful_reps(n);
        const auto& first = all.front();
        Mask missing = 1;
        while (chi(missing, first) > 0) ++missing;
        CHECK_THROWS_AS(partial_rho(t, first, missing), std::domain_error);
    }
}

TEST_CASE("criteria on small examples") {
    const auto t2 = build_total_complex(2);
    const RepPolynomial zero(2);
    CHECK(in_image_dual(zero, t2));
    CHECK(in_image_lls(zero));
    for (const auto& tau : enumerate_faithful_reps(2)) {
        CHECK_FALSE(in_image_dual(single(tau), t2));
        CHECK_FALSE(in_image_lls(single(tau)));
    }
    // n = 2: the image is zero, so only the empty polynomial passes.
    const auto reps = enumerate_faithful_reps(2);
    std::size_t accepted = 0;
    for (std::uint32_t s = 0; s < (1U << reps.size()); ++s) {
        RepPolynomial f(2);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            if (((s >> i) & 1U) != 0) f.toggle(reps[i]);
        }
        const bool dual = in_image_dual(f, t2);
        CHECK(dual == in_image_lls(f));
        CHECK(dual == lls_pairwise(f));
        accepted += dual ? 1 : 0;
    }
    CHECK(accepted == 1);
}

TEST_CASE("criteria agree on random polynomials and the image has the expected dimension") {
    const int n = 3;
    const auto t = build_total_complex(n);
    const auto reps = enumerate_faithful_reps(n);
    std::mt19937_64 rng(17);
    for (int k = 0; k < 300; ++k) {
        RepPolynomial f(n);
        const auto m = rng() % 9;
        for (std::uint64_t j = 0; j < m; ++j) f.toggle(reps[rng() % reps.size()]);
        const bool dual = in_image_dual(f, t);
        CHECK(dual == in_image_lls(f));
        CHECK(dual == lls_pairwise(f));
    }
    // Polynomials in the image form the kernel of tau -> boundary D(tau).
    std::vector<std::vector<std::uint8_t>> cols;
    const std::size_t rows = t.dim(n - 3);
    for (const auto& tau : reps) {
        std::vector<std::uint8_t> col(rows);
        for (const auto i : t.boundary(n - 2).apply(dual_chain(t, single(tau))).indices()) col[i] = 1;
        cols.push_back(col);
    }
    CHECK(BigInt(byte_kernel_dim(cols, rows)) == dimension_formula(n));
}

TEST_CASE("kernel vectors pull back into the image") {
    const int n = 3;
    const auto t = build_total_complex(n);
    const auto kernel = kernel_basis(t.boundary(n - 2));
    CHECK(kernel.size() == 32);
    for (const auto& v : kernel) {
        RepPolynomial f(n);
        for (const auto i : v.indices()) f.toggle(dual_inverse(n, t.element(n - 2, i)));
        CHECK(in_image_dual(f, t));
        CHECK(in_image_lls(f));
    }
}

TEST_CASE("polynomial parsing") {
    const auto f = parse_polynomial("# comment\n\n001 010 100 111\n 001 010 100 111 \n011 010 100 111\n", 3);
    CHECK(f.size() == 1);
    CHECK(f.contains(FaithfulRep(3, {0b011, 0b010, 0b100, 0b111})));
    CHECK(parse_polynomial("", 3).empty());
    CHECK(format_functional(0b011, 3) == "011");
    CHECK(format_functional(0b1, 4) == "0001");

    try {
        parse_polynomial("001 010 100 111\n01 010 100 111\n", 3);
        FAIL("expected a parse error");
    } catch (const PolyParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_polynomial("001 010 100\n", 3), PolyParseError);
    CHECK_THROWS_AS(parse_polynomial("001 010 1x0 111\n", 3), PolyParseError);
    try {
        parse_polynomial("# header\n001 001 001 001\n", 3);
        FAIL("expected a semantic error");
    } catch (const NonFaithfulMonomial& e) {
        CHECK(e.line == 2);
        CHECK(e.monomial == "001 001 001 001");
    }
    CHECK_THROWS_AS(parse_polynomial("000 010 100 111\n", 3), NonFaithfulMonomial);
}

TEST_CASE("polynomial write and parse round-trip") {
    const auto reps = enumerate_faithful_reps(3);
    RepPolynomial f(3);
    for (std::size_t i = 0; i < reps.size(); i += 7) f.toggle(reps[i]);
    std::ostringstream out;
    write_polynomial(out, f);
    CHECK(parse_polynomial(out.str(), 3) == f);
}
