#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "bordism/class_complex.hpp"

using namespace bordism;

namespace {

using Verts = std::vector<Mask>;

// The relation written out on raw vertex lists.
bool related(const Verts& a, const Verts& b) {
    std::vector<Mask> shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    if (shared.size() != 1) return false;
    Verts moved;
    for (const Mask v : a) {
        if (v != shared[0]) moved.push_back(v ^ shared[0]);
    }
    moved.push_back(shared[0]);
    std::sort(moved.begin(), moved.end());
    return moved == b;
}

std::set<Verts> brute_class(const Verts& start, const std::vector<Simplex>& all) {
    std::set<Verts> seen{start};
    std::vector<Verts> todo{start};
    while (!todo.empty()) {
        const Verts cur = todo.back();
        todo.pop_back();
        for (const auto& s : all) {
            if (related(cur, s.vertices()) && seen.insert(s.vertices()).second) todo.push_back(s.vertices());
        }
    }
    return seen;
}

}  // namespace

TEST_CASE("equivalence relation on small examples") {
    const Simplex a({0b001, 0b010});
    CHECK(equivalent(a, a));
    CHECK(equivalent(a, Simplex({0b001, 0b011})));
    CHECK(equivalent(a, Simplex({0b010, 0b011})));
    CHECK_FALSE(equivalent(a, Simplex({0b001, 0b100})));
    CHECK_FALSE(equivalent(a, Simplex({0b001})));
}

TEST_CASE("classes match a brute-force closure") {
    for (int n = 2; n <= 4; ++n) {
        const UniversalComplex x(n);
        for (int p = 0; p <= n - 1; ++p) {
            const auto& all = x.simplices(p);
            const std::size_t stride = std::max<std::size_t>(1, all.size() / 60);
            for (std::size_t i = 0; i < all.size(); i += stride) {
                const auto want = brute_class(all[i].vertices(), all);
                const auto cl = class_of(all[i]);
                REQUIRE(cl.members.size() == want.size());
                for (const auto& m : cl.members) CHECK(want.count(m.vertices()) == 1);
                CHECK(cl.representative.vertices() == *want.begin());
                CHECK(cl.members.size() == (p == 0 ? 1U : static_cast<std::size_t>(p + 2)));
            }
        }
    }
}

TEST_CASE("class counts") {
    const auto d3 = build_class_complex(3);
    CHECK(d3.count(-1) == 3);
    CHECK(d3.count(0) == 7);
    CHECK(d3.count(1) == 7);
    CHECK(d3.count(2) == 7);
    const auto d4 = build_class_complex(4);
    CHECK(d4.count(0) == 15);
    CHECK(d4.count(1) == 35);
    CHECK(d4.count(2) == 105);
    CHECK(d4.count(3) == 168);
    for (int n = 2; n <= 4; ++n) {
        const auto d = build_class_complex(n);
        for (int p = 1; p <= n - 1; ++p) CHECK(BigInt(d.count(p)) * (p + 2) == f_count(n, p));
    }
}

TEST_CASE("classes partition the simplices") {
    const auto d = build_class_complex(4);
    for (int p = 0; p <= 3; ++p) {
        const auto& x = d.universal();
        std::vector<int> hits(x.count(p), 0);
        for (std::size_t c = 0; c < d.count(p); ++c) {
            for (const auto& m : d.class_at(p, c).members) {
                ++hits[x.index(m)];
                CHECK(d.class_index(m) == c);
                CHECK(d.class_of_simplex(p, x.index(m)) == c);
            }
        }
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
}

TEST_CASE("class boundary is a chain complex and independent of choices") {
    for (int n = 1; n <= 4; ++n) {
        const auto d = build_class_complex(n);
        CHECK(d.chain_complex().is_chain_complex());
        for (int p = 1; p <= n - 1; ++p) {
            for (std::size_t c = 0; c < d.count(p); ++c) {
                const BitVector ref = d.d_D(p, c);
                for (const auto& m : d.class_at(p, c).members) {
                    for (const Mask a : m.vertices()) CHECK(d.d_D(m, a) == ref);
                }
            }
        }
    }
}

TEST_CASE("d_D on an edge class by hand") {
    // a1 = e1: the face {e2} translated by e1, plus both faces.
    const auto d = build_class_complex(2);
    const Simplex edge({0b01, 0b10});
    const auto c = d.class_index(edge);
    const BitVector img = d.d_D(edge, 0b01);
    BitVector want(d.count(0));
    want.flip(d.class_index(Simplex({0b11})));
    want.flip(d.class_index(Simplex({0b10})));
    want.flip(d.class_index(Simplex({0b01})));
    CHECK(img == want);
    CHECK(d.d_D(1, c) == want);
    CHECK(d.d_D0(d.class_index(Simplex({0b11}))).bits() == 0b11);
}

TEST_CASE("d^C of a class sum expands d^D") {
    for (int n = 3; n <= 4; ++n) {
        const auto d = build_class_complex(n);
        for (int p = 2; p <= n - 1; ++p) CHECK(d_restriction_check(d, p));
    }
    const auto d = build_class_complex(3);
    CHECK_THROWS(d_restriction_check(d, 1));
}

TEST_CASE("class sums expand into C_p") {
    const auto d = build_class_complex(3);
    for (std::size_t c = 0; c < d.count(2); ++c) CHECK(d.expand(2, c).count() == 4);
}
