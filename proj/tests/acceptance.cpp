// One PASS/FAIL line per acceptance criterion. `--stretch` adds n = 5 to the
// brute-force dimension table.

#include <algorithm>
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bordism/class_complex.hpp"
#include "bordism/double_complex.hpp"
#include "bordism/representations.hpp"
#include "bordism/spectral_sequence.hpp"
#include "bordism/universal_complex.hpp"

using namespace bordism;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Complexes are shared between criteria so each rank is computed once.
struct Cache {
    std::map<int, std::shared_ptr<const DoubleComplex>> bicomplex;
    std::map<int, std::shared_ptr<const TotalComplex>> total;

    std::shared_ptr<const DoubleComplex> b(int n) {
        auto& slot = bicomplex[n];
        if (!slot) slot = std::make_shared<const DoubleComplex>(build_double_complex(n));
        return slot;
    }
    const TotalComplex& t(int n) {
        auto& slot = total[n];
        if (!slot) slot = std::make_shared<const TotalComplex>(b(n));
        return *slot;
    }
};

struct Tally {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok) {
            if (failures == 0) first_failure = what;
            ++failures;
        }
    }
    bool ok() const { return failures == 0; }
    std::string summary() const {
        std::ostringstream s;
        s << cases << " cases, " << failures << " failures";
        if (failures != 0) s << " (first: " << first_failure << ")";
        return s.str();
    }
};

RepPolynomial single(const FaithfulRep& tau) {
    RepPolynomial f(tau.n());
    f.toggle(tau);
    return f;
}

std::vector<Mask> distinct(const FaithfulRep& tau) {
    auto f = tau.factors();
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

bool criterion1(std::string& detail) {
    const auto t0 = Clock::now();
    const std::vector<BigInt> table{0, 0, 32, 3177, 719164, 476303715, BigInt("1025099895814")};
    bool ok = true;
    std::ostringstream s;
    for (int n = 1; n <= 7; ++n) {
        const BigInt v = dimension_formula(n);
        s << v << (n < 7 ? " " : "");
        ok = ok && v == table[static_cast<std::size_t>(n - 1)];
    }
    const double dt = seconds_since(t0);
    s << "; " << dt << " s (limit 1 s)";
    detail = s.str();
    return ok && dt < 1.0;
}

bool criterion2(Cache& cache, bool stretch, std::string& detail) {
    bool ok = true;
    std::ostringstream s;
    const int top = stretch ? 5 : 4;
    double small_total = 0;
    for (int n = 1; n <= top; ++n) {
        const auto t0 = Clock::now();
        const TotalComplex& t = cache.t(n);
        const std::size_t ker = t.dim(n - 2) - t.chain_complex().boundary_rank(n - 2);
        const double dt = seconds_since(t0);
        const bool exact = BigInt(ker) == dimension_formula(n);
        if (n <= 3) small_total += dt;
        const double limit = n <= 3 ? 10.0 : 600.0;
        ok = ok && exact && dt < limit;
        s << "n=" << n << ": " << ker << " (" << dt << " s) ";
    }
    ok = ok && small_total < 10.0;
    s << "; n<=3 total " << small_total << " s (limit 10 s), n=4 limit 600 s";
    if (stretch) s << ", n=5 stretch";
    detail = s.str();
    return ok;
}

bool criterion3(Cache& cache, std::string& detail) {
    Tally tally;
    for (int n = 1; n <= 4; ++n) {
        const TotalComplex& t = cache.t(n);
        for (int l = -2; l <= n - 2; ++l) {
            if (l == n - 2) continue;
            tally.check(t.homology_dim(l) == 0, "n=" + std::to_string(n) + " l=" + std::to_string(l));
        }
    }
    detail = tally.summary();
    return tally.ok();
}

bool criterion4(Cache& cache, std::string& detail) {
    Tally singles;
    Tally randoms;
    Tally kernel;
    std::mt19937_64 rng(4242);
    for (int n = 2; n <= 3; ++n) {
        const TotalComplex& t = cache.t(n);
        const auto reps = enumerate_faithful_reps(n);
        for (const auto& tau : reps) {
            const auto f = single(tau);
            singles.check(in_image_dual(f, t) == in_image_lls(f), tau.to_string());
        }
        std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
        std::uniform_int_distribution<int> count(0, 8);
        for (int k = 0; k < 1000; ++k) {
            RepPolynomial f(n);
            const int m = count(rng);
            for (int j = 0; j < m; ++j) f.toggle(reps[pick(rng)]);
            randoms.check(in_image_dual(f, t) == in_image_lls(f), "n=" + std::to_string(n) + " #" + std::to_string(k));
        }
    }
    {
        const TotalComplex& t = cache.t(3);
        const auto basis = kernel_basis(t.boundary(1));
        for (int k = 0; k < 50; ++k) {
            BitVector v(t.dim(1));
            for (const auto& g : basis) {
                if ((rng() & 1U) != 0) v ^= g;
            }
            RepPolynomial f(3);
            for (const auto i : v.indices()) f.toggle(dual_inverse(3, t.element(1, i)));
            kernel.check(in_image_dual(f, t) && in_image_lls(f), "kernel vector #" + std::to_string(k));
        }
    }
    detail = "singles " + singles.summary() + "; random " + randoms.summary() + "; kernel " + kernel.summary();
    return singles.ok() && randoms.ok() && kernel.ok();
}

bool criterion5(Cache& cache, std::string& detail) {
    std::ostringstream s;
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
        Tally tally;
        const auto b = cache.b(n);
        const TotalComplex& t = cache.t(n);
        const auto& d = b->classes();
        const auto& x = d.universal();
        tally.check(x.chain_complex().is_chain_complex(), "dd on C");
        tally.check(d.chain_complex().is_chain_complex(), "dd on D");
        tally.check(t.chain_complex().is_chain_complex(), "dd on total B");
        for (int p = -1; p <= n - 1; ++p) {
            for (int q = -1; q <= n - 2; ++q) {
                if (!in_support(n, p, q)) continue;
                if (in_support(n, p - 1, q)) tally.check(b->horizontal(p, q).then(b->horizontal(p - 1, q)).is_zero(), "dh dh");
                if (in_support(n, p, q - 1)) tally.check(b->vertical(p, q).then(b->vertical(p, q - 1)).is_zero(), "dv dv");
                if (in_support(n, p - 1, q) && in_support(n, p, q - 1)) {
                    const auto hv = b->horizontal(p, q).then(b->vertical(p - 1, q));
                    const auto vh = b->vertical(p, q).then(b->horizontal(p, q - 1));
                    tally.check(hv == vh, "square at " + std::to_string(p) + "," + std::to_string(q));
                }
            }
        }
        for (int p = 0; p <= n - 1; ++p) {
            for (const auto& cl : d.classes(p)) {
                tally.check(cl.members.size() == (p == 0 ? 1U : static_cast<std::size_t>(p + 2)), "class size");
            }
        }
        for (int p = 1; p <= n - 1; ++p) {
            for (std::size_t c = 0; c < d.count(p); ++c) {
                const BitVector ref = d.d_D(p, c);
                for (const auto& m : d.class_at(p, c).members) {
                    for (const Mask a : m.vertices()) tally.check(d.d_D(m, a) == ref, "d_D choice");
                }
            }
        }
        for (int p = 2; p <= n - 1; ++p) tally.check(d_restriction_check(d, p), "restriction p=" + std::to_string(p));
        const BoundaryMatrix& top = t.boundary(n - 2);
        for (const auto& tau : enumerate_faithful_reps(n)) {
            const auto e = dual_D(tau);
            tally.check(dual_inverse(n, e) == tau, "D'D " + tau.to_string());
            const auto idx = t.index_of(e);
            if (!idx) {
                tally.check(false, "D(tau) outside the basis");
                continue;
            }
            BitVector sum(t.dim(n - 3));
            for (const Mask rho : distinct(tau)) sum ^= partial_rho(t, tau, rho);
            BitVector unit(t.dim(n - 2));
            unit.set(*idx);
            tally.check(top.apply(unit) == sum, "sum decomposition " + tau.to_string());
        }
        for (std::size_t i = 0; i < t.dim(n - 2); ++i) {
            const auto e = t.element(n - 2, i);
            tally.check(dual_D(dual_inverse(n, e)) == e, "DD' at " + std::to_string(i));
        }
        s << "n=" << n << ": " << tally.summary() << "; ";
        ok = ok && tally.ok();
        if (n == 4 && tally.cases < 10000) {
            ok = false;
            s << "fewer than 10^4 cases at n=4; ";
        }
    }
    detail = s.str();
    return ok;
}

bool criterion6(std::string& detail) {
    Tally tally;
    for (int n = 2; n <= 4; ++n) {
        const auto k = constants(n);
        const UniversalComplex x(n);
        const auto c = x.chain_complex();
        for (int q = -1; q <= n - 1; ++q) {
            const BigInt want = q == n - 1 ? k.A_n : BigInt(0);
            tally.check(BigInt(c.homology_dim(q)) == want, "X n=" + std::to_string(n) + " q=" + std::to_string(q));
        }
        for (int p = 0; p <= n - 1; ++p) {
            // The link of a facet is the empty simplex alone: reduced H_{-1} = 1.
            const BigInt top = p <= n - 2 ? k.A_pn[static_cast<std::size_t>(p)] : BigInt(1);
            for (const auto& sigma : x.simplices(p)) {
                const auto lk = link_chain_complex(n, sigma);
                for (int q = -1; q <= n - p - 2; ++q) {
                    const BigInt want = q == n - p - 2 ? top : BigInt(0);
                    tally.check(BigInt(lk.homology_dim(q)) == want, "link of " + sigma.to_string(n));
                }
            }
        }
    }
    detail = tally.summary();
    return tally.ok();
}

bool criterion7(Cache& cache, std::string& detail) {
    Tally tally;
    {
        SpectralSequence ss(cache.b(2));
        const Page& e1 = ss.page(1);
        tally.check(e1.dim(-1, 0) == 4 && e1.dim(0, 0) == 3 && e1.dim(1, -1) == 1, "n=2 E1 (4,3,1)");
        const Page& e2 = ss.page(2);
        tally.check(e2.dim(-1, 0) == 1 && e2.dim(0, 0) == 0 && e2.dim(1, -1) == 1, "n=2 E2 (1,0,1)");
        const auto& d2 = e2.differentials.at({1, -1});
        tally.check(d2.n_source() == 1 && d2.n_target() == 1 && rank(d2) == 1, "n=2 d2 isomorphism");
    }
    for (int n = 2; n <= 4; ++n) {
        SpectralSequence ss(cache.b(n));
        const auto rep = degeneration_report(ss, cache.t(n));
        const std::string tag = "n=" + std::to_string(n);
        tally.check(rep.d2_surjective, tag + " d2 surjective");
        tally.check(rep.higher_differentials_vanish, tag + " E3 = E-infinity");
        tally.check(rep.e3_total == rep.homology, tag + " sum of E3 = H");
    }
    detail = tally.summary();
    return tally.ok();
}

bool criterion8(Cache& cache, std::string& detail) {
    Tally tally;
    for (int n = 1; n <= 5; ++n) {
        const auto d = build_class_complex(n);
        for (int p = 0; p <= n - 1; ++p) {
            tally.check(BigInt(d.universal().count(p)) == f_count(n, p), "|X_p| n=" + std::to_string(n));
            if (p >= 1) tally.check(BigInt(d.count(p)) * (p + 2) == f_count(n, p), "classes n=" + std::to_string(n));
        }
    }
    for (int n = 1; n <= 4; ++n) {
        SpectralSequence ss(cache.b(n));
        const auto k = constants(n);
        tally.check(BigInt(ss.page(1).dim(-1, n - 2)) == n * (k.f[static_cast<std::size_t>(n - 1)] - k.A_n),
                    "E1 left column n=" + std::to_string(n));
    }
    detail = tally.summary();
    return tally.ok();
}

}  // namespace

int main(int argc, char** argv) {
    bool stretch = false;
    for (int i = 1; i < argc; ++i) stretch = stretch || std::strcmp(argv[i], "--stretch") == 0;
    Cache cache;
    const std::vector<std::pair<const char*, std::function<bool(std::string&)>>> criteria{
        {"dimension table, closed form", [](std::string& d) { return criterion1(d); }},
        {"dimension table, brute force", [&](std::string& d) { return criterion2(cache, stretch, d); }},
        {"vanishing outside degree n-2", [&](std::string& d) { return criterion3(cache, d); }},
        {"criterion equivalence", [&](std::string& d) { return criterion4(cache, d); }},
        {"structural suite", [&](std::string& d) { return criterion5(cache, d); }},
        {"topology oracles", [](std::string& d) { return criterion6(d); }},
        {"spectral pages", [&](std::string& d) { return criterion7(cache, d); }},
        {"counting identities", [&](std::string& d) { return criterion8(cache, d); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool ok = false;
        const auto t0 = Clock::now();
        try {
            ok = criteria[i].second(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << detail
                  << " [" << seconds_since(t0) << " s]" << std::endl;
        failed += ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
