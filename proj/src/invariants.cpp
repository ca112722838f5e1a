#include "bordism/invariants.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "bordism/class_complex.hpp"
#include "bordism/double_complex.hpp"
#include "bordism/representations.hpp"
#include "bordism/spectral_sequence.hpp"
#include "bordism/universal_complex.hpp"

namespace bordism {

namespace {

class Suite {
public:
    void run(const std::string& name, const std::function<void(CheckResult&)>& body) {
        CheckResult r;
        r.name = name;
        try {
            body(r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        results_.push_back(std::move(r));
    }
    void skip(const std::string& name, const std::string& why) {
        results_.push_back({name, true, 0, "skipped: " + why});
    }
    std::vector<CheckResult> take() { return std::move(results_); }

private:
    std::vector<CheckResult> results_;
};

std::size_t to_size(const BigInt& v) { return v.convert_to<std::size_t>(); }

// Distinct factors of tau.
std::vector<Mask> distinct_factors(const FaithfulRep& tau) {
    std::vector<Mask> out = tau.factors();
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::size_t> valid_slots(const FaithfulRep& tau) {
    std::vector<std::size_t> out;
    const auto& f = tau.factors();
    for (std::size_t slot = 0; slot < f.size(); ++slot) {
        std::vector<Mask> rest;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i != slot) rest.push_back(f[i]);
        }
        if (mask_rank(rest) == rest.size()) out.push_back(slot);
    }
    return out;
}

// Vectors annihilated by rho span ker rho iff they are n-1 independent
// vectors in it.
bool spans_kernel(int n, Mask rho, const std::vector<Mask>& vectors) {
    for (const Mask v : vectors) {
        if (pairing(rho, v) != 0) return false;
    }
    return mask_rank(vectors) == static_cast<std::size_t>(n - 1);
}

void structural_checks(Suite& suite, int n, const std::shared_ptr<const DoubleComplex>& b, const TotalComplex& t) {
    const auto& d = b->classes();
    const auto& x = d.universal();
    const bool heavy = n >= 5;

    suite.run("universal.face_counts", [&](CheckResult& r) {
        r.passed = true;
        for (int p = 0; p <= n - 1; ++p) {
            ++r.cases;
            if (BigInt(x.count(p)) != f_count(n, p)) r.passed = false;
        }
    });
    const GradedChainComplex c = x.chain_complex();
    suite.run("universal.boundary_squared", [&](CheckResult& r) {
        r.cases = static_cast<std::size_t>(n);
        r.passed = c.is_chain_complex();
    });
    suite.run("universal.reduced_homology", [&](CheckResult& r) {
        const BigInt a_n = constants(n).A_n;
        r.passed = true;
        for (int q = -1; q <= n - 1; ++q) {
            ++r.cases;
            const BigInt expected = q == n - 1 ? a_n : BigInt(0);
            if (BigInt(c.homology_dim(q)) != expected) {
                r.passed = false;
                r.detail += "H~_" + std::to_string(q) + "=" + std::to_string(c.homology_dim(q)) + " ";
            }
        }
    });
    suite.run("universal.link_homology", [&](CheckResult& r) {
        const auto k = constants(n);
        r.passed = true;
        for (int p = 0; p <= n - 2; ++p) {
            const std::size_t limit = heavy ? std::min<std::size_t>(3, x.count(p)) : x.count(p);
            for (std::size_t i = 0; i < limit; ++i) {
                const auto lk = link_chain_complex(n, x.simplex(p, i));
                for (int q = -1; q <= n - p - 2; ++q) {
                    ++r.cases;
                    const BigInt expected = q == n - p - 2 ? k.A_pn[static_cast<std::size_t>(p)] : BigInt(0);
                    if (BigInt(lk.homology_dim(q)) != expected) r.passed = false;
                }
            }
        }
        if (heavy) r.detail = "first 3 simplices per dimension";
    });
    suite.run("universal.link_class_invariance", [&](CheckResult& r) {
        r.passed = true;
        for (int p = 1; p <= n - 1; ++p) {
            const auto& classes = d.classes(p);
            const std::size_t limit = heavy ? std::min<std::size_t>(100, classes.size()) : classes.size();
            for (std::size_t i = 0; i < limit; ++i) {
                const auto lk = link(n, classes[i].representative);
                for (const auto& m : classes[i].members) {
                    ++r.cases;
                    if (link(n, m) != lk) r.passed = false;
                }
            }
        }
    });

    suite.run("class.sizes_and_counts", [&](CheckResult& r) {
        r.passed = true;
        for (int p = 0; p <= n - 1; ++p) {
            const std::size_t want_size = p == 0 ? 1 : static_cast<std::size_t>(p + 2);
            const BigInt want_count = p == 0 ? f_count(n, 0) : exact_divide(f_count(n, p), p + 2, "class count");
            if (BigInt(d.count(p)) != want_count) r.passed = false;
            for (const auto& cl : d.classes(p)) {
                ++r.cases;
                if (cl.members.size() != want_size || cl.members.front() != cl.representative) r.passed = false;
            }
        }
    });
    const GradedChainComplex dc = d.chain_complex();
    suite.run("class.boundary_squared", [&](CheckResult& r) {
        r.cases = static_cast<std::size_t>(n);
        r.passed = dc.is_chain_complex();
    });
    if (heavy) {
        suite.skip("class.boundary_well_defined", "n >= 5");
    } else {
        suite.run("class.boundary_well_defined", [&](CheckResult& r) {
            r.passed = true;
            for (int p = 1; p <= n - 1; ++p) {
                for (std::size_t i = 0; i < d.count(p); ++i) {
                    const BitVector ref = d.d_D(p, i);
                    for (const auto& m : d.class_at(p, i).members) {
                        for (const Mask a : m.vertices()) {
                            ++r.cases;
                            if (d.d_D(m, a) != ref) r.passed = false;
                        }
                    }
                }
            }
        });
    }
    suite.run("class.restriction", [&](CheckResult& r) {
        r.passed = true;
        for (int p = 2; p <= n - 1; ++p) {
            r.cases += d.count(p);
            if (!d_restriction_check(d, p)) r.passed = false;
        }
    });

    suite.run("double.commuting_squares", [&](CheckResult& r) {
        r.cases = static_cast<std::size_t>(n * n);
        r.passed = b->squares_commute();
    });
    suite.run("double.dimensions", [&](CheckResult& r) {
        r.passed = b->dim(-1, n - 1) == 0;
        for (int p = -1; p <= n - 1; ++p) {
            for (int q = -1; q <= n - 2; ++q) {
                if (!in_support(n, p, q)) continue;
                ++r.cases;
                std::size_t want = 0;
                if (p == -1) {
                    want = static_cast<std::size_t>(n) * x.count(q);
                } else if (q == -1) {
                    want = d.count(p);
                } else {
                    want = d.count(p) * to_size(link_count(n, p, q));
                }
                if (b->dim(p, q) != want) r.passed = false;
            }
        }
    });
    if (heavy) {
        suite.skip("double.faithful_class_invariance", "n >= 5");
    } else {
        suite.run("double.faithful_class_invariance", [&](CheckResult& r) {
            r.passed = true;
            for (int p = 0; p <= n - 2; ++p) {
                for (int q = 0; p + q <= n - 2; ++q) {
                    for (std::size_t i = 0; i < b->dim(p, q); ++i) {
                        const auto e = b->element(p, q, i);
                        for (const auto& m : d.class_at(p, d.class_index(e.class_rep)).members) {
                            ++r.cases;
                            std::vector<Mask> all = m.vertices();
                            all.insert(all.end(), e.simplex.vertices().begin(), e.simplex.vertices().end());
                            std::sort(all.begin(), all.end());
                            if (std::adjacent_find(all.begin(), all.end()) != all.end() || !is_independent(all)) {
                                r.passed = false;
                            }
                        }
                    }
                }
            }
        });
    }

    suite.run("total.boundary_squared", [&](CheckResult& r) {
        r.cases = static_cast<std::size_t>(n + 1);
        r.passed = t.chain_complex().is_chain_complex();
    });
    if (heavy) {
        suite.skip("total.faithful_basis", "n >= 5");
    } else {
        suite.run("total.faithful_basis", [&](CheckResult& r) {
            const auto basis = faithful_basis_n_minus_2(n);
            r.cases = basis.size();
            r.passed = basis.size() == t.dim(n - 2);
            for (std::size_t i = 0; r.passed && i < basis.size(); ++i) r.passed = t.element(n - 2, i) == basis[i];
        });
    }
    suite.run("total.vanishing", [&](CheckResult& r) {
        r.passed = true;
        for (int l = -2; l <= n - 3; ++l) {
            ++r.cases;
            if (t.homology_dim(l) != 0) {
                r.passed = false;
                r.detail += "H_" + std::to_string(l) + "=" + std::to_string(t.homology_dim(l)) + " ";
            }
        }
    });
    suite.run("total.homology_matches_formula", [&](CheckResult& r) {
        r.cases = 1;
        const std::size_t h = t.homology_dim(n - 2);
        r.passed = BigInt(h) == dimension_formula(n);
        r.detail = "H_" + std::to_string(n - 2) + "=" + std::to_string(h);
    });
}

void representation_checks(Suite& suite, int n, const TotalComplex& t, const VerifyOptions& options) {
    const auto reps = enumerate_faithful_reps(n);
    const BoundaryMatrix& top = t.boundary(n - 2);

    suite.run("dual.bijection", [&](CheckResult& r) {
        std::set<std::size_t> hit;
        r.passed = reps.size() == t.dim(n - 2);
        for (const auto& tau : reps) {
            ++r.cases;
            const auto b = dual_D(tau);
            const auto i = t.index_of(b);
            if (!i || !hit.insert(*i).second || !(dual_inverse(n, b) == tau)) r.passed = false;
        }
    });
    suite.run("dual.inverse_roundtrip", [&](CheckResult& r) {
        r.passed = true;
        for (std::size_t i = 0; i < t.dim(n - 2); ++i) {
            ++r.cases;
            const auto b = t.element(n - 2, i);
            if (!(dual_D(dual_inverse(n, b)) == b)) r.passed = false;
        }
    });
    suite.run("dual.representative_invariance", [&](CheckResult& r) {
        r.passed = true;
        for (std::size_t i = 0; i < t.dim(n - 2); ++i) {
            const auto b = t.element(n - 2, i);
            const FaithfulRep ref = dual_inverse(n, b);
            for (const auto& m : class_of(b.class_rep).members) {
                ++r.cases;
                if (!(dual_inverse(n, m, b.simplex) == ref)) r.passed = false;
            }
        }
    });
    suite.run("dual.basis_choice", [&](CheckResult& r) {
        r.passed = true;
        for (const auto& tau : reps) {
            const auto ref = dual_D(tau);
            for (const auto slot : valid_slots(tau)) {
                ++r.cases;
                if (!(dual_D(tau, slot) == ref)) r.passed = false;
            }
        }
    });

    suite.run("partial.sum_decomposition", [&](CheckResult& r) {
        r.passed = true;
        for (const auto& tau : reps) {
            ++r.cases;
            BitVector sum(t.dim(n - 3));
            for (const Mask rho : distinct_factors(tau)) sum ^= partial_rho(t, tau, rho);
            BitVector e(t.dim(n - 2));
            e.set(*t.index_of(dual_D(tau)));
            if (top.apply(e) != sum) r.passed = false;
        }
    });
    suite.run("partial.basis_independence", [&](CheckResult& r) {
        r.passed = true;
        for (const auto& tau : reps) {
            const auto slots = valid_slots(tau);
            for (const Mask rho : distinct_factors(tau)) {
                const BitVector ref = partial_rho(t, tau, rho);
                for (const auto slot : slots) {
                    ++r.cases;
                    if (partial_rho(t, tau, rho, slot) != ref) r.passed = false;
                }
            }
        }
    });
    suite.run("partial.kernel_identification", [&](CheckResult& r) {
        r.passed = true;
        for (const auto& tau : reps) {
            for (const Mask rho : distinct_factors(tau)) {
                ++r.cases;
                const auto terms = partial_rho(t, tau, rho).indices();
                if (terms.empty()) {
                    r.passed = false;
                    continue;
                }
                const auto e = t.element(n - 3, terms.front());
                std::vector<Mask> span = e.simplex.vertices();
                if (chi(rho, tau) == 1) {
                    if (terms.size() != 1 || e.kind == BasisKind::LeftColumn) r.passed = false;
                    span.insert(span.end(), e.class_rep.vertices().begin(), e.class_rep.vertices().end());
                } else if (e.kind != BasisKind::LeftColumn) {
                    r.passed = false;
                }
                if (!spans_kernel(n, rho, span)) r.passed = false;
            }
        }
    });
    suite.run("partial.restriction_classes", [&](CheckResult& r) {
        // chi_rho = 1: tau ~_rho tau' iff the rho-terms agree. Compared as
        // partitions of A_rho so the check stays exhaustive.
        r.passed = true;
        std::map<Mask, std::map<std::vector<Mask>, std::set<std::vector<std::uint32_t>>>> by_invariant;
        std::map<Mask, std::map<std::vector<std::uint32_t>, std::set<std::vector<Mask>>>> by_term;
        for (const auto& tau : reps) {
            for (const Mask rho : distinct_factors(tau)) {
                if (chi(rho, tau) != 1) continue;
                ++r.cases;
                const auto inv = restriction_invariant(tau, rho);
                const auto term = partial_rho(t, tau, rho).indices();
                by_invariant[rho][inv].insert(term);
                by_term[rho][term].insert(inv);
            }
        }
        for (const auto& [rho, groups] : by_invariant) {
            for (const auto& [inv, terms] : groups) r.passed = r.passed && terms.size() == 1;
        }
        for (const auto& [rho, groups] : by_term) {
            for (const auto& [term, invs] : groups) r.passed = r.passed && invs.size() == 1;
        }
    });
    suite.run("partial.square_factor_formula", [&](CheckResult& r) {
        r.passed = true;
        const auto& bc = t.bicomplex();
        std::map<std::pair<Mask, std::vector<Mask>>, std::vector<const FaithfulRep*>> classes;
        for (const auto& tau : reps) {
            for (const Mask rho : distinct_factors(tau)) {
                if (chi(rho, tau) == 2) classes[{rho, restriction_invariant(tau, rho)}].push_back(&tau);
            }
        }
        for (const auto& [key, members] : classes) {
            const Mask rho = key.first;
            const FaithfulRep& tau = *members.front();
            // Present tau as rho^2 rho_2 .. rho_n with rho_1 = rho.
            const auto& f = tau.factors();
            const auto slot = static_cast<std::size_t>(std::find(f.begin(), f.end(), rho) - f.begin());
            const Presentation pr = present(tau, slot);
            const auto one = static_cast<std::size_t>(std::find(pr.basis.begin(), pr.basis.end(), rho) - pr.basis.begin());
            std::vector<Mask> tail;
            for (std::size_t i = 0; i < pr.basis.size(); ++i) {
                if (i != one) tail.push_back(pr.dual[i]);
            }
            const Simplex sigma(tail);
            for (const FaithfulRep* other : members) {
                ++r.cases;
                Mask alpha = pr.dual[one];
                std::vector<Mask> rebuilt{rho, rho};
                for (std::size_t i = 0; i < pr.basis.size(); ++i) {
                    if (i == one) continue;
                    const int eps = chi(pr.basis[i] ^ rho, *other);
                    if (eps + chi(pr.basis[i], *other) != 1) r.passed = false;
                    if (eps == 1) alpha ^= pr.dual[i];
                    rebuilt.push_back(eps == 1 ? pr.basis[i] ^ rho : pr.basis[i]);
                }
                if (!(FaithfulRep(n, rebuilt) == *other)) r.passed = false;
                BitVector want(t.dim(n - 3));
                const auto off = t.offset(-1, n - 2);
                const auto s = bc.universal().index(sigma);
                for (int cidx = 0; cidx < n; ++cidx) {
                    if (((alpha >> cidx) & 1U) != 0) want.flip(off + bc.left_index(n - 2, cidx, s));
                }
                if (partial_rho(t, *other, rho) != want) r.passed = false;
            }
        }
    });
    suite.run("partial.summand_injectivity", [&](CheckResult& r) {
        r.passed = true;
        std::map<std::pair<Mask, std::vector<Mask>>, std::vector<std::uint32_t>> label_of;
        std::map<std::vector<std::uint32_t>, std::pair<Mask, std::vector<Mask>>> owner;
        for (const auto& tau : reps) {
            for (const Mask rho : distinct_factors(tau)) {
                const auto key = std::make_pair(rho, restriction_invariant(tau, rho));
                const auto terms = partial_rho(t, tau, rho).indices();
                std::vector<std::uint32_t> label;
                if (chi(rho, tau) == 1) {
                    label = {0, terms.front()};
                } else {
                    const auto s = t.bicomplex().universal().index(t.element(n - 3, terms.front()).simplex);
                    label = {1, static_cast<std::uint32_t>(s)};
                }
                const auto [it, fresh] = label_of.emplace(key, label);
                if (fresh) {
                    ++r.cases;
                    if (!owner.emplace(label, key).second) r.passed = false;
                } else if (chi(rho, tau) == 2 && it->second != label) {
                    r.passed = false;
                }
            }
        }
    });

    suite.run("criteria.single_monomials", [&](CheckResult& r) {
        r.passed = true;
        for (const auto& tau : reps) {
            ++r.cases;
            RepPolynomial f(n);
            f.toggle(tau);
            if (in_image_dual(f, t) != in_image_lls(f)) r.passed = false;
        }
    });
    suite.run("criteria.random_polynomials", [&](CheckResult& r) {
        r.passed = true;
        std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(n));
        std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
        std::uniform_int_distribution<std::size_t> count(0, options.max_monomials);
        std::size_t accepted = 0;
        for (std::size_t k = 0; k < options.random_polynomials; ++k) {
            ++r.cases;
            RepPolynomial f(n);
            const auto m = count(rng);
            for (std::size_t j = 0; j < m; ++j) f.toggle(reps[pick(rng)]);
            const bool dual = in_image_dual(f, t);
            if (dual != in_image_lls(f)) r.passed = false;
            accepted += dual ? 1 : 0;
        }
        r.detail = std::to_string(accepted) + " in image";
    });
    suite.run("criteria.kernel_vectors", [&](CheckResult& r) {
        r.passed = true;
        const auto kernel = kernel_basis(top);
        const auto pull_back = [&](const BitVector& v) {
            RepPolynomial f(n);
            for (const auto i : v.indices()) f.toggle(dual_inverse(n, t.element(n - 2, i)));
            return f;
        };
        for (const auto& v : kernel) {
            ++r.cases;
            const auto f = pull_back(v);
            if (!in_image_dual(f, t) || !in_image_lls(f)) r.passed = false;
        }
        std::mt19937_64 rng(options.seed ^ 0x5bd1e995U);
        for (int k = 0; k < 50 && !kernel.empty(); ++k) {
            ++r.cases;
            BitVector v(t.dim(n - 2));
            for (const auto& g : kernel) {
                if ((rng() & 1U) != 0) v ^= g;
            }
            const auto f = pull_back(v);
            if (!in_image_dual(f, t) || !in_image_lls(f)) r.passed = false;
        }
        r.detail = "kernel dimension " + std::to_string(kernel.size());
    });
}

void spectral_checks(Suite& suite, int n, const std::shared_ptr<const DoubleComplex>& b, const TotalComplex& t) {
    SpectralSequence ss(b);
    const auto k = constants(n);
    suite.run("spectral.e1_support", [&](CheckResult& r) {
        const Page& e1 = ss.page(1);
        r.passed = true;
        for (const auto& [pos, d] : e1.dims) {
            ++r.cases;
            const bool allowed = pos.first + pos.second == n - 2 || pos == GridPos{-1, n - 2};
            if (d != 0 && !allowed) r.passed = false;
        }
    });
    suite.run("spectral.e1_left_column", [&](CheckResult& r) {
        r.cases = 1;
        const BigInt want = n * (k.f[static_cast<std::size_t>(n - 1)] - k.A_n);
        r.passed = BigInt(ss.page(1).dim(-1, n - 2)) == want;
    });
    if (n >= 2) {
        suite.run("spectral.e1_antidiagonal", [&](CheckResult& r) {
            const Page& e1 = ss.page(1);
            r.passed = true;
            for (int p = 0; p <= n - 1; ++p) {
                ++r.cases;
                BigInt want;
                const BigInt& fp = k.f[static_cast<std::size_t>(p)];
                if (p == 0) {
                    want = k.A_pn[0] * fp;
                } else if (p <= n - 2) {
                    want = exact_divide(k.A_pn[static_cast<std::size_t>(p)] * fp, p + 2, "E1 dimension");
                } else {
                    want = exact_divide(fp, n + 1, "E1 dimension");
                }
                if (BigInt(e1.dim(p, n - 2 - p)) != want) r.passed = false;
            }
        });
    }
    suite.run("spectral.degeneration", [&](CheckResult& r) {
        const auto rep = degeneration_report(ss, t);
        r.cases = 3;
        r.passed = rep.ok();
        r.detail = "E3 total " + std::to_string(rep.e3_total) + ", H " + std::to_string(rep.homology) +
                   (rep.d2_surjective ? "" : ", d2 not surjective") +
                   (rep.higher_differentials_vanish ? "" : ", higher differentials undetermined");
    });
    if (n == 2) {
        suite.run("spectral.d2_isomorphism", [&](CheckResult& r) {
            const Page& e2 = ss.page(2);
            const auto& d2 = e2.differentials.at({1, -1});
            r.cases = 1;
            r.passed = d2.n_source() == d2.n_target() && rank(d2) == d2.n_source();
        });
    }
    suite.run("spectral.left_column_lifts", [&](CheckResult& r) {
        const auto rep = check_left_column_lifts(ss);
        r.cases = rep.generators;
        r.passed = rep.ok();
    });
}

}  // namespace

std::vector<CheckResult> run_invariants(int n, const VerifyOptions& options) {
    if (n < 1 || n > 5) throw std::invalid_argument("run_invariants: n must be 1..5");
    Suite suite;
    const auto b = std::make_shared<const DoubleComplex>(build_double_complex(n));
    const TotalComplex t(b);
    structural_checks(suite, n, b, t);
    if (n <= 4) {
        representation_checks(suite, n, t, options);
        spectral_checks(suite, n, b, t);
    } else {
        suite.skip("representations", "kernel bases and pages are out of budget for n >= 5");
    }
    return suite.take();
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace bordism
