#include "bordism/representations.hpp"

#include <algorithm>
#include <bitset>
#include <map>

#include "bordism/class_complex.hpp"

namespace bordism {

namespace {

void check_ambient(int n) {
    if (n < 1 || n > kMaxAmbientDim) throw std::invalid_argument("ambient dimension out of range");
}

BasisElementB pair_element(const Simplex& head, const Simplex& tail) {
    BasisElementB b;
    b.p = head.dim();
    b.q = tail.dim();
    b.kind = b.q == -1 ? BasisKind::BottomRow : BasisKind::FaithfulPair;
    b.class_rep = head;
    b.simplex = b.q == -1 ? Simplex{} : tail;
    return b;
}

void flip_element(BitVector& chain, const TotalComplex& t, const BasisElementB& b) {
    const auto i = t.index_of(b);
    if (!i) throw std::logic_error("boundary term " + b.to_string(t.n()) + " is not a basis element");
    chain.flip(*i);
}

void collect(int n, std::size_t remaining, Mask from, std::vector<Mask>& current, std::vector<FaithfulRep>& out) {
    if (remaining == 0) {
        if (is_faithful(n, current)) out.emplace_back(n, current);
        return;
    }
    const Mask limit = Mask{1} << n;
    for (Mask v = from; v < limit; ++v) {
        // A factor of multiplicity three leaves too few distinct factors.
        if (current.size() >= 2 && current[current.size() - 1] == v && current[current.size() - 2] == v) continue;
        current.push_back(v);
        collect(n, remaining - 1, v, current, out);
        current.pop_back();
    }
}

}  // namespace

bool is_faithful(int n, const std::vector<Mask>& factors) {
    if (n < 1 || n > kMaxAmbientDim) return false;
    if (factors.size() != static_cast<std::size_t>(n + 1)) return false;
    const Mask limit = Mask{1} << n;
    for (const Mask f : factors) {
        if (f == 0 || f >= limit) return false;
    }
    return mask_rank(factors) == static_cast<std::size_t>(n);
}

FaithfulRep::FaithfulRep(int n, std::vector<Mask> factors) : n_(n), factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end());
    if (!is_faithful(n_, factors_)) {
        std::string shown;
        for (const Mask f : factors_) shown += format_functional(f, n_) + ' ';
        throw std::invalid_argument("not a faithful representation: " + shown);
    }
}

std::string FaithfulRep::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i > 0) out += ' ';
        out += format_functional(factors_[i], n_);
    }
    return out;
}

void RepPolynomial::toggle(const FaithfulRep& tau) {
    if (tau.n() != n_) throw std::invalid_argument("monomial of a different ambient dimension");
    if (!monomials_.erase(tau)) monomials_.insert(tau);
}

RepPolynomial& RepPolynomial::operator+=(const RepPolynomial& other) {
    for (const auto& tau : other) toggle(tau);
    return *this;
}

std::vector<FaithfulRep> enumerate_faithful_reps(int n) {
    check_ambient(n);
    std::vector<FaithfulRep> out;
    std::vector<Mask> current;
    collect(n, static_cast<std::size_t>(n + 1), 1, current, out);
    return out;
}

int chi(Mask rho, const FaithfulRep& tau) {
    return static_cast<int>(std::count(tau.factors().begin(), tau.factors().end(), rho));
}

std::vector<Mask> restriction_invariant(const FaithfulRep& tau, Mask rho) {
    std::vector<Mask> rest = tau.factors();
    const auto it = std::find(rest.begin(), rest.end(), rho);
    if (it == rest.end()) throw std::domain_error("~_rho is only defined when rho is a factor");
    rest.erase(it);
    for (Mask& x : rest) x = std::min(x, x ^ rho);
    std::sort(rest.begin(), rest.end());
    return rest;
}

bool equiv_rho(const FaithfulRep& tau, const FaithfulRep& other, Mask rho) {
    return restriction_invariant(tau, rho) == restriction_invariant(other, rho);
}

std::vector<Mask> dual_basis(int n, const std::vector<Mask>& basis) {
    if (basis.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("dual_basis: need n vectors");
    // Rows (v_j | e_j); Gauss-Jordan gives (I | M^{-1}).
    std::vector<std::uint64_t> rows(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) rows[j] = basis[j] | (std::uint64_t{1} << (32 + j));
    for (int k = 0; k < n; ++k) {
        const auto bit = std::uint64_t{1} << k;
        auto pivot = static_cast<std::size_t>(k);
        while (pivot < rows.size() && (rows[pivot] & bit) == 0) ++pivot;
        if (pivot == rows.size()) throw std::invalid_argument("dual_basis: vectors are dependent");
        std::swap(rows[static_cast<std::size_t>(k)], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != static_cast<std::size_t>(k) && (rows[r] & bit) != 0) rows[r] ^= rows[static_cast<std::size_t>(k)];
        }
    }
    std::vector<Mask> dual(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (int k = 0; k < n; ++k) {
            if (((rows[static_cast<std::size_t>(k)] >> (32 + i)) & 1U) != 0) dual[i] |= Mask{1} << k;
        }
    }
    return dual;
}

Presentation present(const FaithfulRep& tau, std::size_t leftover_slot) {
    const auto& f = tau.factors();
    if (leftover_slot >= f.size()) throw std::invalid_argument("leftover slot out of range");
    Presentation pr;
    pr.leftover = f[leftover_slot];
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i != leftover_slot) pr.basis.push_back(f[i]);
    }
    if (mask_rank(pr.basis) != pr.basis.size()) throw std::invalid_argument("remaining factors are dependent");
    pr.dual = dual_basis(tau.n(), pr.basis);
    for (const Mask a : pr.dual) pr.support.push_back(pairing(pr.leftover, a) != 0);
    return pr;
}

std::size_t default_leftover_slot(const FaithfulRep& tau) {
    const auto& f = tau.factors();
    for (std::size_t slot = 0; slot < f.size(); ++slot) {
        std::vector<Mask> rest;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i != slot) rest.push_back(f[i]);
        }
        if (mask_rank(rest) == rest.size()) return slot;
    }
    throw std::logic_error("faithful representation without a basis");
}

namespace {

std::pair<Simplex, Simplex> split(const Presentation& pr) {
    std::vector<Mask> head;
    std::vector<Mask> tail;
    for (std::size_t i = 0; i < pr.dual.size(); ++i) (pr.support[i] ? head : tail).push_back(pr.dual[i]);
    return {Simplex(std::move(head)), Simplex(std::move(tail))};
}

}  // namespace

BasisElementB dual_D(const FaithfulRep& tau, std::size_t leftover_slot) {
    const auto [head, tail] = split(present(tau, leftover_slot));
    return pair_element(class_of(head).representative, tail);
}

BasisElementB dual_D(const FaithfulRep& tau) { return dual_D(tau, default_leftover_slot(tau)); }

FaithfulRep dual_inverse(int n, const Simplex& member, const Simplex& tail) {
    check_ambient(n);
    if (member.empty() || static_cast<int>(member.size() + tail.size()) != n) {
        throw std::invalid_argument("dual_inverse: not a degree n-2 faithful element");
    }
    std::vector<Mask> frame = member.vertices();
    frame.insert(frame.end(), tail.vertices().begin(), tail.vertices().end());
    if (mask_rank(frame) != frame.size()) throw std::invalid_argument("dual_inverse: vertices are dependent");
    const auto rho = dual_basis(n, frame);
    Mask leftover = 0;
    for (std::size_t i = 0; i < member.size(); ++i) leftover ^= rho[i];
    std::vector<Mask> factors = rho;
    factors.push_back(leftover);
    return FaithfulRep(n, std::move(factors));
}

FaithfulRep dual_inverse(int n, const BasisElementB& b) {
    if (b.kind == BasisKind::LeftColumn || b.p + b.q != n - 2) {
        throw std::invalid_argument("dual_inverse: not a degree n-2 faithful element");
    }
    return dual_inverse(n, b.class_rep, b.kind == BasisKind::BottomRow ? Simplex{} : b.simplex);
}

BitVector partial_rho(const TotalComplex& t, const FaithfulRep& tau, Mask rho, std::size_t leftover_slot) {
    if (chi(rho, tau) == 0) throw std::domain_error("partial_rho: rho is not a factor");
    const int n = tau.n();
    const Presentation pr = present(tau, leftover_slot);
    const auto [head, tail] = split(pr);
    BitVector out(t.dim(n - 3));
    if (head.size() > 1) {
        if (rho == pr.leftover) {
            flip_element(out, t, pair_element(head.without(head[0]).translated(head[0]), tail));
            return out;
        }
        const auto i = static_cast<std::size_t>(std::find(pr.basis.begin(), pr.basis.end(), rho) - pr.basis.begin());
        const Mask a = pr.dual[i];
        flip_element(out, t, pr.support[i] ? pair_element(head.without(a), tail) : pair_element(head, tail.without(a)));
        return out;
    }
    const Mask a1 = head[0];
    if (rho == pr.leftover) {
        const auto& b = t.bicomplex();
        const std::size_t s = b.universal().index(tail);
        const std::size_t off = t.offset(-1, n - 2);
        for (int c = 0; c < n; ++c) {
            if (((a1 >> c) & 1U) != 0) out.flip(off + b.left_index(n - 2, c, s));
        }
        return out;
    }
    const auto i = static_cast<std::size_t>(std::find(pr.basis.begin(), pr.basis.end(), rho) - pr.basis.begin());
    flip_element(out, t, pair_element(head, tail.without(pr.dual[i])));
    return out;
}

BitVector partial_rho(const TotalComplex& t, const FaithfulRep& tau, Mask rho) {
    return partial_rho(t, tau, rho, default_leftover_slot(tau));
}

BitVector dual_chain(const TotalComplex& t, const RepPolynomial& f) {
    if (f.n() != t.n()) throw std::invalid_argument("polynomial and complex disagree on n");
    BitVector out(t.dim(t.n() - 2));
    for (const auto& tau : f) flip_element(out, t, dual_D(tau));
    return out;
}

bool in_image_dual(const RepPolynomial& f, const TotalComplex& t) {
    return t.boundary(t.n() - 2).apply(dual_chain(t, f)).none();
}

bool in_image_lls(const RepPolynomial& f) {
    using Parity = std::bitset<256>;
    struct Group {
        std::size_t size = 0;
        Parity multiplicities;
    };
    std::map<std::pair<Mask, std::vector<Mask>>, Group> groups;
    for (const auto& tau : f) {
        Parity odd;
        for (const Mask x : tau.factors()) odd.flip(x);
        const auto& fs = tau.factors();
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (i > 0 && fs[i] == fs[i - 1]) continue;
            auto& g = groups[{fs[i], restriction_invariant(tau, fs[i])}];
            ++g.size;
            g.multiplicities ^= odd;
        }
    }
    for (const auto& [key, g] : groups) {
        if (g.size % 2 != 0) return false;
        // The invariant keeps a 0 exactly when rho occurs twice.
        const bool doubled = !key.second.empty() && key.second.front() == 0;
        if (doubled && g.multiplicities.any()) return false;
    }
    return true;
}

}  // namespace bordism
