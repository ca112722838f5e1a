#include "bordism/class_complex.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace bordism {

namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

std::size_t expected_class_size(int p) { return p <= 0 ? 1 : static_cast<std::size_t>(p + 2); }

}  // namespace

bool equivalent(const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return false;
    if (a == b) return true;
    Mask shared = 0;
    int common = 0;
    for (const Mask v : a.vertices()) {
        if (b.contains(v)) {
            shared = v;
            ++common;
        }
    }
    if (common != 1) return false;
    return a.without(shared).translated(shared) == b.without(shared);
}

SimplexClass class_of(const Simplex& sigma) {
    std::set<Simplex> seen{sigma};
    std::vector<Simplex> frontier{sigma};
    while (!frontier.empty()) {
        const Simplex t = frontier.back();
        frontier.pop_back();
        for (const Mask a : t.vertices()) {
            Simplex moved = t.without(a).translated(a).with(a);
            if (seen.insert(moved).second) frontier.push_back(std::move(moved));
        }
    }
    if (seen.size() != expected_class_size(sigma.dim())) {
        throw std::logic_error("class of " + std::to_string(sigma.dim()) + "-simplex has " +
                               std::to_string(seen.size()) + " members");
    }
    SimplexClass c;
    c.members.assign(seen.begin(), seen.end());
    c.representative = c.members.front();
    return c;
}

ClassComplex::ClassComplex(std::shared_ptr<const UniversalComplex> x) : x_(std::move(x)) {
    const int n = x_->n();
    classes_.resize(static_cast<std::size_t>(n));
    simplex_class_.resize(static_cast<std::size_t>(n));
    for (int p = 0; p <= n - 1; ++p) {
        auto& owner = simplex_class_[static_cast<std::size_t>(p)];
        auto& list = classes_[static_cast<std::size_t>(p)];
        owner.assign(x_->count(p), kUnassigned);
        // Simplices come in canonical order, so the first unassigned one is
        // the least member of a new class and classes end up sorted.
        for (std::size_t i = 0; i < owner.size(); ++i) {
            if (owner[i] != kUnassigned) continue;
            SimplexClass c = class_of(x_->simplex(p, i));
            const auto id = static_cast<std::uint32_t>(list.size());
            for (const auto& m : c.members) owner[x_->index(m)] = id;
            list.push_back(std::move(c));
        }
    }
}

std::size_t ClassComplex::count(int p) const {
    if (p == -1) return static_cast<std::size_t>(n());
    return classes(p).size();
}

const std::vector<SimplexClass>& ClassComplex::classes(int p) const {
    static const std::vector<SimplexClass> kNone;
    if (p < 0 || p > n() - 1) return kNone;
    return classes_[static_cast<std::size_t>(p)];
}

std::size_t ClassComplex::class_of_simplex(int p, std::size_t simplex_index) const {
    return simplex_class_.at(static_cast<std::size_t>(p)).at(simplex_index);
}

std::size_t ClassComplex::class_index(const Simplex& sigma) const {
    return class_of_simplex(sigma.dim(), x_->index(sigma));
}

BitVector ClassComplex::d_D(const Simplex& member, Mask a1) const {
    const int p = member.dim();
    if (p < 1 || p > n() - 1) throw std::out_of_range("d_D: dimension out of range");
    if (!member.contains(a1)) throw std::invalid_argument("d_D: translating vertex not in simplex");
    BitVector out(count(p - 1));
    out.flip(class_index(member.without(a1).translated(a1)));
    for (const Mask a : member.vertices()) out.flip(class_index(member.without(a)));
    return out;
}

BitVector ClassComplex::d_D(int p, std::size_t idx) const {
    const auto& rep = class_at(p, idx).representative;
    return d_D(rep, rep[0]);
}

Gf2Vector ClassComplex::d_D0(std::size_t idx) const { return {class_at(0, idx).representative[0], n()}; }

BoundaryMatrix ClassComplex::boundary_matrix(int p) const {
    if (p < 0 || p > n() - 1) throw std::out_of_range("class boundary: degree out of range");
    BoundaryMatrix m(count(p), count(p - 1));
    for (std::size_t i = 0; i < count(p); ++i) {
        if (p == 0) {
            const Mask a = class_at(0, i).representative[0];
            std::vector<std::uint32_t> row;
            for (int b = 0; b < n(); ++b) {
                if (((a >> b) & 1U) != 0) row.push_back(static_cast<std::uint32_t>(b));
            }
            m.append_row(std::move(row));
        } else {
            const auto img = d_D(p, i).indices();
            m.append_row({img.begin(), img.end()});
        }
    }
    return m;
}

BitVector ClassComplex::expand(int p, std::size_t idx) const {
    BitVector out(x_->count(p));
    for (const auto& m : class_at(p, idx).members) out.set(x_->index(m));
    return out;
}

GradedChainComplex ClassComplex::chain_complex() const {
    std::vector<BoundaryMatrix> boundaries;
    boundaries.push_back(BoundaryMatrix::zero(count(-1), 0));
    for (int p = 0; p <= n() - 1; ++p) boundaries.push_back(boundary_matrix(p));
    return GradedChainComplex(-1, std::move(boundaries));
}

ClassComplex build_class_complex(int n) { return ClassComplex(std::make_shared<const UniversalComplex>(n)); }

bool d_restriction_check(const ClassComplex& d, int p) {
    if (p <= 1 || p > d.n() - 1) throw std::out_of_range("d_restriction_check needs 1 < p <= n-1");
    const BoundaryMatrix dc = d.universal().boundary_matrix(p);
    for (std::size_t i = 0; i < d.count(p); ++i) {
        const BitVector lhs = dc.apply(d.expand(p, i));
        BitVector rhs(d.universal().count(p - 1));
        for (const auto j : d.d_D(p, i).indices()) rhs ^= d.expand(p - 1, j);
        if (lhs != rhs) return false;
    }
    return true;
}

bool d_restriction_check(int n, int p) { return d_restriction_check(build_class_complex(n), p); }

}  // namespace bordism
