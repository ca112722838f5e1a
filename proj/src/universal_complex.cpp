#include "bordism/universal_complex.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace bordism {

namespace {

// Echelon basis of a subspace of Z_2^n, pivot = highest set bit.
class SmallSpan {
public:
    bool contains(Mask v) const { return reduce(v) == 0; }
    Mask reduce(Mask v) const {
        for (int b = 31; b >= 0 && v != 0; --b) {
            if (((v >> b) & 1U) != 0 && basis_[static_cast<std::size_t>(b)] != 0) v ^= basis_[static_cast<std::size_t>(b)];
        }
        return v;
    }
    bool insert(Mask v) {
        v = reduce(v);
        if (v == 0) return false;
        basis_[static_cast<std::size_t>(31 - __builtin_clz(v))] = v;
        return true;
    }

private:
    std::array<Mask, 32> basis_{};
};

void extend(int n, const SmallSpan& span, Mask next, std::size_t remaining, std::vector<Mask>& current,
            std::vector<Simplex>& out) {
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    const Mask limit = Mask{1} << n;
    for (Mask v = next; v < limit; ++v) {
        if (span.contains(v)) continue;
        SmallSpan grown = span;
        grown.insert(v);
        current.push_back(v);
        extend(n, grown, v + 1, remaining - 1, current, out);
        current.pop_back();
    }
}

// Sets of `size` masks independent over `base`, increasing masks, so the
// output is already in canonical order.
std::vector<Simplex> independent_extensions(int n, const SmallSpan& base, std::size_t size) {
    std::vector<Simplex> out;
    std::vector<Mask> current;
    extend(n, base, 1, size, current, out);
    return out;
}

void check_dim(int n) {
    if (n < 1 || n > kMaxAmbientDim) throw std::invalid_argument("ambient dimension out of range: " + std::to_string(n));
}

// Augmented simplicial boundaries; cells[k] holds the degree k-1 simplices in
// canonical order and faces of every cell are cells.
std::vector<BoundaryMatrix> simplicial_boundaries(const std::vector<std::vector<Simplex>>& cells) {
    std::vector<BoundaryMatrix> out;
    out.push_back(BoundaryMatrix::zero(cells.at(0).size(), 0));
    for (std::size_t k = 1; k < cells.size(); ++k) {
        const auto& source = cells[k];
        const auto& target = cells[k - 1];
        std::vector<std::uint64_t> keys;
        keys.reserve(target.size());
        for (const auto& t : target) keys.push_back(t.key());
        BoundaryMatrix m(source.size(), target.size());
        for (const auto& s : source) {
            std::vector<std::uint32_t> row;
            for (const Mask v : s.vertices()) {
                const auto key = s.without(v).key();
                const auto it = std::lower_bound(keys.begin(), keys.end(), key);
                if (it == keys.end() || *it != key) throw std::logic_error("face missing from complex");
                row.push_back(static_cast<std::uint32_t>(it - keys.begin()));
            }
            m.append_row(std::move(row));
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

Simplex::Simplex(std::vector<Mask> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
}

bool Simplex::contains(Mask v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

Simplex Simplex::without(Mask v) const {
    Simplex s;
    s.vertices_.reserve(vertices_.size());
    for (const Mask x : vertices_) {
        if (x != v) s.vertices_.push_back(x);
    }
    return s;
}

Simplex Simplex::with(Mask v) const {
    Simplex s = *this;
    if (!contains(v)) s.vertices_.insert(std::upper_bound(s.vertices_.begin(), s.vertices_.end(), v), v);
    return s;
}

Simplex Simplex::translated(Mask a) const {
    std::vector<Mask> moved;
    moved.reserve(vertices_.size());
    for (const Mask x : vertices_) moved.push_back(x ^ a);
    return Simplex(std::move(moved));
}

bool Simplex::is_valid(int n) const {
    if (static_cast<int>(vertices_.size()) > n) return false;
    const Mask limit = Mask{1} << n;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i] == 0 || vertices_[i] >= limit) return false;
        if (i > 0 && vertices_[i] == vertices_[i - 1]) return false;
    }
    return is_independent(vertices_);
}

std::uint64_t Simplex::key() const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        k |= static_cast<std::uint64_t>(vertices_[i] & 0xFFU) << (56 - 8 * i);
    }
    return k;
}

std::string Simplex::to_string(int n) const {
    std::string out = "{";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i > 0) out += ',';
        for (int b = n - 1; b >= 0; --b) out += ((vertices_[i] >> b) & 1U) != 0 ? '1' : '0';
    }
    return out + "}";
}

bool is_independent(std::span<const Mask> vectors) { return mask_rank(vectors) == vectors.size(); }

std::vector<Simplex> enumerate_simplices(int n, int p) {
    if (n < 1 || n > kMaxAmbientDim || p < -1 || p > n - 1) return {};
    return independent_extensions(n, SmallSpan{}, static_cast<std::size_t>(p + 1));
}

BigInt f_count(int n, int p) {
    if (p < 0 || p > n - 1) throw std::invalid_argument("f_count: p out of range");
    BigInt num = 1;
    const BigInt top = BigInt(1) << n;
    for (int k = 0; k <= p; ++k) num *= top - (BigInt(1) << k);
    return exact_divide(num, factorial(static_cast<unsigned>(p + 1)), "f_count");
}

BigInt link_count(int n, int p, int q) {
    if (q == -1) return 1;
    if (p < 0 || q < 0 || p + q > n - 2) return 0;
    BigInt num = 1;
    const BigInt top = BigInt(1) << n;
    for (int j = 1; j <= q + 1; ++j) num *= top - (BigInt(1) << (p + j));
    return exact_divide(num, factorial(static_cast<unsigned>(q + 1)), "link_count");
}

std::vector<Simplex> link_simplices(int n, const Simplex& sigma, int q) {
    check_dim(n);
    SmallSpan base;
    for (const Mask v : sigma.vertices()) {
        if (!base.insert(v)) throw std::invalid_argument("link of a dependent vertex set");
    }
    if (q < -1 || static_cast<int>(sigma.size()) + q + 1 > n) return {};
    return independent_extensions(n, base, static_cast<std::size_t>(q + 1));
}

std::vector<Simplex> link(int n, const Simplex& sigma) {
    std::vector<Simplex> out;
    for (int q = -1; q <= n - static_cast<int>(sigma.size()) - 1; ++q) {
        auto level = link_simplices(n, sigma, q);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

GradedChainComplex::GradedChainComplex(int min_degree, std::vector<BoundaryMatrix> boundaries)
    : min_degree_(min_degree), boundaries_(std::move(boundaries)), ranks_(boundaries_.size()) {
    for (std::size_t k = 1; k < boundaries_.size(); ++k) {
        if (boundaries_[k].n_target() != boundaries_[k - 1].n_source()) {
            throw std::invalid_argument("chain complex: boundary shapes do not compose");
        }
    }
}

std::size_t GradedChainComplex::boundary_rank(int d) const {
    if (!in_range(d)) return 0;
    const auto k = static_cast<std::size_t>(d - min_degree_);
    {
        std::lock_guard lock(*mutex_);
        if (ranks_[k]) return *ranks_[k];
    }
    const std::size_t r = rank(boundaries_[k]);
    std::lock_guard lock(*mutex_);
    ranks_[k] = r;
    return r;
}

std::size_t GradedChainComplex::homology_dim(int d) const {
    if (!in_range(d)) return 0;
    return dim(d) - boundary_rank(d) - boundary_rank(d + 1);
}

bool GradedChainComplex::is_chain_complex() const {
    for (int d = min_degree_ + 1; d <= max_degree(); ++d) {
        if (!boundary(d).then(boundary(d - 1)).is_zero()) return false;
    }
    return true;
}

std::size_t reduced_betti(const GradedChainComplex& complex, int q) { return complex.homology_dim(q); }

UniversalComplex::UniversalComplex(int n) : n_(n) {
    check_dim(n);
    for (int p = -1; p <= n - 1; ++p) {
        by_degree_.push_back(enumerate_simplices(n, p));
        auto& keys = keys_.emplace_back();
        keys.reserve(by_degree_.back().size());
        for (const auto& s : by_degree_.back()) keys.push_back(s.key());
    }
}

const std::vector<Simplex>& UniversalComplex::simplices(int p) const {
    static const std::vector<Simplex> kNone;
    if (p < -1 || p > n_ - 1) return kNone;
    return by_degree_[static_cast<std::size_t>(p + 1)];
}

std::optional<std::size_t> UniversalComplex::index_of(const Simplex& s) const {
    const int p = s.dim();
    if (p < -1 || p > n_ - 1) return std::nullopt;
    const auto& keys = keys_[static_cast<std::size_t>(p + 1)];
    const auto key = s.key();
    const auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return std::nullopt;
    const auto i = static_cast<std::size_t>(it - keys.begin());
    if (by_degree_[static_cast<std::size_t>(p + 1)][i] != s) return std::nullopt;
    return i;
}

std::size_t UniversalComplex::index(const Simplex& s) const {
    auto i = index_of(s);
    if (!i) throw std::out_of_range("not a simplex of X(Z_2^" + std::to_string(n_) + "): " + s.to_string(n_));
    return *i;
}

BoundaryMatrix UniversalComplex::boundary_matrix(int q) const {
    if (q < 0 || q > n_ - 1) throw std::out_of_range("boundary_matrix: degree out of range");
    if (q == 0) {
        BoundaryMatrix m(count(0), 1);
        for (std::size_t i = 0; i < count(0); ++i) m.append_row({0});
        return m;
    }
    const auto& target_keys = keys_[static_cast<std::size_t>(q)];
    BoundaryMatrix m(count(q), count(q - 1));
    for (const auto& s : simplices(q)) {
        std::vector<std::uint32_t> row;
        row.reserve(s.size());
        for (const Mask v : s.vertices()) {
            const auto key = s.without(v).key();
            row.push_back(static_cast<std::uint32_t>(
                std::lower_bound(target_keys.begin(), target_keys.end(), key) - target_keys.begin()));
        }
        m.append_row(std::move(row));
    }
    return m;
}

GradedChainComplex UniversalComplex::chain_complex() const {
    std::vector<BoundaryMatrix> boundaries;
    boundaries.push_back(BoundaryMatrix::zero(1, 0));
    for (int q = 0; q <= n_ - 1; ++q) boundaries.push_back(boundary_matrix(q));
    return GradedChainComplex(-1, std::move(boundaries));
}

BoundaryMatrix boundary_matrix(int n, int q) { return UniversalComplex(n).boundary_matrix(q); }

GradedChainComplex link_chain_complex(int n, const Simplex& sigma) {
    std::vector<std::vector<Simplex>> cells;
    for (int q = -1; q <= n - static_cast<int>(sigma.size()) - 1; ++q) cells.push_back(link_simplices(n, sigma, q));
    return GradedChainComplex(-1, simplicial_boundaries(cells));
}

}  // namespace bordism
