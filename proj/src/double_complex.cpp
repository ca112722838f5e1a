#include "bordism/double_complex.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <tuple>

namespace bordism {

namespace {

std::string bits(Mask m, int n) {
    std::string s;
    for (int b = n - 1; b >= 0; --b) s += ((m >> b) & 1U) != 0 ? '1' : '0';
    return s;
}

void append_bits(std::vector<std::uint32_t>& row, Mask a, std::size_t stride, std::size_t simplex_index) {
    for (int b = 0; b < 32; ++b) {
        if (((a >> b) & 1U) != 0) row.push_back(static_cast<std::uint32_t>(static_cast<std::size_t>(b) * stride + simplex_index));
    }
}

}  // namespace

std::string BasisElementB::to_string(int n) const {
    switch (kind) {
        case BasisKind::FaithfulPair: return "[" + class_rep.to_string(n) + "]x" + simplex.to_string(n);
        case BasisKind::LeftColumn: return bits(vector, n) + "x" + simplex.to_string(n);
        case BasisKind::BottomRow: return "[" + class_rep.to_string(n) + "]x1";
    }
    return {};
}

bool in_support(int n, int p, int q) {
    if (p < -1 || q < -1 || p > n - 1 || q > n - 2) return false;
    if (p == -1 || q == -1) return true;
    return p + q <= n - 2;
}

DoubleComplex::DoubleComplex(std::shared_ptr<const ClassComplex> d) : d_(std::move(d)) {
    const int n = d_->n();
    const auto& x = d_->universal();
    grid_.resize(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1));
    for (int p = -1; p <= n - 1; ++p) {
        for (int q = -1; q <= n - 2; ++q) {
            if (!in_support(n, p, q)) continue;
            auto& pos = at(p, q);
            if (p == -1) {
                pos.dim = static_cast<std::size_t>(n) * x.count(q);
            } else if (q == -1) {
                pos.dim = d_->count(p);
            } else {
                pos.offsets.push_back(0);
                for (const auto& c : d_->classes(p)) {
                    for (const auto& t : link_simplices(n, c.representative, q)) {
                        pos.simplex_ids.push_back(static_cast<std::uint32_t>(x.index(t)));
                    }
                    pos.offsets.push_back(static_cast<std::uint32_t>(pos.simplex_ids.size()));
                }
                pos.dim = pos.simplex_ids.size();
            }
        }
    }
    for (int p = -1; p <= n - 1; ++p) {
        for (int q = -1; q <= n - 2; ++q) {
            if (!in_support(n, p, q)) continue;
            build_horizontal(p, q);
            build_vertical(p, q);
        }
    }
}

std::size_t DoubleComplex::dim(int p, int q) const { return in_support(n(), p, q) ? at(p, q).dim : 0; }

std::optional<std::size_t> DoubleComplex::pair_index(int p, int q, std::size_t class_index,
                                                     std::size_t simplex_index) const {
    if (p < 0 || q < 0 || !in_support(n(), p, q)) return std::nullopt;
    const auto& pos = at(p, q);
    if (class_index + 1 >= pos.offsets.size()) return std::nullopt;
    const auto first = pos.simplex_ids.begin() + pos.offsets[class_index];
    const auto last = pos.simplex_ids.begin() + pos.offsets[class_index + 1];
    const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(simplex_index));
    if (it == last || *it != simplex_index) return std::nullopt;
    return static_cast<std::size_t>(it - pos.simplex_ids.begin());
}

std::size_t DoubleComplex::left_index(int q, int coordinate, std::size_t simplex_index) const {
    return static_cast<std::size_t>(coordinate) * universal().count(q) + simplex_index;
}

BasisElementB DoubleComplex::element(int p, int q, std::size_t index) const {
    if (index >= dim(p, q)) throw std::out_of_range("element: index out of range");
    BasisElementB b;
    b.p = p;
    b.q = q;
    if (p == -1) {
        const auto stride = universal().count(q);
        b.kind = BasisKind::LeftColumn;
        b.vector = Mask{1} << (index / stride);
        b.simplex = universal().simplex(q, index % stride);
    } else if (q == -1) {
        b.kind = BasisKind::BottomRow;
        b.class_rep = d_->class_at(p, index).representative;
    } else {
        const auto& pos = at(p, q);
        const auto c = static_cast<std::size_t>(
            std::upper_bound(pos.offsets.begin(), pos.offsets.end(), static_cast<std::uint32_t>(index)) -
            pos.offsets.begin() - 1);
        b.kind = BasisKind::FaithfulPair;
        b.class_rep = d_->class_at(p, c).representative;
        b.simplex = universal().simplex(q, pos.simplex_ids[index]);
    }
    return b;
}

std::optional<std::size_t> DoubleComplex::index_of(const BasisElementB& b) const {
    if (!in_support(n(), b.p, b.q)) return std::nullopt;
    switch (b.kind) {
        case BasisKind::LeftColumn: {
            if (b.p != -1 || std::popcount(b.vector) != 1 || b.simplex.dim() != b.q) return std::nullopt;
            const int coord = std::countr_zero(b.vector);
            if (coord >= n()) return std::nullopt;
            const auto s = universal().index_of(b.simplex);
            if (!s) return std::nullopt;
            return left_index(b.q, coord, *s);
        }
        case BasisKind::BottomRow: {
            if (b.q != -1 || b.p < 0 || b.class_rep.dim() != b.p) return std::nullopt;
            const auto s = universal().index_of(b.class_rep);
            if (!s) return std::nullopt;
            return d_->class_of_simplex(b.p, *s);
        }
        case BasisKind::FaithfulPair: {
            if (b.p < 0 || b.q < 0 || b.class_rep.dim() != b.p || b.simplex.dim() != b.q) return std::nullopt;
            const auto c = universal().index_of(b.class_rep);
            const auto s = universal().index_of(b.simplex);
            if (!c || !s) return std::nullopt;
            return pair_index(b.p, b.q, d_->class_of_simplex(b.p, *c), *s);
        }
    }
    return std::nullopt;
}

const BoundaryMatrix& DoubleComplex::horizontal(int p, int q) const {
    if (!in_support(n(), p, q)) throw std::out_of_range("horizontal: position outside the grid");
    return at(p, q).horizontal;
}

const BoundaryMatrix& DoubleComplex::vertical(int p, int q) const {
    if (!in_support(n(), p, q)) throw std::out_of_range("vertical: position outside the grid");
    return at(p, q).vertical;
}

void DoubleComplex::build_horizontal(int p, int q) {
    auto& pos = at(p, q);
    if (p == -1) {
        pos.horizontal = BoundaryMatrix::zero(pos.dim, 0);
        return;
    }
    BoundaryMatrix m(pos.dim, dim(p - 1, q));
    if (q == -1) {
        const auto d = d_->boundary_matrix(p);
        for (std::size_t i = 0; i < pos.dim; ++i) {
            const auto img = d.image(i);
            m.append_row({img.begin(), img.end()});
        }
    } else {
        const auto stride = universal().count(q);
        const std::size_t n_classes = pos.offsets.size() - 1;
        for (std::size_t c = 0; c < n_classes; ++c) {
            const BitVector dc = p >= 1 ? d_->d_D(p, c) : BitVector{};
            const auto targets = dc.indices();
            for (auto k = pos.offsets[c]; k < pos.offsets[c + 1]; ++k) {
                const auto s = pos.simplex_ids[k];
                std::vector<std::uint32_t> row;
                if (p == 0) {
                    append_bits(row, d_->class_at(0, c).representative[0], stride, s);
                } else {
                    for (const auto j : targets) {
                        const auto t = pair_index(p - 1, q, j, s);
                        if (!t) throw std::logic_error("horizontal boundary leaves the faithful span");
                        row.push_back(static_cast<std::uint32_t>(*t));
                    }
                }
                m.append_row(std::move(row));
            }
        }
    }
    pos.horizontal = std::move(m);
}

void DoubleComplex::build_vertical(int p, int q) {
    auto& pos = at(p, q);
    if (q == -1) {
        pos.vertical = BoundaryMatrix::zero(pos.dim, 0);
        return;
    }
    const auto& x = universal();
    BoundaryMatrix m(pos.dim, dim(p, q - 1));
    if (p == -1) {
        const auto stride = x.count(q);
        const auto face_stride = x.count(q - 1);
        for (std::size_t i = 0; i < pos.dim; ++i) {
            const auto coord = i / stride;
            const auto& t = x.simplex(q, i % stride);
            std::vector<std::uint32_t> row;
            for (const Mask v : t.vertices()) {
                row.push_back(static_cast<std::uint32_t>(coord * face_stride + x.index(t.without(v))));
            }
            m.append_row(std::move(row));
        }
    } else {
        const std::size_t n_classes = pos.offsets.size() - 1;
        for (std::size_t c = 0; c < n_classes; ++c) {
            for (auto k = pos.offsets[c]; k < pos.offsets[c + 1]; ++k) {
                std::vector<std::uint32_t> row;
                if (q == 0) {
                    row.push_back(static_cast<std::uint32_t>(c));
                } else {
                    const auto& t = x.simplex(q, pos.simplex_ids[k]);
                    for (const Mask v : t.vertices()) {
                        const auto f = pair_index(p, q - 1, c, x.index(t.without(v)));
                        if (!f) throw std::logic_error("vertical boundary leaves the faithful span");
                        row.push_back(static_cast<std::uint32_t>(*f));
                    }
                }
                m.append_row(std::move(row));
            }
        }
    }
    pos.vertical = std::move(m);
}

bool DoubleComplex::squares_commute() const {
    for (int p = 0; p <= n() - 1; ++p) {
        for (int q = 0; q <= n() - 2; ++q) {
            if (!in_support(n(), p, q)) continue;
            const auto hv = vertical(p, q).then(horizontal(p, q - 1));
            const auto vh = horizontal(p, q).then(vertical(p - 1, q));
            if (!(hv == vh)) return false;
        }
    }
    return true;
}

DoubleComplex build_double_complex(int n) { return DoubleComplex(std::make_shared<const ClassComplex>(build_class_complex(n))); }

namespace {

GradedChainComplex assemble_total(const DoubleComplex& b) {
    const int n = b.n();
    std::vector<BoundaryMatrix> boundaries;
    for (int l = -2; l <= n - 2; ++l) {
        std::size_t source = 0;
        std::size_t target = 0;
        for (int p = -1; p <= n - 1; ++p) {
            source += b.dim(p, l - p);
            target += b.dim(p, l - 1 - p);
        }
        // Offsets of the degree l-1 blocks.
        std::vector<std::size_t> target_offset(static_cast<std::size_t>(n + 2), 0);
        std::size_t acc = 0;
        for (int p = -1; p <= n - 1; ++p) {
            target_offset[static_cast<std::size_t>(p + 1)] = acc;
            acc += b.dim(p, l - 1 - p);
        }
        BoundaryMatrix m(source, target);
        for (int p = -1; p <= n - 1; ++p) {
            const int q = l - p;
            if (!in_support(n, p, q)) continue;
            const auto& h = b.horizontal(p, q);
            const auto& v = b.vertical(p, q);
            const std::size_t h_off = p >= 0 ? target_offset[static_cast<std::size_t>(p)] : 0;
            const std::size_t v_off = target_offset[static_cast<std::size_t>(p + 1)];
            for (std::size_t i = 0; i < b.dim(p, q); ++i) {
                std::vector<std::uint32_t> row;
                for (const auto t : h.image(i)) row.push_back(static_cast<std::uint32_t>(h_off + t));
                for (const auto t : v.image(i)) row.push_back(static_cast<std::uint32_t>(v_off + t));
                m.append_row(std::move(row));
            }
        }
        boundaries.push_back(std::move(m));
    }
    return GradedChainComplex(-2, std::move(boundaries));
}

}  // namespace

TotalComplex::TotalComplex(std::shared_ptr<const DoubleComplex> b) : b_(std::move(b)), complex_(assemble_total(*b_)) {}

std::vector<std::pair<int, int>> TotalComplex::positions(int l) const {
    std::vector<std::pair<int, int>> out;
    for (int p = -1; p <= n() - 1; ++p) {
        if (in_support(n(), p, l - p)) out.emplace_back(p, l - p);
    }
    return out;
}

std::size_t TotalComplex::offset(int p, int q) const {
    std::size_t acc = 0;
    for (int r = -1; r < p; ++r) acc += b_->dim(r, p + q - r);
    return acc;
}

std::pair<int, int> TotalComplex::position_of(int l, std::size_t index) const {
    std::size_t acc = 0;
    for (const auto& [p, q] : positions(l)) {
        const auto d = b_->dim(p, q);
        if (index < acc + d) return {p, q};
        acc += d;
    }
    throw std::out_of_range("position_of: index out of range");
}

BasisElementB TotalComplex::element(int l, std::size_t index) const {
    const auto [p, q] = position_of(l, index);
    return b_->element(p, q, index - offset(p, q));
}

std::optional<std::size_t> TotalComplex::index_of(const BasisElementB& b) const {
    const auto local = b_->index_of(b);
    if (!local) return std::nullopt;
    return offset(b.p, b.q) + *local;
}

BitVector TotalComplex::restrict_to(int p, int q, const BitVector& chain) const {
    return chain.slice(offset(p, q), b_->dim(p, q));
}

BitVector TotalComplex::embed(int p, int q, const BitVector& block) const {
    BitVector out(dim(p + q));
    const auto off = offset(p, q);
    for (const auto i : block.indices()) out.set(off + i);
    return out;
}

TotalComplex total_complex(std::shared_ptr<const DoubleComplex> b) { return TotalComplex(std::move(b)); }

TotalComplex build_total_complex(int n) { return TotalComplex(std::make_shared<const DoubleComplex>(build_double_complex(n))); }

std::vector<BasisElementB> faithful_basis_n_minus_2(int n) {
    using Key = std::tuple<int, Simplex, Simplex>;
    std::set<Key> seen;
    for (const auto& frame : enumerate_simplices(n, n - 1)) {
        const auto& v = frame.vertices();
        const unsigned full = (1U << n) - 1;
        for (unsigned subset = 1; subset <= full; ++subset) {
            std::vector<Mask> head;
            std::vector<Mask> tail;
            for (int i = 0; i < n; ++i) ((subset >> i) & 1U ? head : tail).push_back(v[static_cast<std::size_t>(i)]);
            const int p = static_cast<int>(head.size()) - 1;
            seen.emplace(p, class_of(Simplex(head)).representative, Simplex(tail));
        }
    }
    std::vector<BasisElementB> out;
    out.reserve(seen.size());
    for (const auto& [p, rep, tail] : seen) {
        BasisElementB b;
        b.p = p;
        b.q = n - 2 - p;
        b.kind = p == n - 1 ? BasisKind::BottomRow : BasisKind::FaithfulPair;
        b.class_rep = rep;
        b.simplex = tail;
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace bordism
