#include "bordism/spectral_sequence.hpp"

#include <stdexcept>

#include "bordism/universal_complex.hpp"

namespace bordism {

namespace {

BoundaryMatrix rows_to_matrix(std::size_t n_target, const std::vector<BitVector>& rows) {
    BoundaryMatrix m(rows.size(), n_target);
    for (const auto& r : rows) m.append_row(r.indices());
    return m;
}

// Sum of the lifts selected by coordinate vector c.
BitVector combine(const std::vector<BitVector>& lifts, std::size_t ambient, const BitVector& c) {
    BitVector out(ambient);
    for (const auto j : c.indices()) out ^= lifts[j];
    return out;
}

std::vector<BitVector> lift_all(const std::vector<BitVector>& lower_lifts, std::size_t ambient,
                                const std::vector<BitVector>& coords) {
    std::vector<BitVector> out;
    out.reserve(coords.size());
    for (const auto& c : coords) out.push_back(combine(lower_lifts, ambient, c));
    return out;
}

}  // namespace

Subquotient::Subquotient(std::size_t ambient_dim, const std::vector<BitVector>& cycles,
                         const std::vector<BitVector>& image)
    : ambient_dim_(ambient_dim), basis_(ambient_dim, image.size() + cycles.size()) {
    for (const auto& v : image) basis_.insert(v);
    for (const auto& z : cycles) {
        const auto id = basis_.generators_inserted();
        if (basis_.insert(z).independent) {
            lifts_.push_back(z);
            lift_ids_.push_back(id);
        }
    }
}

std::optional<BitVector> Subquotient::coordinates(const BitVector& v) const {
    const auto c = basis_.express(v);
    if (!c) return std::nullopt;
    BitVector out(lifts_.size());
    for (std::size_t j = 0; j < lift_ids_.size(); ++j) {
        if (c->get(lift_ids_[j])) out.set(j);
    }
    return out;
}

std::size_t Page::dim(int p, int q) const {
    const auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
}

SpectralSequence::SpectralSequence(std::shared_ptr<const DoubleComplex> b) : b_(std::move(b)) {}

std::vector<GridPos> SpectralSequence::grid() const {
    std::vector<GridPos> out;
    for (int p = -1; p <= b_->n() - 1; ++p) {
        for (int q = -1; q <= b_->n() - 2; ++q) {
            if (in_support(b_->n(), p, q)) out.emplace_back(p, q);
        }
    }
    return out;
}

const Page& SpectralSequence::page(int r) {
    if (r < 0 || r > 3) throw std::out_of_range("page must be 0..3");
    while (static_cast<int>(pages_.size()) <= r) {
        switch (pages_.size()) {
            case 0: build_e0(); break;
            case 1: build_e1(); break;
            case 2: build_e2(); break;
            default: build_e3(); break;
        }
    }
    return pages_[static_cast<std::size_t>(r)];
}

const ImageSolver& SpectralSequence::vertical_solver(int p, int q) {
    auto it = solvers_.find({p, q});
    if (it == solvers_.end()) it = solvers_.emplace(GridPos{p, q}, ImageSolver(b_->vertical(p, q))).first;
    return it->second;
}

void SpectralSequence::build_e0() {
    Page e;
    e.r = 0;
    for (const auto& [p, q] : grid()) {
        const auto d = b_->dim(p, q);
        e.dims[{p, q}] = d;
        e.differentials[{p, q}] = b_->vertical(p, q);
        auto& lifts = e.lifts[{p, q}];
        lifts.reserve(d);
        for (std::size_t i = 0; i < d; ++i) {
            BitVector v(d);
            v.set(i);
            lifts.push_back(std::move(v));
        }
    }
    pages_.push_back(std::move(e));
}

void SpectralSequence::build_e1() {
    const int n = b_->n();
    Page e;
    e.r = 1;
    for (const auto& [p, q] : grid()) {
        const auto cycles = kernel_basis(b_->vertical(p, q));
        const auto image = in_support(n, p, q + 1) ? image_basis(b_->vertical(p, q + 1)) : std::vector<BitVector>{};
        auto& sq = e1_[{p, q}] = Subquotient(b_->dim(p, q), cycles, image);
        e.dims[{p, q}] = sq.dim();
        e.lifts[{p, q}] = sq.lifts();
    }
    for (const auto& [p, q] : grid()) {
        const auto& sq = e1_.at({p, q});
        if (!in_support(n, p - 1, q)) {
            e.differentials[{p, q}] = BoundaryMatrix::zero(sq.dim(), 0);
            continue;
        }
        const auto& target = e1_.at({p - 1, q});
        std::vector<BitVector> rows;
        for (const auto& y : sq.lifts()) {
            auto c = target.coordinates(b_->horizontal(p, q).apply(y));
            if (!c) throw std::logic_error("d^h of a vertical cycle is not a cycle");
            rows.push_back(std::move(*c));
        }
        e.differentials[{p, q}] = rows_to_matrix(target.dim(), rows);
    }
    pages_.push_back(std::move(e));
}

void SpectralSequence::build_e2() {
    const int n = b_->n();
    const Page& e1 = pages_[1];
    Page e;
    e.r = 2;
    for (const auto& [p, q] : grid()) {
        const auto cycles = kernel_basis(e1.differentials.at({p, q}));
        std::vector<BitVector> image;
        if (in_support(n, p + 1, q)) image = image_basis(e1.differentials.at({p + 1, q}));
        auto& sq = e2_[{p, q}] = Subquotient(e1.dim(p, q), cycles, image);
        e.dims[{p, q}] = sq.dim();
        e.lifts[{p, q}] = lift_all(e1.lifts.at({p, q}), b_->dim(p, q), sq.lifts());
    }
    for (const auto& [p, q] : grid()) {
        const auto& lifts = e.lifts.at({p, q});
        if (!in_support(n, p - 2, q + 1)) {
            e.differentials[{p, q}] = BoundaryMatrix::zero(lifts.size(), 0);
            continue;
        }
        // Zig-zag: d^v x = d^h y, then d_2[y] = [d^h x].
        std::vector<BitVector> rows;
        for (const auto& y : lifts) {
            const BitVector h = b_->horizontal(p, q).apply(y);
            BitVector w(b_->dim(p - 2, q + 1));
            if (in_support(n, p - 1, q + 1)) {
                const auto x = vertical_solver(p - 1, q + 1).solve(h);
                if (!x) throw std::logic_error("d^h y is not a vertical boundary");
                w = b_->horizontal(p - 1, q + 1).apply(*x);
            } else if (h.any()) {
                throw std::logic_error("d^h y is not a vertical boundary");
            }
            const auto c1 = e1_.at({p - 2, q + 1}).coordinates(w);
            if (!c1) throw std::logic_error("d^h x is not a vertical cycle");
            auto c2 = e2_.at({p - 2, q + 1}).coordinates(*c1);
            if (!c2) throw std::logic_error("d_2 image is not a d_1 cycle");
            rows.push_back(std::move(*c2));
        }
        e.differentials[{p, q}] = rows_to_matrix(e2_.at({p - 2, q + 1}).dim(), rows);
    }
    pages_.push_back(std::move(e));
}

void SpectralSequence::build_e3() {
    const int n = b_->n();
    const Page& e2 = pages_[2];
    Page e;
    e.r = 3;
    for (const auto& [p, q] : grid()) {
        const auto cycles = kernel_basis(e2.differentials.at({p, q}));
        std::vector<BitVector> image;
        if (in_support(n, p + 2, q - 1)) image = image_basis(e2.differentials.at({p + 2, q - 1}));
        auto& sq = e3_[{p, q}] = Subquotient(e2.dim(p, q), cycles, image);
        e.dims[{p, q}] = sq.dim();
        e.lifts[{p, q}] = lift_all(e2.lifts.at({p, q}), b_->dim(p, q), sq.lifts());
    }
    for (const auto& [p, q] : grid()) {
        const auto d = e.dim(p, q);
        e.differentials[{p, q}] =
            BoundaryMatrix::zero(d, in_support(n, p - 3, q + 2) ? e.dim(p - 3, q + 2) : 0);
        if (d == 0) continue;
        for (int r = 3; p - r >= -1; ++r) {
            if (in_support(n, p - r, q + r - 1) && e.dim(p - r, q + r - 1) != 0) e.undetermined.emplace_back(r, p, q);
        }
    }
    pages_.push_back(std::move(e));
}

Page compute_page(std::shared_ptr<const DoubleComplex> b, int r) {
    SpectralSequence ss(std::move(b));
    return ss.page(r);
}

DegenerationReport degeneration_report(SpectralSequence& ss, const TotalComplex& t) {
    const int n = ss.bicomplex().n();
    DegenerationReport rep;
    const Page& e2 = ss.page(2);
    const std::size_t target = e2.dim(-1, n - 2);
    if (in_support(n, 1, n - 3)) {
        rep.d2_surjective = rank(e2.differentials.at({1, n - 3})) == target;
    } else {
        rep.d2_surjective = target == 0;
    }
    const Page& e3 = ss.page(3);
    rep.higher_differentials_vanish = e3.undetermined.empty();
    for (int p = -1; p <= n - 1; ++p) rep.e3_total += e3.dim(p, n - 2 - p);
    rep.homology = t.homology_dim(n - 2);
    return rep;
}

bool verify_degeneration(std::shared_ptr<const DoubleComplex> b) {
    SpectralSequence ss(b);
    const TotalComplex t(b);
    return degeneration_report(ss, t).ok();
}

LiftReport check_left_column_lifts(SpectralSequence& ss) {
    const auto& b = ss.bicomplex();
    const int n = b.n();
    const auto block = [&](int p, int q) { return in_support(n, p, q) ? b.dim(p, q) : std::size_t{0}; };
    const std::size_t a_dim = block(-1, n - 2);
    const std::size_t b_dim = block(0, n - 3);
    const std::size_t c_dim = block(1, n - 4);
    const std::size_t x_dim = block(0, n - 2);
    const std::size_t y_dim = block(1, n - 3);

    // Unknowns (x, y); equations d^h x = c, d^v x + d^h y = 0, d^v y = 0.
    BoundaryMatrix system(x_dim + y_dim, a_dim + b_dim + c_dim);
    for (std::size_t i = 0; i < x_dim; ++i) {
        std::vector<std::uint32_t> row;
        for (const auto t : b.horizontal(0, n - 2).image(i)) row.push_back(t);
        for (const auto t : b.vertical(0, n - 2).image(i)) row.push_back(static_cast<std::uint32_t>(a_dim + t));
        system.append_row(std::move(row));
    }
    for (std::size_t i = 0; i < y_dim; ++i) {
        std::vector<std::uint32_t> row;
        for (const auto t : b.horizontal(1, n - 3).image(i)) row.push_back(static_cast<std::uint32_t>(a_dim + t));
        for (const auto t : b.vertical(1, n - 3).image(i)) {
            row.push_back(static_cast<std::uint32_t>(a_dim + b_dim + t));
        }
        system.append_row(std::move(row));
    }
    const ImageSolver solver(system);

    LiftReport rep;
    for (const auto& c : ss.page(1).lifts.at({-1, n - 2})) {
        ++rep.generators;
        BitVector rhs(a_dim + b_dim + c_dim);
        for (const auto i : c.indices()) rhs.set(i);
        const auto sol = solver.solve(rhs);
        if (!sol) continue;
        const BitVector x = sol->slice(0, x_dim);
        const BitVector y = sol->slice(x_dim, y_dim);
        bool good = b.horizontal(0, n - 2).apply(x) == c;
        if (y_dim > 0) {
            good = good && b.vertical(0, n - 2).apply(x) == b.horizontal(1, n - 3).apply(y);
            good = good && b.vertical(1, n - 3).apply(y).none();
        } else {
            good = good && b.vertical(0, n - 2).apply(x).none();
        }
        if (good) ++rep.solved;
    }
    return rep;
}

FormulaConstants constants(int n) {
    if (n < 1) throw std::invalid_argument("constants: n must be positive");
    FormulaConstants k;
    k.n = n;
    for (int p = 0; p <= n - 1; ++p) k.f.push_back(f_count(n, p));
    const auto sign = [](int e) { return e % 2 == 0 ? 1 : -1; };
    k.A_n = sign(n);
    for (int i = 0; i <= n - 1; ++i) k.A_n += sign(n - 1 - i) * k.f[static_cast<std::size_t>(i)];
    for (int p = 0; p <= n - 2; ++p) {
        BigInt a = sign(n - p - 1);
        for (int i = 0; i <= n - p - 2; ++i) a += sign(n - p - i) * link_count(n, p, i);
        k.A_pn.push_back(a);
    }
    if (n == 1) k.A_pn = {0};
    return k;
}

BigInt dimension_formula(int n) {
    if (n < 1) throw std::invalid_argument("dimension_formula: n must be positive");
    // The closed form needs the separate argument for n = 1, where it does
    // not reduce to an integer.
    if (n == 1) return 0;
    const FormulaConstants k = constants(n);
    const BigInt& top = k.f[static_cast<std::size_t>(n - 1)];
    BigInt total = k.A_pn[0] * k.f[0];
    for (int p = 1; p <= n - 2; ++p) {
        total += exact_divide(k.A_pn[static_cast<std::size_t>(p)] * k.f[static_cast<std::size_t>(p)], p + 2,
                              "dimension_formula");
    }
    total -= n * top;
    total += exact_divide(top, n + 1, "dimension_formula");
    total += n * k.A_n;
    if (total < 0) throw std::logic_error("dimension_formula: negative result");
    return total;
}

}  // namespace bordism
