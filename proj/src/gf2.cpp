#include "bordism/gf2.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "bordism/sparse_rank.hpp"

namespace bordism {

namespace {

constexpr std::uint32_t kNoPivot = static_cast<std::uint32_t>(-1);

std::size_t words_for(std::size_t bits) { return (bits + BitVector::kWordBits - 1) / BitVector::kWordBits; }

std::size_t initial_thread_limit() {
    if (const char* env = std::getenv("BORDISM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

std::atomic<std::size_t>& thread_limit_storage() {
    static std::atomic<std::size_t> limit{initial_thread_limit()};
    return limit;
}

// Above this many bits of dense echelon storage the sparse eliminator is used.
constexpr std::size_t kDenseBudgetBits = std::size_t{1} << 33;  // 1 GiB

}  // namespace

std::size_t thread_limit() { return thread_limit_storage().load(); }

void set_thread_limit(std::size_t threads) { thread_limit_storage().store(std::max<std::size_t>(1, threads)); }

std::size_t mask_rank(std::span<const Mask> vectors) {
    // Echelon by highest set bit; at most 32 pivots.
    Mask pivots[32] = {};
    std::size_t r = 0;
    for (Mask v : vectors) {
        while (v != 0) {
            const int top = 31 - std::countl_zero(v);
            if (pivots[top] == 0) {
                pivots[top] = v;
                ++r;
                break;
            }
            v ^= pivots[top];
        }
    }
    return r;
}

// ---------------------------------------------------------------- Gf2Vector

Gf2Vector::Gf2Vector(Mask bits, int dim) : bits_(bits), dim_(dim) {
    if (dim < 0 || dim > kMaxAmbientDim) throw std::invalid_argument("Gf2Vector: dimension out of range");
    if (dim < 32 && (bits >> dim) != 0) throw std::invalid_argument("Gf2Vector: bits beyond dimension");
}

Gf2Vector Gf2Vector::operator+(const Gf2Vector& other) const {
    Gf2Vector out = *this;
    out += other;
    return out;
}

Gf2Vector& Gf2Vector::operator+=(const Gf2Vector& other) {
    if (dim_ != other.dim_) throw std::invalid_argument("Gf2Vector: dimension mismatch");
    bits_ ^= other.bits_;
    return *this;
}

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVector BitVector::from_indices(std::size_t size, std::span<const std::uint32_t> indices) {
    BitVector v(size);
    for (auto i : indices) {
        if (i >= size) throw std::out_of_range("BitVector::from_indices: index out of range");
        v.flip(i);
    }
    return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (size_ != other.size_) throw std::invalid_argument("BitVector: size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool BitVector::any() const {
    return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::size_t BitVector::count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t BitVector::find_next(std::size_t from) const {
    if (from >= size_) return npos;
    std::size_t w = from / kWordBits;
    Word cur = words_[w] & (~Word{0} << (from % kWordBits));
    while (true) {
        if (cur != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
        if (++w == words_.size()) return npos;
        cur = words_[w];
    }
}

std::vector<std::uint32_t> BitVector::indices() const {
    std::vector<std::uint32_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        Word cur = words_[w];
        while (cur != 0) {
            out.push_back(static_cast<std::uint32_t>(w * kWordBits + std::countr_zero(cur)));
            cur &= cur - 1;
        }
    }
    return out;
}

BitVector BitVector::slice(std::size_t begin, std::size_t length) const {
    if (begin + length > size_) throw std::out_of_range("BitVector::slice");
    BitVector out(length);
    for (std::size_t i = find_next(begin); i != npos && i < begin + length; i = find_next(i + 1)) out.set(i - begin);
    return out;
}

BitVector BitVector::concat(const BitVector& tail) const {
    BitVector out(size_ + tail.size_);
    std::copy(words_.begin(), words_.end(), out.words_.begin());
    for (std::size_t i = tail.find_first(); i != npos; i = tail.find_next(i + 1)) out.set(size_ + i);
    return out;
}

// ---------------------------------------------------------------- Gf2Matrix

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols) : n_rows_(rows), n_cols_(cols), data_(rows, BitVector(cols)) {}

Gf2Matrix Gf2Matrix::identity(std::size_t k) {
    Gf2Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m.set(i, i);
    return m;
}

Gf2Matrix Gf2Matrix::from_rows(std::size_t cols, std::vector<BitVector> rows) {
    for (const auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("Gf2Matrix::from_rows: row width mismatch");
    }
    Gf2Matrix m;
    m.n_rows_ = rows.size();
    m.n_cols_ = cols;
    m.data_ = std::move(rows);
    return m;
}

Gf2Matrix Gf2Matrix::from_sparse(std::size_t rows, std::size_t cols,
                                 const std::vector<std::vector<std::uint32_t>>& set_columns) {
    if (set_columns.size() != rows) throw std::invalid_argument("Gf2Matrix::from_sparse: row count mismatch");
    Gf2Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) m.data_[i] = BitVector::from_indices(cols, set_columns[i]);
    return m;
}

BitVector Gf2Matrix::multiply(const BitVector& x) const {
    if (x.size() != n_cols_) throw std::invalid_argument("Gf2Matrix::multiply: size mismatch");
    BitVector out(n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        const auto a = data_[i].words();
        const auto b = x.words();
        BitVector::Word acc = 0;
        for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
        if (std::popcount(acc) & 1) out.set(i);
    }
    return out;
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& rhs) const {
    if (n_cols_ != rhs.n_rows_) throw std::invalid_argument("Gf2Matrix::operator*: shape mismatch");
    Gf2Matrix out(n_rows_, rhs.n_cols_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (std::size_t k = data_[i].find_first(); k != BitVector::npos; k = data_[i].find_next(k + 1)) {
            out.data_[i] ^= rhs.data_[k];
        }
    }
    return out;
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix out(n_cols_, n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (std::size_t j = data_[i].find_first(); j != BitVector::npos; j = data_[i].find_next(j + 1)) out.set(j, i);
    }
    return out;
}

bool Gf2Matrix::is_zero() const {
    return std::none_of(data_.begin(), data_.end(), [](const BitVector& r) { return r.any(); });
}

// ---------------------------------------------------------------- EchelonBasis

EchelonBasis::EchelonBasis(std::size_t dim) : dim_(dim), pivot_row_(dim, kNoPivot) {}

EchelonBasis::EchelonBasis(std::size_t dim, std::size_t max_generators)
    : dim_(dim), tracking_(true), max_generators_(max_generators), pivot_row_(dim, kNoPivot) {}

void EchelonBasis::reduce_in_place(BitVector& v, BitVector* combination) const {
    if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: vector size mismatch");
    // Each pivot row's lowest bit is its pivot, so XOR only touches higher
    // positions and the scan moves monotonically.
    for (std::size_t c = v.find_first(); c != BitVector::npos; c = v.find_next(c)) {
        const std::uint32_t r = pivot_row_[c];
        if (r == kNoPivot) {
            ++c;
            continue;
        }
        v ^= rows_[r];
        if (combination) *combination ^= combinations_[r];
    }
}

EchelonBasis::InsertResult EchelonBasis::insert(const BitVector& v) {
    InsertResult result;
    BitVector residue = v;
    BitVector combination;
    if (tracking_) {
        if (next_id_ >= max_generators_) throw std::length_error("EchelonBasis: generator capacity exceeded");
        combination = BitVector(max_generators_);
        combination.set(next_id_);
    }
    ++next_id_;
    reduce_in_place(residue, tracking_ ? &combination : nullptr);
    const std::size_t lead = residue.find_first();
    if (lead == BitVector::npos) {
        if (tracking_) result.relation = std::move(combination);
        return result;
    }
    pivot_row_[lead] = static_cast<std::uint32_t>(rows_.size());
    rows_.push_back(std::move(residue));
    if (tracking_) combinations_.push_back(std::move(combination));
    result.independent = true;
    return result;
}

BitVector EchelonBasis::reduce(BitVector v) const {
    reduce_in_place(v, nullptr);
    return v;
}

std::optional<BitVector> EchelonBasis::express(const BitVector& v) const {
    if (!tracking_) throw std::logic_error("EchelonBasis::express requires tracking");
    BitVector residue = v;
    BitVector combination(max_generators_);
    reduce_in_place(residue, &combination);
    if (residue.any()) return std::nullopt;
    return combination;
}

// ---------------------------------------------------------------- BoundaryMatrix

BoundaryMatrix::BoundaryMatrix(std::size_t n_source, std::size_t n_target)
    : n_source_(n_source), n_target_(n_target), row_start_{0} {
    row_start_.reserve(n_source + 1);
}

BoundaryMatrix BoundaryMatrix::zero(std::size_t n_source, std::size_t n_target) {
    BoundaryMatrix m(n_source, n_target);
    m.row_start_.assign(n_source + 1, 0);
    return m;
}

void BoundaryMatrix::append_row(std::vector<std::uint32_t> targets) {
    if (complete()) throw std::logic_error("BoundaryMatrix::append_row: all rows present");
    std::sort(targets.begin(), targets.end());
    // Cancel pairs of equal entries.
    std::size_t out = 0;
    for (std::size_t i = 0; i < targets.size();) {
        std::size_t j = i;
        while (j < targets.size() && targets[j] == targets[i]) ++j;
        if ((j - i) % 2 == 1) targets[out++] = targets[i];
        i = j;
    }
    targets.resize(out);
    if (!targets.empty() && targets.back() >= n_target_) throw std::out_of_range("BoundaryMatrix: target index out of range");
    cols_.insert(cols_.end(), targets.begin(), targets.end());
    row_start_.push_back(cols_.size());
}

BitVector BoundaryMatrix::image_vector(std::size_t source) const {
    BitVector v(n_target_);
    for (auto t : image(source)) v.set(t);
    return v;
}

BitVector BoundaryMatrix::apply(const BitVector& x) const {
    if (x.size() != n_source_) throw std::invalid_argument("BoundaryMatrix::apply: size mismatch");
    BitVector out(n_target_);
    for (std::size_t s = x.find_first(); s != BitVector::npos; s = x.find_next(s + 1)) {
        for (auto t : image(s)) out.flip(t);
    }
    return out;
}

BoundaryMatrix BoundaryMatrix::then(const BoundaryMatrix& next) const {
    if (n_target_ != next.n_source_) throw std::invalid_argument("BoundaryMatrix::then: shape mismatch");
    BoundaryMatrix out(n_source_, next.n_target_);
    std::vector<std::uint32_t> acc;
    for (std::size_t s = 0; s < n_source_; ++s) {
        acc.clear();
        for (auto mid : image(s)) {
            auto img = next.image(mid);
            acc.insert(acc.end(), img.begin(), img.end());
        }
        out.append_row(acc);
    }
    return out;
}

BoundaryMatrix BoundaryMatrix::transposed() const {
    std::vector<std::vector<std::uint32_t>> rows(n_target_);
    for (std::size_t s = 0; s < n_source_; ++s) {
        for (auto t : image(s)) rows[t].push_back(static_cast<std::uint32_t>(s));
    }
    BoundaryMatrix out(n_target_, n_source_);
    for (auto& r : rows) out.append_row(std::move(r));
    return out;
}

Gf2Matrix BoundaryMatrix::to_operator() const {
    Gf2Matrix m(n_target_, n_source_);
    for (std::size_t s = 0; s < n_source_; ++s) {
        for (auto t : image(s)) m.set(t, s);
    }
    return m;
}

Gf2Matrix BoundaryMatrix::to_source_major() const {
    Gf2Matrix m(n_source_, n_target_);
    for (std::size_t s = 0; s < n_source_; ++s) {
        for (auto t : image(s)) m.set(s, t);
    }
    return m;
}

// ---------------------------------------------------------------- rank / kernel

namespace {

// Rank of a list of row vectors. Rows are split into contiguous blocks, each
// block is echelonized on its own thread, and the block bases are merged in
// block order. The rank does not depend on the split.
std::size_t rank_of_rows(std::size_t dim, std::size_t n_rows, const auto& row_at) {
    const std::size_t threads = std::min<std::size_t>(thread_limit(), std::max<std::size_t>(1, n_rows / 256));
    if (threads <= 1) {
        EchelonBasis basis(dim);
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (basis.rank() == dim) break;
            basis.insert(row_at(i));
        }
        return basis.rank();
    }
    std::vector<EchelonBasis> partial(threads, EchelonBasis(dim));
    std::vector<std::vector<BitVector>> kept(threads);
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                const std::size_t begin = n_rows * t / threads;
                const std::size_t end = n_rows * (t + 1) / threads;
                for (std::size_t i = begin; i < end; ++i) {
                    BitVector row = row_at(i);
                    if (partial[t].insert(row).independent) kept[t].push_back(std::move(row));
                }
            });
        }
    }
    EchelonBasis merged(dim);
    for (auto& block : kept) {
        for (auto& row : block) merged.insert(row);
    }
    return merged.rank();
}

bool dense_fits(std::size_t rank_bound, std::size_t width) {
    return rank_bound == 0 || width <= kDenseBudgetBits / rank_bound;
}

}  // namespace

std::size_t rank(const Gf2Matrix& m) {
    return rank_of_rows(m.cols(), m.rows(), [&](std::size_t i) -> const BitVector& { return m.row(i); });
}

std::vector<BitVector> kernel_basis(const Gf2Matrix& m) {
    // Columns of M are the generators; each dependency among them is a
    // kernel vector, and dependencies found this way are independent.
    const Gf2Matrix columns = m.transposed();
    EchelonBasis basis(m.rows(), m.cols());
    std::vector<BitVector> kernel;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto res = basis.insert(columns.row(j));
        if (!res.independent) kernel.push_back(std::move(res.relation));
    }
    return kernel;
}

std::optional<BitVector> solve(const Gf2Matrix& m, const BitVector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side size mismatch");
    const Gf2Matrix columns = m.transposed();
    EchelonBasis basis(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) basis.insert(columns.row(j));
    return basis.express(b);
}

bool in_image(const Gf2Matrix& m, const BitVector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("in_image: right-hand side size mismatch");
    if (b.none()) return true;
    const Gf2Matrix columns = m.transposed();
    EchelonBasis basis(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) basis.insert(columns.row(j));
    return basis.contains(b);
}

std::size_t rank(const BoundaryMatrix& m) {
    const std::size_t bound = std::min(m.n_source(), m.n_target());
    if (!dense_fits(bound, m.n_target())) return sparse_rank(m);
    return rank_of_rows(m.n_target(), m.n_source(), [&](std::size_t s) { return m.image_vector(s); });
}

std::vector<BitVector> kernel_basis(const BoundaryMatrix& m) {
    EchelonBasis basis(m.n_target(), m.n_source());
    std::vector<BitVector> kernel;
    for (std::size_t s = 0; s < m.n_source(); ++s) {
        auto res = basis.insert(m.image_vector(s));
        if (!res.independent) kernel.push_back(std::move(res.relation));
    }
    return kernel;
}

std::vector<BitVector> image_basis(const BoundaryMatrix& m) {
    EchelonBasis basis(m.n_target());
    std::vector<BitVector> out;
    for (std::size_t s = 0; s < m.n_source() && basis.rank() < m.n_target(); ++s) {
        BitVector v = m.image_vector(s);
        if (basis.insert(v).independent) out.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------- ImageSolver

ImageSolver::ImageSolver(const BoundaryMatrix& m) : n_source_(m.n_source()), basis_(m.n_target(), m.n_source()) {
    // Generator ids are source indices.
    for (std::size_t s = 0; s < m.n_source() && basis_.rank() < m.n_target(); ++s) basis_.insert(m.image_vector(s));
}

std::optional<BitVector> ImageSolver::solve(const BitVector& b) const {
    auto combination = basis_.express(b);
    if (!combination) return std::nullopt;
    return combination;
}

}  // namespace bordism
