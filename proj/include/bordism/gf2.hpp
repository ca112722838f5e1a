#pragma once

// Exact linear algebra over GF(2): small n-bit vectors for elements of Z_2^n
// and its dual, dynamic bit vectors for chain coordinates, dense bit matrices
// and the sparse boundary operators used by every chain complex here.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bordism {

using Mask = std::uint32_t;

/// Largest ambient dimension supported by the mask-based types.
inline constexpr int kMaxAmbientDim = 8;

/// Parity of the AND of two masks: the pairing rho(alpha) of a functional
/// rho in Hom(Z_2^n, Z_2) with a vector alpha in Z_2^n.
inline int pairing(Mask functional, Mask vector) {
    return __builtin_parity(functional & vector);
}

/// Rank over GF(2) of a family of masks.
std::size_t mask_rank(std::span<const Mask> vectors);

/// Element of Z_2^n (or of its dual), bit i being coordinate i.
class Gf2Vector {
public:
    Gf2Vector() = default;
    Gf2Vector(Mask bits, int dim);

    Mask bits() const { return bits_; }
    int dim() const { return dim_; }
    bool is_zero() const { return bits_ == 0; }
    bool coordinate(int i) const { return ((bits_ >> i) & 1U) != 0; }

    Gf2Vector operator+(const Gf2Vector& other) const;
    Gf2Vector& operator+=(const Gf2Vector& other);

    friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
    friend auto operator<=>(const Gf2Vector&, const Gf2Vector&) = default;

private:
    Mask bits_ = 0;
    int dim_ = 0;
};

class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitVector() = default;
    explicit BitVector(std::size_t size);

    static BitVector from_indices(std::size_t size, std::span<const std::uint32_t> indices);

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0; }
    void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }

    bool any() const;
    bool none() const { return !any(); }
    std::size_t count() const;
    /// First set bit at position >= from, or npos.
    std::size_t find_next(std::size_t from) const;
    std::size_t find_first() const { return find_next(0); }

    std::vector<std::uint32_t> indices() const;

    /// Copy of bits [begin, begin + length).
    BitVector slice(std::size_t begin, std::size_t length) const;
    /// Bits of this vector followed by the bits of tail.
    BitVector concat(const BitVector& tail) const;

    std::span<const Word> words() const { return words_; }
    std::span<Word> words() { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

using ChainVector = BitVector;

class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols);

    static Gf2Matrix identity(std::size_t k);
    static Gf2Matrix from_rows(std::size_t cols, std::vector<BitVector> rows);
    /// Each entry of set_columns lists the set columns of one row; repeated
    /// columns cancel.
    static Gf2Matrix from_sparse(std::size_t rows, std::size_t cols,
                                 const std::vector<std::vector<std::uint32_t>>& set_columns);

    std::size_t rows() const { return n_rows_; }
    std::size_t cols() const { return n_cols_; }
    const BitVector& row(std::size_t i) const { return data_[i]; }
    BitVector& row(std::size_t i) { return data_[i]; }
    const std::vector<BitVector>& row_data() const { return data_; }

    bool get(std::size_t i, std::size_t j) const { return data_[i].get(j); }
    void set(std::size_t i, std::size_t j) { data_[i].set(j); }
    void flip(std::size_t i, std::size_t j) { data_[i].flip(j); }

    /// M x for x with cols() coordinates.
    BitVector multiply(const BitVector& x) const;
    Gf2Matrix operator*(const Gf2Matrix& rhs) const;
    Gf2Matrix transposed() const;
    bool is_zero() const;

    friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

private:
    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<BitVector> data_;
};

/// Row echelon basis of a subspace of GF(2)^dim, grown one generator at a
/// time. Pivots are leading (lowest-index) set bits. With tracking enabled,
/// every stored row remembers which inserted generators it is the sum of, so
/// dependencies and coordinates with respect to the generators are available.
class EchelonBasis {
public:
    struct InsertResult {
        bool independent = false;
        /// Tracking only, for a dependent insert: generator ids summing to zero.
        BitVector relation;
    };

    explicit EchelonBasis(std::size_t dim);
    EchelonBasis(std::size_t dim, std::size_t max_generators);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t generators_inserted() const { return next_id_; }
    bool tracking() const { return tracking_; }

    InsertResult insert(const BitVector& v);
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector& v) const { return reduce(v).none(); }
    /// Tracking only: generator ids whose sum is v, if v is in the span.
    std::optional<BitVector> express(const BitVector& v) const;

private:
    void reduce_in_place(BitVector& v, BitVector* combination) const;

    std::size_t dim_;
    bool tracking_ = false;
    std::size_t max_generators_ = 0;
    std::size_t next_id_ = 0;
    std::vector<BitVector> rows_;
    std::vector<BitVector> combinations_;
    std::vector<std::uint32_t> pivot_row_;  // per column, index into rows_ or kNoPivot
};

/// Sparse boundary operator between two graded pieces, stored source-major:
/// row s lists the target basis indices of the image of source element s.
/// Rows are appended in source order (compressed row storage).
class BoundaryMatrix {
public:
    BoundaryMatrix() : row_start_{0} {}
    BoundaryMatrix(std::size_t n_source, std::size_t n_target);

    /// Builds a matrix with zero rows for every source; used for maps into or
    /// out of a zero group.
    static BoundaryMatrix zero(std::size_t n_source, std::size_t n_target);

    /// Appends the image of the next source element; duplicates cancel mod 2.
    void append_row(std::vector<std::uint32_t> targets);

    std::size_t n_source() const { return n_source_; }
    std::size_t n_target() const { return n_target_; }
    std::size_t rows_appended() const { return row_start_.size() - 1; }
    bool complete() const { return rows_appended() == n_source_; }
    std::size_t nnz() const { return cols_.size(); }

    std::span<const std::uint32_t> image(std::size_t source) const {
        return {cols_.data() + row_start_[source], cols_.data() + row_start_[source + 1]};
    }
    BitVector image_vector(std::size_t source) const;

    /// Image of a chain given in source coordinates.
    BitVector apply(const BitVector& x) const;
    /// Composite next o this.
    BoundaryMatrix then(const BoundaryMatrix& next) const;
    bool is_zero() const { return cols_.empty(); }
    BoundaryMatrix transposed() const;

    /// Dense matrix of the linear map (n_target x n_source).
    Gf2Matrix to_operator() const;
    /// Dense source-major matrix (n_source x n_target).
    Gf2Matrix to_source_major() const;

    friend bool operator==(const BoundaryMatrix&, const BoundaryMatrix&) = default;

private:
    std::size_t n_source_ = 0;
    std::size_t n_target_ = 0;
    std::vector<std::uint64_t> row_start_;
    std::vector<std::uint32_t> cols_;
};

std::size_t rank(const Gf2Matrix& m);
/// Basis of {x : M x = 0}; size cols - rank(M).
std::vector<BitVector> kernel_basis(const Gf2Matrix& m);
bool in_image(const Gf2Matrix& m, const BitVector& b);
/// Some x with M x = b (free variables zero, pivots in column order).
std::optional<BitVector> solve(const Gf2Matrix& m, const BitVector& b);

/// Rank of the linear map.
std::size_t rank(const BoundaryMatrix& m);
/// Basis of the kernel of the map, in source coordinates.
std::vector<BitVector> kernel_basis(const BoundaryMatrix& m);
/// Basis of the image of the map, in target coordinates.
std::vector<BitVector> image_basis(const BoundaryMatrix& m);

/// Solves (map) x = b repeatedly for one fixed map.
class ImageSolver {
public:
    explicit ImageSolver(const BoundaryMatrix& m);
    std::size_t rank() const { return basis_.rank(); }
    bool in_image(const BitVector& b) const { return basis_.contains(b); }
    /// Preimage in source coordinates, if b is in the image.
    std::optional<BitVector> solve(const BitVector& b) const;

private:
    std::size_t n_source_;
    EchelonBasis basis_;
};

/// Upper bound on worker threads for rank computations; set from the
/// BORDISM_THREADS environment variable (default 1).
std::size_t thread_limit();
void set_thread_limit(std::size_t threads);

}  // namespace bordism
