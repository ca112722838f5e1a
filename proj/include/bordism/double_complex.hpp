#pragma once

// The double complex B_{p,q} restricted to faithful pairs, and its total
// complex. Grid: -1 <= p <= n-1, -1 <= q <= n-2.
//   p >= 0, q >= 0, p+q <= n-2 : [sigma^p] (x) tau^q with tau^q in Lk(sigma^p)
//   p = -1                     : e_i (x) tau^q, tau^q in C_q     (left column)
//   q = -1, p >= 0             : [sigma^p] (x) 1                 (bottom row)
// B_{-1,-1} = Z_2^n. Within a position, basis order is class index then
// simplex index; total degrees concatenate positions by increasing p.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bordism/class_complex.hpp"
#include "bordism/gf2.hpp"
#include "bordism/universal_complex.hpp"

namespace bordism {

enum class BasisKind { FaithfulPair, LeftColumn, BottomRow };

struct BasisElementB {
    BasisKind kind = BasisKind::FaithfulPair;
    int p = 0;
    int q = 0;
    Simplex class_rep;  // faithful pair, bottom row
    Mask vector = 0;    // left column: a standard basis vector e_i
    Simplex simplex;    // faithful pair, left column (empty when q = -1)

    std::string to_string(int n) const;
    friend bool operator==(const BasisElementB&, const BasisElementB&) = default;
};

/// Whether position (p, q) carries a nonzero group.
bool in_support(int n, int p, int q);

class DoubleComplex {
public:
    explicit DoubleComplex(std::shared_ptr<const ClassComplex> d);

    int n() const { return d_->n(); }
    const ClassComplex& classes() const { return *d_; }
    const UniversalComplex& universal() const { return d_->universal(); }

    std::size_t dim(int p, int q) const;
    BasisElementB element(int p, int q, std::size_t index) const;
    std::optional<std::size_t> index_of(const BasisElementB& b) const;
    /// Faithful pair ([class], simplex) by class index in D_p and simplex
    /// index in X_q.
    std::optional<std::size_t> pair_index(int p, int q, std::size_t class_index, std::size_t simplex_index) const;
    /// Left column e_coordinate (x) simplex.
    std::size_t left_index(int q, int coordinate, std::size_t simplex_index) const;

    /// d^h: B_{p,q} -> B_{p-1,q}; d^v: B_{p,q} -> B_{p,q-1}. Maps leaving the
    /// grid have an empty target.
    const BoundaryMatrix& horizontal(int p, int q) const;
    const BoundaryMatrix& vertical(int p, int q) const;

    /// d^v d^h = d^h d^v at every position.
    bool squares_commute() const;

private:
    struct Position {
        // Faithful pairs: class c owns simplex_ids[offsets[c] .. offsets[c+1]).
        std::vector<std::uint32_t> offsets;
        std::vector<std::uint32_t> simplex_ids;
        std::size_t dim = 0;
        BoundaryMatrix horizontal;
        BoundaryMatrix vertical;
    };
    Position& at(int p, int q) { return grid_[slot(p, q)]; }
    const Position& at(int p, int q) const { return grid_[slot(p, q)]; }
    std::size_t slot(int p, int q) const {
        return static_cast<std::size_t>(p + 1) * static_cast<std::size_t>(n() + 1) + static_cast<std::size_t>(q + 1);
    }
    void build_horizontal(int p, int q);
    void build_vertical(int p, int q);

    std::shared_ptr<const ClassComplex> d_;
    std::vector<Position> grid_;
};

DoubleComplex build_double_complex(int n);

/// Total complex, degrees -2 .. n-2, boundary d^h + d^v.
class TotalComplex {
public:
    explicit TotalComplex(std::shared_ptr<const DoubleComplex> b);

    int n() const { return b_->n(); }
    const DoubleComplex& bicomplex() const { return *b_; }
    int min_degree() const { return -2; }
    int max_degree() const { return n() - 2; }

    std::size_t dim(int l) const { return complex_.dim(l); }
    /// Positions of degree l in increasing p.
    std::vector<std::pair<int, int>> positions(int l) const;
    /// Start of B_{p,q} inside the degree p+q basis.
    std::size_t offset(int p, int q) const;
    std::pair<int, int> position_of(int l, std::size_t index) const;
    BasisElementB element(int l, std::size_t index) const;
    std::optional<std::size_t> index_of(const BasisElementB& b) const;

    const BoundaryMatrix& boundary(int l) const { return complex_.boundary(l); }
    const GradedChainComplex& chain_complex() const { return complex_; }
    std::size_t homology_dim(int l) const { return complex_.homology_dim(l); }

    /// Block of a degree-(p+q) chain lying in B_{p,q}, and the reverse.
    BitVector restrict_to(int p, int q, const BitVector& chain) const;
    BitVector embed(int p, int q, const BitVector& block) const;

private:
    std::shared_ptr<const DoubleComplex> b_;
    GradedChainComplex complex_;
};

TotalComplex total_complex(std::shared_ptr<const DoubleComplex> b);
TotalComplex build_total_complex(int n);

/// [a_1..a_{p+1}] (x) {a_{p+2}..a_n} over all frames of Z_2^n and all p,
/// deduplicated, ordered as the degree n-2 basis of the total complex.
/// Built from frames directly, independently of DoubleComplex.
std::vector<BasisElementB> faithful_basis_n_minus_2(int n);

}  // namespace bordism
