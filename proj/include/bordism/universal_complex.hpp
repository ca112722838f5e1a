#pragma once

// The universal complex X(Z_2^n): simplices are the linearly independent
// subsets of Z_2^n \ {0}. Chain groups are augmented, C_{-1} = F_2 spanned by
// the empty simplex.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bordism/bigint.hpp"
#include "bordism/gf2.hpp"

namespace bordism {

/// Sorted list of distinct nonzero masks. Independence is a precondition
/// checked by is_valid(), not enforced on construction, so intermediate
/// vertex sets can be built freely.
class Simplex {
public:
    Simplex() = default;
    /// Sorts the vertices.
    explicit Simplex(std::vector<Mask> vertices);

    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    const std::vector<Mask>& vertices() const { return vertices_; }
    Mask operator[](std::size_t i) const { return vertices_[i]; }

    bool contains(Mask v) const;
    Simplex without(Mask v) const;
    Simplex with(Mask v) const;
    /// Every vertex x replaced by x + a.
    Simplex translated(Mask a) const;

    /// Independent, nonzero, at most n vertices, all within the low n bits.
    bool is_valid(int n) const;

    /// 8 bits per vertex, first vertex in the high byte; within one dimension
    /// key order is the canonical (lexicographic) order.
    std::uint64_t key() const;

    std::string to_string(int n) const;

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex&, const Simplex&) = default;

private:
    std::vector<Mask> vertices_;
};

bool is_independent(std::span<const Mask> vectors);

/// Every p-simplex of X(Z_2^n) in canonical order; p = -1 gives the empty
/// simplex. Out-of-range p gives an empty list.
std::vector<Simplex> enumerate_simplices(int n, int p);

/// Number of p-simplices, prod_{k=0}^{p} (2^n - 2^k) / (p+1)!.
BigInt f_count(int n, int p);

/// Number of q-simplices in the link of any p-simplex,
/// prod_{j=1}^{q+1} (2^n - 2^{p+j}) / (q+1)!.
BigInt link_count(int n, int p, int q);

/// All simplices tau with tau and sigma disjoint and tau u sigma independent,
/// including the empty simplex, sorted by dimension then canonically.
std::vector<Simplex> link(int n, const Simplex& sigma);
/// q-simplices of the link only.
std::vector<Simplex> link_simplices(int n, const Simplex& sigma, int q);

/// Augmented chain complex with basis indices per degree. boundary(d) maps
/// degree d to degree d-1; the lowest degree maps to the zero group.
class GradedChainComplex {
public:
    GradedChainComplex() = default;
    GradedChainComplex(int min_degree, std::vector<BoundaryMatrix> boundaries);

    int min_degree() const { return min_degree_; }
    int max_degree() const { return min_degree_ + static_cast<int>(boundaries_.size()) - 1; }
    bool in_range(int d) const { return d >= min_degree_ && d <= max_degree(); }

    std::size_t dim(int d) const { return in_range(d) ? boundary(d).n_source() : 0; }
    const BoundaryMatrix& boundary(int d) const { return boundaries_.at(static_cast<std::size_t>(d - min_degree_)); }
    /// Rank of boundary(d); 0 outside the range. Cached, safe to call
    /// concurrently.
    std::size_t boundary_rank(int d) const;
    /// dim ker boundary(d) - rank boundary(d+1).
    std::size_t homology_dim(int d) const;
    /// boundary(d-1) o boundary(d) = 0 everywhere.
    bool is_chain_complex() const;

private:
    int min_degree_ = 0;
    std::vector<BoundaryMatrix> boundaries_;
    mutable std::vector<std::optional<std::size_t>> ranks_;
    std::shared_ptr<std::mutex> mutex_ = std::make_shared<std::mutex>();
};

/// dim of the reduced homology in degree q (the complex is augmented).
std::size_t reduced_betti(const GradedChainComplex& complex, int q);

/// X(Z_2^n) with per-degree indices, degrees -1 .. n-1.
class UniversalComplex {
public:
    explicit UniversalComplex(int n);

    int n() const { return n_; }
    const std::vector<Simplex>& simplices(int p) const;
    std::size_t count(int p) const { return simplices(p).size(); }
    const Simplex& simplex(int p, std::size_t index) const { return simplices(p)[index]; }

    std::optional<std::size_t> index_of(const Simplex& s) const;
    /// Throws std::out_of_range if s is not a simplex of this complex.
    std::size_t index(const Simplex& s) const;

    /// d^C_q from C_q to C_{q-1}; q = 0 is the augmentation.
    BoundaryMatrix boundary_matrix(int q) const;
    GradedChainComplex chain_complex() const;

private:
    int n_;
    std::vector<std::vector<Simplex>> by_degree_;  // index p+1
    std::vector<std::vector<std::uint64_t>> keys_;
};

BoundaryMatrix boundary_matrix(int n, int q);

/// Augmented chain complex of Lk(sigma), degrees -1 .. n - |sigma| - 1.
GradedChainComplex link_chain_complex(int n, const Simplex& sigma);

}  // namespace bordism
