#pragma once

// Translation classes of simplices and the chain complex D built on class
// sums, with D_{-1} = Z_2^n.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "bordism/gf2.hpp"
#include "bordism/universal_complex.hpp"

namespace bordism {

/// sigma ~ sigma' iff equal, or they meet in exactly one vertex a and
/// (sigma \ a) + a = sigma' \ a.
bool equivalent(const Simplex& a, const Simplex& b);

struct SimplexClass {
    Simplex representative;        // least member
    std::vector<Simplex> members;  // canonical order
    int dim() const { return representative.dim(); }
};

/// Closure of {sigma} under single-vertex moves. Throws std::logic_error if
/// the closure does not have the expected size (1 for p = 0, p+2 otherwise).
SimplexClass class_of(const Simplex& sigma);

class ClassComplex {
public:
    explicit ClassComplex(std::shared_ptr<const UniversalComplex> x);

    int n() const { return x_->n(); }
    const UniversalComplex& universal() const { return *x_; }
    std::shared_ptr<const UniversalComplex> universal_ptr() const { return x_; }

    /// Number of basis elements of D_p; D_{-1} has n.
    std::size_t count(int p) const;
    const std::vector<SimplexClass>& classes(int p) const;
    const SimplexClass& class_at(int p, std::size_t index) const { return classes(p)[index]; }
    /// Index of the class containing the simplex with the given X_p index.
    std::size_t class_of_simplex(int p, std::size_t simplex_index) const;
    std::size_t class_index(const Simplex& sigma) const;

    /// d^D_p of a class, 1 <= p <= n-1, in D_{p-1} class coordinates.
    BitVector d_D(int p, std::size_t class_index) const;
    /// Same formula evaluated from an explicit member and choice of the
    /// translating vertex a1 in that member.
    BitVector d_D(const Simplex& member, Mask a1) const;
    /// d^D_0([a]) = a in Z_2^n.
    Gf2Vector d_D0(std::size_t class_index) const;

    /// D_p -> D_{p-1} for 0 <= p <= n-1.
    BoundaryMatrix boundary_matrix(int p) const;
    /// The class sum as a chain in C_p.
    BitVector expand(int p, std::size_t class_index) const;
    /// Degrees -1 .. n-1.
    GradedChainComplex chain_complex() const;

private:
    std::shared_ptr<const UniversalComplex> x_;
    std::vector<std::vector<SimplexClass>> classes_;         // index p, p >= 0
    std::vector<std::vector<std::uint32_t>> simplex_class_;  // index p
};

ClassComplex build_class_complex(int n);

/// For every class of D_p: d^C_p of the class sum equals the C_{p-1}
/// expansion of d^D_p. Requires p > 1.
bool d_restriction_check(const ClassComplex& d, int p);
bool d_restriction_check(int n, int p);

}  // namespace bordism
