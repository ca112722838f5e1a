#pragma once

// Faithful (n+1)-dimensional representations of Z_2^n as monomials in the
// nonzero functionals, the dual isomorphism onto the degree n-2 basis of the
// total complex, the per-functional pieces of its boundary, and the two
// membership criteria.
//
// Functionals are n-bit masks; rho(alpha) = pairing(rho, alpha).

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bordism/double_complex.hpp"
#include "bordism/gf2.hpp"

namespace bordism {

/// n+1 nonzero functionals spanning Hom(Z_2^n, Z_2), sorted.
class FaithfulRep {
public:
    /// Throws std::invalid_argument unless the factors form a faithful
    /// representation of Z_2^n.
    FaithfulRep(int n, std::vector<Mask> factors);

    int n() const { return n_; }
    const std::vector<Mask>& factors() const { return factors_; }
    /// Binary tokens, most significant coordinate first.
    std::string to_string() const;

    friend bool operator==(const FaithfulRep&, const FaithfulRep&) = default;
    friend auto operator<=>(const FaithfulRep&, const FaithfulRep&) = default;

private:
    int n_;
    std::vector<Mask> factors_;
};

bool is_faithful(int n, const std::vector<Mask>& factors);

/// Finite set of monomials; adding a monomial twice removes it.
class RepPolynomial {
public:
    explicit RepPolynomial(int n) : n_(n) {}

    int n() const { return n_; }
    void toggle(const FaithfulRep& tau);
    RepPolynomial& operator+=(const RepPolynomial& other);
    bool contains(const FaithfulRep& tau) const { return monomials_.contains(tau); }
    std::size_t size() const { return monomials_.size(); }
    bool empty() const { return monomials_.empty(); }
    auto begin() const { return monomials_.begin(); }
    auto end() const { return monomials_.end(); }

    friend bool operator==(const RepPolynomial&, const RepPolynomial&) = default;

private:
    int n_;
    std::set<FaithfulRep> monomials_;
};

/// All faithful representations in canonical order.
std::vector<FaithfulRep> enumerate_faithful_reps(int n);

/// Multiplicity of rho among the factors of tau.
int chi(Mask rho, const FaithfulRep& tau);

/// Canonical form of tau restricted to ker rho: one copy of rho removed and
/// every other factor x replaced by min(x, x + rho), sorted. Throws
/// std::domain_error if rho is not a factor.
std::vector<Mask> restriction_invariant(const FaithfulRep& tau, Mask rho);

/// tau ~_rho tau'. Only defined when rho is a factor of both; otherwise
/// throws std::domain_error.
bool equiv_rho(const FaithfulRep& tau, const FaithfulRep& other, Mask rho);

/// tau written as rho_0 rho_1 .. rho_n with {rho_1..rho_n} a basis, and the
/// dual basis alpha_1..alpha_n. support[i] says whether rho_i occurs in
/// rho_0 = sum of the supported rho_i.
struct Presentation {
    Mask leftover = 0;
    std::vector<Mask> basis;
    std::vector<Mask> dual;
    std::vector<bool> support;
};

/// Uses the factor in slot `leftover_slot` (index into tau.factors()) as
/// rho_0. Throws std::invalid_argument if the other factors are dependent.
Presentation present(const FaithfulRep& tau, std::size_t leftover_slot);
/// First slot whose removal leaves a basis.
std::size_t default_leftover_slot(const FaithfulRep& tau);

/// Dual basis a_j of a basis r_i with r_i(a_j) = delta_ij.
std::vector<Mask> dual_basis(int n, const std::vector<Mask>& basis);

/// [a_i : i supported] (x) {a_i : i unsupported}; the class is given by its
/// least member.
BasisElementB dual_D(const FaithfulRep& tau);
BasisElementB dual_D(const FaithfulRep& tau, std::size_t leftover_slot);

/// Inverse of dual_D on faithful basis elements of degree n-2.
FaithfulRep dual_inverse(int n, const BasisElementB& b);
/// Same, computed from an explicit member of the class.
FaithfulRep dual_inverse(int n, const Simplex& member, const Simplex& tail);

/// Term of the boundary of D(tau) attached to the functional rho, as a chain
/// of degree n-3. Throws std::domain_error if rho is not a factor.
BitVector partial_rho(const TotalComplex& t, const FaithfulRep& tau, Mask rho);
BitVector partial_rho(const TotalComplex& t, const FaithfulRep& tau, Mask rho, std::size_t leftover_slot);

/// Sum of D(tau) over the monomials, as a chain of degree n-2.
BitVector dual_chain(const TotalComplex& t, const RepPolynomial& f);

bool in_image_dual(const RepPolynomial& f, const TotalComplex& t);
bool in_image_lls(const RepPolynomial& f);

/// Polynomial text format: one monomial per line, n+1 binary tokens of
/// exactly n digits (most significant coordinate first); '#' lines and blank
/// lines ignored; repeated monomials cancel.
struct PolyParseError : std::runtime_error {
    PolyParseError(std::size_t line, const std::string& what);
    std::size_t line;
};
struct NonFaithfulMonomial : std::runtime_error {
    NonFaithfulMonomial(std::size_t line, const std::string& monomial);
    std::size_t line;
    std::string monomial;
};

RepPolynomial parse_polynomial(std::istream& in, int n);
RepPolynomial parse_polynomial(const std::string& text, int n);
void write_polynomial(std::ostream& out, const RepPolynomial& f);
std::string format_functional(Mask m, int n);

}  // namespace bordism
