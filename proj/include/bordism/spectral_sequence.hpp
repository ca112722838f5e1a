#pragma once

// Spectral sequence of the double complex through E^3, with explicit lift
// bases, and the closed-form counts behind the dimension formula.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "bordism/bigint.hpp"
#include "bordism/double_complex.hpp"
#include "bordism/gf2.hpp"

namespace bordism {

using GridPos = std::pair<int, int>;

/// Z / Im inside an ambient coordinate space, with lifts of a basis of the
/// quotient and coordinates of cycles relative to those lifts.
class Subquotient {
public:
    Subquotient() : basis_(0) {}
    /// `image` must lie in the span of `cycles`.
    Subquotient(std::size_t ambient_dim, const std::vector<BitVector>& cycles, const std::vector<BitVector>& image);

    std::size_t dim() const { return lifts_.size(); }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<BitVector>& lifts() const { return lifts_; }
    /// Coordinates of the class of v, or nullopt if v is not a cycle.
    std::optional<BitVector> coordinates(const BitVector& v) const;

private:
    std::size_t ambient_dim_ = 0;
    std::vector<BitVector> lifts_;
    std::vector<std::size_t> lift_ids_;
    EchelonBasis basis_;
};

struct Page {
    int r = 0;
    std::map<GridPos, std::size_t> dims;
    /// d_r from E^r_{p,q} to E^r_{p-r,q+r-1} in page coordinates; an empty
    /// target when that position is off the grid.
    std::map<GridPos, BoundaryMatrix> differentials;
    /// Lifts of a basis of E^r_{p,q} into B_{p,q}.
    std::map<GridPos, std::vector<BitVector>> lifts;
    /// Page 3 only: (r, p, q) with r >= 3 where neither E^3_{p,q} nor
    /// E^3_{p-r,q+r-1} vanishes, so d_r is not forced to be zero.
    std::vector<std::tuple<int, int, int>> undetermined;

    std::size_t dim(int p, int q) const;
};

class SpectralSequence {
public:
    explicit SpectralSequence(std::shared_ptr<const DoubleComplex> b);

    const DoubleComplex& bicomplex() const { return *b_; }
    std::shared_ptr<const DoubleComplex> bicomplex_ptr() const { return b_; }
    /// Pages are built incrementally on first request; r in 0..3.
    const Page& page(int r);

private:
    void build_e0();
    void build_e1();
    void build_e2();
    void build_e3();
    const ImageSolver& vertical_solver(int p, int q);
    std::vector<GridPos> grid() const;

    std::shared_ptr<const DoubleComplex> b_;
    std::vector<Page> pages_;
    std::map<GridPos, Subquotient> e1_;  // ambient B_{p,q}
    std::map<GridPos, Subquotient> e2_;  // ambient E^1_{p,q}
    std::map<GridPos, Subquotient> e3_;  // ambient E^2_{p,q}
    std::map<GridPos, ImageSolver> solvers_;
};

/// Page r of the spectral sequence of B.
Page compute_page(std::shared_ptr<const DoubleComplex> b, int r);

struct DegenerationReport {
    bool d2_surjective = false;
    bool higher_differentials_vanish = false;
    std::size_t e3_total = 0;  // sum of dim E^3_{p, n-2-p}
    std::size_t homology = 0;  // dim H_{n-2} of the total complex
    bool ok() const { return d2_surjective && higher_differentials_vanish && e3_total == homology; }
};

DegenerationReport degeneration_report(SpectralSequence& ss, const TotalComplex& t);
bool verify_degeneration(std::shared_ptr<const DoubleComplex> b);

struct LiftReport {
    std::size_t generators = 0;  // lifts of E^1_{-1,n-2} tried
    std::size_t solved = 0;      // with x, y found and checked
    bool ok() const { return generators == solved; }
};

/// For every lift c of E^1_{-1,n-2}, solves for x in B_{0,n-2} and y in
/// B_{1,n-3} with d^h x = c, d^v x = d^h y and d^v y = 0.
LiftReport check_left_column_lifts(SpectralSequence& ss);

struct FormulaConstants {
    int n = 0;
    std::vector<BigInt> f;     // f_0 .. f_{n-1}
    BigInt A_n;
    std::vector<BigInt> A_pn;  // p = 0 .. n-2
};

FormulaConstants constants(int n);
/// Closed-form dim of the degree n-2 homology; n = 1 gives 0.
BigInt dimension_formula(int n);

}  // namespace bordism
