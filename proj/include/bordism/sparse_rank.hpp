#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace bordism {

class BoundaryMatrix;

struct SparseRankStats {
    std::size_t rank = 0;
    std::size_t peak_entries = 0;  // largest number of stored pivot entries
};

/// Rank of a sparse boundary operator by sparse elimination: images are taken
/// in source order, reduced against stored pivot rows keyed by their highest
/// target index, and kept if a residue survives. Keying on the highest index
/// puts pivots in the vertical (simplicial) part of a total-complex boundary,
/// which keeps fill-in low; the lowest index fills in badly there.
///
/// Memory is the pivot storage, 4 bytes per stored entry (about 2.7e6
/// entries for the n = 5 top boundary). `progress`, if set, is called every
/// 65536 rows with (rows done, current rank).
SparseRankStats sparse_rank_with_stats(const BoundaryMatrix& m,
                                       const std::function<void(std::size_t, std::size_t)>& progress = {});

std::size_t sparse_rank(const BoundaryMatrix& m);

}  // namespace bordism
