#include "bordism/sparse_rank.hpp"

#include <algorithm>
#include <vector>

#include "bordism/gf2.hpp"

namespace bordism {

namespace {

// Symmetric difference of two sorted index lists.
void xor_into(std::vector<std::uint32_t>& acc, const std::vector<std::uint32_t>& other,
              std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(acc.begin(), acc.end(), other.begin(), other.end(), std::back_inserter(scratch));
    acc.swap(scratch);
}

}  // namespace

SparseRankStats sparse_rank_with_stats(const BoundaryMatrix& m,
                                       const std::function<void(std::size_t, std::size_t)>& progress) {
    SparseRankStats stats;
    std::vector<std::vector<std::uint32_t>> pivot_rows(m.n_target());
    std::vector<std::uint32_t> row;
    std::vector<std::uint32_t> scratch;
    std::size_t stored = 0;
    std::size_t done = 0;
    for (std::size_t s = 0; s < m.n_source(); ++s) {
        if (stats.rank == m.n_target()) break;
        auto img = m.image(s);
        row.assign(img.begin(), img.end());
        while (!row.empty()) {
            auto& pivot = pivot_rows[row.back()];
            if (pivot.empty()) break;
            xor_into(row, pivot, scratch);
        }
        if (!row.empty()) {
            stored += row.size();
            stats.peak_entries = std::max(stats.peak_entries, stored);
            pivot_rows[row.back()] = row;
            ++stats.rank;
        }
        if (progress && (++done % 65536 == 0)) progress(done, stats.rank);
    }
    return stats;
}

std::size_t sparse_rank(const BoundaryMatrix& m) { return sparse_rank_with_stats(m).rank; }

}  // namespace bordism
