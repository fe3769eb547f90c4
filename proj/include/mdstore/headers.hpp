#ifndef MDSTORE_HEADERS_HPP
#define MDSTORE_HEADERS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mdstore/relation.hpp"

namespace mdstore {

// Width of one stored position value (the one-dimensional index), in
// bytes. Fixed at 8 across the engine.
inline constexpr uint32_t kIndexWidth = 8;

// Run-pair header: one (L_j, V_j) pair per maximal run of nonempty
// cells, where L_j is the logical position of the run's first nonempty
// cell and V_j the number of empty cells strictly before it. The
// physical position of the run start is L_j - V_j, strictly increasing.
struct SchcHeader {
    std::vector<std::pair<uint64_t, uint64_t>> pairs;  // (L_j, V_j)
    uint64_t nonempty = 0;     // N
    uint64_t total_cells = 0;

    uint64_t run_count() const { return pairs.size(); }
    uint64_t byte_size() const { return 2 * pairs.size() * kIndexWidth; }
};

// Full sequence of logical positions of all nonempty cells, strictly
// increasing.
struct LpcHeader {
    std::vector<uint64_t> logical;
    uint64_t total_cells = 0;

    uint64_t n() const { return logical.size(); }
    uint64_t byte_size() const { return logical.size() * kIndexWidth; }
};

// The logical-position sequence split into a sparse wide base sequence
// (every block_len-th element) and dense narrow per-block offsets:
//   base[k]   = L[k * block_len]
//   offset[j] = L[j] - base[j / block_len]
// so L[j] = base[j / block_len] + offset[j] reconstructs exactly.
struct BocHeader {
    std::vector<uint64_t> base;
    std::vector<uint32_t> offsets;  // each fits offset_width bytes
    uint32_t block_len = 64;        // l
    uint8_t offset_width = 4;       // theta, bytes
    uint64_t total_cells = 0;

    uint64_t n() const { return offsets.size(); }
    uint64_t base_byte_size() const { return base.size() * kIndexWidth; }
    uint64_t offsets_byte_size() const { return offsets.size() * static_cast<uint64_t>(offset_width); }
    uint64_t byte_size() const { return base_byte_size() + offsets_byte_size(); }
};

SchcHeader build_schc(const EncodedRelation& rel);

// Logical -> physical. nullopt when the cell at L is empty.
// Throws DomainError when L is outside [0, total_cells).
std::optional<uint64_t> schc_lookup(const SchcHeader& h, uint64_t logical);

// Physical -> logical; inverse of schc_lookup on nonempty cells.
uint64_t schc_logical(const SchcHeader& h, uint64_t physical);

LpcHeader build_lpc(const EncodedRelation& rel);
std::optional<uint64_t> lpc_lookup(const LpcHeader& h, uint64_t logical);
uint64_t lpc_logical(const LpcHeader& h, uint64_t physical);

// Splits a strictly increasing logical-position sequence. Throws
// CapacityError when some in-block span does not fit offset_width,
// reporting the offending block and the minimal feasible width.
BocHeader build_boc(std::span<const uint64_t> logical, uint32_t block_len, uint8_t offset_width,
                    uint64_t total_cells);
BocHeader build_boc(const LpcHeader& h, uint32_t block_len, uint8_t offset_width);

uint64_t boc_logical(const BocHeader& h, uint64_t physical);

// Two-stage search: binary search on the base sequence for the block,
// then binary search inside that block's offsets.
std::optional<uint64_t> boc_lookup(const BocHeader& h, uint64_t logical);

enum class RunScheme { Schc, Lpc };

// LPC wins only when its header is strictly smaller: N/2 < nu.
// Ties go to SCHC.
RunScheme choose_run_scheme(uint64_t n, uint64_t runs);

struct BocProfitability {
    bool sufficient_exact;   // iota/l + iota/N + theta < iota
    bool sufficient_approx;  // iota/l + theta < iota
    double ratio;            // (iota/l + theta) / iota
};

BocProfitability boc_profitability(uint32_t index_width, uint8_t offset_width, uint32_t block_len,
                                   uint64_t n);

struct HeaderSizes {
    uint64_t schc;         // 2 * nu * iota
    uint64_t lpc;          // N * iota
    uint64_t boc;          // base + offsets
    uint64_t boc_base;     // (floor((N-1)/l) + 1) * iota
    uint64_t boc_offsets;  // N * theta
};

// Pure arithmetic; no data needed.
HeaderSizes header_sizes(uint64_t n, uint64_t runs, uint32_t index_width, uint8_t offset_width,
                         uint32_t block_len);

}  // namespace mdstore

#endif
