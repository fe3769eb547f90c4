#include "mdstore/headers.hpp"

#include <algorithm>
#include <string>

namespace mdstore {

namespace {

void check_logical_range(uint64_t logical, uint64_t total) {
    if (logical >= total)
        throw DomainError("logical position " + std::to_string(logical) + " out of range (total cells " +
                          std::to_string(total) + ")");
}

void check_physical_range(uint64_t physical, uint64_t n) {
    if (physical >= n)
        throw DomainError("physical position " + std::to_string(physical) + " out of range (N " +
                          std::to_string(n) + ")");
}

uint8_t min_width_for(uint64_t value) {
    if (value <= 0xFF) return 1;
    if (value <= 0xFFFF) return 2;
    if (value <= 0xFFFFFFFF) return 4;
    return 8;
}

}  // namespace

SchcHeader build_schc(const EncodedRelation& rel) {
    if (rel.cells.empty()) throw DomainError("cannot build a run-pair header for an empty relation");
    SchcHeader h;
    h.nonempty = rel.n();
    h.total_cells = rel.total_cells();
    uint64_t physical = 0;
    for (size_t m = 0; m < rel.cells.size(); ++m) {
        uint64_t L = rel.cells[m].logical;
        if (m == 0 || L != rel.cells[m - 1].logical + 1)
            h.pairs.emplace_back(L, L - physical);  // V_j = empties before the run start
        ++physical;
    }
    return h;
}

std::optional<uint64_t> schc_lookup(const SchcHeader& h, uint64_t logical) {
    check_logical_range(logical, h.total_cells);
    // Greatest j with L_j <= logical.
    auto it = std::upper_bound(h.pairs.begin(), h.pairs.end(), logical,
                               [](uint64_t l, const auto& p) { return l < p.first; });
    if (it == h.pairs.begin()) return std::nullopt;  // before the first run
    --it;
    uint64_t physical = logical - it->second;
    uint64_t run_end = (it + 1 == h.pairs.end()) ? h.nonempty : (it + 1)->first - (it + 1)->second;
    if (physical >= run_end) return std::nullopt;  // in the gap after run j
    return physical;
}

uint64_t schc_logical(const SchcHeader& h, uint64_t physical) {
    check_physical_range(physical, h.nonempty);
    // Greatest j whose run starts at physical position L_j - V_j <= physical.
    auto it = std::upper_bound(h.pairs.begin(), h.pairs.end(), physical,
                               [](uint64_t p, const auto& pr) { return p < pr.first - pr.second; });
    --it;  // pairs[0] starts at physical 0, so it != begin() already
    return physical + it->second;
}

LpcHeader build_lpc(const EncodedRelation& rel) {
    if (rel.cells.empty()) throw DomainError("cannot build a position header for an empty relation");
    LpcHeader h;
    h.total_cells = rel.total_cells();
    h.logical.reserve(rel.cells.size());
    for (const auto& c : rel.cells) h.logical.push_back(c.logical);
    return h;
}

std::optional<uint64_t> lpc_lookup(const LpcHeader& h, uint64_t logical) {
    check_logical_range(logical, h.total_cells);
    auto it = std::lower_bound(h.logical.begin(), h.logical.end(), logical);
    if (it == h.logical.end() || *it != logical) return std::nullopt;
    return static_cast<uint64_t>(it - h.logical.begin());
}

uint64_t lpc_logical(const LpcHeader& h, uint64_t physical) {
    check_physical_range(physical, h.n());
    return h.logical[physical];
}

BocHeader build_boc(std::span<const uint64_t> logical, uint32_t block_len, uint8_t offset_width,
                    uint64_t total_cells) {
    if (logical.empty()) throw DomainError("cannot build a base-offset header from an empty sequence");
    if (block_len < 1) throw DomainError("block length must be >= 1");
    if (offset_width != 1 && offset_width != 2 && offset_width != 4)
        throw DomainError("offset width must be 1, 2 or 4 bytes");

    const uint64_t limit = (uint64_t{1} << (8 * offset_width)) - 1;
    BocHeader h;
    h.block_len = block_len;
    h.offset_width = offset_width;
    h.total_cells = total_cells;
    h.base.reserve((logical.size() - 1) / block_len + 1);
    h.offsets.reserve(logical.size());
    for (size_t j = 0; j < logical.size(); ++j) {
        if (j % block_len == 0) h.base.push_back(logical[j]);
        uint64_t off = logical[j] - h.base.back();
        if (off > limit) {
            // Scan the rest so the report names the minimal feasible width.
            uint64_t max_span = off;
            for (size_t m = j; m < logical.size(); ++m) {
                uint64_t b = logical[m - m % block_len];
                max_span = std::max(max_span, logical[m] - b);
            }
            throw CapacityError("in-block span " + std::to_string(off) + " in block " +
                                std::to_string(j / block_len) + " exceeds " + std::to_string(offset_width) +
                                "-byte offsets; minimal feasible width is " +
                                std::to_string(min_width_for(max_span)) + " bytes");
        }
        h.offsets.push_back(static_cast<uint32_t>(off));
    }
    return h;
}

BocHeader build_boc(const LpcHeader& h, uint32_t block_len, uint8_t offset_width) {
    return build_boc(std::span<const uint64_t>(h.logical), block_len, offset_width, h.total_cells);
}

uint64_t boc_logical(const BocHeader& h, uint64_t physical) {
    check_physical_range(physical, h.n());
    return h.base[physical / h.block_len] + h.offsets[physical];
}

std::optional<uint64_t> boc_lookup(const BocHeader& h, uint64_t logical) {
    check_logical_range(logical, h.total_cells);
    // Stage 1: the block that may contain logical is the greatest k
    // with base[k] <= logical (blocks cover disjoint ascending ranges).
    auto bit = std::upper_bound(h.base.begin(), h.base.end(), logical);
    if (bit == h.base.begin()) return std::nullopt;
    uint64_t block = static_cast<uint64_t>(bit - h.base.begin()) - 1;
    uint64_t target = logical - h.base[block];
    // Stage 2: binary search inside the block's offsets.
    uint64_t lo = block * h.block_len;
    uint64_t hi = std::min<uint64_t>(lo + h.block_len, h.offsets.size());
    auto first = h.offsets.begin() + static_cast<ptrdiff_t>(lo);
    auto last = h.offsets.begin() + static_cast<ptrdiff_t>(hi);
    auto it = std::lower_bound(first, last, target);
    if (it == last || *it != target) return std::nullopt;
    return static_cast<uint64_t>(it - h.offsets.begin());
}

RunScheme choose_run_scheme(uint64_t n, uint64_t runs) {
    if (runs == 0 || runs > n) throw DomainError("run count must satisfy 1 <= nu <= N");
    // LPC header (N*iota) beats the run-pair header (2*nu*iota) iff
    // N < 2*nu; on a tie the run pairs win.
    return n < 2 * runs ? RunScheme::Lpc : RunScheme::Schc;
}

BocProfitability boc_profitability(uint32_t index_width, uint8_t offset_width, uint32_t block_len,
                                   uint64_t n) {
    if (index_width == 0 || offset_width == 0 || block_len == 0 || n == 0)
        throw DomainError("profitability parameters must be positive");
    double iota = index_width;
    double theta = offset_width;
    double l = block_len;
    BocProfitability p;
    p.sufficient_exact = iota / l + iota / static_cast<double>(n) + theta < iota;
    p.sufficient_approx = iota / l + theta < iota;
    p.ratio = (iota / l + theta) / iota;
    return p;
}

HeaderSizes header_sizes(uint64_t n, uint64_t runs, uint32_t index_width, uint8_t offset_width,
                         uint32_t block_len) {
    if (n == 0 || runs == 0 || runs > n) throw DomainError("need 1 <= nu <= N");
    if (index_width == 0 || offset_width == 0 || block_len == 0)
        throw DomainError("widths and block length must be positive");
    HeaderSizes s;
    s.schc = 2 * runs * index_width;
    s.lpc = n * index_width;
    s.boc_base = ((n - 1) / block_len + 1) * index_width;
    s.boc_offsets = n * offset_width;
    s.boc = s.boc_base + s.boc_offsets;
    return s;
}

}  // namespace mdstore
