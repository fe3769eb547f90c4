#ifndef MDSTORE_TABLE_HPP
#define MDSTORE_TABLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mdstore/relation.hpp"

namespace mdstore {

inline constexpr uint32_t kPageSize = 4096;
inline constexpr uint32_t kRidWidth = 8;  // theta: (page, slot) pair

// Fixed-width row file: k 4-byte key ordinals plus the measure, rows
// in ascending key order (which equals one-dimensional-index order).
// Rows are packed, so the file is exactly N * S bytes; the paged RID
// addressing is purely arithmetic.
class RowTable {
public:
    RowTable() = default;
    RowTable(uint16_t key_dims, MeasureDesc measure);

    static RowTable from_relation(const EncodedRelation& rel);

    uint16_t key_dims() const { return key_dims_; }
    const MeasureDesc& measure() const { return measure_; }
    uint32_t row_size() const { return 4u * key_dims_ + measure_.width; }  // S
    uint64_t row_count() const { return row_count_; }
    uint64_t byte_size() const { return bytes_.size(); }

    uint32_t rows_per_page() const { return kPageSize / row_size(); }
    uint64_t rid_of_row(uint64_t row) const;
    uint64_t row_of_rid(uint64_t rid) const;

    void key_at(uint64_t row, std::span<uint32_t> out) const;
    MeasureValue value_at(uint64_t row) const;
    void append_row(std::span<const uint32_t> key, MeasureValue value);

    const std::vector<uint8_t>& bytes() const { return bytes_; }
    std::vector<uint8_t>& bytes() { return bytes_; }
    void set_row_count(uint64_t n) { row_count_ = n; }

private:
    uint16_t key_dims_ = 0;
    MeasureDesc measure_;
    uint64_t row_count_ = 0;
    std::vector<uint8_t> bytes_;
};

// Classic B-tree over the row file with fixed 4096-byte pages. Every
// node uses the same slotted layout: a leaf flag, an entry count, a
// leading child RID and then count entries of (key, row RID, child
// RID). Leaf pages keep their child slots zeroed. Each key occurs
// exactly once in the tree together with its row RID.
class BTree {
public:
    BTree() = default;
    explicit BTree(uint16_t key_dims);

    uint16_t key_dims() const { return key_dims_; }
    uint32_t capacity() const { return capacity_; }  // max keys per page, even
    uint64_t page_count() const { return pages_.size() / kPageSize; }
    uint64_t byte_size() const { return pages_.size(); }
    uint64_t root() const { return root_; }

    // Throws IntegrityError on duplicate keys.
    void insert(std::span<const uint32_t> key, uint64_t rid);

    // Root-to-leaf descent; nullopt when absent.
    std::optional<uint64_t> find(std::span<const uint32_t> key) const;

    const std::vector<uint8_t>& pages() const { return pages_; }

    // Raw adoption of serialized pages (load path).
    void adopt(uint16_t key_dims, uint64_t root, std::vector<uint8_t> pages);

private:
    uint64_t new_page(bool leaf);
    struct Promotion;
    std::optional<Promotion> insert_into(uint64_t pageno, std::span<const uint32_t> key, uint64_t rid);

    uint16_t key_dims_ = 0;
    uint32_t capacity_ = 0;
    uint64_t root_ = 0;
    std::vector<uint8_t> pages_;
};

struct TableRep {
    RowTable rows;
    BTree index;
};

// Rows in ascending key order; table bytes = N * S.
RowTable build_table(const EncodedRelation& rel);

// Full-saturation load: all rows at odd 1-based record numbers in
// ascending order, then the even ones. Leaves fill to capacity in the
// second pass instead of splitting at half.
BTree saturate_btree(const RowTable& rows);

// Plain ascending single-pass load, kept for occupancy comparison.
BTree build_btree_ascending(const RowTable& rows);

// Descent plus row fetch by RID. Throws DomainError on a key of the
// wrong dimensionality.
std::optional<MeasureValue> btree_lookup(const TableRep& t, std::span<const uint32_t> key);

struct TableSizes {
    uint64_t table_bytes;
    uint64_t index_bytes;
    uint64_t total;
};

TableSizes table_sizes(const TableRep& t);

struct BTreeCheck {
    uint64_t depth = 0;        // leaf depth (root = 0)
    uint64_t key_count = 0;
    uint64_t page_count = 0;
    double leaf_occupancy = 0; // filled fraction of leaf slots
};

// Structural validation: ordering with bounds, equal leaf depth,
// minimum fill (capacity/2) on non-root pages, zero child slots in
// leaves, and (when rows are given) that every row RID resolves to a
// row with the same key. Throws Error with a description on violation.
BTreeCheck verify_btree(const BTree& tree, const RowTable* rows);

}  // namespace mdstore

#endif
