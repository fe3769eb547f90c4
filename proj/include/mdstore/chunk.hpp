#ifndef MDSTORE_CHUNK_HPP
#define MDSTORE_CHUNK_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "mdstore/relation.hpp"

namespace mdstore {

inline constexpr double kDenseThresholdDefault = 0.40;

// Rectangular chunking of the array: per-dimension edge lengths.
// Boundary chunks use their true truncated shape.
struct ChunkSpec {
    std::vector<uint32_t> shape;

    // 16 per dimension, capped at the cardinality.
    static ChunkSpec default_for(const RelationSchema& schema);

    void validate(const RelationSchema& schema) const;
};

// Dense storage keeps one slot per cell in within-chunk linearized
// order plus a one-bit-per-cell emptiness mask (a stored measure of 0
// is a nonempty cell, so emptiness needs its own bit).
struct DenseChunkData {
    std::vector<uint8_t> mask;  // ceil(cells/8) bytes, LSB-first
    std::vector<MeasureValue> values;

    bool occupied(uint64_t offset) const { return (mask[offset >> 3] >> (offset & 7)) & 1; }
};

struct SparseChunkData {
    std::vector<std::pair<uint32_t, MeasureValue>> pairs;  // (offsetInChunk, value), ascending
};

struct Chunk {
    uint64_t cell_count = 0;  // true (possibly truncated) cell count
    uint64_t nonempty = 0;
    std::variant<SparseChunkData, DenseChunkData> data;

    bool dense() const { return std::holds_alternative<DenseChunkData>(data); }
};

struct ChunkStore {
    RelationSchema schema;
    ChunkSpec spec;
    double density_threshold = kDenseThresholdDefault;
    std::vector<uint32_t> grid;   // chunk counts per dimension
    std::vector<Chunk> chunks;    // grid-linearized, dimension 1 fastest
    uint8_t offset_width = 4;     // bytes per offsetInChunk when serialized

    uint64_t chunk_count() const { return chunks.size(); }
};

// Partitions the relation. A chunk is dense iff nonempty/cells >
// density_threshold.
ChunkStore build_chunks(const EncodedRelation& rel, const ChunkSpec& spec,
                        double density_threshold = kDenseThresholdDefault);

// Locates the owning chunk arithmetically, then direct-indexes (dense)
// or binary-searches the pair list (sparse).
std::optional<MeasureValue> chunk_lookup(const ChunkStore& store, const MultiIndex& idx);

struct ChunkInfo {
    uint64_t cells;
    uint64_t nonempty;
    double density;
    bool dense;
    uint64_t bytes;  // serialized payload share of this chunk
};

struct ChunkStats {
    std::vector<ChunkInfo> per_chunk;
    uint64_t total_bytes = 0;
    uint64_t total_nonempty = 0;
    uint64_t dense_chunks = 0;
    uint64_t sparse_chunks = 0;
};

ChunkStats chunk_stats(const ChunkStore& store);

}  // namespace mdstore

#endif
