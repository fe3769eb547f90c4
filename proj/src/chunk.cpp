#include "mdstore/chunk.hpp"

#include <algorithm>
#include <string>

namespace mdstore {

namespace {

constexpr uint64_t kMaxGridChunks = uint64_t{1} << 24;
constexpr uint64_t kMaxChunkCells = uint64_t{1} << 31;

// Edge lengths of the chunk at the given grid coordinates (truncated
// at the array boundary).
std::vector<uint32_t> chunk_edges(const ChunkStore& store, const MultiIndex& gcoord) {
    std::vector<uint32_t> edges(gcoord.size());
    for (size_t i = 0; i < gcoord.size(); ++i) {
        uint64_t start = uint64_t{gcoord[i]} * store.spec.shape[i];
        edges[i] = static_cast<uint32_t>(
            std::min<uint64_t>(store.spec.shape[i], store.schema.dims[i].cardinality - start));
    }
    return edges;
}

uint64_t cells_in(const std::vector<uint32_t>& edges) {
    uint64_t n = 1;
    for (uint32_t e : edges) n *= e;
    return n;
}

uint8_t offset_width_for(uint64_t max_offset) {
    if (max_offset <= 0xFF) return 1;
    if (max_offset <= 0xFFFF) return 2;
    return 4;
}

}  // namespace

ChunkSpec ChunkSpec::default_for(const RelationSchema& schema) {
    ChunkSpec spec;
    spec.shape.reserve(schema.dim_count());
    for (const auto& d : schema.dims)
        spec.shape.push_back(static_cast<uint32_t>(std::min<uint64_t>(16, d.cardinality)));
    return spec;
}

void ChunkSpec::validate(const RelationSchema& schema) const {
    if (shape.size() != schema.dim_count())
        throw DomainError("chunk shape has " + std::to_string(shape.size()) + " edges, schema has " +
                          std::to_string(schema.dim_count()) + " dimensions");
    uint64_t grid_total = 1;
    uint64_t chunk_cells = 1;
    for (size_t i = 0; i < shape.size(); ++i) {
        uint64_t c = schema.dims[i].cardinality;
        if (shape[i] < 1 || shape[i] > c)
            throw DomainError("chunk edge for dimension '" + schema.dims[i].name +
                              "' must be in [1, " + std::to_string(c) + "]");
        grid_total *= (c + shape[i] - 1) / shape[i];
        chunk_cells *= shape[i];
        if (grid_total > kMaxGridChunks) throw DomainError("chunk grid too large");
        if (chunk_cells > kMaxChunkCells) throw DomainError("chunk cell count too large");
    }
}

ChunkStore build_chunks(const EncodedRelation& rel, const ChunkSpec& spec, double density_threshold) {
    spec.validate(rel.schema);
    ChunkStore store;
    store.schema = rel.schema;
    store.spec = spec;
    store.density_threshold = density_threshold;

    const size_t k = rel.schema.dim_count();
    store.grid.resize(k);
    uint64_t grid_total = 1;
    uint64_t max_chunk_cells = 1;
    for (size_t i = 0; i < k; ++i) {
        store.grid[i] =
            static_cast<uint32_t>((rel.schema.dims[i].cardinality + spec.shape[i] - 1) / spec.shape[i]);
        grid_total *= store.grid[i];
        max_chunk_cells *= spec.shape[i];
    }
    store.offset_width = offset_width_for(max_chunk_cells ? max_chunk_cells - 1 : 0);
    store.chunks.resize(grid_total);

    // Grid geometry reused for chunk-index arithmetic.
    RelationSchema grid_schema;
    for (size_t i = 0; i < k; ++i) grid_schema.dims.push_back({rel.schema.dims[i].name, store.grid[i]});

    // Pass 1: route every cell to its chunk as (offsetInChunk, value).
    std::vector<std::vector<std::pair<uint32_t, MeasureValue>>> routed(grid_total);
    MultiIndex gcoord(k), within(k);
    for (const auto& cell : rel.cells) {
        MultiIndex coord = delinearize(cell.logical, rel.schema);
        for (size_t i = 0; i < k; ++i) {
            gcoord[i] = coord[i] / spec.shape[i];
            within[i] = coord[i] % spec.shape[i];
        }
        uint64_t ci = linearize(gcoord, grid_schema);
        auto edges = chunk_edges(store, gcoord);
        uint64_t off = 0;
        for (size_t i = k; i-- > 0;) off = off * edges[i] + within[i];
        routed[ci].emplace_back(static_cast<uint32_t>(off), cell.value);
    }

    // Pass 2: classify per chunk by the density threshold.
    for (uint64_t ci = 0; ci < grid_total; ++ci) {
        Chunk& chunk = store.chunks[ci];
        auto edges = chunk_edges(store, delinearize(ci, grid_schema));
        chunk.cell_count = cells_in(edges);
        auto& pairs = routed[ci];
        std::sort(pairs.begin(), pairs.end());
        chunk.nonempty = pairs.size();
        double density = static_cast<double>(chunk.nonempty) / static_cast<double>(chunk.cell_count);
        if (density > density_threshold) {
            DenseChunkData dense;
            dense.mask.assign((chunk.cell_count + 7) / 8, 0);
            dense.values.assign(chunk.cell_count, 0);
            for (const auto& [off, value] : pairs) {
                dense.mask[off >> 3] |= uint8_t(1u << (off & 7));
                dense.values[off] = value;
            }
            chunk.data = std::move(dense);
        } else {
            chunk.data = SparseChunkData{std::move(pairs)};
        }
    }
    return store;
}

std::optional<MeasureValue> chunk_lookup(const ChunkStore& store, const MultiIndex& idx) {
    const size_t k = store.schema.dim_count();
    if (idx.size() != k) throw DomainError("index dimensionality mismatch");
    MultiIndex gcoord(k), within(k);
    for (size_t i = 0; i < k; ++i) {
        if (idx[i] >= store.schema.dims[i].cardinality)
            throw DomainError("coordinate " + std::to_string(idx[i]) + " out of range for dimension '" +
                              store.schema.dims[i].name + "'");
        gcoord[i] = idx[i] / store.spec.shape[i];
        within[i] = idx[i] % store.spec.shape[i];
    }
    uint64_t ci = 0;
    for (size_t i = k; i-- > 0;) ci = ci * store.grid[i] + gcoord[i];
    const Chunk& chunk = store.chunks[ci];
    auto edges = chunk_edges(store, gcoord);
    uint64_t off = 0;
    for (size_t i = k; i-- > 0;) off = off * edges[i] + within[i];

    if (const auto* dense = std::get_if<DenseChunkData>(&chunk.data)) {
        if (!dense->occupied(off)) return std::nullopt;
        return dense->values[off];
    }
    const auto& pairs = std::get<SparseChunkData>(chunk.data).pairs;
    auto it = std::lower_bound(pairs.begin(), pairs.end(), off,
                               [](const auto& p, uint64_t o) { return p.first < o; });
    if (it == pairs.end() || it->first != off) return std::nullopt;
    return it->second;
}

ChunkStats chunk_stats(const ChunkStore& store) {
    ChunkStats st;
    st.per_chunk.reserve(store.chunks.size());
    const uint64_t vw = store.schema.measure.width;
    for (const auto& chunk : store.chunks) {
        ChunkInfo info;
        info.cells = chunk.cell_count;
        info.nonempty = chunk.nonempty;
        info.density = static_cast<double>(chunk.nonempty) / static_cast<double>(chunk.cell_count);
        info.dense = chunk.dense();
        if (info.dense)
            info.bytes = (chunk.cell_count + 7) / 8 + chunk.cell_count * vw;
        else
            info.bytes = chunk.nonempty * (store.offset_width + vw);
        st.total_bytes += info.bytes;
        st.total_nonempty += info.nonempty;
        ++(info.dense ? st.dense_chunks : st.sparse_chunks);
        st.per_chunk.push_back(info);
    }
    return st;
}

}  // namespace mdstore
