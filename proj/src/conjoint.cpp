#include "mdstore/conjoint.hpp"

#include <algorithm>
#include <string>

namespace mdstore {

namespace {

std::string join_members(const MultiIndex& tuple, const EncodedRelation& rel) {
    std::string out;
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += '|';
        out += tuple[i] < rel.dictionaries[i].size() ? rel.dictionaries[i][tuple[i]]
                                                     : std::to_string(tuple[i]);
    }
    return out;
}

}  // namespace

ConjointRelation build_conjoint(const EncodedRelation& rel, uint32_t h) {
    const size_t k = rel.schema.dim_count();
    if (h < 1 || h > k)
        throw DomainError("conjoint dimension count " + std::to_string(h) + " out of range [1, " +
                          std::to_string(k) + "]");
    if (rel.cells.empty()) throw DomainError("cannot build a conjoint axis for an empty relation");

    ConjointRelation cr;
    cr.merged_dims = h;
    cr.degenerate = (h == k);
    cr.projected_space = 1;
    for (size_t i = 0; i < h; ++i) cr.projected_space *= rel.schema.dims[i].cardinality;

    // Distinct projected tuples, ordered by coordinate tuple.
    std::vector<MultiIndex> tuples;
    tuples.reserve(rel.cells.size());
    for (const auto& cell : rel.cells) {
        MultiIndex coord = delinearize(cell.logical, rel.schema);
        tuples.emplace_back(coord.begin(), coord.begin() + h);
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    cr.members = std::move(tuples);

    // Transformed schema: the conjoint axis first, remaining axes after.
    EncodedRelation& out = cr.relation;
    out.schema.measure = rel.schema.measure;
    out.schema.dims.push_back({"conjoint", cr.members.size()});
    for (size_t i = h; i < k; ++i) out.schema.dims.push_back(rel.schema.dims[i]);
    out.schema.validate();

    out.dictionaries.resize(out.schema.dim_count());
    out.dictionaries[0].reserve(cr.members.size());
    for (const auto& m : cr.members) out.dictionaries[0].push_back(join_members(m, rel));
    for (size_t i = h; i < k; ++i) out.dictionaries[i - h + 1] = rel.dictionaries[i];

    out.cells.reserve(rel.cells.size());
    MultiIndex ncoord(out.schema.dim_count());
    for (const auto& cell : rel.cells) {
        MultiIndex coord = delinearize(cell.logical, rel.schema);
        MultiIndex head(coord.begin(), coord.begin() + h);
        auto it = std::lower_bound(cr.members.begin(), cr.members.end(), head);
        ncoord[0] = static_cast<uint32_t>(it - cr.members.begin());
        for (size_t i = h; i < k; ++i) ncoord[i - h + 1] = coord[i];
        out.cells.push_back({linearize(ncoord, out.schema), cell.value});
    }
    std::sort(out.cells.begin(), out.cells.end(),
              [](const Cell& a, const Cell& b) { return a.logical < b.logical; });
    return cr;
}

ConjointDensity conjoint_density(const EncodedRelation& rel, uint32_t h) {
    if (rel.cells.empty()) throw DomainError("density undefined for an empty relation");
    ConjointRelation cr = build_conjoint(rel, h);
    ConjointDensity d;
    d.original = static_cast<double>(rel.n()) / static_cast<double>(rel.total_cells());
    d.transformed = static_cast<double>(cr.projected_space) /
                    static_cast<double>(cr.members.size()) * d.original;
    return d;
}

std::optional<MeasureValue> conjoint_lookup(const ConjointRelation& cr, const MultiIndex& original_idx) {
    const size_t h = cr.merged_dims;
    const size_t k = h + cr.relation.schema.dim_count() - 1;
    if (original_idx.size() != k) throw DomainError("index dimensionality mismatch");
    MultiIndex head(original_idx.begin(), original_idx.begin() + h);
    auto it = std::lower_bound(cr.members.begin(), cr.members.end(), head);
    if (it == cr.members.end() || *it != head) return std::nullopt;
    MultiIndex ncoord(cr.relation.schema.dim_count());
    ncoord[0] = static_cast<uint32_t>(it - cr.members.begin());
    for (size_t i = h; i < original_idx.size(); ++i) ncoord[i - h + 1] = original_idx[i];
    return cr.relation.value_at(linearize(ncoord, cr.relation.schema));
}

}  // namespace mdstore
