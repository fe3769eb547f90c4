#include "mdstore/relation.hpp"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

namespace mdstore {

namespace {

std::string quote_key(const std::vector<std::string>& key) {
    std::string out = "(";
    for (size_t i = 0; i < key.size(); ++i) {
        if (i) out += ", ";
        out += key[i];
    }
    out += ")";
    return out;
}

}  // namespace

uint64_t RelationSchema::total_cells() const {
    unsigned __int128 prod = 1;
    for (const auto& d : dims) prod *= d.cardinality;
    return static_cast<uint64_t>(prod);
}

void RelationSchema::validate() const {
    if (dims.empty()) throw SchemaError("schema has no dimensions");
    std::unordered_set<std::string> names;
    unsigned __int128 prod = 1;
    for (const auto& d : dims) {
        if (d.name.empty()) throw SchemaError("dimension with empty name");
        if (!names.insert(d.name).second)
            throw SchemaError("duplicate dimension name '" + d.name + "'");
        if (d.cardinality == 0)
            throw SchemaError("dimension '" + d.name + "' has zero cardinality");
        if (d.cardinality > (uint64_t{1} << 32))
            throw SchemaError("dimension '" + d.name + "' cardinality exceeds 2^32");
        prod *= d.cardinality;
        if (prod >= (static_cast<unsigned __int128>(1) << 63))
            throw SchemaError("total cell count reaches 2^63; does not fit the 8-byte one-dimensional index");
    }
    if (measure.width != 4 && measure.width != 8)
        throw SchemaError("measure width must be 4 or 8 bytes");
}

MeasureValue measure_from_real(double x) {
    return std::bit_cast<MeasureValue>(x);
}

double measure_as_real(MeasureValue v) {
    return std::bit_cast<double>(v);
}

MeasureValue canonical_measure(MeasureValue raw, const MeasureDesc& desc) {
    if (desc.width == 8) return raw;
    if (desc.kind == MeasureKind::Integer) {
        if (raw < std::numeric_limits<int32_t>::min() || raw > std::numeric_limits<int32_t>::max())
            throw CapacityError("integer measure " + std::to_string(raw) + " does not fit 4 bytes");
        return raw;
    }
    // 4-byte real: narrow through float so memory matches the file.
    return measure_from_real(static_cast<double>(static_cast<float>(measure_as_real(raw))));
}

MeasureValue parse_measure(const std::string& text, const MeasureDesc& desc) {
    if (desc.kind == MeasureKind::Integer) {
        int64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ParseError("bad integer measure '" + text + "'");
        return canonical_measure(v, desc);
    }
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (errno != 0 || end != text.c_str() + text.size() || text.empty())
        throw ParseError("bad real measure '" + text + "'");
    return canonical_measure(measure_from_real(v), desc);
}

std::string format_measure(MeasureValue v, const MeasureDesc& desc) {
    if (desc.kind == MeasureKind::Integer) return std::to_string(v);
    std::ostringstream os;
    os.precision(17);
    os << measure_as_real(v);
    return os.str();
}

uint64_t linearize(const MultiIndex& idx, const RelationSchema& schema) {
    if (idx.size() != schema.dim_count())
        throw DomainError("index has " + std::to_string(idx.size()) + " coordinates, schema has " +
                          std::to_string(schema.dim_count()) + " dimensions");
    // Horner form with dimension 1 innermost (fastest varying).
    uint64_t L = 0;
    for (size_t j = schema.dim_count(); j-- > 0;) {
        const auto& d = schema.dims[j];
        if (idx[j] >= d.cardinality)
            throw DomainError("coordinate " + std::to_string(idx[j]) + " out of range for dimension '" +
                              d.name + "' (cardinality " + std::to_string(d.cardinality) + ")");
        L = L * d.cardinality + idx[j];
    }
    return L;
}

MultiIndex delinearize(uint64_t logical, const RelationSchema& schema) {
    if (logical >= schema.total_cells())
        throw DomainError("one-dimensional index " + std::to_string(logical) + " out of range (total cells " +
                          std::to_string(schema.total_cells()) + ")");
    MultiIndex idx(schema.dim_count());
    for (size_t j = 0; j < schema.dim_count(); ++j) {
        uint64_t c = schema.dims[j].cardinality;
        idx[j] = static_cast<uint32_t>(logical % c);
        logical /= c;
    }
    return idx;
}

std::optional<MeasureValue> EncodedRelation::value_at(uint64_t logical) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), logical,
                               [](const Cell& c, uint64_t l) { return c.logical < l; });
    if (it == cells.end() || it->logical != logical) return std::nullopt;
    return it->value;
}

void EncodedRelation::validate() const {
    schema.validate();
    if (dictionaries.size() != schema.dim_count())
        throw SchemaError("dictionary count does not match dimension count");
    for (size_t i = 0; i < dictionaries.size(); ++i) {
        if (dictionaries[i].size() > schema.dims[i].cardinality)
            throw SchemaError("dictionary for '" + schema.dims[i].name + "' larger than its cardinality");
    }
    uint64_t total = schema.total_cells();
    for (size_t m = 0; m < cells.size(); ++m) {
        if (cells[m].logical >= total)
            throw DomainError("cell index " + std::to_string(cells[m].logical) + " out of range");
        if (m > 0 && cells[m - 1].logical >= cells[m].logical)
            throw IntegrityError("cell indices not strictly increasing at position " + std::to_string(m));
    }
}

EncodedRelation encode_relation(const std::vector<InputRow>& rows, const SchemaDecl& decl) {
    const size_t k = decl.dims.size();
    if (k == 0) throw SchemaError("schema declaration has no dimensions");

    // Pass 1: distinct raw values per dimension, sorted so ordinal
    // assignment is deterministic.
    std::vector<std::vector<std::string>> dicts(k);
    {
        std::vector<std::unordered_set<std::string>> seen(k);
        for (const auto& row : rows) {
            if (row.key.size() != k)
                throw SchemaError("row has " + std::to_string(row.key.size()) + " key values, expected " +
                                  std::to_string(k));
            for (size_t i = 0; i < k; ++i) seen[i].insert(row.key[i]);
        }
        for (size_t i = 0; i < k; ++i) {
            dicts[i].assign(seen[i].begin(), seen[i].end());
            std::sort(dicts[i].begin(), dicts[i].end());
            if (decl.dims[i].cardinality != 0 && dicts[i].size() > decl.dims[i].cardinality)
                throw SchemaError("dimension '" + decl.dims[i].name + "' has " +
                                  std::to_string(dicts[i].size()) + " distinct values, declared cardinality " +
                                  std::to_string(decl.dims[i].cardinality));
        }
    }

    EncodedRelation rel;
    rel.schema.measure = decl.measure;
    for (size_t i = 0; i < k; ++i) {
        uint64_t c = decl.dims[i].cardinality ? decl.dims[i].cardinality : dicts[i].size();
        if (c == 0) c = 1;  // no rows and no declaration: degenerate axis
        rel.schema.dims.push_back({decl.dims[i].name, c});
    }
    rel.schema.validate();
    rel.dictionaries = std::move(dicts);

    // Pass 2: linearize.
    rel.cells.reserve(rows.size());
    std::vector<const std::vector<std::string>*> dict_ptr(k);
    for (size_t i = 0; i < k; ++i) dict_ptr[i] = &rel.dictionaries[i];
    MultiIndex coord(k);
    for (const auto& row : rows) {
        for (size_t i = 0; i < k; ++i) {
            const auto& dict = *dict_ptr[i];
            auto it = std::lower_bound(dict.begin(), dict.end(), row.key[i]);
            coord[i] = static_cast<uint32_t>(it - dict.begin());
        }
        rel.cells.push_back({linearize(coord, rel.schema), parse_measure(row.measure, decl.measure)});
    }
    std::sort(rel.cells.begin(), rel.cells.end(),
              [](const Cell& a, const Cell& b) { return a.logical < b.logical; });
    for (size_t m = 1; m < rel.cells.size(); ++m) {
        if (rel.cells[m].logical == rel.cells[m - 1].logical) {
            MultiIndex dup = delinearize(rel.cells[m].logical, rel.schema);
            std::vector<std::string> raw(k);
            for (size_t i = 0; i < k; ++i) raw[i] = rel.dictionaries[i][dup[i]];
            throw IntegrityError("duplicate key " + quote_key(raw));
        }
    }
    return rel;
}

RelationStats stats(const EncodedRelation& rel) {
    if (rel.cells.empty()) throw DomainError("stats undefined for an empty relation");
    RelationStats st;
    st.nonempty = rel.n();
    st.total_cells = rel.total_cells();
    st.density = static_cast<double>(st.nonempty) / static_cast<double>(st.total_cells);
    st.run_count = 1;
    for (size_t m = 1; m < rel.cells.size(); ++m)
        if (rel.cells[m].logical != rel.cells[m - 1].logical + 1) ++st.run_count;
    return st;
}

}  // namespace mdstore
