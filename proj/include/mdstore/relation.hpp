#ifndef MDSTORE_RELATION_HPP
#define MDSTORE_RELATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdstore/error.hpp"

namespace mdstore {

enum class MeasureKind : uint8_t { Integer = 0, Real = 1 };

struct MeasureDesc {
    std::string name = "value";
    MeasureKind kind = MeasureKind::Integer;
    uint8_t width = 8;  // bytes on disk: 4 or 8
};

struct DimDesc {
    std::string name;
    uint64_t cardinality = 0;  // c_i; 0 means "infer" in declarations
};

// All listed dimensions are key dimensions. The geometry of the
// linearization is the product of the cardinalities, dimension 1
// varying fastest.
struct RelationSchema {
    std::vector<DimDesc> dims;
    MeasureDesc measure;

    size_t dim_count() const { return dims.size(); }
    uint64_t total_cells() const;

    // Throws SchemaError on: empty dims, duplicate names, zero
    // cardinality, cardinality > 2^32, or total cell count >= 2^63
    // (the 8-byte one-dimensional index must not overflow).
    void validate() const;
};

// 0-based coordinates, one per dimension.
using MultiIndex = std::vector<uint32_t>;

// A measure value is canonically held as 8 opaque bytes. Integer
// measures store the signed value directly; real measures store the
// bit pattern of a double. Width-4 measures are narrowed at encode
// time so the in-memory value always equals the round-tripped one.
using MeasureValue = int64_t;

MeasureValue measure_from_real(double x);
double measure_as_real(MeasureValue v);
MeasureValue canonical_measure(MeasureValue raw, const MeasureDesc& desc);
MeasureValue parse_measure(const std::string& text, const MeasureDesc& desc);
std::string format_measure(MeasureValue v, const MeasureDesc& desc);

struct Cell {
    uint64_t logical;    // one-dimensional index L
    MeasureValue value;  // canonical measure
};

// Dictionary-encoded, sorted relation. The single source every
// representation is built from.
//
// Invariants: cells strictly ascending by logical index, each in
// [0, total_cells()); dictionaries hold distinct raw values, ordinal =
// position; every cell coordinate references an existing ordinal.
// A dictionary may be shorter than the declared cardinality when the
// declaration reserves geometry beyond the observed values.
struct EncodedRelation {
    RelationSchema schema;
    std::vector<std::vector<std::string>> dictionaries;
    std::vector<Cell> cells;

    uint64_t n() const { return cells.size(); }
    uint64_t total_cells() const { return schema.total_cells(); }

    // Binary search by logical index; empty cell -> nullopt.
    std::optional<MeasureValue> value_at(uint64_t logical) const;

    void validate() const;
};

struct RelationStats {
    double density;       // rho = nonempty / total
    uint64_t run_count;   // nu: maximal blocks of consecutive nonempty L
    uint64_t total_cells;
    uint64_t nonempty;    // N
};

// One-dimensional index of a coordinate tuple; dimension 1 varies
// fastest. Throws DomainError naming the offending dimension when a
// coordinate is out of range.
uint64_t linearize(const MultiIndex& idx, const RelationSchema& schema);

// Inverse of linearize. Throws DomainError when logical is out of range.
MultiIndex delinearize(uint64_t logical, const RelationSchema& schema);

// One input row: raw dimension values plus the measure as text.
struct InputRow {
    std::vector<std::string> key;
    std::string measure;
};

// Schema declaration used at encode time; a zero cardinality means
// "use the number of distinct values observed".
struct SchemaDecl {
    std::vector<DimDesc> dims;
    MeasureDesc measure;
};

// Builds dictionaries (values sorted ascending, so identical input
// data always yields identical ordinals), linearizes and sorts.
// Throws IntegrityError on duplicate keys, SchemaError when a declared
// cardinality is exceeded, ParseError on malformed measures.
EncodedRelation encode_relation(const std::vector<InputRow>& rows, const SchemaDecl& decl);

// Density and run count. Throws DomainError on an empty relation
// (density is undefined at N = 0).
RelationStats stats(const EncodedRelation& rel);

}  // namespace mdstore

#endif
