#ifndef MDSTORE_CONJOINT_HPP
#define MDSTORE_CONJOINT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mdstore/relation.hpp"

namespace mdstore {

// Result of replacing the first h key dimensions by the projection of
// the relation onto them. The transformed relation is an ordinary
// EncodedRelation over (conjoint, d_{h+1}, ..., d_n) and feeds every
// other module unchanged. members maps each conjoint ordinal back to
// the original first-h coordinates.
struct ConjointRelation {
    EncodedRelation relation;
    std::vector<MultiIndex> members;  // ordinal -> original (i_1..i_h)
    uint32_t merged_dims = 0;         // h
    uint64_t projected_space = 0;     // product of the first h cardinalities
    bool degenerate = false;          // h == k: one member per cell, density 1
};

// Lossless: a bijection between original and transformed cells.
// Members are ordered by their coordinate tuples, so the result is
// deterministic. h == k is permitted but flagged via `degenerate`.
// Throws DomainError when h is outside [1, k].
ConjointRelation build_conjoint(const EncodedRelation& rel, uint32_t h);

struct ConjointDensity {
    double original;     // rho
    double transformed;  // rho' = (projected_space / |Conjoint|) * rho
};

ConjointDensity conjoint_density(const EncodedRelation& rel, uint32_t h);

// Retrieval by an original-key coordinate tuple.
std::optional<MeasureValue> conjoint_lookup(const ConjointRelation& cr, const MultiIndex& original_idx);

}  // namespace mdstore

#endif
