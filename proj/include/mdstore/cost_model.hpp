#ifndef MDSTORE_COST_MODEL_HPP
#define MDSTORE_COST_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdstore/error.hpp"

namespace mdstore {

// Analytic worst-case size model of the two physical representations.
//
//   table side:  N*S + 2*(1-delta)*N*S + 4*N*theta
//   array side:  delta*N*S + 2*N*iota
//
// delta is the data ratio (non-key bytes per row / row bytes), theta
// the RID width, S the row width, iota the one-dimensional index
// width, N the row count. Admissibility requires iota <= (1-delta)*S:
// the one-dimensional index is a compression of the key, so it cannot
// be wider than the key itself.
struct CostParams {
    double data_ratio = 0;   // delta in [0, 1)
    double rid_bytes = 0;    // theta > 0
    double row_bytes = 0;    // S > 0
    double index_bytes = 0;  // iota > 0
    uint64_t n = 0;          // N > 0

    void validate() const;  // throws DomainError
};

double cost_table(const CostParams& p);
double cost_multi(const CostParams& p);

// C_T / C_M = (3 - 2*delta + 4*theta/S) / (delta + 2*iota/S).
// Always > 1 on admissible parameters. Throws DomainError on a zero
// denominator (only reachable at delta = 0, iota = 0).
double cost_ratio(const CostParams& p);

// Half-up rounding, used for the 2-decimal matrix entries.
double round_half_up(double x, int decimals);

// Ratio matrix over a (delta, iota/S) grid at fixed theta/S. An entry
// is absent (rendered as a dash) where iota/S > 1 - delta or where the
// ratio is undefined (delta = 0 and iota/S = 0). Values are rounded
// half-up to 2 decimals. The grid may include the delta = 1 boundary
// row, where only iota/S = 0 is admissible.
struct CostMatrix {
    double theta_over_s;
    std::vector<double> deltas;
    std::vector<double> iotas;                                // iota/S values
    std::vector<std::vector<std::optional<double>>> entries;  // [delta][iota]
};

CostMatrix render_cost_matrix(double theta_over_s, const std::vector<double>& deltas,
                              const std::vector<double>& iotas);

std::string format_cost_matrix_text(const CostMatrix& m);
std::string format_cost_matrix_csv(const CostMatrix& m);

}  // namespace mdstore

#endif
