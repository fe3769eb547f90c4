#include "mdstore/cost_model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mdstore {

void CostParams::validate() const {
    if (!(data_ratio >= 0.0 && data_ratio < 1.0))
        throw DomainError("data ratio must satisfy 0 <= delta < 1");
    if (!(rid_bytes > 0)) throw DomainError("RID width must be positive");
    if (!(row_bytes > 0)) throw DomainError("row width must be positive");
    if (!(index_bytes > 0)) throw DomainError("index width must be positive");
    if (n == 0) throw DomainError("row count must be positive");
    if (index_bytes > (1.0 - data_ratio) * row_bytes + 1e-12)
        throw DomainError("index width exceeds the key width (1 - delta) * S");
}

double cost_table(const CostParams& p) {
    p.validate();
    double ns = static_cast<double>(p.n) * p.row_bytes;
    return ns + 2.0 * (1.0 - p.data_ratio) * ns + 4.0 * static_cast<double>(p.n) * p.rid_bytes;
}

double cost_multi(const CostParams& p) {
    p.validate();
    return p.data_ratio * static_cast<double>(p.n) * p.row_bytes +
           2.0 * static_cast<double>(p.n) * p.index_bytes;
}

namespace {

// Raw N-free form of the quotient; also serves the delta = 1 boundary
// row of the rendered matrix, which CostParams itself excludes.
std::optional<double> raw_ratio(double delta, double theta_over_s, double iota_over_s) {
    double denom = delta + 2.0 * iota_over_s;
    if (denom <= 0.0) return std::nullopt;
    return (3.0 - 2.0 * delta + 4.0 * theta_over_s) / denom;
}

}  // namespace

double cost_ratio(const CostParams& p) {
    p.validate();
    auto r = raw_ratio(p.data_ratio, p.rid_bytes / p.row_bytes, p.index_bytes / p.row_bytes);
    if (!r) throw DomainError("cost ratio undefined: delta and iota are both zero");
    return *r;
}

double round_half_up(double x, int decimals) {
    double scale = std::pow(10.0, decimals);
    return std::floor(x * scale + 0.5) / scale;
}

CostMatrix render_cost_matrix(double theta_over_s, const std::vector<double>& deltas,
                              const std::vector<double>& iotas) {
    if (deltas.empty() || iotas.empty()) throw DomainError("cost matrix grids must be non-empty");
    CostMatrix m;
    m.theta_over_s = theta_over_s;
    m.deltas = deltas;
    m.iotas = iotas;
    m.entries.resize(deltas.size());
    for (size_t di = 0; di < deltas.size(); ++di) {
        m.entries[di].resize(iotas.size());
        for (size_t ii = 0; ii < iotas.size(); ++ii) {
            // Tolerance keeps grid values like 0.6 vs 1 - 0.4 admissible.
            if (iotas[ii] > 1.0 - deltas[di] + 1e-9) continue;  // inadmissible: dash
            auto r = raw_ratio(deltas[di], theta_over_s, iotas[ii]);
            if (!r) continue;  // undefined: dash
            m.entries[di][ii] = round_half_up(*r, 2);
        }
    }
    return m;
}

namespace {

std::string pct(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f%%", x * 100.0);
    return buf;
}

std::string two_dp(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

std::string format_cost_matrix_text(const CostMatrix& m) {
    std::ostringstream os;
    os << "theta/S = " << pct(m.theta_over_s) << "\n\n";
    const int w = 8;
    os << std::string(w, ' ');
    for (double i : m.iotas) {
        std::string h = pct(i);
        os << std::string(w - h.size(), ' ') << h;
    }
    os << "\n";
    for (size_t di = 0; di < m.deltas.size(); ++di) {
        std::string row = pct(m.deltas[di]);
        os << row << std::string(w - row.size(), ' ');
        for (size_t ii = 0; ii < m.iotas.size(); ++ii) {
            std::string cell = m.entries[di][ii] ? two_dp(*m.entries[di][ii]) : "-";
            os << std::string(w - cell.size(), ' ') << cell;
        }
        os << "\n";
    }
    return os.str();
}

std::string format_cost_matrix_csv(const CostMatrix& m) {
    std::ostringstream os;
    os << "delta";
    for (double i : m.iotas) os << "," << i;
    os << "\n";
    for (size_t di = 0; di < m.deltas.size(); ++di) {
        os << m.deltas[di];
        for (size_t ii = 0; ii < m.iotas.size(); ++ii) {
            os << ",";
            if (m.entries[di][ii]) os << two_dp(*m.entries[di][ii]);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace mdstore
