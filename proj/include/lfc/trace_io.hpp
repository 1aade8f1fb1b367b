#ifndef LFC_TRACE_IO_HPP_
#define LFC_TRACE_IO_HPP_

#include "lfc/metrics.hpp"
#include "lfc/sim.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace lfc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes content to path via a temp file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Full-precision decimal text for doubles (shortest round-trip form).
std::string format_double(double v);

// Fixed schema, one row per (sample, area):
// t,area,dP_tie,df,dP_m,dE,dP_g,dP_pv,dP_wt,mu,theta,L,dP_L,dP_phi,dP_wind
std::string trace_csv(const SimTrace& trace);
void write_trace_csv(const SimTrace& trace, const std::filesystem::path& path);

std::string index_table(const IndexReport& report);
std::string comparison_table(const ComparisonReport& report);

} // namespace lfc

#endif // LFC_TRACE_IO_HPP_
