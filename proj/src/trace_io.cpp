#include "lfc/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lfc {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError("rename to " + path.string() + " failed: " + ec.message());
  }
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trace_csv(const SimTrace& trace) {
  std::string out;
  out.reserve(static_cast<std::size_t>(trace.num_samples()) * trace.num_areas * 96);
  out += "t,area,dP_tie,df,dP_m,dE,dP_g,dP_pv,dP_wt,mu,theta,L,dP_L,dP_phi,dP_wind\n";
  for (int k = 0; k < trace.num_samples(); ++k) {
    for (int a = 0; a < trace.num_areas; ++a) {
      out += format_double(trace.time[k]);
      out += ',';
      out += std::to_string(a + 1);
      for (int s = 0; s < kStatesPerArea; ++s) {
        out += ',';
        out += format_double(trace.state_at(k, a, s));
      }
      out += ',';
      out += format_double(trace.mu[k][a]);
      out += ',';
      out += format_double(trace.theta[k][a]);
      out += ',';
      out += format_double(trace.lyapunov[k][a]);
      out += ',';
      out += format_double(trace.disturbances[k][a].load);
      out += ',';
      out += format_double(trace.disturbances[k][a].pv);
      out += ',';
      out += format_double(trace.disturbances[k][a].wind);
      out += '\n';
    }
  }
  return out;
}

void write_trace_csv(const SimTrace& trace, const std::filesystem::path& path) {
  atomic_write(path, trace_csv(trace));
}

std::string index_table(const IndexReport& r) {
  std::ostringstream out;
  out << "index,value\n";
  out << "ITAE," << format_double(r.itae) << "\n";
  out << "ITSE," << format_double(r.itse) << "\n";
  out << "ISE," << format_double(r.ise) << "\n";
  out << "IAE," << format_double(r.iae) << "\n";
  return out.str();
}

std::string comparison_table(const ComparisonReport& report) {
  std::ostringstream out;
  out << "index,test,baseline,improvement_percent\n";
  for (const auto& c : report.indices) {
    out << c.name << ',' << format_double(c.value_test) << ','
        << format_double(c.value_baseline) << ',';
    if (c.undefined) {
      out << "undefined";
    } else {
      out << format_double(c.improvement_percent);
    }
    out << "\n";
  }
  return out.str();
}

} // namespace lfc
