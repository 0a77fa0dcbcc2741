#include "hysim/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace hysim {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);  // binary: byte-stable newlines
  if (!os) throw std::runtime_error("cannot open " + path.string());
  return os;
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& os) {
  os << "t,r,u,w,e\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << format_double(trace.t[i]) << ',' << format_double(trace.r[i]) << ','
       << format_double(trace.u[i]) << ',' << format_double(trace.w[i]) << ','
       << format_double(trace.e[i]) << '\n';
  }
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
  auto os = open_out(path);
  write_trace_csv(trace, os);
}

void write_sweep_csv(const SweepTable& table, std::ostream& os) {
  os << "omega_rad_s,freq_label_hz,K,max_abs_e,periods_discarded\n";
  for (const auto& row : table.rows) {
    os << format_double(row.omega) << ','
       << format_double(2.0 * std::numbers::pi * row.omega) << ','
       << format_double(row.K) << ',' << format_double(row.max_abs_e) << ','
       << row.periods_discarded << '\n';
  }
}

void write_sweep_csv(const SweepTable& table, const std::filesystem::path& path) {
  auto os = open_out(path);
  write_sweep_csv(table, os);
}

void write_equilibria_csv(std::span<const EquilibriumPair> pairs, std::ostream& os) {
  os << "R,u1,u1_flagged,u2,u2_flagged\n";
  for (const auto& eq : pairs) {
    os << format_double(eq.R) << ',';
    if (eq.u1) os << format_double(eq.u1->x);
    os << ',';
    if (eq.u1) os << (eq.u1->unbounded ? 1 : 0);
    os << ',';
    if (eq.u2) os << format_double(eq.u2->x);
    os << ',';
    if (eq.u2) os << (eq.u2->unbounded ? 1 : 0);
    os << '\n';
  }
}

void write_equilibria_csv(std::span<const EquilibriumPair> pairs,
                          const std::filesystem::path& path) {
  auto os = open_out(path);
  write_equilibria_csv(pairs, os);
}

void write_campaign_csv(std::span<const CampaignReport> reports, std::ostream& os) {
  os << "campaign,case,pass,metric\n";
  for (const auto& report : reports) {
    for (const auto& rec : report.records) {
      os << report.name << ',' << rec.index << ',' << (rec.pass ? 1 : 0) << ','
         << format_double(rec.metric) << '\n';
    }
  }
}

void write_campaign_csv(std::span<const CampaignReport> reports,
                        const std::filesystem::path& path) {
  auto os = open_out(path);
  write_campaign_csv(reports, os);
}

}  // namespace hysim
