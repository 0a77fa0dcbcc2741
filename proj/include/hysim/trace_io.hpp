#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "hysim/analysis.hpp"
#include "hysim/simulator.hpp"
#include "hysim/verification.hpp"

namespace hysim {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

/// Header `t,r,u,w,e`, one row per recorded step, full precision.
void write_trace_csv(const Trace& trace, std::ostream& os);
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);

/// Header `omega_rad_s,freq_label_hz,K,max_abs_e,periods_discarded`;
/// freq_label_hz carries the 2*pi*omega axis convention.
void write_sweep_csv(const SweepTable& table, std::ostream& os);
void write_sweep_csv(const SweepTable& table, const std::filesystem::path& path);

/// Header `R,u1,u1_flagged,u2,u2_flagged`; empty cells for absent solutions.
void write_equilibria_csv(std::span<const EquilibriumPair> pairs, std::ostream& os);
void write_equilibria_csv(std::span<const EquilibriumPair> pairs,
                          const std::filesystem::path& path);

/// Header `campaign,case,pass,metric`, one row per campaign case.
void write_campaign_csv(std::span<const CampaignReport> reports, std::ostream& os);
void write_campaign_csv(std::span<const CampaignReport> reports,
                        const std::filesystem::path& path);

}  // namespace hysim
