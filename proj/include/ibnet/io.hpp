#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ibnet/contagion.hpp"
#include "ibnet/sweep.hpp"
#include "ibnet/types.hpp"

namespace ibnet {

// All floats are written with 17 significant digits so CSV round-trips are
// bit-exact for doubles.
std::string format_double(double v);

void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);

void write_balance_csv(const std::string& path, const BalanceSheet& bs);
BalanceSheet read_balance_csv(const std::string& path);

void write_feasibility_csv(const std::string& path, const std::vector<SweepRecord>& records);

void write_contagion_csv(const std::string& path, const std::vector<ContagionRecord>& records);
std::vector<ContagionRecord> read_contagion_csv(const std::string& path);

void write_fits_json(const std::string& path, const std::vector<ArmFit>& fits);

// Report JSON: {method, n, delta, iterations, eta, epsilon, converged, solution}.
void write_report_json(const std::string& path, const std::string& method, std::size_t n,
                       double delta, const ReconstructionReport& report,
                       const std::string& solution_path);

// FNV-1a over the canonical (sorted-key) dump of a JSON config object.
std::uint64_t config_hash(const std::string& canonical_json);

}  // namespace ibnet
