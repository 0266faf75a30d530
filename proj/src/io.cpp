#include "ibnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ibnet/errors.hpp"

namespace ibnet {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    return f;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open for reading: " + path);
    return f;
}

}  // namespace

void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ofstream f = open_out(path);
    for (std::size_t i = 0; i < m.n(); ++i) {
        for (std::size_t j = 0; j < m.n(); ++j) {
            if (j) f << ',';
            f << format_double(m(i, j));
        }
        f << '\n';
    }
    if (!f) throw IoError("write failed: " + path);
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream f = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const std::string& field : split(line, ','))
            row.push_back(std::strtod(field.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw IoError("matrix csv is not square: " + path);
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

void write_balance_csv(const std::string& path, const BalanceSheet& bs) {
    std::ofstream f = open_out(path);
    f << "bank,assets,liabilities\n";
    for (std::size_t i = 0; i < bs.n; ++i)
        f << i << ',' << format_double(bs.assets[i]) << ','
          << format_double(bs.liabilities[i]) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

BalanceSheet read_balance_csv(const std::string& path) {
    std::ifstream f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || split(line, ',').size() != 3)
        throw IoError("balance csv missing header: " + path);
    std::vector<double> a, l;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 3) throw IoError("balance csv bad row: " + path);
        a.push_back(std::strtod(fields[1].c_str(), nullptr));
        l.push_back(std::strtod(fields[2].c_str(), nullptr));
    }
    return BalanceSheet(std::move(a), std::move(l));
}

void write_feasibility_csv(const std::string& path, const std::vector<SweepRecord>& records) {
    std::ofstream f = open_out(path);
    f << "n,kappa,mean_epsilon,mean_Sx,Sq,predicted_epsilon,feasible\n";
    for (const SweepRecord& r : records)
        f << r.n << ',' << format_double(r.kappa) << ',' << format_double(r.mean_epsilon)
          << ',' << format_double(r.mean_sx) << ',' << format_double(r.sq) << ','
          << format_double(r.predicted_epsilon) << ',' << (r.feasible ? 1 : 0) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

void write_contagion_csv(const std::string& path, const std::vector<ContagionRecord>& records) {
    std::ofstream f = open_out(path);
    f << "theta,kappa,method,xi_mean,xi_min,xi_max\n";
    for (const ContagionRecord& r : records)
        f << format_double(r.theta) << ',' << format_double(r.kappa) << ',' << arm_name(r.arm)
          << ',' << format_double(r.xi_mean) << ',' << format_double(r.xi_min) << ','
          << format_double(r.xi_max) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

std::vector<ContagionRecord> read_contagion_csv(const std::string& path) {
    std::ifstream f = open_in(path);
    std::string line;
    if (!std::getline(f, line) || split(line, ',').size() != 6)
        throw IoError("contagion csv missing header: " + path);
    std::vector<ContagionRecord> out;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 6) throw IoError("contagion csv bad row: " + path);
        ContagionRecord r;
        r.theta = std::strtod(fields[0].c_str(), nullptr);
        r.kappa = std::strtod(fields[1].c_str(), nullptr);
        if (fields[2] == "true") r.arm = Arm::TRUE_MATRIX;
        else if (fields[2] == "me") r.arm = Arm::ME;
        else if (fields[2] == "sme") r.arm = Arm::SME;
        else throw IoError("contagion csv unknown method: " + fields[2]);
        r.xi_mean = std::strtod(fields[3].c_str(), nullptr);
        r.xi_min = std::strtod(fields[4].c_str(), nullptr);
        r.xi_max = std::strtod(fields[5].c_str(), nullptr);
        out.push_back(r);
    }
    return out;
}

void write_fits_json(const std::string& path, const std::vector<ArmFit>& fits) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ArmFit& f : fits) {
        nlohmann::json j;
        j["kappa"] = f.kappa;
        j["method"] = arm_name(f.arm);
        if (f.ok) {
            j["theta_star"] = f.theta_star;
            j["beta"] = f.beta;
            j["residual"] = f.residual;
        } else {
            j["degenerate"] = true;
        }
        arr.push_back(j);
    }
    std::ofstream f = open_out(path);
    f << arr.dump(2) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

void write_report_json(const std::string& path, const std::string& method, std::size_t n,
                       double delta, const ReconstructionReport& report,
                       const std::string& solution_path) {
    nlohmann::json j;
    j["method"] = method;
    j["n"] = n;
    j["delta"] = delta;
    j["iterations"] = report.iterations;
    j["eta"] = report.final_step;
    j["epsilon"] = report.deviation;
    j["converged"] = report.converged;
    j["solution"] = solution_path;
    std::ofstream f = open_out(path);
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed: " + path);
}

std::uint64_t config_hash(const std::string& canonical_json) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical_json) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace ibnet
