#include "plasma/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace plasma::csv {

namespace {

std::vector<std::vector<double>> read_table(std::istream& is, const std::string& header, std::size_t columns)
{
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError("csv: empty input, expected header '" + header + "'");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw ConfigError("csv: expected header '" + header + "', got '" + line + "'");
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw ConfigError("csv: line " + std::to_string(lineno) + ": cannot parse '" + cell + "'");
            row.push_back(v);
        }
        if (row.size() != columns)
            throw ConfigError("csv: line " + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                              " columns");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_potential(std::ostream& os, const Potential& q)
{
    os << "x,q\n";
    for (std::size_t i = 0; i < q.size(); ++i)
        os << format_double(q.node(i)) << ',' << format_double(q.samples()[i]) << '\n';
}

Potential read_potential(std::istream& is)
{
    const auto rows = read_table(is, "x,q", 2);
    std::vector<double> samples;
    samples.reserve(rows.size());
    for (const auto& r : rows)
        samples.push_back(r[1]);
    Potential q(std::move(samples));
    // abscissae must be the uniform grid on [-1, 1]
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (std::abs(rows[i][0] - q.node(i)) > 1e-9)
            throw ConfigError("csv: potential nodes must be uniform on [-1, 1] (row " + std::to_string(i + 1) + ")");
    return q;
}

void write_spectral(std::ostream& os, const ComplexSamples& s)
{
    os << "k,re,im\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        os << format_double(s.k[i]) << ',' << format_double(s.values[i].real()) << ','
           << format_double(s.values[i].imag()) << '\n';
}

ComplexSamples read_spectral(std::istream& is)
{
    const auto rows = read_table(is, "k,re,im", 3);
    std::vector<double> k;
    std::vector<cplx> v;
    for (const auto& r : rows) {
        k.push_back(r[0]);
        v.emplace_back(r[1], r[2]);
    }
    return ComplexSamples(std::move(k), std::move(v));
}

void write_boundary(std::ostream& os, const BoundaryData& d)
{
    os << "k,re_um,im_um,re_up,im_up\n";
    for (std::size_t i = 0; i < d.grid.size(); ++i)
        os << format_double(d.grid[i]) << ',' << format_double(d.u_minus[i].real()) << ','
           << format_double(d.u_minus[i].imag()) << ',' << format_double(d.u_plus[i].real()) << ','
           << format_double(d.u_plus[i].imag()) << '\n';
}

BoundaryData read_boundary(std::istream& is, double k_min_floor)
{
    const auto rows = read_table(is, "k,re_um,im_um,re_up,im_up", 5);
    std::vector<double> k;
    std::vector<cplx> um, up;
    for (const auto& r : rows) {
        k.push_back(r[0]);
        um.emplace_back(r[1], r[2]);
        up.emplace_back(r[3], r[4]);
    }
    return BoundaryData(KGrid(std::move(k), k_min_floor), std::move(um), std::move(up));
}

Potential load_potential(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open potential file " + path.string());
    return read_potential(in);
}

BoundaryData load_boundary(const std::filesystem::path& path, double k_min_floor)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open boundary data file " + path.string());
    return read_boundary(in, k_min_floor);
}

}  // namespace plasma::csv
