#include "hetstrip/io/field_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hetstrip::io {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double header_value(const std::string& header, const std::string& key) {
    const std::string tok = key + "=";
    const auto pos = header.find(tok);
    if (pos == std::string::npos)
        throw std::runtime_error("field csv: missing header entry '" + key + "'");
    return std::strtod(header.c_str() + pos + tok.size(), nullptr);
}

}  // namespace

void write_field_csv(const std::string& path, const strip::Field& f) {
    const strip::Grid& g = f.grid;
    std::ostringstream os;
    os << "# T=" << g17(g.T) << ", nx=" << g.nx << ", ny=" << g.ny << ", alpha="
       << g17(g.clamp_left) << ", beta=" << g17(g.clamp_right) << "\n";
    os << "x,y,u\n";
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            os << g17(g.x(i)) << ',' << g17(g.y(j)) << ',' << g17(f.at(i, j)) << "\n";
    write_text(path, os.str());
}

strip::Field read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("field csv: cannot open '" + path + "'");
    std::string line, header;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#')
            header += line;
        else
            break;  // the "x,y,u" column line
    }
    const double T = header_value(header, "T");
    const int nx = static_cast<int>(header_value(header, "nx"));
    const int ny = static_cast<int>(header_value(header, "ny"));
    const double alpha = header_value(header, "alpha");
    const double beta = header_value(header, "beta");
    strip::Field f(strip::Grid(T, nx, ny, alpha, beta));

    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            if (!std::getline(in, line))
                throw std::runtime_error("field csv: truncated file '" + path + "'");
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw std::runtime_error("field csv: malformed row in '" + path + "'");
            f.at(i, j) = std::strtod(line.c_str() + c2 + 1, nullptr);
        }
    return f;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace hetstrip::io
