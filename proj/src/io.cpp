#include "bf/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bf/stft.hpp"

namespace bf {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint32_t get_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
    std::ofstream os(path, mode);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_signal(const std::string& path, const GridSignal& f) {
    std::ofstream os = open_out(path, std::ios::binary);
    os.write("BFGS", 4);
    put_u32(os, 1);
    put_u32(os, static_cast<std::uint32_t>(f.grid.dim));
    put_u32(os, static_cast<std::uint32_t>(f.grid.count));
    char domain = static_cast<char>(f.domain);
    os.write(&domain, 1);
    for (double s : f.grid.spacing) put_f64(os, s);
    for (double o : f.grid.origin) put_f64(os, o);
    for (const cplx& v : f.values) {
        put_f64(os, v.real());
        put_f64(os, v.imag());
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

GridSignal read_grid_signal(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "BFGS", 4) != 0)
        throw std::runtime_error("not a grid-signal container: " + path);
    if (get_u32(is) != 1) throw std::runtime_error("unsupported container version");
    const int dim = static_cast<int>(get_u32(is));
    const int count = static_cast<int>(get_u32(is));
    char domain = 0;
    is.read(&domain, 1);
    if (dim < 1 || dim > 16 || count < 2)
        throw std::runtime_error("corrupt container header: " + path);
    UniformGrid grid;
    grid.dim = dim;
    grid.count = count;
    grid.spacing.resize(dim);
    grid.origin.resize(dim);
    for (int i = 0; i < dim; ++i) grid.spacing[i] = get_f64(is);
    for (int i = 0; i < dim; ++i) grid.origin[i] = get_f64(is);
    GridSignal f;
    f.grid = grid;
    f.domain = static_cast<Domain>(domain);
    f.values.resize(grid.total());
    for (cplx& v : f.values) {
        double re = get_f64(is);
        double im = get_f64(is);
        v = cplx{re, im};
    }
    if (!is) throw std::runtime_error("truncated container: " + path);
    return f;
}

void write_points_csv(const std::string& path, const SeparatedSet& set) {
    std::ofstream os = open_out(path, std::ios::out);
    for (const auto& p : set.points) {
        for (int i = 0; i < set.dim; ++i) {
            if (i) os << ',';
            os << format_double(p[i]);
        }
        os << '\n';
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

SeparatedSet read_points_csv(const std::string& path, int dim) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<std::vector<double>> pts;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> p;
        std::stringstream ss(line);
        std::string cellv;
        while (std::getline(ss, cellv, ',')) p.push_back(std::stod(cellv));
        if (static_cast<int>(p.size()) != dim)
            throw std::runtime_error("bad point dimension in " + path);
        pts.push_back(std::move(p));
    }
    return make_separated_set(dim, std::move(pts));
}

void write_signal_csv(const std::string& path, const GridSignal& f) {
    std::ofstream os = open_out(path, std::ios::out);
    for (int i = 0; i < f.grid.dim; ++i) os << 'x' << i << ',';
    os << "re,im\n";
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        std::vector<double> p = f.grid.point(flat);
        for (double c : p) os << format_double(c) << ',';
        os << format_double(f.values[flat].real()) << ','
           << format_double(f.values[flat].imag()) << '\n';
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

void write_stft_csv(const std::string& path, const STFTField& V) {
    std::ofstream os = open_out(path, std::ios::out);
    const int d = V.time_grid.dim;
    for (int i = 0; i < d; ++i) os << 'x' << i << ',';
    for (int i = 0; i < d; ++i) os << "omega" << i << ',';
    os << "re,im,abs\n";
    const std::size_t N = V.time_grid.total();
    for (std::size_t xf = 0; xf < N; ++xf) {
        std::vector<double> x = V.time_grid.point(xf);
        for (std::size_t wf = 0; wf < N; ++wf) {
            std::vector<double> w = V.freq_grid.point(wf);
            const cplx v = V.values[xf * N + wf];
            for (double c : x) os << format_double(c) << ',';
            for (double c : w) os << format_double(c) << ',';
            os << format_double(v.real()) << ',' << format_double(v.imag())
               << ',' << format_double(std::abs(v)) << '\n';
        }
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

void write_stft_container(const std::string& path, const STFTField& V) {
    const int d = V.time_grid.dim;
    GridSignal packed;
    packed.grid.dim = 2 * d;
    packed.grid.count = V.time_grid.count;
    packed.grid.spacing = V.time_grid.spacing;
    packed.grid.spacing.insert(packed.grid.spacing.end(),
                               V.freq_grid.spacing.begin(),
                               V.freq_grid.spacing.end());
    packed.grid.origin.assign(2 * d, 0.0);
    packed.domain = Domain::phase_space;
    packed.values = V.values;
    write_grid_signal(path, packed);
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    std::ofstream os = open_out(path, std::ios::out);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace bf
