#include "tubewf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tubewf::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_signal_csv(const fs::path& path, const GridSignal& f) {
    std::ostringstream out;
    out << kCsvVersionLine << "\n";
    out << "dim,n,spacing,origin\n";
    out << f.dim << "," << f.n << "," << format_double(f.spacing) << ",";
    if (f.dim == 1)
        out << format_double(f.origin[0]);
    else
        out << format_double(f.origin[0]) << ";" << format_double(f.origin[1]);
    out << "\n";
    out << "re,im\n";
    for (const auto& v : f.samples)
        out << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
    write_text_atomic(path, out.str());
}

GridSignal read_signal_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    std::string line;
    std::getline(in, line);  // version
    if (line.rfind("# tubewf-csv", 0) != 0)
        throw std::runtime_error("not a tubewf csv: " + path.string());
    std::getline(in, line);  // header names
    std::getline(in, line);  // header values
    int dim = 0, n = 0;
    double spacing = 0;
    Vec2 origin{0, 0};
    {
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        dim = std::stoi(field);
        std::getline(row, field, ',');
        n = std::stoi(field);
        std::getline(row, field, ',');
        spacing = std::stod(field);
        std::getline(row, field, ',');
        const auto semi = field.find(';');
        if (semi == std::string::npos) {
            origin[0] = std::stod(field);
        } else {
            origin[0] = std::stod(field.substr(0, semi));
            origin[1] = std::stod(field.substr(semi + 1));
        }
    }
    std::getline(in, line);  // "re,im"
    GridSignal f = GridSignal::make(dim, n, spacing, origin);
    for (auto& v : f.samples) {
        if (!std::getline(in, line)) throw std::runtime_error("truncated csv: " + path.string());
        const auto comma = line.find(',');
        v = cplx(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    return f;
}

void write_signal_bin(const fs::path& path, const GridSignal& f) {
    std::string blob;
    const double header[8] = {1.0, double(f.dim), double(f.n), f.spacing,
                              f.origin[0], f.origin[1], 0.0, 0.0};
    blob.append(reinterpret_cast<const char*>(header), sizeof(header));
    std::vector<float> pairs;
    pairs.reserve(2 * f.samples.size());
    for (const auto& v : f.samples) {
        pairs.push_back(static_cast<float>(v.real()));
        pairs.push_back(static_cast<float>(v.imag()));
    }
    blob.append(reinterpret_cast<const char*>(pairs.data()), pairs.size() * sizeof(float));
    write_text_atomic(path, blob);
}

GridSignal read_signal_bin(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    double header[8];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in || header[0] != 1.0) throw std::runtime_error("bad binary header: " + path.string());
    GridSignal f = GridSignal::make(int(header[1]), int(header[2]), header[3],
                                    Vec2{header[4], header[5]});
    std::vector<float> pairs(2 * f.samples.size());
    in.read(reinterpret_cast<char*>(pairs.data()),
            static_cast<std::streamsize>(pairs.size() * sizeof(float)));
    if (!in) throw std::runtime_error("truncated binary: " + path.string());
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        f.samples[i] = cplx(pairs[2 * i], pairs[2 * i + 1]);
    return f;
}

void write_pgm(const fs::path& path, int rows, int cols,
               const std::vector<double>& values, bool log_scale,
               double* out_min, double* out_max) {
    if (values.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("write_pgm: size mismatch");
    double lo = values.empty() ? 0 : values[0];
    double hi = lo;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (out_min) *out_min = lo;
    if (out_max) *out_max = hi;

    auto mapped = [&](double v) -> double {
        if (!log_scale) return v;
        // Floor tiny values 12 decades below the peak.
        const double floor_v = hi > 0 ? hi * 1e-12 : 1e-300;
        return std::log10(std::max(v, floor_v));
    };
    const double mlo = mapped(log_scale ? std::max(lo, hi > 0 ? hi * 1e-12 : 1e-300) : lo);
    const double mhi = mapped(hi);
    const double span = (mhi > mlo) ? (mhi - mlo) : 1.0;

    std::ostringstream out;
    out << "P2\n" << cols << " " << rows << "\n255\n";
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double v = mapped(values[static_cast<std::size_t>(r) * cols + c]);
            int g = static_cast<int>(std::lround(255.0 * (v - mlo) / span));
            g = std::clamp(g, 0, 255);
            out << g << (c + 1 == cols ? "" : " ");
        }
        out << "\n";
    }
    write_text_atomic(path, out.str());
}

}  // namespace tubewf::io
