#include "mkdv/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "binary slice format assumes a little-endian host");

namespace mkdv {

std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_slice_csv(std::ostream& os, const FieldSlice& s) {
    os << "# t = " << fmt_g17(s.t) << "\n";
    os << "x,q\n";
    for (size_t i = 0; i < s.x.size(); ++i)
        os << fmt_g17(s.x[i]) << ',' << fmt_g17(s.q[i]) << '\n';
}

FieldSlice read_slice_csv(std::istream& is) {
    FieldSlice s;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) s.t = std::stod(line.substr(eq + 1));
            continue;
        }
        if (line == "x,q" || line.rfind("x,", 0) == 0 && !std::isdigit(line[2]) &&
                                 line[2] != '-' && line[2] != '+')
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        s.x.push_back(std::stod(line.substr(0, comma)));
        s.q.push_back(std::stod(line.substr(comma + 1)));
    }
    if (s.x.empty()) throw std::runtime_error("read_slice_csv: no data rows");
    return s;
}

namespace {
constexpr char kMagic[5] = {'M', 'K', 'D', 'V', '1'};
}

void write_slice_binary(std::ostream& os, const FieldSlice& s) {
    os.write(kMagic, 5);
    const uint64_t n = s.x.size();
    os.write(reinterpret_cast<const char*>(&n), 8);
    const double t = s.t, x0 = s.x.empty() ? 0.0 : s.x.front();
    const double dx = s.x.size() > 1 ? s.x[1] - s.x[0] : 0.0;
    os.write(reinterpret_cast<const char*>(&t), 8);
    os.write(reinterpret_cast<const char*>(&x0), 8);
    os.write(reinterpret_cast<const char*>(&dx), 8);
    os.write(reinterpret_cast<const char*>(s.q.data()), 8 * static_cast<std::streamsize>(n));
}

FieldSlice read_slice_binary(std::istream& is) {
    char magic[5];
    is.read(magic, 5);
    if (!is || std::memcmp(magic, kMagic, 5) != 0)
        throw std::runtime_error("read_slice_binary: bad magic");
    uint64_t n = 0;
    double t, x0, dx;
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&t), 8);
    is.read(reinterpret_cast<char*>(&x0), 8);
    is.read(reinterpret_cast<char*>(&dx), 8);
    FieldSlice s;
    s.t = t;
    s.x.resize(n);
    s.q.resize(n);
    for (uint64_t i = 0; i < n; ++i) s.x[i] = x0 + dx * static_cast<double>(i);
    is.read(reinterpret_cast<char*>(s.q.data()), 8 * static_cast<std::streamsize>(n));
    if (!is) throw std::runtime_error("read_slice_binary: truncated file");
    return s;
}

void write_slice_file(const std::string& path, const FieldSlice& s, bool binary) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    binary ? write_slice_binary(os, s) : write_slice_csv(os, s);
}

FieldSlice read_slice_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    char magic[5] = {};
    is.read(magic, 5);
    is.seekg(0);
    if (std::memcmp(magic, kMagic, 5) == 0) return read_slice_binary(is);
    return read_slice_csv(is);
}

void write_signgrid_csv(std::ostream& os, const SignGrid& g) {
    os << fmt_g17(g.re_min) << ',' << fmt_g17(g.re_max) << ',' << fmt_g17(g.im_min)
       << ',' << fmt_g17(g.im_max) << ',' << g.nx << ',' << g.ny << '\n';
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            if (ix) os << ',';
            os << g.at(ix, iy);
        }
        os << '\n';
    }
}

}  // namespace mkdv
