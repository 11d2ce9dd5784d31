#include "field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "config.hpp"

namespace vortexball::cli {

namespace {

constexpr std::array<char, 4> kMagic{'G', 'L', 'F', '1'};
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 28;

template <class T>
void put(std::ostream& out, T v) {
    std::array<char, sizeof(T)> b;
    std::memcpy(b.data(), &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
    out.write(b.data(), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    std::array<char, sizeof(T)> b;
    if (!in.read(b.data(), sizeof(T))) throw IoError("field file truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(b.begin(), b.end());
    T v;
    std::memcpy(&v, b.data(), sizeof(T));
    return v;
}

}  // namespace

void write_field(const ComplexField& f, std::ostream& out) {
    out.write(kMagic.data(), kMagic.size());
    put<std::uint64_t>(out, f.grid.nx);
    put<std::uint64_t>(out, f.grid.ny);
    put(out, f.grid.origin.x);
    put(out, f.grid.origin.y);
    put(out, f.grid.width);
    put(out, f.grid.height);
    put(out, f.eps);
    for (const cplx& z : f.u) {
        put(out, z.real());
        put(out, z.imag());
    }
    put<std::uint8_t>(out, f.A.empty() ? 0 : 1);
    for (const Vec2& a : f.A) {
        put(out, a.x);
        put(out, a.y);
    }
    if (!out) throw IoError("failed writing field");
}

ComplexField read_field(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw IoError("not a GLF1 field file");
    ComplexField f;
    const auto nx = get<std::uint64_t>(in), ny = get<std::uint64_t>(in);
    if (nx < 3 || ny < 3 || nx > kMaxCells || ny > kMaxCells || nx * ny > kMaxCells)
        throw IoError("field file has invalid grid dimensions");
    f.grid.nx = nx;
    f.grid.ny = ny;
    f.grid.origin.x = get<double>(in);
    f.grid.origin.y = get<double>(in);
    f.grid.width = get<double>(in);
    f.grid.height = get<double>(in);
    f.eps = get<double>(in);
    f.u.resize(nx * ny);
    for (cplx& z : f.u) {
        const double re = get<double>(in);
        z = {re, get<double>(in)};
    }
    const auto flag = get<std::uint8_t>(in);
    if (flag > 1) throw IoError("field file has invalid vector-potential flag");
    if (flag == 1) {
        f.A.resize(nx * ny);
        for (Vec2& a : f.A) {
            a.x = get<double>(in);
            a.y = get<double>(in);
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) throw IoError("field file has trailing bytes");
    try {
        f.validate();
    } catch (const std::exception& e) {
        throw IoError(std::string("field file invalid: ") + e.what());
    }
    return f;
}

void save_field(const ComplexField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write field file '" + path + "'");
    write_field(f, out);
}

ComplexField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open field file '" + path + "'");
    return read_field(in);
}

}  // namespace vortexball::cli
