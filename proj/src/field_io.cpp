#include "lplab/field_io.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace lplab {

namespace {
constexpr char kMagic[16] = {'L', 'P', 'F', '1', '\0', 'v', '1', '\0',
                             '\0', '\0', '\0', '\0', '\0', '\0', '\0', '\0'};

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}
} // namespace

void write_lpf1(const std::string& path, const SpectralField& f,
                const std::string& provenance) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_lpf1: cannot open " + path);
    os.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().dim));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid().n));
    put<double>(os, f.grid().box_len);
    put<std::uint8_t>(os, f.mean_zero() ? 1 : 0);
    for (const auto& c : f.coef()) {
        put<double>(os, c.real());
        put<double>(os, c.imag());
    }
    if (!os) throw std::runtime_error("write_lpf1: write failed for " + path);

    nlohmann::json side;
    side["format"] = "LPF1";
    side["dim"] = f.grid().dim;
    side["n"] = f.grid().n;
    side["box_len"] = f.grid().box_len;
    side["mean_zero"] = f.mean_zero();
    side["provenance"] = provenance.empty() ? "lplab" : provenance;
    std::ofstream js(path + ".json");
    js << side.dump(2) << "\n";
}

SpectralField read_lpf1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_lpf1: cannot open " + path);
    char magic[16];
    is.read(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("read_lpf1: bad magic in " + path);
    auto dim = take<std::uint32_t>(is);
    auto n = take<std::uint32_t>(is);
    auto box = take<double>(is);
    auto mz = take<std::uint8_t>(is);
    Grid g(static_cast<int>(dim), static_cast<int>(n), box);
    std::vector<cplx> coef(g.size());
    for (auto& c : coef) {
        double re = take<double>(is);
        double im = take<double>(is);
        c = cplx{re, im};
    }
    if (!is) throw std::runtime_error("read_lpf1: truncated file " + path);
    return SpectralField(g, std::move(coef), mz != 0);
}

} // namespace lplab
