#include "hyreach/value_field.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>

#include "hyreach/errors.hpp"
#include "hyreach/util.hpp"

namespace hyreach {

namespace {
constexpr char kMagic[8] = {'H', 'Y', 'R', 'F', 'L', 'D', '0', '1'};

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in, const char* what) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw ConfigError(std::string("value-field file truncated while reading ") + what);
    return v;
}
}  // namespace

ValueField::ValueField(StateGrid grid) : grid_(std::move(grid)) {}

double* ValueField::add_layer() {
    layers_.emplace_back(grid_.nodes_per_layer(), 0.0);
    return layers_.back().data();
}

double ValueField::min_over_modes(int k, int i1, int i2) const {
    const double* lay = layer(k);
    double best = lay[grid_.index(i1, i2, 0, 0)];
    for (int q = 0; q < StateGrid::nq; ++q)
        for (int ip = 0; ip < grid_.np(); ++ip)
            best = std::min(best, lay[grid_.index(i1, i2, q, ip)]);
    return best;
}

void ValueField::dump(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out.write(kMagic, sizeof kMagic);
    put<std::int32_t>(out, grid_.nx());
    put<std::int32_t>(out, grid_.np());
    put<std::int32_t>(out, stages());
    put<double>(out, grid_.x_lo());
    put<double>(out, grid_.dx());
    for (double p : grid_.p_nodes()) put<double>(out, p);
    for (const auto& lay : layers_)
        out.write(reinterpret_cast<const char*>(lay.data()),
                  static_cast<std::streamsize>(lay.size() * sizeof(double)));
    if (!out) throw ConfigError("failed while writing " + path.string());
}

ValueField ValueField::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    char magic[8];
    if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw ConfigError(path.string() + " is not a value-field dump");
    auto nx = get<std::int32_t>(in, "nx");
    auto np = get<std::int32_t>(in, "np");
    auto stages = get<std::int32_t>(in, "stage count");
    if (nx < 2 || np < 1 || stages < 1)
        throw ConfigError(path.string() + " has implausible dimensions");
    auto x_lo = get<double>(in, "x_lo");
    auto dx = get<double>(in, "dx");
    std::vector<double> p_nodes(np);
    for (auto& p : p_nodes) p = get<double>(in, "lock node");
    ValueField field(make_raw_grid(x_lo, dx, nx, std::move(p_nodes)));
    for (int k = 0; k < stages; ++k) {
        double* lay = field.add_layer();
        auto bytes = static_cast<std::streamsize>(field.grid_.nodes_per_layer() * sizeof(double));
        if (!in.read(reinterpret_cast<char*>(lay), bytes))
            throw ConfigError("value-field file truncated in layer " + std::to_string(k));
    }
    return field;
}

void ValueField::write_stage_csv(int k, std::ostream& out) const {
    const double* lay = layer(k);
    out << "x1,x2,q,p,v\n";
    for (int i1 = 0; i1 < grid_.nx(); ++i1)
        for (int i2 = 0; i2 < grid_.nx(); ++i2)
            for (int q = 0; q < StateGrid::nq; ++q)
                for (int ip = 0; ip < grid_.np(); ++ip)
                    out << format_roundtrip(grid_.x(i1)) << ',' << format_roundtrip(grid_.x(i2))
                        << ',' << q << ',' << format_roundtrip(grid_.p(ip)) << ','
                        << format_roundtrip(lay[grid_.index(i1, i2, q, ip)]) << '\n';
}

}  // namespace hyreach
