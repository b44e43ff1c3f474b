#include "hyreach/profile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hyreach/errors.hpp"
#include "hyreach/util.hpp"

namespace hyreach {

DrivingProfile::DrivingProfile(std::vector<ProfileLink> links) : links_(std::move(links)) {
    cum_time_.resize(links_.size() + 1, 0.0);
    cum_dist_.resize(links_.size() + 1, 0.0);
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const ProfileLink& l = links_[i];
        if (!(l.distance_m > 0))
            throw ConfigError("link " + std::to_string(l.index) + ": distance must be > 0");
        if (!(l.speed_mps > 0))
            throw ConfigError("link " + std::to_string(l.index) + ": speed must be > 0");
        cum_time_[i + 1] = cum_time_[i] + l.dt_s();
        cum_dist_[i + 1] = cum_dist_[i] + l.distance_m;
    }
}

DrivingProfile DrivingProfile::head(int n) const {
    if (n < 1 || n > stage_count())
        throw ConfigError("head(" + std::to_string(n) + ") out of range for a " +
                          std::to_string(stage_count()) + "-link profile");
    return DrivingProfile(std::vector<ProfileLink>(links_.begin(), links_.begin() + n));
}

static constexpr const char* kHeader = "k,d_m,sigma_mps";

DrivingProfile parse_profile(std::istream& in, const std::string& origin) {
    std::string raw;
    {
        std::ostringstream buf;
        buf << in.rdbuf();
        raw = buf.str();
    }
    if (raw.find('\r') != std::string::npos)
        throw ConfigError(origin + ": carriage return found; the route CSV must use LF line endings");

    std::vector<ProfileLink> links;
    int lineno = 0;
    for (std::string_view rest = raw; !rest.empty() || lineno == 0;) {
        std::size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
        ++lineno;
        if (lineno == 1) {
            if (trim(line) != kHeader)
                throw ConfigError(origin + " line 1: expected header '" + kHeader + "', got '" +
                                  std::string(trim(line)) + "'");
            continue;
        }
        if (trim(line).empty()) {
            if (rest.empty()) break;  // single trailing newline is fine
            throw ConfigError(origin + " line " + std::to_string(lineno) + ": blank line inside the table");
        }
        auto cols = split(line, ',');
        const std::string where = origin + " line " + std::to_string(lineno);
        if (cols.size() != 3)
            throw ConfigError(where + ": expected 3 columns, got " + std::to_string(cols.size()));
        ProfileLink l;
        l.index = static_cast<int>(parse_long(cols[0], where + " column k"));
        l.source_index = l.index;
        l.distance_m = parse_double(cols[1], where + " column d_m");
        l.speed_mps = parse_double(cols[2], where + " column sigma_mps");
        int expected = static_cast<int>(links.size()) + 1;
        if (l.index != expected)
            throw ConfigError(where + ": expected link index " + std::to_string(expected) +
                              ", got " + std::to_string(l.index));
        if (!(l.distance_m > 0))
            throw ConfigError(where + ": distance must be > 0 (link " + std::to_string(l.index) + ")");
        if (!(l.speed_mps > 0))
            throw ConfigError(where + ": speed must be > 0 (link " + std::to_string(l.index) + ")");
        links.push_back(l);
    }
    if (links.empty())
        throw ConfigError(origin + ": no links in route CSV");
    return DrivingProfile(std::move(links));
}

DrivingProfile load_profile(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open route CSV '" + csv_path.string() + "'");
    return parse_profile(in, csv_path.filename().string());
}

void save_profile(const DrivingProfile& profile, std::ostream& out) {
    out << kHeader << '\n';
    for (const ProfileLink& l : profile.links())
        out << l.index << ',' << format_roundtrip(l.distance_m) << ','
            << format_roundtrip(l.speed_mps) << '\n';
}

void save_profile(const DrivingProfile& profile, const std::filesystem::path& csv_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write route CSV '" + csv_path.string() + "'");
    save_profile(profile, out);
}

DrivingProfile constant_profile(int count, double distance_m, double speed_mps) {
    if (count < 1) throw ConfigError("constant profile needs at least 1 link");
    std::vector<ProfileLink> links(count);
    for (int i = 0; i < count; ++i) links[i] = ProfileLink{i + 1, i + 1, distance_m, speed_mps};
    return DrivingProfile(std::move(links));
}

DrivingProfile subdivide(const DrivingProfile& profile, double max_step_s) {
    if (max_step_s <= 0) return profile;
    std::vector<ProfileLink> out;
    for (const ProfileLink& l : profile.links()) {
        int n = 1;
        if (l.dt_s() > max_step_s)
            n = static_cast<int>(std::ceil(l.dt_s() / max_step_s - 1e-12));
        for (int j = 0; j < n; ++j)
            out.push_back(ProfileLink{static_cast<int>(out.size()) + 1, l.source_index,
                                      l.distance_m / n, l.speed_mps});
    }
    return DrivingProfile(std::move(out));
}

}  // namespace hyreach
