#include "hyreach/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "hyreach/errors.hpp"
#include "hyreach/util.hpp"

namespace hyreach {

namespace {

bool parse_bool(std::string_view tok, const std::string& what) {
    tok = trim(tok);
    if (tok == "true") return true;
    if (tok == "false") return false;
    throw ConfigError(what + ": expected 'true' or 'false', got '" + std::string(tok) + "'");
}

std::vector<double> parse_numbers(std::string_view val, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < val.size()) {
        while (pos < val.size() && (val[pos] == ' ' || val[pos] == '\t')) ++pos;
        std::size_t end = pos;
        while (end < val.size() && val[end] != ' ' && val[end] != '\t') ++end;
        if (end > pos) out.push_back(parse_double(val.substr(pos, end - pos), what));
        pos = end;
    }
    if (out.empty()) throw ConfigError(what + ": expected at least one number");
    return out;
}

std::array<double, 2> parse_pair(std::string_view val, const std::string& what) {
    auto nums = parse_numbers(val, what);
    if (nums.size() != 2) throw ConfigError(what + ": expected exactly two numbers");
    return {nums[0], nums[1]};
}

int parse_int(std::string_view val, const std::string& what) {
    return static_cast<int>(parse_long(val, what));
}

void set_key(RunConfig& c, const std::string& section, const std::string& key,
             std::string_view val, const std::string& where) {
    const std::string what = where + " [" + section + "] " + key;
    if (section == "model") {
        if (key == "type") {
            std::string t(trim(val));
            if (t != "constant" && t != "table")
                throw ConfigError(what + ": unknown model type '" + t + "'");
            c.model_type = t;
        } else if (key == "a_x")
            c.params.a_x = parse_double(val, what);
        else if (key == "a_y")
            c.params.a_y = parse_double(val, what);
        else if (key == "u_max")
            c.params.u_max = parse_double(val, what);
        else if (key == "delta_s")
            c.params.delta_s = parse_double(val, what);
        else if (key == "n_u")
            c.params.n_u = parse_int(val, what);
        else if (key == "tank_capacity_l")
            c.params.tank_capacity_l = parse_double(val, what);
        else if (key == "fuel_price_eur_per_l")
            c.params.fuel_price_eur_per_l = parse_double(val, what);
        else if (key == "demand_per_link")
            c.table.demand_per_link = parse_numbers(val, what);
        else if (key == "conv_soc")
            c.table.conv_soc = parse_double(val, what);
        else if (key == "conv_fuel")
            c.table.conv_fuel = parse_double(val, what);
        else
            throw ConfigError(what + ": unknown key");
    } else if (section == "levelset") {
        if (key == "dx")
            c.grid.dx = parse_double(val, what);
        else if (key == "dp")
            c.grid.dp = parse_double(val, what);
        else if (key == "domain_lo")
            c.grid.domain_lo = parse_double(val, what);
        else if (key == "domain_hi")
            c.grid.domain_hi = parse_double(val, what);
        else if (key == "x0_center")
            c.grid.x0_center = parse_pair(val, what);
        else if (key == "x0_radius")
            c.grid.x0_radius = parse_double(val, what);
        else if (key == "box_lo")
            c.box.lo = parse_pair(val, what);
        else if (key == "box_hi")
            c.box.hi = parse_pair(val, what);
        else
            throw ConfigError(what + ": unknown key");
    } else if (section == "profile") {
        if (key == "path")
            c.profile_path = std::string(trim(val));
        else if (key == "count")
            c.profile_count = parse_int(val, what);
        else if (key == "distance_m")
            c.profile_distance_m = parse_double(val, what);
        else if (key == "speed_mps")
            c.profile_speed_mps = parse_double(val, what);
        else if (key == "max_step_s")
            c.max_step_s = parse_double(val, what);
        else
            throw ConfigError(what + ": unknown key");
    } else if (section == "dp") {
        if (key == "parallel")
            c.parallel = parse_bool(val, what);
        else if (key == "threads")
            c.threads = parse_int(val, what);
        else if (key == "stop_when_empty")
            c.stop_when_empty = parse_bool(val, what);
        else
            throw ConfigError(what + ": unknown key");
    } else if (section == "synth") {
        if (key == "target_stage")
            c.target_stage = parse_int(val, what);
        else if (key == "target") {
            auto nums = parse_numbers(val, what);
            if (nums.size() != 4)
                throw ConfigError(what + ": expected 'x1 x2 q p' (four numbers)");
            if (nums[2] != 0.0 && nums[2] != 1.0)
                throw ConfigError(what + ": mode must be 0 or 1");
            c.target = HybridPoint{{nums[0], nums[1]}, static_cast<Mode>(nums[2]), nums[3]};
            c.has_target = true;
        } else if (key == "value_slack")
            c.value_slack = parse_double(val, what);
        else
            throw ConfigError(what + ": unknown key");
    } else if (section == "output") {
        if (key == "dir")
            c.output_dir = std::string(trim(val));
        else
            throw ConfigError(what + ": unknown key");
    } else {
        throw ConfigError(where + ": unknown section [" + section + "]");
    }
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& origin) {
    RunConfig cfg;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = origin + " line " + std::to_string(lineno);
        if (!line.empty() && line.back() == '\r')
            throw ConfigError(where + ": config files must use LF line endings");
        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#' || s.front() == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = std::string(trim(s.substr(1, s.size() - 2)));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            static constexpr std::string_view known[] = {"model",   "levelset", "profile",
                                                         "dp",      "synth",    "output"};
            if (std::find(std::begin(known), std::end(known), section) == std::end(known))
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected 'key = value'");
        std::string key(trim(s.substr(0, eq)));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (section.empty())
            throw ConfigError(where + ": key '" + key + "' appears before any [section]");
        set_key(cfg, section, key, s.substr(eq + 1), where);
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in, path.string());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const std::string where = "override '" + assignment + "'";
    std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError(where + ": expected section.key=value");
    std::string_view lhs = trim(std::string_view(assignment).substr(0, eq));
    std::size_t dot = lhs.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == lhs.size())
        throw ConfigError(where + ": expected section.key=value");
    set_key(cfg, std::string(lhs.substr(0, dot)), std::string(lhs.substr(dot + 1)),
            std::string_view(assignment).substr(eq + 1), where);
}

DrivingProfile build_profile(const RunConfig& cfg, const std::filesystem::path& base_dir) {
    if (!cfg.profile_path.empty() && cfg.profile_count > 0)
        throw ConfigError("[profile] gives both a path and a constant route; pick one");
    DrivingProfile prof = [&] {
        if (!cfg.profile_path.empty()) {
            std::filesystem::path p = cfg.profile_path;
            if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
            return load_profile(p);
        }
        if (cfg.profile_count > 0)
            return constant_profile(cfg.profile_count, cfg.profile_distance_m,
                                    cfg.profile_speed_mps);
        throw ConfigError("[profile] needs either path or count/distance_m/speed_mps");
    }();
    return subdivide(prof, cfg.max_step_s);
}

std::unique_ptr<HybridSystemModel> build_model(const RunConfig& cfg) {
    cfg.params.validate();  // hard errors throw; warnings are the caller's business
    if (cfg.model_type == "constant") return toy_vehicle(cfg.params);
    return parametric_vehicle(cfg.params, cfg.table);
}

}  // namespace hyreach
