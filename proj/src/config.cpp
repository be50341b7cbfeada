#include "tmalab/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "tmalab/errors.hpp"

namespace tmalab {

namespace {

struct Entry {
    int line = 0;
    std::string key;
    std::string value;
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Entry> read_entries(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::vector<Entry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        std::size_t eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        Entry entry;
        entry.line = line_no;
        entry.key = trim(text.substr(0, eq));
        entry.value = trim(text.substr(eq + 1));
        if (entry.key.empty() || entry.value.empty()) {
            throw ConfigError("empty key or value", line_no);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

double parse_double(const Entry& e, const std::string& token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("bad number '" + token + "' for key '" + e.key + "'", e.line);
    }
    return value;
}

int parse_int(const Entry& e, const std::string& token) {
    int value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("bad integer '" + token + "' for key '" + e.key + "'", e.line);
    }
    return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

OwnshipLeg parse_leg(const Entry& e) {
    OwnshipLeg leg;
    bool have_course = false, have_speed = false, have_duration = false;
    for (const std::string& token : split(e.value, ' ')) {
        std::size_t eq = token.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("leg fields must look like course_deg=100", e.line);
        }
        std::string key = token.substr(0, eq);
        std::string value = token.substr(eq + 1);
        if (key == "course_deg") {
            leg.course = CourseDeg(parse_double(e, value));
            have_course = true;
        } else if (key == "speed_mps") {
            leg.speed = parse_double(e, value);
            have_speed = true;
        } else if (key == "duration_s") {
            leg.duration = parse_double(e, value);
            have_duration = true;
        } else {
            throw ConfigError("unknown leg field '" + key + "'", e.line);
        }
    }
    if (!have_course || !have_speed || !have_duration) {
        throw ConfigError("leg needs course_deg, speed_mps and duration_s", e.line);
    }
    return leg;
}

/// Expands "lo:hi:step" with the same inclusive rule as the search grids.
std::vector<double> expand_range(const Entry& e) {
    std::vector<std::string> parts = split(e.value, ':');
    if (parts.size() != 3) {
        throw ConfigError("range must look like lo:hi:step", e.line);
    }
    double lo = parse_double(e, parts[0]);
    double hi = parse_double(e, parts[1]);
    double step = parse_double(e, parts[2]);
    if (!(step > 0.0) || hi < lo) {
        throw ConfigError("range needs step > 0 and hi >= lo", e.line);
    }
    std::vector<double> values;
    for (std::size_t i = 0;; ++i) {
        double v = lo + static_cast<double>(i) * step;
        if (v > hi + step / 2.0) {
            break;
        }
        values.push_back(v);
    }
    return values;
}

void expect_type(const std::vector<Entry>& entries, const std::string& want,
                 const std::string& path) {
    for (const Entry& e : entries) {
        if (e.key == "type") {
            if (e.value != want) {
                throw ConfigError("config type is '" + e.value + "', expected '" + want + "'",
                                  e.line);
            }
            return;
        }
    }
    throw ConfigError("missing 'type = " + want + "' in " + path);
}

} // namespace

Scenario load_scenario_file(const std::string& path) {
    std::vector<Entry> entries = read_entries(path);
    expect_type(entries, "scenario", path);

    Scenario scenario;
    std::map<std::string, bool> seen;
    for (const Entry& e : entries) {
        if (e.key == "type") {
            continue;
        }
        if (e.key == "leg") {
            scenario.legs.push_back(parse_leg(e));
            continue;
        }
        if (seen[e.key]) {
            throw ConfigError("duplicate key '" + e.key + "'", e.line);
        }
        seen[e.key] = true;
        if (e.key == "b0_deg") {
            scenario.b0 = BearingDeg(parse_double(e, e.value));
        } else if (e.key == "target_r0_m") {
            scenario.target.r0 = parse_double(e, e.value);
        } else if (e.key == "target_course_deg") {
            scenario.target.course = CourseDeg(parse_double(e, e.value));
        } else if (e.key == "target_speed_mps") {
            scenario.target.speed = parse_double(e, e.value);
        } else if (e.key == "ownship_start_x_m") {
            scenario.ownship_start.x = parse_double(e, e.value);
        } else if (e.key == "ownship_start_y_m") {
            scenario.ownship_start.y = parse_double(e, e.value);
        } else if (e.key == "ts_s") {
            scenario.ts = parse_double(e, e.value);
        } else if (e.key == "n_samples") {
            scenario.n = parse_int(e, e.value);
        } else if (e.key == "noise_sigma_deg") {
            scenario.noise_sigma = parse_double(e, e.value);
        } else {
            throw ConfigError("unknown key '" + e.key + "'", e.line);
        }
    }
    for (const char* required : {"b0_deg", "target_r0_m", "target_course_deg",
                                 "target_speed_mps", "ts_s", "n_samples", "noise_sigma_deg"}) {
        if (!seen[required]) {
            throw ConfigError(std::string("missing required key '") + required + "' in " + path);
        }
    }
    try {
        scenario.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string(e.what()) + " (" + path + ")");
    }
    return scenario;
}

BiasFile load_bias_file(const std::string& path) {
    std::vector<Entry> entries = read_entries(path);
    expect_type(entries, "bias", path);

    BiasFile file;
    std::map<std::string, bool> seen;
    for (const Entry& e : entries) {
        if (e.key == "type") {
            continue;
        }
        if (seen[e.key]) {
            throw ConfigError("duplicate key '" + e.key + "'", e.line);
        }
        seen[e.key] = true;
        if (e.key == "r0_m") {
            file.config.r0 = parse_double(e, e.value);
        } else if (e.key == "b0_deg") {
            file.config.b0 = BearingDeg(parse_double(e, e.value));
        } else if (e.key == "target_course_deg") {
            file.config.target_course = CourseDeg(parse_double(e, e.value));
        } else if (e.key == "target_speed_mps") {
            file.config.target_speed = parse_double(e, e.value);
        } else if (e.key == "ownship_course_deg") {
            file.config.ownship_course = CourseDeg(parse_double(e, e.value));
        } else if (e.key == "ownship_speed_mps") {
            file.config.ownship_speed = parse_double(e, e.value);
        } else if (e.key == "ts_s") {
            file.config.ts = parse_double(e, e.value);
        } else if (e.key == "noise_sigma_deg") {
            file.config.noise_sigma = parse_double(e, e.value);
        } else if (e.key == "runs") {
            file.config.runs = parse_int(e, e.value);
        } else if (e.key == "sweep_r0_m") {
            if (!file.sweep_values.empty()) {
                throw ConfigError("sweep already defined", e.line);
            }
            file.sweep_values = expand_range(e);
        } else if (e.key == "sweep_r0_values_m") {
            if (!file.sweep_values.empty()) {
                throw ConfigError("sweep already defined", e.line);
            }
            for (const std::string& token : split(e.value, ',')) {
                file.sweep_values.push_back(parse_double(e, token));
            }
            if (file.sweep_values.empty()) {
                throw ConfigError("empty sweep list", e.line);
            }
        } else {
            throw ConfigError("unknown key '" + e.key + "'", e.line);
        }
    }
    for (const char* required : {"r0_m", "b0_deg", "target_course_deg", "target_speed_mps",
                                 "ownship_course_deg", "ownship_speed_mps", "ts_s",
                                 "noise_sigma_deg", "runs"}) {
        if (!seen[required]) {
            throw ConfigError(std::string("missing required key '") + required + "' in " + path);
        }
    }
    try {
        file.config.validate();
    } catch (const Error& e) {
        throw ConfigError(std::string(e.what()) + " (" + path + ")");
    }
    return file;
}

std::uint64_t file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char c = 0;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

} // namespace tmalab
