#include "sw/io.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "direction-set cache writer assumes a little-endian host");

namespace sw {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(trim(item));
    return parts;
}

} // namespace

PointCloud read_point_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<double> data;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto cells = split(t, ',');
        if (dim == 0)
            dim = cells.size();
        else if (cells.size() != dim)
            throw DataError(path + ": inconsistent column count at line " +
                            std::to_string(line_no));
        for (const auto& cell : cells) {
            try {
                data.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw DataError(path + ": bad number '" + cell + "' at line " +
                                std::to_string(line_no));
            }
        }
    }
    if (data.empty()) throw DataError(path + ": no points");
    return PointCloud(std::move(data), dim);
}

void write_point_cloud_csv(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path);
    out << std::setprecision(17);
    for (std::size_t k = 0; k < cloud.n(); ++k) {
        for (std::size_t j = 0; j < cloud.dim(); ++j) {
            if (j) out << ",";
            out << cloud(k, j);
        }
        out << "\n";
    }
}

void write_direction_set(const std::string& path, const DirectionSet& dirs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path);
    out.write("SWDS", 4);
    const char version = 1;
    out.write(&version, 1);
    const std::uint32_t m = static_cast<std::uint32_t>(dirs.size());
    const std::uint32_t d = static_cast<std::uint32_t>(dirs.dim());
    out.write(reinterpret_cast<const char*>(&m), 4);
    out.write(reinterpret_cast<const char*>(&d), 4);
    out.write(reinterpret_cast<const char*>(dirs.data().data()),
              static_cast<std::streamsize>(dirs.data().size() * sizeof(double)));

    nlohmann::json trailer;
    const SamplerSpec& spec = dirs.strategy();
    trailer["kind"] = to_string(spec.kind);
    trailer["mapping"] = to_string(spec.mapping);
    trailer["randomization"] = to_string(spec.randomization);
    trailer["hyperparams"] = spec.hyperparams;
    if (dirs.seed())
        trailer["seed"] = *dirs.seed();
    else
        trailer["seed"] = nullptr;
    const std::string json = trailer.dump();
    out.write(json.data(), static_cast<std::streamsize>(json.size()));
    if (!out) throw DataError("failed writing " + path);
}

DirectionSet read_direction_set(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "SWDS", 4) != 0)
        throw DataError(path + ": not a direction-set cache");
    char version;
    in.read(&version, 1);
    if (version != 1) throw DataError(path + ": unsupported cache version");
    std::uint32_t m = 0, d = 0;
    in.read(reinterpret_cast<char*>(&m), 4);
    in.read(reinterpret_cast<char*>(&d), 4);
    if (!in || m == 0 || d < 2) throw DataError(path + ": corrupt cache header");
    std::vector<double> data(static_cast<std::size_t>(m) * d);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!in) throw DataError(path + ": truncated direction data");
    std::string json((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    SamplerSpec spec;
    std::optional<std::uint64_t> seed;
    try {
        const auto trailer = nlohmann::json::parse(json);
        spec.kind = sampler_kind_from_string(trailer.at("kind").get<std::string>());
        spec.mapping = mapping_from_string(trailer.at("mapping").get<std::string>());
        spec.randomization =
            randomization_from_string(trailer.at("randomization").get<std::string>());
        if (trailer.contains("hyperparams"))
            spec.hyperparams = trailer["hyperparams"].get<std::map<std::string, double>>();
        if (!trailer.at("seed").is_null()) seed = trailer["seed"].get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": bad JSON trailer: " + e.what());
    }

    DirectionSet dirs(m, d, spec, seed);
    dirs.data() = std::move(data);
    dirs.check_unit_norms(1e-9);
    return dirs;
}

void write_records_csv(const std::string& path, const std::vector<ConvergenceRecord>& records) {
    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out) throw DataError("cannot open " + path);
    out << "N_sample,Error,Timers\n";
    out << std::setprecision(17);
    for (const auto& rec : records)
        out << rec.m << "," << rec.error << "," << rec.seconds << "\n";
}

std::vector<ConvergenceRecord> read_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "N_sample,Error,Timers")
        throw DataError(path + ": missing results header");
    std::vector<ConvergenceRecord> records;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto cells = split(t, ',');
        if (cells.size() != 3) throw DataError(path + ": bad row '" + t + "'");
        ConvergenceRecord rec;
        rec.m = static_cast<std::size_t>(std::stoull(cells[0]));
        rec.error = std::stod(cells[1]);
        rec.seconds = std::stod(cells[2]);
        records.push_back(rec);
    }
    return records;
}

void write_matrix_csv(const std::string& path, const std::vector<double>& matrix,
                      std::size_t n) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open " + path);
    out << std::setprecision(17);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) out << ",";
            out << matrix[i * n + j];
        }
        out << "\n";
    }
}

ExperimentConfig parse_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (const auto hash = t.find('#'); hash != std::string::npos) t = trim(t.substr(0, hash));
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ": expected key = value at line " +
                              std::to_string(line_no));
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        try {
            if (key == "dims") {
                for (const auto& v : split(value, ','))
                    config.dims.push_back(std::stoul(v));
            } else if (key == "m_schedule") {
                for (const auto& v : split(value, ','))
                    config.m_schedule.push_back(std::stoul(v));
            } else if (key == "strategies") {
                for (const auto& v : split(value, ';'))
                    config.strategies.push_back(StrategyChoice::parse(v));
            } else if (key == "seeds") {
                for (const auto& v : split(value, ','))
                    config.seeds.push_back(std::stoull(v));
            } else if (key == "seed_range") {
                const auto parts = split(value, ':');
                if (parts.size() != 2) throw ConfigError("seed_range wants lo:hi");
                for (std::uint64_t s = std::stoull(parts[0]); s <= std::stoull(parts[1]); ++s)
                    config.seeds.push_back(s);
            } else if (key == "reference") {
                if (value == "analytic_two_dirac")
                    config.reference = ReferenceProtocol::analytic();
                else if (value.rfind("big_uniform", 0) == 0) {
                    const auto colon = value.find(':');
                    std::size_t m_ref = 10'000'000;
                    if (colon != std::string::npos) m_ref = std::stoul(value.substr(colon + 1));
                    config.reference = ReferenceProtocol::uniform(m_ref);
                } else
                    throw ConfigError("unknown reference protocol: " + value);
            } else if (key == "n_points") {
                config.n_points = std::stoul(value);
            } else if (key == "data_seed") {
                config.data_seed = std::stoull(value);
            } else if (key == "relative_error") {
                config.relative_error = (value == "true" || value == "1");
            } else if (key == "amortized") {
                config.amortized = (value == "true" || value == "1");
            } else if (key == "threads") {
                config.threads = static_cast<unsigned>(std::stoul(value));
            } else if (key == "out_dir") {
                config.out_dir = value;
            } else {
                throw ConfigError("unknown key: " + key);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(path + ": bad value for " + key + " at line " +
                              std::to_string(line_no) + ": " + e.what());
        }
    }
    config.validate();
    return config;
}

} // namespace sw
