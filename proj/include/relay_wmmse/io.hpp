// SPDX-License-Identifier: Apache-2.0
//
// relay-wmmse: joint transmit and relay precoding for relay-aided mmWave downlink
// Copyright (C) 2026 The relay-wmmse authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RELAY_WMMSE_IO_HPP
#define RELAY_WMMSE_IO_HPP

#include "config.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "model.hpp"
#include "optimizer.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace relay_wmmse {

inline constexpr const char* version_string = "0.1.0";

using json = nlohmann::json;

// Sweep section of a configuration file. Grids for all three sweep kinds
// live side by side; the subcommand picks one.
struct SweepSettings {
    std::uint64_t seed = 1;
    int trials = 50;
    std::vector<Scheme> schemes{Scheme::wmmse, Scheme::rzf, Scheme::zf};
    std::vector<double> power_grid_dbm{0, 5, 10, 15, 20, 25, 30, 35, 40};
    std::vector<double> relay_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> epsilons{0.001, 0.01, 0.1};
};

struct LoadedConfig {
    SystemConfig system;
    SweepSettings sweep;

    SweepSpec sweep_spec(SweepKind kind) const
    {
        SweepSpec s;
        s.kind = kind;
        s.seed = sweep.seed;
        s.trials = sweep.trials;
        s.base = system;
        switch (kind) {
        case SweepKind::power:
            s.grid = sweep.power_grid_dbm;
            s.schemes = sweep.schemes;
            break;
        case SweepKind::relay_location:
            s.grid = sweep.relay_grid;
            s.schemes = sweep.schemes;
            break;
        case SweepKind::iterations:
            s.grid = sweep.epsilons;
            s.schemes = {Scheme::wmmse};
            break;
        }
        return s;
    }
};

namespace detail {

class section_reader {
public:
    section_reader(const json& root, std::string name) : name_(std::move(name))
    {
        if (!root.contains(name_))
            return;
        const json& node = root.at(name_);
        if (!node.is_object())
            throw config_error("config key '" + name_ + "': expected an object");
        node_ = &node;
    }

    template <class T>
    void read(const std::string& key, T& out)
    {
        seen_.push_back(key);
        if (!node_ || !node_->contains(key))
            return;
        out = convert<T>(node_->at(key), key);
    }

    template <class T>
    void read(const std::string& key, std::optional<T>& out)
    {
        seen_.push_back(key);
        if (!node_ || !node_->contains(key) || node_->at(key).is_null())
            return;
        out = convert<T>(node_->at(key), key);
    }

    void reject_unknown() const
    {
        if (!node_)
            return;
        for (const auto& [key, value] : node_->items())
            if (std::find(seen_.begin(), seen_.end(), key) == seen_.end())
                throw config_error("unknown config key '" + name_ + "." + key + "'");
    }

private:
    template <class T>
    T convert(const json& v, const std::string& key) const
    {
        const std::string where = "config key '" + name_ + "." + key + "'";
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean())
                throw config_error(where + ": expected a boolean");
            return v.get<bool>();
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer())
                throw config_error(where + ": expected an integer");
            if constexpr (std::is_unsigned_v<T>)
                if (v.is_number_integer() && !v.is_number_unsigned())
                    throw config_error(where + ": expected a nonnegative integer");
            return v.get<T>();
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number())
                throw config_error(where + ": expected a number");
            return v.get<T>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string())
                throw config_error(where + ": expected a string");
            return v.get<std::string>();
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            if (!v.is_array())
                throw config_error(where + ": expected an array of numbers");
            T out;
            for (const auto& x : v) {
                if (!x.is_number())
                    throw config_error(where + ": expected an array of numbers");
                out.push_back(x.get<double>());
            }
            return out;
        } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            if (!v.is_array())
                throw config_error(where + ": expected an array of strings");
            T out;
            for (const auto& x : v) {
                if (!x.is_string())
                    throw config_error(where + ": expected an array of strings");
                out.push_back(x.get<std::string>());
            }
            return out;
        }
    }

    std::string name_;
    const json* node_ = nullptr;
    std::vector<std::string> seen_;
};

inline std::string init_mode_name(InitMode m) { return m == InitMode::random ? "random" : "matched_filter"; }

inline InitMode parse_init_mode(const std::string& s)
{
    if (s == "matched_filter")
        return InitMode::matched_filter;
    if (s == "random")
        return InitMode::random;
    throw config_error("config key 'algorithm.init': expected 'matched_filter' or 'random', got '" + s + "'");
}

} // namespace detail

// Builds a configuration from a parsed document; absent keys keep their
// defaults and unknown keys are rejected. The result is validated.
inline LoadedConfig config_from_json(const json& doc)
{
    if (!doc.is_object())
        throw config_error("config: top level must be an object");
    static const std::vector<std::string> sections{"system",    "geometry",  "channel", "link_budget",
                                                   "algorithm", "baselines", "sweep"};
    for (const auto& [key, value] : doc.items())
        if (std::find(sections.begin(), sections.end(), key) == sections.end())
            throw config_error("unknown config key '" + key + "'");

    LoadedConfig out;
    auto& c = out.system;

    detail::section_reader sys(doc, "system");
    sys.read("n_tx", c.n_tx);
    sys.read("n_relay", c.n_relay);
    sys.read("n_users", c.n_users);
    sys.read("rho_s", c.rho_s);
    sys.read("rho_r", c.rho_r);
    sys.read("p_bs_dbm", c.p_bs_dbm);
    sys.read("p_re_dbm", c.p_re_dbm);
    sys.read("sigma2_relay_mw", c.sigma2_relay_mw);
    sys.read("sigma2_user_mw", c.sigma2_user_mw);
    sys.reject_unknown();

    detail::section_reader geo(doc, "geometry");
    geo.read("theta_min_deg", c.geometry.theta_min_deg);
    geo.read("theta_max_deg", c.geometry.theta_max_deg);
    geo.read("d_min_m", c.geometry.d_min_m);
    geo.read("d_max_m", c.geometry.d_max_m);
    geo.read("d_relay_m", c.geometry.d_relay_m);
    geo.reject_unknown();

    detail::section_reader chan(doc, "channel");
    chan.read("clusters_sr", c.channel.clusters_sr);
    chan.read("clusters_rd", c.channel.clusters_rd);
    chan.read("rays_sr", c.channel.rays_sr);
    chan.read("rays_rd", c.channel.rays_rd);
    chan.read("cluster_spread_deg", c.channel.cluster_spread_deg);
    chan.read("ray_spread_deg", c.channel.ray_spread_deg);
    chan.read("fc_ghz", c.channel.fc_ghz);
    chan.read("spacing_ratio", c.channel.spacing_ratio);
    chan.reject_unknown();

    detail::section_reader link(doc, "link_budget");
    link.read("bs_gain_dbi", c.link.bs_gain_dbi);
    link.read("relay_gain_dbi", c.link.relay_gain_dbi);
    link.read("noise_figure_db", c.link.noise_figure_db);
    link.read("bandwidth_hz", c.link.bandwidth_hz);
    link.read("thermal_noise_dbm_hz", c.link.thermal_dbm_hz);
    link.reject_unknown();

    detail::section_reader alg(doc, "algorithm");
    alg.read("epsilon", c.algorithm.epsilon);
    alg.read("n_max", c.algorithm.n_max);
    std::string init = detail::init_mode_name(c.algorithm.init);
    alg.read("init", init);
    c.algorithm.init = detail::parse_init_mode(init);
    alg.read("rescale_iterates", c.algorithm.rescale_iterates);
    alg.reject_unknown();

    detail::section_reader base(doc, "baselines");
    base.read("rzf_regularization", c.rzf_regularization);
    base.reject_unknown();

    auto& s = out.sweep;
    detail::section_reader sw(doc, "sweep");
    sw.read("seed", s.seed);
    sw.read("trials", s.trials);
    std::vector<std::string> schemes;
    for (auto sch : s.schemes)
        schemes.push_back(scheme_name(sch));
    sw.read("schemes", schemes);
    s.schemes.clear();
    for (const auto& name : schemes)
        s.schemes.push_back(parse_scheme(name));
    sw.read("power_grid_dbm", s.power_grid_dbm);
    sw.read("relay_grid", s.relay_grid);
    sw.read("epsilons", s.epsilons);
    sw.reject_unknown();

    validate(c);
    for (auto kind : {SweepKind::power, SweepKind::relay_location, SweepKind::iterations})
        validate(out.sweep_spec(kind));
    return out;
}

// Parses configuration text. Empty (or whitespace-only) text yields the defaults.
inline LoadedConfig parse_config(const std::string& text, const std::string& origin = "<config>")
{
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        return config_from_json(json::object());
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(origin + ": " + e.what());
    }
    try {
        return config_from_json(doc);
    } catch (const config_error& e) {
        throw config_error(origin + ": " + e.what());
    }
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline LoadedConfig load_config(const std::filesystem::path& path)
{
    return parse_config(read_file(path), path.string());
}

// Resolved configuration, including derived noise variances.
inline json to_json(const SystemConfig& c)
{
    json j;
    j["system"] = {{"n_tx", c.n_tx},
                   {"n_relay", c.n_relay},
                   {"n_users", c.n_users},
                   {"rho_s", c.rho_s},
                   {"rho_r", c.rho_r},
                   {"p_bs_dbm", c.p_bs_dbm},
                   {"p_re_dbm", c.p_re_dbm},
                   {"sigma2_relay_mw", c.sigma2_relay()},
                   {"sigma2_user_mw", c.sigma2_user()}};
    j["geometry"] = {{"theta_min_deg", c.geometry.theta_min_deg},
                     {"theta_max_deg", c.geometry.theta_max_deg},
                     {"d_min_m", c.geometry.d_min_m},
                     {"d_max_m", c.geometry.d_max_m},
                     {"d_relay_m", c.geometry.d_relay_m}};
    j["channel"] = {{"clusters_sr", c.channel.clusters_sr},
                    {"clusters_rd", c.channel.clusters_rd},
                    {"rays_sr", c.channel.rays_sr},
                    {"rays_rd", c.channel.rays_rd},
                    {"cluster_spread_deg", c.channel.cluster_spread_deg},
                    {"ray_spread_deg", c.channel.ray_spread_deg},
                    {"fc_ghz", c.channel.fc_ghz},
                    {"spacing_ratio", c.channel.spacing_ratio}};
    j["link_budget"] = {{"bs_gain_dbi", c.link.bs_gain_dbi},
                        {"relay_gain_dbi", c.link.relay_gain_dbi},
                        {"noise_figure_db", c.link.noise_figure_db},
                        {"bandwidth_hz", c.link.bandwidth_hz},
                        {"thermal_noise_dbm_hz", c.link.thermal_dbm_hz}};
    j["algorithm"] = {{"epsilon", c.algorithm.epsilon},
                      {"n_max", c.algorithm.n_max},
                      {"init", detail::init_mode_name(c.algorithm.init)},
                      {"rescale_iterates", c.algorithm.rescale_iterates}};
    j["baselines"] = {{"rzf_regularization", c.rzf_reg()}};
    return j;
}

inline json to_json(const SweepSettings& s)
{
    json schemes = json::array();
    for (auto sch : s.schemes)
        schemes.push_back(scheme_name(sch));
    return {{"seed", s.seed},
            {"trials", s.trials},
            {"schemes", schemes},
            {"power_grid_dbm", s.power_grid_dbm},
            {"relay_grid", s.relay_grid},
            {"epsilons", s.epsilons}};
}

inline json to_json(const LoadedConfig& c)
{
    json j = to_json(c.system);
    j["sweep"] = to_json(c.sweep);
    return j;
}

// Everything that determines the numbers of a sweep; workers excluded.
inline json to_json(const SweepSpec& s)
{
    json schemes = json::array();
    for (auto sch : s.schemes)
        schemes.push_back(scheme_name(sch));
    return {{"kind", sweep_kind_name(s.kind)}, {"grid", s.grid},       {"trials", s.trials},
            {"seed", s.seed},                  {"schemes", schemes}, {"config", to_json(s.base)}};
}

// 64-bit FNV-1a over the compact dump (keys sorted), as 16 hex digits.
inline std::string config_hash(const json& j)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Writes to a sibling temporary file and renames it over the target.
inline void atomic_write(const std::filesystem::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
        throw io_error("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw io_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw io_error("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw io_error("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

// sweep_value,scheme,mean_sum_rate_bps_hz,stderr,trials[,epsilon]
inline std::string sweep_csv(const SweepResult& r)
{
    const bool with_eps = r.kind == SweepKind::iterations;
    std::string out = "sweep_value,scheme,mean_sum_rate_bps_hz,stderr,trials";
    out += with_eps ? ",epsilon\n" : "\n";
    for (const auto& row : r.rows) {
        out += format_number(row.sweep_value) + "," + row.scheme + "," + format_number(row.mean_sum_rate) + "," +
               format_number(row.stderr_sum_rate) + "," + std::to_string(row.trials);
        if (with_eps)
            out += "," + format_number(row.epsilon.value_or(0.0));
        out += "\n";
    }
    return out;
}

// n,xi_total_nats,sum_rate_bps_hz,bs_slack,relay_slack,beta1,beta2
inline std::string trace_csv(const IterationTrace& trace)
{
    std::string out = "n,xi_total_nats,sum_rate_bps_hz,bs_slack,relay_slack,beta1,beta2\n";
    for (const auto& r : trace)
        out += std::to_string(r.n) + "," + format_number(r.xi_total) + "," + format_number(r.sum_rate) + "," +
               format_number(r.bs_slack) + "," + format_number(r.relay_slack) + "," + format_number(r.beta1) + "," +
               format_number(r.beta2) + "\n";
    return out;
}

inline std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json sweep_sidecar(const SweepSpec& spec, const SweepResult& r)
{
    const json described = to_json(spec);
    json j = {{"kind", sweep_kind_name(spec.kind)},
              {"config_hash", config_hash(described)},
              {"seed", spec.seed},
              {"timestamp", utc_timestamp()},
              {"code_version", version_string},
              {"spec", described}};
    if (spec.kind == SweepKind::iterations) {
        json stops = json::array();
        for (std::size_t i = 0; i < spec.grid.size(); ++i)
            stops.push_back({{"epsilon", spec.grid[i]}, {"mean_stop_iteration", r.mean_stop_iteration.at(i)}});
        j["stopping"] = stops;
    }
    return j;
}

struct SweepFiles {
    std::filesystem::path csv;
    std::filesystem::path sidecar;
};

// Writes <kind>_<hash>.csv and <kind>_<hash>.json into `dir`.
inline SweepFiles write_sweep(const std::filesystem::path& dir, const SweepSpec& spec, const SweepResult& r)
{
    const std::string stem = sweep_kind_name(spec.kind) + "_" + config_hash(to_json(spec));
    SweepFiles files{dir / (stem + ".csv"), dir / (stem + ".json")};
    atomic_write(files.csv, sweep_csv(r));
    atomic_write(files.sidecar, sweep_sidecar(spec, r).dump(2) + "\n");
    return files;
}

namespace detail {

inline json complex_matrix_json(const cmat& m)
{
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rr = json::array(), ir = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ir.push_back(m(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ir);
    }
    return {{"real", re}, {"imag", im}};
}

inline cmat complex_matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& what)
{
    const auto& re = j.at("real");
    const auto& im = j.at("imag");
    if (!re.is_array() || !im.is_array() || static_cast<Eigen::Index>(re.size()) != rows ||
        static_cast<Eigen::Index>(im.size()) != rows)
        throw config_error("channel file: '" + what + "' has the wrong number of rows");
    cmat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(re[i].size()) != cols || static_cast<Eigen::Index>(im[i].size()) != cols)
            throw config_error("channel file: '" + what + "' has the wrong number of columns");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = cplx(re[i][k].get<double>(), im[i][k].get<double>());
    }
    return m;
}

} // namespace detail

// Self-describing channel dump: real/imag arrays per matrix, one row per
// matrix row, plus the user geometry.
inline json channel_to_json(const ChannelSet& ch)
{
    json users = json::array();
    for (const auto& u : ch.users)
        users.push_back(
            {{"distance_m", u.distance_m}, {"angle_deg", u.angle_deg}, {"relay_distance_m", u.relay_distance_m}});
    return {{"n_tx", ch.n_tx()},
            {"n_relay", ch.n_relay()},
            {"n_users", ch.n_users()},
            {"h_sr", detail::complex_matrix_json(ch.h_sr)},
            {"h_users", detail::complex_matrix_json(ch.h_users)},
            {"users", users}};
}

inline ChannelSet channel_from_json(const json& j)
{
    try {
        const int nt = j.at("n_tx").get<int>();
        const int nr = j.at("n_relay").get<int>();
        const int k = j.at("n_users").get<int>();
        ChannelSet ch;
        ch.h_sr = detail::complex_matrix_from_json(j.at("h_sr"), nr, nt, "h_sr");
        ch.h_users = detail::complex_matrix_from_json(j.at("h_users"), k, nr, "h_users");
        for (const auto& u : j.at("users"))
            ch.users.push_back({u.at("distance_m").get<double>(), u.at("angle_deg").get<double>(),
                                u.at("relay_distance_m").get<double>()});
        if (static_cast<int>(ch.users.size()) != k)
            throw config_error("channel file: user geometry count does not match n_users");
        if (!ch.h_sr.allFinite() || !ch.h_users.allFinite())
            throw config_error("channel file: non-finite channel entries");
        return ch;
    } catch (const json::exception& e) {
        throw config_error(std::string("channel file: ") + e.what());
    }
}

} // namespace relay_wmmse

#endif
