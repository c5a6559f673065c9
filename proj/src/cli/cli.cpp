// Copyright 2026 The envwalk Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "envwalk/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "envwalk/classical.hpp"
#include "envwalk/environment.hpp"
#include "envwalk/errors.hpp"
#include "envwalk/experiment.hpp"
#include "envwalk/sweeps.hpp"

#ifndef ENVWALK_VERSION
#define ENVWALK_VERSION "unknown"
#endif

namespace envwalk::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

fs::path default_output_dir() {
    if (const char *dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        return fs::path(dir);
    }
    return fs::current_path();
}

fs::path manifest_path_for(const fs::path &csv) {
    fs::path p = csv;
    p.replace_extension(".manifest.json");
    return p;
}

namespace {

fs::path fit_path_for(const fs::path &csv) {
    fs::path p = csv;
    p.replace_extension(".fit.json");
    return p;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Whole file written at once so a failed run leaves no partial CSV.
void write_text(const fs::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

json read_json_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception &ex) {
        throw ConfigError(path.string() + " is not valid JSON: " + ex.what());
    }
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::vector<std::string> &header) { row_strings(header); }

    CsvWriter &cell(const std::string &s) {
        sep();
        os_ << s;
        return *this;
    }
    CsvWriter &cell(double v) { return cell(format_double(v)); }
    CsvWriter &cell(long v) { return cell(std::to_string(v)); }
    CsvWriter &cell(int v) { return cell(std::to_string(v)); }
    CsvWriter &empty() { return cell(std::string()); }
    void end_row() {
        os_ << '\n';
        first_ = true;
    }
    [[nodiscard]] std::string str() const { return os_.str(); }

  private:
    void sep() {
        if (!first_) {
            os_ << ',';
        }
        first_ = false;
    }
    void row_strings(const std::vector<std::string> &cells) {
        for (const auto &c : cells) {
            cell(c);
        }
        end_row();
    }

    std::ostringstream os_;
    bool first_{true};
};

struct CommonOptions {
    std::uint64_t seed{1};
    std::string output;
    unsigned threads{0};
    std::string config;
};

json common_json(const CommonOptions &c) {
    return {{"seed", c.seed}, {"threads", c.threads}};
}

fs::path resolve_output(const CommonOptions &c, const std::string &command) {
    if (!c.output.empty()) {
        return fs::path(c.output);
    }
    return default_output_dir() / (command + ".csv");
}

void add_common(CLI::App *sub, CommonOptions &c) {
    sub->add_option("--seed", c.seed, "Base seed; sample k uses stream (seed, k)");
    sub->add_option("--output,-o", c.output, "CSV output path");
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
    sub->add_option("--config", c.config, "JSON file (or manifest) supplying defaults for flags");
}

struct Manifest {
    std::string command;
    json parameters;
    std::uint64_t base_seed{0};
    json sample_seeds = json::array();
    std::vector<fs::path> outputs;

    [[nodiscard]] json to_json() const {
        json outs = json::array();
        for (const auto &p : outputs) {
            outs.push_back(p.string());
        }
        return {{"command", command},
                {"parameters", parameters},
                {"base_seed", base_seed},
                {"sample_seeds", sample_seeds},
                {"software_version", ENVWALK_VERSION},
                {"timestamp", utc_timestamp()},
                {"outputs", outs}};
    }
};

void write_manifest(const fs::path &csv, Manifest manifest) {
    const fs::path path = manifest_path_for(csv);
    manifest.outputs.insert(manifest.outputs.begin(), csv);
    write_text(path, manifest.to_json().dump(2) + "\n");
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    CommonOptions common;
    std::string model{"nonlocal"};
    int sites{0};
    int env_dim{1};
    double theta0{0.0};
    double phi0{0.0};
    double theta1{0.0};
    double phi1{0.0};
    long steps{0};
    double spread{kDefaultSpread};
    std::string coin{"hadamard"};
    std::string initial_coin{"plus-i"};
    int initial_site{-1};
    int samples{1};
    std::string environment_file;
    std::string export_environment;
};

Matrix2c parse_coin(const std::string &spec) {
    if (spec == "hadamard") {
        return hadamard_coin();
    }
    const CMatrix m = matrix_from_json(read_json_file(spec));
    if (m.rows() != 2 || m.cols() != 2) {
        throw ConfigError("coin matrix must be 2x2");
    }
    return m;
}

Vector2c parse_initial_coin(const std::string &spec) {
    if (spec == "plus-i") {
        return plus_i_coin();
    }
    json j;
    if (!spec.empty() && (spec.front() == '[' || spec.front() == '{')) {
        try {
            j = json::parse(spec);
        } catch (const json::exception &ex) {
            throw ConfigError(std::string("--initial-coin is not valid JSON: ") + ex.what());
        }
    } else {
        j = read_json_file(spec);
    }
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError("initial coin must be a JSON array of two entries");
    }
    Vector2c v;
    for (std::size_t i = 0; i < 2; ++i) {
        const auto &e = j[i];
        if (e.is_number()) {
            v(static_cast<Eigen::Index>(i)) = Complex(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2) {
            v(static_cast<Eigen::Index>(i)) = Complex(e[0].get<double>(), e[1].get<double>());
        } else {
            throw ConfigError("initial coin entries must be numbers or [re, im] pairs");
        }
    }
    return v;
}

ModelTemplate simulate_template(const SimulateOptions &o) {
    ModelTemplate t;
    t.sites = o.sites;
    t.coin = parse_coin(o.coin);
    t.initial_coin = parse_initial_coin(o.initial_coin);
    if (o.initial_site >= 0) {
        t.initial_site = o.initial_site;
    }
    if (o.model == "nonlocal") {
        if (o.env_dim < 1) {
            throw ConfigError("--env-dim must be at least 1");
        }
        NonlocalSpec spec{o.env_dim, o.spread, std::nullopt};
        if (!o.environment_file.empty()) {
            const Environment env = environment_from_json(read_json_file(o.environment_file));
            if (!std::holds_alternative<NonlocalEnvironment>(env)) {
                throw ConfigError("environment file is not a nonlocal environment");
            }
            spec.fixed = std::get<NonlocalEnvironment>(env);
            spec.env_dim = static_cast<int>(spec.fixed->e0.rows());
        }
        t.environment = spec;
    } else if (o.model == "local") {
        t.environment = LocalSpec{GateAngles::canonical(o.theta0, o.phi0),
                                  GateAngles::canonical(o.theta1, o.phi1)};
    } else {
        throw ConfigError("--model must be 'nonlocal' or 'local'");
    }
    if (o.sites < 1 || o.sites % 2 == 0) {
        throw ConfigError("--sites must be a positive odd integer");
    }
    return t;
}

json simulate_json(const SimulateOptions &o) {
    json j = common_json(o.common);
    j.update({{"model", o.model},
              {"sites", o.sites},
              {"env-dim", o.env_dim},
              {"theta0", o.theta0},
              {"phi0", o.phi0},
              {"theta1", o.theta1},
              {"phi1", o.phi1},
              {"steps", o.steps},
              {"spread", o.spread},
              {"coin", o.coin},
              {"initial-coin", o.initial_coin},
              {"initial-site", o.initial_site},
              {"samples", o.samples}});
    if (!o.environment_file.empty()) {
        j["environment-file"] = o.environment_file;
    }
    return j;
}

int cmd_simulate(const SimulateOptions &o, std::ostream &out) {
    if (o.steps < 0) {
        throw ConfigError("--steps must be non-negative");
    }
    if (o.samples < 1) {
        throw ConfigError("--samples must be at least 1");
    }
    const ModelTemplate tmpl = simulate_template(o);
    const fs::path csv = resolve_output(o.common, "simulate");

    if (!o.export_environment.empty()) {
        const WalkModel first = sample_model(tmpl, o.common.seed, 0);
        write_text(o.export_environment, environment_to_json(first.environment).dump(2) + "\n");
    }

    const QuenchResult q =
        quench_average(tmpl, o.samples, o.common.seed, o.steps, QuenchOptions{o.common.threads});
    const bool with_std = o.samples > 1;
    std::vector<std::string> header{"t", "d_omega", "entropy"};
    if (with_std) {
        header.emplace_back("d_omega_std");
    }
    CsvWriter w(header);
    for (std::size_t t = 0; t < q.mean.size(); ++t) {
        w.cell(static_cast<long>(t)).cell(q.mean.d_omega[t]).cell(q.mean.entropy[t]);
        if (with_std) {
            w.cell(q.d_omega_std[t]);
        }
        w.end_row();
    }
    write_text(csv, w.str());

    Manifest m;
    m.command = "simulate";
    m.parameters = simulate_json(o);
    m.base_seed = o.common.seed;
    m.sample_seeds = q.sample_seeds;
    if (!o.export_environment.empty()) {
        m.outputs.emplace_back(o.export_environment);
    }
    write_manifest(csv, m);
    out << "wrote " << csv.string() << " (" << q.mean.size() << " rows, " << o.samples
        << " sample" << (o.samples == 1 ? "" : "s") << ")\n";
    return kExitOk;
}

// ------------------------------------------------------------ mixing-sweep

struct MixingSweepOptions {
    CommonOptions common;
    int sites{0};
    std::vector<int> env_dims;
    int samples{30};
    long steps{0};
    double spread{kDefaultSpread};
};

int cmd_mixing_sweep(const MixingSweepOptions &o, std::ostream &out, std::ostream &err) {
    if (o.sites < 1 || o.sites % 2 == 0) {
        throw ConfigError("--sites must be a positive odd integer");
    }
    if (o.env_dims.empty()) {
        throw ConfigError("--env-dims needs at least one value");
    }
    if (o.samples < 1 || o.steps < 1) {
        throw ConfigError("--samples and --steps must be positive");
    }
    const fs::path csv = resolve_output(o.common, "mixing-sweep");
    CsvWriter w({"kind", "d_E", "d_B", "tau_mix", "tau_err", "samples_ok", "status"});
    json seeds = json::object();
    for (std::size_t i = 0; i < o.env_dims.size(); ++i) {
        const int d_e = o.env_dims[i];
        ModelTemplate tmpl;
        tmpl.sites = o.sites;
        tmpl.environment = NonlocalSpec{d_e, o.spread, std::nullopt};
        // Each point gets its own base seed so adding points leaves others unchanged.
        const std::uint64_t point_seed = derive_stream_seed(o.common.seed, static_cast<std::uint64_t>(d_e));
        const MixingPoint p = mixing_time_point(tmpl, o.samples, point_seed, o.steps,
                                                QuenchOptions{o.common.threads});
        seeds[std::to_string(d_e)] = {{"base_seed", point_seed}, {"samples", p.sample_seeds}};
        w.cell("quantum").cell(d_e).cell(2 * d_e);
        if (p.ok()) {
            w.cell(p.tau_mix).cell(p.tau_err).cell(p.samples_ok).cell("ok");
        } else {
            err << "d_E=" << d_e << ": no sample could be fitted (" << p.first_failure << ")\n";
            w.empty().empty().cell(0).cell("fit_failed");
        }
        w.end_row();
    }
    try {
        const ClassicalMixing cl = classical_mixing_time(o.sites);
        w.cell("classical").cell("inf").cell("inf").cell(cl.fit.value("tau_mix"))
            .cell(cl.fit.error("tau_mix")).cell(1).cell("ok");
        w.end_row();
        w.cell("classical_spectral").cell("inf").cell("inf").cell(cl.spectral_tau).cell(0.0)
            .cell(1).cell("ok");
        w.end_row();
    } catch (const FitError &ex) {
        err << "classical fit failed: " << ex.what() << "\n";
        w.cell("classical").cell("inf").cell("inf").empty().empty().cell(0).cell("fit_failed");
        w.end_row();
    }
    write_text(csv, w.str());

    Manifest m;
    m.command = "mixing-sweep";
    m.parameters = common_json(o.common);
    m.parameters.update({{"sites", o.sites},
                         {"env-dims", o.env_dims},
                         {"samples", o.samples},
                         {"steps", o.steps},
                         {"spread", o.spread}});
    m.base_seed = o.common.seed;
    m.sample_seeds = seeds;
    write_manifest(csv, m);
    out << "wrote " << csv.string() << "\n";
    return kExitOk;
}

// -------------------------------------------------------- saturation-sweep

struct SaturationSweepOptions {
    CommonOptions common;
    std::vector<int> sites_list;
    std::vector<double> ratios;
    std::vector<int> env_dims;
    int samples{10};
    std::vector<long> steps;
    double spread{kDefaultSpread};
};

int cmd_saturation_sweep(const SaturationSweepOptions &o, std::ostream &out, std::ostream &err) {
    if (o.sites_list.empty()) {
        throw ConfigError("--sites-list needs at least one value");
    }
    if (o.ratios.empty() == o.env_dims.empty()) {
        throw ConfigError("give exactly one of --ratios or --env-dims");
    }
    if (o.steps.empty() || (o.steps.size() != 1 && o.steps.size() != o.sites_list.size())) {
        throw ConfigError("--steps takes one value or one per entry of --sites-list");
    }
    if (o.samples < 1) {
        throw ConfigError("--samples must be at least 1");
    }
    const fs::path csv = resolve_output(o.common, "saturation-sweep");
    CsvWriter w({"d_S", "d_E", "d_B", "ratio", "mean_D", "std_D", "sem_D", "t0", "window"});
    std::vector<PowerLawPoint> fit_points;
    json seeds = json::object();
    for (std::size_t si = 0; si < o.sites_list.size(); ++si) {
        const int d_s = o.sites_list[si];
        if (d_s < 1 || d_s % 2 == 0) {
            throw ConfigError("--sites-list entries must be positive odd integers");
        }
        const long steps = o.steps.size() == 1 ? o.steps.front() : o.steps[si];
        std::vector<int> dims;
        if (!o.ratios.empty()) {
            for (const double r : o.ratios) {
                dims.push_back(std::max(1, static_cast<int>(std::lround(r * d_s / 2.0))));
            }
        } else {
            dims = o.env_dims;
        }
        for (const int d_e : dims) {
            ModelTemplate tmpl;
            tmpl.sites = d_s;
            tmpl.environment = NonlocalSpec{d_e, o.spread, std::nullopt};
            const std::uint64_t point_seed = derive_stream_seed(
                derive_stream_seed(o.common.seed, static_cast<std::uint64_t>(d_s)),
                static_cast<std::uint64_t>(d_e));
            const PlateauPoint p = plateau_point(tmpl, o.samples, point_seed, steps,
                                                 QuenchOptions{o.common.threads});
            seeds[std::to_string(d_s) + "/" + std::to_string(d_e)] = {
                {"base_seed", point_seed}, {"samples", p.sample_seeds}};
            w.cell(d_s).cell(d_e).cell(2 * d_e).cell(p.ratio()).cell(p.mean_d).cell(p.std_d)
                .cell(p.sem_d).cell(p.t0).cell(p.used_fit ? "fit" : "half");
            w.end_row();
            if (p.ratio() > 1.0) {
                fit_points.push_back({p.ratio(), p.mean_d});
            }
        }
    }
    write_text(csv, w.str());

    Manifest m;
    m.command = "saturation-sweep";
    m.parameters = common_json(o.common);
    m.parameters.update({{"sites-list", o.sites_list},
                         {"samples", o.samples},
                         {"steps", o.steps},
                         {"spread", o.spread}});
    if (!o.ratios.empty()) {
        m.parameters["ratios"] = o.ratios;
    } else {
        m.parameters["env-dims"] = o.env_dims;
    }
    m.base_seed = o.common.seed;
    m.sample_seeds = seeds;

    const fs::path fit_file = fit_path_for(csv);
    if (fit_points.size() >= 4) {
        const FitResult fit = fit_power_law(fit_points);
        json j = fit_to_json(fit);
        j["model"] = "mean_D = C * (d_B / d_S)^(-x), points with d_B > d_S";
        j["parameters"] = m.parameters;
        j["software_version"] = ENVWALK_VERSION;
        write_text(fit_file, j.dump(2) + "\n");
        m.outputs.push_back(fit_file);
        out << "power law: C = " << format_double(fit.value("C")) << " +- "
            << format_double(fit.error("C")) << ", x = " << format_double(fit.value("x"))
            << " +- " << format_double(fit.error("x")) << "\n";
    } else {
        err << "warning: power-law fit needs 4 points with d_B > d_S, have "
            << fit_points.size() << "; fit skipped\n";
    }
    write_manifest(csv, m);
    out << "wrote " << csv.string() << "\n";
    return kExitOk;
}

// --------------------------------------------------------------- classical

struct ClassicalOptions {
    CommonOptions common;
    int sites{0};
    long steps{0};
    int initial_site{-1};
};

int cmd_classical(const ClassicalOptions &o, std::ostream &out) {
    if (o.sites < 1 || o.sites % 2 == 0) {
        throw ConfigError("--sites must be a positive odd integer");
    }
    if (o.steps < 0) {
        throw ConfigError("--steps must be non-negative");
    }
    const int start = o.initial_site >= 0 ? o.initial_site : (o.sites - 1) / 2;
    const ObservableSeries s = classical_series(o.sites, start, o.steps);
    const fs::path csv = resolve_output(o.common, "classical");
    CsvWriter w({"t", "d_omega", "entropy"});
    for (std::size_t t = 0; t < s.size(); ++t) {
        w.cell(static_cast<long>(t)).cell(s.d_omega[t]).cell(s.entropy[t]);
        w.end_row();
    }
    write_text(csv, w.str());
    Manifest m;
    m.command = "classical";
    m.parameters = common_json(o.common);
    m.parameters.update({{"sites", o.sites}, {"steps", o.steps}, {"initial-site", o.initial_site}});
    m.base_seed = o.common.seed;
    write_manifest(csv, m);
    out << "wrote " << csv.string() << "\n";
    return kExitOk;
}

// ------------------------------------------------------------ config merge

std::string json_scalar_to_arg(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_integer() || v.is_number_unsigned()) {
        return v.dump();
    }
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    throw ConfigError("config values must be scalars or arrays of scalars");
}

/// Flags named on the command line, without leading dashes.
std::set<std::string> explicit_flags(const std::vector<std::string> &args) {
    std::set<std::string> names;
    for (const auto &a : args) {
        if (a.rfind("--", 0) == 0 && a.size() > 2) {
            names.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                       : a.find('=') - 2));
        } else if (a == "-o") {
            names.insert("output");
        }
    }
    return names;
}

std::optional<std::string> find_config(const std::vector<std::string> &args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) {
            return args[i].substr(9);
        }
    }
    return std::nullopt;
}

/// Flags from a --config file are inserted after the subcommand, skipping any
/// flag the user gave explicitly, so command-line values win.
std::vector<std::string> merge_config(std::vector<std::string> args,
                                      const std::set<std::string> &commands) {
    const auto config = find_config(args);
    if (!config) {
        return args;
    }
    json j = read_json_file(*config);
    std::string command;
    if (j.contains("parameters") && j.contains("command")) {
        command = j.at("command").get<std::string>();
        j = j.at("parameters");
    }
    if (!j.is_object()) {
        throw ConfigError("config file must contain a JSON object");
    }
    auto sub_it = std::find_if(args.begin(), args.end(),
                               [&](const std::string &a) { return commands.count(a) > 0; });
    if (sub_it == args.end()) {
        if (command.empty()) {
            throw ConfigError("no subcommand given and config does not name one");
        }
        args.insert(args.begin(), command);
        sub_it = args.begin();
    }
    const auto given = explicit_flags(args);
    std::vector<std::string> extra;
    for (const auto &[key, value] : j.items()) {
        if (key == "config" || given.count(key) > 0) {
            continue;
        }
        if (value.is_null()) {
            continue;
        }
        std::string text;
        if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                text += (i ? "," : "") + json_scalar_to_arg(value[i]);
            }
        } else {
            text = json_scalar_to_arg(value);
        }
        extra.push_back("--" + key);
        extra.push_back(text);
    }
    args.insert(sub_it + 1, extra.begin(), extra.end());
    return args;
}

/// Maps an exception to an exit code and prints it. Quench failures are
/// classified by the exception the failing sample threw.
int report_error(const std::exception_ptr &ex, std::ostream &err) {
    std::exception_ptr cause = ex;
    std::string message;
    try {
        std::rethrow_exception(ex);
    } catch (const QuenchError &e) {
        message = e.what();
        if (e.cause()) {
            cause = e.cause();
        }
    } catch (const std::exception &e) {
        message = e.what();
    } catch (...) {
        message = "unknown failure";
    }
    try {
        std::rethrow_exception(cause);
    } catch (const IoError &) {
        err << "I/O error: " << message << "\n";
        return kExitIo;
    } catch (const ConfigError &) {
        err << "error: " << message << "\n";
        return kExitUsage;
    } catch (const StructuralError &) {
        err << "error: " << message << "\n";
        return kExitUsage;
    } catch (const json::exception &) {
        err << "error: " << message << "\n";
        return kExitUsage;
    } catch (const Error &) {
        err << "numerical error: " << message << "\n";
        return kExitNumerical;
    } catch (...) {
        err << "error: " << message << "\n";
        return kExitNumerical;
    }
}

} // namespace

int run(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum walks on a ring coupled to a finite environment", "envwalk"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ENVWALK_VERSION);

    SimulateOptions sim;
    auto *s = app.add_subcommand("simulate", "Single model run or quench average");
    add_common(s, sim.common);
    s->add_option("--model", sim.model, "nonlocal | local")
        ->check(CLI::IsMember({"nonlocal", "local"}));
    s->add_option("--sites", sim.sites, "Odd ring size d_S")->required();
    s->add_option("--env-dim", sim.env_dim, "Environment dimension d_E (nonlocal)");
    s->add_option("--theta0", sim.theta0, "Local gate G0 angle theta");
    s->add_option("--phi0", sim.phi0, "Local gate G0 angle phi");
    s->add_option("--theta1", sim.theta1, "Local gate G1 angle theta");
    s->add_option("--phi1", sim.phi1, "Local gate G1 angle phi");
    s->add_option("--steps", sim.steps, "Number of steps T")->required();
    s->add_option("--spread", sim.spread, "Half-width of the Hermitian entry distribution")
        ->check(CLI::PositiveNumber);
    s->add_option("--coin", sim.coin, "'hadamard' or a JSON file with a 2x2 matrix");
    s->add_option("--initial-coin", sim.initial_coin, "'plus-i', inline JSON or a JSON file");
    s->add_option("--initial-site", sim.initial_site, "Start site (default: centre)");
    s->add_option("--samples", sim.samples, "Quench samples K");
    s->add_option("--environment-file", sim.environment_file,
                  "Use these E0/E1 (JSON) for every sample");
    s->add_option("--export-environment", sim.export_environment,
                  "Write sample 0's environment matrices to this JSON file");

    MixingSweepOptions mix;
    auto *m = app.add_subcommand("mixing-sweep", "Quench-averaged mixing time against d_B");
    add_common(m, mix.common);
    m->add_option("--sites", mix.sites, "Odd ring size d_S")->required();
    m->add_option("--env-dims", mix.env_dims, "Environment dimensions d_E")
        ->required()
        ->delimiter(',');
    m->add_option("--samples", mix.samples, "Quench samples per point");
    m->add_option("--steps", mix.steps, "Steps per run")->required();
    m->add_option("--spread", mix.spread, "Half-width of the Hermitian entry distribution")
        ->check(CLI::PositiveNumber);

    SaturationSweepOptions sat;
    auto *p = app.add_subcommand("saturation-sweep", "Long-time distance against d_B / d_S");
    add_common(p, sat.common);
    p->add_option("--sites-list", sat.sites_list, "Ring sizes")->required()->delimiter(',');
    p->add_option("--ratios", sat.ratios, "d_B / d_S targets; d_E = round(r d_S / 2)")
        ->delimiter(',');
    p->add_option("--env-dims", sat.env_dims, "Environment dimensions for every ring size")
        ->delimiter(',');
    p->add_option("--samples", sat.samples, "Quench samples per point");
    p->add_option("--steps", sat.steps, "Steps per run: one value, or one per ring size")
        ->required()
        ->delimiter(',');
    p->add_option("--spread", sat.spread, "Half-width of the Hermitian entry distribution")
        ->check(CLI::PositiveNumber);

    ClassicalOptions cl;
    auto *c = app.add_subcommand("classical", "Classical random walk reference series");
    add_common(c, cl.common);
    c->add_option("--sites", cl.sites, "Odd ring size d_S")->required();
    c->add_option("--steps", cl.steps, "Number of steps T")->required();
    c->add_option("--initial-site", cl.initial_site, "Start site (default: centre)");

    const std::set<std::string> commands{"simulate", "mixing-sweep", "saturation-sweep",
                                         "classical"};
    try {
        std::vector<std::string> args = merge_config(raw_args, commands);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o_out;
        std::ostringstream o_err;
        const int code = app.exit(e, o_out, o_err);
        out << o_out.str();
        err << o_err.str();
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (s->parsed()) {
            return cmd_simulate(sim, out);
        }
        if (m->parsed()) {
            return cmd_mixing_sweep(mix, out, err);
        }
        if (p->parsed()) {
            return cmd_saturation_sweep(sat, out, err);
        }
        return cmd_classical(cl, out);
    } catch (...) {
        return report_error(std::current_exception(), err);
    }
}

} // namespace envwalk::cli
