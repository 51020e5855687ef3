#include "cli.hpp"

#include "casimir/energy_expansion.hpp"
#include "casimir/error.hpp"
#include "casimir/stress_tensor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

namespace casimir::cli {

namespace mp = boost::multiprecision;

unsigned ScanConfig::output_digits() const { return precision > 40 ? precision - 10 : 30; }

namespace {

Real parse_number(const std::string& text, const std::string& flag) {
    try {
        std::size_t used = 0;
        (void)std::stod(text, &used);  // rejects trailing garbage the mpfr parser would accept
        if (used != text.size()) throw std::invalid_argument(text);
        return real_from_string(text);
    } catch (const std::exception&) {
        throw UsageError(flag + ": '" + text + "' is not a number");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

}  // namespace

std::vector<Real> parse_range(const std::string& text, const std::string& flag) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return {parse_number(parts[0], flag)};
    if (parts.size() != 3) throw UsageError(flag + ": expected a number or start:stop:count, got '" + text + "'");
    const Real start = parse_number(parts[0], flag);
    const Real stop = parse_number(parts[1], flag);
    int count = 0;
    try {
        std::size_t used = 0;
        count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch (const std::exception&) {
        throw UsageError(flag + ": range count '" + parts[2] + "' is not an integer");
    }
    if (count < 1) throw UsageError(flag + ": range count must be >= 1");
    if (count == 1) return {start};
    std::vector<Real> values;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) values.push_back(start + (stop - start) * i / (count - 1));
    values.back() = stop;
    return values;
}

namespace {

struct RawOptions {
    std::string a = "1";
    std::string lambda = "0";
    std::string epsilon = "0.1";
    std::string z;
    std::string eps_vec;
    std::string field = "em";
    std::string format = "csv";
    std::string output;
    std::optional<int> n_max;
    int order = kDefaultEnergyOrder;
    std::optional<unsigned> precision;
    std::uint64_t seed = 0;
    std::string rapidity = "2";
    int trials = 100;
};

const std::map<std::string, Command>& command_names() {
    static const std::map<std::string, Command> names{
        {"energy-sum", Command::energy_sum}, {"energy-expansion", Command::energy_expansion},
        {"pressure", Command::pressure},     {"stress", Command::stress},
        {"covariance", Command::covariance}, {"scan", Command::scan},
    };
    return names;
}

void add_common(CLI::App* sub, RawOptions& raw) {
    sub->add_option("--a", raw.a, "plate separation (number or start:stop:count)");
    sub->add_option("--lambda", raw.lambda, "cutoff shape parameter in [0, 1)");
    sub->add_option("--field", raw.field, "em | scalar");
    sub->add_option("--precision", raw.precision, "working precision in decimal digits");
    sub->add_option("--format", raw.format, "csv | json");
    sub->add_option("--output", raw.output, "output file (default stdout)");
}

std::optional<unsigned> env_precision() {
    const char* value = std::getenv("CASIMIR_PRECISION");
    if (value == nullptr || *value == '\0') return std::nullopt;
    try {
        std::size_t used = 0;
        const int digits = std::stoi(value, &used);
        if (used != std::string(value).size() || digits <= 0) throw std::invalid_argument(value);
        return static_cast<unsigned>(digits);
    } catch (const std::exception&) {
        throw UsageError(std::string("CASIMIR_PRECISION: '") + value + "' is not a positive integer");
    }
}

FourVector parse_eps_vec(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw UsageError("--eps-vec: expected t,x,y,z");
    FourVector v;
    for (std::size_t i = 0; i < 4; ++i) v[i] = parse_number(parts[i], "--eps-vec");
    if (v[axis::z] != 0) throw UsageError("--eps-vec: z component must be 0");
    if (!(mink_dot(v, v) > 0)) throw UsageError("--eps-vec: separation must be spacelike");
    return v;
}

void require_single(const std::vector<Real>& values, const std::string& flag, const std::string& command) {
    if (values.size() != 1) throw UsageError(flag + ": " + command + " takes a single value, not a range");
}

}  // namespace

ScanConfig parse_args(const std::vector<std::string>& args) {
    RawOptions raw;
    CLI::App app{"Cutoff-dependent parallel-plate Casimir energies and point-split stresses", "casimir"};
    app.require_subcommand(1);

    std::map<CLI::App*, Command> subs;
    for (const auto& [name, cmd] : command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub, raw);
        switch (cmd) {
            case Command::energy_sum:
                sub->add_option("--epsilon", raw.epsilon, "cutoff scale");
                sub->add_option("--n-max", raw.n_max, "highest mode number (default: until converged)");
                break;
            case Command::energy_expansion:
                sub->add_option("--order", raw.order, "truncation order of the eps expansion");
                break;
            case Command::pressure:
                break;
            case Command::stress:
                sub->add_option("--epsilon", raw.epsilon, "separation length along x");
                sub->add_option("--eps-vec", raw.eps_vec, "separation t,x,y,z (z = 0)");
                sub->add_option("--z", raw.z, "height between the plates (scalar field)");
                break;
            case Command::covariance:
                sub->add_option("--eps-vec", raw.eps_vec, "separation t,x,y,z (z = 0)");
                sub->add_option("--z", raw.z, "height between the plates (scalar field)");
                sub->add_option("--rapidity", raw.rapidity, "maximum |rapidity| of random boosts");
                sub->add_option("--trials", raw.trials, "number of random transforms");
                sub->add_option("--seed", raw.seed, "random seed");
                break;
            case Command::scan:
                sub->add_option("--z", raw.z, "height between the plates (scalar field)");
                break;
        }
        subs[sub] = cmd;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ScanConfig config;
    std::string command_name;
    for (const auto& [sub, cmd] : subs) {
        if (sub->parsed()) {
            config.command = cmd;
            command_name = sub->get_name();
        }
    }

    config.precision = raw.precision.value_or(env_precision().value_or(kDefaultDigits));
    if (config.precision < 20 || config.precision > 2000) throw UsageError("--precision: must lie in [20, 2000]");
    set_working_digits(config.precision);

    if (raw.field == "em") {
        config.field = FieldKind::em;
    } else if (raw.field == "scalar") {
        config.field = FieldKind::scalar;
    } else {
        throw UsageError("--field: expected em or scalar, got '" + raw.field + "'");
    }
    if (raw.format == "csv") {
        config.format = OutputFormat::csv;
    } else if (raw.format == "json") {
        config.format = OutputFormat::json;
    } else {
        throw UsageError("--format: expected csv or json, got '" + raw.format + "'");
    }
    if (!raw.output.empty()) config.output = raw.output;

    config.a = parse_range(raw.a, "--a");
    for (const auto& v : config.a) {
        if (!(v > 0)) throw UsageError("--a: plate separation must be > 0");
    }
    config.lambda = parse_range(raw.lambda, "--lambda");
    for (const auto& v : config.lambda) {
        if (!(v >= 0 && v < 1)) throw UsageError("--lambda: lambda out of [0,1)");
    }
    config.epsilon = parse_range(raw.epsilon, "--epsilon");
    for (const auto& v : config.epsilon) {
        if (!(v > 0)) throw UsageError("--epsilon: must be > 0");
    }
    if (!raw.z.empty()) config.z = parse_range(raw.z, "--z");
    if (!raw.eps_vec.empty()) config.eps_vec = parse_eps_vec(raw.eps_vec);

    if (raw.n_max && *raw.n_max < 0) throw UsageError("--n-max: must be >= 0");
    config.n_max = raw.n_max;
    if (raw.order < 1 || raw.order > 40) throw UsageError("--order: must lie in [1, 40]");
    config.order = raw.order;
    config.seed = raw.seed;
    config.rapidity = parse_number(raw.rapidity, "--rapidity");
    if (config.rapidity < 0) throw UsageError("--rapidity: must be >= 0");
    if (raw.trials < 1) throw UsageError("--trials: must be >= 1");
    config.trials = raw.trials;

    if (config.command == Command::stress) require_single(config.epsilon, "--epsilon", command_name);
    if (config.command == Command::covariance) {
        require_single(config.a, "--a", command_name);
        require_single(config.lambda, "--lambda", command_name);
        if (!config.z.empty()) require_single(config.z, "--z", command_name);
    }
    return config;
}

std::string csv_header(Command command) {
    switch (command) {
        case Command::energy_sum: return "a,lambda,epsilon,n_max,energy,remainder_bound";
        case Command::energy_expansion: return "a,lambda,c_m4,c_m2,c_0,c_m2_ref,c_0_ref";
        case Command::pressure: return "a,lambda,field,finite_part,divergent_coeff";
        case Command::stress: return "a,lambda,field,z,A,B_finite,B_div_eps2,Ttt,Tzz,trace_residual";
        case Command::covariance: return "trial,rapidity,angle,residual";
        case Command::scan: return "a,lambda,field,z,c_m2,c_0,finite_part,divergent_coeff,A,B_finite,B_div_eps2";
    }
    return {};
}

namespace {

struct Missing {};
using Cell = std::variant<Missing, Real, long long, std::string>;

struct Row {
    std::vector<Cell> cells;
    std::string error;  // empty on success
};

std::vector<std::string> header_fields(Command command) { return split(csv_header(command), ','); }

std::string field_name(FieldKind f) { return f == FieldKind::em ? "em" : "scalar"; }

class RowWriter {
public:
    RowWriter(const ScanConfig& config, std::ostream& out) : config_(config), out_(out), fields_(header_fields(config.command)) {
        if (config_.format == OutputFormat::csv) out_ << csv_header(config_.command) << '\n';
    }

    void write(const Row& row) {
        if (config_.format == OutputFormat::csv) {
            for (std::size_t i = 0; i < row.cells.size(); ++i) {
                if (i) out_ << ',';
                out_ << csv_cell(row.cells[i]);
            }
            out_ << '\n';
        } else {
            nlohmann::ordered_json obj;
            for (std::size_t i = 0; i < row.cells.size() && i < fields_.size(); ++i) obj[fields_[i]] = json_cell(row.cells[i]);
            if (!row.error.empty()) obj["error"] = row.error;
            rows_.push_back(std::move(obj));
        }
    }

    void finish() {
        if (config_.format != OutputFormat::json) return;
        if (rows_.size() == 1) {
            out_ << rows_.front().dump(2) << '\n';
        } else {
            out_ << nlohmann::ordered_json(rows_).dump(2) << '\n';
        }
    }

private:
    std::string csv_cell(const Cell& c) const {
        if (std::holds_alternative<Real>(c)) return to_string(std::get<Real>(c), config_.output_digits());
        if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
        if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
        return "nan";
    }

    nlohmann::ordered_json json_cell(const Cell& c) const {
        if (std::holds_alternative<Real>(c)) return std::get<Real>(c).convert_to<double>();
        if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
        if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
        return nullptr;
    }

    const ScanConfig& config_;
    std::ostream& out_;
    std::vector<std::string> fields_;
    std::vector<nlohmann::ordered_json> rows_;
};

// Fills the computed columns with Missing after the given leading inputs.
Row error_row(std::vector<Cell> inputs, Command command, const Error& e) {
    const std::size_t width = header_fields(command).size();
    inputs.resize(width, Missing{});
    return Row{std::move(inputs), std::string(to_string(e.code()))};
}

Real height_for(const ScanConfig& config, const Real& a, std::size_t zi) {
    return config.z.empty() ? Real(a / 2) : config.z[zi];
}

std::size_t z_count(const ScanConfig& config) { return config.z.empty() ? 1 : config.z.size(); }

SeparationVector separation_for(const ScanConfig& config) {
    if (config.eps_vec) return SeparationVector(*config.eps_vec);
    return SeparationVector(FourVector(Real(0), config.epsilon.front(), Real(0), Real(0)));
}

class Runner {
public:
    Runner(const ScanConfig& config, std::ostream& err) : config_(config), err_(err) {}

    std::vector<Row> rows() {
        std::vector<Row> out;
        switch (config_.command) {
            case Command::energy_sum:
                for (const auto& a : config_.a)
                    for (const auto& l : config_.lambda)
                        for (const auto& e : config_.epsilon) out.push_back(guard({a, l, e}, [&] { return energy_sum(a, l, e); }));
                break;
            case Command::energy_expansion:
                for (const auto& a : config_.a)
                    for (const auto& l : config_.lambda) out.push_back(guard({a, l}, [&] { return energy_expansion(a, l); }));
                break;
            case Command::pressure:
                for (const auto& a : config_.a)
                    for (const auto& l : config_.lambda)
                        out.push_back(guard({a, l, field_name(config_.field)}, [&] { return pressure(a, l); }));
                break;
            case Command::stress:
                for (const auto& a : config_.a)
                    for (const auto& l : config_.lambda)
                        for (std::size_t zi = 0; zi < z_count(config_); ++zi)
                            out.push_back(guard({a, l, field_name(config_.field), height_cell(scalar_height(a, zi))},
                                                [&] { return stress(a, l, zi); }));
                break;
            case Command::covariance:
                covariance(out);
                break;
            case Command::scan:
                for (const auto& a : config_.a)
                    for (const auto& l : config_.lambda)
                        for (std::size_t zi = 0; zi < z_count(config_); ++zi)
                            out.push_back(guard({a, l, field_name(config_.field), height_cell(scalar_height(a, zi))},
                                                [&] { return scan(a, l, zi); }));
                break;
        }
        return out;
    }

    int exit_code() const {
        if (convergence_failure_) return kExitConvergence;
        if (domain_failure_) return kExitDomain;
        return kExitSuccess;
    }

private:
    template <class F>
    Row guard(std::vector<Cell> inputs, F&& compute) {
        struct Advance {
            std::size_t& index;
            ~Advance() { ++index; }
        } advance{grid_index_};
        try {
            return compute();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NotConverged) {
                convergence_failure_ = true;
            } else {
                domain_failure_ = true;
            }
            err_ << "grid point " << grid_index_ << ": " << e.what() << '\n';
                return error_row(std::move(inputs), config_.command, e);
        }
    }

    std::optional<Real> scalar_height(const Real& a, std::size_t zi) const {
        if (config_.field == FieldKind::em) return std::nullopt;
        return height_for(config_, a, zi);
    }

    Cell height_cell(const std::optional<Real>& z) const {
        if (z) return *z;
        return std::string();
    }

    Row energy_sum(const Real& a, const Real& l, const Real& e) {
        const PlateGeometry geom(a);
        const CutoffParams cutoff(e, l);
        const Real tolerance("1e-12");
        EnergySum sum = config_.n_max ? energy_mode_sum(geom, cutoff, config_.field, *config_.n_max)
                                      : energy_mode_sum_converged(geom, cutoff, config_.field, tolerance);
        if (!(sum.remainder_bound <= Real("1e-10") * mp::abs(sum.energy))) {
            convergence_failure_ = true;
            err_ << "grid point " << grid_index_ << ": remainder bound " << to_string(sum.remainder_bound, 6)
                 << " exceeds 1e-10 relative at n_max = " << sum.n_max << '\n';
        }
        return Row{{a, l, e, static_cast<long long>(sum.n_max), sum.energy, sum.remainder_bound}, {}};
    }

    Row energy_expansion(const Real& a, const Real& l) {
        const EnergyExpansion raw = energy_laurent(a, l, config_.order, config_.field);
        const EnergyExpansion sub = subtract_outer(raw);
        const ReferenceCoefficients ref = reference_coefficients(a, l);
        const Real share = config_.field == FieldKind::em ? Real(1) : Real(0.5);
        return Row{{a, l, raw.series.coefficient(-4), sub.series.coefficient(-2), sub.series.coefficient(0),
                    share * ref.c_minus2, share * ref.c_0},
                   {}};
    }

    Row pressure(const Real& a, const Real& l) {
        const CasimirPressure p = casimir_pressure(a, l, config_.field);
        return Row{{a, l, field_name(config_.field), p.finite_part, p.divergent_coeff}, {}};
    }

    Row stress(const Real& a, const Real& l, std::size_t zi) {
        const PlateGeometry geom(a);
        const std::optional<Real> z = scalar_height(a, zi);
        const StressDecomposition d = casimir::stress(config_.field, geom, l, separation_for(config_), z);
        const SymTensor4 t = d.assemble();
        return Row{{a, l, field_name(config_.field), height_cell(z), d.A, d.B_finite, d.B_divergent_eps2, t(axis::t, axis::t),
                    t(axis::z, axis::z), Real(mp::abs(t.trace()))},
                   {}};
    }

    Row scan(const Real& a, const Real& l, std::size_t zi) {
        const PlateGeometry geom(a);
        const std::optional<Real> z = scalar_height(a, zi);
        const EnergyExpansion sub = subtract_outer(energy_laurent(a, l, kDefaultEnergyOrder, config_.field));
        const CasimirPressure p = casimir_pressure(a, l, config_.field);
        const StressDecomposition d = casimir::stress(config_.field, geom, l, separation_for(config_), z);
        return Row{{a, l, field_name(config_.field), height_cell(z), sub.series.coefficient(-2), sub.series.coefficient(0),
                    p.finite_part, p.divergent_coeff, d.A, d.B_finite, d.B_divergent_eps2},
                   {}};
    }

    void covariance(std::vector<Row>& out) {
        const Real& a = config_.a.front();
        const Real& l = config_.lambda.front();
        const FourVector eps_vec =
            config_.eps_vec.value_or(FourVector(Real("0.02"), Real("0.08"), Real("0.03"), Real(0)));
        std::mt19937_64 rng(config_.seed);
        const double max_rapidity = config_.rapidity.convert_to<double>();
        std::uniform_real_distribution<double> rapidity_dist(-max_rapidity, max_rapidity);
        std::uniform_real_distribution<double> angle_dist(0.0, 2 * 3.14159265358979323846);
        for (int trial = 0; trial < config_.trials; ++trial) {
            const Real rapidity(rapidity_dist(rng));
            const Real angle(angle_dist(rng));
            out.push_back(guard({static_cast<long long>(trial), rapidity, angle}, [&] {
                        const PlateGeometry geom(a);
                const LorentzTransform l_tr = boost(BoostPlane::tx, rapidity) * rotation_xy(angle);
                const Real residual = covariance_check(config_.field, geom, l, SeparationVector(eps_vec), l_tr,
                                                       scalar_height(a, 0));
                return Row{{static_cast<long long>(trial), rapidity, angle, residual}, {}};
            }));
        }
    }

    const ScanConfig& config_;
    std::ostream& err_;
    std::size_t grid_index_ = 0;
    bool domain_failure_ = false;
    bool convergence_failure_ = false;
};

}  // namespace

int run(const ScanConfig& config, std::ostream& out, std::ostream& err) {
    set_working_digits(config.precision);
    std::ofstream file;
    std::ostream* sink = &out;
    if (config.output) {
        file.open(*config.output);
        if (!file) {
            err << "cannot open output file " << *config.output << '\n';
            return kExitUsage;
        }
        sink = &file;
    }

    Runner runner(config, err);
    const std::vector<Row> rows = runner.rows();
    RowWriter writer(config, *sink);
    for (const auto& row : rows) writer.write(row);
    writer.finish();
    return runner.exit_code();
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    ScanConfig config;
    try {
        config = parse_args(args);
    } catch (const HelpRequested& help) {
        out << help.what();
        return kExitSuccess;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return run(config, out, err);
}

}  // namespace casimir::cli
