#include "fdscat/cli.hpp"

#include "fdscat/amplitude.hpp"
#include "fdscat/error.hpp"
#include "fdscat/flux.hpp"
#include "fdscat/oracle.hpp"
#include "fdscat/phase_shifts.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <variant>

namespace fdscat::cli
{

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace
{

//---------------------------------------------------------------------------//
// Flag parsing
//---------------------------------------------------------------------------//

struct RawFlags
{
    std::optional<std::string> table, potential, solver, spin, statistics, mode, out, format;
    std::optional<double> a, v0, k, kr, kr_min, kr_max, c, perturb;
    std::optional<int> lmax, points, grid, order, samples;
};

void add_source_flags(CLI::App* sub, RawFlags& f)
{
    sub->add_option("--table", f.table, "Phase-shift table file");
    sub->add_option("--potential", f.potential, "hard-sphere | square-well");
    sub->add_option("--solver", f.solver, "analytic | numerov (square well)");
    sub->add_option("--a", f.a, "Potential range a");
    sub->add_option("--v0", f.v0, "Square-well depth in units of 2M/hbar^2 (positive attracts)");
    sub->add_option("--k", f.k, "Wavenumber k");
    sub->add_option("--lmax", f.lmax, "Highest partial wave L");
}

void add_output_flags(CLI::App* sub, RawFlags& f)
{
    sub->add_option("--out", f.out, "Output file (default: standard output)");
    sub->add_option("--format", f.format, "csv | jsonl");
}

void add_spin_flags(CLI::App* sub, RawFlags& f)
{
    sub->add_option("--spin", f.spin, "Spin S of identical particles, e.g. 0, 1/2, 1");
    sub->add_option("--statistics", f.statistics, "bose | fermi");
}

double positive(std::optional<double> v, const std::string& field)
{
    if (!v) throw ConfigError(field, "required");
    if (!(*v > 0.0) || !std::isfinite(*v)) throw ConfigError(field, "must be positive and finite");
    return *v;
}

int twice_spin_from(const std::string& text)
{
    double S = 0.0;
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            S = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
        } else {
            const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
            std::size_t un = 0, ud = 0;
            S = std::stod(num, &un) / std::stod(den, &ud);
            if (un != num.size() || ud != den.size()) throw std::invalid_argument(text);
        }
    } catch (const std::logic_error&) {
        throw ConfigError("--spin", "not a number: '" + text + "'");
    }
    const double twice = 2.0 * S;
    if (!(twice >= 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
        throw ConfigError("--spin", "must be a non-negative multiple of 1/2");
    }
    return static_cast<int>(std::lround(twice));
}

void reject(bool given, const std::string& field, const std::string& command)
{
    if (given) throw ConfigError(field, "not used by '" + command + "'");
}

RunConfig validate(Command command, const RawFlags& f)
{
    RunConfig cfg;
    cfg.command = command;

    // Amplitude source
    const bool model = f.potential || f.a || f.v0 || f.k || f.lmax || f.solver;
    if (f.table) {
        if (command == Command::phase_shifts) throw ConfigError("--table", "phase-shifts computes a table from a model");
        if (model) throw ConfigError("--table", "excludes the model flags --potential, --solver, --a, --v0, --k, --lmax");
        cfg.table = *f.table;
    } else {
        if (!f.potential) throw ConfigError("--potential", "required (or give --table)");
        cfg.potential = *f.potential;
        if (cfg.potential != "hard-sphere" && cfg.potential != "square-well") {
            throw ConfigError("--potential", "expected hard-sphere or square-well, got '" + cfg.potential + "'");
        }
        cfg.solver = f.solver.value_or("analytic");
        if (cfg.solver != "analytic" && cfg.solver != "numerov") {
            throw ConfigError("--solver", "expected analytic or numerov, got '" + cfg.solver + "'");
        }
        if (cfg.potential == "hard-sphere" && cfg.solver == "numerov") {
            throw ConfigError("--solver", "a hard sphere has no finite potential to integrate");
        }
        cfg.a = positive(f.a, "--a");
        cfg.k = positive(f.k, "--k");
        if (cfg.potential == "square-well") {
            if (!f.v0) throw ConfigError("--v0", "required for square-well");
            if (!std::isfinite(*f.v0)) throw ConfigError("--v0", "must be finite");
            cfg.v0 = *f.v0;
        } else {
            reject(f.v0.has_value(), "--v0", "hard-sphere");
        }
        if (!f.lmax) throw ConfigError("--lmax", "required");
        if (*f.lmax < 1) throw ConfigError("--lmax", "must be >= 1");
        cfg.lmax = *f.lmax;
    }

    // Output
    if (f.out) cfg.out = *f.out;
    if (f.format) {
        if (*f.format == "csv") cfg.format = OutputFormat::csv;
        else if (*f.format == "jsonl") cfg.format = OutputFormat::jsonl;
        else throw ConfigError("--format", "expected csv or jsonl, got '" + *f.format + "'");
    }

    // Spin
    if (f.spin || f.statistics) {
        if (!f.spin) throw ConfigError("--spin", "required with --statistics");
        if (!f.statistics) throw ConfigError("--statistics", "required with --spin");
        cfg.twice_spin = twice_spin_from(*f.spin);
        cfg.statistics = *f.statistics;
        if (cfg.statistics != "bose" && cfg.statistics != "fermi") {
            throw ConfigError("--statistics", "expected bose or fermi, got '" + cfg.statistics + "'");
        }
        const bool integer = *cfg.twice_spin % 2 == 0;
        if (cfg.statistics == "bose" && !integer) throw ConfigError("--spin", "bosons need integer spin");
        if (cfg.statistics == "fermi" && integer) throw ConfigError("--spin", "fermions need half-odd spin");
    }

    switch (command) {
    case Command::phase_shifts:
        if (f.format && cfg.format != OutputFormat::csv) {
            throw ConfigError("--format", "phase-shifts always writes the table format");
        }
        break;
    case Command::flux:
        cfg.kr = positive(f.kr, "--kr");
        if (f.grid) {
            if (*f.grid < 2) throw ConfigError("--grid", "must be >= 2");
            cfg.grid = *f.grid;
        }
        break;
    case Command::scan:
        cfg.kr_min = positive(f.kr_min, "--kr-min");
        cfg.kr_max = positive(f.kr_max, "--kr-max");
        if (cfg.kr_max < cfg.kr_min) throw ConfigError("--kr-max", "must be >= --kr-min");
        if (!f.points) throw ConfigError("--points", "required");
        if (*f.points < 1) throw ConfigError("--points", "must be >= 1");
        cfg.points = *f.points;
        if (f.mode) {
            if (*f.mode == "total") cfg.mode = ScanMode::total;
            else if (*f.mode == "angle") cfg.mode = ScanMode::angle;
            else throw ConfigError("--mode", "expected total or angle, got '" + *f.mode + "'");
        }
        if (f.c) {
            if (cfg.mode != ScanMode::angle) throw ConfigError("--c", "only used with --mode angle");
            if (!(std::abs(*f.c) <= 1.0)) throw ConfigError("--c", "must lie in [-1, 1]");
            cfg.c = *f.c;
        }
        if (f.order) {
            if (cfg.mode != ScanMode::angle) throw ConfigError("--order", "only used with --mode angle");
            if (*f.order < 0) throw ConfigError("--order", "must be >= 0");
            cfg.order = *f.order;
        }
        break;
    case Command::check:
        if (f.samples) {
            if (*f.samples < 1) throw ConfigError("--samples", "must be >= 1");
            cfg.samples = *f.samples;
        }
        if (f.perturb) {
            if (!(*f.perturb >= 0.0) || !std::isfinite(*f.perturb)) {
                throw ConfigError("--perturb", "must be non-negative and finite");
            }
            cfg.perturb = *f.perturb;
        }
        break;
    }
    return cfg;
}

} // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out)
{
    CLI::App app{"Finite-distance scattering fluxes from partial-wave phase shifts", "fdscat"};
    app.require_subcommand(1);
    RawFlags f;

    auto* ps = app.add_subcommand("phase-shifts", "Compute a phase-shift table from a potential model");
    add_source_flags(ps, f);
    ps->add_option("--out", f.out, "Table file (default: standard output)");
    ps->add_option("--format", f.format, "Only the table format is available");

    auto* fl = app.add_subcommand("flux", "Differential flux through a sphere of radius R");
    add_source_flags(fl, f);
    fl->add_option("--kr", f.kr, "kR of the detector sphere");
    fl->add_option("--grid", f.grid, "Number of equally spaced cosines in [-1, 1]");
    add_spin_flags(fl, f);
    add_output_flags(fl, f);

    auto* sc = app.add_subcommand("scan", "Logarithmic scan in kR");
    add_source_flags(sc, f);
    sc->add_option("--kr-min", f.kr_min, "Smallest kR");
    sc->add_option("--kr-max", f.kr_max, "Largest kR");
    sc->add_option("--points", f.points, "Number of kR values");
    sc->add_option("--mode", f.mode, "total | angle");
    sc->add_option("--c", f.c, "Cosine for --mode angle (default 1)");
    sc->add_option("--order", f.order, "Angle mode: deviation relative to this truncation order (default 0)");
    add_spin_flags(sc, f);
    add_output_flags(sc, f);

    auto* ck = app.add_subcommand("check", "Unitarity, optical theorem, R-independence and the oracle suite");
    add_source_flags(ck, f);
    ck->add_option("--samples", f.samples, "Number of cosines for the unitarity check (default 5)");
    ck->add_option("--perturb", f.perturb, "Push every partial wave this far off the unitarity circle");
    add_spin_flags(ck, f);
    add_output_flags(ck, f);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError("arguments", e.what());
    }

    if (ps->parsed()) return validate(Command::phase_shifts, f);
    if (fl->parsed()) return validate(Command::flux, f);
    if (sc->parsed()) return validate(Command::scan, f);
    return validate(Command::check, f);
}

namespace
{

//---------------------------------------------------------------------------//
// Inputs
//---------------------------------------------------------------------------//

PhaseShiftTable model_table(const RunConfig& cfg)
{
    if (cfg.potential == "hard-sphere") return hard_sphere_shifts(cfg.k, cfg.a, cfg.lmax);
    if (cfg.solver == "numerov") {
        return numerov_shifts(PotentialModel::square_well(cfg.a, cfg.v0), cfg.k, cfg.lmax);
    }
    return square_well_shifts(cfg.k, cfg.a, cfg.v0, cfg.lmax);
}

PhaseShiftTable load_table(const RunConfig& cfg, std::ostream& err)
{
    PhaseShiftTable table = cfg.table ? read_table(*cfg.table) : model_table(cfg);
    table.validate();
    if (!table.tail_converged()) {
        err << "fdscat: warning: |delta_L| = " << format_number(std::abs(table.shifts.back()))
            << " >= 1e-8; the partial-wave series may be cut too early\n";
    }
    return table;
}

std::optional<SpinStatistics> spin_of(const RunConfig& cfg)
{
    if (!cfg.twice_spin) return std::nullopt;
    return SpinStatistics(*cfg.twice_spin, cfg.statistics == "bose" ? Statistics::bose : Statistics::fermi);
}

/// Flux columns, spin-averaged over the two parity projections when asked.
class FluxSource
{
  public:
    FluxSource(const PartialWaveAmplitudes& amps, std::optional<SpinStatistics> spin) : amps_(amps), spin_(spin)
    {
        if (spin_) {
            plus_.emplace(parity_projection(amps, Parity::plus));
            minus_.emplace(parity_projection(amps, Parity::minus));
        }
    }

    /// Exact flux for order < 0, otherwise truncated at `order`.
    std::vector<double> column(double kR, std::span<const double> grid, int order) const
    {
        auto one = [&](const PartialWaveAmplitudes& a) {
            const auto r =
                order < 0 ? differential_flux_exact(a, kR, grid) : differential_flux_truncated(a, kR, grid, order);
            std::vector<double> v(r.grid.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = r.grid[i].flux;
            return v;
        };
        if (!spin_) return one(amps_);
        const auto p = one(*plus_), m = one(*minus_);
        std::vector<double> v(p.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = spin_->w_plus() * p[i] + spin_->w_minus() * m[i];
        return v;
    }

    double total(double kR) const
    {
        return spin_ ? spin_averaged_total_flux(amps_, kR, *spin_) : total_flux(amps_, kR).value;
    }

    double sigma() const { return spin_ ? spin_averaged_sigma(amps_, *spin_) : sigma_partial_wave(amps_); }

  private:
    const PartialWaveAmplitudes& amps_;
    std::optional<SpinStatistics> spin_;
    std::optional<PartialWaveAmplitudes> plus_, minus_;
};

double relative_deviation(double value, double reference)
{
    if (value == reference) return 0.0;
    return value / reference - 1.0;
}

//---------------------------------------------------------------------------//
// Output
//---------------------------------------------------------------------------//

/// One record per row: CSV with a fixed header or one JSON object per line.
class RecordWriter
{
  public:
    RecordWriter(std::ostream& os, OutputFormat format, std::vector<std::string> columns)
        : os_(os), format_(format), columns_(std::move(columns))
    {
        if (format_ == OutputFormat::csv) {
            for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
            os_ << '\n';
        }
    }

    using Field = std::variant<double, std::string, bool>;

    void row(const std::vector<Field>& fields)
    {
        if (format_ == OutputFormat::jsonl) os_ << '{';
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os_ << ',';
            if (format_ == OutputFormat::jsonl) os_ << '"' << columns_[i] << "\":";
            std::visit([&](const auto& v) { put(v); }, fields[i]);
        }
        os_ << (format_ == OutputFormat::jsonl ? "}\n" : "\n");
    }

  private:
    void put(double x)
    {
        if (format_ == OutputFormat::jsonl && !std::isfinite(x)) os_ << "null";
        else os_ << format_number(x);
    }
    void put(const std::string& s)
    {
        if (format_ == OutputFormat::jsonl) os_ << '"' << s << '"';
        else os_ << s;
    }
    void put(bool b) { os_ << (b ? "true" : "false"); }

    std::ostream& os_;
    OutputFormat format_;
    std::vector<std::string> columns_;
};

/// Writes to --out when given, otherwise to `fallback`.
void emit(const RunConfig& cfg, std::ostream& fallback, const std::function<void(std::ostream&)>& body)
{
    if (!cfg.out) {
        body(fallback);
        return;
    }
    std::ostringstream buf;
    body(buf);
    std::ofstream file(*cfg.out, std::ios::binary);
    if (!file) throw ConfigError("--out", "cannot open '" + cfg.out->string() + "' for writing");
    file << buf.str();
    if (!file.flush()) throw ConfigError("--out", "write to '" + cfg.out->string() + "' failed");
}

//---------------------------------------------------------------------------//
// Subcommands
//---------------------------------------------------------------------------//

int cmd_phase_shifts(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto table = load_table(cfg, err);
    const double sigma = sigma_partial_wave(PartialWaveAmplitudes::from_phase_shifts(table));
    if (cfg.out) {
        write_table(*cfg.out, table);
        out << "sigma: " << format_number(sigma) << '\n';
    } else {
        // the echo is a comment, so standard output stays a valid table
        out << format_table(table) << "# sigma: " << format_number(sigma) << '\n';
    }
    return exit_ok;
}

int cmd_flux(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto table = load_table(cfg, err);
    const auto amps = PartialWaveAmplitudes::from_phase_shifts(table);
    const FluxSource source(amps, spin_of(cfg));

    std::vector<double> grid(cfg.grid);
    for (int i = 0; i < cfg.grid; ++i) grid[i] = i == cfg.grid - 1 ? 1.0 : -1.0 + 2.0 * i / (cfg.grid - 1);

    const double kR = *cfg.kr;
    const auto exact = source.column(kR, grid, -1);
    const auto o0 = source.column(kR, grid, 0);
    const auto o1 = source.column(kR, grid, 1);
    const auto o2 = source.column(kR, grid, 2);

    emit(cfg, out, [&](std::ostream& os) {
        RecordWriter w(os, cfg.format, {"c", "flux_exact", "flux_order0", "flux_order1", "flux_order2", "deviation"});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            w.row({grid[i], exact[i], o0[i], o1[i], o2[i], relative_deviation(exact[i], o0[i])});
        }
    });
    return exit_ok;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto table = load_table(cfg, err);
    const auto amps = PartialWaveAmplitudes::from_phase_shifts(table);
    const FluxSource source(amps, spin_of(cfg));
    const double sigma = source.sigma();
    const double grid[] = {cfg.c};

    std::vector<ScanPoint> rows;
    rows.reserve(cfg.points);
    for (int i = 0; i < cfg.points; ++i) {
        const double t = cfg.points == 1 ? 0.0 : static_cast<double>(i) / (cfg.points - 1);
        const double kR =
            i == cfg.points - 1 && cfg.points > 1 ? cfg.kr_max : cfg.kr_min * std::pow(cfg.kr_max / cfg.kr_min, t);
        ScanPoint pt{kR, 0.0, 0.0};
        if (cfg.mode == ScanMode::total) {
            pt.value = source.total(kR);
            pt.deviation = relative_deviation(pt.value, sigma);
        } else {
            pt.value = source.column(kR, grid, -1)[0];
            pt.deviation = relative_deviation(pt.value, source.column(kR, grid, cfg.order.value_or(0))[0]);
        }
        rows.push_back(pt);
    }

    emit(cfg, out, [&](std::ostream& os) {
        RecordWriter w(os, cfg.format, {"kR", "value", "deviation"});
        for (const auto& p : rows) w.row({p.kR, p.value, p.deviation});
    });
    return exit_ok;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto table = load_table(cfg, err);
    auto amps = PartialWaveAmplitudes::from_phase_shifts(table);
    if (cfg.perturb > 0.0) amps = perturb_off_unitarity(amps, cfg.perturb);
    const double sigma = sigma_partial_wave(amps);
    constexpr double tol = 1e-10;

    std::vector<oracle::OracleReport> reports;
    auto scaled = [&](std::string name, double tolerance) {
        oracle::OracleReport r;
        r.name = std::move(name);
        r.tolerance = tolerance;
        return r;
    };

    // residuals relative to sigma
    auto unit = scaled("unitarity", tol);
    for (int i = 0; i < cfg.samples; ++i) {
        const double c = cfg.samples == 1 ? 1.0 : -1.0 + 2.0 * i / (cfg.samples - 1);
        const double res = unitarity_residual(amps, c);
        unit.max_abs_err = std::max(unit.max_abs_err, res);
        unit.max_rel_err = std::max(unit.max_rel_err, res / sigma);
        ++unit.samples;
    }
    unit.pass = unit.max_rel_err <= unit.tolerance;
    reports.push_back(unit);

    auto optical = scaled("optical_theorem", tol);
    const double opt = optical_theorem_residual(amps);
    optical.samples = 1;
    optical.max_abs_err = opt;
    optical.max_rel_err = opt / sigma;
    optical.pass = optical.max_rel_err <= optical.tolerance;
    reports.push_back(optical);

    const FluxSource source(amps, spin_of(cfg));
    const double target = source.sigma();
    auto rind = scaled(cfg.twice_spin ? "r_independence_spin_averaged" : "r_independence", tol);
    for (double kR : {0.5, 1.0, 2.0, 10.0, 100.0, 1e4}) rind.add(source.total(kR), target);
    rind.finish();
    reports.push_back(rind);

    for (auto& r : oracle::run_default_suite()) reports.push_back(std::move(r));

    bool all = true;
    emit(cfg, out, [&](std::ostream& os) {
        RecordWriter w(os, cfg.format, {"name", "samples", "tolerance", "max_abs_err", "max_rel_err", "pass"});
        for (const auto& r : reports) {
            w.row({r.name, static_cast<double>(r.samples), r.tolerance, r.max_abs_err, r.max_rel_err, r.pass});
        }
    });
    for (const auto& r : reports) {
        if (!r.pass) {
            err << "fdscat: check failed: " << r.name << " (max rel err " << format_number(r.max_rel_err)
                << ", tolerance " << format_number(r.tolerance) << ")\n";
            all = false;
        }
    }
    return all ? exit_ok : exit_physics_failure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto cfg = parse_args(args, out);
        if (!cfg) return exit_ok;
        int code = exit_ok;
        switch (cfg->command) {
        case Command::phase_shifts: code = cmd_phase_shifts(*cfg, out, err); break;
        case Command::flux: code = cmd_flux(*cfg, out, err); break;
        case Command::scan: code = cmd_scan(*cfg, out, err); break;
        case Command::check: code = cmd_check(*cfg, out, err); break;
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        err << "fdscat: done in " << dt.count() << " s\n";
        return code;
    } catch (const ConfigError& e) {
        err << "fdscat: error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const ParseError& e) {
        err << "fdscat: error: --table: " << e.what() << '\n';
        return exit_config_error;
    } catch (const InvariantError& e) {
        err << "fdscat: error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const DomainError& e) {
        err << "fdscat: error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const SingularPotentialError& e) {
        err << "fdscat: error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const ConvergenceError& e) {
        err << "fdscat: numeric failure: " << e.what() << '\n';
        return exit_numeric_failure;
    } catch (const std::runtime_error& e) {
        // unreadable or unwritable files
        err << "fdscat: error: " << e.what() << '\n';
        return exit_config_error;
    }
}

} // namespace fdscat::cli
