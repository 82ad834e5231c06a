// hompost: command-line front end for decoherence functions, visibility curves,
// click-record simulation and post-selection analysis.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hompost/bath.hpp"
#include "hompost/dynamics.hpp"
#include "hompost/errors.hpp"
#include "hompost/interference.hpp"
#include "hompost/io.hpp"
#include "hompost/trajectories.hpp"

namespace {

using namespace hompost;
using bath::BathSpec;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;
constexpr int kExitEmpty = 5;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BathArgs {
    std::string family{"ohmic"};
    double A{0.5};
    double theta{10.0};
    double exponent{2.0};
    CLI::Option* family_opt{nullptr};

    BathSpec spec() const {
        if (family == "ohmic") return BathSpec::ohmic(A, theta);
        if (family == "superohmic") return BathSpec::superohmic(A, theta);
        if (family == "markovian") return BathSpec::markovian(A, theta);
        return BathSpec::power_law(exponent, A, theta);
    }
};

const std::vector<std::string> kFamilies{"ohmic", "superohmic", "markovian", "power-law"};

void add_bath_options(CLI::App* app, BathArgs& b, const std::string& suffix = "") {
    b.family_opt = app->add_option("--bath" + suffix, b.family, "bath family")
                       ->check(CLI::IsMember(kFamilies))
                       ->capture_default_str();
    app->add_option("--A" + suffix, b.A, "dimensionless coupling A")->capture_default_str();
    app->add_option("--theta" + suffix, b.theta, "θ = ω_c β")->capture_default_str();
    app->add_option("--exponent" + suffix, b.exponent, "spectral exponent n for --bath power-law")
        ->capture_default_str();
}

struct SourceArgs {
    BathArgs bath1;
    BathArgs bath2;
    double g{0.01};
    std::string model{"exact"};

    bool distinct() const { return bath2.family_opt && bath2.family_opt->count() > 0; }

    bath::GammaModel gamma_model() const {
        return model == "scaling" ? bath::GammaModel::ScalingLimit : bath::GammaModel::Exact;
    }

    SourceConfig source() const {
        if (distinct()) return SourceConfig::distinct_sources(g, bath1.spec(), bath2.spec(), gamma_model());
        return SourceConfig::identical_sources(g, bath1.spec(), gamma_model());
    }
};

void add_model_option(CLI::App* app, std::string& model) {
    app->add_option("--model", model, "Γ model: exact integral, or the cutoff-free scaling limit")
        ->check(CLI::IsMember({"exact", "scaling"}))
        ->capture_default_str();
}

void add_source_options(CLI::App* app, SourceArgs& s, bool second_source) {
    add_bath_options(app, s.bath1);
    if (second_source) add_bath_options(app, s.bath2, "2");
    app->add_option("--g", s.g, "emission rate γ/ω_c")->capture_default_str();
    add_model_option(app, s.model);
}

struct GridArgs {
    double lo{0.0};
    double hi{10.0};
    int points{200};
    std::string spacing{"linear"};

    std::vector<double> grid() const {
        if (points < 1) throw DomainError("--points must be >= 1");
        if (!(hi >= lo) || !std::isfinite(hi) || !std::isfinite(lo)) throw DomainError("grid bounds must be finite with max >= min");
        if (points == 1) return {hi};
        std::vector<double> out(static_cast<std::size_t>(points));
        if (spacing == "log") {
            if (!(lo > 0.0)) throw DomainError("log grid needs min > 0");
            const double a = std::log(lo), b = std::log(hi);
            for (int i = 0; i < points; ++i) out[i] = std::exp(a + (b - a) * i / (points - 1));
            out.front() = lo;
            out.back() = hi;
        } else {
            for (int i = 0; i < points; ++i) out[i] = lo + (hi - lo) * i / (points - 1);
        }
        return out;
    }
};

void add_grid_options(CLI::App* app, GridArgs& g, const std::string& var) {
    app->add_option("--" + var + "-min", g.lo, "first grid point")->capture_default_str();
    app->add_option("--" + var + "-max", g.hi, "last grid point")->capture_default_str();
    app->add_option("--points", g.points, "number of grid points")->capture_default_str();
    app->add_option("--spacing", g.spacing, "grid spacing")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
}

// "-" is stdout
class Output {
public:
    explicit Output(const std::string& path) {
        if (path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw IoError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void close() {
        if (!file_) {
            std::cout.flush();
            return;
        }
        file_->close();
        if (!*file_) throw IoError("failed writing output file");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

// ---- commands ----

struct GammaCmd {
    BathArgs bath;
    std::string model{"exact"};
    GridArgs grid;
    std::string out{"-"};

    int run() const {
        const BathSpec b = bath.spec();
        if (b.family != bath::Family::Ohmic && b.family != bath::Family::Superohmic)
            throw DomainError("gamma compares closed form and quadrature; use --bath ohmic or superohmic");
        const auto m = model == "scaling" ? bath::GammaModel::ScalingLimit : bath::GammaModel::Exact;
        const auto taus = grid.grid();
        Output o(out);
        io::CsvWriter w(o.stream(), {"tau", "gamma_closed", "gamma_quadrature", "abs_diff"});
        for (double tau : taus) {
            const double c = bath::gamma_closed(b, tau, m).value;
            const double q = bath::gamma_quadrature(b, tau).value;
            w.row({tau, c, q, std::abs(c - q)});
        }
        o.close();
        return 0;
    }
};

struct FigCmd {
    double A{0.5};
    double theta{10.0};
    double g{0.01};
    std::string model{"exact"};
    GridArgs grid;
    std::string out{"-"};
    bool windowed{false};

    int run() const {
        const auto m = model == "scaling" ? bath::GammaModel::ScalingLimit : bath::GammaModel::Exact;
        const auto ohm = SourceConfig::identical_sources(g, BathSpec::ohmic(A, theta), m);
        const auto sup = SourceConfig::identical_sources(g, BathSpec::superohmic(A, theta), m);
        const auto mar = SourceConfig::identical_sources(g, BathSpec::markovian(A, theta), m);
        const auto xs = grid.grid();
        Output o(out);
        io::CsvWriter w(o.stream(), {windowed ? "delta" : "tau", "nu_ohmic", "nu_superohmic", "nu_markovian"});
        for (double x : xs) {
            if (windowed)
                w.row({x, windowed_visibility(ohm, x), windowed_visibility(sup, x), windowed_visibility(mar, x)});
            else
                w.row({x, visibility(ohm, x), visibility(sup, x), visibility(mar, x)});
        }
        o.close();
        return 0;
    }
};

struct VisibilityCmd {
    SourceArgs source;
    GridArgs grid;
    double t1{0.0};
    std::string out{"-"};

    int run() const {
        const auto s = source.source();
        const auto taus = grid.grid();
        Output o(out);
        io::CsvWriter w(o.stream(), {"tau", "nu"});
        for (double tau : taus) w.row({tau, s.identical ? visibility(s, tau) : visibility_nonidentical(s, t1, tau)});
        o.close();
        return 0;
    }
};

struct WindowedCmd {
    SourceArgs source;
    GridArgs grid;
    std::optional<double> t1_max;
    std::string out{"-"};

    int run() const {
        const auto s = source.source();
        const auto deltas = grid.grid();
        Output o(out);
        io::CsvWriter w(o.stream(), {"delta", "nu"});
        for (double d : deltas) {
            const double nu = (s.identical && !t1_max) ? windowed_visibility(s, d)
                                                       : windowed_visibility_nonidentical(s, d, t1_max.value_or(kInf));
            w.row({d, nu});
        }
        o.close();
        return 0;
    }
};

struct SimulateCmd {
    SourceArgs source;
    std::size_t n{1000};
    std::uint64_t seed{1};
    unsigned workers{0};
    bool table{false};
    std::string out{"-"};

    int run() const {
        const auto s = source.source();
        if (n == 0) throw DomainError("--n must be >= 1");
        Output o(out);
        const auto records = simulate_ensemble(seed, n, ContrastModel(s, table), workers);
        io::write_records(o.stream(), records);
        o.close();
        return 0;
    }
};

struct AnalyzeCmd {
    std::string in;
    double delta{kInf};
    std::optional<double> t1_max;
    int bins{0};
    double bin_max{10.0};
    std::string bins_out;

    int run() const {
        const Window window{delta, t1_max};
        window.validate();
        if (bins < 0) throw DomainError("--bins must be >= 0");
        if (bins > 0 && !(bin_max > 0.0 && std::isfinite(bin_max))) throw DomainError("--bin-max must be finite and > 0");

        std::ifstream f(in, std::ios::binary);
        if (!f) throw IoError("cannot open record file '" + in + "'");
        const auto records = io::read_records(f);

        if (bins > 0) {
            std::vector<ClickRecord> kept;
            for (const auto& r : records)
                if (!t1_max || r.t1 <= *t1_max) kept.push_back(r);
            std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
            for (int i = 0; i <= bins; ++i) edges[i] = bin_max * i / bins;
            const auto curve = binned_visibility(kept, edges);
            Output o(bins_out);
            io::CsvWriter w(o.stream(), {"tau_mid", "n", "nu_hat", "ci_low", "ci_high"});
            const double nan = std::numeric_limits<double>::quiet_NaN();
            for (const auto& b : curve) {
                if (b.estimate)
                    w.row({b.tau_mid, double(b.n), b.estimate->nu_hat, b.estimate->ci_low, b.estimate->ci_high});
                else
                    w.row({b.tau_mid, 0.0, nan, nan, nan});
            }
            o.close();
        }

        const auto est = estimate_visibility(records, window);
        std::cout << "records " << records.size() << '\n'
                  << "retained " << est.n_same + est.n_diff << '\n'
                  << "n_same " << est.n_same << '\n'
                  << "n_diff " << est.n_diff << '\n'
                  << "efficiency " << io::format_double(est.efficiency) << '\n'
                  << "nu_hat " << io::format_double(est.nu_hat) << '\n'
                  << "ci95_low " << io::format_double(est.ci_low) << '\n'
                  << "ci95_high " << io::format_double(est.ci_high) << '\n';
        return 0;
    }
};

template <class F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const EmptyEnsembleError& e) {
        std::cerr << "error: " << e.what() << " (post-selection kept nothing; widen --delta or --t1-max)\n";
        return kExitEmpty;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const DivergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon interference visibility of dephased emitters"};
    app.footer("All times and rates are dimensionless, in units of the bath cutoff ω_c (θ = ω_c β).");
    app.require_subcommand(1);

    GammaCmd gamma_cmd;
    auto* gamma = app.add_subcommand("gamma", "decoherence function Γ(τ): closed form vs quadrature (CSV)");
    add_bath_options(gamma, gamma_cmd.bath);
    add_model_option(gamma, gamma_cmd.model);
    add_grid_options(gamma, gamma_cmd.grid, "tau");
    gamma->add_option("--out", gamma_cmd.out, "output path, - for stdout")->capture_default_str();

    FigCmd fig1_cmd, fig2_cmd;
    fig2_cmd.windowed = true;
    fig2_cmd.grid = GridArgs{1e-3, 10.0, 200, "log"};
    auto* fig1 = app.add_subcommand("fig1", "time-resolved visibility ν(τ) for the three baths (CSV)");
    auto* fig2 = app.add_subcommand("fig2", "post-selected visibility ν′(Δ) for the three baths (CSV)");
    for (auto [sub, cmd, var] : {std::tuple{fig1, &fig1_cmd, "tau"}, std::tuple{fig2, &fig2_cmd, "delta"}}) {
        sub->add_option("--A", cmd->A, "coupling A")->capture_default_str();
        sub->add_option("--theta", cmd->theta, "θ = ω_c β")->capture_default_str();
        sub->add_option("--g", cmd->g, "emission rate γ/ω_c")->capture_default_str();
        add_model_option(sub, cmd->model);
        add_grid_options(sub, cmd->grid, var);
        sub->add_option("--out", cmd->out, "output path, - for stdout")->capture_default_str();
    }

    VisibilityCmd vis_cmd;
    auto* vis = app.add_subcommand("visibility", "ν(τ) for one source pair; --bath2 etc. for non-identical sources");
    add_source_options(vis, vis_cmd.source, true);
    add_grid_options(vis, vis_cmd.grid, "tau");
    vis->add_option("--t1", vis_cmd.t1, "first-click time (non-identical sources)")->capture_default_str();
    vis->add_option("--out", vis_cmd.out, "output path, - for stdout")->capture_default_str();

    WindowedCmd win_cmd;
    win_cmd.grid = GridArgs{1e-3, 10.0, 200, "log"};
    auto* win = app.add_subcommand("windowed", "post-selected ν′(Δ) for one source pair (CSV)");
    add_source_options(win, win_cmd.source, true);
    add_grid_options(win, win_cmd.grid, "delta");
    win->add_option("--t1-max", win_cmd.t1_max, "first-click window");
    win->add_option("--out", win_cmd.out, "output path, - for stdout")->capture_default_str();

    SimulateCmd sim_cmd;
    auto* sim = app.add_subcommand("simulate", "sample click records (one JSON object per line)");
    add_source_options(sim, sim_cmd.source, true);
    sim->add_option("--n", sim_cmd.n, "number of records")->capture_default_str();
    sim->add_option("--seed", sim_cmd.seed, "random seed")->capture_default_str();
    sim->add_option("--workers", sim_cmd.workers, "threads, 0 = all cores (output does not depend on it)")
        ->capture_default_str();
    sim->add_flag("--table", sim_cmd.table, "interpolate Γ from a precomputed table");
    sim->add_option("--out", sim_cmd.out, "output path, - for stdout")->capture_default_str();

    AnalyzeCmd an_cmd;
    auto* an = app.add_subcommand("analyze", "post-select records and estimate visibility");
    an->add_option("--in", an_cmd.in, "record file from simulate")->required();
    an->add_option("--delta", an_cmd.delta, "maximum τ accepted (default: no limit)");
    an->add_option("--t1-max", an_cmd.t1_max, "maximum first-click time accepted");
    auto* bins_opt = an->add_option("--bins", an_cmd.bins, "number of uniform τ bins on [0, bin-max]");
    an->add_option("--bin-max", an_cmd.bin_max, "upper edge of the last bin")->capture_default_str();
    an->add_option("--bins-out", an_cmd.bins_out, "binned visibility CSV path")->needs(bins_opt);
    bins_opt->needs("--bins-out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (*gamma) return guarded([&] { return gamma_cmd.run(); });
    if (*fig1) return guarded([&] { return fig1_cmd.run(); });
    if (*fig2) return guarded([&] { return fig2_cmd.run(); });
    if (*vis) return guarded([&] { return vis_cmd.run(); });
    if (*win) return guarded([&] { return win_cmd.run(); });
    if (*sim) return guarded([&] { return sim_cmd.run(); });
    if (*an) return guarded([&] { return an_cmd.run(); });
    return kExitUsage;
}
