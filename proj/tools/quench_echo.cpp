// quench_echo: command-line front end for the Loschmidt-echo statistics
// library. Subcommands: echo, dist, sweep, fidelity, generic. Series go out
// as CSV, distributions and reports as JSON; every output embeds the resolved
// configuration and the amplitude-convention flag so a run is reproducible
// from the file alone.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qecho/qecho.hpp"

namespace {

using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;
constexpr int exit_degenerate = 4;

struct CommonOptions {
    double h0 = 1.0, gamma0 = 0.5, h1 = 1.0, gamma1 = 0.8;
    double beta = 6.0;
    int L = 100;
    std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--h0", o.h0, "pre-quench transverse field");
    cmd->add_option("--gamma0", o.gamma0, "pre-quench anisotropy");
    cmd->add_option("--h1", o.h1, "post-quench transverse field");
    cmd->add_option("--gamma1", o.gamma1, "post-quench anisotropy");
    cmd->add_option("--beta", o.beta, "inverse temperature (inf = ground state)");
    cmd->add_option("--L", o.L, "chain length (even)");
    cmd->add_option("--out", o.out, "output path, '-' for stdout");
}

qecho::QuenchSpec to_spec(const CommonOptions& o) {
    qecho::QuenchSpec s;
    s.h0 = o.h0;
    s.gamma0 = o.gamma0;
    s.h1 = o.h1;
    s.gamma1 = o.gamma1;
    s.beta = o.beta;
    s.L = o.L;
    s.validate();
    return s;
}

json spec_json(const qecho::QuenchSpec& s) {
    json j;
    j["h0"] = s.h0;
    j["gamma0"] = s.gamma0;
    j["h1"] = s.h1;
    j["gamma1"] = s.gamma1;
    j["beta"] = std::isinf(s.beta) ? json("inf") : json(s.beta);
    j["L"] = s.L;
    return j;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw qecho::invalid_spec_error("cannot open output file: " + path);
    f << content;
}

json base_report(const std::string& command, const json& config) {
    json j;
    j["version"] = qecho::version;
    j["command"] = command;
    j["config"] = config;
    j["amplitude_convention"] =
        qecho::to_string(qecho::AmplitudeConvention::expansion_half);
    return j;
}

json moments_json(const qecho::DistributionEstimate& d) {
    json j;
    j["mean"] = d.mean;
    j["variance"] = d.variance;
    j["skewness"] = d.skewness;
    j["excess_kurtosis"] = d.excess_kurtosis;
    return j;
}

const char* provenance_name(qecho::Provenance p) {
    switch (p) {
        case qecho::Provenance::exact_inversion: return "exact_inversion";
        case qecho::Provenance::empirical: return "empirical";
        case qecho::Provenance::convolution: return "convolution";
    }
    return "unknown";
}

json distribution_json(const qecho::DistributionEstimate& d) {
    json j;
    j["provenance"] = provenance_name(d.provenance);
    j["moments"] = moments_json(d);
    j["degenerate"] = d.degenerate;
    if (d.degenerate) {
        j["delta_location"] = d.delta_location;
    } else {
        j["grid"] = d.grid;
        j["density"] = d.density;
        const auto peaks = qecho::peak_structure(d);
        j["peaks"] = {{"count", peaks.count},
                      {"locations", peaks.locations},
                      {"heights", peaks.heights}};
    }
    return j;
}

int run_echo(const CommonOptions& common, double horizon, int samples) {
    const auto spec = to_spec(common);
    if (samples < 1 || horizon < 0.0)
        throw qecho::invalid_spec_error("echo: need samples >= 1 and horizon >= 0");
    const auto modes = qecho::mode_data(spec);
    std::ostringstream out;
    json cfg = spec_json(spec);
    cfg["horizon"] = horizon;
    cfg["samples"] = samples;
    out << "# version: " << qecho::version << "\n";
    out << "# config: " << cfg.dump() << "\n";
    out << "# amplitude_convention: "
        << qecho::to_string(qecho::AmplitudeConvention::expansion_half) << "\n";
    out << "t,echo,log_echo\n";
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.0 : horizon * i / (samples - 1.0);
        const double z = qecho::log_echo_at(modes, t);
        out << json(t).dump() << "," << json(std::exp(z)).dump() << ","
            << json(z).dump() << "\n";
    }
    write_output(common.out, out.str());
    return exit_ok;
}

int run_dist(const CommonOptions& common, const std::string& method, int grid_points,
             double grid_lo, double grid_hi, double horizon, std::uint64_t samples,
             std::uint64_t seed) {
    const auto spec = to_spec(common);
    const auto modes = qecho::mode_data(spec);
    qecho::GridSpec grid;
    grid.lo = grid_lo;
    grid.hi = grid_hi;
    grid.points = grid_points;

    qecho::DistributionEstimate dist;
    if (method == "exact") {
        dist = qecho::exact_distribution_Z(modes, grid);
    } else if (method == "empirical") {
        dist = qecho::empirical_distribution_Z(modes, horizon, samples, seed, grid);
    } else if (method == "small-quench") {
        const auto amps = qecho::amplitude_set(modes);
        const int n_max = qecho::auto_n_max(amps);
        dist = qecho::dos_distribution(amps, n_max, grid);
    } else {
        throw qecho::invalid_spec_error(
            "dist: method must be exact, empirical or small-quench");
    }

    json cfg = spec_json(spec);
    cfg["method"] = method;
    cfg["grid_points"] = grid_points;
    if (!grid.automatic()) {
        cfg["grid_lo"] = grid_lo;
        cfg["grid_hi"] = grid_hi;
    }
    if (method == "empirical") {
        cfg["horizon"] = horizon;
        cfg["samples"] = samples;
        cfg["seed"] = seed;
    }
    json rep = base_report("dist", cfg);
    rep["distribution"] = distribution_json(dist);
    if (method == "small-quench") {
        const auto amps = qecho::amplitude_set(modes);
        rep["n_max"] = qecho::auto_n_max(amps);
        rep["advisory_large_quench"] = amps.advisory_large_quench;
    }
    write_output(common.out, rep.dump(2) + "\n");
    return exit_ok;
}

int run_sweep(const CommonOptions& common, const std::vector<int>& lengths) {
    if (lengths.empty())
        throw qecho::invalid_spec_error("sweep: need at least one chain length");
    json cfg = spec_json(to_spec(common));
    cfg["Ls"] = lengths;
    json rep = base_report("sweep", cfg);
    rep["rows"] = json::array();
    for (int length : lengths) {
        CommonOptions o = common;
        o.L = length;
        const auto spec = to_spec(o);
        const auto modes = qecho::mode_data(spec);
        const auto kappa = qecho::cumulants_Z(modes, 4);
        json row;
        row["L"] = length;
        row["kappa"] = kappa;
        json per_site = json::array();
        for (double k : kappa) per_site.push_back(k / length);
        row["kappa_per_site"] = per_site;
        row["skewness"] = kappa[2] / std::pow(kappa[1], 1.5);
        row["excess_kurtosis"] = kappa[3] / (kappa[1] * kappa[1]);
        rep["rows"].push_back(row);
    }
    write_output(common.out, rep.dump(2) + "\n");
    return exit_ok;
}

int run_fidelity(const CommonOptions& common) {
    const auto spec = to_spec(common);
    const auto modes = qecho::mode_data(spec);
    const double f = qecho::gibbs_uhlmann_fidelity(spec);
    const double mean_echo = qecho::mean_echo_closed_form(modes);
    json rep = base_report("fidelity", spec_json(spec));
    rep["fidelity"] = f;
    rep["fidelity_squared"] = f * f;
    rep["mean_echo"] = mean_echo;
    rep["small_quench_discrepancy"] = std::abs(mean_echo - f * f);
    write_output(common.out, rep.dump(2) + "\n");
    return exit_ok;
}

Eigen::MatrixXcd matrix_from_json(const json& j, const char* who) {
    if (!j.contains("dim") || !j.contains("real"))
        throw qecho::invalid_spec_error(std::string(who) +
                                        ": matrix needs 'dim' and 'real' fields");
    const int d = j["dim"].get<int>();
    const auto re = j["real"].get<std::vector<std::vector<double>>>();
    std::vector<std::vector<double>> im;
    if (j.contains("imag")) im = j["imag"].get<std::vector<std::vector<double>>>();
    if (static_cast<int>(re.size()) != d)
        throw qecho::invalid_spec_error(std::string(who) + ": bad matrix shape");
    Eigen::MatrixXcd m(d, d);
    for (int r = 0; r < d; ++r) {
        if (static_cast<int>(re[static_cast<std::size_t>(r)].size()) != d)
            throw qecho::invalid_spec_error(std::string(who) + ": bad matrix shape");
        for (int c = 0; c < d; ++c)
            m(r, c) = std::complex<double>(
                re[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                im.empty() ? 0.0
                           : im[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
    return m;
}

int run_generic(const std::string& input, int dim, std::uint64_t seed, double epsilon,
                int grid_points, const std::string& out) {
    qecho::SpectralQuench sq;
    json cfg;
    if (!input.empty()) {
        std::ifstream f(input);
        if (!f) throw qecho::invalid_spec_error("generic: cannot open " + input);
        json j;
        f >> j;
        cfg["input"] = input;
        if (j.contains("h0") && j.contains("v")) {
            const double eps = j.value("epsilon", epsilon);
            sq = qecho::spectral_quench_perturbative(matrix_from_json(j["h0"], "generic"),
                                                     matrix_from_json(j["v"], "generic"),
                                                     eps);
            cfg["epsilon"] = eps;
        } else if (j.contains("h1") && j.contains("psi0")) {
            const auto re = j["psi0"]["real"].get<std::vector<double>>();
            std::vector<double> im(re.size(), 0.0);
            if (j["psi0"].contains("imag"))
                im = j["psi0"]["imag"].get<std::vector<double>>();
            Eigen::VectorXcd psi(static_cast<long>(re.size()));
            for (std::size_t i = 0; i < re.size(); ++i)
                psi(static_cast<long>(i)) = std::complex<double>(re[i], im[i]);
            sq = qecho::spectral_quench_exact(matrix_from_json(j["h1"], "generic"), psi);
        } else {
            throw qecho::invalid_spec_error(
                "generic: input needs either {h0, v, epsilon} or {h1, psi0}");
        }
    } else {
        const auto h0 = qecho::random_hermitian(dim, seed);
        const auto v = qecho::random_hermitian(dim, seed + 1);
        sq = qecho::spectral_quench_perturbative(h0, v, epsilon);
        cfg["dim"] = dim;
        cfg["seed"] = seed;
        cfg["epsilon"] = epsilon;
    }

    json rep = base_report("generic", cfg);
    rep["mean_echo"] = qecho::generic_mean_echo(sq);
    rep["ground_weight"] = sq.weights.empty() ? 0.0 : sq.weights[0];
    if (sq.perturbative) {
        rep["chi"] = sq.chi;
        rep["kappa2"] = qecho::generic_kappa2(sq);
        rep["kappa2_bound_holds"] = qecho::generic_kappa2(sq) <= 2.0 * sq.chi + 1e-15;
        rep["advisory_large_perturbation"] = sq.advisory_large_perturbation;
        qecho::GridSpec grid;
        grid.points = grid_points;
        rep["distribution"] = distribution_json(qecho::generic_logecho_distribution(sq, grid));
    }
    write_output(out, rep.dump(2) + "\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infinite-time Loschmidt-echo statistics for XY-chain quenches"};
    app.require_subcommand(1);

    CommonOptions common;
    double horizon = 50.0;
    std::uint64_t samples = 1001;
    std::uint64_t seed = 1;
    int grid_points = 801;
    double grid_lo = 0.0, grid_hi = 0.0;
    std::string method = "exact";
    std::vector<int> lengths;
    std::string generic_input;
    int generic_dim = 16;
    double generic_epsilon = 0.01;

    auto* cmd_echo = app.add_subcommand("echo", "sample the echo trajectory L(t)");
    add_common(cmd_echo, common);
    cmd_echo->add_option("--horizon", horizon, "final time of the grid");
    cmd_echo->add_option("--samples", samples, "number of time points");

    auto* cmd_dist = app.add_subcommand("dist", "long-time distribution of ln L");
    add_common(cmd_dist, common);
    cmd_dist->add_option("--method", method, "exact | empirical | small-quench");
    cmd_dist->add_option("--grid", grid_points, "density grid points");
    cmd_dist->add_option("--grid-lo", grid_lo, "grid lower edge (default: automatic)");
    cmd_dist->add_option("--grid-hi", grid_hi, "grid upper edge (default: automatic)");
    cmd_dist->add_option("--horizon", horizon, "time horizon (empirical)");
    cmd_dist->add_option("--samples", samples, "sample count (empirical)");
    cmd_dist->add_option("--seed", seed, "RNG seed (empirical)");

    auto* cmd_sweep = app.add_subcommand("sweep", "cumulant scaling across chain lengths");
    add_common(cmd_sweep, common);
    cmd_sweep->add_option("--Ls", lengths, "chain lengths to sweep")->delimiter(',');

    auto* cmd_fidelity =
        app.add_subcommand("fidelity", "Gibbs-state Uhlmann fidelity vs mean echo");
    add_common(cmd_fidelity, common);

    auto* cmd_generic = app.add_subcommand("generic", "generic-Hamiltonian quench report");
    cmd_generic->add_option("--input", generic_input, "JSON file with {h0,v,epsilon} or {h1,psi0}");
    cmd_generic->add_option("--dim", generic_dim, "random-instance dimension");
    cmd_generic->add_option("--seed", seed, "random-instance seed");
    cmd_generic->add_option("--epsilon", generic_epsilon, "perturbation strength");
    cmd_generic->add_option("--grid", grid_points, "density grid points");
    cmd_generic->add_option("--out", common.out, "output path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (cmd_echo->parsed())
            return run_echo(common, horizon, static_cast<int>(samples));
        if (cmd_dist->parsed())
            return run_dist(common, method, grid_points, grid_lo, grid_hi, horizon,
                            samples, seed);
        if (cmd_sweep->parsed()) return run_sweep(common, lengths);
        if (cmd_fidelity->parsed()) return run_fidelity(common);
        if (cmd_generic->parsed())
            return run_generic(generic_input, generic_dim, seed, generic_epsilon,
                               grid_points, common.out);
    } catch (const qecho::degenerate_mode_error& e) {
        std::cerr << "degenerate mode: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const qecho::degeneracy_error& e) {
        std::cerr << "degenerate spectrum: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const qecho::numeric_accuracy_error& e) {
        std::cerr << "numeric accuracy failure: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
