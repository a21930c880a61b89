// qwg: command-line runner for the waveguide-electron laboratory.
// Every subcommand computes first and writes last (atomically), records a
// manifest with a config digest, and maps failures onto exit codes:
// 0 ok, 2 configuration error, 3 numerical abort.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwg/cli_config.hpp"
#include "qwg/qwg.hpp"

namespace fs = std::filesystem;
using namespace qwg;
using nlohmann::json;

namespace {

/// Collects outputs for one scenario run; writes the manifest last.
class OutputSession {
  public:
    OutputSession(std::string subcommand, fs::path out_dir, json resolved_config)
        : manifest_(), dir_(std::move(out_dir)), config_(std::move(resolved_config)),
          start_(std::chrono::steady_clock::now()) {
        manifest_.subcommand = std::move(subcommand);
        manifest_.config_hash = hex64(fnv1a64(config_.dump()));
    }

    const fs::path& dir() const { return dir_; }

    void set_seed(std::uint64_t seed) {
        manifest_.has_seed = true;
        manifest_.seed = seed;
    }

    void write_csv(const std::string& name, const CsvWriter& csv) {
        csv.write_atomic(dir_ / name);
        manifest_.outputs.push_back(name);
    }

    void write_json(const std::string& name, const json& j) {
        write_text_atomic(dir_ / name, j.dump(2) + "\n");
        manifest_.outputs.push_back(name);
    }

    void finalize(const RunReport& report) {
        json rep = cli::report_to_json(report);
        write_text_atomic(dir_ / "report.json", rep.dump(2) + "\n");
        manifest_.outputs.push_back("report.json");
        manifest_.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json m = cli::manifest_to_json(manifest_);
        m["config"] = config_;
        write_text_atomic(dir_ / "manifest.json", m.dump(2) + "\n");
        std::cout << manifest_.subcommand << ": ok, outputs in " << dir_.string() << "\n";
    }

  private:
    RunManifest manifest_;
    fs::path dir_;
    json config_;
    std::chrono::steady_clock::time_point start_;
};

fs::path resolve_out_dir(const std::string& out_flag) {
    fs::path dir = out_flag.empty() ? fs::path("qwg_out") : fs::path(out_flag);
    if (const char* env = std::getenv("QWG_OUT_DIR"); env && *env && dir.is_relative())
        dir = fs::path(env) / dir;
    return dir;
}

CsvWriter field_csv(const Grid1D& g, const std::vector<cdouble>& u,
                    const std::vector<double>* V = nullptr) {
    std::vector<std::string> cols{"z", "re_psi", "im_psi", "abs2"};
    if (V)
        cols.push_back("V");
    CsvWriter csv(cols);
    for (std::size_t j = 0; j < g.n; ++j) {
        std::vector<double> row{g.z(j), u[j].real(), u[j].imag(), std::norm(u[j])};
        if (V)
            row.push_back((*V)[j]);
        csv.add_row(row);
    }
    return csv;
}

json constants_json() {
    const auto& k = constants::codata;
    json j;
    j["c_m_per_s"] = k.c;
    j["h_J_s"] = k.h;
    j["hbar_J_s"] = k.hbar;
    j["m_e_kg"] = k.m_e;
    j["e_C"] = k.e_charge;
    j["G_m3_per_kg_s2"] = k.G;
    j["epsilon0_F_per_m"] = k.epsilon0;
    j["compton_cutoff_me_Hz"] = constants::compton_cutoff(k.m_e);
    j["waveguide_width_me_m"] = constants::waveguide_width(k.m_e);
    j["planck_length_m"] = constants::planck_length();
    j["planck_mass_kg"] = constants::planck_mass();
    return j;
}

CsvWriter dispersion_csv(double kmin, double kmax, std::size_t n, double fo) {
    auto t = dispersion::dispersion_table(kmin, kmax, n, fo);
    CsvWriter csv({"k", "f_kg", "f_schrod", "f_clock"});
    for (std::size_t i = 0; i < t.k_samples.size(); ++i)
        csv.add_row({t.k_samples[i], t.f_kg[i], t.f_schrod[i], t.f_clock_branch[i]});
    return csv;
}

CsvWriter fig72_csv(double a) {
    // normalized quantum potential for R = sech(a z): Q / (hbar^2 a^2 / 2m)
    CsvWriter csv({"z", "q_normalized"});
    for (int i = 0; i <= 1000; ++i) {
        const double z = -5.0 + 0.01 * i;
        csv.add_row({z, bohm::sech_quantum_potential(a, z) / (0.5 * a * a)});
    }
    return csv;
}

CsvWriter bohr_csv(unsigned n_max) {
    CsvWriter csv({"n", "r_m", "v_over_c", "E_eV", "M_over_hbar", "N_quantization"});
    for (unsigned n = 1; n <= n_max; ++n) {
        auto o = bohr::orbit_from_n(n);
        csv.add_row({static_cast<double>(n), o.r, o.v_e / constants::codata.c,
                     o.E / constants::codata.e_charge, o.M / constants::codata.hbar,
                     bohr::orbit_quantization_number(o)});
    }
    return csv;
}

struct SolitonOutcome {
    nonlinear::ComplexField1D final_field;
    CsvWriter conserved{std::vector<std::string>{"t", "norm", "momentum", "energy"}};
    std::vector<std::pair<std::string, CsvWriter>> snapshots;
    RunReport report;
};

SolitonOutcome run_soliton(const cli::SolitonConfig& c) {
    using namespace nonlinear;
    Grid1D g(c.z_min, c.z_max, c.n);
    ComplexField1D f;
    if (c.equation == "nls")
        f = c.profile == "sech" ? initial_breather(g, c.a, c.v, c.z0)
                                : initial_gaussian_packet(g, c.z0, 1.0 / c.a, 0.5 * c.v);
    else
        f = c.profile == "sech" ? initial_sech_packet(g, c.a, c.v, c.z0)
                                : initial_gaussian_packet(g, c.z0, 1.0 / c.a, c.v);

    const auto eq = c.equation == "nls"  ? Equation::Nls
                    : c.equation == "gp" ? Equation::GrossPitaevskii
                                         : Equation::NonlinearQ;
    EvolveOptions opt;
    opt.eps_rel = c.eps;

    SolitonOutcome out;
    const auto c0 = conserved_set(f, eq, c.potential, c.g);
    const auto m0 = density_moments(g, f.u);
    out.conserved.add_row({f.t, c0.norm, c0.momentum, c0.energy});

    auto snapshot = [&](const ComplexField1D& field, int index) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%04d.csv", index);
        out.snapshots.emplace_back(name, field_csv(field.grid, field.u));
    };
    snapshot(f, 0);

    const double chunk_t = c.snapshot_every > 0.0 ? c.snapshot_every : c.t_end;
    const auto chunk_steps = static_cast<std::size_t>(std::llround(chunk_t / c.dt));
    const auto n_chunks = static_cast<std::size_t>(std::llround(c.t_end / chunk_t));
    std::vector<double> centroid_t{f.t}, centroid_z{m0.mean};
    int snap_index = 1;
    for (std::size_t chunk = 0; chunk < std::max<std::size_t>(n_chunks, 1); ++chunk) {
        switch (eq) {
        case Equation::Nls:
            f = evolve_nls(f, c.dt, chunk_steps, opt);
            break;
        case Equation::GrossPitaevskii:
            f = evolve_gp(f, c.potential, c.g, c.include_rest, c.dt, chunk_steps, 1.0, 1.0, 1.0, opt);
            break;
        case Equation::NonlinearQ:
            f = evolve_nlq(f, c.potential, c.dt, chunk_steps, 1.0, 1.0, opt);
            break;
        }
        const auto cs = conserved_set(f, eq, c.potential, c.g);
        out.conserved.add_row({f.t, cs.norm, cs.momentum, cs.energy});
        const auto m = density_moments(g, f.u);
        centroid_t.push_back(f.t);
        centroid_z.push_back(m.mean);
        snapshot(f, snap_index++);
    }

    const auto cend = conserved_set(f, eq, c.potential, c.g);
    out.report.add_scalar("t_end", f.t);
    out.report.add_scalar("norm_drift_rel", std::abs(cend.norm - c0.norm) / c0.norm);
    out.report.add_scalar("energy_drift_abs", std::abs(cend.energy - c0.energy));
    // centroid velocity by least squares
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < centroid_t.size(); ++i) {
        sx += centroid_t[i];
        sy += centroid_z[i];
        sxx += centroid_t[i] * centroid_t[i];
        sxy += centroid_t[i] * centroid_z[i];
    }
    const auto m = static_cast<double>(centroid_t.size());
    if (m > 1.5 && m * sxx - sx * sx > 1e-30)
        out.report.add_scalar("centroid_velocity_fit", (m * sxy - sx * sy) / (m * sxx - sx * sx));
    if (c.equation == "nls" && c.profile == "sech") {
        double worst = 0.0;
        for (std::size_t j = 0; j < g.n; ++j)
            worst = std::max(worst,
                             std::abs(f.u[j] - breather_exact(c.a, c.v, c.z0, g.z(j), f.t)));
        out.report.add_scalar("max_error_vs_exact", worst);
    }
    out.final_field = std::move(f);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"waveguide-electron numerical laboratory"};
    app.require_subcommand(0, 1);
    app.failure_message(CLI::FailureMessage::help);

    try {
        // ---- constants ----
        auto* c_const = app.add_subcommand("constants", "dump the embedded constants as JSON");
        std::string const_out = "qwg_out";
        c_const->add_option("--out", const_out, "output directory");

        // ---- dispersion ----
        auto* c_disp = app.add_subcommand("dispersion", "sampled dispersion branches as CSV");
        double kmin = 0.0, kmax = 3.0, fo = 1.0;
        std::size_t npts = 301;
        std::string disp_out = "qwg_out";
        c_disp->add_option("--kmin", kmin, "lowest wavenumber");
        c_disp->add_option("--kmax", kmax, "highest wavenumber");
        c_disp->add_option("--n", npts, "number of samples");
        c_disp->add_option("--fo", fo, "cutoff frequency");
        c_disp->add_option("--out", disp_out, "output directory");

        // ---- kg ----
        auto* c_kg = app.add_subcommand("kg", "standing-wave frequency measurement");
        double kg_k = 0.25, kg_fo = 1.0, kg_cfl = 0.25, kg_periods = 50.0;
        std::size_t kg_n = 64;
        std::string kg_out = "qwg_out";
        c_kg->add_option("--k", kg_k, "plain wavenumber of the initial cosine");
        c_kg->add_option("--fo", kg_fo, "cutoff frequency");
        c_kg->add_option("--cfl", kg_cfl, "time step as a fraction of dz");
        c_kg->add_option("--periods", kg_periods, "measurement span in oscillation periods");
        c_kg->add_option("--n", kg_n, "points per wavelength domain");
        c_kg->add_option("--out", kg_out, "output directory");

        // ---- stationary ----
        auto* c_stat = app.add_subcommand("stationary", "time-independent solvers");
        auto* c_scat = c_stat->add_subcommand("scatter", "transfer-matrix scattering");
        std::string scat_potential, scat_out = "qwg_out";
        double scat_E = 1.0;
        c_scat->add_option("--potential", scat_potential, "potential JSON file")->required();
        c_scat->add_option("--E", scat_E, "energy")->required();
        c_scat->add_option("--out", scat_out, "output directory");
        auto* c_bound = c_stat->add_subcommand("bound", "bound-state eigenpairs");
        std::string bound_potential, bound_out = "qwg_out";
        std::size_t bound_n = 4, bound_grid = 2048;
        double bound_zmin = -8.0, bound_zmax = 8.0;
        c_bound->add_option("--potential", bound_potential, "potential JSON file")->required();
        c_bound->add_option("--n", bound_n, "number of states");
        c_bound->add_option("--zmin", bound_zmin, "left wall");
        c_bound->add_option("--zmax", bound_zmax, "right wall");
        c_bound->add_option("--grid", bound_grid, "grid points");
        c_bound->add_option("--out", bound_out, "output directory");

        // ---- bohm ----
        auto* c_bohm = app.add_subcommand("bohm", "polar-decomposition diagnostics");
        auto* c_qp = c_bohm->add_subcommand("qp", "quantum potential of a named profile");
        std::string qp_profile = "sech", qp_out = "qwg_out";
        double qp_a = 1.0;
        c_qp->add_option("--profile", qp_profile, "profile name (sech)");
        c_qp->add_option("--a", qp_a, "profile scale");
        c_qp->add_option("--out", qp_out, "output directory");
        auto* c_res = c_bohm->add_subcommand("residuals", "phase/continuity residuals of a packet");
        std::string res_out = "qwg_out";
        double res_sigma = 1.0, res_k0 = 0.5, res_t = 1.0;
        c_res->add_option("--sigma", res_sigma, "packet width");
        c_res->add_option("--k0", res_k0, "packet wavenumber");
        c_res->add_option("--t", res_t, "evaluation time");
        c_res->add_option("--out", res_out, "output directory");

        // ---- soliton ----
        auto* c_sol = app.add_subcommand("soliton", "nonlinear evolvers");
        std::string sol_eq, sol_config, sol_out = "qwg_out";
        c_sol->add_option("--eq", sol_eq, "equation: nls|gp|nlq");
        c_sol->add_option("--config", sol_config, "run configuration JSON")->required();
        c_sol->add_option("--out", sol_out, "output directory");

        // ---- zigzag ----
        auto* c_zig = app.add_subcommand("zigzag", "hidden-phase barrier ensemble");
        std::string zig_potential, zig_out = "qwg_out";
        double zig_E = 0.5;
        std::size_t zig_n = 100000;
        std::uint64_t zig_seed = 1;
        unsigned zig_threads = 1;
        c_zig->add_option("--potential", zig_potential, "potential JSON file")->required();
        c_zig->add_option("--E", zig_E, "energy")->required();
        c_zig->add_option("--n", zig_n, "ensemble size");
        c_zig->add_option("--seed", zig_seed, "RNG seed");
        c_zig->add_option("--threads", zig_threads, "worker threads");
        c_zig->add_option("--out", zig_out, "output directory");

        // ---- ambiguity ----
        auto* c_amb = app.add_subcommand("ambiguity", "pulse widths and ambiguity surface");
        auto* c_widths = c_amb->add_subcommand("widths", "second-moment widths");
        std::string w_shape = "gaussian", w_out = "qwg_out";
        c_widths->add_option("--shape", w_shape, "gaussian|sech|rect");
        c_widths->add_option("--out", w_out, "output directory");
        auto* c_surf = c_amb->add_subcommand("surface", "delay-Doppler surface as CSV");
        std::string s_shape = "sech", s_out = "qwg_out";
        std::size_t s_nd = 65, s_nf = 65;
        c_surf->add_option("--shape", s_shape, "gaussian|sech|rect");
        c_surf->add_option("--ndelay", s_nd, "delay samples");
        c_surf->add_option("--ndoppler", s_nf, "doppler samples");
        c_surf->add_option("--out", s_out, "output directory");

        // ---- bohr ----
        auto* c_bohr = app.add_subcommand("bohr", "orbit table with quantization numbers");
        unsigned bohr_nmax = 10;
        std::string bohr_out = "qwg_out";
        c_bohr->add_option("--nmax", bohr_nmax, "highest quantum number");
        c_bohr->add_option("--out", bohr_out, "output directory");

        // ---- repro ----
        auto* c_repro = app.add_subcommand("repro", "regenerate the reference figures/values");
        std::string repro_what = "all", repro_out = "qwg_out";
        unsigned repro_threads = 1;
        c_repro->add_option("what", repro_what, "fig5.1|fig7.2|width|planck|bohr|all");
        c_repro->add_option("--out", repro_out, "output directory");
        c_repro->add_option("--threads", repro_threads, "accepted for parity; output is identical");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) // --help
                return app.exit(e);
            app.exit(e);
            return 2;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help() << std::flush;
            return 2;
        }

        // ---------------- dispatch ----------------
        if (c_const->parsed()) {
            json cfg{{"subcommand", "constants"}};
            OutputSession s("constants", resolve_out_dir(const_out), cfg);
            s.write_json("constants.json", constants_json());
            s.finalize(RunReport{});
            return 0;
        }
        if (c_disp->parsed()) {
            json cfg{{"kmin", kmin}, {"kmax", kmax}, {"n", npts}, {"fo", fo}};
            OutputSession s("dispersion", resolve_out_dir(disp_out), cfg);
            s.write_csv("dispersion.csv", dispersion_csv(kmin, kmax, npts, fo));
            s.finalize(RunReport{});
            return 0;
        }
        if (c_kg->parsed()) {
            json cfg{{"k", kg_k}, {"fo", kg_fo}, {"cfl", kg_cfl}, {"periods", kg_periods}, {"n", kg_n}};
            OutputSession s("kg", resolve_out_dir(kg_out), cfg);
            const double kappa = 2.0 * std::numbers::pi * kg_k;
            Grid1D g(0.0, 2.0 * std::numbers::pi / kappa, kg_n);
            std::vector<std::pair<double, double>> series;
            auto r = kg::measure_mode_frequency(g, kg_fo, kappa, kg_cfl * g.dz(), kg_periods,
                                                &series);
            CsvWriter csv({"t", "mode_amplitude"});
            for (const auto& [t, a] : series)
                csv.add_row({t, a});
            s.write_csv("series.csv", csv);
            RunReport rep;
            rep.add_scalar("f_measured", r.f_measured);
            rep.add_scalar("f_exact", dispersion::kg_frequency(kg_k, kg_fo));
            rep.add_scalar("energy_rel_drift", r.energy_rel_drift);
            rep.add_scalar("steps", static_cast<double>(r.steps));
            s.finalize(rep);
            return 0;
        }
        if (c_scat->parsed()) {
            auto pot = cli::potential_from_json(cli::load_json_file(scat_potential));
            json cfg{{"potential", cli::potential_to_json(pot)}, {"E", scat_E}};
            OutputSession s("stationary scatter", resolve_out_dir(scat_out), cfg);
            auto r = stationary::solve_scattering(pot, scat_E);
            const auto& segs = pot.is_piecewise()
                                   ? pot.segments()
                                   : std::vector<PotentialSegment>{{-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
            Grid1D g(segs.front().z_start, segs.back().z_end, 1024);
            auto psi = stationary::scattering_wavefunction(pot, scat_E, g);
            auto vs = pot.sample(g);
            s.write_csv("wavefunction.csv", field_csv(g, psi, &vs));
            json rj{{"E", r.energy}, {"R", r.R_prob},           {"T", r.T_prob},
                    {"re_r", r.r.real()}, {"im_r", r.r.imag()}, {"re_t", r.t.real()},
                    {"im_t", r.t.imag()}};
            s.write_json("scattering.json", rj);
            RunReport rep;
            rep.add_scalar("R", r.R_prob);
            rep.add_scalar("T", r.T_prob);
            rep.add_scalar("unitarity_defect", std::abs(r.R_prob + r.T_prob - 1.0));
            s.finalize(rep);
            return 0;
        }
        if (c_bound->parsed()) {
            auto pot = cli::potential_from_json(cli::load_json_file(bound_potential));
            json cfg{{"potential", cli::potential_to_json(pot)},
                     {"n", bound_n},
                     {"zmin", bound_zmin},
                     {"zmax", bound_zmax},
                     {"grid", bound_grid}};
            OutputSession s("stationary bound", resolve_out_dir(bound_out), cfg);
            auto bs = stationary::solve_bound_states(pot, bound_n, bound_zmin, bound_zmax, bound_grid);
            std::vector<std::string> cols{"z", "V"};
            for (std::size_t i = 0; i < bs.energies.size(); ++i)
                cols.push_back("psi_" + std::to_string(i));
            CsvWriter csv(cols);
            for (std::size_t j = 0; j < bs.z.size(); ++j) {
                std::vector<double> row{bs.z[j], pot(bs.z[j])};
                for (const auto& st : bs.states)
                    row.push_back(st[j]);
                csv.add_row(row);
            }
            s.write_csv("states.csv", csv);
            json ej;
            ej["energies"] = bs.energies;
            ej["n_bound"] = bs.n_bound;
            ej["all_confined"] = bs.all_confined;
            s.write_json("energies.json", ej);
            RunReport rep;
            rep.add_scalar("E_0", bs.energies.front());
            rep.add_scalar("n_bound", static_cast<double>(bs.n_bound));
            s.finalize(rep);
            return 0;
        }
        if (c_qp->parsed()) {
            if (qp_profile != "sech")
                throw config_error("bohm qp: only the sech profile is built in");
            json cfg{{"profile", qp_profile}, {"a", qp_a}};
            OutputSession s("bohm qp", resolve_out_dir(qp_out), cfg);
            Grid1D g(-40.0, 40.0, 4096);
            auto rep_can = bohm::cancellation_check(qp_a, PotentialSpec::free(), g);
            s.write_csv("quantum_potential.csv", fig72_csv(qp_a));
            RunReport rep;
            rep.add_scalar("identity_deviation", rep_can.max_identity_deviation);
            rep.add_scalar("term_deviation_vs_closed_form", rep_can.max_term_deviation);
            s.finalize(rep);
            return 0;
        }
        if (c_res->parsed()) {
            json cfg{{"sigma", res_sigma}, {"k0", res_k0}, {"t", res_t}};
            OutputSession s("bohm residuals", resolve_out_dir(res_out), cfg);
            Grid1D g(-20.0, 20.0, 1024);
            auto f0 = nonlinear::initial_gaussian_packet(g, 0.0, res_sigma, res_k0);
            const double dt = 1e-3;
            std::vector<bohm::PolarField> hist;
            for (int i = -1; i <= 1; ++i) {
                auto fi = nonlinear::free_evolve(f0, res_t + i * dt);
                hist.push_back(bohm::decompose(g, fi.u, 1.0, fi.t));
            }
            auto hj = bohm::hamilton_jacobi_residual(hist, PotentialSpec::free());
            auto ct = bohm::continuity_residual(hist);
            CsvWriter csv({"z", "hj_residual", "continuity_residual", "valid"});
            for (std::size_t j = 0; j < g.n; ++j)
                csv.add_row({g.z(j), hj.value[j], ct.value[j],
                             static_cast<double>(hj.valid[j] && ct.valid[j])});
            s.write_csv("residuals.csv", csv);
            RunReport rep;
            rep.add_scalar("hj_max", hj.max_abs());
            rep.add_scalar("continuity_max", ct.max_abs());
            s.finalize(rep);
            return 0;
        }
        if (c_sol->parsed()) {
            auto cj = cli::load_json_file(sol_config);
            auto conf = cli::soliton_config_from_json(cj);
            if (!sol_eq.empty()) {
                if (cj.contains("equation") && sol_eq != conf.equation)
                    throw config_error("soliton: --eq disagrees with the config file");
                conf.equation = sol_eq;
                if (conf.equation != "nls" && conf.equation != "gp" && conf.equation != "nlq")
                    throw config_error("soliton: --eq must be nls|gp|nlq");
            }
            OutputSession s("soliton " + conf.equation, resolve_out_dir(sol_out), conf.resolved());
            s.set_seed(conf.seed);
            auto outcome = run_soliton(conf);
            for (const auto& [name, csv] : outcome.snapshots)
                s.write_csv(name, csv);
            s.write_csv("conserved.csv", outcome.conserved);
            s.finalize(outcome.report);
            return 0;
        }
        if (c_zig->parsed()) {
            auto pot = cli::potential_from_json(cli::load_json_file(zig_potential));
            json cfg{{"potential", cli::potential_to_json(pot)},
                     {"E", zig_E},
                     {"n", zig_n},
                     {"seed", zig_seed}};
            OutputSession s("zigzag", resolve_out_dir(zig_out), cfg);
            s.set_seed(zig_seed);
            auto r = zigzag::ensemble_scatter(zig_E, pot, zig_n, zig_seed, zig_threads);
            json rj;
            rj["n_samples"] = r.n_samples;
            rj["n_reflected"] = r.n_reflected;
            rj["n_transmitted"] = r.n_transmitted;
            rj["wave_R"] = r.wave_R;
            rj["wave_T"] = r.wave_T;
            rj["empirical_T"] = r.empirical_T;
            rj["ci_5sigma_halfwidth"] = 5.0 * r.binomial_sigma;
            rj["seed"] = r.seed;
            rj["rule_version"] = r.rule_version;
            s.write_json("ensemble.json", rj);
            RunReport rep;
            rep.add_scalar("empirical_T", r.empirical_T);
            rep.add_scalar("wave_T", r.wave_T);
            s.finalize(rep);
            return 0;
        }
        if (c_widths->parsed() || c_surf->parsed()) {
            const bool widths_mode = c_widths->parsed();
            const std::string shape = widths_mode ? w_shape : s_shape;
            Grid1D g(-20.0, 20.0, 4096);
            ambiguity::PulseProfile pulse;
            if (shape == "gaussian")
                pulse = ambiguity::gaussian_pulse(g);
            else if (shape == "sech")
                pulse = ambiguity::sech_pulse(g);
            else if (shape == "rect")
                pulse = ambiguity::rectangular_pulse(g, 2.5);
            else
                throw config_error("ambiguity: unknown shape " + shape);
            json cfg{{"shape", shape}};
            if (widths_mode) {
                OutputSession s("ambiguity widths", resolve_out_dir(w_out), cfg);
                auto w = ambiguity::moment_widths(pulse);
                json rj{{"delta_x", w.delta_x},
                        {"delta_k", w.delta_k},
                        {"product", w.delta_x * w.delta_k},
                        {"delta_k_divergent", w.delta_k_divergent}};
                s.write_json("widths.json", rj);
                RunReport rep;
                rep.add_scalar("uncertainty_product", w.delta_x * w.delta_k);
                s.finalize(rep);
            } else {
                cfg["ndelay"] = s_nd;
                cfg["ndoppler"] = s_nf;
                OutputSession s("ambiguity surface", resolve_out_dir(s_out), cfg);
                auto w = ambiguity::moment_widths(pulse);
                auto surf = ambiguity::ambiguity_surface(pulse, s_nd, s_nf, 6.0 * w.delta_x,
                                                         1.2 * w.delta_k);
                CsvWriter csv({"tau", "fd", "magnitude"});
                for (std::size_t i = 0; i < surf.delay_axis.size(); ++i)
                    for (std::size_t m2 = 0; m2 < surf.doppler_axis.size(); ++m2)
                        csv.add_row({surf.delay_axis[i], surf.doppler_axis[m2], surf.at(i, m2)});
                s.write_csv("surface.csv", csv);
                RunReport rep;
                rep.add_scalar("volume", ambiguity::surface_volume(surf));
                rep.status = surf.resolution_warning ? RunStatus::Warning : RunStatus::Ok;
                if (surf.resolution_warning)
                    rep.diagnostics.push_back("lattice coarser than the pulse mainlobe");
                s.finalize(rep);
            }
            return 0;
        }
        if (c_bohr->parsed()) {
            json cfg{{"nmax", bohr_nmax}};
            OutputSession s("bohr", resolve_out_dir(bohr_out), cfg);
            s.write_csv("orbits.csv", bohr_csv(bohr_nmax));
            s.finalize(RunReport{});
            return 0;
        }
        if (c_repro->parsed()) {
            json cfg{{"what", repro_what}};
            OutputSession s("repro " + repro_what, resolve_out_dir(repro_out), cfg);
            RunReport rep;
            bool matched = false;
            if (repro_what == "fig5.1" || repro_what == "all") {
                s.write_csv("fig5_1.csv", dispersion_csv(0.0, 3.0, 301, 1.0));
                matched = true;
            }
            if (repro_what == "fig7.2" || repro_what == "all") {
                s.write_csv("fig7_2.csv", fig72_csv(1.0));
                matched = true;
            }
            if (repro_what == "width" || repro_what == "all") {
                const double w = constants::waveguide_width(constants::codata.m_e);
                json wj{{"waveguide_width_me_m", w},
                        {"half_compton_wavelength_m", w},
                        {"bohr_radius_m", bohr::orbit_from_n(1).r},
                        {"width_to_bohr_ratio", w / bohr::orbit_from_n(1).r}};
                s.write_json("width.json", wj);
                matched = true;
            }
            if (repro_what == "planck" || repro_what == "all") {
                json pj{{"planck_length_m", constants::planck_length()},
                        {"planck_mass_kg", constants::planck_mass()}};
                s.write_json("planck.json", pj);
                matched = true;
            }
            if (repro_what == "bohr" || repro_what == "all") {
                s.write_csv("bohr_table.csv", bohr_csv(10));
                matched = true;
            }
            if (!matched)
                throw config_error("repro: unknown target " + repro_what);
            s.finalize(rep);
            return 0;
        }
        std::cerr << app.help() << std::flush;
        return 2;
    } catch (const numerical_abort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
