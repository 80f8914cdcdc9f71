#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lpflux/besov.hpp"
#include "lpflux/bilinear.hpp"
#include "lpflux/example_fields.hpp"
#include "lpflux/field_io.hpp"
#include "lpflux/flux.hpp"
#include "lpflux/reports.hpp"
#include "lpflux/spectral_ops.hpp"
#include "lpflux/verify.hpp"

namespace lpflux::cli {

namespace {

std::vector<int> parse_sizes(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        out.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

double parse_real(const std::string& tok) {
    if (tok == "inf" || tok == "infinity") return lp_infinity;
    return std::stod(tok);
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        out.push_back(parse_real(s.substr(pos, comma == std::string::npos ? comma : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::pair<int, int> parse_range(const std::string& s) {
    const std::size_t dots = s.find("..");
    require(dots != std::string::npos, errc::parameter, "expected a range A..B");
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

void write_text_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    require(out.good(), errc::format, "cannot open " + path);
    out << text;
    require(out.good(), errc::format, "write failed for " + path);
}

Grid grid_from_sizes(const std::vector<int>& sizes, int L) {
    return Grid((int)sizes.size(), sizes, L);
}

int cmd_generate(const std::string& example, const std::string& n_str, int L, int q_lo, int q_hi,
                 const std::string& envelope, std::uint64_t seed, int Q, double delta, int n_max,
                 const std::string& profile_kind, const std::string& out_path) {
    const std::vector<int> sizes = parse_sizes(n_str);
    if (example == "eyink-energy" || example == "eyink-helicity") {
        Grid g = grid_from_sizes(sizes, L);
        Envelope env = envelope_rho(
            {envelope == "localized" ? EnvelopeVariant::localized : EnvelopeVariant::torus, g});
        Field u = example == "eyink-energy" ? eyink_energy_field(g, q_lo, q_hi, env)
                                            : eyink_helicity_field(g, q_lo, q_hi, env);
        write_field_file(u, out_path);
    } else if (example == "enstrophy-nonlocal") {
        Grid g = grid_from_sizes(sizes, L);
        write_field_file(enstrophy_nonlocal_field(g, Q, delta), out_path);
    } else if (example == "paraproduct") {
        Grid g = grid_from_sizes(sizes, L);
        ParaproductSequence seq = paraproduct_sequence(g, n_max, seed);
        write_field_file(seq.u, out_path + ".u");
        write_field_file(seq.v.back(), out_path + ".v");
        write_field_file(seq.w.back(), out_path + ".w");
        std::cout << "wrote " << out_path << ".u/.v/.w (n = " << n_max
                  << ", A = " << format_double(seq.A) << ")\n";
    } else if (example == "random") {
        Grid g = grid_from_sizes(sizes, L);
        ChiProfile chi;
        FilterBank bank(g, chi);
        std::vector<double> profile((std::size_t)bank.q_max() + 1, 0.0);
        const int lo = std::max(0, q_lo);
        const int hi = q_hi < 0 ? bank.q_max() - 1 : std::min(q_hi, bank.q_max());
        for (int q = lo; q <= hi; ++q) {
            double v = 1.0;
            if (profile_kind == "rolloff") v = std::pow(2.0, -(double)q / 3.0);
            if (profile_kind == "steep") v = std::pow(2.0, -(double)q);
            profile[(std::size_t)q] = v;
        }
        profile.resize((std::size_t)hi + 1);
        write_field_file(random_spectrum_field(g, profile, seed), out_path);
    } else {
        fail(errc::parameter, "unknown example: " + example);
    }
    return 0;
}

int cmd_flux(const std::string& in_path, const std::string& kind, const std::string& q_range,
             int q0, int q1, const std::string& normalize, const std::string& format,
             const std::string& out_path) {
    Field u = ensure_spectral(read_field_file(in_path));
    ChiProfile chi;
    FilterBank bank(u.grid(), chi);
    const double norm = normalize == "volume" ? u.grid().volume() : 1.0;
    FluxAnalyzer a(u, bank);

    CsvTable table;
    table.header = {"Q", "flux", "bound", "ratio"};
    // the locality bounds compare against the volume-normalized flux, so the
    // ratio column uses that regardless of --normalize
    auto add_row = [&](int Q, double flux_raw, double bound) {
        const double ratio = bound > 0.0 ? std::abs(flux_raw) / u.grid().volume() / bound : 0.0;
        table.add_row({std::to_string(Q), format_double(flux_raw / norm), format_double(bound),
                       format_double(ratio)});
    };

    if (kind == "shell") {
        // endpoint control: the band flux is bounded by the two edge bounds
        const double f = a.shell_flux(q0, q1);
        const double b = a.energy_bound(std::max(q0, 0)) + a.energy_bound(q1);
        add_row(q1, f, b);
    } else {
        auto [lo, hi] = parse_range(q_range);
        for (int Q = lo; Q <= hi; ++Q) {
            double f = 0.0, b = 0.0;
            if (kind == "energy") {
                f = a.energy_flux(Q);
                b = a.energy_bound(Q);
            } else if (kind == "helicity") {
                f = a.helicity_flux(Q);
                b = a.helicity_bound(Q);
            } else if (kind == "enstrophy") {
                f = a.enstrophy_flux(Q);
                b = a.enstrophy_bound(Q);
            } else {
                fail(errc::parameter, "unknown flux kind: " + kind);
            }
            add_row(Q, f, b);
        }
    }

    std::ostringstream os;
    if (format == "json")
        write_table_json(os, table);
    else
        write_csv(os, table);
    write_text_file(out_path, os.str());
    return 0;
}

int cmd_analyze(const std::string& in_path, const std::string& besov_str,
                const std::string& dyadic_str, int tail_Q, const std::string& format,
                const std::string& out_path) {
    const int requested = (int)!besov_str.empty() + (int)!dyadic_str.empty() + (int)(tail_Q >= 0);
    require(requested == 1, errc::parameter,
            "analyze expects exactly one of --besov, --dyadic, --tail");
    Field u = ensure_spectral(read_field_file(in_path));
    ChiProfile chi;
    FilterBank bank(u.grid(), chi);

    CsvTable table;
    if (!besov_str.empty()) {
        auto v = parse_reals(besov_str);
        require(v.size() == 3, errc::parameter, "--besov expects s,p,r");
        table.header = {"s", "p", "r", "norm"};
        table.add_row({format_double(v[0]), format_double(v[1]), format_double(v[2]),
                       format_double(besov_norm(u, {v[0], v[1], v[2]}, bank))});
    } else if (!dyadic_str.empty()) {
        auto v = parse_reals(dyadic_str);
        require(v.size() == 2, errc::parameter, "--dyadic expects s,p");
        DyadicCoefficients d = dyadic_coefficients(u, v[0], v[1], bank);
        table.header = {"q", "lambda_q", "coeff"};
        for (int q = -1; q <= d.q_max(); ++q)
            table.add_row({std::to_string(q), format_double(dyadic_scale(q)),
                           format_double(d.at(q))});
    } else {
        table.header = {"Q", "tail_sup"};
        for (int Q = tail_Q; Q <= bank.q_max(); ++Q)
            table.add_row({std::to_string(Q),
                           format_double(tail_sup(u, 1.0 / 3.0, 3.0, Q, bank))});
    }

    std::ostringstream os;
    if (format == "json")
        write_table_json(os, table);
    else
        write_csv(os, table);
    write_text_file(out_path, os.str());
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& report_path) {
    std::vector<CheckResult> checks = verify_suite(suite, seed);
    std::ostringstream os;
    write_check_report_json(os, suite, seed, checks);
    write_text_file(report_path, os.str());
    bool ok = true;
    for (const auto& c : checks) {
        if (!c.pass) {
            std::cerr << "FAILED: " << c.name << " (measured " << format_double(c.measured)
                      << ")\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}

int cmd_bilinear(int n_max, std::uint64_t seed, const std::string& report_path) {
    // size axis 1 to hold lambda_{n_max} plus the envelope band
    const int L = 8;
    int n1 = (int)std::ceil(2.0 * L * (dyadic_scale(n_max) + 0.5));
    n1 = ((n1 + 7) / 8) * 8;
    Grid g(3, {n1, 32, 32}, L);
    GrowthSeries s = divergence_growth(g, n_max, seed);

    std::ostringstream os;
    os << "{\n  \"A\": " << format_double(s.A) << ",\n  \"grid\": [" << n1
       << ", 32, 32],\n  \"L\": " << L << ",\n  \"series\": [\n";
    for (std::size_t i = 0; i < s.value.size(); ++i) {
        os << "    {\"n\": " << s.n[i] << ", \"value\": " << format_double(s.value[i])
           << ", \"predicted\": " << format_double(s.predicted[i]) << "}"
           << (i + 1 < s.value.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    write_text_file(report_path, os.str());
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Littlewood-Paley dyadic analysis of periodic incompressible fields"};
    app.require_subcommand(1);

    // generate
    std::string example, n_str = "64,64,64", envelope = "torus", out_path;
    std::string profile_kind = "flat";
    int L = 1, q_lo = 0, q_hi = -1, Q = 0, n_max = 4;
    double delta = 4.0;
    std::uint64_t seed = 1;
    auto* gen = app.add_subcommand("generate", "construct an example field and write it");
    gen->add_option("--example", example,
                    "eyink-energy|eyink-helicity|enstrophy-nonlocal|paraproduct|random")
        ->required();
    gen->add_option("--n", n_str, "grid sizes N or N,N or N,N,N");
    gen->add_option("--L", L, "lattice denominator");
    gen->add_option("--q-lo", q_lo, "lowest dyadic index");
    gen->add_option("--q-hi", q_hi, "highest dyadic index");
    gen->add_option("--envelope", envelope, "torus|localized");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--Q", Q, "target index for enstrophy-nonlocal");
    gen->add_option("--delta", delta, "envelope bandwidth for enstrophy-nonlocal");
    gen->add_option("--n-max", n_max, "ladder length for paraproduct");
    gen->add_option("--profile", profile_kind, "flat|rolloff|steep (random example)");
    gen->add_option("--out", out_path, "output field path")->required();

    // flux
    std::string in_path, kind, q_range = "0..0", normalize = "none", format = "csv";
    int q0 = 1, q1 = 1;
    auto* flux = app.add_subcommand("flux", "flux and locality-bound series");
    flux->add_option("--in", in_path, "input field path")->required();
    flux->add_option("--kind", kind, "energy|helicity|enstrophy|shell")->required();
    flux->add_option("--q-range", q_range, "A..B");
    flux->add_option("--q0", q0, "shell band lower index");
    flux->add_option("--q1", q1, "shell band upper index");
    flux->add_option("--normalize", normalize, "volume|none");
    flux->add_option("--format", format, "csv|json");
    flux->add_option("--out", out_path, "output path (default stdout)");

    // analyze
    std::string besov_str, dyadic_str;
    int tail_Q = -1;
    auto* an = app.add_subcommand("analyze", "Besov norms and dyadic coefficients");
    an->add_option("--in", in_path, "input field path")->required();
    an->add_option("--besov", besov_str, "s,p,r (r may be inf)");
    an->add_option("--dyadic", dyadic_str, "s,p");
    an->add_option("--tail", tail_Q, "tail-sup diagnostic from Q");
    an->add_option("--format", format, "csv|json");
    an->add_option("--out", out_path, "output path (default stdout)");

    // verify
    std::string suite = "all", report_path;
    auto* ver = app.add_subcommand("verify", "run a named check suite");
    ver->add_option("--suite", suite, "identities|oracle|examples|locality|bilinear|all");
    ver->add_option("--seed", seed, "random seed");
    ver->add_option("--report", report_path, "JSON report path (default stdout)");

    // bilinear
    auto* bil = app.add_subcommand("bilinear", "divergence-growth series of the advective term");
    bil->add_option("--n-max", n_max, "ladder length");
    bil->add_option("--seed", seed, "random seed");
    bil->add_option("--report", report_path, "JSON report path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed())
            return cmd_generate(example, n_str, L, q_lo, q_hi, envelope, seed, Q, delta, n_max,
                                profile_kind, out_path);
        if (flux->parsed())
            return cmd_flux(in_path, kind, q_range, q0, q1, normalize, format, out_path);
        if (an->parsed()) return cmd_analyze(in_path, besov_str, dyadic_str, tail_Q, format, out_path);
        if (ver->parsed()) return cmd_verify(suite, seed, report_path);
        if (bil->parsed()) return cmd_bilinear(n_max, seed, report_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace lpflux::cli
