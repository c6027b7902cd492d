// Command-line surface for validating, extending, and approximating
// horizontal curve data. Batch only; all outputs are deterministic JSON/CSV.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "horext/errors.hpp"
#include "horext/fixtures.hpp"
#include "horext/io.hpp"

namespace {

using namespace horext;
using horext::io::json;

constexpr int kExitAnalysis = 2; // validation / admissibility / coverage
constexpr int kExitSchema = 3;   // I/O or schema

ModulusOfContinuity parse_omega(const std::string& spec, double needed_cap) {
    const double cap = std::max(needed_cap, 1e9);
    if (spec == "linear") return ModulusOfContinuity::linear(cap);
    if (spec.rfind("power:", 0) == 0)
        return ModulusOfContinuity::power(std::stod(spec.substr(6)), cap);
    if (spec.rfind("table:", 0) == 0) {
        auto j = io::load_json(spec.substr(6));
        j["domain_cap"] = std::max(j.value("domain_cap", 1e9), needed_cap);
        return io::modulus_from_json(j);
    }
    throw std::runtime_error("unknown omega spec \"" + spec +
                             "\" (use linear | power:<alpha> | table:<path>)");
}

std::string csv_of_curve(const PiecewiseSmoothCurve& curve, std::size_t resolution) {
    std::ostringstream os;
    curve.export_csv(os, resolution);
    return os.str();
}

std::string csv_of_samples(const SampledCurve& curve) {
    const auto residual = horizontality_residual(curve);
    std::ostringstream os;
    os << "t,x,y,z,residual\n";
    char line[256];
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      curve.grid[i], curve.points[i].x, curve.points[i].y,
                      curve.points[i].z, residual.per_point[i]);
        os << line;
    }
    return os.str();
}

std::string csv_of_ratios(const AVScanReport& report) {
    std::ostringstream os;
    os << "gap,ratio\n";
    char line[128];
    for (const auto& [gap, ratio] : report.ratios_by_scale) {
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", gap, ratio);
        os << line;
    }
    return os.str();
}

int run_validate(const std::string& input, const std::string& omega_spec,
                 const std::string& out, double max_av_ratio, double max_whitney,
                 std::size_t budget, std::size_t max_points) {
    const auto gamma = io::triple_from_json(io::load_json(input));
    const auto omega = parse_omega(omega_spec, gamma.K().diam());
    const auto par = ExecutionPolicy::Parallel;

    json report;
    report["whitney"] = {
        {"F", io::whitney_report_to_json(validate_cmw(gamma.F, omega, par, max_points))},
        {"G", io::whitney_report_to_json(validate_cmw(gamma.G, omega, par, max_points))},
        {"H", io::whitney_report_to_json(validate_cmw(gamma.H, omega, par, max_points))}};

    const ScalarJet HL = leibniz_vertical_jet(gamma.F, gamma.G);
    double leibniz_dev = 0.0, scale = 1.0;
    for (int k = 1; k <= gamma.order(); ++k)
        for (std::size_t i = 0; i < gamma.K().size(); ++i) {
            leibniz_dev =
                std::max(leibniz_dev, std::abs(gamma.H.value(k, i) - HL.value(k, i)));
            scale = std::max(scale, std::abs(gamma.H.value(k, i)));
        }
    report["leibniz_deviation"] = leibniz_dev;

    const auto av = av_ratio_scan(gamma, omega, par, max_points);
    report["av"] = io::av_report_to_json(av);

    SampledCurve values;
    values.grid = gamma.K().points();
    for (std::size_t i = 0; i < values.grid.size(); ++i)
        values.points.push_back(
            {gamma.F.value(0, i), gamma.G.value(0, i), gamma.H.value(0, i)});
    report["av_discrete"] =
        io::av_report_to_json(discrete_av_scan(values, gamma.order(), omega, budget));

    int failed = 0;
    for (const char* coord : {"F", "G", "H"})
        if (report["whitney"][coord]["best_constant"].get<double>() > max_whitney)
            failed = 1;
    if (leibniz_dev > 1e-8 * scale && failed == 0) failed = 2;
    if (av.max_ratio > max_av_ratio && failed == 0) failed = 3;
    report["verdict"] = failed == 0 ? json("admissible")
                                    : json("condition (" + std::to_string(failed) +
                                           ") failed");
    if (!out.empty()) io::save_text(out, report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    if (failed != 0) {
        std::cerr << "validate: condition (" << failed << ") failed\n";
        return kExitAnalysis;
    }
    return 0;
}

int run_extend(const std::string& input, const std::string& omega_spec, int m_max,
               const std::string& out, std::size_t resolution, double tol) {
    const auto gamma = io::triple_from_json(io::load_json(input));
    const double alpha = gamma.K().min(), beta = gamma.K().max();
    const std::string prefix = out.empty() ? "extended" : out;
    ExtendOptions opts;
    opts.leibniz_tol = tol;
    if (m_max > 0) {
        const auto curve =
            extend_cinfty(truncate_triple(gamma, m_max), alpha, beta, opts);
        io::save_text(prefix + ".csv", csv_of_curve(curve, resolution));
        io::save_text(prefix + ".pieces.json", io::pieces_to_json(curve).dump(2) + "\n");
    } else {
        const auto omega = parse_omega(omega_spec, beta - alpha);
        const auto curve = extend_horizontal(gamma, omega, alpha, beta, opts);
        io::save_text(prefix + ".csv", csv_of_curve(curve, resolution));
        io::save_text(prefix + ".pieces.json", io::pieces_to_json(curve).dump(2) + "\n");
    }
    std::cout << "wrote " << prefix << ".csv and " << prefix << ".pieces.json\n";
    return 0;
}

int run_finiteness(const std::string& input, const std::string& omega_spec, int m,
                   std::size_t budget, const std::string& out) {
    const auto curve = io::sampled_curve_from_json(io::load_json(input));
    const auto omega =
        parse_omega(omega_spec, curve.grid.back() - curve.grid.front());
    const auto report = finiteness_check(curve, m, omega, budget);
    const json j = io::finiteness_report_to_json(report);
    if (!out.empty()) io::save_text(out, j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_lusin(const std::string& input, const std::string& omega_spec, int m,
              int m_max, double epsilon, const std::string& out,
              std::size_t resolution, double tol) {
    const auto dense = io::sampled_curve_from_json(io::load_json(input));
    const std::string prefix = out.empty() ? "lusin" : out;
    LusinOptions opts;
    opts.horizontality_tol = tol;
    const auto result =
        m_max > 0 ? lusin_cinfty(dense, m_max, epsilon, opts)
                  : lusin_approximate(
                        dense, m,
                        parse_omega(omega_spec,
                                    dense.grid.back() - dense.grid.front()),
                        epsilon, opts);
    io::save_text(prefix + ".json", io::lusin_result_to_json(result).dump(2) + "\n");
    io::save_text(prefix + ".csv", csv_of_curve(result.curve, resolution));
    std::cout << "deficit " << result.deficit << " (target " << epsilon << ")\n";
    return 0;
}

int run_curve_suite(const std::string& out_dir, std::size_t points, int m,
                    std::size_t dense_points) {
    std::filesystem::create_directories(out_dir);
    auto emit = [&](const fixtures::AnalyticCurve& curve) {
        const SampleSet K(fixtures::uniform_grid(0.0, 1.0, points));
        const auto triple = fixtures::sample_jets(curve, K, m);
        io::save_text(out_dir + "/" + curve.name + ".jets.json",
                      io::triple_to_json(triple).dump(2) + "\n");
        // Point values on K for the subset scans, dense samples for Lusin.
        const auto on_K = fixtures::sample_curve(curve, K.points());
        io::save_text(out_dir + "/" + curve.name + ".values.json",
                      io::sampled_curve_to_json(on_K).dump(2) + "\n");
        const auto dense = fixtures::sample_curve(
            curve, fixtures::uniform_grid(0.0, 1.0, dense_points));
        io::save_text(out_dir + "/" + curve.name + ".curve.json",
                      io::sampled_curve_to_json(dense).dump(2) + "\n");
    };
    for (const auto& curve : fixtures::smooth_suite()) emit(curve);
    emit(fixtures::vertical_line());
    emit(fixtures::corner_curve());
    std::cout << "wrote fixtures to " << out_dir << "\n";
    return 0;
}

int run_plot_data(const std::string& input, const std::string& kind,
                  const std::string& omega_spec, int m, const std::string& out) {
    const auto j = io::load_json(input);
    std::string csv;
    if (kind == "av-ratios") {
        if (j.contains("F")) {
            const auto gamma = io::triple_from_json(j);
            const auto omega = parse_omega(omega_spec, gamma.K().diam());
            csv = csv_of_ratios(av_ratio_scan(gamma, omega));
        } else {
            const auto curve = io::sampled_curve_from_json(j);
            const auto omega =
                parse_omega(omega_spec, curve.grid.back() - curve.grid.front());
            csv = csv_of_ratios(discrete_av_scan(curve, m, omega));
        }
    } else if (kind == "curve") {
        csv = csv_of_samples(io::sampled_curve_from_json(j));
    } else {
        throw std::runtime_error("unknown plot kind \"" + kind +
                                 "\" (use av-ratios | curve)");
    }
    if (out.empty())
        std::cout << csv;
    else
        io::save_text(out, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Whitney extension and Lusin approximation for horizontal curves"};
    app.require_subcommand(1);

    std::string input, out, omega_spec = "linear", kind = "av-ratios";
    int m = 2, m_max = 0;
    double epsilon = 0.1;
    std::size_t budget = 20000, resolution = 512, points = 17, dense_points = 2001;
    std::size_t max_points = kDefaultPairScanCap;
    double max_av_ratio = 100.0, max_whitney = 1e4, tol = 1e-3;

    auto* validate = app.add_subcommand("validate", "check the extension conditions");
    validate->add_option("--input", input)->required();
    validate->add_option("--omega", omega_spec);
    validate->add_option("--out", out);
    validate->add_option("--budget", budget);
    validate->add_option("--max-av-ratio", max_av_ratio);
    validate->add_option("--max-whitney", max_whitney);
    validate->add_option("--max-points", max_points, "pair scan cap override");

    auto* extend = app.add_subcommand("extend", "construct a horizontal extension");
    extend->add_option("--input", input)->required();
    extend->add_option("--omega", omega_spec);
    extend->add_option("--m-max", m_max,
                       "truncated-C-infinity mode at this order (0 = C^{m,w})");
    extend->add_option("--out", out);
    extend->add_option("--resolution", resolution);
    extend->add_option("--tol", tol, "vertical Leibniz tolerance")
        ->default_val(1e-8);

    auto* finiteness = app.add_subcommand("finiteness", "finiteness-principle scan");
    finiteness->add_option("--input", input)->required();
    finiteness->add_option("--omega", omega_spec);
    finiteness->add_option("--m", m);
    finiteness->add_option("--budget", budget);
    finiteness->add_option("--out", out);

    auto* lusin = app.add_subcommand("lusin", "Lusin approximation of dense samples");
    lusin->add_option("--input", input)->required();
    lusin->add_option("--omega", omega_spec);
    lusin->add_option("--m", m);
    lusin->add_option("--m-max", m_max, "C-infinity mode up to this order");
    lusin->add_option("--epsilon", epsilon);
    lusin->add_option("--out", out);
    lusin->add_option("--resolution", resolution);
    lusin->add_option("--tol", tol, "horizontality residual tolerance")
        ->default_val(1e-3);

    auto* suite = app.add_subcommand("curve-suite", "write the bundled fixtures");
    suite->add_option("--out", out)->required();
    suite->add_option("--points", points);
    suite->add_option("--m", m);
    suite->add_option("--dense-points", dense_points);

    auto* plot = app.add_subcommand("plot-data", "emit CSV series for plotting");
    plot->add_option("--input", input)->required();
    plot->add_option("--kind", kind, "av-ratios | curve");
    plot->add_option("--omega", omega_spec);
    plot->add_option("--m", m);
    plot->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return run_validate(input, omega_spec, out, max_av_ratio, max_whitney,
                                budget, max_points);
        if (extend->parsed())
            return run_extend(input, omega_spec, m_max, out, resolution, tol);
        if (finiteness->parsed())
            return run_finiteness(input, omega_spec, m, budget, out);
        if (lusin->parsed())
            return run_lusin(input, omega_spec, m, m_max, epsilon, out, resolution,
                             tol);
        if (suite->parsed()) return run_curve_suite(out, points, m, dense_points);
        if (plot->parsed()) return run_plot_data(input, kind, omega_spec, m, out);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const AdmissibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const CoverageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    }
    return 0;
}
