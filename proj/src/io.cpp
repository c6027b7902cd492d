#include "horext/io.hpp"

#include <fstream>
#include <stdexcept>

namespace horext::io {

namespace {

std::vector<double> doubles_from(const json& j, const char* what) {
    if (!j.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw std::runtime_error(std::string(what) + " must be numeric");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> rows_from(const json& j, const char* what) {
    if (!j.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
    std::vector<std::vector<double>> rows;
    for (const auto& row : j) rows.push_back(doubles_from(row, what));
    return rows;
}

} // namespace

json modulus_to_json(const ModulusOfContinuity& omega) {
    json j;
    switch (omega.kind()) {
    case ModulusKind::Power:
        j["kind"] = "power";
        j["alpha"] = omega.alpha();
        break;
    case ModulusKind::Linear:
        j["kind"] = "linear";
        break;
    case ModulusKind::Table:
        j["kind"] = "table";
        j["knots"] = omega.knots();
        break;
    }
    j["domain_cap"] = omega.domain_cap();
    return j;
}

ModulusOfContinuity modulus_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::runtime_error("modulus: missing \"kind\"");
    const double cap = j.value("domain_cap", 1e9);
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "linear") return ModulusOfContinuity::linear(cap);
    if (kind == "power") {
        if (!j.contains("alpha")) throw std::runtime_error("power modulus: missing alpha");
        return ModulusOfContinuity::power(j["alpha"].get<double>(), cap);
    }
    if (kind == "table") {
        if (!j.contains("knots")) throw std::runtime_error("table modulus: missing knots");
        std::vector<std::array<double, 2>> knots;
        for (const auto& k : j["knots"]) {
            if (!k.is_array() || k.size() != 2)
                throw std::runtime_error("table modulus: knots must be [t, w] pairs");
            knots.push_back({k[0].get<double>(), k[1].get<double>()});
        }
        return ModulusOfContinuity::table(std::move(knots), cap);
    }
    throw std::runtime_error("modulus: unknown kind \"" + kind + "\"");
}

json triple_to_json(const HorizontalJetTriple& gamma) {
    json j;
    j["K"] = gamma.K().points();
    j["m"] = gamma.order();
    j["F"] = gamma.F.rows();
    j["G"] = gamma.G.rows();
    j["H"] = gamma.H.rows();
    return j;
}

HorizontalJetTriple triple_from_json(const json& j) {
    for (const char* key : {"K", "m", "F", "G", "H"})
        if (!j.contains(key))
            throw std::runtime_error(std::string("jet triple: missing \"") + key + "\"");
    const SampleSet K(doubles_from(j["K"], "K"));
    const int m = j["m"].get<int>();
    return HorizontalJetTriple(ScalarJet(K, m, rows_from(j["F"], "F")),
                               ScalarJet(K, m, rows_from(j["G"], "G")),
                               ScalarJet(K, m, rows_from(j["H"], "H")));
}

json sampled_curve_to_json(const SampledCurve& curve) {
    json j;
    j["grid"] = curve.grid;
    json pts = json::array();
    for (const auto& p : curve.points) pts.push_back({p.x, p.y, p.z});
    j["points"] = pts;
    return j;
}

SampledCurve sampled_curve_from_json(const json& j) {
    if (!j.contains("grid") || !j.contains("points"))
        throw std::runtime_error("sampled curve: needs \"grid\" and \"points\"");
    SampledCurve curve;
    curve.grid = doubles_from(j["grid"], "grid");
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 3)
            throw std::runtime_error("sampled curve: points must be [x, y, z]");
        curve.points.push_back(
            {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    curve.validate();
    return curve;
}

json whitney_report_to_json(const WhitneyFieldReport& report) {
    json j;
    j["best_constant"] = report.best_constant;
    j["worst_witness"] = {{"a", report.worst_witness.a},
                          {"b", report.worst_witness.b},
                          {"k", report.worst_witness.k}};
    j["decay_profile"] = report.decay_profile;
    return j;
}

json av_report_to_json(const AVScanReport& report) {
    json j;
    j["mode"] = report.mode == AVMode::Continuous ? "continuous" : "discrete";
    j["max_ratio"] = report.max_ratio;
    json witness;
    witness["a"] = report.witness_a;
    witness["b"] = report.witness_b;
    if (!report.witness_X.empty()) witness["X"] = report.witness_X;
    j["witness"] = witness;
    j["ratios_by_scale"] = report.ratios_by_scale;
    return j;
}

json finiteness_report_to_json(const FinitenessReport& report) {
    json j;
    j["M_estimate"] = report.M_estimate;
    j["subsets_scanned"] = report.subsets_scanned;
    j["exhaustive"] = report.exhaustive;
    json ws = json::array();
    for (const auto& w : report.witnesses)
        ws.push_back({{"X", w.X}, {"quantity", w.quantity}, {"value", w.value}});
    j["witnesses"] = ws;
    return j;
}

json pieces_to_json(const PiecewiseSmoothCurve& curve) {
    json j;
    j["K"] = curve.K().points();
    j["m"] = curve.order();
    j["interval"] = {curve.alpha(), curve.beta()};
    j["audit"] = {{"max_jet_mismatch", curve.audit().max_jet_mismatch},
                  {"max_residual", curve.audit().max_residual},
                  {"seminorm", curve.audit().seminorm}};
    j["c_schedule"] = curve.constants().c_schedule;
    auto bumps_to_json = [](const std::vector<Bump>& bumps) {
        json arr = json::array();
        for (const Bump& b : bumps)
            arr.push_back({{"lo", b.lo}, {"hi", b.hi}, {"amplitude", b.amplitude}});
        return arr;
    };
    json pieces = json::array();
    for (const auto& piece : curve.pieces()) {
        json p;
        p["a"] = piece.gap.a;
        p["b"] = piece.gap.b;
        p["repair_case"] = to_string(piece.repair.kind);
        p["repair_order"] = piece.repair_order;
        p["area_deficit"] = piece.repair.area_deficit;
        p["repair_residual"] = piece.repair.residual;
        p["h_start"] = piece.h_start;
        p["f"] = {{"taylor_lo", piece.f.blend.pa.coeffs()},
                  {"taylor_hi", piece.f.blend.pb.coeffs()},
                  {"bumps", bumps_to_json(piece.f.bumps)}};
        p["g"] = {{"taylor_lo", piece.g.blend.pa.coeffs()},
                  {"taylor_hi", piece.g.blend.pb.coeffs()},
                  {"bumps", bumps_to_json(piece.g.bumps)}};
        pieces.push_back(p);
    }
    j["pieces"] = pieces;
    return j;
}

json lusin_result_to_json(const LusinResult& result) {
    json j;
    j["epsilon_target"] = result.epsilon_target;
    j["deficit"] = result.deficit;
    j["K"] = result.K_points;
    j["uniform_parameters"] = {{"N", result.uniform_report.N},
                               {"C", result.uniform_report.C},
                               {"rho0", result.uniform_report.rho0},
                               {"discarded_measure",
                                result.uniform_report.discarded_measure}};
    j["trimmed_cells"] = result.trimmed_cells;
    j["curve_audit"] = {{"max_jet_mismatch", result.curve.audit().max_jet_mismatch},
                        {"max_residual", result.curve.audit().max_residual}};
    return j;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("cannot parse \"" + path + "\": " + e.what());
    }
    return j;
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
    out << text;
    if (!out) throw std::runtime_error("write failed for \"" + path + "\"");
}

} // namespace horext::io
