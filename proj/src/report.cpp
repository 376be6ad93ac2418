// SPDX-License-Identifier: Apache-2.0

#include "qbayes/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

namespace qbayes {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) {
    return json{{"im", z.imag()}, {"re", z.real()}};
}

Complex complex_from_json(const json& j) {
    return Complex{j.at("re").get<double>(), j.at("im").get<double>()};
}

json amplitudes_to_json(const PureState& state) {
    json arr = json::array();
    for (const auto& a : state.amplitudes()) arr.push_back(complex_to_json(a));
    return arr;
}

json dims_to_json(const DimSpec& dims) {
    json arr = json::array();
    for (auto d : dims.factor_dims) arr.push_back(d);
    return arr;
}

DimSpec dims_from_json(const json& j) {
    DimSpec dims;
    for (const auto& d : j) dims.factor_dims.push_back(d.get<std::size_t>());
    return dims;
}

json pure_to_json(const PureState& state) {
    return json{{"amplitudes", amplitudes_to_json(state)},
                {"dims", dims_to_json(state.dims())},
                {"type", "pure"}};
}

json density_to_json(const DensityOperator& rho) {
    json rows = json::array();
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < rho.dim(); ++j) row.push_back(complex_to_json(rho.matrix()(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"dims", dims_to_json(rho.dims())}, {"entries", rows}, {"type", "density"}};
}

json state_variant_to_json(const std::variant<PureState, DensityOperator>& state) {
    if (std::holds_alternative<PureState>(state)) {
        return pure_to_json(std::get<PureState>(state));
    }
    return density_to_json(std::get<DensityOperator>(state));
}

PureState pure_from_json(const json& j) {
    std::vector<Complex> amps;
    for (const auto& a : j.at("amplitudes")) amps.push_back(complex_from_json(a));
    return PureState(std::move(amps), dims_from_json(j.at("dims")));
}

std::variant<PureState, DensityOperator> state_variant_from_json(const json& j) {
    if (j.at("type").get<std::string>() == "pure") return pure_from_json(j);
    const json& rows = j.at("entries");
    const std::size_t n = rows.size();
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) m(i, k) = complex_from_json(rows[i][k]);
    }
    return DensityOperator(std::move(m), dims_from_json(j.at("dims")));
}

json verdict_to_json(const InferenceVerdict& v) {
    return json{{"ccr_probability", v.ccr_probability},
                {"deterministic_ccr", v.deterministic_ccr},
                {"deterministic_qcr", v.deterministic_qcr},
                {"effect_probability", v.effect_probability},
                {"narrative", v.narrative},
                {"qcr_match_fidelity", v.qcr_match_fidelity},
                {"qcr_state", state_variant_to_json(v.qcr_state)}};
}

InferenceVerdict verdict_from_json(const json& j) {
    InferenceVerdict v;
    v.ccr_probability = j.at("ccr_probability").get<double>();
    v.deterministic_ccr = j.at("deterministic_ccr").get<bool>();
    v.deterministic_qcr = j.at("deterministic_qcr").get<bool>();
    v.effect_probability = j.at("effect_probability").get<double>();
    v.narrative = j.at("narrative").get<std::string>();
    v.qcr_match_fidelity = j.at("qcr_match_fidelity").get<double>();
    v.qcr_state = state_variant_from_json(j.at("qcr_state"));
    return v;
}

json report_to_json(const ScenarioReport& report) {
    json parameters = json::object();
    for (const auto& [key, value] : report.parameters) parameters[key] = value;

    json states = json::array();
    for (const auto& s : report.states) {
        states.push_back(json{{"amplitudes", amplitudes_to_json(s.state)},
                              {"dims", dims_to_json(s.state.dims())},
                              {"label", s.label}});
    }

    json steps = json::array();
    for (const auto& s : report.steps) {
        steps.push_back(json{{"label", s.label}, {"verdict", verdict_to_json(s.verdict)}});
    }

    return json{{"classical_bases", report.classical_bases},
                {"headline", json{{"ccr_conclusion", report.headline.ccr_conclusion},
                                  {"contradiction_resolved", report.headline.contradiction_resolved},
                                  {"qcr_conclusion", report.headline.qcr_conclusion}}},
                {"parameters", parameters},
                {"scenario", report.scenario},
                {"states", states},
                {"steps", steps}};
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // flush negative zero so parse/emit round trips
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// nlohmann keeps object keys sorted; this writer only pins the float
// format to 12 significant digits.
void dump_canonical(const json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + json(it.key()).dump() + ": ";
                dump_canonical(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_canonical(v, out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

std::string text_row(const ScenarioStep& s) {
    std::ostringstream os;
    os << "  " << s.label << " | ccr " << format_double(s.verdict.ccr_probability) << " | qcr "
       << format_double(s.verdict.qcr_match_fidelity) << " | P(effect) "
       << format_double(s.verdict.effect_probability) << " | "
       << (s.verdict.deterministic_ccr ? "CCR-certain" : "ccr-prob") << "/"
       << (s.verdict.deterministic_qcr ? "QCR-certain" : "qcr-prob") << " | "
       << s.verdict.narrative << "\n";
    return os.str();
}

}  // namespace

std::string emit_report(const ScenarioReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        std::string out;
        dump_canonical(report_to_json(report), out, 0);
        out += "\n";
        return out;
    }

    std::ostringstream os;
    os << "scenario: " << report.scenario << "\n";
    if (!report.parameters.empty()) {
        os << "parameters:";
        for (const auto& [k, v] : report.parameters) os << " " << k << "=" << format_double(v);
        os << "\n";
    }
    os << "classical bases: " << report.classical_bases << "\n";
    os << "states:";
    for (const auto& s : report.states) os << " " << s.label;
    os << "\n";
    os << "steps:\n";
    for (const auto& s : report.steps) os << text_row(s);
    os << "headline:\n";
    os << "  CCR: " << report.headline.ccr_conclusion << "\n";
    os << "  QCR: " << report.headline.qcr_conclusion << "\n";
    os << "  contradiction resolved: "
       << (report.headline.contradiction_resolved ? "yes" : "no") << "\n";
    return os.str();
}

ScenarioReport parse_report_json(const std::string& text) {
    const json j = json::parse(text);
    ScenarioReport report;
    report.scenario = j.at("scenario").get<std::string>();
    report.classical_bases = j.at("classical_bases").get<std::string>();
    for (const auto& [key, value] : j.at("parameters").items()) {
        report.parameters[key] = value.get<double>();
    }
    for (const auto& s : j.at("states")) {
        std::vector<Complex> amps;
        for (const auto& a : s.at("amplitudes")) amps.push_back(complex_from_json(a));
        report.states.push_back(
            {s.at("label").get<std::string>(), PureState(std::move(amps), dims_from_json(s.at("dims")))});
    }
    for (const auto& s : j.at("steps")) {
        report.steps.push_back(
            {s.at("label").get<std::string>(), verdict_from_json(s.at("verdict"))});
    }
    const json& h = j.at("headline");
    report.headline.ccr_conclusion = h.at("ccr_conclusion").get<std::string>();
    report.headline.qcr_conclusion = h.at("qcr_conclusion").get<std::string>();
    report.headline.contradiction_resolved = h.at("contradiction_resolved").get<bool>();
    return report;
}

DensityOperator load_prior_json(const std::string& text) {
    const json j = json::parse(text);
    const auto dim = j.at("dim").get<std::size_t>();
    const json& rows = j.at("entries");
    if (rows.size() != dim) {
        throw DimensionError("prior file: entry rows do not match dim");
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (rows[i].size() != dim) {
            throw DimensionError("prior file: entry row " + std::to_string(i) + " has wrong length");
        }
        for (std::size_t k = 0; k < dim; ++k) m(i, k) = complex_from_json(rows[i][k]);
    }
    return DensityOperator(std::move(m), DimSpec{{dim}});
}

DensityOperator load_prior_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("prior file: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_prior_json(buffer.str());
}

}  // namespace qbayes
