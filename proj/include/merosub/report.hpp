#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "merosub/theorem_forms.hpp"
#include "merosub/verifier.hpp"

namespace merosub {

using json = nlohmann::ordered_json;

inline json complex_json(Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

inline json verdict_json(const Verdict& v) {
    json j;
    j["status"] = to_string(v.status);
    j["margin"] = v.margin;
    if (v.witness) {
        j["witness"] = json{{"z", complex_json(v.witness->z)},
                            {"value", complex_json(v.witness->value)}};
    }
    return j;
}

inline json hypothesis_json(const HypothesisReport& h) {
    json arr = json::array();
    for (const auto& e : h.entries) {
        json j;
        j["id"] = e.id;
        j["margin"] = e.margin;
        j["argmin"] = complex_json(e.argmin);
        j["verdict"] = verdict_json(e.verdict);
        arr.push_back(std::move(j));
    }
    return arr;
}

inline json trial_json(const TrialReport& t) {
    json j;
    j["theorem"] = t.theorem;
    j["seed"] = t.seed;
    j["params"] = t.params_digest;
    j["hypotheses"] = hypothesis_json(t.hypotheses);
    j["premise"] = verdict_json(t.premise);
    j["conclusion"] = verdict_json(t.conclusion);
    j["classification"] = to_string(t.classification);
    if (!t.note.empty())
        j["note"] = t.note;
    return j;
}

inline json summary_json(const FuzzSummary& s) {
    json j;
    j["trials"] = s.trials;
    j["confirming"] = s.confirming;
    j["vacuous"] = s.vacuous;
    j["counterexamples"] = s.counterexamples;
    j["inconclusive"] = s.inconclusive;
    json ces = json::array();
    for (const auto& t : s.counterexample_reports)
        ces.push_back(trial_json(t));
    j["counterexample_reports"] = std::move(ces);
    return j;
}

inline json grid_json(const DiskGrid& g) {
    return json{{"radii", g.radii}, {"angular_count", g.angular_count}};
}

/// Report envelope. Timing never goes into the file so identical inputs give
/// byte-identical reports; callers print wall time to stderr instead.
inline json make_report(const std::string& command, const std::string& theorem,
                        const std::string& preset, const DiskGrid& grid, BaseMode mode,
                        json payload) {
    json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["theorem"] = theorem;
    j["preset"] = preset;
    j["grid"] = grid_json(grid);
    j["mode"] = to_string(mode);
    j["tolerances"] = json{{"decision_tol", decision_tol},
                           {"winding_guard", winding_guard},
                           {"derivative_floor", derivative_floor},
                           {"divide_floor", divide_floor},
                           {"power_base_tol", power_base_tol},
                           {"pole_guard", pole_guard},
                           {"outer_radius", outer_radius}};
    j["payload"] = std::move(payload);
    return j;
}

/// Write-then-rename so readers never observe a half-written report.
inline void emit_report(const std::filesystem::path& path, const json& doc) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw UsageError("cannot open '" + tmp.string() + "' for writing");
        out << doc.dump(2) << '\n';
        if (!out)
            throw UsageError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

/// Boundary-image CSV: a labelled header line, then theta,re,im rows.
inline void emit_curves(std::ostream& out, const std::string& label, double radius,
                        const std::vector<Complex>& values) {
    out << "# " << label << " radius=" << radius << " samples=" << values.size() << '\n';
    out << "theta,re,im\n";
    char buf[128];
    const std::size_t n = values.size();
    for (std::size_t j = 0; j < n; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                             static_cast<double>(n);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", theta, values[j].real(),
                      values[j].imag());
        out << buf;
    }
}

} // namespace merosub
