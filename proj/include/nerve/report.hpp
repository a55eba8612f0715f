#pragma once

// JSON and plain-text renderings of Betti tables and comparison reports.
// Timings are emitted only on request.

#include "nerve/classifying.hpp"
#include "nerve/complex.hpp"
#include "nerve/quasi_iso.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>
#include <string>

namespace nerve {

using Json = nlohmann::ordered_json;

inline std::string torsion_string(const std::vector<std::int64_t>& torsion)
{
    std::string s;
    for (std::size_t k = 0; k < torsion.size(); ++k)
        s += (k ? " + Z/" : "Z/") + std::to_string(torsion[k]);
    return s;
}

inline Json degrees_json(const BettiTable& t)
{
    Json arr = Json::array();
    for (const auto& d : t.degrees) {
        Json e;
        e["n"] = d.degree;
        e["betti"] = d.betti;
        e["torsion"] = d.torsion;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline Json hypotheses_json(const Hypotheses& h)
{
    Json j;
    j["order_h_invertible"] = h.averaging;
    j["notes"] = h.notes;
    return j;
}

inline Json pipeline_json(const PipelineReport& r, bool timing = false)
{
    Json j;
    j["pipeline"] = r.pipeline;
    j["group"] = r.group;
    j["ring"] = r.ring.to_string();
    j["max_degree"] = r.max_degree;
    if (r.table)
        j["degrees"] = degrees_json(*r.table);
    if (!r.error.empty())
        j["error"] = r.error;
    if (timing)
        j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline Json comparison_json(const ComparisonReport& r, bool timing = false)
{
    Json j;
    j["command"] = "verify-theorem41";
    j["group"] = r.group;
    j["ring"] = r.ring.to_string();
    j["max_degree"] = r.max_degree;
    j["hypotheses"] = hypotheses_json(r.hypotheses);
    j["pipelines"] = Json::array();
    for (const auto& p : r.pipelines)
        j["pipelines"].push_back(pipeline_json(p, timing));
    j["semidirect_agrees"] = r.semidirect_agrees ? Json(*r.semidirect_agrees) : Json(nullptr);
    j["equivariant_agrees"] = r.equivariant_agrees ? Json(*r.equivariant_agrees) : Json(nullptr);
    j["verdict"] = to_string(r.verdict);
    return j;
}

inline std::string betti_text(const std::string& pipeline, const std::string& group, const BettiTable& t)
{
    std::ostringstream os;
    os << "pipeline: " << pipeline << '\n' << "group:    " << group << '\n' << "ring:     " << t.ring.to_string() << '\n';
    os << std::setw(4) << "n" << std::setw(8) << "betti" << "  torsion\n";
    for (const auto& d : t.degrees)
        os << std::setw(4) << d.degree << std::setw(8) << d.betti << "  " << torsion_string(d.torsion) << '\n';
    return os.str();
}

inline std::string comparison_text(const ComparisonReport& r, bool timing = false)
{
    std::ostringstream os;
    os << "group:      " << r.group << '\n'
       << "ring:       " << r.ring.to_string() << '\n'
       << "max degree: " << r.max_degree << '\n'
       << "hypotheses: |H| invertible in ring: " << (r.hypotheses.averaging ? "yes" : "no") << '\n';
    for (const auto& n : r.hypotheses.notes)
        os << "  note: " << n << '\n';
    for (const auto& p : r.pipelines)
        if (!p.error.empty())
            os << "  error in " << p.pipeline << ": " << p.error << '\n';
    os << std::setw(4) << "n";
    for (const auto& p : r.pipelines)
        os << "  " << std::setw(30) << p.pipeline;
    os << '\n';
    for (int n = 0; n <= r.max_degree; ++n) {
        os << std::setw(4) << n;
        for (const auto& p : r.pipelines) {
            std::string cell = "-";
            if (p.table) {
                const auto& d = p.table->degrees[n];
                cell = std::to_string(d.betti);
                if (!d.torsion.empty())
                    cell += " (" + torsion_string(d.torsion) + ")";
            }
            os << "  " << std::setw(30) << cell;
        }
        os << '\n';
    }
    if (timing)
        for (const auto& p : r.pipelines)
            os << "time " << p.pipeline << ": " << p.wall_seconds << " s\n";
    os << "verdict: " << to_string(r.verdict) << '\n';
    return os.str();
}

inline Json quasi_iso_json(const QuasiIsoReport& r)
{
    Json j;
    j["columns"] = Json::array();
    for (const auto& c : r.columns) {
        Json e;
        e["p"] = c.p;
        e["checked_through"] = c.checked_through;
        e["cone_betti"] = c.cone_betti;
        e["quasi_iso"] = c.quasi_iso();
        if (c.failing_degree)
            e["failing_degree"] = *c.failing_degree;
        j["columns"].push_back(std::move(e));
    }
    j["source_total"] = degrees_json(r.source_total);
    j["target_total"] = degrees_json(r.target_total);
    j["totals_agree"] = r.totals_agree;
    j["passed"] = r.passed();
    return j;
}

} // namespace nerve
