#include "sphereflow/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace sphereflow {

using nlohmann::json;

namespace {

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json jc(cplx z) { return json::array({round12(z.real()), round12(z.imag())}); }

cplx jc_read(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string kind_name(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::Source: return "source";
        case EquilibriumKind::Sink: return "sink";
        case EquilibriumKind::Center: return "center";
        case EquilibriumKind::PoleSaddle: return "pole-saddle";
        case EquilibriumKind::DegenerateZero: return "degenerate-zero";
        case EquilibriumKind::DegeneratePole: return "degenerate-pole";
    }
    return "?";
}

json point_json(const SpherePoint& p) {
    json j;
    if (p.is_infinity()) {
        j["infinity"] = true;
    } else {
        j["w"] = jc(p.w());
    }
    return j;
}

json verdict_json(const ConditionReport& r) {
    json j;
    j["verdict"] = to_string(r.verdict);
    if (!r.detail.empty()) j["detail"] = r.detail;
    j["worst"] = round12(r.worst);
    if (!r.witness_subsets.empty()) j["witnesses"] = r.witness_subsets;
    return j;
}

}  // namespace

json field_to_json(const RationalField& f) {
    json j;
    j["schema"] = "sphere-flows/1";
    j["a"] = jc(f.a);
    j["zeros"] = json::array();
    for (const cplx& z : f.zeros) j["zeros"].push_back(jc(z));
    j["poles"] = json::array();
    for (const cplx& p : f.poles) j["poles"].push_back(jc(p));
    j["mode"] = to_string(f.mode);
    j["degree"] = f.d;
    j["pole_degree"] = f.dp;
    return j;
}

RationalField field_from_json(const json& j) {
    if (j.contains("schema") && j.at("schema") != "sphere-flows/1")
        throw std::invalid_argument("unsupported schema");
    std::vector<cplx> zeros, poles;
    for (const auto& z : j.value("zeros", json::array())) zeros.push_back(jc_read(z));
    for (const auto& p : j.value("poles", json::array())) poles.push_back(jc_read(p));
    cplx a = 1.0;
    if (j.contains("a")) a = jc_read(j.at("a"));
    return build_field(zeros, poles, a);
}

json classification_to_json(const Classification& c) {
    json j;
    j["infinity_regular"] = c.infinity_regular;
    j["records"] = json::array();
    for (const auto& r : c.records) {
        json e;
        e["id"] = r.id;
        e["kind"] = kind_name(r.kind);
        e["location"] = point_json(r.location);
        e["multiplicity"] = r.multiplicity;
        e["is_pole"] = r.is_pole;
        e["linearization"] = jc(r.linearization);
        e["local_scale"] = round12(r.local_scale);
        j["records"].push_back(std::move(e));
    }
    return j;
}

json separatrices_to_json(const SeparatrixSet& s, int sample_stride) {
    json j;
    j["boundary"] = json::object();
    j["boundary"]["node_like"] = s.boundary.node_like;
    j["boundary"]["saddles"] = json::array();
    for (const auto& b : s.boundary.saddles) {
        json e;
        e["label"] = b.label;
        e["angle"] = round12(b.angle);
        e["color"] = to_string(b.color);
        j["boundary"]["saddles"].push_back(std::move(e));
    }
    j["items"] = json::array();
    for (const auto& sep : s.seps) {
        json e;
        e["id"] = sep.id;
        e["color"] = to_string(sep.color);
        e["pole"] = sep.pole_id;
        e["branch"] = sep.branch;
        e["boundary_label"] = sep.boundary_label;
        e["terminal"] = sep.terminal_equilibrium;
        e["terminal_at_infinity"] = sep.terminal_at_infinity;
        if (sep.terminal_at_infinity) {
            e["terminal_angle"] = round12(sep.terminal_angle);
            e["terminal_boundary_label"] = sep.terminal_boundary_label;
        }
        e["suspicious"] = sep.suspicious;
        e["verdict"] = static_cast<int>(sep.traj.verdict.kind);
        json samples = json::array();
        const auto& sm = sep.traj.samples;
        const int stride = std::max(1, sample_stride);
        for (size_t i = 0; i < sm.size(); i += stride) {
            samples.push_back(
                json::array({jc(sm[i].v), sm[i].chart_z, round12(sm[i].t_orig)}));
        }
        if (!sm.empty() && (sm.size() - 1) % stride != 0) {
            const auto& lastp = sm.back();
            samples.push_back(
                json::array({jc(lastp.v), lastp.chart_z, round12(lastp.t_orig)}));
        }
        e["samples"] = std::move(samples);
        j["items"].push_back(std::move(e));
    }
    return j;
}

json portrait_to_json(const Portrait& p) {
    json j;
    j["mode"] = to_string(p.mode);
    if (p.normalized) {
        const auto& np = *p.normalized;
        json e;
        e["ok"] = np.ok;
        if (!np.ok) e["reason"] = np.reason;
        if (np.ok) {
            e["checks"] = {{"colors", np.checks.colors_ok},
                           {"euler", np.checks.euler_ok},
                           {"quads", np.checks.quads_ok},
                           {"duality", np.checks.duality_ok}};
            const CodePolicy exact;
            e["blue_code"] = code_string(canonical_code(np.graphs.blue, exact));
            e["red_code"] = code_string(canonical_code(np.graphs.red, exact));
            e["blue_edge_pole"] = np.graphs.blue_edge_pole;
            e["red_edge_pole"] = np.graphs.red_edge_pole;
        }
        j["normalized"] = std::move(e);
    }
    if (p.polynomial) {
        const auto& pp = *p.polynomial;
        json e;
        e["ok"] = pp.ok;
        if (!pp.ok) e["reason"] = pp.reason;
        if (pp.ok) {
            e["sector_terminals"] = pp.sector_terminals;
            json angles = json::array();
            for (double a : pp.sector_angles) angles.push_back(round12(a));
            e["sector_angles"] = std::move(angles);
            e["tree_code"] = code_string(tree_code(pp.parse.tree));
            e["vertex_kind"] = pp.vertex_kind;
        }
        j["polynomial"] = std::move(e);
    }
    if (p.antipolynomial) {
        const auto& ap = *p.antipolynomial;
        json e;
        e["ok"] = ap.ok;
        if (!ap.ok) e["reason"] = ap.reason;
        if (ap.ok) {
            auto chords = [](const NcTree& t) {
                json arr = json::array();
                for (const auto& [x, y] : t.chords) arr.push_back(json::array({x, y}));
                return arr;
            };
            e["sink_nodes"] = ap.blue.n;
            e["source_nodes"] = ap.red.n;
            e["blue_chords"] = chords(ap.blue);
            e["red_chords"] = chords(ap.red);
            e["blue_code"] = code_string(nc_code(ap.blue));
            e["red_code"] = code_string(nc_code(ap.red));
            e["dual_ok"] = ap.dual_ok;
        }
        j["antipolynomial"] = std::move(e);
    }
    return j;
}

json nondeg_to_json(const NondegReport& rep) {
    json j;
    j["i_degrees"] = verdict_json(rep.cond_i);
    j["ii_zero_pole_line"] = verdict_json(rep.cond_ii);
    j["iii_residue_sums"] = verdict_json(rep.cond_iii);
    j["iv_pole_pair_periods"] = verdict_json(rep.cond_iv);
    j["pass"] = rep.pass();
    return j;
}

json realization_to_json(const RealizationResult& r) {
    json j;
    j["ok"] = r.ok;
    if (!r.ok) j["reason"] = r.reason;
    if (r.field) j["field"] = field_to_json(*r.field);
    j["plan"] = r.plan;
    return j;
}

json analysis_to_json(const RationalField& f, const Analysis& an, int sample_stride) {
    json j = field_to_json(f);
    j["classification"] = classification_to_json(an.cls);
    j["separatrices"] = separatrices_to_json(an.seps, sample_stride);
    j["portrait"] = portrait_to_json(an.portrait);
    return j;
}

std::string dump_stable(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sphereflow
