#include "sphereflow/json_io.hpp"
#include "sphereflow/svg.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace sphereflow;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kAnalysisFailure = 2;
constexpr int kVerificationFailure = 3;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct Config {
    int stride = 8;
    int svg_size = 640;
    double span = 0.0;
    SeparatrixOptions sep;
    NondegTolerances nondeg;
};

void apply_config(Config& cfg, const std::string& path) {
    if (path.empty()) return;
    const json j = read_json(path);
    cfg.stride = j.value("stride", cfg.stride);
    cfg.svg_size = j.value("svg_size", cfg.svg_size);
    cfg.span = j.value("span", cfg.span);
    cfg.sep.seed_offset = j.value("seed_offset", cfg.sep.seed_offset);
    cfg.sep.boundary_seed_r = j.value("boundary_seed_r", cfg.sep.boundary_seed_r);
    cfg.sep.flow.rel_tol = j.value("rel_tol", cfg.sep.flow.rel_tol);
    cfg.sep.flow.t_max = j.value("t_max", cfg.sep.flow.t_max);
    cfg.nondeg.res_tol = j.value("res_tol", cfg.nondeg.res_tol);
    cfg.nondeg.period_tol = j.value("period_tol", cfg.nondeg.period_tol);
    cfg.nondeg.lattice_bound = j.value("lattice_bound", cfg.nondeg.lattice_bound);
}

std::string charts_svg(const RationalField& f, const Analysis& an, const Config& cfg) {
    SvgOptions so;
    so.size = cfg.svg_size;
    so.span = cfg.span;
    const std::string a = render_svg(f, an, so);
    so.view_z = true;
    so.span = 0.0;
    const std::string b = render_svg(f, an, so);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * cfg.svg_size
        << "\" height=\"" << cfg.svg_size << "\">\n<svg x=\"0\">" << a << "</svg>\n<svg x=\""
        << cfg.svg_size << "\">" << b << "</svg>\n</svg>\n";
    return out.str();
}

PlaneTree tree_from_json(const json& j) {
    PlaneTree t;
    for (const auto& row : j) t.nbr.push_back(row.get<std::vector<int>>());
    return t;
}

NcTree nctree_from_json(const json& j) {
    NcTree t;
    t.n = j.at("n").get<int>();
    for (const auto& c : j.at("chords"))
        t.chords.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    return t;
}

PlaneMultigraph map_from_json(const json& j) {
    std::vector<std::vector<int>> rot;
    for (const auto& row : j.at("rotation")) rot.push_back(row.get<std::vector<int>>());
    const auto twin = j.at("twin").get<std::vector<int>>();
    std::vector<int> colors;
    if (j.contains("colors")) colors = j.at("colors").get<std::vector<int>>();
    return PlaneMultigraph::build(rot, twin, colors);
}

int run_realize(const std::string& mode, const json& target, const std::string& out) {
    RealizationResult res;
    if (mode == "polynomial") {
        res = realize_polynomial(tree_from_json(target.at("nbr")));
    } else if (mode == "antipolynomial") {
        res = realize_antipolynomial(nctree_from_json(target));
    } else if (mode == "rational") {
        RationalTarget t;
        t.blue = map_from_json(target.at("blue"));
        t.red = map_from_json(target.at("red"));
        res = realize_rational(t);
    } else {
        std::cerr << "unknown mode " << mode << "\n";
        return kUsage;
    }
    write_text(out, dump_stable(realization_to_json(res)));
    return res.ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational flows on the sphere: analysis, portraits, realization"};
    app.require_subcommand(1);

    std::string field_path, out_path, config_path, svg_path;
    Config cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("field", field_path, "field JSON file")->required();
        sub->add_option("-o,--out", out_path, "output path, - for stdout");
        sub->add_option("--config", config_path, "JSON overriding tuning defaults");
    };

    auto* c_analyze = app.add_subcommand("analyze", "full pipeline: classify, trace, portrait");
    add_common(c_analyze);
    c_analyze->add_option("--render", svg_path, "also write an SVG phase portrait");
    bool charts = false;
    c_analyze->add_flag("--charts", charts, "render both charts side by side");
    c_analyze->add_option("--stride", cfg.stride, "keep every n-th trajectory sample");

    auto* c_classify = app.add_subcommand("classify", "equilibria only");
    add_common(c_classify);

    auto* c_trace = app.add_subcommand("trace", "separatrices with samples");
    add_common(c_trace);
    c_trace->add_option("--stride", cfg.stride, "keep every n-th trajectory sample");

    auto* c_portrait = app.add_subcommand("portrait", "combinatorial portrait only");
    add_common(c_portrait);

    auto* c_nondeg = app.add_subcommand("check-nondeg", "nondegeneracy conditions; exit 0 iff pass");
    add_common(c_nondeg);

    auto* c_render = app.add_subcommand("render", "SVG phase portrait");
    add_common(c_render);
    c_render->add_flag("--charts", charts, "render both charts side by side");
    c_render->add_option("--size", cfg.svg_size, "canvas pixels");
    c_render->add_option("--span", cfg.span, "half width of the window");

    std::string kind;
    int size_arg = 0, index_arg = -1;
    auto* c_enum = app.add_subcommand("enumerate", "catalog of combinatorial classes");
    c_enum->add_option("kind", kind, "planar-trees | nc-trees | nc-trees-labeled")->required();
    c_enum->add_option("size", size_arg, "vertices (trees) or circle nodes (nc)")->required();
    c_enum->add_option("-o,--out", out_path, "output path, - for stdout");

    auto* c_count = app.add_subcommand("count", "closed-form class counts");
    c_count->add_option("kind", kind, "planar-trees | nc-trees | nc-trees-labeled")->required();
    c_count->add_option("size", size_arg, "vertices (trees) or circle nodes (nc)")->required();
    c_count->add_option("-o,--out", out_path, "output path, - for stdout");

    std::string mode, target_path;
    auto* c_realize = app.add_subcommand("realize", "construct a field with a prescribed portrait");
    c_realize->add_option("--mode", mode, "polynomial | rational | antipolynomial")->required();
    c_realize->add_option("--target", target_path, "target JSON file");
    c_realize->add_option("--kind", kind, "catalog kind for --index");
    c_realize->add_option("--size", size_arg, "catalog size for --index");
    c_realize->add_option("--index", index_arg, "catalog index instead of --target");
    c_realize->add_option("-o,--out", out_path, "output path, - for stdout");

    auto* c_batch = app.add_subcommand("batch", "analyze an array of fields");
    c_batch->add_option("field", field_path, "JSON array of field objects")->required();
    c_batch->add_option("-o,--out", out_path, "output path, - for stdout");
    c_batch->add_option("--config", config_path, "JSON overriding tuning defaults");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        apply_config(cfg, config_path);

        if (c_enum->parsed() || c_count->parsed()) {
            json j;
            j["schema"] = "sphere-flows/1";
            j["kind"] = kind;
            j["size"] = size_arg;
            if (kind == "planar-trees") {
                if (c_enum->parsed()) {
                    json items = json::array();
                    for (const auto& t : enumerate_plane_trees(size_arg)) {
                        json e;
                        e["nbr"] = t.nbr;
                        e["code"] = code_string(tree_code(t));
                        items.push_back(std::move(e));
                    }
                    j["items"] = std::move(items);
                    j["count"] = j["items"].size();
                } else {
                    j["count"] = count_plane_trees(size_arg);
                }
            } else if (kind == "nc-trees" || kind == "nc-trees-labeled") {
                const bool classes = kind == "nc-trees";
                if (c_enum->parsed()) {
                    json items = json::array();
                    const auto list = classes ? enumerate_nc_tree_classes(size_arg)
                                              : enumerate_nc_trees_labeled(size_arg);
                    for (const auto& t : list) {
                        json e;
                        e["n"] = t.n;
                        json ch = json::array();
                        for (const auto& [a, b] : t.chords) ch.push_back(json::array({a, b}));
                        e["chords"] = std::move(ch);
                        e["code"] = code_string(nc_code(t));
                        items.push_back(std::move(e));
                    }
                    j["items"] = std::move(items);
                    j["count"] = j["items"].size();
                } else {
                    j["count"] = classes ? count_nc_tree_classes(size_arg - 1)
                                         : count_nc_trees_labeled(size_arg);
                }
            } else {
                std::cerr << "unknown kind " << kind << "\n";
                return kUsage;
            }
            write_text(out_path, dump_stable(j));
            return kOk;
        }

        if (c_realize->parsed()) {
            json target;
            if (!target_path.empty()) {
                target = read_json(target_path);
            } else if (index_arg >= 0) {
                if (kind == "planar-trees" || (kind.empty() && mode == "polynomial")) {
                    const auto list = enumerate_plane_trees(size_arg);
                    if (index_arg >= static_cast<int>(list.size())) {
                        std::cerr << "index out of range\n";
                        return kUsage;
                    }
                    target["nbr"] = list[index_arg].nbr;
                } else if (kind == "nc-trees" || (kind.empty() && mode == "antipolynomial")) {
                    const auto list = enumerate_nc_tree_classes(size_arg);
                    if (index_arg >= static_cast<int>(list.size())) {
                        std::cerr << "index out of range\n";
                        return kUsage;
                    }
                    target["n"] = list[index_arg].n;
                    json ch = json::array();
                    for (const auto& [a, b] : list[index_arg].chords)
                        ch.push_back(json::array({a, b}));
                    target["chords"] = std::move(ch);
                } else {
                    std::cerr << "no catalog for kind " << kind << "\n";
                    return kUsage;
                }
            } else {
                std::cerr << "need --target or --index\n";
                return kUsage;
            }
            return run_realize(mode, target, out_path);
        }

        if (c_batch->parsed()) {
            const json arr = read_json(field_path);
            json out = json::array();
            for (const auto& jf : arr) {
                const RationalField f = field_from_json(jf);
                out.push_back(analysis_to_json(f, analyze(f, cfg.sep), cfg.stride));
            }
            write_text(out_path, dump_stable(out));
            return kOk;
        }

        // remaining commands share a single input field
        const RationalField f = field_from_json(read_json(field_path));

        if (c_classify->parsed()) {
            json j = field_to_json(f);
            j["classification"] = classification_to_json(classify(f));
            write_text(out_path, dump_stable(j));
            return kOk;
        }
        if (c_nondeg->parsed()) {
            const NondegReport rep = check_nondegeneracy(f, cfg.nondeg);
            json j = field_to_json(f);
            j["nondegeneracy"] = nondeg_to_json(rep);
            write_text(out_path, dump_stable(j));
            return rep.pass() ? kOk : kVerificationFailure;
        }

        const Analysis an = analyze(f, cfg.sep);

        if (c_trace->parsed()) {
            json j = field_to_json(f);
            j["classification"] = classification_to_json(an.cls);
            j["separatrices"] = separatrices_to_json(an.seps, cfg.stride);
            write_text(out_path, dump_stable(j));
            return kOk;
        }
        if (c_portrait->parsed()) {
            json j = field_to_json(f);
            j["portrait"] = portrait_to_json(an.portrait);
            write_text(out_path, dump_stable(j));
            return kOk;
        }
        if (c_render->parsed()) {
            SvgOptions so;
            so.size = cfg.svg_size;
            so.span = cfg.span;
            write_text(out_path, charts ? charts_svg(f, an, cfg) : render_svg(f, an, so));
            return kOk;
        }
        if (c_analyze->parsed()) {
            json j = analysis_to_json(f, an, cfg.stride);
            write_text(out_path, dump_stable(j));
            if (!svg_path.empty()) {
                SvgOptions so;
                so.size = cfg.svg_size;
                so.span = cfg.span;
                write_text(svg_path, charts ? charts_svg(f, an, cfg) : render_svg(f, an, so));
            }
            return kOk;
        }
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAnalysisFailure;
    }
}
