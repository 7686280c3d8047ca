#include "sphereflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace sphereflow {

namespace {

struct Mapper {
    double span;
    int size;
    double px(double x) const { return (x / span * 0.5 + 0.5) * size; }
    double py(double y) const { return (0.5 - y / span * 0.5) * size; }
};

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// position of a sample or record in the requested view, if representable
std::optional<cplx> in_view(cplx v, bool sample_chart_z, bool view_z) {
    if (sample_chart_z == view_z) return v;
    if (std::abs(v) < 1e-12) return std::nullopt;
    return 1.0 / v;
}

}  // namespace

std::string render_svg(const RationalField& f, const Analysis& an, const SvgOptions& opt) {
    double span = opt.span;
    if (span <= 0.0) {
        span = 1.0;
        for (const auto& r : an.cls.records) {
            const auto v = in_view(r.location.v, r.location.chart_z, opt.view_z);
            if (v) span = std::max(span, 1.6 * std::abs(*v));
        }
        if (!opt.view_z) span = std::max(span, 0.5 * f.scene_scale);
    }
    const Mapper m{span, opt.size};
    const double clip = span * 1.4;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.size << "\" height=\""
        << opt.size << "\" viewBox=\"0 0 " << opt.size << " " << opt.size << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"0\" y1=\"" << num(m.py(0)) << "\" x2=\"" << opt.size << "\" y2=\""
        << num(m.py(0)) << "\" stroke=\"#eee\"/>\n";
    svg << "<line y1=\"0\" x1=\"" << num(m.px(0)) << "\" y2=\"" << opt.size << "\" x2=\""
        << num(m.px(0)) << "\" stroke=\"#eee\"/>\n";

    // blown-up circle at infinity with its saddles or nodes; in the far chart
    // it surrounds the origin, in the near chart it is drawn at the rim
    if (!an.seps.boundary.saddles.empty()) {
        const double rc = opt.view_z ? 0.12 * span : 0.94 * span;
        svg << "<circle cx=\"" << num(m.px(0)) << "\" cy=\"" << num(m.py(0)) << "\" r=\""
            << num(rc / span * 0.5 * opt.size)
            << "\" fill=\"none\" stroke=\"#bbb\" stroke-dasharray=\"6 4\"/>\n";
        for (const auto& b : an.seps.boundary.saddles) {
            const double ang = opt.view_z ? -b.angle : b.angle;
            const double x = rc * std::cos(ang), y = rc * std::sin(ang);
            svg << "<circle cx=\"" << num(m.px(x)) << "\" cy=\"" << num(m.py(y))
                << "\" r=\"4\" fill=\""
                << (b.color == SepColor::Blue ? "#1f6feb" : "#d1242f") << "\"/>\n";
        }
    }

    for (const auto& sep : an.seps.seps) {
        std::ostringstream pts;
        bool pen_up = true;
        for (const auto& s : sep.traj.samples) {
            const auto w = in_view(s.v, s.chart_z, opt.view_z);
            if (!w || std::abs(*w) > clip) {
                pen_up = true;
                continue;
            }
            pts << (pen_up ? "M" : "L") << num(m.px(w->real())) << ' '
                << num(m.py(w->imag())) << ' ';
            pen_up = false;
        }
        const std::string d = pts.str();
        if (d.empty()) continue;
        svg << "<path d=\"" << d << "\" fill=\"none\" stroke=\""
            << (sep.color == SepColor::Blue ? "#1f6feb" : "#d1242f")
            << "\" stroke-width=\"1.4\"/>\n";
    }

    for (const auto& r : an.cls.records) {
        const auto w = in_view(r.location.v, r.location.chart_z, opt.view_z);
        if (!w || std::abs(*w) > clip) continue;
        const double x = m.px(w->real()), y = m.py(w->imag());
        switch (r.kind) {
            case EquilibriumKind::Sink:
                svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
                    << "\" r=\"5\" fill=\"#1f6feb\"/>\n";
                break;
            case EquilibriumKind::Source:
                svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
                    << "\" r=\"5\" fill=\"#d1242f\"/>\n";
                break;
            case EquilibriumKind::Center:
                svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
                    << "\" r=\"5\" fill=\"none\" stroke=\"#8250df\" stroke-width=\"2\"/>\n";
                break;
            case EquilibriumKind::PoleSaddle:
                svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y)
                    << "\" r=\"4.5\" fill=\"none\" stroke=\"#111\" stroke-width=\"2\"/>\n";
                break;
            default:
                svg << "<rect x=\"" << num(x - 4) << "\" y=\"" << num(y - 4)
                    << "\" width=\"8\" height=\"8\" fill=\"#999\"/>\n";
                break;
        }
        if (opt.labels)
            svg << "<text x=\"" << num(x + 7) << "\" y=\"" << num(y - 7)
                << "\" font-size=\"11\" fill=\"#555\">" << r.id << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sphereflow
