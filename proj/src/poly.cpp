#include "sphereflow/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sphereflow {

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

int Poly::degree(double tol) const {
    const double cut = tol * max_abs_coeff();
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
        if (std::abs(coeffs[k]) > cut) return k;
    return -1;
}

bool Poly::is_zero(double tol) const { return degree(tol) < 0; }

cplx Poly::leading(double tol) const {
    const int d = degree(tol);
    return d < 0 ? cplx(0.0) : coeffs[d];
}

void Poly::trim(double tol) {
    const int d = degree(tol);
    coeffs.resize(static_cast<size_t>(std::max(d + 1, 1)));
    if (d < 0) coeffs[0] = 0.0;
}

Poly operator*(const Poly& p, const Poly& q) {
    if (p.coeffs.empty() || q.coeffs.empty()) return Poly({cplx(0.0)});
    std::vector<cplx> out(p.coeffs.size() + q.coeffs.size() - 1, cplx(0.0));
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        for (size_t j = 0; j < q.coeffs.size(); ++j)
            out[i + j] += p.coeffs[i] * q.coeffs[j];
    return Poly(std::move(out));
}

Poly operator*(const Poly& p, cplx s) {
    Poly out = p;
    for (auto& c : out.coeffs) c *= s;
    return out;
}

Poly operator+(const Poly& p, const Poly& q) {
    std::vector<cplx> out(std::max(p.coeffs.size(), q.coeffs.size()), cplx(0.0));
    for (size_t i = 0; i < p.coeffs.size(); ++i) out[i] += p.coeffs[i];
    for (size_t i = 0; i < q.coeffs.size(); ++i) out[i] += q.coeffs[i];
    return Poly(std::move(out));
}

cplx evaluate(const Poly& p, cplx w, int order) {
    if (order < 0) throw std::invalid_argument("evaluate: negative order");
    const int n = static_cast<int>(p.coeffs.size()) - 1;
    if (n < 0 || order > n) return 0.0;
    // repeated Horner: after pass j, a[j] holds p^(j)(w)/j!
    std::vector<cplx> a = p.coeffs;
    for (int j = 0; j <= order; ++j)
        for (int k = n - 1; k >= j; --k) a[k] += a[k + 1] * w;
    double fact = 1.0;
    for (int j = 2; j <= order; ++j) fact *= j;
    return a[order] * fact;
}

Poly derivative(const Poly& p) {
    if (p.coeffs.size() <= 1) return Poly({cplx(0.0)});
    std::vector<cplx> out(p.coeffs.size() - 1);
    for (size_t k = 1; k < p.coeffs.size(); ++k) out[k - 1] = p.coeffs[k] * static_cast<double>(k);
    return Poly(std::move(out));
}

Poly from_roots(const std::vector<cplx>& roots, cplx a) {
    Poly out({a});
    for (const auto& r : roots) out = out * Poly({-r, cplx(1.0)});
    return out;
}

Poly dilate(const Poly& p, double delta) {
    Poly out = p;
    const int d = out.degree();
    if (d < 0) return out;
    double f = 1.0;
    for (int k = d; k >= 0; --k) {
        out.coeffs[k] *= f;
        f *= delta;
    }
    out.coeffs.resize(d + 1);
    return out;
}

Poly reverse(const Poly& p) {
    const int d = p.degree();
    if (d < 0) return Poly({cplx(0.0)});
    std::vector<cplx> out(d + 1);
    for (int k = 0; k <= d; ++k) out[k] = p.coeffs[d - k];
    return Poly(std::move(out));
}

namespace {

// Fujiwara bound on root moduli
double root_radius(const std::vector<cplx>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    const double lead = std::abs(c[n]);
    double r = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double t = std::pow(std::abs(c[n - k]) / lead, 1.0 / k);
        r = std::max(r, t);
    }
    return 2.0 * r + 1e-3;
}

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * z + c[k];
    return acc;
}

cplx horner_d1(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) acc = acc * z + c[k] * static_cast<double>(k);
    return acc;
}

}  // namespace

RootSet find_roots(const Poly& p, double tol) {
    RootSet rs;
    const int d = p.degree(tol);
    rs.degree = std::max(d, 0);
    if (d <= 0) return rs;

    std::vector<cplx> c(p.coeffs.begin(), p.coeffs.begin() + d + 1);
    if (d == 1) {
        rs.roots.push_back({-c[0] / c[1], 1});
        return rs;
    }

    const double R = root_radius(c);
    std::vector<cplx> z(d);
    for (int i = 0; i < d; ++i) {
        const double ang = 2.0 * M_PI * i / d + 0.41;
        z[i] = R * cplx(std::cos(ang), std::sin(ang));
    }

    const int max_iter = 600;
    int it = 0;
    for (; it < max_iter; ++it) {
        double worst = 0.0;
        for (int i = 0; i < d; ++i) {
            const cplx pv = horner(c, z[i]);
            cplx dv = horner_d1(c, z[i]);
            if (std::abs(dv) < 1e-300) dv = 1e-300;
            const cplx newton = pv / dv;
            cplx sum = 0.0;
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                cplx diff = z[i] - z[j];
                if (std::abs(diff) < 1e-300) diff = 1e-300;
                sum += 1.0 / diff;
            }
            const cplx denom = cplx(1.0) - newton * sum;
            const cplx corr = std::abs(denom) < 1e-300 ? newton : newton / denom;
            z[i] -= corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(z[i])));
        }
        if (worst < 1e-14) break;
    }
    rs.iterations = it;

    // Newton polish (helps simple roots; multiple roots stay as clusters)
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < 3; ++k) {
            const cplx pv = horner(c, z[i]);
            const cplx dv = horner_d1(c, z[i]);
            if (std::abs(dv) < 1e-250) break;
            const cplx step = pv / dv;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(z[i]))) break;
            z[i] -= step;
        }
    }

    // multiplicity detection: flag by |p'|, then cluster flagged roots
    const double maxc = p.max_abs_coeff();
    const double flag_cut = std::sqrt(tol) * maxc;
    double scale = 1.0;
    for (const auto& zi : z) scale = std::max(scale, std::abs(zi));
    const double merge_r = std::pow(tol, 0.25) * scale;

    std::vector<int> cluster(d);
    std::iota(cluster.begin(), cluster.end(), 0);
    auto find = [&](int i) {
        while (cluster[i] != i) i = cluster[i] = cluster[cluster[i]];
        return i;
    };
    for (int i = 0; i < d; ++i) {
        if (std::abs(horner_d1(c, z[i])) >= flag_cut) continue;
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            if (std::abs(z[i] - z[j]) < merge_r) cluster[find(i)] = find(j);
        }
    }
    std::vector<std::vector<int>> groups(d);
    for (int i = 0; i < d; ++i) groups[find(i)].push_back(i);
    for (const auto& g : groups) {
        if (g.empty()) continue;
        cplx mean = 0.0;
        for (int i : g) mean += z[i];
        mean /= static_cast<double>(g.size());
        const int m = static_cast<int>(g.size());
        if (m > 1) {
            // polish a multiplicity-m cluster on the (m-1)-th derivative
            Poly q(c);
            for (int k = 1; k < m; ++k) q = derivative(q);
            for (int k = 0; k < 30; ++k) {
                const cplx qv = evaluate(q, mean);
                const cplx qd = evaluate(q, mean, 1);
                if (std::abs(qd) < 1e-250) break;
                const cplx step = qv / qd;
                mean -= step;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(mean))) break;
            }
        }
        rs.roots.push_back({mean, m});
    }
    std::sort(rs.roots.begin(), rs.roots.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    return rs;
}

}  // namespace sphereflow
