#include "doctest.h"

#include "sphereflow/poly.hpp"

#include <algorithm>
#include <random>

#ifdef HAVE_EIGEN_ORACLE
#include <Eigen/Eigenvalues>
#endif

using namespace sphereflow;

namespace {

// naive O(n^2) product as the oracle for operator*
Poly slow_mul(const Poly& p, const Poly& q) {
    std::vector<cplx> c(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        for (size_t j = 0; j < q.coeffs.size(); ++j) c[i + j] += p.coeffs[i] * q.coeffs[j];
    return Poly(std::move(c));
}

cplx slow_eval(const Poly& p, cplx w) {
    cplx s = 0.0, pw = 1.0;
    for (const auto& c : p.coeffs) {
        s += c * pw;
        pw *= w;
    }
    return s;
}

std::mt19937 rng(12345);

cplx rand_c(double r = 1.0) {
    std::uniform_real_distribution<double> U(-r, r);
    return {U(rng), U(rng)};
}

}  // namespace

TEST_CASE("product matches the convolution oracle") {
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<cplx> a(1 + rep % 5), b(1 + (rep * 7) % 6);
        for (auto& c : a) c = rand_c();
        for (auto& c : b) c = rand_c();
        const Poly p(a), q(b);
        const Poly fast = p * q, slow = slow_mul(p, q);
        REQUIRE(fast.coeffs.size() == slow.coeffs.size());
        for (size_t i = 0; i < fast.coeffs.size(); ++i)
            CHECK(std::abs(fast.coeffs[i] - slow.coeffs[i]) < 1e-12);
    }
}

TEST_CASE("evaluate agrees with the power sum and Taylor shifts") {
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<cplx> a(2 + rep % 6);
        for (auto& c : a) c = rand_c();
        const Poly p(a);
        const cplx w = rand_c(2.0);
        CHECK(std::abs(evaluate(p, w) - slow_eval(p, w)) < 1e-12);
        // first derivative against the coefficient formula
        cplx d1 = 0.0, pw = 1.0;
        for (size_t k = 1; k < a.size(); ++k) {
            d1 += static_cast<double>(k) * a[k] * pw;
            pw *= w;
        }
        CHECK(std::abs(evaluate(p, w, 1) - d1) < 1e-11);
        CHECK(std::abs(evaluate(derivative(p), w) - d1) < 1e-11);
    }
}

TEST_CASE("second derivative against central differences") {
    const Poly p({cplx(1, -2), cplx(0, 1), cplx(3, 0), cplx(-1, 1), cplx(0.5, 0.5)});
    const cplx w(0.3, -0.7);
    const double h = 1e-5;
    const cplx fd =
        (evaluate(p, w + h) - 2.0 * evaluate(p, w) + evaluate(p, w - h)) / (h * h);
    CHECK(std::abs(evaluate(p, w, 2) - fd) < 1e-5);
}

TEST_CASE("from_roots expands monomial factors") {
    const std::vector<cplx> roots{1.0, cplx(0, 1), cplx(-2, 0.5)};
    const Poly p = from_roots(roots, cplx(2, 1));
    for (const auto& r : roots) CHECK(std::abs(evaluate(p, r)) < 1e-12);
    CHECK(std::abs(p.leading() - cplx(2, 1)) < 1e-14);
    CHECK(p.degree() == 3);
}

TEST_CASE("dilate scales roots and keeps the leading coefficient") {
    const std::vector<cplx> roots{cplx(1, 1), cplx(-0.5, 0.25)};
    const Poly p = from_roots(roots, cplx(0, 3));
    const Poly q = dilate(p, 0.01);
    for (const auto& r : roots) CHECK(std::abs(evaluate(q, 0.01 * r)) < 1e-14);
    CHECK(std::abs(q.leading() - cplx(0, 3)) < 1e-12);
}

TEST_CASE("reverse flips coefficients") {
    const Poly p({cplx(1, 0), cplx(2, 0), cplx(0, 3)});
    const Poly r = reverse(p);
    REQUIRE(r.coeffs.size() == 3);
    CHECK(std::abs(r.coeffs[0] - cplx(0, 3)) < 1e-15);
    CHECK(std::abs(r.coeffs[2] - cplx(1, 0)) < 1e-15);
    const cplx z(0.4, -0.2);
    CHECK(std::abs(evaluate(r, z) - std::pow(z, 2) * evaluate(p, 1.0 / z)) < 1e-12);
}

TEST_CASE("degree ignores trailing dust and trim removes it") {
    Poly p({1.0, 2.0, cplx(1e-15, 0)});
    CHECK(p.degree() == 1);
    p.trim();
    CHECK(p.coeffs.size() == 2);
    CHECK(Poly({cplx(0, 0)}).is_zero());
    CHECK(Poly().degree() == -1);
}

TEST_CASE("find_roots on separated roots") {
    const std::vector<cplx> roots{1.0, -1.0, cplx(0, 2), cplx(-0.5, -0.5), cplx(3, 1)};
    const RootSet rs = find_roots(from_roots(roots, cplx(1, 2)));
    REQUIRE(rs.roots.size() == roots.size());
    for (const auto& r : roots) {
        double best = 1e300;
        for (const auto& got : rs.roots) best = std::min(best, std::abs(got.location - r));
        CHECK(best < 1e-9);
    }
}

TEST_CASE("find_roots clusters a triple root") {
    // (w-1)^3 (w+2)
    const Poly p = from_roots({1.0, 1.0, 1.0, -2.0});
    const RootSet rs = find_roots(p);
    int total = 0;
    bool saw_triple = false;
    for (const auto& r : rs.roots) {
        total += r.multiplicity;
        if (r.multiplicity == 3) {
            saw_triple = true;
            CHECK(std::abs(r.location - 1.0) < 1e-3);
        }
    }
    CHECK(total == 4);
    CHECK(saw_triple);
}

TEST_CASE("find_roots of the eighth cyclotomic ring") {
    std::vector<cplx> c(9, 0.0);
    c[0] = -1.0;
    c[8] = 1.0;
    const RootSet rs = find_roots(Poly(c));
    REQUIRE(rs.roots.size() == 8);
    for (const auto& r : rs.roots) {
        CHECK(std::abs(std::abs(r.location) - 1.0) < 1e-10);
        CHECK(std::abs(evaluate(Poly(c), r.location)) < 1e-9);
    }
}

#ifdef HAVE_EIGEN_ORACLE
TEST_CASE("find_roots matches companion matrix eigenvalues") {
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 6 + rep;
        std::vector<cplx> a(n + 1);
        for (auto& c : a) c = rand_c();
        a[n] += cplx(2.0, 0.0);   // keep the leading coefficient away from zero
        const Poly p(a);

        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) M(i, n - 1) = -a[i] / a[n];
        const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);

        const RootSet rs = find_roots(p);
        REQUIRE(rs.roots.size() == static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const cplx ev = es.eigenvalues()[i];
            double best = 1e300;
            for (const auto& got : rs.roots) best = std::min(best, std::abs(got.location - ev));
            CHECK(best < 1e-7);
        }
    }
}
#endif
