#pragma once

#include <complex>
#include <vector>

namespace sphereflow {

using cplx = std::complex<double>;

// Dense polynomial over C, coefficients ascending: coeffs[k] * w^k.
struct Poly {
    std::vector<cplx> coeffs;

    Poly() = default;
    explicit Poly(std::vector<cplx> c) : coeffs(std::move(c)) {}
    static Poly constant(cplx c) { return Poly({c}); }

    // index of the highest coefficient above the relative dust threshold, -1 for the zero polynomial
    int degree(double tol = 1e-11) const;
    double max_abs_coeff() const;
    bool is_zero(double tol = 1e-11) const;

    cplx leading(double tol = 1e-11) const;
    void trim(double tol = 1e-11);   // drop trailing dust so degree() == coeffs.size()-1
};

Poly operator*(const Poly& p, const Poly& q);
Poly operator*(const Poly& p, cplx s);
Poly operator+(const Poly& p, const Poly& q);

// p^(order) evaluated at w, by repeated synthetic division (Taylor coefficients at w)
cplx evaluate(const Poly& p, cplx w, int order = 0);

Poly derivative(const Poly& p);

// monic-from-roots times leading coefficient a
Poly from_roots(const std::vector<cplx>& roots, cplx a = 1.0);

// q(w) = delta^d p(w/delta): zeros scale by delta, leading coefficient is kept
Poly dilate(const Poly& p, double delta);

// z^d p(1/z) for d = degree(p): coefficient reversal
Poly reverse(const Poly& p);

struct Root {
    cplx location;
    int multiplicity = 1;
};

struct RootSet {
    std::vector<Root> roots;
    int degree = 0;       // effective degree actually solved
    int iterations = 0;
};

// Aberth-Ehrlich simultaneous iteration with Newton polishing.
// Multiplicities: roots with |p'| < sqrt(tol)*max|coeff| are clustered.
RootSet find_roots(const Poly& p, double tol = 1e-11);

}  // namespace sphereflow
