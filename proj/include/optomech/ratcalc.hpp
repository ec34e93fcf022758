// ratcalc.hpp — exact calculus on rational spectra: spectral factorization,
// causal-part extraction, closed-form half-line integration.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "optomech/errors.hpp"
#include "optomech/polynomial.hpp"
#include "optomech/rational.hpp"

namespace optomech {

// psi_plus has all poles and zeros strictly in the lower half-plane, so it and
// its reciprocal are analytic in the upper half-plane (causal side under the
// e^{-i w t} convention).  psi_minus is its coefficient conjugate.
struct SpectralFactors {
    RationalFunction psi_plus;
    RationalFunction psi_minus;
};

namespace detail {

inline bool on_real_axis(Complex p) { return std::abs(p.imag()) <= kRealAxisRel * (1.0 + std::abs(p)); }

inline double root_scale(const std::vector<Complex>& roots) {
    double s = 1.0;
    for (const auto& r : roots) s = std::max(s, std::abs(r));
    return s;
}

}  // namespace detail

// Factorize a spectrum (real, nonnegative, bounded away from zero on the real
// axis) as s = psi_plus * psi_minus.  Root assignment: the lower-half member of
// each conjugate pair goes to psi_plus; the overall constant splits as the
// positive square root.
inline SpectralFactors spectral_factorize(const RationalFunction& s) {
    if (s.is_zero()) throw NotASpectrumError("zero spectrum cannot be factorized");

    std::vector<Complex> nr = s.num().degree() > 0 ? s.num().roots() : std::vector<Complex>{};
    std::vector<Complex> dr = s.den().degree() > 0 ? s.den().roots() : std::vector<Complex>{};
    for (const auto& r : nr)
        if (detail::on_real_axis(r)) throw MarginalSpectrumError("spectrum root on the real axis");
    for (const auto& r : dr)
        if (detail::on_real_axis(r)) throw MarginalSpectrumError("spectrum pole on the real axis");

    // Positivity and reality on a sample grid sized by the root spread.
    const double scale = std::max(detail::root_scale(nr), detail::root_scale(dr));
    const int n_samples = 1000;
    for (int i = 0; i < n_samples; ++i) {
        const double w = 100.0 * scale * i / (n_samples - 1);
        const Complex v = s(Complex(w, 0.0));
        if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-8 * std::abs(v))
            throw NotASpectrumError("spectrum not real positive on the sample grid");
    }

    std::vector<Complex> nlow, dlow;
    for (const auto& r : nr)
        if (r.imag() < 0.0) nlow.push_back(r);
    for (const auto& r : dr)
        if (r.imag() < 0.0) dlow.push_back(r);
    if (2 * nlow.size() != nr.size() || 2 * dlow.size() != dr.size())
        throw NotASpectrumError("spectrum roots do not split evenly across the real axis");

    const Complex c = s.num().lead() / s.den().lead();
    if (!(c.real() > 0.0) || std::abs(c.imag()) > 1e-8 * std::abs(c))
        throw NotASpectrumError("spectrum leading behavior is not positive");

    const double half = std::sqrt(c.real());
    SpectralFactors f;
    f.psi_plus = RationalFunction(Polynomial::from_roots(nlow, half), Polynomial::from_roots(dlow));
    f.psi_minus = f.psi_plus.conj_coeffs();

    // Round-trip verification on the grid.
    for (int i = 0; i < 32; ++i) {
        const double w = 10.0 * scale * (i - 15.5) / 16.0;
        const Complex lhs = f.psi_plus(Complex(w, 0.0)) * f.psi_minus(Complex(w, 0.0));
        const Complex rhs = s(Complex(w, 0.0));
        if (std::abs(lhs - rhs) > 1e-7 * std::abs(rhs))
            throw NotASpectrumError("factorization round-trip failed");
    }
    return f;
}

// Causal component: partial fractions, keep lower-half-plane pole terms plus
// the constant term at infinity (a delta at t = 0+ acts causally).
inline RationalFunction causal_part(const RationalFunction& r) {
    if (r.is_zero()) return RationalFunction::zero();
    if (r.num().degree() > r.den().degree())
        throw DomainError("causal part of an improper rational function");
    const PartialFractions pf = partial_fractions(r);
    std::vector<PartialFractionTerm> keep;
    for (const auto& t : pf.terms) {
        if (detail::on_real_axis(t.pole)) throw MarginalPoleError("pole on the real axis");
        if (t.pole.imag() < 0.0) keep.push_back(t);
    }
    return assemble_terms(keep, pf.constant);
}

// Same split, but the result is reassembled over a caller-provided exact
// denominator whose roots contain all causal poles.  Keeps downstream algebra
// on a shared denominator.
inline RationalFunction causal_part_over(const RationalFunction& r, const Polynomial& den) {
    if (r.is_zero()) return RationalFunction(Polynomial{}, den);
    if (r.num().degree() > r.den().degree())
        throw DomainError("causal part of an improper rational function");
    const PartialFractions pf = partial_fractions(r);
    std::vector<PartialFractionTerm> keep;
    for (const auto& t : pf.terms) {
        if (detail::on_real_axis(t.pole)) throw MarginalPoleError("pole on the real axis");
        if (t.pole.imag() < 0.0) keep.push_back(t);
    }
    return assemble_terms_over(keep, pf.constant, den);
}

namespace detail {

// Principal-branch evaluation of sum_j a_j * integral_0^inf dw/(w - p_j)^k.
inline Complex halfline_sum(const PartialFractions& pf, double coeff_scale) {
    Complex acc = 0.0;
    Complex log_residual = 0.0;
    double log_scale = 0.0;
    for (const auto& t : pf.terms) {
        if (on_real_axis(t.pole)) throw MarginalPoleError("integrand pole on the real axis");
        if (t.order == 1) {
            log_residual += t.coeff;
            log_scale += std::abs(t.coeff);
            acc -= t.coeff * std::log(-t.pole);
        } else {
            acc += t.coeff * std::pow(-t.pole, 1 - t.order) / static_cast<double>(t.order - 1);
        }
    }
    if (std::abs(log_residual) > 1e-7 * std::max(log_scale, coeff_scale))
        throw DivergentIntegralError("odd part decays too slowly for a half-line integral");
    return acc;
}

}  // namespace detail

// Re[ integral_0^inf dw/2pi s(w) ]: even part by residue summation over the
// upper half-plane, odd part in closed form with logarithms.
inline double integrate_halfline(const RationalFunction& s) {
    if (s.is_zero()) return 0.0;

    // Split even/odd without squaring the denominator when it is symmetric.
    const Polynomial dref = s.den().reflect();
    RationalFunction even, odd;
    const Complex slead = s.den().lead() / dref.lead();
    if ((s.den() * slead - dref).max_abs_coeff() <= 1e-10 * s.den().max_abs_coeff()) {
        // den(-w) = den(w)/slead
        const Polynomial ne = (s.num() + s.num().reflect() * slead) * Complex(0.5);
        const Polynomial no = (s.num() - s.num().reflect() * slead) * Complex(0.5);
        even = RationalFunction(ne, s.den());
        odd = RationalFunction(no, s.den());
    } else {
        const RationalFunction refl = s.reflect();
        even = RationalFunction((s.num() * refl.den() + refl.num() * s.den()) * Complex(0.5),
                                s.den() * refl.den());
        odd = RationalFunction((s.num() * refl.den() - refl.num() * s.den()) * Complex(0.5),
                               s.den() * refl.den());
    }

    Complex total = 0.0;
    if (!even.is_zero()) {
        if (even.den().degree() - even.num().degree() < 2)
            throw DivergentIntegralError("integrand decays slower than 1/w^2");
        const PartialFractions pf = partial_fractions(even);
        Complex res_sum = 0.0;
        for (const auto& t : pf.terms) {
            if (detail::on_real_axis(t.pole)) throw MarginalPoleError("integrand pole on the real axis");
            if (t.order == 1 && t.pole.imag() > 0.0) res_sum += t.coeff;
        }
        total += Complex(0.0, 0.5) * res_sum;
    }
    if (!odd.is_zero()) {
        if (odd.den().degree() - odd.num().degree() < 1)
            throw DivergentIntegralError("integrand does not decay");
        const PartialFractions pf = partial_fractions(odd);
        const double scale = odd.num().max_abs_coeff() / std::max(odd.den().max_abs_coeff(), 1e-300);
        total += detail::halfline_sum(pf, scale) / (2.0 * M_PI);
    }
    return total.real();
}

// Adaptive-quadrature fallback for verification: Simpson refinement on a
// root-scaled interval plus an asymptotic tail from the 1/w expansion.
inline double integrate_halfline_quad(const RationalFunction& s, double rel_tol = 1e-10) {
    if (s.is_zero()) return 0.0;
    if (s.den().degree() - s.num().degree() < 2)
        throw DivergentIntegralError("integrand decays slower than 1/w^2");

    const auto f = [&s](double w) { return s(Complex(w, 0.0)).real(); };

    std::vector<Complex> dr = s.den().roots();
    double scale = 1.0;
    for (const auto& r : dr) scale = std::max(scale, std::abs(r));
    const double X = 200.0 * scale;

    struct Seg {
        double a, b, fa, fm, fb, whole;
    };
    const auto simpson = [](double fa, double fm, double fb, double h) {
        return h / 6.0 * (fa + 4.0 * fm + fb);
    };

    // Panels between sorted pole magnitudes give the recursion a head start.
    std::vector<double> knots{0.0, X};
    for (const auto& r : dr) {
        const double m = std::abs(r.real());
        if (m > 1e-12 * scale && m < X) knots.push_back(m);
    }
    std::sort(knots.begin(), knots.end());

    double result = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        std::vector<Seg> stack;
        const double a = knots[i], b = knots[i + 1];
        if (b - a <= 0.0) continue;
        const double m = 0.5 * (a + b);
        stack.push_back({a, b, f(a), f(m), f(b), simpson(f(a), f(m), f(b), b - a)});
        int depth_budget = 1 << 22;
        while (!stack.empty() && depth_budget-- > 0) {
            Seg seg = stack.back();
            stack.pop_back();
            const double mid = 0.5 * (seg.a + seg.b);
            const double lm = 0.5 * (seg.a + mid), rm = 0.5 * (mid + seg.b);
            const double flm = f(lm), frm = f(rm);
            const double left = simpson(seg.fa, flm, seg.fm, mid - seg.a);
            const double right = simpson(seg.fm, frm, seg.fb, seg.b - mid);
            if (std::abs(left + right - seg.whole) <
                    rel_tol * (std::abs(left + right) + 1e-300) * 10.0 ||
                seg.b - seg.a < 1e-12 * X) {
                result += left + right + (left + right - seg.whole) / 15.0;
            } else {
                stack.push_back({seg.a, mid, seg.fa, flm, seg.fm, left});
                stack.push_back({mid, seg.b, seg.fm, frm, seg.fb, right});
            }
        }
    }

    // Tail: s ~ c2/w^2 + c3/w^3 + c4/w^4 for w > X.
    const int dd = s.den().degree();
    const auto& nc = s.num().coeffs();
    const auto& dc = s.den().coeffs();
    const auto num_c = [&](int k) {
        const int idx = s.num().degree() - k;
        return (idx >= 0 && idx < static_cast<int>(nc.size())) ? nc[static_cast<std::size_t>(idx)]
                                                               : Complex(0.0);
    };
    const auto den_c = [&](int k) { return k <= dd ? dc[static_cast<std::size_t>(dd - k)] : Complex(0.0); };
    // Series division of (num shifted to align with 1/w^2 leading term).
    const int gap = dd - s.num().degree();  // >= 2
    std::vector<Complex> a(3, 0.0);         // coefficients of 1/w^{gap}, 1/w^{gap+1}, ...
    for (int j = 0; j < 3; ++j) {
        Complex acc = num_c(j);
        for (int i = 0; i < j; ++i) acc -= a[static_cast<std::size_t>(i)] * den_c(j - i);
        a[static_cast<std::size_t>(j)] = acc / den_c(0);
    }
    double tail = 0.0;
    for (int j = 0; j < 3; ++j) {
        const int power = gap + j;  // integrand ~ a_j / w^power
        tail += (a[static_cast<std::size_t>(j)] / ((power - 1) * std::pow(X, power - 1))).real();
    }
    return (result + tail) / (2.0 * M_PI);
}

}  // namespace optomech
