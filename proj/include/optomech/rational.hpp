// rational.hpp — ratios of complex-coefficient polynomials in frequency:
// arithmetic, reduction, partial fractions.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "optomech/errors.hpp"
#include "optomech/polynomial.hpp"

namespace optomech {

class RationalFunction {
  public:
    RationalFunction() : num_{}, den_{Polynomial::constant(1.0)} {}

    RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    }

    static RationalFunction constant(Complex v) {
        return RationalFunction(Polynomial::constant(v), Polynomial::constant(1.0));
    }

    static RationalFunction zero() { return RationalFunction{}; }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    Complex operator()(Complex w) const { return num_(w) / den_(w); }

    // Coefficient-conjugated rational; equals conj(r(w)) on the real axis.
    RationalFunction conj_coeffs() const {
        return RationalFunction(num_.conj_coeffs(), den_.conj_coeffs());
    }

    // r(-w)
    RationalFunction reflect() const { return RationalFunction(num_.reflect(), den_.reflect()); }

    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend RationalFunction operator*(const RationalFunction& a, Complex s) {
        return RationalFunction(a.num_ * s, a.den_);
    }

    friend RationalFunction operator*(Complex s, const RationalFunction& a) { return a * s; }

    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("division by the zero rational function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        if (auto s = proportional_dens(a, b))
            return RationalFunction(a.num_ * (*s) + b.num_, b.den_);
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        if (auto s = proportional_dens(a, b))
            return RationalFunction(a.num_ * (*s) - b.num_, b.den_);
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend RationalFunction operator-(const RationalFunction& a) {
        return RationalFunction(-a.num_, a.den_);
    }

    // Cancel numerator/denominator root pairs that coincide within rel_tol.
    RationalFunction reduced(double rel_tol = kRootCoincidenceRel) const {
        if (num_.is_zero()) return RationalFunction(Polynomial{}, Polynomial::constant(1.0));
        if (num_.degree() == 0 || den_.degree() == 0)
            return RationalFunction(num_ * (1.0 / den_.lead()),
                                    den_.degree() == 0 ? Polynomial::constant(1.0)
                                                       : den_ * (1.0 / den_.lead()));
        std::vector<Complex> nr = num_.roots();
        std::vector<Complex> dr = den_.roots();
        std::vector<bool> used(nr.size(), false);
        std::vector<Complex> dkeep;
        for (const auto& p : dr) {
            bool cancelled = false;
            for (std::size_t i = 0; i < nr.size(); ++i) {
                if (used[i]) continue;
                if (std::abs(nr[i] - p) <= rel_tol * std::max(1.0, std::abs(p))) {
                    used[i] = true;
                    cancelled = true;
                    break;
                }
            }
            if (!cancelled) dkeep.push_back(p);
        }
        std::vector<Complex> nkeep;
        for (std::size_t i = 0; i < nr.size(); ++i)
            if (!used[i]) nkeep.push_back(nr[i]);
        const Complex scale = num_.lead() / den_.lead();
        return RationalFunction(Polynomial::from_roots(nkeep, scale), Polynomial::from_roots(dkeep));
    }

    // Divide a factor out of the denominator when the numerator is known to
    // contain it as well; falls back to leaving the value unchanged.
    RationalFunction cancel_known_factor(const Polynomial& factor) const {
        Polynomial qn, qd;
        if (Polynomial::exact_divide(num_, factor, qn) && Polynomial::exact_divide(den_, factor, qd))
            return RationalFunction(std::move(qn), std::move(qd));
        return *this;
    }

  private:
    // If a.den == s * b.den for a scalar s, returns s.
    static std::optional<Complex> proportional_dens(const RationalFunction& a,
                                                    const RationalFunction& b) {
        if (a.den_.degree() != b.den_.degree()) return std::nullopt;
        const Complex s = b.den_.lead() / a.den_.lead();
        const Polynomial diff = a.den_ * s - b.den_;
        if (diff.max_abs_coeff() <= 1e-10 * b.den_.max_abs_coeff()) return s;
        return std::nullopt;
    }

    Polynomial num_;
    Polynomial den_;
};

// Partial-fraction decomposition of a proper rational function:
//   r(w) = constant + sum_j sum_{k=1..m_j} coeff_{jk} / (w - pole_j)^k
struct PartialFractionTerm {
    Complex pole;
    int order = 1;  // k in 1/(w - pole)^k
    Complex coeff;
};

struct PartialFractions {
    Complex constant = 0.0;
    std::vector<PartialFractionTerm> terms;
    std::vector<RootCluster> poles;  // clustered denominator roots
};

inline PartialFractions partial_fractions(const RationalFunction& r,
                                          double cluster_rel_tol = 1e-6) {
    PartialFractions out;
    if (r.is_zero()) return out;
    if (r.num().degree() > r.den().degree())
        throw DomainError("partial fractions of an improper rational function");

    Polynomial num = r.num();
    const Polynomial& den = r.den();
    if (num.degree() == r.den().degree()) {
        out.constant = num.lead() / den.lead();
        num = num - den * out.constant;
    }
    if (num.is_zero() || den.degree() == 0) return out;

    out.poles = cluster_roots(den, den.roots(), cluster_rel_tol);
    for (const auto& cl : out.poles) {
        const int m = cl.multiplicity;
        // Q = den / (w - pole)^m, via synthetic division against the cluster center.
        Polynomial q = den;
        for (int k = 0; k < m; ++k) {
            auto [quot, rem] = Polynomial::divmod(q, Polynomial({-cl.center, 1.0}));
            q = std::move(quot);
        }
        // Laurent coefficients from the series of num/Q around the pole.
        const std::vector<Complex> tn = num.taylor(cl.center, m - 1);
        const std::vector<Complex> tq = q.taylor(cl.center, m - 1);
        if (tq[0] == Complex(0.0)) throw NumericalError("degenerate pole cluster");
        std::vector<Complex> series(static_cast<std::size_t>(m), 0.0);
        for (int j = 0; j < m; ++j) {
            Complex acc = tn[static_cast<std::size_t>(j)];
            for (int i = 0; i < j; ++i) acc -= series[static_cast<std::size_t>(i)] *
                                                 tq[static_cast<std::size_t>(j - i)];
            series[static_cast<std::size_t>(j)] = acc / tq[0];
        }
        for (int k = 1; k <= m; ++k)
            out.terms.push_back({cl.center, k, series[static_cast<std::size_t>(m - k)]});
    }
    return out;
}

// Rebuild a rational function from a subset of partial-fraction terms, over an
// explicitly provided denominator polynomial whose roots include the poles.
inline RationalFunction assemble_terms_over(const std::vector<PartialFractionTerm>& terms,
                                            Complex constant, const Polynomial& den) {
    Polynomial num = den * constant;
    for (const auto& t : terms) {
        Polynomial q = den;
        for (int k = 0; k < t.order; ++k) {
            auto [quot, rem] = Polynomial::divmod(q, Polynomial({-t.pole, 1.0}));
            q = std::move(quot);
        }
        num = num + q * t.coeff;
    }
    return RationalFunction(std::move(num), den);
}

// Rebuild from terms alone, constructing the minimal denominator.  Terms
// sharing a pole contribute it at their highest order only.
inline RationalFunction assemble_terms(const std::vector<PartialFractionTerm>& terms,
                                       Complex constant) {
    std::vector<Complex> den_roots;
    std::vector<std::pair<Complex, int>> pole_orders;
    for (const auto& t : terms) {
        bool found = false;
        for (auto& po : pole_orders) {
            if (std::abs(po.first - t.pole) == 0.0) {
                po.second = std::max(po.second, t.order);
                found = true;
                break;
            }
        }
        if (!found) pole_orders.emplace_back(t.pole, t.order);
    }
    for (const auto& po : pole_orders)
        for (int k = 0; k < po.second; ++k) den_roots.push_back(po.first);
    const Polynomial den = Polynomial::from_roots(den_roots);
    return assemble_terms_over(terms, constant, den);
}

}  // namespace optomech
