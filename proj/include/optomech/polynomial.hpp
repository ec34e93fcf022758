// polynomial.hpp — complex-coefficient polynomials in the frequency variable:
// arithmetic, evaluation, companion-matrix root finding, root clustering.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "optomech/errors.hpp"

namespace optomech {

using Complex = std::complex<double>;

inline constexpr int kMaxPolyDegree = 32;
// Trailing coefficients below this (relative to the largest) are trimmed.
inline constexpr double kCoeffTrimRel = 1e-12;
// Relative tolerance for declaring two roots coincident.
inline constexpr double kRootCoincidenceRel = 1e-9;
// Relative tolerance for flagging a pole/root as sitting on the real axis.
inline constexpr double kRealAxisRel = 1e-11;

// Coefficients stored ascending: c[0] + c[1] w + c[2] w^2 + ...
class Polynomial {
  public:
    Polynomial() = default;

    explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

    Polynomial(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }

    static Polynomial constant(Complex v) { return Polynomial({v}); }

    // Monomial (w - r) products; leading coefficient applied last.
    static Polynomial from_roots(const std::vector<Complex>& roots, Complex leading = 1.0) {
        Polynomial p({leading});
        for (const auto& r : roots) p = p * Polynomial({-r, 1.0});
        return p;
    }

    const std::vector<Complex>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }

    // Degree of the zero polynomial reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Complex lead() const { return c_.empty() ? Complex(0.0) : c_.back(); }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    Complex operator()(Complex w) const {
        Complex acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * w + c_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return Polynomial{};
        std::vector<Complex> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }

    // Coefficient-wise conjugate: on the real axis equals conj(p(w)).
    Polynomial conj_coeffs() const {
        std::vector<Complex> d(c_);
        for (auto& v : d) v = std::conj(v);
        return Polynomial(std::move(d));
    }

    // p(-w)
    Polynomial reflect() const {
        std::vector<Complex> d(c_);
        for (std::size_t i = 1; i < d.size(); i += 2) d[i] = -d[i];
        return Polynomial(std::move(d));
    }

    // Taylor coefficients of p around w0, up to (and including) order n.
    std::vector<Complex> taylor(Complex w0, int n) const {
        // Repeated synthetic division: p(w) = q(w)(w - w0) + rem.
        std::vector<Complex> work(c_);
        std::vector<Complex> out;
        out.reserve(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) {
            if (work.empty()) {
                out.push_back(0.0);
                continue;
            }
            Complex rem = 0.0;
            for (std::size_t i = work.size(); i-- > 0;) {
                Complex next = work[i] + rem * w0;
                rem = next;
                work[i] = next;  // becomes quotient coefficient shifted by one
            }
            out.push_back(rem);
            work.erase(work.begin());
        }
        return out;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> d(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
        return Polynomial(std::move(d));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> d(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] -= b.c_[i];
        return Polynomial(std::move(d));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial{};
        std::vector<Complex> d(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(d));
    }

    friend Polynomial operator*(const Polynomial& a, Complex s) {
        std::vector<Complex> d(a.c_);
        for (auto& v : d) v *= s;
        return Polynomial(std::move(d));
    }

    friend Polynomial operator*(Complex s, const Polynomial& a) { return a * s; }

    friend Polynomial operator-(const Polynomial& a) { return a * Complex(-1.0); }

    // Long division a = q*b + r.  Throws on division by the zero polynomial.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        if (a.degree() < b.degree()) return {Polynomial{}, a};
        std::vector<Complex> rem(a.c_);
        std::vector<Complex> quot(a.c_.size() - b.c_.size() + 1, 0.0);
        const Complex blead = b.c_.back();
        for (std::size_t i = rem.size(); i-- >= b.c_.size();) {
            Complex q = rem[i] / blead;
            quot[i - b.c_.size() + 1] = q;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                rem[i - b.c_.size() + 1 + j] -= q * b.c_[j];
            if (i == 0) break;
        }
        rem.resize(b.c_.size() - 1);
        return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
    }

    // Division known (analytically) to be exact; verifies the remainder.
    // Returns false and leaves *this untouched if the remainder is not negligible.
    static bool exact_divide(const Polynomial& a, const Polynomial& b, Polynomial& quot,
                             double rel_tol = 1e-8) {
        auto [q, r] = divmod(a, b);
        const double scale = a.max_abs_coeff();
        if (r.max_abs_coeff() > rel_tol * std::max(scale, 1e-300)) return false;
        quot = std::move(q);
        return true;
    }

    // All complex roots with multiplicity.  Companion-matrix eigenvalues with
    // a Newton polish step.
    std::vector<Complex> roots() const;

  private:
    void trim() {
        const double scale = max_abs_coeff();
        const double tol = scale * kCoeffTrimRel;
        while (!c_.empty() && std::abs(c_.back()) <= tol) c_.pop_back();
        if (c_.size() == 1 && std::abs(c_[0]) <= tol) c_.clear();
    }

    std::vector<Complex> c_;
};

inline std::vector<Complex> Polynomial::roots() const {
    if (is_zero()) throw DomainError("roots of the zero polynomial");
    const int n = degree();
    if (n > kMaxPolyDegree) throw DomainError("polynomial degree exceeds configured maximum");
    if (n < 1) return {};

    std::vector<Complex> work(c_);
    std::vector<Complex> out;

    // Exact zeros at the origin.
    while (work.size() > 1 && work.front() == Complex(0.0)) {
        out.push_back(0.0);
        work.erase(work.begin());
    }
    const int m = static_cast<int>(work.size()) - 1;
    if (m >= 1) {
        // Variable scaling keeps the companion matrix well balanced when root
        // magnitudes are far from unity.
        double sigma = 0.0;
        const double an = std::abs(work.back());
        for (int k = 0; k < m; ++k) {
            if (work[k] == Complex(0.0)) continue;
            sigma = std::max(sigma, std::pow(std::abs(work[k]) / an, 1.0 / (m - k)));
        }
        if (sigma <= 0.0 || !std::isfinite(sigma)) sigma = 1.0;

        std::vector<Complex> b(work.size());
        double pw = 1.0;
        for (std::size_t k = 0; k < work.size(); ++k) {
            b[k] = work[k] * pw;
            pw *= sigma;
        }
        const Complex blead = b.back();
        for (auto& v : b) v /= blead;

        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
        for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < m; ++i) comp(i, m - 1) = -b[static_cast<std::size_t>(i)];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success) throw NumericalError("companion eigensolver failed");

        const Polynomial dp = this->derivative();
        for (int i = 0; i < m; ++i) {
            Complex r = es.eigenvalues()(i) * sigma;
            // Newton polish on the original coefficients.
            double best = std::abs((*this)(r));
            for (int it = 0; it < 3; ++it) {
                Complex d = dp(r);
                if (d == Complex(0.0)) break;
                Complex rn = r - (*this)(r) / d;
                double v = std::abs((*this)(rn));
                if (!(v < best) || !std::isfinite(v)) break;
                r = rn;
                best = v;
            }
            out.push_back(r);
        }
    }
    return out;
}

// A cluster of numerically coincident roots.
struct RootCluster {
    Complex center;
    int multiplicity = 1;
};

// Group roots within rel_tol of each other; multiple roots are re-polished on
// the appropriate derivative so the cluster center is accurate.
inline std::vector<RootCluster> cluster_roots(const Polynomial& p, const std::vector<Complex>& roots,
                                              double rel_tol = 1e-6) {
    std::vector<RootCluster> clusters;
    std::vector<std::vector<Complex>> members;
    for (const auto& r : roots) {
        bool placed = false;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            const double tol = rel_tol * std::max(1.0, std::abs(clusters[i].center));
            if (std::abs(r - clusters[i].center) <= tol) {
                members[i].push_back(r);
                Complex sum = 0.0;
                for (const auto& v : members[i]) sum += v;
                clusters[i].center = sum / static_cast<double>(members[i].size());
                clusters[i].multiplicity = static_cast<int>(members[i].size());
                placed = true;
                break;
            }
        }
        if (!placed) {
            clusters.push_back({r, 1});
            members.push_back({r});
        }
    }
    // Polish multiple roots: a root of multiplicity m is a simple root of the
    // (m-1)-th derivative.
    for (auto& cl : clusters) {
        if (cl.multiplicity < 2) continue;
        Polynomial d = p;
        for (int k = 1; k < cl.multiplicity; ++k) d = d.derivative();
        const Polynomial dd = d.derivative();
        Complex r = cl.center;
        double best = std::abs(d(r));
        for (int it = 0; it < 4; ++it) {
            Complex g = dd(r);
            if (g == Complex(0.0)) break;
            Complex rn = r - d(r) / g;
            double v = std::abs(d(rn));
            if (!(v < best) || !std::isfinite(v)) break;
            r = rn;
            best = v;
        }
        cl.center = r;
    }
    return clusters;
}

}  // namespace optomech
