#pragma once

// Evaluation of the generalized operator
//   G_n(f;x) = e^{-(nx/2) H(1,1)} / A(1,1)
//              * sum_{k1,k2} S_{k1,k2}(nx/2) / (k1! k2!) f((k1+k2)/n)
// by truncated double summation in fixed shell order, plus the classical
// single-sum oracle and the closed-form moments.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sheffer/family.hpp"

namespace sheffer {

inline constexpr int kDefaultShellCap = 4096;
inline constexpr double kDefaultTol = 1e-12;

struct OperatorResult {
    double value = 0.0;
    std::int64_t terms_used = 0;
    double accumulated_weight = 0.0;
    double tail_bound = 0.0;
    int shells_evaluated = 0;  // max k1+k2 reached
};

struct MomentSet {
    double e0 = 0, e1 = 0, e2 = 0;
    double central1 = 0, central2 = 0;
};

// Growth envelope |f(u)| <= C (1 + u^2) on [0, inf); the tail mass of the
// weight distribution times this envelope bounds the truncation error.
struct GrowthEnvelope {
    double C = 0.0;
    bool heuristic = false;  // true when C was sampled rather than supplied

    template <typename F>
    static GrowthEnvelope estimate(F&& f, double support_max, int samples = 257) {
        double m = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double u = support_max * i / (samples - 1);
            m = std::max(m, std::abs(f(u)) / (1.0 + u * u));
        }
        return {1.1 * m, true};
    }
};

namespace detail {

// 1/k!, linear up to 170! and log-space beyond
inline double inv_factorial(int k) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) t[std::size_t(i)] = t[std::size_t(i) - 1] / i;
        return t;
    }();
    if (k <= 170) return table[std::size_t(k)];
    return std::exp(-std::lgamma(double(k) + 1.0));
}

// w = pref * S / (k1! k2!) with a log-space retry if the linear-space
// product over/underflows
inline double weight_term(double pref, double log_pref, double S, int k1, int k2) {
    const double w = pref * S * inv_factorial(k1) * inv_factorial(k2);
    if (std::isfinite(w) && (w != 0.0 || S == 0.0)) return w;
    if (S == 0.0) return 0.0;
    const double lw = log_pref + std::log(std::abs(S)) -
                      std::lgamma(double(k1) + 1.0) - std::lgamma(double(k2) + 1.0);
    return std::copysign(std::exp(lw), S);
}

}  // namespace detail

// Streams the normalized weights w_{k1,k2} in deterministic shell order
// (s = k1+k2 ascending, k1 ascending within a shell) until the remaining
// mass drops to tol. The visitor receives (k1, k2, w).
template <typename Visitor>
OperatorResult for_each_weight(const Family& fam, int n, double x, double tol,
                               Visitor&& visit, int shell_cap = kDefaultShellCap) {
    if (!fam.operator_capable)
        throw std::domain_error("family '" + fam.name + "' is not operator-capable");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (x < 0) throw std::invalid_argument("x must be >= 0");
    if (!(tol >= 1e-15)) throw std::invalid_argument("tol must be >= 1e-15");

    const double y = n * x / 2.0;
    const double log_pref = -y * fam.constants.H11 - std::log(std::abs(fam.constants.A11));
    const double pref = std::exp(log_pref) * (fam.constants.A11 > 0 ? 1.0 : -1.0);

    OperatorResult res;
    for (int s = 0; s <= shell_cap; ++s) {
        res.shells_evaluated = s;
        for (int k1 = 0; k1 <= s; ++k1) {
            const double S = fam.coeff(k1, s - k1, y);
            const double w = detail::weight_term(pref, log_pref, S, k1, s - k1);
            res.accumulated_weight += w;
            ++res.terms_used;
            visit(k1, s - k1, w);
        }
        if (1.0 - res.accumulated_weight <= tol) return res;
    }
    throw std::range_error("weight stream: shell cap exhausted before tolerance");
}

// Same stream, collected.
struct WeightEntry {
    int k1 = 0, k2 = 0;
    double w = 0.0;
};
inline std::vector<WeightEntry> weights(const Family& fam, int n, double x,
                                        double tol = kDefaultTol,
                                        int shell_cap = kDefaultShellCap) {
    std::vector<WeightEntry> out;
    for_each_weight(fam, n, x, tol,
                    [&](int k1, int k2, double w) { out.push_back({k1, k2, w}); },
                    shell_cap);
    return out;
}

// G_n(f;x) by truncated summation. tail_bound uses the growth envelope:
// the omitted mass is at most 1 - accumulated_weight and the omitted
// abscissas lie in [0, shell_cap/n].
template <typename F>
OperatorResult apply(const Family& fam, F&& f, int n, double x,
                     double tol = kDefaultTol, GrowthEnvelope env = {},
                     int shell_cap = kDefaultShellCap) {
    if (env.C == 0.0)
        env = GrowthEnvelope::estimate(f, double(shell_cap) / n);

    bool envelope_violated = false;
    double bad_u = 0.0;
    OperatorResult res = for_each_weight(
        fam, n, x, tol,
        [&](int k1, int k2, double w) {
            const double u = double(k1 + k2) / n;
            const double fu = f(u);
            if (std::abs(fu) > env.C * (1.0 + u * u) && !envelope_violated) {
                envelope_violated = true;
                bad_u = u;
            }
            res.value += w * fu;
        },
        shell_cap);
    if (envelope_violated)
        throw std::domain_error("growth envelope violated at u = " + std::to_string(bad_u));
    const double u_max = double(shell_cap) / n;
    res.tail_bound = std::max(0.0, 1.0 - res.accumulated_weight) * env.C * (1.0 + u_max * u_max);
    return res;
}

// Classical single-sum oracle: e^{-nx} sum_k (nx)^k / k! f(k/n).
template <typename F>
OperatorResult szasz(F&& f, int n, double x, double tol = kDefaultTol,
                     GrowthEnvelope env = {}, int k_cap = kDefaultShellCap) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (x < 0) throw std::invalid_argument("x must be >= 0");
    if (!(tol >= 1e-15)) throw std::invalid_argument("tol must be >= 1e-15");
    if (env.C == 0.0)
        env = GrowthEnvelope::estimate(f, double(k_cap) / n);

    OperatorResult res;
    double w = std::exp(-double(n) * x);  // Poisson mass at k = 0
    for (int k = 0; k <= k_cap; ++k) {
        if (k > 0) w *= n * x / k;
        res.accumulated_weight += w;
        res.value += w * f(double(k) / n);
        ++res.terms_used;
        res.shells_evaluated = k;
        if (1.0 - res.accumulated_weight <= tol) {
            const double u_max = double(k_cap) / n;
            res.tail_bound =
                std::max(0.0, 1.0 - res.accumulated_weight) * env.C * (1.0 + u_max * u_max);
            return res;
        }
    }
    throw std::range_error("szasz: term cap exhausted before tolerance");
}

// Closed-form moments and central moments from the (1,1)-point constants.
inline MomentSet moments_closed(const Family& fam, int n, double x) {
    if (!fam.operator_capable)
        throw std::domain_error("family '" + fam.name + "' is not operator-capable");
    const auto& c = fam.constants;
    MomentSet m;
    m.e0 = 1.0;
    m.e1 = x + (c.At1 + c.At2) / (n * c.A11);
    const double a_second = (c.At1t1 + c.At2t2 + 2.0 * c.At1t2 + c.At1 + c.At2) / c.A11;
    m.e2 = x * x +
           x / n * (1.0 + (c.Ht1t1 + c.Ht2t2) / 2.0 +
                    2.0 * (c.At1 + c.At2) / c.A11 + c.Ht1t2) +
           a_second / (double(n) * n);
    m.central1 = (c.At1 + c.At2) / (n * c.A11);
    m.central2 = x / n * (1.0 + (c.Ht1t1 + c.Ht2t2) / 2.0 + c.Ht1t2) +
                 a_second / (double(n) * n);
    return m;
}

// The three generating-function sums (unnormalized), truncated, with their
// closed forms built from the (1,1)-point constants.
struct GeneratingSums {
    double s0 = 0, s1 = 0, s2 = 0;               // truncated
    double s0_closed = 0, s1_closed = 0, s2_closed = 0;
};

inline GeneratingSums lemma_sums(const Family& fam, int n, double x,
                                 double tol = kDefaultTol,
                                 int shell_cap = kDefaultShellCap) {
    GeneratingSums g;
    const double y = n * x / 2.0;
    const auto& c = fam.constants;
    const double growth = std::exp(y * c.H11) * c.A11;
    for_each_weight(
        fam, n, x, tol,
        [&](int k1, int k2, double w) {
            // recover the unnormalized term from the normalized weight
            const double term = w * growth;
            const int s = k1 + k2;
            g.s0 += term;
            g.s1 += s * term;
            g.s2 += double(s) * s * term;
        },
        shell_cap);
    const double e = std::exp(y * c.H11);
    g.s0_closed = c.A11 * e;
    g.s1_closed = (n * x * c.A11 + c.At1 + c.At2) * e;
    g.s2_closed =
        (double(n) * n * x * x * c.A11 +
         n * x * (c.A11 * (c.Ht1t1 + c.Ht2t2) / 2.0 + c.A11 * c.Ht1t2 +
                  2.0 * c.At1 + 2.0 * c.At2 + c.A11) +
         c.At1t1 + c.At2t2 + 2.0 * c.At1t2 + c.At1 + c.At2) *
        e;
    return g;
}

// Shell-collapsed profile sigma_s = sum_{k1+k2=s} S_{k1,k2}(y)/(k1! k2!)
// = S_s(y) 2^s / s! for families whose coefficients depend on k1+k2 only.
inline std::vector<double> diagonal_profile(const Family& fam, double y, int smax) {
    if (!fam.diagonal_only)
        throw std::domain_error("diagonal_profile: family is not diagonal-only");
    std::vector<double> sigma(std::size_t(smax) + 1);
    double pow2_over_fact = 1.0;  // 2^s / s!
    for (int s = 0; s <= smax; ++s) {
        if (s > 0) pow2_over_fact *= 2.0 / s;
        sigma[std::size_t(s)] = fam.coeff(s, 0, y) * pow2_over_fact;
    }
    return sigma;
}

// apply() along the collapsed profile; identical results to the double sum
// for diagonal-only families, in O(shells) coefficient evaluations.
template <typename F>
OperatorResult apply_diagonal(const Family& fam, F&& f, int n, double x,
                              double tol = kDefaultTol, GrowthEnvelope env = {},
                              int shell_cap = kDefaultShellCap) {
    if (!fam.operator_capable)
        throw std::domain_error("family '" + fam.name + "' is not operator-capable");
    if (!fam.diagonal_only)
        throw std::domain_error("apply_diagonal: family is not diagonal-only");
    if (!(tol >= 1e-15)) throw std::invalid_argument("tol must be >= 1e-15");
    if (env.C == 0.0)
        env = GrowthEnvelope::estimate(f, double(shell_cap) / n);

    const double y = n * x / 2.0;
    const double log_pref = -y * fam.constants.H11 - std::log(std::abs(fam.constants.A11));
    const double pref = std::exp(log_pref) * (fam.constants.A11 > 0 ? 1.0 : -1.0);

    OperatorResult res;
    double pow2_over_fact = 1.0;
    for (int s = 0; s <= shell_cap; ++s) {
        if (s > 0) pow2_over_fact *= 2.0 / s;
        const double w = pref * fam.coeff(s, 0, y) * pow2_over_fact;
        res.accumulated_weight += w;
        res.value += w * f(double(s) / n);
        res.terms_used += s + 1;
        res.shells_evaluated = s;
        if (1.0 - res.accumulated_weight <= tol) {
            const double u_max = double(shell_cap) / n;
            res.tail_bound =
                std::max(0.0, 1.0 - res.accumulated_weight) * env.C * (1.0 + u_max * u_max);
            return res;
        }
    }
    throw std::range_error("apply_diagonal: shell cap exhausted before tolerance");
}

}  // namespace sheffer
