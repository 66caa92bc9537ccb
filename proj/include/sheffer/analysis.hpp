#pragma once

// Moduli of continuity, the three error-bound formulas, Korovkin
// convergence reports and the actual-error sweeps behind the figures.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sheffer/operator.hpp"

namespace sheffer {

struct ModulusEstimate {
    double delta = 0.0;
    double value = 0.0;
    double grid_step = 0.0;
    bool lower_estimate = true;  // grid search under-approximates the sup
};

enum class BoundKind { modulus, gavrea_rasa, steklov };

struct BoundReport {
    BoundKind kind = BoundKind::modulus;
    int n = 0;
    double x = 0.0;
    double bound = 0.0;
    double actual_error = 0.0;
    // inputs, populated per kind
    double central2 = 0.0;
    double lambda = 0.0;   // modulus kind
    double delta = 0.0;    // modulus kind
    double w_value = 0.0;  // modulus / steklov: the modulus used
    double l = 0.0;        // steklov: fourth root of central2
};

struct NormSet {
    double sup_f = 0.0, sup_f1 = 0.0, sup_f2 = 0.0;
    double a = 0.0, b = 0.0;  // interval the norms were taken on
};

// First modulus w(f;delta): max |f(u)-f(v)| over grid pairs with
// |u-v| <= delta. A lower estimate of the true sup.
template <typename F>
ModulusEstimate modulus(F&& f, double delta, double a, double b, int grid = 4096) {
    if (!(delta > 0)) throw std::invalid_argument("modulus: delta must be > 0");
    if (!(b > a)) throw std::invalid_argument("modulus: empty interval");
    if (grid < 64) throw std::invalid_argument("modulus: grid must be >= 64");
    const double h = (b - a) / grid;
    std::vector<double> fv(std::size_t(grid) + 1);
    for (int i = 0; i <= grid; ++i) fv[std::size_t(i)] = f(a + i * h);
    const int window = int(delta / h);
    double m = 0.0;
    for (int i = 0; i <= grid; ++i)
        for (int j = i + 1; j <= std::min(grid, i + window); ++j)
            m = std::max(m, std::abs(fv[std::size_t(i)] - fv[std::size_t(j)]));
    return {delta, m, h, true};
}

// Second modulus w2(f;delta): sup over 0 < t <= delta and u of
// |f(u+2t) - 2f(u+t) + f(u)|, with u+2t kept inside [a,b].
template <typename F>
ModulusEstimate second_modulus(F&& f, double delta, double a, double b,
                               int grid = 4096) {
    if (!(delta > 0)) throw std::invalid_argument("second_modulus: delta must be > 0");
    if (!(b > a)) throw std::invalid_argument("second_modulus: empty interval");
    if (grid < 64) throw std::invalid_argument("second_modulus: grid must be >= 64");
    if (2 * delta >= b - a)
        throw std::invalid_argument("second_modulus: delta too large for interval");
    const double h = (b - a) / grid;
    std::vector<double> fv(std::size_t(grid) + 1);
    for (int i = 0; i <= grid; ++i) fv[std::size_t(i)] = f(a + i * h);
    const int tmax = std::max(1, int(delta / h));
    double m = 0.0;
    for (int t = 1; t <= tmax; ++t)
        for (int i = 0; i + 2 * t <= grid; ++i)
            m = std::max(m, std::abs(fv[std::size_t(i + 2 * t)] -
                                     2.0 * fv[std::size_t(i + t)] + fv[std::size_t(i)]));
    return {delta, m, h, true};
}

// Sup norms of f, f', f'' on [a,b]. Derivatives by central differences with
// one Richardson step unless analytic derivatives are supplied.
template <typename F>
NormSet sup_norms(F&& f, double a, double b, int grid = 4096,
                  std::optional<std::function<double(double)>> d1 = std::nullopt,
                  std::optional<std::function<double(double)>> d2 = std::nullopt,
                  double step = 1e-5) {
    if (!(b > a)) throw std::invalid_argument("sup_norms: empty interval");
    auto fd1 = [&](double u) {
        auto d = [&](double h) { return (f(u + h) - f(u - h)) / (2.0 * h); };
        return (4.0 * d(step / 2) - d(step)) / 3.0;
    };
    auto fd2 = [&](double u) {
        auto d = [&](double h) { return (f(u + h) - 2.0 * f(u) + f(u - h)) / (h * h); };
        return (4.0 * d(step / 2) - d(step)) / 3.0;
    };
    NormSet s;
    s.a = a;
    s.b = b;
    for (int i = 0; i <= grid; ++i) {
        const double u = a + (b - a) * i / grid;
        const double v0 = f(u);
        const double v1 = d1 ? (*d1)(u) : fd1(u);
        const double v2 = d2 ? (*d2)(u) : fd2(u);
        if (!std::isfinite(v0) || !std::isfinite(v1) || !std::isfinite(v2))
            throw std::domain_error("sup_norms: non-finite sample at u = " +
                                    std::to_string(u));
        s.sup_f = std::max(s.sup_f, std::abs(v0));
        s.sup_f1 = std::max(s.sup_f1, std::abs(v1));
        s.sup_f2 = std::max(s.sup_f2, std::abs(v2));
    }
    return s;
}

// lambda_n(x) = x (1 + (Ht1t1 + Ht2t2)/2 + Ht1t2)
//             + (At1t1 + At2t2 + 2 At1t2 + At1 + At2) / (n A11)
inline double lambda_n(const Family& fam, int n, double x) {
    const auto& c = fam.constants;
    return x * (1.0 + (c.Ht1t1 + c.Ht2t2) / 2.0 + c.Ht1t2) +
           (c.At1t1 + c.At2t2 + 2.0 * c.At1t2 + c.At1 + c.At2) / (n * c.A11);
}

enum class DeltaRule { paper_sqrt_n, inv_sqrt_n, custom };

// Rate-of-convergence bound (1 + sqrt(lambda_n(x))) w(f;delta). The printed
// delta = sqrt(n) does not shrink with n; inv_sqrt_n is the convergent
// default, paper_sqrt_n is kept for fidelity runs.
template <typename F>
BoundReport bound_modulus(const Family& fam, F&& f, int n, double x,
                          DeltaRule rule = DeltaRule::inv_sqrt_n,
                          double custom_delta = 0.0,
                          double a = 0.0, double b = 1.0, int grid = 4096,
                          double tol = kDefaultTol) {
    double delta;
    switch (rule) {
        case DeltaRule::paper_sqrt_n: delta = std::sqrt(double(n)); break;
        case DeltaRule::inv_sqrt_n: delta = 1.0 / std::sqrt(double(n)); break;
        default:
            if (!(custom_delta > 0))
                throw std::invalid_argument("bound_modulus: custom delta must be > 0");
            delta = custom_delta;
    }
    BoundReport r;
    r.kind = BoundKind::modulus;
    r.n = n;
    r.x = x;
    r.delta = delta;
    r.lambda = lambda_n(fam, n, x);
    // w is taken on [a,b]; delta values beyond the interval length saturate
    r.w_value = modulus(f, std::min(delta, b - a), a, b, grid).value;
    r.bound = (1.0 + std::sqrt(r.lambda)) * r.w_value;
    r.central2 = moments_closed(fam, n, x).central2;
    r.actual_error = std::abs(apply(fam, f, n, x, tol).value - f(x));
    return r;
}

// ||f'|| sqrt(m2) + 1/2 ||f''|| m2 where m2 is the second central moment.
inline double bound_gavrea_rasa(double central2, const NormSet& norms) {
    if (central2 < 0)
        throw std::invalid_argument("bound_gavrea_rasa: negative central moment");
    return norms.sup_f1 * std::sqrt(central2) + 0.5 * norms.sup_f2 * central2;
}

template <typename F>
BoundReport report_gavrea_rasa(const Family& fam, F&& f, int n, double x,
                               const NormSet& norms, double tol = kDefaultTol) {
    BoundReport r;
    r.kind = BoundKind::gavrea_rasa;
    r.n = n;
    r.x = x;
    r.central2 = moments_closed(fam, n, x).central2;
    r.bound = bound_gavrea_rasa(r.central2, norms);
    r.actual_error = std::abs(apply(fam, f, n, x, tol).value - f(x));
    return r;
}

// Steklov-smoothing bound on C[0,alpha]:
//   (2/alpha) ||f|| l^2 + (3/4)(alpha + 2 + l^2) w2(f;l),  l = central2^{1/4}.
template <typename F>
BoundReport bound_steklov(const Family& fam, F&& f, int n, double x, double alpha,
                          int grid = 4096, double tol = kDefaultTol) {
    if (!(alpha > 0)) throw std::invalid_argument("bound_steklov: alpha must be > 0");
    BoundReport r;
    r.kind = BoundKind::steklov;
    r.n = n;
    r.x = x;
    r.central2 = moments_closed(fam, n, x).central2;
    r.l = std::pow(r.central2, 0.25);
    if (2.0 * r.l >= alpha)
        throw std::domain_error("bound_steklov: l too large for [0,alpha]");
    double sup_f = 0.0;
    for (int i = 0; i <= grid; ++i)
        sup_f = std::max(sup_f, std::abs(f(alpha * i / grid)));
    r.w_value = second_modulus(f, r.l, 0.0, alpha, grid).value;
    r.bound = 2.0 / alpha * sup_f * r.l * r.l +
              0.75 * (alpha + 2.0 + r.l * r.l) * r.w_value;
    r.actual_error = std::abs(apply(fam, f, n, x, tol).value - f(x));
    return r;
}

// Sup deviation of the test-function moments from x^i over an x-grid,
// per n, with consecutive-n ratios.
struct KorovkinRow {
    int n = 0;
    double dev_e0 = 0, dev_e1 = 0, dev_e2 = 0;
};
struct KorovkinReport {
    std::vector<KorovkinRow> rows;
    // ratio[i] = rows[i+1].dev / rows[i].dev per test function (0 when undefined)
    std::vector<std::array<double, 3>> ratios;
};

inline KorovkinReport korovkin_report(const Family& fam,
                                      const std::vector<int>& n_list,
                                      double b = 1.0, int grid = 256) {
    KorovkinReport rep;
    for (int n : n_list) {
        KorovkinRow row;
        row.n = n;
        for (int i = 0; i <= grid; ++i) {
            const double x = b * i / grid;
            const MomentSet m = moments_closed(fam, n, x);
            row.dev_e0 = std::max(row.dev_e0, std::abs(m.e0 - 1.0));
            row.dev_e1 = std::max(row.dev_e1, std::abs(m.e1 - x));
            row.dev_e2 = std::max(row.dev_e2, std::abs(m.e2 - x * x));
        }
        rep.rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        auto ratio = [](double num, double den) { return den > 0 ? num / den : 0.0; };
        rep.ratios.push_back({ratio(rep.rows[i + 1].dev_e0, rep.rows[i].dev_e0),
                              ratio(rep.rows[i + 1].dev_e1, rep.rows[i].dev_e1),
                              ratio(rep.rows[i + 1].dev_e2, rep.rows[i].dev_e2)});
    }
    return rep;
}

struct SweepRow {
    int n = 0;
    double x = 0, operator_value = 0, f_value = 0, abs_error = 0;
};

// Dense (n,x) table of operator values against f for plotting.
template <typename F>
std::vector<SweepRow> error_sweep(const Family& fam, F&& f,
                                  const std::vector<int>& n_list, double a, double b,
                                  int grid, double tol = kDefaultTol) {
    std::vector<SweepRow> rows;
    for (int n : n_list)
        for (int i = 0; i <= grid; ++i) {
            const double x = grid > 0 ? a + (b - a) * i / grid : a;
            SweepRow row;
            row.n = n;
            row.x = x;
            row.operator_value = apply(fam, f, n, x, tol).value;
            row.f_value = f(x);
            row.abs_error = std::abs(row.operator_value - row.f_value);
            rows.push_back(row);
            if (grid == 0) break;
        }
    return rows;
}

}  // namespace sheffer
