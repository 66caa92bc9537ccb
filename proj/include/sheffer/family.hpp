#pragma once

// Multiple-Sheffer families: a coefficient evaluator S_{k1,k2}(y) together
// with the twelve (1,1)-point constants of A and H that the closed-form
// moments need. Ships the built-in families and builds families from JSON
// descriptions of polynomial A, H.

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sheffer/series.hpp"

namespace sheffer {

// Values of A, H and their first/second partials at (t1,t2) = (1,1).
// Mixed partials are symmetric, so one field each.
struct FamilyConstants {
    double A11 = 0, At1 = 0, At2 = 0, At1t1 = 0, At2t2 = 0, At1t2 = 0;
    double H11 = 0, Ht1 = 0, Ht2 = 0, Ht1t1 = 0, Ht2t2 = 0, Ht1t2 = 0;
};

struct Family {
    std::string name;
    std::function<double(int, int, double)> coeff;  // S_{k1,k2}(y)
    FamilyConstants constants;
    bool diagonal_only = false;    // S depends on k1+k2 only
    bool operator_capable = false; // restrictions (i)-(ii) satisfied
};

struct ConditionCheck {
    bool pass = false;
    std::string witness;  // filled on failure
};

struct ValidationReport {
    ConditionCheck positivity;        // condition (i), sampled
    ConditionCheck constants;         // condition (ii)
    bool convergence_declared = true; // condition (iii): declared, not machine-checkable
    bool operator_capable() const { return positivity.pass && constants.pass; }
};

namespace detail {

// Memoized sheffer_table backing for series-defined families. The table is
// rebuilt at a doubled order whenever a request exceeds the current one.
// Safe under concurrent readers.
class TableCoeff {
public:
    using SeriesFactory = std::function<std::pair<BiSeries, BiSeries>(int order)>;

    explicit TableCoeff(SeriesFactory make, int initial_order = 64)
        : make_(std::move(make)), order_(initial_order) {}

    double operator()(int k1, int k2, double y) {
        if (k1 < 0 || k2 < 0)
            throw std::out_of_range("family coeff: negative index");
        std::lock_guard lock(mu_);
        while (k1 + k2 > order_) order_ *= 2;
        auto& entry = tables_[y];
        if (entry.order < k1 + k2) {
            auto [A, H] = make_(order_);
            entry.values = sheffer_table(A, H, y, order_);
            entry.order = order_;
        }
        return entry.values[std::size_t(k1) * (entry.order + 1) + k2];
    }

private:
    struct Entry {
        int order = -1;
        std::vector<double> values;
    };
    SeriesFactory make_;
    int order_;
    std::map<double, Entry> tables_;
    std::mutex mu_;
};

inline std::function<double(int, int, double)> memoized_coeff(
    TableCoeff::SeriesFactory make, int initial_order = 64) {
    auto cache = std::make_shared<TableCoeff>(std::move(make), initial_order);
    return [cache](int k1, int k2, double y) { return (*cache)(k1, k2, y); };
}

}  // namespace detail

// Condition (ii): A(1,1) != 0 and both first H-partials equal 1.
// Condition (i): coefficient positivity, sampled on a y-grid up to kmax.
inline ValidationReport validate_family(const Family& f,
                                        const std::vector<double>& positivity_grid,
                                        int kmax) {
    if (kmax < 1) throw std::invalid_argument("validate_family: kmax must be >= 1");
    if (positivity_grid.empty())
        throw std::invalid_argument("validate_family: empty positivity grid");
    for (double y : positivity_grid)
        if (y < 0) throw std::invalid_argument("validate_family: negative grid value");

    ValidationReport rep;
    rep.positivity.pass = true;
    for (double y : positivity_grid) {
        for (int k1 = 0; k1 <= kmax && rep.positivity.pass; ++k1)
            for (int k2 = 0; k1 + k2 <= kmax; ++k2) {
                const double v = f.coeff(k1, k2, y);
                if (!(v >= -1e-12)) {
                    rep.positivity.pass = false;
                    std::ostringstream os;
                    os << "S_{" << k1 << "," << k2 << "}(" << y << ") = " << v;
                    rep.positivity.witness = os.str();
                    break;
                }
            }
        if (!rep.positivity.pass) break;
    }

    const auto& c = f.constants;
    const bool h_ok = std::abs(c.Ht1 - 1.0) <= 1e-12 && std::abs(c.Ht2 - 1.0) <= 1e-12;
    const bool a_ok = c.A11 != 0.0 && std::isfinite(c.A11);
    rep.constants.pass = h_ok && a_ok;
    if (!rep.constants.pass) {
        std::ostringstream os;
        os << "A(1,1)=" << c.A11 << ", Ht1(1,1)=" << c.Ht1 << ", Ht2(1,1)=" << c.Ht2;
        rep.constants.witness = os.str();
    }
    return rep;
}

inline std::vector<double> default_positivity_grid() {
    return {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0};
}

inline void revalidate(Family& f) {
    f.operator_capable = validate_family(f, default_positivity_grid(), 40).operator_capable();
}

// --- built-in families ---------------------------------------------------

// A = e^{t1+t2}, H = t1+t2: S_{k1,k2}(y) = (y+1)^{k1+k2}.
inline Family family_example1() {
    Family f;
    f.name = "example1";
    f.coeff = [](int k1, int k2, double y) { return std::pow(y + 1.0, k1 + k2); };
    const double e2 = std::exp(2.0);
    f.constants = {e2, e2, e2, e2, e2, e2, 2.0, 1.0, 1.0, 0.0, 0.0, 0.0};
    f.diagonal_only = true;
    revalidate(f);
    return f;
}

// A = t1+t2, H = t1+t2: S_{k1,k2}(y) = (k1+k2) y^{k1+k2-1}, with
// S_{0,0} = 0 so the y^{-1} case never arises.
inline Family family_example2() {
    Family f;
    f.name = "example2";
    f.coeff = [](int k1, int k2, double y) {
        const int s = k1 + k2;
        if (s == 0) return 0.0;
        return s * std::pow(y, s - 1);
    };
    f.constants = {2.0, 1.0, 1.0, 0.0, 0.0, 0.0, 2.0, 1.0, 1.0, 0.0, 0.0, 0.0};
    f.diagonal_only = true;
    revalidate(f);
    return f;
}

// A = 1, H = t1+t2: S_{k1,k2}(y) = y^{k1+k2}; the classical reduction.
inline Family family_szasz() {
    Family f;
    f.name = "szasz";
    f.coeff = [](int k1, int k2, double y) { return std::pow(y, k1 + k2); };
    f.constants = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0, 1.0, 1.0, 0.0, 0.0, 0.0};
    f.diagonal_only = true;
    revalidate(f);
    return f;
}

// Multiple Hermite: A = exp(d/2 (t1+t2)^2 + a1 t1 + a2 t2), H = d (t1+t2),
// requires d < 0. Series-only: condition (ii) cannot hold with d < 0.
inline Family family_hermite(double d, double a1, double a2) {
    if (!(d < 0.0))
        throw std::invalid_argument("hermite family requires delta < 0");
    Family f;
    f.name = "hermite";
    f.coeff = detail::memoized_coeff([d, a1, a2](int order) {
        BiSeries g(order);
        // d/2 (t1+t2)^2 in exponential coefficients: cross term carries 1!1! = 1
        if (order >= 2) {
            g.set(2, 0, d);
            g.set(0, 2, d);
            g.set(1, 1, d);
        }
        if (order >= 1) {
            g.set(1, 0, g.at(1, 0) + a1);
            g.set(0, 1, g.at(0, 1) + a2);
        }
        BiSeries H(order);
        if (order >= 1) {
            H.set(1, 0, d);
            H.set(0, 1, d);
        }
        return std::pair{g.exp(), H};
    });
    // closed-form constants: with g as above, A = e^g and
    // A_{ti} = g_{ti} A, A_{ti,tj} = (g_{ti} g_{tj} + g_{ti,tj}) A at (1,1).
    const double A11 = std::exp(2.0 * d + a1 + a2);
    const double g1 = 2.0 * d + a1, g2 = 2.0 * d + a2;
    f.constants.A11 = A11;
    f.constants.At1 = g1 * A11;
    f.constants.At2 = g2 * A11;
    f.constants.At1t1 = (g1 * g1 + d) * A11;
    f.constants.At2t2 = (g2 * g2 + d) * A11;
    f.constants.At1t2 = (g1 * g2 + d) * A11;
    f.constants.H11 = 2.0 * d;
    f.constants.Ht1 = f.constants.Ht2 = d;
    f.constants.Ht1t1 = f.constants.Ht2t2 = f.constants.Ht1t2 = 0.0;
    f.diagonal_only = false;
    f.operator_capable = false;  // restriction (ii) fails for every d < 0
    return f;
}

// Multiple Laguerre: A = (1-t1-t2)^{-(a+1)}, H = (b1 t1 + b2 t2)/(1-t1-t2),
// requires a > -1 and b1 != b2. Series-only: the expansions have radius
// |t1|+|t2| < 1 and no (1,1)-point constants exist.
inline Family family_laguerre(double a, double b1, double b2) {
    if (!(a > -1.0))
        throw std::invalid_argument("laguerre family requires alpha > -1");
    if (b1 == b2)
        throw std::invalid_argument("laguerre family requires beta1 != beta2");
    Family f;
    f.name = "laguerre";
    f.coeff = detail::memoized_coeff([a, b1, b2](int order) {
        BiSeries A(order), H(order);
        // exponential coefficient of (1-t1-t2)^{-(a+1)} at (k1,k2) is the
        // rising factorial (a+1)_{k1+k2}
        std::vector<double> rising(std::size_t(order) + 1);
        rising[0] = 1.0;
        for (int s = 1; s <= order; ++s)
            rising[std::size_t(s)] = rising[std::size_t(s) - 1] * (a + s);
        for (int k1 = 0; k1 <= order; ++k1)
            for (int k2 = 0; k1 + k2 <= order; ++k2) {
                A.set(k1, k2, rising[std::size_t(k1 + k2)]);
                const int s = k1 + k2;
                if (s >= 1) {
                    // ordinary coefficient b1 C(s-1,k1-1) + b2 C(s-1,k1),
                    // converted to exponential convention
                    const double ord =
                        b1 * binomial(s - 1, k1 - 1) + b2 * binomial(s - 1, k1);
                    double fact = 1.0;
                    for (int i = 2; i <= k1; ++i) fact *= i;
                    for (int i = 2; i <= k2; ++i) fact *= i;
                    H.set(k1, k2, ord * fact);
                }
            }
        return std::pair{A, H};
    });
    const double nan = std::nan("");
    f.constants = {nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan};
    f.diagonal_only = false;
    f.operator_capable = false;
    return f;
}

// name in {example1, example2, szasz, hermite, laguerre}; the latter two
// use the reference parameters (d=-1, a1=0, a2=1) and (a=0, b1=0, b2=1).
inline Family builtin(const std::string& name) {
    if (name == "example1") return family_example1();
    if (name == "example2") return family_example2();
    if (name == "szasz") return family_szasz();
    if (name == "hermite") return family_hermite(-1.0, 0.0, 1.0);
    if (name == "laguerre") return family_laguerre(0.0, 0.0, 1.0);
    throw std::invalid_argument("unknown family: " + name);
}

// --- families from sparse polynomial descriptions ------------------------

struct SparseTerm {
    int k1 = 0, k2 = 0;
    double c = 0.0;
};

// Family from finitely many nonzero exponential coefficients of polynomial
// A and H. Constants are computed exactly from the series at (1,1);
// positivity is validated by sampling; diagonal-only is detected by sampling.
inline Family family_from_terms(const std::string& name,
                                const std::vector<SparseTerm>& A_terms,
                                const std::vector<SparseTerm>& H_terms) {
    int maxdeg = 0;
    double a00 = 0.0;
    for (const auto& t : A_terms) {
        if (t.k1 < 0 || t.k2 < 0)
            throw std::invalid_argument("family coefficients: negative index");
        maxdeg = std::max(maxdeg, t.k1 + t.k2);
        if (t.k1 == 0 && t.k2 == 0) a00 += t.c;
    }
    for (const auto& t : H_terms) {
        if (t.k1 < 0 || t.k2 < 0)
            throw std::invalid_argument("family coefficients: negative index");
        maxdeg = std::max(maxdeg, t.k1 + t.k2);
    }
    if (a00 == 0.0)
        throw std::invalid_argument("family rejected: A(0,0) = 0");

    auto fill = [](const std::vector<SparseTerm>& terms, int order) {
        BiSeries s(order);
        for (const auto& t : terms)
            if (t.k1 + t.k2 <= order) s.set(t.k1, t.k2, s.at(t.k1, t.k2) + t.c);
        return s;
    };

    Family f;
    f.name = name;
    f.coeff = detail::memoized_coeff(
        [fill, A_terms, H_terms](int order) {
            return std::pair{fill(A_terms, order), fill(H_terms, order)};
        },
        std::max(64, maxdeg));

    // exact constants: polynomials evaluate exactly once the truncation
    // order exceeds their degree
    const int corder = maxdeg + 2;
    const BiSeries A = fill(A_terms, corder), H = fill(H_terms, corder);
    auto& c = f.constants;
    c.A11 = series_eval(A, 1, 1).value;
    c.At1 = series_eval(A.partial(1), 1, 1).value;
    c.At2 = series_eval(A.partial(2), 1, 1).value;
    c.At1t1 = series_eval(A.partial(1).partial(1), 1, 1).value;
    c.At2t2 = series_eval(A.partial(2).partial(2), 1, 1).value;
    c.At1t2 = series_eval(A.partial(1).partial(2), 1, 1).value;
    c.H11 = series_eval(H, 1, 1).value;
    c.Ht1 = series_eval(H.partial(1), 1, 1).value;
    c.Ht2 = series_eval(H.partial(2), 1, 1).value;
    c.Ht1t1 = series_eval(H.partial(1).partial(1), 1, 1).value;
    c.Ht2t2 = series_eval(H.partial(2).partial(2), 1, 1).value;
    c.Ht1t2 = series_eval(H.partial(1).partial(2), 1, 1).value;

    // diagonal-only detection by sampling
    f.diagonal_only = true;
    for (double y : {0.3, 1.7}) {
        for (int s = 0; s <= 12 && f.diagonal_only; ++s) {
            const double ref = f.coeff(s, 0, y);
            for (int k1 = 1; k1 <= s; ++k1)
                if (std::abs(f.coeff(k1, s - k1, y) - ref) >
                    1e-9 * std::max(1.0, std::abs(ref))) {
                    f.diagonal_only = false;
                    break;
                }
        }
        if (!f.diagonal_only) break;
    }

    revalidate(f);
    return f;
}

}  // namespace sheffer
