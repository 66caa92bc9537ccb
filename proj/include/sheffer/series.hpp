#pragma once

// Truncated bivariate power series in the exponential-coefficient
// convention: f(t1,t2) = sum c[k1,k2] t1^k1 t2^k2 / (k1! k2!).
// Products therefore carry binomial weights and the stored coefficients
// never accumulate factorials.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sheffer {

// Binomial coefficients C(n,k) as doubles, table built on first use.
inline double binomial(int n, int k) {
    constexpr int kMaxN = 512;
    if (n < 0 || k < 0 || k > n) return 0.0;
    if (n > kMaxN) throw std::length_error("binomial: n exceeds table limit 512");
    static const std::vector<double> table = [] {
        std::vector<double> t(std::size_t(kMaxN + 1) * (kMaxN + 1), 0.0);
        for (int i = 0; i <= kMaxN; ++i) {
            t[std::size_t(i) * (kMaxN + 1)] = 1.0;
            for (int j = 1; j <= i; ++j)
                t[std::size_t(i) * (kMaxN + 1) + j] =
                    t[std::size_t(i - 1) * (kMaxN + 1) + j - 1] +
                    (j <= i - 1 ? t[std::size_t(i - 1) * (kMaxN + 1) + j] : 0.0);
        }
        return t;
    }();
    return table[std::size_t(n) * (kMaxN + 1) + k];
}

// Dense univariate polynomial, coefficient list in increasing degree.
// Used as the coefficient ring when series coefficients are polynomials
// in the evaluation point (S_{k1,k2}(x) as symbolic objects).
class Poly {
public:
    Poly() = default;
    Poly(double c) { if (c != 0.0) c_.assign(1, c); }
    static Poly variable() {
        Poly p;
        p.c_ = {0.0, 1.0};
        return p;
    }

    int degree() const { return int(c_.size()) - 1; }  // -1 for the zero poly
    double coeff(int i) const {
        return (i >= 0 && i < int(c_.size())) ? c_[std::size_t(i)] : 0.0;
    }
    bool is_zero() const { return c_.empty(); }

    double operator()(double x) const {
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
        return v;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (b * -1.0); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        Poly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, double s) {
        Poly r = a;
        for (auto& c : r.c_) c *= s;
        r.trim();
        return r;
    }
    friend Poly operator*(double s, const Poly& a) { return a * s; }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }

    bool operator==(const Poly& b) const { return c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
    std::vector<double> c_;
};

namespace detail {
inline double exp_of_constant(double c) { return std::exp(c); }
inline double constant_scalar(double c) { return c; }
inline double constant_scalar(const Poly& p) {
    if (p.degree() > 0)
        throw std::domain_error("series exp: non-constant polynomial at (0,0)");
    return p.coeff(0);
}
inline bool is_zero_coeff(double c) { return c == 0.0; }
inline bool is_zero_coeff(const Poly& p) { return p.is_zero(); }
}  // namespace detail

// Truncated bivariate series over coefficient ring T (double or Poly).
// Indices satisfy k1,k2 >= 0 and k1+k2 <= order().
template <typename T>
class BasicBiSeries {
public:
    explicit BasicBiSeries(int order) : order_(order) {
        if (order < 0) throw std::invalid_argument("series order must be >= 0");
        c_.resize(std::size_t(order + 1) * (order + 1));
    }

    int order() const { return order_; }

    const T& at(int k1, int k2) const { return c_[idx(k1, k2)]; }
    void set(int k1, int k2, T v) { c_[idx(k1, k2)] = std::move(v); }

    static BasicBiSeries one(int order) {
        BasicBiSeries s(order);
        s.set(0, 0, T(1.0));
        return s;
    }

    // Exponential-convention Cauchy product, truncated at the common order.
    friend BasicBiSeries operator*(const BasicBiSeries& a, const BasicBiSeries& b) {
        if (a.order_ != b.order_)
            throw std::invalid_argument("series product: order mismatch");
        BasicBiSeries r(a.order_);
        for (int k1 = 0; k1 <= a.order_; ++k1)
            for (int k2 = 0; k1 + k2 <= a.order_; ++k2) {
                T acc(0.0);
                for (int i = 0; i <= k1; ++i) {
                    const double b1 = binomial(k1, i);
                    for (int j = 0; j <= k2; ++j) {
                        const T& ai = a.at(i, j);
                        if (detail::is_zero_coeff(ai)) continue;
                        acc += (b1 * binomial(k2, j)) * (ai * b.at(k1 - i, k2 - j));
                    }
                }
                r.set(k1, k2, std::move(acc));
            }
        return r;
    }

    friend BasicBiSeries operator+(const BasicBiSeries& a, const BasicBiSeries& b) {
        if (a.order_ != b.order_)
            throw std::invalid_argument("series sum: order mismatch");
        BasicBiSeries r(a.order_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend BasicBiSeries operator*(const BasicBiSeries& a, double s) {
        BasicBiSeries r = a;
        for (auto& c : r.c_) c = c * s;
        return r;
    }
    friend BasicBiSeries operator*(double s, const BasicBiSeries& a) { return a * s; }

    // Partial derivative along t1 (axis 1) or t2 (axis 2). In the
    // exponential convention this is a pure index shift; the order drops
    // by one because the top shell of the input is consumed.
    BasicBiSeries partial(int axis) const {
        if (order_ < 1) throw std::domain_error("series partial: order 0 input");
        if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
        BasicBiSeries r(order_ - 1);
        for (int k1 = 0; k1 <= r.order_; ++k1)
            for (int k2 = 0; k1 + k2 <= r.order_; ++k2)
                r.set(k1, k2, axis == 1 ? at(k1 + 1, k2) : at(k1, k2 + 1));
        return r;
    }

    // exp of this series via the triangular recurrence implied by
    // dE/dt1 = E * dh/dt1 (t2 analogue for the k1 = 0 column). The (0,0)
    // term may be nonzero; the result is scaled by exp of it.
    BasicBiSeries exp() const {
        BasicBiSeries e(order_);
        const double h00 = detail::constant_scalar(at(0, 0));
        const double e00 = detail::exp_of_constant(h00);
        if (!std::isfinite(e00))
            throw std::range_error("series exp: exp of constant term overflows");
        e.set(0, 0, T(e00));
        // k1 = 0 column from the t2 recurrence:
        // E[0,k2+1] = sum_j C(k2,j) E[0,j] h[0,k2-j+1]
        for (int k2 = 0; k2 < order_; ++k2) {
            T acc(0.0);
            for (int j = 0; j <= k2; ++j)
                acc += binomial(k2, j) * (e.at(0, j) * at(0, k2 - j + 1));
            e.set(0, k2 + 1, std::move(acc));
        }
        // remaining entries from the t1 recurrence:
        // E[k1+1,k2] = sum_{i<=k1,j<=k2} C(k1,i) C(k2,j) E[i,j] h[k1-i+1,k2-j]
        for (int k1 = 0; k1 < order_; ++k1)
            for (int k2 = 0; k1 + 1 + k2 <= order_; ++k2) {
                T acc(0.0);
                for (int i = 0; i <= k1; ++i) {
                    const double b1 = binomial(k1, i);
                    for (int j = 0; j <= k2; ++j)
                        acc += (b1 * binomial(k2, j)) * (e.at(i, j) * at(k1 - i + 1, k2 - j));
                }
                e.set(k1 + 1, k2, std::move(acc));
            }
        return e;
    }

    bool operator==(const BasicBiSeries& b) const {
        return order_ == b.order_ && c_ == b.c_;
    }

private:
    std::size_t idx(int k1, int k2) const {
        if (k1 < 0 || k2 < 0 || k1 + k2 > order_)
            throw std::out_of_range("series index outside truncation triangle");
        return std::size_t(k1) * (order_ + 1) + k2;
    }
    int order_;
    std::vector<T> c_;
};

using BiSeries = BasicBiSeries<double>;
using XPolySeries = BasicBiSeries<Poly>;

struct EvalResult {
    double value = 0.0;
    double last_shell = 0.0;  // magnitude of the top retained shell, convergence diagnostic
};

// sum c[k1,k2] t1^k1 t2^k2 / (k1! k2!) over stored indices. Exact when the
// series is a polynomial inside the truncation; otherwise truncated, with
// the last-shell magnitude reported so callers can judge convergence.
inline EvalResult series_eval(const BiSeries& a, double t1, double t2) {
    EvalResult r;
    // powers over factorial, built incrementally to avoid overflow
    std::vector<double> p1(std::size_t(a.order()) + 1), p2(std::size_t(a.order()) + 1);
    p1[0] = p2[0] = 1.0;
    for (int k = 1; k <= a.order(); ++k) {
        p1[std::size_t(k)] = p1[std::size_t(k) - 1] * t1 / k;
        p2[std::size_t(k)] = p2[std::size_t(k) - 1] * t2 / k;
    }
    for (int s = 0; s <= a.order(); ++s) {
        double shell = 0.0;
        for (int k1 = 0; k1 <= s; ++k1)
            shell += a.at(k1, s - k1) * p1[std::size_t(k1)] * p2[std::size_t(s - k1)];
        r.value += shell;
        if (s == a.order()) r.last_shell = std::abs(shell);
    }
    return r;
}

// Exponential coefficients of A(t1,t2) * exp(y H(t1,t2)): the values
// S_{k1,k2}(y) for k1+k2 <= order, returned as a dense (order+1)^2 matrix
// indexed [k1*(order+1)+k2].
inline std::vector<double> sheffer_table(const BiSeries& A, const BiSeries& H,
                                         double y, int order) {
    if (A.order() < order || H.order() < order)
        throw std::invalid_argument("sheffer_table: input order too small");
    auto clip = [order](const BiSeries& s) {
        BiSeries r(order);
        for (int k1 = 0; k1 <= order; ++k1)
            for (int k2 = 0; k1 + k2 <= order; ++k2) r.set(k1, k2, s.at(k1, k2));
        return r;
    };
    const BiSeries prod = clip(A) * (clip(H) * y).exp();
    std::vector<double> out(std::size_t(order + 1) * (order + 1), 0.0);
    for (int k1 = 0; k1 <= order; ++k1)
        for (int k2 = 0; k1 + k2 <= order; ++k2)
            out[std::size_t(k1) * (order + 1) + k2] = prod.at(k1, k2);
    return out;
}

}  // namespace sheffer
