#include "casimir/laurent.hpp"

#include "casimir/error.hpp"

#include <algorithm>
#include <string>

namespace casimir {

LaurentSeries::LaurentSeries(int min_degree, std::vector<Real> coeffs) : min_degree_(min_degree), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorCode::OutOfRange, "a Laurent series needs at least one coefficient");
}

LaurentSeries LaurentSeries::monomial(const Real& c, int power, int truncation_order) {
    if (truncation_order <= power) {
        throw Error(ErrorCode::OutOfRange, "monomial power must lie below the truncation order");
    }
    std::vector<Real> coeffs(static_cast<std::size_t>(truncation_order - power), Real(0));
    coeffs[0] = c;
    return LaurentSeries(power, std::move(coeffs));
}

LaurentSeries LaurentSeries::constant(const Real& c, int truncation_order) { return monomial(c, 0, truncation_order); }

LaurentSeries LaurentSeries::zero(int min_degree, int truncation_order) {
    return monomial(Real(0), min_degree, truncation_order);
}

int LaurentSeries::valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) return min_degree_ + static_cast<int>(i);
    }
    return truncation_order();
}

const Real& LaurentSeries::coefficient(int power) const {
    if (power < min_degree_ || power >= truncation_order()) {
        throw Error(ErrorCode::OutOfRange, "power " + std::to_string(power) + " outside retained range [" +
                                               std::to_string(min_degree_) + ", " + std::to_string(truncation_order()) + ")");
    }
    return coeffs_[static_cast<std::size_t>(power - min_degree_)];
}

Real LaurentSeries::coefficient_or_zero(int power) const {
    if (power < min_degree_) return Real(0);
    return coefficient(power);
}

Real LaurentSeries::evaluate(const Real& eps) const {
    // Horner in eps over the stored block, then the eps^min_degree prefactor.
    Real acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * eps + *it;
    return acc * boost::multiprecision::pow(eps, min_degree_);
}

LaurentSeries LaurentSeries::truncated(int order) const {
    if (order >= truncation_order()) return *this;
    if (order <= min_degree_) throw Error(ErrorCode::OutOfRange, "truncation would leave no coefficients");
    return LaurentSeries(min_degree_, std::vector<Real>(coeffs_.begin(), coeffs_.begin() + (order - min_degree_)));
}

LaurentSeries LaurentSeries::operator-() const {
    std::vector<Real> c = coeffs_;
    for (auto& x : c) x = -x;
    return LaurentSeries(min_degree_, std::move(c));
}

namespace {

template <class Op>
LaurentSeries combine(const LaurentSeries& x, const LaurentSeries& y, Op op) {
    const int lo = std::min(x.min_degree(), y.min_degree());
    const int hi = std::min(x.truncation_order(), y.truncation_order());
    if (hi <= lo) throw Error(ErrorCode::OutOfRange, "operands share no valid range");
    std::vector<Real> c;
    c.reserve(static_cast<std::size_t>(hi - lo));
    for (int k = lo; k < hi; ++k) c.push_back(op(x.coefficient_or_zero(k), y.coefficient_or_zero(k)));
    return LaurentSeries(lo, std::move(c));
}

}  // namespace

LaurentSeries series_add(const LaurentSeries& x, const LaurentSeries& y) {
    return combine(x, y, [](const Real& a, const Real& b) { return Real(a + b); });
}

LaurentSeries series_sub(const LaurentSeries& x, const LaurentSeries& y) {
    return combine(x, y, [](const Real& a, const Real& b) { return Real(a - b); });
}

LaurentSeries series_scale(const LaurentSeries& x, const Real& factor) {
    std::vector<Real> c = x.coefficients();
    for (auto& v : c) v *= factor;
    return LaurentSeries(x.min_degree(), std::move(c));
}

LaurentSeries series_mul(const LaurentSeries& x, const LaurentSeries& y) {
    const int vx = x.valuation();
    const int vy = y.valuation();
    const int tx = x.truncation_order();
    const int ty = y.truncation_order();
    // A vanishing operand is zero only up to its own truncation order.
    const int lo = x.min_degree() + y.min_degree();
    const int hi = std::min(tx + std::min(vy, ty), ty + std::min(vx, tx));
    if (hi <= lo) return LaurentSeries::zero(lo, lo + 1);
    std::vector<Real> c(static_cast<std::size_t>(hi - lo), Real(0));
    for (int i = vx; i < tx; ++i) {
        const Real& xi = x.coefficient(i);
        if (xi == 0) continue;
        for (int j = vy; j < ty && i + j < hi; ++j) {
            c[static_cast<std::size_t>(i + j - lo)] += xi * y.coefficient(j);
        }
    }
    return LaurentSeries(lo, std::move(c));
}

LaurentSeries series_div(const LaurentSeries& x, const LaurentSeries& y) {
    const int vy = y.valuation();
    const int ty = y.truncation_order();
    if (vy >= ty) throw Error(ErrorCode::DivisionByZeroSeries, "every retained coefficient of the divisor vanishes");
    const int vx = std::min(x.valuation(), x.truncation_order());
    const int tx = x.truncation_order();
    // Relative precision available after factoring out the leading powers.
    const int terms = std::min(tx - vx, ty - vy);
    const int lo = vx - vy;
    if (terms <= 0) return LaurentSeries::zero(lo, lo + 1);

    const Real& lead = y.coefficient(vy);
    std::vector<Real> q(static_cast<std::size_t>(terms), Real(0));
    for (int k = 0; k < terms; ++k) {
        Real r = x.coefficient_or_zero(vx + k);
        for (int j = 1; j <= k; ++j) {
            if (vy + j >= ty) break;
            r -= y.coefficient(vy + j) * q[static_cast<std::size_t>(k - j)];
        }
        q[static_cast<std::size_t>(k)] = r / lead;
    }
    return LaurentSeries(lo, std::move(q));
}

LaurentSeries series_differentiate(const LaurentSeries& x) {
    const int lo = x.min_degree();
    const auto& c = x.coefficients();
    std::vector<Real> d;
    d.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) d.push_back(c[i] * (lo + static_cast<int>(i)));
    return LaurentSeries(lo - 1, std::move(d));
}

LaurentSeries series_scale_arg(const LaurentSeries& x, const Real& c) {
    if (c == 0) throw Error(ErrorCode::ZeroScale, "argument scale must be nonzero");
    std::vector<Real> out = x.coefficients();
    Real factor = boost::multiprecision::pow(c, x.min_degree());
    for (auto& v : out) {
        v *= factor;
        factor *= c;
    }
    return LaurentSeries(x.min_degree(), std::move(out));
}

namespace {

// Taylor series of cosh (odd = false) or sinh (odd = true) known below `order`.
LaurentSeries hyperbolic_taylor(bool odd, int order) {
    std::vector<Real> c(static_cast<std::size_t>(order), Real(0));
    Real factorial = 1;
    for (int k = 0; k < order; ++k) {
        if (k > 0) factorial *= k;
        if ((k % 2 == 1) == odd) c[static_cast<std::size_t>(k)] = Real(1) / factorial;
    }
    return LaurentSeries(0, std::move(c));
}

}  // namespace

LaurentSeries series_coth(int truncation_order) {
    if (truncation_order < 1) throw Error(ErrorCode::OutOfRange, "coth series needs truncation order >= 1");
    // Quotient valuation is -1 with min(T_cosh, T_sinh - 1) relative terms.
    const LaurentSeries cosh_series = hyperbolic_taylor(false, truncation_order + 1);
    const LaurentSeries sinh_series = hyperbolic_taylor(true, truncation_order + 2);
    return series_div(cosh_series, sinh_series);
}

LaurentSeries series_exp(const LaurentSeries& x) {
    const int order = x.truncation_order();
    for (int k = x.min_degree(); k < std::min(0, order); ++k) {
        if (x.coefficient(k) != 0) {
            throw Error(ErrorCode::SingularComposition, "exp of a series with a nonzero eps^" + std::to_string(k) + " term");
        }
    }
    if (order <= 0) throw Error(ErrorCode::SingularComposition, "constant term of the exponent is not known");

    const Real c0 = x.coefficient_or_zero(0);
    std::vector<Real> rest(static_cast<std::size_t>(order), Real(0));
    for (int k = 1; k < order; ++k) rest[static_cast<std::size_t>(k)] = x.coefficient_or_zero(k);
    const LaurentSeries u(0, std::move(rest));  // valuation >= 1

    // sum_j u^j / j!, each u^j has valuation >= j.
    LaurentSeries sum = LaurentSeries::constant(Real(1), order);
    LaurentSeries term = LaurentSeries::constant(Real(1), order);
    for (int j = 1; j < order; ++j) {
        term = series_scale(series_mul(term, u), Real(1) / j);
        sum = series_add(sum, term);
    }
    return series_scale(sum, boost::multiprecision::exp(c0));
}

}  // namespace casimir
