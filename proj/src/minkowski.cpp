#include "casimir/minkowski.hpp"

#include "casimir/error.hpp"

namespace casimir {

namespace {

using boost::multiprecision::abs;

Real zero() { return Real(0); }

}  // namespace

int metric_diag(std::size_t mu) { return mu == axis::t ? -1 : 1; }

FourVector FourVector::operator+(const FourVector& o) const {
    FourVector r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = c[i] + o.c[i];
    return r;
}

FourVector FourVector::operator-(const FourVector& o) const {
    FourVector r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = c[i] - o.c[i];
    return r;
}

FourVector FourVector::operator*(const Real& s) const {
    FourVector r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = c[i] * s;
    return r;
}

FourVector z_hat() { return FourVector(zero(), zero(), zero(), Real(1)); }

Real mink_dot(const FourVector& u, const FourVector& v) {
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

SeparationVector::SeparationVector(FourVector components) : v_(std::move(components)) {
    if (v_[axis::z] != 0) {
        throw Error(ErrorCode::InvalidSeparation, "point splitting acts only in the (t, x, y) subspace; z must be 0");
    }
    const Real sq = mink_dot(v_, v_);
    if (sq <= Real("1e-30")) {
        throw Error(ErrorCode::LightlikeSeparation, "separation must be strictly spacelike, eps.eps = " + to_string(sq, 6));
    }
    length_ = boost::multiprecision::sqrt(sq);
}

SeparationVector SeparationVector::unit() const {
    SeparationVector u = *this;
    u.v_ = v_ * (Real(1) / length_);
    u.length_ = 1;
    return u;
}

SymTensor4::SymTensor4() {
    for (auto& x : c_) x = 0;
}

SymTensor4 SymTensor4::operator+(const SymTensor4& o) const {
    SymTensor4 r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

SymTensor4 SymTensor4::operator-(const SymTensor4& o) const {
    SymTensor4 r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

SymTensor4 SymTensor4::operator*(const Real& s) const {
    SymTensor4 r;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
}

Real SymTensor4::trace() const {
    Real sum = 0;
    for (std::size_t mu = 0; mu < 4; ++mu) sum += metric_diag(mu) * (*this)(mu, mu);
    return sum;
}

Real SymTensor4::contract(const SymTensor4& o) const {
    Real sum = 0;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = 0; nu < 4; ++nu) {
            sum += metric_diag(mu) * metric_diag(nu) * (*this)(mu, nu) * o(mu, nu);
        }
    }
    return sum;
}

Real SymTensor4::max_abs() const {
    Real m = 0;
    for (const auto& x : c_) m = std::max(m, Real(abs(x)));
    return m;
}

SymTensor4 SymTensor4::metric() {
    SymTensor4 g;
    for (std::size_t mu = 0; mu < 4; ++mu) g(mu, mu) = metric_diag(mu);
    return g;
}

SymTensor4 SymTensor4::outer(const FourVector& u, const FourVector& v) {
    SymTensor4 r;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = mu; nu < 4; ++nu) r(mu, nu) = (u[mu] * v[nu] + u[nu] * v[mu]) / 2;
    }
    return r;
}

Real max_abs_difference(const SymTensor4& a, const SymTensor4& b) { return (a - b).max_abs(); }

LorentzTransform::LorentzTransform() {
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) m_[i][j] = (i == j) ? 1 : 0;
    }
}

FourVector LorentzTransform::apply(const FourVector& v) const {
    FourVector r;
    for (std::size_t i = 0; i < 4; ++i) {
        Real sum = 0;
        for (std::size_t j = 0; j < 4; ++j) sum += m_[i][j] * v[j];
        r[i] = sum;
    }
    return r;
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& o) const {
    Matrix r;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Real sum = 0;
            for (std::size_t k = 0; k < 4; ++k) sum += m_[i][k] * o.m_[k][j];
            r[i][j] = sum;
        }
    }
    return LorentzTransform(std::move(r));
}

LorentzTransform LorentzTransform::inverse() const {
    Matrix r;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) r[i][j] = metric_diag(i) * m_[j][i] * metric_diag(j);
    }
    return LorentzTransform(std::move(r));
}

Real LorentzTransform::metric_defect() const {
    Real worst = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            Real sum = 0;
            for (std::size_t k = 0; k < 4; ++k) sum += m_[k][i] * metric_diag(k) * m_[k][j];
            const Real expected = (i == j) ? metric_diag(i) : 0;
            worst = std::max(worst, Real(abs(sum - expected)));
        }
    }
    return worst;
}

LorentzTransform boost(BoostPlane plane, const Real& rapidity) {
    LorentzTransform::Matrix m = LorentzTransform().matrix();
    const std::size_t s = plane == BoostPlane::tx ? axis::x : axis::y;
    const Real ch = boost::multiprecision::cosh(rapidity);
    const Real sh = boost::multiprecision::sinh(rapidity);
    m[axis::t][axis::t] = ch;
    m[axis::t][s] = sh;
    m[s][axis::t] = sh;
    m[s][s] = ch;
    return LorentzTransform(std::move(m));
}

LorentzTransform rotation_xy(const Real& angle) {
    LorentzTransform::Matrix m = LorentzTransform().matrix();
    const Real c = boost::multiprecision::cos(angle);
    const Real s = boost::multiprecision::sin(angle);
    m[axis::x][axis::x] = c;
    m[axis::x][axis::y] = -s;
    m[axis::y][axis::x] = s;
    m[axis::y][axis::y] = c;
    return LorentzTransform(std::move(m));
}

SymTensor4 transform_tensor(const LorentzTransform& l, const SymTensor4& t) {
    // (l T)^{mu b} first, then contract the second index.
    std::array<std::array<Real, 4>, 4> lt;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t b = 0; b < 4; ++b) {
            Real sum = 0;
            for (std::size_t a = 0; a < 4; ++a) sum += l(mu, a) * t(a, b);
            lt[mu][b] = sum;
        }
    }
    SymTensor4 r;
    for (std::size_t mu = 0; mu < 4; ++mu) {
        for (std::size_t nu = mu; nu < 4; ++nu) {
            Real sum = 0;
            for (std::size_t b = 0; b < 4; ++b) sum += lt[mu][b] * l(nu, b);
            r(mu, nu) = sum;
        }
    }
    return r;
}

Real max_abs_difference(const LorentzTransform& a, const LorentzTransform& b) {
    Real worst = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, Real(abs(a(i, j) - b(i, j))));
    }
    return worst;
}

}  // namespace casimir
