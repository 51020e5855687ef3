#pragma once

// Vectors and tensors in 3+1 Minkowski space with signature (-,+,+,+) over
// coordinates (t, x, y, z). The plates are normal to z; the (t, x, y)
// subspace carries the unbroken O(2,1) symmetry.

#include "casimir/real.hpp"

#include <array>
#include <cstddef>
#include <utility>

namespace casimir {

namespace axis {
inline constexpr std::size_t t = 0;
inline constexpr std::size_t x = 1;
inline constexpr std::size_t y = 2;
inline constexpr std::size_t z = 3;
}  // namespace axis

/// Diagonal metric entry g_{mu mu} (equal to g^{mu mu}).
int metric_diag(std::size_t mu);

struct FourVector {
    std::array<Real, 4> c{Real(0), Real(0), Real(0), Real(0)};

    FourVector() = default;
    FourVector(Real t, Real x, Real y, Real z) : c{std::move(t), std::move(x), std::move(y), std::move(z)} {}

    const Real& operator[](std::size_t i) const { return c[i]; }
    Real& operator[](std::size_t i) { return c[i]; }

    FourVector operator+(const FourVector& o) const;
    FourVector operator-(const FourVector& o) const;
    FourVector operator*(const Real& s) const;
};

/// Unit normal to the plates, (0, 0, 0, 1).
FourVector z_hat();

/// u^mu g_{mu nu} v^nu.
Real mink_dot(const FourVector& u, const FourVector& v);

/// Point-splitting vector: lives in the (t, x, y) subspace and is strictly
/// spacelike. The invariant length s = sqrt(eps . eps) is cached.
class SeparationVector {
public:
    /// Throws InvalidSeparation if z != 0, LightlikeSeparation if eps.eps <= 1e-30.
    explicit SeparationVector(FourVector components);

    const FourVector& vector() const { return v_; }
    const Real& length() const { return length_; }
    Real length_squared() const { return length_ * length_; }
    /// eps / |eps|; unit spacelike.
    SeparationVector unit() const;

private:
    FourVector v_;
    Real length_;
};

/// Symmetric rank-2 tensor T^{mu nu} with upper indices; 10 stored components.
class SymTensor4 {
public:
    SymTensor4();

    const Real& operator()(std::size_t mu, std::size_t nu) const { return c_[index(mu, nu)]; }
    Real& operator()(std::size_t mu, std::size_t nu) { return c_[index(mu, nu)]; }

    SymTensor4 operator+(const SymTensor4& o) const;
    SymTensor4 operator-(const SymTensor4& o) const;
    SymTensor4 operator*(const Real& s) const;

    /// g_{mu nu} T^{mu nu}.
    Real trace() const;
    /// Full contraction g g A B, i.e. A^{mu nu} B_{mu nu}.
    Real contract(const SymTensor4& o) const;
    Real max_abs() const;

    static SymTensor4 metric();
    /// u^mu v^nu symmetrized: (u v + v u) / 2.
    static SymTensor4 outer(const FourVector& u, const FourVector& v);

private:
    static std::size_t index(std::size_t mu, std::size_t nu) {
        if (mu > nu) std::swap(mu, nu);
        return mu * 4 - mu * (mu + 1) / 2 + nu;
    }
    std::array<Real, 10> c_;
};

Real max_abs_difference(const SymTensor4& a, const SymTensor4& b);

enum class BoostPlane { tx, ty };

/// Matrix l^mu_nu acting on contravariant vectors. Transforms built by this
/// module are block O(2,1): identity on z.
class LorentzTransform {
public:
    using Matrix = std::array<std::array<Real, 4>, 4>;

    LorentzTransform();  // identity
    explicit LorentzTransform(Matrix m) : m_(std::move(m)) {}

    const Real& operator()(std::size_t row, std::size_t col) const { return m_[row][col]; }
    const Matrix& matrix() const { return m_; }

    FourVector apply(const FourVector& v) const;
    LorentzTransform operator*(const LorentzTransform& o) const;
    /// g l^T g, the inverse of any metric-preserving l.
    LorentzTransform inverse() const;

    /// max |(l^T g l - g)_{mu nu}|.
    Real metric_defect() const;

private:
    Matrix m_;
};

LorentzTransform boost(BoostPlane plane, const Real& rapidity);
LorentzTransform rotation_xy(const Real& angle);

/// l^mu_a l^nu_b T^{ab}.
SymTensor4 transform_tensor(const LorentzTransform& l, const SymTensor4& t);

Real max_abs_difference(const LorentzTransform& a, const LorentzTransform& b);

}  // namespace casimir
