#ifndef SEMSANS_SPIN_OP_HPP
#define SEMSANS_SPIN_OP_HPP

#include <array>
#include <complex>

namespace semsans {

using cplx = std::complex<double>;

/// Complex 2x2 operator on the spin subspace, row-major.
struct SpinOperator {
    std::array<cplx, 4> m{};  // [ m00 m01 ; m10 m11 ]

    cplx& operator()(int r, int col) { return m[2*r + col]; }
    const cplx& operator()(int r, int col) const { return m[2*r + col]; }

    static SpinOperator identity();
    static SpinOperator zero();
    static SpinOperator sigma_x();
    static SpinOperator sigma_y();
    static SpinOperator sigma_z();
    /// n_x sigma_x + n_y sigma_y + n_z sigma_z (n need not be normalized here).
    static SpinOperator sigma_n(double nx, double ny, double nz);

    SpinOperator dagger() const;
    SpinOperator operator*(const SpinOperator& o) const;
    SpinOperator operator+(const SpinOperator& o) const;
    SpinOperator operator-(const SpinOperator& o) const;
    SpinOperator operator*(cplx s) const;

    /// max entrywise |this - o|
    double max_abs_diff(const SpinOperator& o) const;
};

using Spinor = std::array<cplx, 2>;

Spinor operator*(const SpinOperator& U, const Spinor& psi);
cplx inner(const Spinor& a, const Spinor& b);
double norm2(const Spinor& psi);

/// Bloch spinor cos(theta/2)|up_z> + e^{i phi} sin(theta/2)|down_z>.
Spinor bloch_spinor(double theta, double phi);

/// (<sx>, <sy>, <sz>) of a (not necessarily normalized) spinor.
std::array<double, 3> bloch_vector(const Spinor& psi);

/// max entrywise |U^dag U - 1|.
double unitarity_check(const SpinOperator& U);

}  // namespace semsans

#endif
