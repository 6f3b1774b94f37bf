#include "mourre/types.hpp"

#include <algorithm>
#include <cmath>

namespace mourre {

const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::NotGapless: return "NotGapless";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::ConicalPoint: return "ConicalPoint";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::MarginTooLarge: return "MarginTooLarge";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::EmptyProjector: return "EmptyProjector";
    case ErrorCode::BadAnnulus: return "BadAnnulus";
    case ErrorCode::NotAlternating: return "NotAlternatingAdmissible";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NoEdgeState: return "NoEdgeState";
    case ErrorCode::Singular: return "SingularPivot";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

double Mat2::norm() const
{
    // sigma_max^2 = (F + sqrt(F^2 - 4|det|^2)) / 2
    double f = std::norm(m[0][0]) + std::norm(m[0][1]) + std::norm(m[1][0]) + std::norm(m[1][1]);
    double d = std::norm(det());
    double disc = std::max(0.0, f * f - 4.0 * d);
    return std::sqrt(0.5 * (f + std::sqrt(disc)));
}

double Mat2::max_abs() const
{
    return std::max({std::abs(m[0][0]), std::abs(m[0][1]), std::abs(m[1][0]), std::abs(m[1][1])});
}

Mat2& Mat2::operator+=(const Mat2& o)
{
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] += o.m[i][j];
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o)
{
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] -= o.m[i][j];
    return *this;
}

Mat2& Mat2::operator*=(cplx s)
{
    for (auto& row : m)
        for (auto& v : row) v *= s;
    return *this;
}

Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
Mat2 operator*(cplx s, Mat2 a) { return a *= s; }
Mat2 operator*(Mat2 a, cplx s) { return a *= s; }

Mat2 operator*(const Mat2& a, const Mat2& b)
{
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return r;
}

CMatrix CMatrix::identity(std::size_t n)
{
    CMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

CMatrix CMatrix::adjoint() const
{
    CMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

double CMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::frobenius() const
{
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

CMatrix operator*(const CMatrix& a, const CMatrix& b)
{
    if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
    CMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            const cplx* brow = b.data() + k * b.cols();
            cplx* rrow = r.data() + i * r.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) rrow[j] += aik * brow[j];
        }
    return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::InvalidArgument, "shape mismatch");
    CMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) r.data()[i] = a.data()[i] - b.data()[i];
    return r;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::InvalidArgument, "shape mismatch");
    CMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) r.data()[i] = a.data()[i] + b.data()[i];
    return r;
}

}  // namespace mourre
