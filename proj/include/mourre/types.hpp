#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mourre {

using cplx = std::complex<double>;

enum class ErrorCode {
    ZeroCoupling = 1,
    NotGapless,
    Domain,
    ConicalPoint,
    WindowTooSmall,
    WindowMismatch,
    MarginTooLarge,
    NotHermitian,
    EmptyProjector,
    BadAnnulus,
    NotAlternating,
    AllZero,
    NoEdgeState,
    Singular,
    NoConvergence,
    InvalidArgument,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// 2x2 complex block, row-major.
struct Mat2 {
    cplx m[2][2]{};

    Mat2() = default;
    Mat2(cplx a, cplx b, cplx c, cplx d) { m[0][0] = a; m[0][1] = b; m[1][0] = c; m[1][1] = d; }

    static Mat2 identity(double s = 1.0) { return {s, 0.0, 0.0, s}; }
    static Mat2 diag(cplx a, cplx d) { return {a, 0.0, 0.0, d}; }

    cplx& operator()(int i, int j) { return m[i][j]; }
    const cplx& operator()(int i, int j) const { return m[i][j]; }

    Mat2 adjoint() const { return {std::conj(m[0][0]), std::conj(m[1][0]), std::conj(m[0][1]), std::conj(m[1][1])}; }
    cplx trace() const { return m[0][0] + m[1][1]; }
    cplx det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    // largest singular value
    double norm() const;
    double max_abs() const;

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(cplx s);
};

Mat2 operator+(Mat2 a, const Mat2& b);
Mat2 operator-(Mat2 a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, Mat2 a);
Mat2 operator*(Mat2 a, cplx s);

// Dense complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    static CMatrix identity(std::size_t n);
    CMatrix adjoint() const;
    double max_abs() const;
    double frobenius() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<cplx> a_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);

}  // namespace mourre
