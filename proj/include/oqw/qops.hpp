#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqw {

using cplx = std::complex<double>;

/// Numerical tolerances shared by every module.
struct Tolerances {
  static constexpr double algebraic = 1e-10;   ///< exact identities (unitarity, residuals)
  static constexpr double dynamics = 1e-8;     ///< comparisons after many channel steps
  static constexpr double hermiticity = 1e-10;
  static constexpr double trace = 1e-10;
  static constexpr double positivity = 1e-9;
  static constexpr double phase_zero = 1e-12;  ///< regime classification of phases
  static constexpr double jacobi_off = 1e-12;  ///< Jacobi off-diagonal Frobenius norm
  static constexpr double ppt_threshold = -1e-10;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense complex matrix stored row-major. Values are immutable once built.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static CMatrix zeros(std::size_t rows, std::size_t cols);
  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const cplx> diag);
  /// Column vector (dim x 1).
  static CMatrix column(std::span<const cplx> v);
  /// |ket><bra|
  static CMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const cplx> entries() const noexcept { return data_; }

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(cplx s, const CMatrix& a);
  friend CMatrix operator*(const CMatrix& a, cplx s) { return s * a; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Position/coin label of a basis vector |x> ⊗ |c>, x in 1..n.
struct BasisIndex {
  int x = 1;
  int c = 0;

  constexpr std::size_t flat() const noexcept { return static_cast<std::size_t>(2 * (x - 1) + c); }
  static constexpr BasisIndex from_flat(std::size_t i) noexcept {
    return {static_cast<int>(i / 2) + 1, static_cast<int>(i % 2)};
  }
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
std::vector<cplx> apply(const CMatrix& a, std::span<const cplx> v);

cplx trace(const CMatrix& a);
/// Tr(a† b)
cplx hs_inner(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs(const CMatrix& a);
/// max |h - h†| entry
double hermiticity_defect(const CMatrix& h);

cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> v);

/// Trace over position of a 2n x 2n operator; returns the 2x2 coin block.
CMatrix partial_trace_position(const CMatrix& rho, int n);
/// Trace over coin of a 2n x 2n operator; returns the n x n position block.
CMatrix partial_trace_coin(const CMatrix& rho, int n);
/// Transpose of every 2x2 coin block.
CMatrix partial_transpose_coin(const CMatrix& rho, int n);

struct EigenSystem {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< column j pairs with values[j]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
/// Throws std::invalid_argument when the input is not Hermitian.
EigenSystem hermitian_eigs(const CMatrix& h);
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

/// (1/2) Σ |eig(a - b)|
double trace_distance(const CMatrix& a, const CMatrix& b);

namespace pauli {
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

}  // namespace oqw
