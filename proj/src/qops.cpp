#include "oqw/qops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace oqw {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

void require_walk_dim(const CMatrix& rho, int n, const char* what) {
  const auto dim = static_cast<std::size_t>(2 * n);
  if (n < 1 || rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " operator for n=" + std::to_string(n));
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("CMatrix: " + std::to_string(data_.size()) + " entries for a " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
  }
}

CMatrix CMatrix::zeros(std::size_t rows, std::size_t cols) {
  return CMatrix(rows, cols, std::vector<cplx>(rows * cols));
}

CMatrix CMatrix::identity(std::size_t dim) {
  std::vector<cplx> d(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) d[i * dim + i] = 1.0;
  return CMatrix(dim, dim, std::move(d));
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
  const auto dim = diag.size();
  std::vector<cplx> d(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) d[i * dim + i] = diag[i];
  return CMatrix(dim, dim, std::move(d));
}

CMatrix CMatrix::column(std::span<const cplx> v) {
  return CMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

CMatrix CMatrix::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  std::vector<cplx> d(ket.size() * bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) d[i * bra.size() + j] = ket[i] * std::conj(bra[j]);
  return CMatrix(ket.size(), bra.size(), std::move(d));
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "operator+");
  std::vector<cplx> d(a.data_.size());
  std::transform(a.data_.begin(), a.data_.end(), b.data_.begin(), d.begin(), std::plus<>{});
  return CMatrix(a.rows_, a.cols_, std::move(d));
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "operator-");
  std::vector<cplx> d(a.data_.size());
  std::transform(a.data_.begin(), a.data_.end(), b.data_.begin(), d.begin(), std::minus<>{});
  return CMatrix(a.rows_, a.cols_, std::move(d));
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("operator*: inner dimensions " + std::to_string(a.cols_) + " and " +
                         std::to_string(b.rows_) + " differ");
  }
  std::vector<cplx> d(a.rows_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a.data_[i * a.cols_ + k];
      if (aik == cplx{}) continue;
      const cplx* brow = &b.data_[k * b.cols_];
      cplx* out = &d[i * b.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) out[j] += aik * brow[j];
    }
  }
  return CMatrix(a.rows_, b.cols_, std::move(d));
}

CMatrix operator*(cplx s, const CMatrix& a) {
  std::vector<cplx> d(a.data_);
  for (auto& v : d) v *= s;
  return CMatrix(a.rows_, a.cols_, std::move(d));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const auto rows = a.rows() * b.rows();
  const auto cols = a.cols() * b.cols();
  std::vector<cplx> d(rows * cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          d[(i * b.rows() + k) * cols + (j * b.cols() + l)] = aij * b(k, l);
    }
  return CMatrix(rows, cols, std::move(d));
}

CMatrix dagger(const CMatrix& a) {
  std::vector<cplx> d(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d[j * a.rows() + i] = std::conj(a(i, j));
  return CMatrix(a.cols(), a.rows(), std::move(d));
}

CMatrix transpose(const CMatrix& a) {
  std::vector<cplx> d(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d[j * a.rows() + i] = a(i, j);
  return CMatrix(a.cols(), a.rows(), std::move(d));
}

std::vector<cplx> apply(const CMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) {
    throw DimensionError("apply: matrix has " + std::to_string(a.cols()) + " columns, vector has " +
                         std::to_string(v.size()) + " entries");
  }
  std::vector<cplx> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

cplx trace(const CMatrix& a) {
  if (!a.square()) throw DimensionError("trace: matrix is not square");
  cplx t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

cplx hs_inner(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  cplx acc{};
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) acc += std::conj(ea[i]) * eb[i];
  return acc;
}

double frobenius_norm(const CMatrix& a) { return std::sqrt(hs_inner(a, a).real()); }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const auto& v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

double hermiticity_defect(const CMatrix& h) {
  if (!h.square()) throw DimensionError("hermiticity_defect: matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j) m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
  return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionError("inner: vector lengths differ");
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const cplx> v) { return std::sqrt(inner(v, v).real()); }

CMatrix partial_trace_position(const CMatrix& rho, int n) {
  require_walk_dim(rho, n, "partial_trace_position");
  std::vector<cplx> d(4);
  for (int x = 0; x < n; ++x)
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t cp = 0; cp < 2; ++cp) d[c * 2 + cp] += rho(2 * x + c, 2 * x + cp);
  return CMatrix(2, 2, std::move(d));
}

CMatrix partial_trace_coin(const CMatrix& rho, int n) {
  require_walk_dim(rho, n, "partial_trace_coin");
  const auto un = static_cast<std::size_t>(n);
  std::vector<cplx> d(un * un);
  for (std::size_t x = 0; x < un; ++x)
    for (std::size_t y = 0; y < un; ++y) d[x * un + y] = rho(2 * x, 2 * y) + rho(2 * x + 1, 2 * y + 1);
  return CMatrix(un, un, std::move(d));
}

CMatrix partial_transpose_coin(const CMatrix& rho, int n) {
  require_walk_dim(rho, n, "partial_transpose_coin");
  const auto dim = rho.rows();
  std::vector<cplx> d(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      // (x,c),(y,c') -> (x,c'),(y,c)
      const std::size_t src_r = (i & ~std::size_t{1}) | (j & 1);
      const std::size_t src_c = (j & ~std::size_t{1}) | (i & 1);
      d[i * dim + j] = rho(src_r, src_c);
    }
  return CMatrix(dim, dim, std::move(d));
}

EigenSystem hermitian_eigs(const CMatrix& h) {
  if (!h.square()) throw DimensionError("hermitian_eigs: matrix is not square");
  const double defect = hermiticity_defect(h);
  if (defect > Tolerances::hermiticity) {
    throw std::invalid_argument("hermitian_eigs: input is not Hermitian (max |h - h^dagger| = " +
                                std::to_string(defect) + ")");
  }
  const std::size_t dim = h.rows();
  std::vector<cplx> a(h.entries().begin(), h.entries().end());
  std::vector<cplx> v(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i * dim + i] = 1.0;
    a[i * dim + i] = a[i * dim + i].real();
  }
  auto A = [&](std::size_t r, std::size_t c) -> cplx& { return a[r * dim + c]; };
  auto Vm = [&](std::size_t r, std::size_t c) -> cplx& { return v[r * dim + c]; };

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (i != j) s += std::norm(A(i, j));
    return std::sqrt(s);
  };
  const double scale = std::max(1.0, frobenius_norm(h));
  constexpr int max_sweeps = 100;

  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() >= Tolerances::jacobi_off * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const cplx apq = A(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx e = apq / mag;
        const double theta = (A(q, q).real() - A(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Rotation G: G_pp = c, G_pq = s e, G_qp = -s e*, G_qq = c; A <- G† A G.
        for (std::size_t k = 0; k < dim; ++k) {
          const cplx akp = A(k, p);
          const cplx akq = A(k, q);
          A(k, p) = c * akp - s * std::conj(e) * akq;
          A(k, q) = s * e * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const cplx apk = A(p, k);
          const cplx aqk = A(q, k);
          A(p, k) = c * apk - s * e * aqk;
          A(q, k) = s * std::conj(e) * apk + c * aqk;
        }
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
        for (std::size_t k = 0; k < dim; ++k) {
          const cplx vkp = Vm(k, p);
          const cplx vkq = Vm(k, q);
          Vm(k, p) = c * vkp - s * std::conj(e) * vkq;
          Vm(k, q) = s * e * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == max_sweeps) throw std::runtime_error("hermitian_eigs: Jacobi iteration did not converge");

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return A(i, i).real() < A(j, j).real(); });

  EigenSystem out;
  out.values.reserve(dim);
  std::vector<cplx> vecs(dim * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    out.values.push_back(A(order[j], order[j]).real());
    for (std::size_t k = 0; k < dim; ++k) vecs[k * dim + j] = Vm(k, order[j]);
  }
  out.vectors = CMatrix(dim, dim, std::move(vecs));
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) { return hermitian_eigs(h).values; }

double trace_distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "trace_distance");
  double s = 0.0;
  for (double ev : hermitian_eigenvalues(a - b)) s += std::abs(ev);
  return 0.5 * s;
}

namespace pauli {
CMatrix x() { return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
CMatrix y() { return CMatrix(2, 2, {0.0, cplx{0, -1}, cplx{0, 1}, 0.0}); }
CMatrix z() { return CMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

}  // namespace oqw
