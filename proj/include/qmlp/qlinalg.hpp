#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qmlp/errors.hpp"
#include "qmlp/quaternion.hpp"

namespace qmlp {

/// Dense quaternion vector with length fixed at construction.
template <std::floating_point T = double>
class QVector {
 public:
  using value_type = Quaternion<T>;

  QVector() = default;
  explicit QVector(std::size_t len, value_type fill = {}) : elems_(len, fill) {}
  QVector(std::initializer_list<value_type> init) : elems_(init) {}
  explicit QVector(std::vector<value_type> elems) : elems_(std::move(elems)) {}

  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }

  value_type& operator[](std::size_t k) { return elems_[k]; }
  const value_type& operator[](std::size_t k) const { return elems_[k]; }
  value_type& at(std::size_t k) { return elems_.at(k); }
  const value_type& at(std::size_t k) const { return elems_.at(k); }

  auto begin() { return elems_.begin(); }
  auto end() { return elems_.end(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  std::span<const value_type> view() const noexcept { return elems_; }

  friend bool operator==(const QVector&, const QVector&) = default;

 private:
  std::vector<value_type> elems_;
};

/// Row-major dense quaternion matrix.
template <std::floating_point T = double>
class QMatrix {
 public:
  using value_type = Quaternion<T>;

  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols, value_type fill = {})
      : rows_(rows), cols_(cols), elems_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return elems_.size(); }

  value_type& operator()(std::size_t r, std::size_t c) { return elems_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return elems_[r * cols_ + c]; }

  QVector<T> column(std::size_t c) const {
    QVector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  auto begin() { return elems_.begin(); }
  auto end() { return elems_.end(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> elems_;
};

using QVec = QVector<double>;
using QMat = QMatrix<double>;

template <typename T>
QVector<T> split_product_vec(const QVector<T>& x, const QVector<T>& y) {
  detail::require_dims(x.size() == y.size(), "split_product_vec: length mismatch");
  QVector<T> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = split_product(x[k], y[k]);
  return out;
}

template <typename T>
QVector<T> split_product_vec(const QVector<T>& x, const Quaternion<T>& s) {
  QVector<T> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = split_product(x[k], s);
  return out;
}

/// w^H u = Σ_k conj(w_k)·u_k, accumulated left to right.
template <typename T>
Quaternion<T> hermitian_dot(const QVector<T>& w, const QVector<T>& u) {
  detail::require_dims(w.size() == u.size(), "hermitian_dot: length mismatch");
  Quaternion<T> acc{};
  for (std::size_t k = 0; k < w.size(); ++k) acc += hamilton_mul(conj(w[k]), u[k]);
  return acc;
}

/// W^H x: entry i is the Hermitian dot of column i with x.
template <typename T>
QVector<T> matrix_hermitian_apply(const QMatrix<T>& W, const QVector<T>& x) {
  detail::require_dims(W.rows() == x.size(), "matrix_hermitian_apply: W.rows != x.len");
  QVector<T> out(W.cols());
  for (std::size_t col = 0; col < W.cols(); ++col) {
    Quaternion<T> acc{};
    for (std::size_t r = 0; r < W.rows(); ++r) acc += hamilton_mul(conj(W(r, col)), x[r]);
    out[col] = acc;
  }
  return out;
}

template <typename T>
QVector<T> operator+(const QVector<T>& x, const QVector<T>& y) {
  detail::require_dims(x.size() == y.size(), "vector add: length mismatch");
  QVector<T> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + y[k];
  return out;
}

/// x += s·y
template <typename T>
void axpy(T s, const QVector<T>& y, QVector<T>& x) {
  detail::require_dims(x.size() == y.size(), "axpy: length mismatch");
  for (std::size_t k = 0; k < x.size(); ++k) x[k] += s * y[k];
}

template <typename T>
void axpy(T s, const QMatrix<T>& y, QMatrix<T>& x) {
  detail::require_dims(x.rows() == y.rows() && x.cols() == y.cols(), "axpy: shape mismatch");
  auto src = y.begin();
  for (auto& el : x) el += s * *src++;
}

template <typename T>
bool is_finite(const QVector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& q) { return is_finite(q); });
}

template <typename T>
bool is_finite(const QMatrix<T>& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& q) { return is_finite(q); });
}

}  // namespace qmlp
