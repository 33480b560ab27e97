#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace synthflow::numcore {

using Index = Eigen::Index;
using Shape = std::vector<Index>;

enum class DType : std::uint8_t { float32, float64 };

std::string to_string(DType dtype);
DType dtype_from_string(const std::string& name);

template <typename Scalar>
constexpr DType dtype_of();
template <>
constexpr DType dtype_of<float>() { return DType::float32; }
template <>
constexpr DType dtype_of<double>() { return DType::float64; }

std::string shape_str(const Shape& shape);
Index numel(const Shape& shape);

// Raised by any op whose inputs do not satisfy its shape contract.
class ShapeError : public std::invalid_argument {
 public:
  ShapeError(const std::string& op, const std::vector<Shape>& shapes, const std::string& detail = {});
  const std::string& op() const { return op_; }

 private:
  std::string op_;
};

// Dense row-major tensor. Storage is a flat Eigen vector; 2-D views map the
// first axis to rows and all remaining axes to columns.
template <typename Scalar>
class Tensor {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using MatrixMap = Eigen::Map<RowMatrix>;
  using ConstMatrixMap = Eigen::Map<const RowMatrix>;

  Tensor() = default;
  explicit Tensor(Shape shape) : shape_(std::move(shape)), data_(Vector::Zero(numel(shape_))) {}
  Tensor(Shape shape, Vector data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != numel(shape_)) throw ShapeError("tensor", {shape_}, "data length does not match shape");
  }

  static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
  static Tensor constant(Shape shape, Scalar value) {
    Tensor t(std::move(shape));
    t.data_.setConstant(value);
    return t;
  }
  static Tensor scalar(Scalar value) { return constant({1}, value); }
  static Tensor from_matrix(const RowMatrix& m) {
    Tensor t({m.rows(), m.cols()});
    t.matrix() = m;
    return t;
  }
  static Tensor from_vector(const Vector& v) { return Tensor({v.size()}, v); }
  static Tensor from_values(Shape shape, std::initializer_list<Scalar> values) {
    Vector v(static_cast<Index>(values.size()));
    Index i = 0;
    for (Scalar x : values) v[i++] = x;
    return Tensor(std::move(shape), std::move(v));
  }

  const Shape& shape() const { return shape_; }
  Index rank() const { return static_cast<Index>(shape_.size()); }
  Index dim(Index axis) const { return shape_.at(static_cast<std::size_t>(axis)); }
  Index size() const { return data_.size(); }
  bool empty() const { return shape_.empty(); }

  Vector& data() { return data_; }
  const Vector& data() const { return data_; }
  Scalar* raw() { return data_.data(); }
  const Scalar* raw() const { return data_.data(); }
  Scalar& operator[](Index i) { return data_[i]; }
  Scalar operator[](Index i) const { return data_[i]; }

  Index rows() const { return shape_.empty() ? 0 : shape_[0]; }
  Index cols() const { return shape_.empty() || shape_[0] == 0 ? 0 : data_.size() / shape_[0]; }
  MatrixMap matrix() { return MatrixMap(data_.data(), rows(), cols()); }
  ConstMatrixMap matrix() const { return ConstMatrixMap(data_.data(), rows(), cols()); }

  Scalar item() const {
    if (data_.size() != 1) throw ShapeError("item", {shape_}, "tensor is not a scalar");
    return data_[0];
  }

  Tensor reshaped(Shape shape) const {
    if (numel(shape) != size()) throw ShapeError("reshape", {shape_, shape});
    return Tensor(std::move(shape), data_);
  }

  template <typename Other>
  Tensor<Other> cast() const {
    return Tensor<Other>(shape_, data_.template cast<Other>());
  }

  bool all_finite() const { return data_.allFinite(); }

  static constexpr DType dtype() { return dtype_of<Scalar>(); }

 private:
  Shape shape_;
  Vector data_;
};

}  // namespace synthflow::numcore
