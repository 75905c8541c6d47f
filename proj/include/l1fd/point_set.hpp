#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace l1fd {

/// Dense set of n points in R^d under the l1 (Manhattan) norm.
/// Row-major storage; rows are points.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t n, std::size_t d) : n_(n), d_(d), data_(n * d, 0.0) {}
  PointSet(std::size_t n, std::size_t d, std::vector<double> data);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  bool empty() const { return n_ == 0; }

  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * d_, d_};
  }
  std::span<double> point(std::size_t i) {
    return {data_.data() + i * d_, d_};
  }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double distance(std::size_t i, std::size_t j) const;

  void push_back(std::span<const double> p);

  /// Text format: "l1fd-points v1\n<d> <n>\n" then n lines of d floats
  /// with 17 significant digits.
  void write_text(std::ostream& out) const;
  static PointSet read_text(std::istream& in);
  void save_text(const std::string& path) const;
  static PointSet load_text(const std::string& path);

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

double l1_distance(std::span<const double> a, std::span<const double> b);
double l1_norm(std::span<const double> a);

}  // namespace l1fd
