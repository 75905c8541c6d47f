#include "l1fd/point_set.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace l1fd {

PointSet::PointSet(std::size_t n, std::size_t d, std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {
  if (data_.size() != n_ * d_) {
    throw std::invalid_argument("PointSet: data size != n*d");
  }
}

double PointSet::distance(std::size_t i, std::size_t j) const {
  return l1_distance(point(i), point(j));
}

void PointSet::push_back(std::span<const double> p) {
  if (n_ == 0 && d_ == 0) d_ = p.size();
  if (p.size() != d_) throw std::invalid_argument("PointSet: dim mismatch");
  data_.insert(data_.end(), p.begin(), p.end());
  ++n_;
}

void PointSet::write_text(std::ostream& out) const {
  out << "l1fd-points v1\n" << d_ << ' ' << n_ << '\n';
  char buf[40];
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", data_[i * d_ + j]);
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

PointSet PointSet::read_text(std::istream& in) {
  std::string header;
  std::getline(in, header);
  if (header != "l1fd-points v1") {
    throw std::runtime_error("PointSet: bad header '" + header + "'");
  }
  std::size_t d = 0, n = 0;
  in >> d >> n;
  if (!in) throw std::runtime_error("PointSet: bad dimensions line");
  std::vector<double> data;
  data.reserve(n * d);
  for (std::size_t i = 0; i < n * d; ++i) {
    double v;
    in >> v;
    if (!in) throw std::runtime_error("PointSet: truncated data");
    data.push_back(v);
  }
  return PointSet(n, d, std::move(data));
}

void PointSet::save_text(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("PointSet: cannot open " + path);
  write_text(out);
}

PointSet PointSet::load_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("PointSet: cannot open " + path);
  return read_text(in);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l1_distance: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

double l1_norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

}  // namespace l1fd
