#include "depcov/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "depcov/errors.hpp"

namespace depcov {

namespace {

void require_finite(std::span<const double> values, const char* which) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DataError(std::string("non-finite coordinate in ") + which);
    }
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool is_header(const std::vector<std::string_view>& fields, std::size_t x_dim,
               std::size_t y_dim) {
  if (fields.size() != x_dim + y_dim) return false;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const bool is_x = i < x_dim;
    const std::size_t index = is_x ? i + 1 : i - x_dim + 1;
    const std::string expected = (is_x ? "x" : "y") + std::to_string(index);
    if (fields[i] != expected) return false;
  }
  return true;
}

}  // namespace

PairedSample::PairedSample(std::size_t x_dim, std::size_t y_dim, std::vector<double> x,
                           std::vector<double> y)
    : x_dim_(x_dim), y_dim_(y_dim), n_(0), x_(std::move(x)), y_(std::move(y)) {
  if (x_dim_ == 0 || y_dim_ == 0) throw ConfigError("dimensions must be positive");
  if (x_.size() % x_dim_ != 0 || y_.size() % y_dim_ != 0) {
    throw ConfigError("coordinate count is not a multiple of the dimension");
  }
  n_ = x_.size() / x_dim_;
  if (y_.size() / y_dim_ != n_) throw ConfigError("X and Y have different lengths");
  if (n_ == 0) throw DataError("empty sample");
  require_finite(x_, "X");
  require_finite(y_, "Y");
}

PairedSample PairedSample::univariate(std::vector<double> x, std::vector<double> y) {
  return PairedSample(1, 1, std::move(x), std::move(y));
}

PairedSample PairedSample::prefix(std::size_t count) const {
  if (count == 0 || count > n_) throw ConfigError("prefix length must be in [1, n]");
  std::vector<double> x(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(count * x_dim_));
  std::vector<double> y(y_.begin(), y_.begin() + static_cast<std::ptrdiff_t>(count * y_dim_));
  return PairedSample(x_dim_, y_dim_, std::move(x), std::move(y));
}

BlockPartition::BlockPartition(const PairedSample& s, std::size_t block_len)
    : d_(block_len),
      count_(block_len == 0 ? 0 : s.size() / block_len),
      tail_(block_len == 0 ? 0 : s.size() % block_len),
      retained_(block_len == 0 || block_len > s.size() ? s : s.prefix(count_ * block_len)) {
  if (d_ == 0) throw ConfigError("block length must be positive");
  if (d_ > s.size()) throw ConfigError("requires block length d <= n");
}

std::span<const double> BlockPartition::x_block(std::size_t k) const {
  const std::size_t width = d_ * retained_.x_dim();
  return retained_.x_data().subspan(k * width, width);
}

std::span<const double> BlockPartition::y_block(std::size_t k) const {
  const std::size_t width = d_ * retained_.y_dim();
  return retained_.y_data().subspan(k * width, width);
}

BlockPartition partition_blocks(const PairedSample& s, std::size_t d) {
  return BlockPartition(s, d);
}

VectorizedSample vectorize(const PairedSample& s, std::size_t stride) {
  if (stride == 0) throw ConfigError("vectorize stride must be positive");
  if (stride > s.size()) throw ConfigError("requires vectorize stride J <= n");
  const std::size_t rows = s.size() / stride;
  // Row-major storage means grouping J consecutive rows is a reshape of the
  // retained prefix.
  const auto x = s.x_data().first(rows * stride * s.x_dim());
  const auto y = s.y_data().first(rows * stride * s.y_dim());
  return {stride, PairedSample(s.x_dim() * stride, s.y_dim() * stride,
                               std::vector<double>(x.begin(), x.end()),
                               std::vector<double>(y.begin(), y.end()))};
}

PairedSample load_csv(const std::filesystem::path& path, std::size_t x_dim,
                      std::size_t y_dim) {
  if (x_dim == 0 || y_dim == 0) throw ConfigError("xdim and ydim must be positive");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::vector<double> x;
  std::vector<double> y;
  std::string line;
  std::size_t row = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_fields(view);
    if (!seen_content) {
      seen_content = true;
      if (is_header(fields, x_dim, y_dim)) continue;
    }
    if (fields.size() != x_dim + y_dim) {
      throw DataError("expected " + std::to_string(x_dim + y_dim) + " fields, found " +
                          std::to_string(fields.size()),
                      row);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto field = fields[i];
      double value = 0.0;
      const auto* begin = field.data();
      const auto* end = field.data() + field.size();
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (field.empty() || ec != std::errc() || ptr != end) {
        throw DataError("non-numeric field " + std::to_string(i + 1) + " '" +
                            std::string(field) + "'",
                        row);
      }
      if (!std::isfinite(value)) {
        throw DataError("non-finite value in field " + std::to_string(i + 1), row);
      }
      (i < x_dim ? x : y).push_back(value);
    }
  }
  if (x.empty()) throw DataError("empty sample");
  return PairedSample(x_dim, y_dim, std::move(x), std::move(y));
}

}  // namespace depcov
